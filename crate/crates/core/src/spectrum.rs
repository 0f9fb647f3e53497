//! Dirichlet eigenbasis of a truncated cone, spectral cluster projection,
//! L^q measurements and exponent fits.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::cone_geom::Cone;
use crate::error::{domain, Error, Result};
use crate::quadrature::gauss_legendre;
use crate::special_fn::{bessel_pair, bessel_zeros_below, BesselOrder};

/// Cone cut off by a Dirichlet wall at r = R.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedCone {
    pub cone: Cone,
    radius: f64,
}

impl TruncatedCone {
    pub fn new(cone: Cone, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return domain(format!("truncation radius must be positive, got {radius}"));
        }
        Ok(TruncatedCone { cone, radius })
    }

    pub fn radius(self) -> f64 {
        self.radius
    }

    pub fn rho(self) -> f64 {
        self.cone.rho()
    }

    /// ρR²λ²/4 = (Area/4π)λ².
    pub fn weyl_main_term(self, lambda: f64) -> f64 {
        self.rho() * self.radius * self.radius * lambda * lambda / 4.0
    }
}

/// φ_{k,m}(r,θ) = norm_const · J_ν(λr) · e^{ikθ/ρ}, ν = |k|/ρ, λ = j_{ν,m}/R.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenMode {
    pub k: i64,
    pub m: u32,
    pub nu: f64,
    pub lambda: f64,
    pub norm_const: f64,
}

impl EigenMode {
    pub fn radial(&self, r: f64) -> f64 {
        self.norm_const * bessel_pair(self.nu, self.lambda * r).0
    }

    pub fn eval(&self, rho: f64, r: f64, theta: f64) -> Complex64 {
        Complex64::from_polar(self.radial(r), self.k as f64 * theta / rho)
    }
}

/// Source of Bessel zeros, so callers can interpose a persistent cache.
pub trait ZeroProvider: Sync {
    /// All positive zeros of J_ν not exceeding `xmax`, ascending.
    fn zeros_below(&self, nu: f64, xmax: f64) -> Result<Vec<f64>>;
}

/// Computes zeros directly, without caching.
#[derive(Debug, Clone, Copy, Default)]
pub struct DirectZeros;

impl ZeroProvider for DirectZeros {
    fn zeros_below(&self, nu: f64, xmax: f64) -> Result<Vec<f64>> {
        bessel_zeros_below(nu, xmax)
    }
}

/// All modes with λ ≤ λ_max, sorted by (λ, k, m).
pub fn build_basis(tc: TruncatedCone, lambda_max: f64) -> Result<Vec<EigenMode>> {
    build_basis_with(tc, lambda_max, &DirectZeros)
}

pub fn build_basis_with(tc: TruncatedCone, lambda_max: f64, zeros: &dyn ZeroProvider) -> Result<Vec<EigenMode>> {
    if !(lambda_max > 0.0) {
        return domain(format!("lambda_max must be positive, got {lambda_max}"));
    }
    let (rho, big_r) = (tc.rho(), tc.radius());
    let xmax = lambda_max * big_r;
    // j_{ν,1} > ν, so only |k| < ρ·λ_max·R can contribute
    let kmax = (rho * xmax).ceil() as i64;
    let per_k: Vec<Result<Vec<EigenMode>>> = (0..=kmax)
        .into_par_iter()
        .map(|k| {
            let nu = k as f64 / rho;
            let js = zeros.zeros_below(nu, xmax)?;
            let mut out = Vec::with_capacity(2 * js.len());
            for (i, &j) in js.iter().enumerate() {
                let norm_const = 1.0 / ((PI * rho).sqrt() * big_r * bessel_pair(nu, j).1.abs());
                let m = i as u32 + 1;
                let lambda = j / big_r;
                out.push(EigenMode { k, m, nu, lambda, norm_const });
                if k != 0 {
                    out.push(EigenMode { k: -k, m, nu, lambda, norm_const });
                }
            }
            Ok(out)
        })
        .collect();
    let mut modes = Vec::new();
    for r in per_k {
        modes.extend(r?);
    }
    modes.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.k.cmp(&b.k)).then(a.m.cmp(&b.m)));
    Ok(modes)
}

/// N(λ) = #{modes with λ_j ≤ λ}.
pub fn count_modes(basis: &[EigenMode], lambda: f64) -> usize {
    basis.partition_point(|m| m.lambda <= lambda)
}

/// The modes with λ_j in the closed window [λ₀, λ₀ + width].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterWindow {
    pub lambda0: f64,
    pub width: f64,
    pub modes: Vec<EigenMode>,
}

impl ClusterWindow {
    pub fn select(basis: &[EigenMode], lambda0: f64, width: f64) -> Self {
        let modes = basis.iter().filter(|m| m.lambda >= lambda0 && m.lambda <= lambda0 + width).copied().collect();
        ClusterWindow { lambda0, width, modes }
    }

    /// Builds the basis and selects the unit-width window at λ₀.
    pub fn build(tc: TruncatedCone, lambda0: f64, zeros: &dyn ZeroProvider) -> Result<Self> {
        let basis = build_basis_with(tc, lambda0 + 1.0, zeros)?;
        Ok(Self::select(&basis, lambda0, 1.0))
    }

    pub fn max_abs_k(&self) -> i64 {
        self.modes.iter().map(|m| m.k.abs()).max().unwrap_or(0)
    }

    pub fn max_lambda(&self) -> f64 {
        self.modes.iter().map(|m| m.lambda).fold(0.0, f64::max)
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }
}

/// Gauss–Legendre radial nodes on [0, R] × uniform angles on the 2πρ circle.
#[derive(Debug, Clone)]
pub struct PolarGrid {
    pub rho: f64,
    pub r: Vec<f64>,
    pub r_weights: Vec<f64>,
    pub n_theta: usize,
}

impl PolarGrid {
    pub fn new(tc: TruncatedCone, n_r: usize, n_theta: usize) -> Self {
        let rule = gauss_legendre(n_r.max(1));
        let h = 0.5 * tc.radius();
        PolarGrid {
            rho: tc.rho(),
            r: rule.nodes.iter().map(|x| h * (x + 1.0)).collect(),
            r_weights: rule.weights.iter().map(|w| h * w).collect(),
            n_theta: n_theta.max(1),
        }
    }

    /// N_θ = 4·max|k| + 16, N_r = 4·max j/π + 32: four points per period of
    /// the fastest mode, enough for L² inner products.
    pub fn for_window(tc: TruncatedCone, window: &ClusterWindow) -> Self {
        Self::for_exponent(tc, window, 2.0)
    }

    /// A grid on which |f|^q is integrated without aliasing for q ≥ 4:
    /// |f|^q carries q times the bandwidth of f.
    pub fn for_exponent(tc: TruncatedCone, window: &ClusterWindow, q: f64) -> Self {
        let kmax = window.max_abs_k() as f64;
        let jmax = window.max_lambda() * tc.radius();
        let n_theta = (q.max(4.0) * kmax) as usize + 16;
        let n_r = ((4.0 / PI).max(0.5 * q) * jmax) as usize + 32;
        Self::new(tc, n_r, n_theta)
    }

    pub fn theta(&self, l: usize) -> f64 {
        2.0 * PI * self.rho * l as f64 / self.n_theta as f64
    }

    pub fn d_theta(&self) -> f64 {
        2.0 * PI * self.rho / self.n_theta as f64
    }

    pub fn len(&self) -> usize {
        self.r.len() * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Samples f(r, θ) row by row (r-major).
    pub fn sample<F>(&self, f: F) -> Vec<Complex64>
    where
        F: Fn(f64, f64) -> Complex64 + Sync,
    {
        self.r.par_iter().flat_map_iter(|&r| (0..self.n_theta).map(move |l| (r, l))).map(|(r, l)| f(r, self.theta(l))).collect()
    }

    fn bin(&self, k: i64) -> usize {
        k.rem_euclid(self.n_theta as i64) as usize
    }

    fn check_resolves(&self, window: &ClusterWindow) -> Result<()> {
        let kmax = window.max_abs_k() as usize;
        if self.n_theta <= 2 * kmax {
            return Err(Error::Resolution(format!("N_theta = {} does not exceed 2·max|k| = {}", self.n_theta, 2 * kmax)));
        }
        Ok(())
    }
}

/// Radial profiles norm_const·J_ν(λ_j r_i) of the window modes at the grid radii.
fn radial_table(window: &ClusterWindow, grid: &PolarGrid) -> Vec<Vec<f64>> {
    window.modes.par_iter().map(|m| grid.r.iter().map(|&r| m.radial(r)).collect()).collect()
}

fn fft_pair(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    let mut planner = FftPlanner::new();
    (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
}

/// ⟨f, φ_j⟩ for every mode of the window.
pub fn project(window: &ClusterWindow, grid: &PolarGrid, f: &[Complex64]) -> Result<Vec<Complex64>> {
    grid.check_resolves(window)?;
    if f.len() != grid.len() {
        return domain("sample vector does not match the grid");
    }
    let nt = grid.n_theta;
    let (fwd, _) = fft_pair(nt);
    let spectra: Vec<Vec<Complex64>> = f
        .par_chunks(nt)
        .map(|row| {
            let mut buf = row.to_vec();
            fwd.process(&mut buf);
            buf
        })
        .collect();
    let table = radial_table(window, grid);
    let dth = grid.d_theta();
    Ok(window
        .modes
        .iter()
        .zip(&table)
        .map(|(m, prof)| {
            let b = grid.bin(m.k);
            let mut acc = Complex64::default();
            for i in 0..grid.r.len() {
                acc += spectra[i][b] * (grid.r_weights[i] * grid.r[i] * prof[i]);
            }
            acc * dth
        })
        .collect())
}

/// Σ_j c_j φ_j sampled on the grid.
pub fn reconstruct(window: &ClusterWindow, grid: &PolarGrid, coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    grid.check_resolves(window)?;
    let table = radial_table(window, grid);
    Ok(synthesize(window, grid, &table, coeffs))
}

fn synthesize(window: &ClusterWindow, grid: &PolarGrid, table: &[Vec<f64>], coeffs: &[Complex64]) -> Vec<Complex64> {
    let nt = grid.n_theta;
    let (_, inv) = fft_pair(nt);
    (0..grid.r.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut buf = vec![Complex64::default(); nt];
            for ((m, prof), c) in window.modes.iter().zip(table).zip(coeffs) {
                buf[grid.bin(m.k)] += c * prof[i];
            }
            inv.process(&mut buf);
            buf.into_iter()
        })
        .collect()
}

/// Exponent q of an L^q norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Lq {
    Finite(f64),
    Inf,
}

impl Lq {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "Inf" | "infinity" => Ok(Lq::Inf),
            t => t
                .parse::<f64>()
                .ok()
                .filter(|q| *q >= 1.0)
                .map(Lq::Finite)
                .ok_or_else(|| Error::Config(format!("unsupported exponent {s:?}"))),
        }
    }
}

impl std::fmt::Display for Lq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lq::Finite(q) => write!(f, "{q}"),
            Lq::Inf => write!(f, "inf"),
        }
    }
}

/// Sogge exponent: ½(½ − 1/q) for 2 ≤ q ≤ 6, 2(½ − 1/q) − ½ for q ≥ 6.
pub fn delta_q(q: Lq) -> f64 {
    let inv = match q {
        Lq::Finite(q) => 1.0 / q,
        Lq::Inf => 0.0,
    };
    if inv >= 1.0 / 6.0 {
        0.5 * (0.5 - inv)
    } else {
        2.0 * (0.5 - inv) - 0.5
    }
}

/// Quadrature L^q norm with measure r dr dθ; q = ∞ is the grid maximum.
pub fn lq_norm(grid: &PolarGrid, g: &[Complex64], q: Lq) -> f64 {
    match q {
        Lq::Inf => g.iter().map(|z| z.norm()).fold(0.0, f64::max),
        Lq::Finite(q) => {
            let nt = grid.n_theta;
            let s: f64 = g
                .par_chunks(nt)
                .enumerate()
                .map(|(i, row)| {
                    let w = grid.r_weights[i] * grid.r[i];
                    w * row.iter().map(|z| z.norm().powf(q)).sum::<f64>()
                })
                .sum();
            (s * grid.d_theta()).powf(1.0 / q)
        }
    }
}

/// Σ_j |φ_j(r)|², which does not depend on θ.
fn square_sum(window: &ClusterWindow, r: f64) -> f64 {
    window.modes.iter().map(|m| m.radial(r).powi(2)).sum()
}

/// Location and value of sup_r Σ_j |φ_j(r)|²: grid scan then golden-section polish.
fn square_sum_max(window: &ClusterWindow, grid: &PolarGrid, big_r: f64) -> (f64, f64) {
    let mut pts: Vec<f64> = std::iter::once(0.0).chain(grid.r.iter().copied()).chain(std::iter::once(big_r)).collect();
    pts.sort_by(f64::total_cmp);
    let vals: Vec<f64> = pts.par_iter().map(|&r| square_sum(window, r)).collect();
    let (imax, _) = vals.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let lo = pts[imax.saturating_sub(1)];
    let hi = pts[(imax + 1).min(pts.len() - 1)];
    let (r, v) = golden_max(|r| square_sum(window, r), lo, hi, 60);
    if v >= vals[imax] {
        (r, v)
    } else {
        (pts[imax], vals[imax])
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// ‖Π‖_{2→∞} = sup_x (Σ_j |φ_j(x)|²)^{1/2}.
pub fn cluster_sup_operator_norm(window: &ClusterWindow, tc: TruncatedCone, grid: &PolarGrid) -> f64 {
    if window.is_empty() {
        return 0.0;
    }
    square_sum_max(window, grid, tc.radius()).1.sqrt()
}

/// Which family of trial inputs produced a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateKind {
    SingleMode,
    Random,
    Coherent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub ratio: f64,
    pub best: CandidateKind,
    pub single_mode_max: f64,
    pub random_max: f64,
    pub coherent_max: f64,
    pub candidates: usize,
}

/// Number of focus radii for coherent candidates, besides the tip and the sup point.
const COHERENT_RADII: usize = 14;

/// max over trial inputs of ‖Π f‖_q / ‖f‖₂.
pub fn lower_bound_2_to_q(window: &ClusterWindow, tc: TruncatedCone, q: f64, trials: usize, seed: u64) -> Result<LowerBound> {
    if trials == 0 {
        return domain("at least one random trial is required");
    }
    if window.is_empty() {
        return domain("lower bound requested for an empty window");
    }
    let grid = PolarGrid::for_exponent(tc, window, q);
    let table = radial_table(window, &grid);

    // single modes: |φ| is θ-independent, so the norm separates
    let single_mode_max = window
        .modes
        .iter()
        .zip(&table)
        .map(|(_, prof)| {
            let radial: f64 = prof.iter().zip(&grid.r).zip(&grid.r_weights).map(|((p, r), w)| w * r * p.abs().powf(q)).sum();
            (radial * 2.0 * PI * grid.rho).powf(1.0 / q)
        })
        .fold(0.0, f64::max);

    let ratio_of = |c: &[Complex64]| {
        let l2 = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if l2 == 0.0 {
            return 0.0;
        }
        lq_norm(&grid, &synthesize(window, &grid, &table, c), Lq::Finite(q)) / l2
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_max: f64 = 0.0;
    for _ in 0..trials {
        let c: Vec<Complex64> = (0..window.modes.len())
            .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
            .collect();
        random_max = random_max.max(ratio_of(&c));
    }

    let big_r = tc.radius();
    let (r_star, _) = square_sum_max(window, &grid, big_r);
    let radii = [0.0, r_star].into_iter().chain((0..COHERENT_RADII).map(|i| big_r * (i as f64 + 0.5) / COHERENT_RADII as f64));
    let mut coherent_max: f64 = 0.0;
    for r0 in radii {
        // coefficients conj(φ_j(r₀, 0)) maximize |Πf(r₀,0)| among unit inputs
        let c: Vec<Complex64> = window.modes.iter().map(|m| Complex64::new(m.radial(r0), 0.0)).collect();
        coherent_max = coherent_max.max(ratio_of(&c));
    }

    let (ratio, best) = [
        (single_mode_max, CandidateKind::SingleMode),
        (random_max, CandidateKind::Random),
        (coherent_max, CandidateKind::Coherent),
    ]
    .into_iter()
    .fold((0.0, CandidateKind::SingleMode), |acc, x| if x.0 > acc.0 { x } else { acc });
    Ok(LowerBound {
        ratio,
        best,
        single_mode_max,
        random_max,
        coherent_max,
        candidates: window.modes.len() + trials + COHERENT_RADII + 2,
    })
}

/// Least-squares fit of log(norm) against log(λ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

pub fn fit_scaling_exponent(rows: &[(f64, f64)]) -> Result<ScalingFit> {
    if rows.len() < 4 {
        return Err(Error::InsufficientData { need: 4, got: rows.len() });
    }
    if rows.iter().any(|&(l, v)| !(l > 0.0 && v > 0.0)) {
        return domain("scaling fit needs positive lambda and norm values");
    }
    let n = rows.len() as f64;
    let xs: Vec<f64> = rows.iter().map(|r| r.0.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / n).sqrt();
    Ok(ScalingFit { slope, intercept, residual })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorReport {
    pub alpha: f64,
    pub lambda_max: f64,
    pub sector: Vec<f64>,
    pub cone_odd: Vec<f64>,
    pub max_abs_diff: f64,
    pub matched: bool,
}

/// Dirichlet eigenvalues of the unit circular sector of opening α:
/// λ = j_{nπ/α, m}. Computed with a plain bisection scan that shares no code
/// with the basis builder.
pub fn sector_dirichlet_eigenvalues(alpha: f64, lambda_max: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < 2.0 * PI) {
        return domain(format!("sector opening must lie in (0, 2π), got {alpha}"));
    }
    let mut out = Vec::new();
    for n in 1.. {
        let order = n as f64 * PI / alpha;
        if order >= lambda_max {
            break;
        }
        BesselOrder::new(order)?;
        let f = |x: f64| bessel_pair(order, x).0;
        let step = 0.25;
        let mut a = order.max(step);
        let mut fa = f(a);
        while a < lambda_max {
            let b = (a + step).min(lambda_max);
            let fb = f(b);
            if fa * fb < 0.0 {
                let (mut lo, mut hi, flo) = (a, b, fa);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if (f(mid) > 0.0) == (flo > 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            } else if fb == 0.0 {
                out.push(b);
            }
            if b >= lambda_max {
                break;
            }
            a = b;
            fa = fb;
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Compares the sector spectrum with the sine-symmetric (k ≥ 1) modes of the
/// unit truncated cone with ρ = α/π.
pub fn sector_correspondence_check(alpha: f64, lambda_max: f64, tol: f64) -> Result<SectorReport> {
    let sector = sector_dirichlet_eigenvalues(alpha, lambda_max)?;
    let tc = TruncatedCone::new(Cone::new(alpha / PI)?, 1.0)?;
    let mut cone_odd: Vec<f64> = build_basis(tc, lambda_max)?.into_iter().filter(|m| m.k >= 1).map(|m| m.lambda).collect();
    cone_odd.sort_by(f64::total_cmp);
    let same_len = sector.len() == cone_odd.len();
    let max_abs_diff =
        if same_len { sector.iter().zip(&cone_odd).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) } else { f64::INFINITY };
    Ok(SectorReport { alpha, lambda_max, matched: same_len && max_abs_diff <= tol, sector, cone_odd, max_abs_diff })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_endpoints() {
        assert_eq!(delta_q(Lq::Finite(2.0)), 0.0);
        assert!((delta_q(Lq::Finite(6.0)) - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(delta_q(Lq::Inf), 0.5);
    }

    #[test]
    fn lq_parse() {
        assert_eq!(Lq::parse("inf").unwrap(), Lq::Inf);
        assert_eq!(Lq::parse("6").unwrap(), Lq::Finite(6.0));
        assert!(Lq::parse("0.5").is_err());
    }
}
