//! Schwartz kernel of sin(t√Δ)/√Δ on the cone: the geometric image sum, the
//! diffracted term, and a two-route check of the propagator against the
//! Dirichlet eigenbasis.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use crate::cone_geom::{chord, diffraction_geometry, image_angles, Cone, DiffractionGeometry, PolarPoint};
use crate::error::{domain, Error, Result};
use crate::quadrature::{jacobi_cached, legendre_cached, uniform_edges, GaussRule};
use crate::special_fn::bessel_pair;
use crate::spectrum::{build_basis, TruncatedCone};

/// Relative distance |t − chord|/t below which a point pair counts as on the light cone.
pub const LIGHT_CONE_TOL: f64 = 1e-12;
/// Distance of φ₁ or φ₂ to 2πℤ below which the diffracted integrand is singular.
pub const SHADOW_TOL: f64 = 1e-12;
/// Gauss–Jacobi order of the diffracted-kernel quadrature.
pub const DIFF_ORDER: usize = 32;

/// Value of the geometric kernel; `Singular` on the light cone of some image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GeomValue {
    Finite(f64),
    Singular,
}

impl GeomValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            GeomValue::Finite(v) => Some(v),
            GeomValue::Singular => None,
        }
    }

    pub fn is_singular(self) -> bool {
        matches!(self, GeomValue::Singular)
    }

    /// The value, with the light-cone singularity mapped to +∞.
    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

/// Σ over images of (t² − chord²)_+^{−1/2}.
pub fn geom_kernel(t: f64, p1: PolarPoint, p2: PolarPoint, cone: Cone) -> Result<GeomValue> {
    if !(t > 0.0) {
        return domain(format!("geometric kernel needs t > 0, got {t}"));
    }
    let mut sum = 0.0;
    for a in image_angles(p1.theta, p2.theta, cone) {
        let c = chord(p1.r, p2.r, a);
        if (t - c).abs() <= LIGHT_CONE_TOL * t {
            return Ok(GeomValue::Singular);
        }
        if c < t {
            sum += 1.0 / ((t - c) * (t + c)).sqrt();
        }
    }
    Ok(GeomValue::Finite(sum))
}

/// Quadrature value of the diffracted kernel with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffValue {
    pub value: f64,
    pub error_estimate: f64,
}

/// The diffracted kernel at the default quadrature order.
pub fn diff_kernel(t: f64, p1: PolarPoint, p2: PolarPoint, cone: Cone) -> Result<DiffValue> {
    diff_kernel_with_order(t, p1, p2, cone, DIFF_ORDER)
}

/// The diffracted kernel with an `order`-point rule per panel; the error
/// estimate is the change from the `order/2` rule.
pub fn diff_kernel_with_order(t: f64, p1: PolarPoint, p2: PolarPoint, cone: Cone, order: usize) -> Result<DiffValue> {
    if !(p1.r > 0.0 && p2.r > 0.0) {
        return domain("diffracted kernel needs r1, r2 > 0");
    }
    if order < 2 {
        return domain("quadrature order must be at least 2");
    }
    if t <= p1.r + p2.r {
        return Ok(DiffValue { value: 0.0, error_estimate: 0.0 });
    }
    let g = diffraction_geometry(t, p1.r, p2.r, p1.theta - p2.theta, cone)?;
    let rho = cone.rho();
    let pre = -1.0 / (4.0 * PI * PI * rho * (2.0 * p1.r * p2.r).sqrt());
    let fine = pre * beta_integral(&g, rho, &Rules::new(order))?;
    let coarse = pre * beta_integral(&g, rho, &Rules::new(order / 2))?;
    Ok(DiffValue { value: fine, error_estimate: (fine - coarse).abs() })
}

fn dist_to_2pi_z(phi: f64) -> f64 {
    (phi - TAU * (phi / TAU).round()).abs()
}

/// sinh(x)/x without cancellation at small x.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

struct Rules {
    gl: Arc<GaussRule>,
    gj: Arc<GaussRule>,
}

impl Rules {
    fn new(order: usize) -> Self {
        Rules { gl: legendre_cached(order), gj: jacobi_cached(order, -0.5, 0.0) }
    }
}

/// The diffracted kernel without error estimate, for use inside pairings.
fn diff_value(t: f64, p1: PolarPoint, p2: PolarPoint, cone: Cone, rules: &Rules) -> Result<f64> {
    if t <= p1.r + p2.r {
        return Ok(0.0);
    }
    let g = diffraction_geometry(t, p1.r, p2.r, p1.theta - p2.theta, cone)?;
    let rho = cone.rho();
    let pre = -1.0 / (4.0 * PI * PI * rho * (2.0 * p1.r * p2.r).sqrt());
    Ok(pre * beta_integral(&g, rho, rules)?)
}

/// ∫₀^β (α − cosh s)^{−1/2} Σᵢ sin φᵢ / (cosh(s/ρ) − cos φᵢ) ds.
fn beta_integral(g: &DiffractionGeometry, rho: f64, rules: &Rules) -> Result<f64> {
    let beta = g.beta;
    if beta == 0.0 {
        return Ok(0.0);
    }
    let phis = [g.phi1, g.phi2];
    let dmin = phis.iter().map(|&p| dist_to_2pi_z(p)).fold(f64::INFINITY, f64::min);
    if dmin < SHADOW_TOL {
        return Err(Error::Singular(format!("diffracted kernel on the shadow boundary (phi1 = {}, phi2 = {})", g.phi1, g.phi2)));
    }
    let terms: Vec<(f64, f64)> = phis.iter().map(|&p| (p.sin(), 2.0 * (0.5 * p).sin().powi(2))).collect();
    // cosh(s/ρ) − cos φ = 2 sinh²(s/2ρ) + 2 sin²(φ/2)
    let bracket = |s: f64| -> f64 {
        let sh = 2.0 * (0.5 * s / rho).sinh().powi(2);
        terms.iter().map(|&(sn, c)| sn / (sh + c)).sum()
    };
    // α − cosh s = (β − s)·h(s), h(s) = sinh((β+s)/2)·sinhc((β−s)/2)
    let h = |s: f64| (0.5 * (beta + s)).sinh() * sinhc(0.5 * (beta - s));

    // Lorentzian width of the bracket near s = 0
    let width = rho * terms.iter().map(|&(_, c)| (2.0 * c).sqrt()).fold(f64::INFINITY, f64::min);
    let cut = if beta <= 2.0 { 0.5 * beta } else { beta - 1.0 };

    let gl = &rules.gl;
    let mut total = 0.0;
    // panels doubling away from s = 0 until they reach the uniform width
    let (mut a, mut step, wmax) = (0.0, 0.5 * width.min(cut), (beta - cut).min(cut));
    while a < cut {
        let b = (a + step).min(cut);
        total += gl.integrate(|s| bracket(s) / ((beta - s) * h(s)).sqrt(), a, b);
        a = b;
        step = (2.0 * step).min(wmax);
    }
    // weight (β − s)^{−1/2} on [cut, β]
    let gj = &rules.gj;
    let half = 0.5 * (beta - cut);
    let mid = 0.5 * (beta + cut);
    let mut last = 0.0;
    for (x, wt) in gj.nodes.iter().zip(&gj.weights) {
        let s = mid + half * x;
        last += wt * bracket(s) / h(s).sqrt();
    }
    total += half.sqrt() * last;
    Ok(total)
}

/// The full propagator kernel geom/2π + diff; `None` on the singular sets.
pub fn propagator_kernel(t: f64, p1: PolarPoint, p2: PolarPoint, cone: Cone) -> Result<Option<f64>> {
    let geom = match geom_kernel(t, p1, p2, cone)? {
        GeomValue::Finite(v) => v,
        GeomValue::Singular => return Ok(None),
    };
    match diff_kernel(t, p1, p2, cone) {
        Ok(d) => Ok(Some(geom / TAU + d.value)),
        Err(Error::Singular(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Both kernel parts at one (t, p₁, p₂).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub t: f64,
    pub p1: PolarPoint,
    pub p2: PolarPoint,
    pub geom_value: GeomValue,
    pub diff_value: f64,
    pub quadrature_error_estimate: f64,
    /// Set when the pair lies on a diffracted shadow boundary; `diff_value` is then NaN.
    pub shadow_singular: bool,
}

pub fn kernel_sample(t: f64, p1: PolarPoint, p2: PolarPoint, cone: Cone) -> Result<KernelSample> {
    let geom_value = geom_kernel(t, p1, p2, cone)?;
    let (diff_value, quadrature_error_estimate, shadow_singular) = match diff_kernel(t, p1, p2, cone) {
        Ok(d) => (d.value, d.error_estimate, false),
        Err(Error::Singular(_)) => (f64::NAN, f64::NAN, true),
        Err(e) => return Err(e),
    };
    Ok(KernelSample { t, p1, p2, geom_value, diff_value, quadrature_error_estimate, shadow_singular })
}

/// Polar box {r_min ≤ r ≤ r_max, |θ − θ_c| ≤ θ_half} containing a test function's support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportBox {
    pub r_min: f64,
    pub r_max: f64,
    pub theta_center: f64,
    pub theta_half: f64,
}

/// Smooth, compactly supported (to double precision) data on the cone.
pub trait TestData: Sync {
    fn eval(&self, cone: Cone, r: f64, theta: f64) -> f64;
    fn support(&self) -> SupportBox;
    /// Smallest length over which the data varies appreciably.
    fn length_scale(&self) -> f64;
}

/// exp(−d²/σ²), d the distance to (r₀, θ₀), cut off outside half a turn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianBump {
    pub r0: f64,
    pub theta0: f64,
    pub sigma: f64,
}

/// Support radius in units of σ; the bump is below 1e−13 beyond it.
const BUMP_CUTOFF: f64 = 5.5;

impl TestData for GaussianBump {
    fn eval(&self, cone: Cone, r: f64, theta: f64) -> f64 {
        let d = cone.reduce(theta - self.theta0);
        if d.abs() > PI {
            return 0.0;
        }
        (-(chord(r, self.r0, d) / self.sigma).powi(2)).exp()
    }

    fn support(&self) -> SupportBox {
        let rc = BUMP_CUTOFF * self.sigma;
        let theta_half = if rc < self.r0 { (rc / self.r0).asin() } else { PI };
        SupportBox { r_min: (self.r0 - rc).max(0.0), r_max: self.r0 + rc, theta_center: self.theta0, theta_half }
    }

    fn length_scale(&self) -> f64 {
        self.sigma
    }
}

/// ⟨E(t)f, g⟩ computed from the kernel and from the eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairingResult {
    pub kernel_route: f64,
    pub spectral_route: f64,
    pub difference: f64,
    /// Σ|⟨f,φ⟩⟨φ,g⟩|/λ over the top tenth of the retained band.
    pub tail_estimate: f64,
    pub modes_used: usize,
}

pub fn propagator_pairing(
    t: f64,
    f: &dyn TestData,
    g: &dyn TestData,
    tc: TruncatedCone,
    lambda_max: f64,
) -> Result<PairingResult> {
    check_finite_speed(t, f, g, tc)?;
    let kernel_route = pairing_by_kernel(t, f, g, tc.cone)?;
    let (spectral_route, tail_estimate, modes_used) = pairing_by_spectrum(t, f, g, tc, lambda_max)?;
    Ok(PairingResult { kernel_route, spectral_route, difference: kernel_route - spectral_route, tail_estimate, modes_used })
}

fn check_finite_speed(t: f64, f: &dyn TestData, g: &dyn TestData, tc: TruncatedCone) -> Result<()> {
    if !(t > 0.0) {
        return domain(format!("pairing needs t > 0, got {t}"));
    }
    let reach = f.support().r_max.max(g.support().r_max);
    if t + reach >= tc.radius() {
        return domain(format!("t + support radius = {} reaches the wall at R = {}", t + reach, tc.radius()));
    }
    Ok(())
}

/// Gauss order and panel width (in units of the data's length scale) of the pairing rules.
const PAIR_ORDER: usize = 8;
const PAIR_PANEL: f64 = 2.0;

fn panels(len: f64, width: f64) -> usize {
    ((len / width).ceil() as usize).max(1)
}

/// (node, weight) of a composite rule over the given edges.
fn rule_on(edges: &[f64]) -> Vec<(f64, f64)> {
    let gl = legendre_cached(PAIR_ORDER);
    let mut out = Vec::with_capacity(PAIR_ORDER * edges.len());
    for w in edges.windows(2) {
        let (h, c) = (0.5 * (w[1] - w[0]), 0.5 * (w[1] + w[0]));
        for (x, wt) in gl.nodes.iter().zip(&gl.weights) {
            out.push((c + h * x, h * wt));
        }
    }
    out
}

/// Tensor rule on a support box; weights include the area element r dr dθ.
fn box_nodes(bx: SupportBox, scale: f64, cone: Cone) -> Vec<(f64, f64, f64)> {
    let width = PAIR_PANEL * scale;
    let half = bx.theta_half.min(PI * cone.rho());
    let rs = rule_on(&uniform_edges(bx.r_min, bx.r_max, panels(bx.r_max - bx.r_min, width)));
    let ths = rule_on(&uniform_edges(bx.theta_center - half, bx.theta_center + half, panels(2.0 * half * bx.r_max, width)));
    let mut out = Vec::with_capacity(rs.len() * ths.len());
    for &(r, wr) in &rs {
        for &(th, wt) in &ths {
            out.push((r, th, r * wr * wt));
        }
    }
    out
}

/// Route (a): double quadrature of (geom/2π + diff)(t, x, y) f(y) g(x).
pub fn pairing_by_kernel(t: f64, f: &dyn TestData, g: &dyn TestData, cone: Cone) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("pairing needs t > 0, got {t}"));
    }
    let xs = box_nodes(g.support(), g.length_scale(), cone);
    let gmax = xs.iter().map(|&(r, th, _)| g.eval(cone, r, th).abs()).fold(0.0, f64::max);
    let parts: Vec<Result<f64>> = xs
        .par_iter()
        .map(|&(r1, th1, w)| {
            let gv = g.eval(cone, r1, th1);
            if gv.abs() <= 1e-18 * gmax {
                return Ok(0.0);
            }
            let u = geometric_wave(t, r1, th1, f, cone) / TAU + diffracted_wave(t, r1, th1, f, cone)?;
            Ok(w * gv * u)
        })
        .collect();
    let mut sum = 0.0;
    for p in parts {
        sum += p?;
    }
    Ok(sum)
}

/// ∫ geom(t, x, y) f(y) dy at x = (r₁, θ₁).
///
/// Each image of the support sector is integrated in polar coordinates
/// about x; the light-cone factor u du/(t²−u²)^{1/2} becomes dv with
/// v = (t² − u²)^{1/2} on the outer half of the u range.
fn geometric_wave(t: f64, r1: f64, th1: f64, f: &dyn TestData, cone: Cone) -> f64 {
    let bx = f.support();
    let period = cone.period();
    let half = bx.theta_half.min(0.5 * period);
    let width = PAIR_PANEL * f.length_scale();
    let (x0, y0) = (r1 * th1.cos(), r1 * th1.sin());
    let jlo = ((th1 - PI - bx.theta_center - half) / period).floor() as i64;
    let jhi = ((th1 + PI - bx.theta_center + half) / period).ceil() as i64;
    let mut total = 0.0;
    for j in jlo..=jhi {
        let c = bx.theta_center + j as f64 * period;
        let psi_a = (c - half).max(th1 - PI);
        let psi_b = (c + half).min(th1 + PI);
        if psi_a >= psi_b {
            continue;
        }
        let psi_mid = 0.5 * (psi_a + psi_b);
        let inside = |px: f64, py: f64| -> Option<(f64, f64)> {
            let r = px.hypot(py);
            if r < bx.r_min || r > bx.r_max {
                return None;
            }
            let d = py.atan2(px) - psi_mid;
            let psi = psi_mid + d - TAU * (d / TAU).round();
            (psi >= psi_a && psi <= psi_b).then_some((r, psi))
        };
        let Some((om_a, om_b, u_min, u_max)) = sector_view(x0, y0, bx.r_min, bx.r_max, psi_a, psi_b) else {
            continue;
        };
        let u_hi = u_max.min(t);
        if u_min >= u_hi {
            continue;
        }
        let integrand = |om: f64, u: f64| -> f64 {
            let (px, py) = (x0 + u * om.cos(), y0 + u * om.sin());
            inside(px, py).map_or(0.0, |(r, psi)| f.eval(cone, r, psi))
        };
        let oms = rule_on(&uniform_edges(om_a, om_b, panels((om_b - om_a) * u_hi, width)));
        let u_star = t * std::f64::consts::FRAC_1_SQRT_2;
        let mut acc = 0.0;
        if u_min < u_star {
            let b = u_hi.min(u_star);
            let us = rule_on(&uniform_edges(u_min, b, panels(b - u_min, width)));
            for &(om, wo) in &oms {
                for &(u, wu) in &us {
                    acc += wo * wu * integrand(om, u) * u / ((t - u) * (t + u)).sqrt();
                }
            }
        }
        if u_hi > u_star {
            let a = u_min.max(u_star);
            let v_lo = ((t - u_hi) * (t + u_hi)).max(0.0).sqrt();
            let v_hi = ((t - a) * (t + a)).sqrt();
            let vs = rule_on(&uniform_edges(v_lo, v_hi, panels(v_hi - v_lo, width)));
            for &(om, wo) in &oms {
                for &(v, wv) in &vs {
                    acc += wo * wv * integrand(om, ((t - v) * (t + v)).sqrt());
                }
            }
        }
        total += acc;
    }
    total
}

/// Directions and distances under which an annular sector is seen from (x0, y0).
fn sector_view(x0: f64, y0: f64, r_min: f64, r_max: f64, psi_a: f64, psi_b: f64) -> Option<(f64, f64, f64, f64)> {
    const N: usize = 64;
    let mut pts = Vec::with_capacity(4 * N + 4);
    for i in 0..=N {
        let s = i as f64 / N as f64;
        let psi = psi_a + s * (psi_b - psi_a);
        let r = r_min + s * (r_max - r_min);
        pts.push((r_max * psi.cos(), r_max * psi.sin()));
        pts.push((r_min * psi.cos(), r_min * psi.sin()));
        pts.push((r * psi_a.cos(), r * psi_a.sin()));
        pts.push((r * psi_b.cos(), r * psi_b.sin()));
    }
    let r1 = x0.hypot(y0);
    let th1 = y0.atan2(x0);
    let d = th1 - 0.5 * (psi_a + psi_b);
    let ang_in = (d - TAU * (d / TAU).round()).abs() <= 0.5 * (psi_b - psi_a);
    let u_max = pts.iter().map(|&(px, py)| (px - x0).hypot(py - y0)).fold(0.0, f64::max);
    if r1 >= r_min && r1 <= r_max && ang_in {
        return Some((0.0, TAU, 0.0, u_max));
    }
    // sample spacing bounds how far the true minimum distance can undercut the sampled one
    let spacing = ((r_max - r_min) + r_max * (psi_b - psi_a)) / N as f64;
    let u_min = (pts.iter().map(|&(px, py)| (px - x0).hypot(py - y0)).fold(f64::INFINITY, f64::min) - spacing).max(0.0);
    let (cx, cy) = {
        let (rm, pm) = (0.5 * (r_min + r_max), 0.5 * (psi_a + psi_b));
        (rm * pm.cos(), rm * pm.sin())
    };
    let base = (cy - y0).atan2(cx - x0);
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for &(px, py) in &pts {
        let a = (py - y0).atan2(px - x0) - base;
        let a = a - TAU * (a / TAU).round();
        lo = lo.min(a);
        hi = hi.max(a);
    }
    if hi - lo > 0.95 * TAU || u_min == 0.0 {
        return Some((0.0, TAU, u_min, u_max));
    }
    let pad = 2.0 * spacing / u_min.max(spacing);
    Some((base + lo - pad, base + hi + pad, u_min, u_max))
}

/// ∫ diff(t, x, y) f(y) dy at x = (r₁, θ₁).
fn diffracted_wave(t: f64, r1: f64, th1: f64, f: &dyn TestData, cone: Cone) -> Result<f64> {
    let bx = f.support();
    let r_hi = bx.r_max.min(t - r1);
    let r_lo = bx.r_min;
    if r1 <= 0.0 || r_hi <= r_lo {
        return Ok(0.0);
    }
    let width = PAIR_PANEL * f.length_scale();
    let period = cone.period();
    let half = bx.theta_half.min(0.5 * period);
    let (a, b) = (bx.theta_center - half, bx.theta_center + half);
    // the shadow boundaries θ₁ − θ₂ ≡ ±π split the angular range
    let mut cuts = vec![a, b];
    for s in [th1 - PI, th1 + PI] {
        let j0 = ((a - s) / period).ceil() as i64;
        let j1 = ((b - s) / period).floor() as i64;
        for j in j0..=j1 {
            cuts.push(s + j as f64 * period);
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut ths = Vec::new();
    for w in cuts.windows(2) {
        if w[1] > w[0] {
            ths.extend(rule_on(&uniform_edges(w[0], w[1], panels((w[1] - w[0]) * r_hi, width))));
        }
    }
    let rs = rule_on(&uniform_edges(r_lo.max(1e-300), r_hi, panels(r_hi - r_lo, width)));
    let p1 = PolarPoint { r: r1, theta: th1 };
    let rules = Rules::new(PAIR_DIFF_ORDER);
    let mut acc = 0.0;
    for &(r2, wr) in &rs {
        for &(th2, wt) in &ths {
            let fv = f.eval(cone, r2, th2);
            if fv == 0.0 {
                continue;
            }
            let p2 = PolarPoint { r: r2, theta: th2 };
            let k = match diff_value(t, p1, p2, cone, &rules) {
                Ok(d) => d,
                Err(Error::Singular(_)) => continue,
                Err(e) => return Err(e),
            };
            acc += wr * wt * r2 * fv * k;
        }
    }
    Ok(acc)
}

/// Per-panel order of the diffracted kernel inside pairings.
const PAIR_DIFF_ORDER: usize = 8;

/// Route (b): Σ_{λ_j ≤ λ_max} sin(tλ_j)/λ_j ⟨f,φ_j⟩⟨φ_j,g⟩.
///
/// Returns (value, tail estimate, number of modes with nonzero weight).
pub fn pairing_by_spectrum(
    t: f64,
    f: &dyn TestData,
    g: &dyn TestData,
    tc: TruncatedCone,
    lambda_max: f64,
) -> Result<(f64, f64, usize)> {
    check_finite_speed(t, f, g, tc)?;
    let cone = tc.cone;
    let basis = build_basis(tc, lambda_max)?;
    let kmax = basis.iter().map(|m| m.k.abs()).max().unwrap_or(0);
    let fa = AngularTransform::new(f, cone, kmax);
    let ga = AngularTransform::new(g, cone, kmax);

    let peak = fa.peak * ga.peak;
    let coeffs: Vec<(f64, Complex64, Complex64)> = basis
        .par_iter()
        .map(|m| {
            if fa.k_peak(m.k) * ga.k_peak(m.k) <= 1e-22 * peak {
                return (m.lambda, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            }
            let cf = fa.radial(m.k, |r| m.norm_const * bessel_pair(m.nu, m.lambda * r).0);
            let cg = ga.radial(m.k, |r| m.norm_const * bessel_pair(m.nu, m.lambda * r).0);
            (m.lambda, cf, cg)
        })
        .collect();
    let mut sum = 0.0;
    let mut tail = 0.0;
    let mut used = 0;
    for &(lam, cf, cg) in &coeffs {
        if cf.norm_sqr() == 0.0 || cg.norm_sqr() == 0.0 {
            continue;
        }
        used += 1;
        let w = cf * cg.conj();
        sum += (t * lam).sin() / lam * w.re;
        if lam > 0.9 * lambda_max {
            tail += w.norm() / lam;
        }
    }
    Ok((sum, tail, used))
}

/// Angular Fourier coefficients ∫ f(r,θ) e^{−ikθ/ρ} dθ at radial Gauss nodes.
struct AngularTransform {
    nodes: Vec<(f64, f64)>,
    /// rows indexed by FFT bin, columns by radial node
    bins: Vec<Vec<Complex64>>,
    n: usize,
    peak: f64,
}

impl AngularTransform {
    fn new(f: &dyn TestData, cone: Cone, kmax: i64) -> Self {
        let bx = f.support();
        let rho = cone.rho();
        let scale = f.length_scale();
        let nodes = rule_on(&uniform_edges(bx.r_min, bx.r_max, panels(bx.r_max - bx.r_min, PAIR_PANEL * scale)));
        let resolve = (8.0 * cone.period() * bx.r_max / scale).ceil() as usize;
        let n = (2 * kmax as usize + 2).max(resolve).next_power_of_two();
        let fft = FftPlanner::new().plan_fft_forward(n);
        let dth = cone.period() / n as f64;
        let mut bins = vec![vec![Complex64::new(0.0, 0.0); nodes.len()]; n];
        for (i, &(r, _)) in nodes.iter().enumerate() {
            let mut buf: Vec<Complex64> =
                (0..n).map(|l| Complex64::new(f.eval(cone, r, -PI * rho + l as f64 * dth) * dth, 0.0)).collect();
            fft.process(&mut buf);
            for (l, v) in buf.into_iter().enumerate() {
                // θ_l = −πρ + l·dθ contributes the phase e^{ikπ} = (−1)^k
                bins[l][i] = if l % 2 == 1 { -v } else { v };
            }
        }
        let peak = bins.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
        AngularTransform { nodes, bins, n, peak }
    }

    fn bin(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    fn k_peak(&self, k: i64) -> f64 {
        self.bins[self.bin(k)].iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// ∫ f̂_k(r) φ(r) r dr for a real radial profile φ.
    fn radial(&self, k: i64, phi: impl Fn(f64) -> f64) -> Complex64 {
        let row = &self.bins[self.bin(k)];
        self.nodes.iter().zip(row).map(|(&(r, w), &c)| c * (w * r * phi(r))).sum()
    }
}
