//! Numerical checks of the stationary-phase ingredients: θ-derivatives of the
//! chord G near θ = π, the TT* phase Ψ and its lower bound, one-dimensional
//! oscillatory integrals with a nondegenerate critical point, and the
//! diffractive integral when r₁ + r₂ ≤ δ/2.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cluster_kernel::{diff_cluster_tail, AmplitudeA};
use crate::cone_geom::{chord, d_ds, Cone, D};
use crate::error::{domain, Error, Result};
use crate::quadrature::legendre_cached;

/// Seed of every sampled check unless overridden.
pub const PHASE_SEED: u64 = 0x5EED;

/// (∂θG, ∂²θG) for G(θ) = chord(r₁, r₂, θ).
pub fn chord_derivatives(r1: f64, r2: f64, theta: f64) -> (f64, f64) {
    let g = chord(r1, r2, theta);
    // sin and cos through θ − π, so both are exact at θ = π
    let (sin, cos) = (-(theta - PI).sin(), -(theta - PI).cos());
    let d1 = r1 * r2 * sin / g;
    let d2 = (r1 * r2 * cos - d1 * d1) / g;
    (d1, d2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DgRow {
    pub theta: f64,
    pub d1: f64,
    pub d1_leading: f64,
    pub d2: f64,
    pub d2_leading: f64,
    /// |∂θG − leading| / ((r₁r₂)²|θ−π|³/(r₁+r₂)³); `None` at θ = π
    pub ratio1: Option<f64>,
    /// |∂²θG − leading| / ((r₁r₂)²|θ−π|²/(r₁+r₂)³); `None` at θ = π
    pub ratio2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DgReport {
    pub r1: f64,
    pub r2: f64,
    pub rows: Vec<DgRow>,
    pub max_ratio1: f64,
    pub max_ratio2: f64,
}

/// Compares ∂θG, ∂²θG with r₁r₂/(r₁+r₂)·(sin θ, cos θ) near θ = π.
///
/// The remainders are normalized by (r₁r₂)²|θ−π|^{3,2}/(r₁+r₂)³, which makes
/// the ratios scale-free.
pub fn dg_expansion_check(r1: f64, r2: f64, thetas: &[f64]) -> Result<DgReport> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return domain("dg_expansion_check needs r1, r2 > 0");
    }
    let c = r1 * r2 / (r1 + r2);
    let scale = (r1 * r2).powi(2) / (r1 + r2).powi(3);
    let mut rows = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let off = theta - PI;
        if off.abs() > 0.5 {
            return domain(format!("theta = {theta} is farther than 1/2 from pi"));
        }
        let (d1, d2) = chord_derivatives(r1, r2, theta);
        let (l1, l2) = (-c * off.sin(), -c * off.cos());
        let (ratio1, ratio2) = if off == 0.0 {
            (None, None)
        } else {
            (Some((d1 - l1).abs() / (scale * off.abs().powi(3))), Some((d2 - l2).abs() / (scale * off * off)))
        };
        rows.push(DgRow { theta, d1, d1_leading: l1, d2, d2_leading: l2, ratio1, ratio2 });
    }
    let max_of = |f: fn(&DgRow) -> Option<f64>| rows.iter().filter_map(f).fold(0.0, f64::max);
    let (max_ratio1, max_ratio2) = (max_of(|r| r.ratio1), max_of(|r| r.ratio2));
    Ok(DgReport { r1, r2, rows, max_ratio1, max_ratio2 })
}

/// One point of the TT* phase Ψ(θ) = G(r₁, r₂, θ₂−θ) − G(r₁, r̃₂, θ₁−θ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseConfig {
    pub r1: f64,
    pub r2: f64,
    pub r2_tilde: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub epsilon: f64,
}

impl PhaseConfig {
    /// Checks ε < min(π(ρ−1)/2, π/4), which needs ρ > 1.
    pub fn new(r1: f64, r2: f64, r2_tilde: f64, theta1: f64, theta2: f64, epsilon: f64, rho: f64) -> Result<Self> {
        if !(r1 > 0.0 && r2 > 0.0 && r2_tilde > 0.0) {
            return Err(Error::Config("radii must be positive".into()));
        }
        let cap = (PI * (rho - 1.0) / 2.0).min(PI / 4.0);
        if !(epsilon > 0.0 && epsilon < cap) {
            return Err(Error::Config(format!("epsilon = {epsilon} must lie in (0, {cap})")));
        }
        Ok(PhaseConfig { r1, r2, r2_tilde, theta1, theta2, epsilon })
    }

    /// [max(θ₁,θ₂) − π, min(θ₁,θ₂) − π + 2ε], where both cutoffs are on.
    pub fn window(&self) -> Result<(f64, f64)> {
        let lo = self.theta1.max(self.theta2) - PI;
        let hi = self.theta1.min(self.theta2) - PI + 2.0 * self.epsilon;
        if lo < hi {
            Ok((lo, hi))
        } else {
            Err(Error::Config(format!("empty integration window: |theta1 - theta2| >= 2 epsilon = {}", 2.0 * self.epsilon)))
        }
    }

    pub fn psi(&self, theta: f64) -> f64 {
        chord(self.r1, self.r2, self.theta2 - theta) - chord(self.r1, self.r2_tilde, self.theta1 - theta)
    }

    /// (∂θΨ, ∂²θΨ).
    pub fn psi_derivatives(&self, theta: f64) -> (f64, f64) {
        let (a1, a2) = chord_derivatives(self.r1, self.r2, self.theta2 - theta);
        let (b1, b2) = chord_derivatives(self.r1, self.r2_tilde, self.theta1 - theta);
        (b1 - a1, a2 - b2)
    }

    /// (|∂θΨ| + |∂²θΨ|) / (|r₂ − r̃₂| r₁²).
    pub fn lower_bound_ratio(&self, theta: f64) -> f64 {
        let (p1, p2) = self.psi_derivatives(theta);
        (p1.abs() + p2.abs()) / ((self.r2 - self.r2_tilde).abs() * self.r1 * self.r1)
    }
}

/// Sampling domain of `psi_lower_bound_check`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiSampling {
    pub rho: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub lambda: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for PsiSampling {
    fn default() -> Self {
        PsiSampling { rho: 2.0, epsilon: 0.2, delta: 0.1, lambda: 1e4, samples: 10_000, seed: PHASE_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiSample {
    pub config: PhaseConfig,
    pub theta: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiReport {
    pub sampling: PsiSampling,
    pub min_ratio: f64,
    /// min over twice as many samples; the first half is the set above
    pub min_ratio_doubled: f64,
    pub doubling_stable: bool,
    pub worst: PsiSample,
    /// split constant C: |∂²Ψ| carries the bound when r₁r̃₂|θ₁−θ₂| ≤ Cε⁻¹r₁²|r₂−r̃₂|,
    /// |∂Ψ| otherwise; chosen to maximize the smaller of the two minima
    pub split_constant: f64,
    pub split_min_second: f64,
    pub split_min_first: f64,
}

/// Admissible configurations: radii in (1/λ, 4δ) with r₁ + r₂, r₁ + r̃₂ ≥ δ/4 and
/// r₁²|r₂ − r̃₂| ≥ 1/λ; θ₁ = 0 by rotation, |θ₂| < 2ε, θ uniform on the window.
fn draw_psi_samples(s: &PsiSampling, n: usize) -> Result<Vec<(PhaseConfig, f64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let (lo, hi) = (1.0 / s.lambda, 4.0 * s.delta);
    let mut out = Vec::with_capacity(n);
    let mut tries = 0usize;
    while out.len() < n {
        tries += 1;
        if tries > 1000 * n + 10_000 {
            return Err(Error::Config("no admissible configurations: raise lambda or delta".into()));
        }
        let (r1, r2, rt) = (rng.random_range(lo..hi), rng.random_range(lo..hi), rng.random_range(lo..hi));
        let theta2 = rng.random_range(-2.0 * s.epsilon..2.0 * s.epsilon);
        if r1 + r2 < 0.25 * s.delta || r1 + rt < 0.25 * s.delta || r1 * r1 * (r2 - rt).abs() < 1.0 / s.lambda {
            continue;
        }
        let cfg = PhaseConfig::new(r1, r2, rt, 0.0, theta2, s.epsilon, s.rho)?;
        let (a, b) = cfg.window()?;
        let theta = rng.random_range(a..b);
        out.push((cfg, theta));
    }
    Ok(out)
}

/// Samples the lower bound |∂θΨ| + |∂²θΨ| ≳ |r₂ − r̃₂|r₁² over admissible configurations.
pub fn psi_lower_bound_check(s: &PsiSampling) -> Result<PsiReport> {
    if s.samples == 0 {
        return Err(Error::Config("at least one sample is required".into()));
    }
    let draws = draw_psi_samples(s, 2 * s.samples)?;
    let rows: Vec<PsiSample> =
        draws.par_iter().map(|&(config, theta)| PsiSample { config, theta, ratio: config.lower_bound_ratio(theta) }).collect();
    let argmin = |xs: &[PsiSample]| *xs.iter().min_by(|a, b| a.ratio.total_cmp(&b.ratio)).expect("nonempty");
    let worst = argmin(&rows[..s.samples]);
    let min_ratio = worst.ratio;
    let min_ratio_doubled = argmin(&rows).ratio;
    let doubling_stable = min_ratio > 0.0 && min_ratio <= 2.0 * min_ratio_doubled;

    // case split: sort by εκ, κ = r₁r̃₂|θ₁−θ₂|/(r₁²|r₂−r̃₂|)
    let mut keyed: Vec<(f64, f64, f64)> = rows
        .iter()
        .map(|r| {
            let c = r.config;
            let dr = (c.r2 - c.r2_tilde).abs() * c.r1 * c.r1;
            let kappa = c.r1 * c.r2_tilde * (c.theta1 - c.theta2).abs() / dr;
            let (p1, p2) = c.psi_derivatives(r.theta);
            (c.epsilon * kappa, p2.abs() / dr, p1.abs() / dr)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = keyed.len();
    let mut suffix_first = vec![f64::INFINITY; n + 1];
    for i in (0..n).rev() {
        suffix_first[i] = suffix_first[i + 1].min(keyed[i].2);
    }
    let (mut best, mut prefix_second) = ((0usize, f64::NEG_INFINITY), f64::INFINITY);
    for i in 0..=n {
        let score = prefix_second.min(suffix_first[i]);
        if score > best.1 {
            best = (i, score);
        }
        if i < n {
            prefix_second = prefix_second.min(keyed[i].1);
        }
    }
    let split = best.0;
    let split_constant = if split == 0 { 0.0 } else { keyed[split - 1].0 };
    let split_min_second = keyed[..split].iter().map(|k| k.1).fold(f64::INFINITY, f64::min);
    let split_min_first = suffix_first[split];
    Ok(PsiReport {
        sampling: *s,
        min_ratio,
        min_ratio_doubled,
        doubling_stable,
        worst,
        split_constant,
        split_min_second,
        split_min_first,
    })
}

/// Largest relative disagreement between each analytic derivative and a
/// Richardson-extrapolated central difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub samples: usize,
    pub seed: u64,
    pub step: f64,
    pub dg: f64,
    pub d2g: f64,
    pub dpsi: f64,
    pub d2psi: f64,
    pub dd_ds: f64,
}

/// Central difference at steps h and h/2, extrapolated: O(h⁴).
fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let c = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * c(0.5 * h) - c(h)) / 3.0
}

/// Second derivatives are differenced from the analytic first derivative.
pub fn derivative_check(samples: usize, seed: u64) -> DerivativeReport {
    let h = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rel = |fd: f64, exact: f64, scale: f64| (fd - exact).abs() / exact.abs().max(1e-3 * scale);
    let mut rep = DerivativeReport { samples, seed, step: h, dg: 0.0, d2g: 0.0, dpsi: 0.0, d2psi: 0.0, dd_ds: 0.0 };
    for _ in 0..samples {
        let (r1, r2, rt) = (rng.random_range(0.01..0.4), rng.random_range(0.01..0.4), rng.random_range(0.01..0.4));
        let th = rng.random_range(PI - 0.8..PI + 0.8);
        let scale = r1 * r2 / (r1 + r2);
        let (d1, d2) = chord_derivatives(r1, r2, th);
        rep.dg = rep.dg.max(rel(richardson(|t| chord(r1, r2, t), th, h), d1, scale));
        rep.d2g = rep.d2g.max(rel(richardson(|t| chord_derivatives(r1, r2, t).0, th, h), d2, scale));

        let cfg = PhaseConfig { r1, r2, r2_tilde: rt, theta1: 0.0, theta2: rng.random_range(-0.3..0.3), epsilon: 0.2 };
        let t = rng.random_range(-PI - 0.2..-PI + 0.4);
        let (p1, p2) = cfg.psi_derivatives(t);
        let pscale = r1 * r2.max(rt) / (r1 + r2.min(rt));
        rep.dpsi = rep.dpsi.max(rel(richardson(|x| cfg.psi(x), t, h), p1, pscale));
        rep.d2psi = rep.d2psi.max(rel(richardson(|x| cfg.psi_derivatives(x).0, t, h), p2, pscale));

        let s = rng.random_range(0.01..3.0);
        rep.dd_ds = rep.dd_ds.max(rel(richardson(|x| D(r1, r2, x), s, h), d_ds(r1, r2, s), scale));
    }
    rep
}

/// Phases with a single nondegenerate critical point at s = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Phase {
    /// s²
    Square,
    /// D(r₁, r₂, s) − (r₁ + r₂)
    Diffraction { r1: f64, r2: f64 },
    /// (r₁ + r₂) − G(r₁, r₂, π − s)
    Chord { r1: f64, r2: f64 },
}

impl Phase {
    pub fn value(self, s: f64) -> f64 {
        match self {
            Phase::Square => s * s,
            Phase::Diffraction { r1, r2 } => {
                // D − (r₁+r₂) = 2r₁r₂(cosh s − 1)/(D + r₁ + r₂), free of cancellation
                2.0 * r1 * r2 * 2.0 * (0.5 * s).sinh().powi(2) / (D(r1, r2, s) + r1 + r2)
            }
            Phase::Chord { r1, r2 } => {
                // (r₁+r₂)² − G² = 2r₁r₂(1 − cos s)
                2.0 * r1 * r2 * 2.0 * (0.5 * s).sin().powi(2) / (r1 + r2 + chord(r1, r2, PI - s))
            }
        }
    }

    pub fn derivative(self, s: f64) -> f64 {
        match self {
            Phase::Square => 2.0 * s,
            Phase::Diffraction { r1, r2 } => d_ds(r1, r2, s),
            Phase::Chord { r1, r2 } => r1 * r2 * s.sin() / chord(r1, r2, PI - s),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Phase::Square => Ok(()),
            Phase::Diffraction { r1, r2 } | Phase::Chord { r1, r2 } => {
                if r1 > 0.0 && r2 > 0.0 {
                    Ok(())
                } else {
                    domain("phase radii must be positive")
                }
            }
        }
    }
}

/// C¹ (or Lipschitz) amplitudes on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Amplitude {
    One,
    /// 1 − s
    Linear,
    /// |s − at|
    Hinge {
        at: f64,
    },
    /// |· − at| convolved with a smooth bump of half-width `width`
    Mollified {
        at: f64,
        width: f64,
    },
}

/// Normalized bump exp(−1/(1−x²)) on (−1, 1) as Gauss nodes and weights.
fn mollifier_rule() -> Vec<(f64, f64)> {
    let gl = legendre_cached(32);
    let raw: Vec<(f64, f64)> = gl.nodes.iter().zip(&gl.weights).map(|(&x, &w)| (x, w * (-1.0 / (1.0 - x * x)).exp())).collect();
    let total: f64 = raw.iter().map(|p| p.1).sum();
    raw.into_iter().map(|(x, w)| (x, w / total)).collect()
}

impl Amplitude {
    fn eval(self, s: f64, rule: &[(f64, f64)]) -> f64 {
        match self {
            Amplitude::One => 1.0,
            Amplitude::Linear => 1.0 - s,
            Amplitude::Hinge { at } => (s - at).abs(),
            Amplitude::Mollified { at, width } => rule.iter().map(|&(x, w)| w * (s - width * x - at).abs()).sum(),
        }
    }

    fn breakpoints(self) -> Vec<f64> {
        match self {
            Amplitude::Hinge { at } => vec![at],
            Amplitude::Mollified { at, width } => vec![at - width, at + width],
            _ => vec![],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub mu: f64,
    pub re: f64,
    pub im: f64,
    /// μ^{1/2}|I(μ)|
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryPhaseReport {
    pub phase: Phase,
    pub amplitude: Amplitude,
    pub rows: Vec<ProbeRow>,
    pub sup_scaled: f64,
    /// the exact limit of μ^{1/2}|I| when known (φ = s², a ≡ 1: ½√π)
    pub limit: Option<f64>,
}

/// I(μ) = ∫₀¹ e^{iμφ(s)} a(s) ds.
///
/// Panels are at most μ^{−1/2}/2 wide and span at most 2 radians of phase.
pub fn oscillatory_integral(phase: Phase, amplitude: Amplitude, mu: f64) -> Result<Complex64> {
    phase.validate()?;
    if !(mu > 0.0) {
        return domain("mu must be positive");
    }
    let rule = mollifier_rule();
    let gl = legendre_cached(16);
    let mut stops: Vec<f64> = amplitude.breakpoints().into_iter().filter(|&b| b > 0.0 && b < 1.0).collect();
    stops.push(1.0);
    stops.sort_by(f64::total_cmp);
    let near = 0.5 / mu.sqrt();
    let f = |s: f64| Complex64::from_polar(amplitude.eval(s, &rule), mu * phase.value(s));
    let mut acc = Complex64::new(0.0, 0.0);
    let mut s = 0.0;
    for &stop in &stops {
        while s < stop {
            let rate = mu * phase.derivative(s).abs();
            let h = (2.0 / rate.max(1e-300)).min(near).min(0.05);
            let next = (s + h).min(stop);
            acc += gl.integrate::<Complex64, _>(f, s, next);
            s = next;
        }
    }
    Ok(acc)
}

pub fn stationary_phase_probe(phase: Phase, amplitude: Amplitude, mu_list: &[f64]) -> Result<StationaryPhaseReport> {
    let rows = mu_list
        .par_iter()
        .map(|&mu| {
            let v = oscillatory_integral(phase, amplitude, mu)?;
            Ok(ProbeRow { mu, re: v.re, im: v.im, scaled: mu.sqrt() * v.norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_scaled = rows.iter().map(|r| r.scaled).fold(0.0, f64::max);
    let limit = (phase == Phase::Square && amplitude == Amplitude::One).then(|| 0.5 * PI.sqrt());
    Ok(StationaryPhaseReport { phase, amplitude, rows, sup_scaled, limit })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoCriticalReport {
    pub lambda: f64,
    pub r1: f64,
    pub r2: f64,
    pub theta: f64,
    /// D(r₁, r₂, s₀) = δ
    pub s0: f64,
    /// 2r₁r₂(cosh s₀ − 1), equal to δ² − (r₁+r₂)²
    pub onset_gap: f64,
    /// 3δ²/4, a lower bound for the gap when r₁ + r₂ ≤ δ/2
    pub onset_floor: f64,
    /// max |ã(D(r₁,r₂,s))| over s ∈ [0, s₀], where D < δ
    pub head_amplitude_max: f64,
    pub tail_re: f64,
    pub tail_im: f64,
    pub tail_error: f64,
    /// λ(r₁r₂)^{1/2}|tail|
    pub scaled_tail: f64,
}

/// The diffractive integral on [s₀, ∞) when r₁ + r₂ ≤ δ/2: no critical point,
/// so it should be O(λ⁻¹(r₁r₂)^{−1/2}).
pub fn no_critical_point_decay(amp: &AmplitudeA, cone: Cone, r1: f64, r2: f64, theta: f64) -> Result<NoCriticalReport> {
    let (lambda, delta) = (amp.lambda, amp.delta);
    if !(r1 >= 1.0 / lambda && r2 >= 1.0 / lambda) {
        return Err(Error::Regime(format!("radii {r1}, {r2} below 1/lambda")));
    }
    if r1 + r2 > 0.5 * delta {
        return Err(Error::Regime(format!("r1 + r2 = {} exceeds delta/2", r1 + r2)));
    }
    let gap = delta * delta - (r1 + r2).powi(2);
    let s0 = (1.0 + gap / (2.0 * r1 * r2)).acosh();
    let onset_gap = 2.0 * r1 * r2 * (s0.cosh() - 1.0);
    let head_amplitude_max = (0..=400).map(|i| amp.normalized(D(r1, r2, s0 * i as f64 / 400.0)).norm()).fold(0.0, f64::max);
    let tail = diff_cluster_tail(amp, cone, r1, r2, theta, s0)?;
    Ok(NoCriticalReport {
        lambda,
        r1,
        r2,
        theta,
        s0,
        onset_gap,
        onset_floor: 0.75 * delta * delta,
        head_amplitude_max,
        tail_re: tail.value.re,
        tail_im: tail.value.im,
        tail_error: tail.error_estimate,
        scaled_tail: lambda * (r1 * r2).sqrt() * tail.value.norm(),
    })
}
