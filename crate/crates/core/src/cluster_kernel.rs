//! Smoothed spectral-projector kernels: the χ(√Δ − λ) profile, the planar
//! convolution kernel, the geometric and diffractive cluster kernels on the
//! cone, the model operator H, its Fourier multiplier Ĥ, Littlewood–Paley
//! pieces and the angular Young bounds.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::cone_geom::{chord, Cone, D};
use crate::error::{domain, Error, Result};
use crate::quadrature::{legendre_cached, GaussRule};
use crate::special_fn::{bessel_j0_y0, bessel_pair, fresnel_moment, kummer_f, KummerRayPoint};
use crate::spectrum::Lq;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// exp(−1/(1−x²)) on |x| < 1, zero elsewhere.
fn bump(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - x * x)).exp()
    }
}

/// Smooth step: 0 for x ≤ 0, 1 for x ≥ 1.
pub fn smooth_step(x: f64) -> f64 {
    let h = |y: f64| if y > 0.0 { (-1.0 / y).exp() } else { 0.0 };
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let (a, b) = (h(x), h(1.0 - x));
        a / (a + b)
    }
}

/// Cutoff with supp ψ ⊂ (−½, ½) and ψ = 1 on [−¼, ¼].
pub fn psi(sigma: f64) -> f64 {
    smooth_step((0.5 - sigma.abs()) / 0.25)
}

/// χ with χ̂(t) = B((|t| − 3δ/2)/(δ/2)), so supp χ̂ ⊂ {δ < |t| < 2δ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiProfile {
    pub delta: f64,
    chi0: f64,
}

pub fn make_chi(delta: f64) -> Result<ChiProfile> {
    if !(delta > 0.0 && delta <= 0.25) {
        return domain(format!("delta must lie in (0, 1/4], got {delta}"));
    }
    let mut p = ChiProfile { delta, chi0: 0.0 };
    p.chi0 = p.chi(0.0);
    if !(p.chi0 > 0.0) {
        return Err(Error::Domain("chi(0) is not positive".into()));
    }
    Ok(p)
}

impl ChiProfile {
    pub fn chi_hat(&self, t: f64) -> f64 {
        let d = self.delta;
        bump((t.abs() - 1.5 * d) / (0.5 * d))
    }

    /// χ(ξ) = (1/π)∫_δ^{2δ} χ̂(t) cos(ξt) dt.
    ///
    /// χ̂ vanishes to all orders at both ends, so the trapezoid rule converges
    /// spectrally; its error is the aliased value χ(2π/h − |ξ|).
    pub fn chi(&self, xi: f64) -> f64 {
        let d = self.delta;
        let n = ((xi.abs() * d + 4000.0) / TAU).ceil() as usize;
        let h = d / n as f64;
        let mut s = 0.0;
        for k in 1..n {
            let t = d + k as f64 * h;
            s += self.chi_hat(t) * (xi * t).cos();
        }
        s * h / PI
    }

    pub fn chi_at_zero(&self) -> f64 {
        self.chi0
    }

    /// χ on a frequency grid.
    pub fn sample(&self, grid: &[f64]) -> Vec<f64> {
        grid.par_iter().map(|&x| self.chi(x)).collect()
    }
}

/// Below this argument b is built from J₀ and Y₀; above it from the Hankel expansion.
const B_SWITCH: f64 = 20.0;

/// Non-oscillating factor of J₀: J₀(x) = Re(e^{ix} b(x)), with |b^{(k)}(x)| ≲ (1+x)^{−k−1/2}.
pub fn b_amplitude(x: f64) -> Complex64 {
    if x <= 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    if x >= B_SWITCH {
        // e^{−ix} H₀⁽¹⁾(x) = (2/πx)^{1/2} e^{−iπ/4} (P + iQ)
        let (mut p, mut q) = (0.0, 0.0);
        let mut term = 1.0;
        for k in 0..60 {
            if k > 0 {
                let kf = k as f64;
                let next = term * (2.0 * kf - 1.0).powi(2) / (8.0 * kf * x);
                if next.abs() > term.abs() {
                    break;
                }
                term = next;
            }
            let signed = if (k / 2) % 2 == 0 { term } else { -term };
            // a_k(0) alternates in sign, so odd terms enter Q with the opposite sign
            if k % 2 == 0 {
                p += signed;
            } else {
                q -= signed;
            }
            if term < 1e-17 {
                break;
            }
        }
        return (2.0 / (PI * x)).sqrt() * Complex64::from_polar(1.0, -FRAC_PI_4) * Complex64::new(p, q);
    }
    // Y₀'s logarithm at 0 is switched off smoothly across [2, 10]
    let w = smooth_step((x - 2.0) / 8.0);
    let (j0, y0) = if w > 0.0 { bessel_j0_y0(x) } else { (bessel_pair(0.0, x).0, 0.0) };
    Complex64::from_polar(1.0, -x) * Complex64::new(j0, w * y0)
}

/// Panel width in τ for the a_λ quadrature.
const TAU_PANEL: f64 = 2.0;

/// Gauss nodes in τ with the weight χ(τ)ψ(τ/λ) folded in.
fn tau_nodes(chi: &ChiProfile, lambda: f64) -> Vec<(f64, f64)> {
    let gl = legendre_cached(16);
    let panels = ((lambda / TAU_PANEL).ceil() as usize).max(4);
    let h = lambda / panels as f64;
    let mut out = Vec::with_capacity(16 * panels);
    for p in 0..panels {
        let (a, b) = (-0.5 * lambda + p as f64 * h, -0.5 * lambda + (p + 1) as f64 * h);
        let (hh, c) = (0.5 * (b - a), 0.5 * (b + a));
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            let tau = c + hh * x;
            out.push((tau, hh * w * chi.chi(tau) * psi(tau / lambda)));
        }
    }
    let peak = out.iter().fold(0.0f64, |m, &(_, w)| m.max(w.abs()));
    out.retain(|&(_, w)| w.abs() > 1e-18 * peak);
    out
}

fn a_from_nodes(nodes: &[(f64, f64)], lambda: f64, zeta: f64) -> Complex64 {
    nodes.iter().map(|&(tau, w)| Complex64::from_polar(w, -tau * zeta) * b_amplitude(lambda * zeta * (1.0 - tau / lambda))).sum()
}

/// a_λ(ζ) = ∫ e^{−iτζ} χ(τ) ψ(τ/λ) b(λζ(1 − τ/λ)) dτ, so that
/// λ∫χ(τ)ψ(τ/λ)J₀(ζ(λ−τ))dτ = Re(λ e^{iλζ} a_λ(ζ)).
pub fn a_lambda(chi: &ChiProfile, lambda: f64, zeta: f64) -> Result<Complex64> {
    if !(lambda >= 1.0) {
        return domain(format!("a_lambda needs lambda >= 1, got {lambda}"));
    }
    if !(zeta >= 0.0) {
        return domain(format!("a_lambda needs zeta >= 0, got {zeta}"));
    }
    Ok(a_from_nodes(&tau_nodes(chi, lambda), lambda, zeta))
}

/// a_λ tabulated on [0, 10δ] with cubic interpolation; zero beyond the table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmplitudeA {
    pub lambda: f64,
    pub delta: f64,
    pub step: f64,
    pub values: Vec<Complex64>,
}

impl AmplitudeA {
    pub fn build(chi: &ChiProfile, lambda: f64) -> Result<Self> {
        Self::build_to(chi, lambda, 10.0 * chi.delta)
    }

    /// Table on [0, end].
    pub fn build_to(chi: &ChiProfile, lambda: f64, end: f64) -> Result<Self> {
        if !(lambda >= 1.0) {
            return domain(format!("a_lambda needs lambda >= 1, got {lambda}"));
        }
        if !(end > 0.0) {
            return domain("table end must be positive");
        }
        let nodes = tau_nodes(chi, lambda);
        let step = (0.05 / lambda).min(2e-4);
        let n = (end / step).ceil() as usize;
        let step = end / n as f64;
        let values = (0..=n).into_par_iter().map(|i| a_from_nodes(&nodes, lambda, i as f64 * step)).collect();
        Ok(AmplitudeA { lambda, delta: chi.delta, step, values })
    }

    pub fn zeta_max(&self) -> f64 {
        self.step * (self.values.len() - 1) as f64
    }

    /// a_λ(ζ), of size O(λ^{−1/2}).
    pub fn a(&self, zeta: f64) -> Complex64 {
        let n = self.values.len();
        let x = zeta / self.step;
        if !(x >= 0.0) || x > (n - 1) as f64 {
            return Complex64::new(0.0, 0.0);
        }
        // four-point Lagrange stencil, shifted inward at the ends
        let i = (x.floor() as usize).clamp(1, n - 3) - 1;
        let u = x - i as f64;
        let v = &self.values[i..i + 4];
        let l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
        let l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
        let l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
        let l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
        v[0] * l0 + v[1] * l1 + v[2] * l2 + v[3] * l3
    }

    /// ã(ζ) = λ^{1/2} a_λ(ζ), of size O(1); the amplitude of the cone kernels.
    pub fn normalized(&self, zeta: f64) -> Complex64 {
        self.a(zeta) * self.lambda.sqrt()
    }
}

/// λ∫χ(τ)ψ(τ/λ)J₀(z(λ−τ))dτ by direct quadrature in τ.
pub fn bessel_convolution(chi: &ChiProfile, lambda: f64, z: f64) -> Result<f64> {
    if !(lambda >= 1.0 && z >= 0.0) {
        return domain("bessel_convolution needs lambda >= 1 and z >= 0");
    }
    let s: f64 = tau_nodes(chi, lambda).iter().map(|&(tau, w)| w * bessel_pair(0.0, z * (lambda - tau)).0).sum();
    Ok(lambda * s)
}

/// The planar kernel of χ(√Δ − λ):
/// (2/π) λ ∫_{max(z,δ)}^{2δ} sin(λt) χ̂(t) (t² − z²)^{−1/2} dt.
///
/// It vanishes identically for z ≥ 2δ.
pub fn r2_cluster_kernel(chi: &ChiProfile, lambda: f64, z: f64) -> Result<f64> {
    if !(lambda >= 10.0) {
        return domain(format!("r2_cluster_kernel needs lambda >= 10, got {lambda}"));
    }
    if !(z > 0.0) {
        return domain(format!("r2_cluster_kernel needs z > 0, got {z}"));
    }
    let d = chi.delta;
    let lo = z.max(d);
    let hi = 2.0 * d;
    if lo >= hi {
        return Ok(0.0);
    }
    // t = (z² + u²)^{1/2} turns dt/(t²−z²)^{1/2} into du/t
    let (ua, ub) = (((lo - z) * (lo + z)).sqrt(), ((hi - z) * (hi + z)).sqrt());
    let panels = ((lambda * (hi - lo) / 2.0).ceil() as usize).max(48);
    let gl = legendre_cached(16);
    let h = (ub - ua) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let a = ua + p as f64 * h;
        s += gl.integrate(
            |u| {
                let t = (z * z + u * u).sqrt();
                (lambda * t).sin() * chi.chi_hat(t) / t
            },
            a,
            a + h,
        );
    }
    Ok(2.0 / PI * lambda * s)
}

/// The planar kernel split as main term Re(λ e^{iλz} a_λ(z)) plus remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSplit {
    pub kernel: f64,
    pub main: f64,
    pub remainder: f64,
}

pub fn r2_cluster_split(chi: &ChiProfile, amp: &AmplitudeA, z: f64) -> Result<KernelSplit> {
    let lambda = amp.lambda;
    let kernel = r2_cluster_kernel(chi, lambda, z)?;
    let main = (lambda * Complex64::from_polar(1.0, lambda * z) * amp.a(z)).re;
    Ok(KernelSplit { kernel, main, remainder: kernel - main })
}

/// 1_{[−π,π]}(θ) e^{iλG} ã(G), G the chord between (r₁, 0) and (r₂, θ).
pub fn cone_geo_cluster_kernel(amp: &AmplitudeA, r1: f64, r2: f64, theta: f64) -> Result<Complex64> {
    if !(amp.lambda >= 10.0) {
        return domain("cone_geo_cluster_kernel needs lambda >= 10");
    }
    if !(-PI..=PI).contains(&theta) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let g = chord(r1, r2, theta);
    Ok(Complex64::from_polar(1.0, amp.lambda * g) * amp.normalized(g))
}

/// Quadrature value with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterValue {
    pub value: Complex64,
    pub error_estimate: f64,
}

fn dist_to_2pi_z(x: f64) -> f64 {
    (x - TAU * (x / TAU).round()).abs()
}

/// ∫₀^∞ e^{iλD(r₁,r₂,s)} sin(θ/ρ)/(cosh(s/ρ) − cos(θ/ρ)) ã(D(r₁,r₂,s)) ds.
///
/// The integrand ends where D reaches the end of the amplitude table.
pub fn diff_cluster_kernel(amp: &AmplitudeA, cone: Cone, r1: f64, r2: f64, theta: f64) -> Result<ClusterValue> {
    diff_cluster_kernel_with_order(amp, cone, r1, r2, theta, CLUSTER_ORDER)
}

/// Gauss points per panel in `diff_cluster_kernel`; the error estimate uses half as many.
pub const CLUSTER_ORDER: usize = 20;

pub fn diff_cluster_kernel_with_order(
    amp: &AmplitudeA,
    cone: Cone,
    r1: f64,
    r2: f64,
    theta: f64,
    order: usize,
) -> Result<ClusterValue> {
    if order < 4 {
        return domain("quadrature order must be at least 4");
    }
    let lambda = amp.lambda;
    let rho = cone.rho();
    let two_delta = 2.0 * amp.delta;
    for r in [r1, r2] {
        if !(r > 1.0 / lambda && r < two_delta) {
            return Err(Error::Regime(format!("radius {r} outside (1/lambda, 2 delta)")));
        }
    }
    let ang = theta / rho;
    if dist_to_2pi_z(ang) < 1e-12 {
        return Err(Error::Singular(format!("theta/rho = {ang} is a multiple of 2 pi")));
    }
    let zmax = amp.zeta_max();
    let ch = (zmax * zmax - r1 * r1 - r2 * r2) / (2.0 * r1 * r2);
    if ch <= 1.0 {
        return Ok(ClusterValue { value: Complex64::new(0.0, 0.0), error_estimate: 0.0 });
    }
    let s_max = ch.acosh();
    if dist_to_2pi_z(ang - PI) < 1e-14 {
        return Ok(ClusterValue { value: Complex64::new(0.0, 0.0), error_estimate: 0.0 });
    }
    Ok(diff_integral(amp, rho, r1, r2, ang, 0.0, s_max, order))
}

/// The s-integral of `diff_cluster_kernel` over [s_from, s_to].
#[allow(clippy::too_many_arguments)]
fn diff_integral(amp: &AmplitudeA, rho: f64, r1: f64, r2: f64, ang: f64, s_from: f64, s_to: f64, order: usize) -> ClusterValue {
    let lambda = amp.lambda;
    let (sn, c2) = (ang.sin(), 2.0 * (0.5 * ang).sin().powi(2));
    let f = |s: f64| -> Complex64 {
        let dd = D(r1, r2, s);
        // cosh(s/ρ) − cos(θ/ρ) = 2 sinh²(s/2ρ) + 2 sin²(θ/2ρ)
        let den = 2.0 * (0.5 * s / rho).sinh().powi(2) + c2;
        Complex64::from_polar(sn / den, lambda * dd) * amp.normalized(dd)
    };
    let width = (rho * (2.0 * c2).sqrt()).max(s_from);
    let edges = oscillatory_edges(s_from, s_to, width, |s| lambda * r1 * r2 * s.sinh() / D(r1, r2, s));
    let (fine, coarse) = two_rule(&f, &edges, order);
    ClusterValue { value: fine, error_estimate: (fine - coarse).norm() }
}

/// The part of `diff_cluster_kernel` from s_from on, where D(r₁,r₂,s_from) ≥ r₁+r₂.
pub fn diff_cluster_tail(amp: &AmplitudeA, cone: Cone, r1: f64, r2: f64, theta: f64, s_from: f64) -> Result<ClusterValue> {
    let lambda = amp.lambda;
    if !(r1 > 1.0 / lambda && r2 > 1.0 / lambda) {
        return Err(Error::Regime(format!("radii {r1}, {r2} below 1/lambda")));
    }
    if !(s_from >= 0.0) {
        return domain("tail start must be nonnegative");
    }
    let ang = theta / cone.rho();
    if dist_to_2pi_z(ang) < 1e-12 {
        return Err(Error::Singular(format!("theta/rho = {ang} is a multiple of 2 pi")));
    }
    let zmax = amp.zeta_max();
    let ch = (zmax * zmax - r1 * r1 - r2 * r2) / (2.0 * r1 * r2);
    let s_max = if ch > 1.0 { ch.acosh() } else { 0.0 };
    if s_from >= s_max {
        return Ok(ClusterValue { value: Complex64::new(0.0, 0.0), error_estimate: 0.0 });
    }
    Ok(diff_integral(amp, cone.rho(), r1, r2, ang, s_from, s_max, CLUSTER_ORDER))
}

/// Panel edges on [start, end]: graded from `width` at the start, each panel
/// spanning at most ~2 radians of the local phase rate `rate(s)`.
fn oscillatory_edges(start: f64, s_max: f64, width: f64, rate: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut edges = vec![start];
    let mut step = (0.5 * width).clamp(1e-12, 0.25);
    let mut s = start;
    while s < s_max {
        let cap = 2.0 / rate(s).max(1e-300);
        let h = step.min(cap).min(0.25);
        let next = (s + h).min(s_max);
        edges.push(next);
        s = next;
        step = 2.0 * h;
    }
    edges
}

/// Composite Gauss–Legendre with n and n/2 points per panel.
fn two_rule(f: &impl Fn(f64) -> Complex64, edges: &[f64], n: usize) -> (Complex64, Complex64) {
    let (g1, g2) = (legendre_cached(n), legendre_cached(n / 2));
    let run = |g: &GaussRule| -> Complex64 { edges.windows(2).map(|w| g.integrate::<Complex64, _>(f, w[0], w[1])).sum() };
    (run(&g1), run(&g2))
}

fn check_h_regime(amp: &AmplitudeA, r1: f64, r2: f64) -> Result<()> {
    let (l, d) = (amp.lambda, amp.delta);
    if !(r1 >= 1.0 / l && r2 >= 1.0 / l) {
        return Err(Error::Regime(format!("r1 = {r1}, r2 = {r2} below 1/lambda")));
    }
    let s = r1 + r2;
    if !(s > 0.5 * d && s < 2.0 * d) {
        return Err(Error::Regime(format!("r1 + r2 = {s} outside (delta/2, 2 delta)")));
    }
    Ok(())
}

/// Scale a with D(r₁,r₂,a s) − (r₁+r₂) = r₁r₂s² + O((r₁r₂)²s⁴): a² = 2(r₁+r₂).
pub fn model_scale(r1: f64, r2: f64) -> f64 {
    (2.0 * (r1 + r2)).sqrt()
}

/// H = 2ρ a ã(r₁+r₂) ∫₀^∞ e^{iλr₁r₂s²} θ/(a²s² + θ²) ds with a = `model_scale(r₁, r₂)`:
/// the s-integral of the cluster kernel with the Lorentzian replaced by 2ρθ/(s²+θ²),
/// the amplitude frozen at s = 0 and the phase by its quadratic part.
///
/// Evaluated on the rotated contour s = e^{iπ/4}u, where the integrand is
/// e^{−μu²}θ/(θ² + ia²u²) with μ = λr₁r₂.
pub fn h_approx(amp: &AmplitudeA, cone: Cone, r1: f64, r2: f64, theta: f64) -> Result<Complex64> {
    check_h_regime(amp, r1, r2)?;
    let a = model_scale(r1, r2);
    let mu = amp.lambda * r1 * r2;
    Ok(2.0 * cone.rho() * a * amp.normalized(r1 + r2) * model_integral(mu, a * a, theta))
}

/// ∫₀^∞ e^{iμs²} θ/(a²s² + θ²) ds.
fn model_integral(mu: f64, a2: f64, theta: f64) -> Complex64 {
    if theta == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let u_max = (42.0 / mu).sqrt();
    let width = theta.abs() / a2.sqrt();
    let gl = legendre_cached(16);
    let f = |u: f64| Complex64::new(theta, 0.0) * (-mu * u * u).exp() / Complex64::new(theta * theta, a2 * u * u);
    let mut s = Complex64::new(0.0, 0.0);
    let (mut a, mut step) = (0.0, (0.25 * width).min(u_max / 8.0));
    while a < u_max {
        let b = (a + step).min(u_max);
        s += gl.integrate::<Complex64, _>(f, a, b);
        a = b;
        step = (2.0 * step).min(u_max / 8.0);
    }
    Complex64::from_polar(1.0, FRAC_PI_4) * s
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Fourier symbol of the conjugate Poisson kernel θ ↦ θ/(π(s² + θ²)).
pub fn conjugate_poisson_multiplier(s: f64, xi: f64) -> Result<Complex64> {
    if !(s > 0.0) {
        return domain(format!("conjugate Poisson kernel needs s > 0, got {s}"));
    }
    Ok(Complex64::new(0.0, -sgn(xi) * (-s * xi.abs()).exp()))
}

/// Ĥ(ξ) = πρ a ã sgn(ξ) μ^{−1/2} e^{−iπ/4} F(e^{iπ/4} μ^{−1/2} a|ξ|),
/// a = `model_scale(r₁, r₂)`, μ = λr₁r₂, ã the normalized amplitude at r₁+r₂.
pub fn h_multiplier(lambda: f64, rho: f64, r1: f64, r2: f64, amp: Complex64, xi: f64) -> Result<Complex64> {
    let mu = lambda * r1 * r2;
    if !(mu > 0.0) {
        return domain("h_multiplier needs lambda r1 r2 > 0");
    }
    if xi == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = model_scale(r1, r2);
    let z = a * xi.abs() / mu.sqrt();
    let fz = if z <= KummerRayPoint::MAX_MAGNITUDE { kummer_f(KummerRayPoint::new(z)?) } else { kummer_far(z) };
    Ok(PI * rho * a * amp * sgn(xi) / mu.sqrt() * Complex64::from_polar(1.0, -FRAC_PI_4) * fz)
}

/// F on the ray beyond the tabulated range: 2/z Σ (−1)^k (2k)!/k! z^{−2k}, at |z| > 200.
fn kummer_far(r: f64) -> Complex64 {
    let z = Complex64::from_polar(r, FRAC_PI_4);
    let w = (z * z).inv();
    let (mut term, mut sum) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    for k in 1..12 {
        let kf = k as f64;
        term *= -w * (2.0 * kf) * (2.0 * kf - 1.0) / kf;
        sum += term;
    }
    2.0 / z * sum
}

/// Ĥ from partial sums of −2πiρ a ã sgn(ξ) Σ_k (−a|ξ|)^k/k! ∫₀^∞ s^k e^{iμs²} ds.
pub fn h_multiplier_series(lambda: f64, rho: f64, r1: f64, r2: f64, amp: Complex64, xi: f64) -> Result<Complex64> {
    let mu = lambda * r1 * r2;
    if !(mu > 0.0) {
        return domain("h_multiplier needs lambda r1 r2 > 0");
    }
    let a = model_scale(r1, r2);
    let x = a * xi.abs();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coef = 1.0;
    for k in 0..400u32 {
        if k > 0 {
            coef *= -x / k as f64;
        }
        let term = coef * fresnel_moment(k, mu)?;
        sum += term;
        if k > 8 && term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    Ok(-2.0 * PI * I * rho * a * amp * sgn(xi) * sum)
}

/// H by inverse Fourier transform of Ĥ in θ:
/// H(θ) = (i/π)∫₀^∞ Ĥ(ξ) sin(θξ) dξ.
///
/// The 1/ξ tail of F is subtracted and integrated in closed form.
pub fn h_approx_by_multiplier(amp: &AmplitudeA, cone: Cone, r1: f64, r2: f64, theta: f64) -> Result<Complex64> {
    check_h_regime(amp, r1, r2)?;
    if theta == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lambda = amp.lambda;
    let mu = lambda * r1 * r2;
    let a = model_scale(r1, r2);
    let ah = amp.normalized(r1 + r2);
    let rho = cone.rho();
    let c = Complex64::from_polar(a / mu.sqrt(), FRAC_PI_4);
    let kappa = c.norm();
    let pref = PI * rho * a * ah / mu.sqrt() * Complex64::from_polar(1.0, -FRAC_PI_4);
    // F(cξ) − (2/c)(1 − e^{−κξ})/ξ decays like ξ^{−3}
    let remainder = |xi: f64| -> Result<Complex64> {
        let r = kappa * xi;
        let fz = if r <= KummerRayPoint::MAX_MAGNITUDE { kummer_f(KummerRayPoint::new(r)?) } else { kummer_far(r) };
        let sub = if xi == 0.0 { 2.0 / c * kappa } else { 2.0 / c * (-(-kappa * xi).exp_m1()) / xi };
        Ok((fz - sub) * (theta * xi).sin())
    };
    let xi_max = KummerRayPoint::MAX_MAGNITUDE / kappa;
    let width = (1.0 / kappa).min(2.0 / theta.abs());
    let panels = (xi_max / width).ceil() as usize;
    let h = xi_max / panels as f64;
    let gl = legendre_cached(16);
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let (lo, hi) = (p as f64 * h, (p + 1) as f64 * h);
        let (hh, cc) = (0.5 * (hi - lo), 0.5 * (hi + lo));
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            acc += remainder(cc + hh * x)? * (hh * w);
        }
    }
    // leading tail −4/(cξ)³ beyond ξ_max, one integration by parts
    acc += -4.0 / (c * c * c) * (theta * xi_max).cos() / (theta * xi_max.powi(3));
    // ∫₀^∞ (1 − e^{−κξ}) sin(θξ)/ξ dξ = atan(θ/κ)·… = π/2 sgnθ − atan(θ/κ)
    acc += 2.0 / c * (0.5 * PI * sgn(theta) - (theta / kappa).atan());
    Ok(I / PI * pref * acc)
}

/// |Ĥ| against C·min(μ^{−1/2}, 1/(a|ξ|))·πρa|ã| on a ξ grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiplierTable {
    pub lambda: f64,
    pub r1: f64,
    pub r2: f64,
    pub xi: Vec<f64>,
    pub values: Vec<Complex64>,
    pub envelope: Vec<f64>,
    /// max |Ĥ|/envelope over the grid
    pub constant: f64,
    /// max over the 1/|ξ| regime of |Ĥ||ξ|/(πρ|ã|)
    pub tail_constant: f64,
}

impl MultiplierTable {
    pub fn build(lambda: f64, rho: f64, r1: f64, r2: f64, amp: Complex64, xi: Vec<f64>) -> Result<Self> {
        let mu = lambda * r1 * r2;
        let a = model_scale(r1, r2);
        let scale = PI * rho * a * amp.norm();
        if !(scale > 0.0) {
            return domain("multiplier envelope needs a nonzero amplitude");
        }
        let mut values = Vec::with_capacity(xi.len());
        let mut envelope = Vec::with_capacity(xi.len());
        let (mut constant, mut tail_constant) = (0.0f64, 0.0f64);
        for &x in &xi {
            let v = h_multiplier(lambda, rho, r1, r2, amp, x)?;
            let env = scale * (1.0 / mu.sqrt()).min(1.0 / (a * x.abs()));
            if x != 0.0 {
                constant = constant.max(v.norm() / env);
            }
            if x.abs() >= 10.0 * mu.sqrt() {
                tail_constant = tail_constant.max(v.norm() * x.abs() / (PI * rho * amp.norm()));
            }
            values.push(v);
            envelope.push(env);
        }
        Ok(MultiplierTable { lambda, r1, r2, xi, values, envelope, constant, tail_constant })
    }
}

/// Smooth dyadic partition of unity on a ξ grid.
///
/// β₀(ξ) = φ(2ξ), β_ℓ(ξ) = φ(2^{1−ℓ}ξ) − φ(2^{2−ℓ}ξ) for 1 ≤ ℓ < ℓ_max, and the
/// top piece 1 − φ(2^{2−ℓ_max}ξ) absorbs all higher frequencies; φ = 1 on
/// [−1, 1] and 0 outside (−2, 2), so β(ξ) = φ(ξ) − φ(2ξ) lives in ½ < |ξ| < 2.
pub fn littlewood_paley(xi_grid: &[f64], ell_max: usize) -> Result<Vec<Vec<f64>>> {
    if ell_max < 1 {
        return domain("littlewood_paley needs ell_max >= 1");
    }
    let phi = |x: f64| smooth_step(2.0 - x.abs());
    let mut out = Vec::with_capacity(ell_max + 1);
    out.push(xi_grid.iter().map(|&x| phi(2.0 * x)).collect());
    for ell in 1..ell_max {
        let s = 2f64.powi(1 - ell as i32);
        out.push(xi_grid.iter().map(|&x| phi(s * x) - phi(2.0 * s * x)).collect());
    }
    let s = 2f64.powi(2 - ell_max as i32);
    out.push(xi_grid.iter().map(|&x| 1.0 - phi(s * x)).collect());
    Ok(out)
}

/// Which side of 2^ℓ ≶ (λr₁r₂)^{1/2} a Littlewood–Paley piece falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceBranch {
    Plateau,
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevPiece {
    pub ell: usize,
    pub branch: PieceBranch,
    pub norm6: f64,
    pub norm2: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// ‖H_ℓ * f‖₆ on the circle of length 2πρ against (λr₁r₂)^{−1/2}2^{ℓ/3}‖f‖₂
/// (plateau) or 2^{−2ℓ/3}‖f‖₂ (tail), H_ℓ the multiplier Ĥβ_ℓ.
///
/// `f_coeffs[i]` is the coefficient of e^{ikθ/ρ}/(2πρ)^{1/2} with k = i − K,
/// len = 2K + 1; `amp` is ã(r₁+r₂).
#[allow(clippy::too_many_arguments)]
pub fn sobolev_piece_bound(
    lambda: f64,
    rho: f64,
    r1: f64,
    r2: f64,
    amp: Complex64,
    ell: usize,
    ell_max: usize,
    f_coeffs: &[Complex64],
) -> Result<SobolevPiece> {
    if f_coeffs.len() % 2 != 1 {
        return domain("f_coeffs must have odd length 2K + 1");
    }
    if ell > ell_max {
        return domain("ell exceeds ell_max");
    }
    let kk = (f_coeffs.len() / 2) as i64;
    let xis: Vec<f64> = (-kk..=kk).map(|k| k as f64 / rho).collect();
    let beta = littlewood_paley(&xis, ell_max.max(1))?.swap_remove(ell);
    let mu = lambda * r1 * r2;
    let branch = if 2f64.powi(ell as i32) <= mu.sqrt() { PieceBranch::Plateau } else { PieceBranch::Tail };
    let bound_factor = match branch {
        PieceBranch::Plateau => 2f64.powf(ell as f64 / 3.0) / mu.sqrt(),
        PieceBranch::Tail => 2f64.powf(-2.0 * ell as f64 / 3.0),
    };
    let norm2 = f_coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    // |g|⁶ has frequencies up to 6K, so more than 6K samples integrate it exactly
    let n = (6 * kk as usize + 2).next_power_of_two().max(8);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, (&c, &x)) in f_coeffs.iter().zip(&xis).enumerate() {
        let k = i as i64 - kk;
        let m = h_multiplier(lambda, rho, r1, r2, amp, x)? * beta[i];
        buf[k.rem_euclid(n as i64) as usize] = c * m;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let period = TAU * rho;
    let norm_fac = 1.0 / period.sqrt();
    let sum6: f64 = buf.iter().map(|v| (v.norm() * norm_fac).powi(6)).sum();
    let norm6 = (sum6 * period / n as f64).powf(1.0 / 6.0);
    let bound = bound_factor * norm2;
    let ratio = if norm6 == 0.0 { 0.0 } else { norm6 / bound };
    Ok(SobolevPiece { ell, branch, norm6, norm2, bound, ratio })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YoungNorm {
    pub norm: f64,
    pub envelope: f64,
    pub ratio: f64,
}

/// L^q norm over the circle of length 2πρ of θ ↦ sin(θ/ρ)/(cosh(s/ρ) − cos(θ/ρ)),
/// against s^{1/q−1} (s < 1) or e^{−s/ρ} (s ≥ 1).
pub fn theta_young_norm(s: f64, rho: f64, q: Lq) -> Result<YoungNorm> {
    if !(s > 0.0 && rho > 0.0) {
        return domain("theta_young_norm needs s > 0 and rho > 0");
    }
    let c = 2.0 * (0.5 * s / rho).sinh().powi(2);
    // the kernel is odd, so |k| is even: integrate over [0, πρ]
    let k = |th: f64| {
        let x = th / rho;
        x.sin() / (c + 2.0 * (0.5 * x).sin().powi(2))
    };
    let norm = match q {
        Lq::Inf => {
            // |k| peaks where tan(x/2)-type balance holds; scan then refine
            let n = 4096;
            let mut best = (0.0f64, 0.0f64);
            for i in 1..n {
                let th = PI * rho * i as f64 / n as f64;
                let v = k(th).abs();
                if v > best.1 {
                    best = (th, v);
                }
            }
            let h = PI * rho / n as f64;
            let (mut lo, mut hi) = ((best.0 - h).max(0.0), (best.0 + h).min(PI * rho));
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..100 {
                let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
                if k(m1).abs() > k(m2).abs() {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            k(0.5 * (lo + hi)).abs().max(best.1)
        }
        Lq::Finite(q) => {
            if q < 1.0 {
                return domain("theta_young_norm needs q >= 1");
            }
            let gl = legendre_cached(16);
            let end = PI * rho;
            let (mut a, mut step) = (0.0, (0.25 * s).min(end / 16.0));
            let mut acc = 0.0;
            while a < end {
                let b = (a + step).min(end);
                acc += gl.integrate(|th| k(th).abs().powf(q), a, b);
                a = b;
                step = (2.0 * step).min(end / 16.0);
            }
            (2.0 * acc).powf(1.0 / q)
        }
    };
    let envelope = if s < 1.0 {
        match q {
            Lq::Finite(q) => s.powf(1.0 / q - 1.0),
            Lq::Inf => 1.0 / s,
        }
    } else {
        (-s / rho).exp()
    };
    Ok(YoungNorm { norm, envelope, ratio: norm / envelope })
}

/// e^{−iλ(r₁+r₂)}K − H, the remainder after the model operator.
pub fn k_tilde(amp: &AmplitudeA, cone: Cone, r1: f64, r2: f64, theta: f64) -> Result<Complex64> {
    let k = diff_cluster_kernel(amp, cone, r1, r2, theta)?.value;
    let h = h_approx(amp, cone, r1, r2, theta)?;
    Ok(Complex64::from_polar(1.0, -amp.lambda * (r1 + r2)) * k - h)
}
