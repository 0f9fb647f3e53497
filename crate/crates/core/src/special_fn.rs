//! Gamma, Bessel J of real order and its zeros, the ray function F(z) and
//! Fresnel moments.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::{Dd, KahanSum};
use crate::error::{domain, Result};

pub const SQRT_PI: f64 = 1.772_453_850_905_516;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("gamma requires a finite positive argument, got {x}"));
    }
    Ok(statrs::function::gamma::gamma(x))
}

pub(crate) fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Nonnegative real order ν of a Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return domain(format!("Bessel order must be finite and nonnegative, got {nu}"));
        }
        Ok(BesselOrder(nu))
    }

    pub fn nu(self) -> f64 {
        self.0
    }
}

/// J_ν(x) for ν ≥ 0, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_bessel_args(nu, x)?;
    Ok(bessel_pair(nu, x).0)
}

/// dJ_ν/dx.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    check_bessel_args(nu, x)?;
    Ok(derivative(nu, x))
}

fn check_bessel_args(nu: f64, x: f64) -> Result<()> {
    BesselOrder::new(nu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("Bessel argument must be finite and nonnegative, got {x}"));
    }
    Ok(())
}

fn derivative(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return match nu {
            1.0 => 0.5,
            n if n == 0.0 || n > 1.0 => 0.0,
            _ => f64::INFINITY,
        };
    }
    let (j, j1) = bessel_pair(nu, x);
    nu / x * j - j1
}

/// (J_ν(x), J_{ν+1}(x)); arguments assumed valid.
pub(crate) fn bessel_pair(nu: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (if nu == 0.0 { 1.0 } else { 0.0 }, 0.0);
    }
    if x < 2.0 || x * x < nu + 1.0 {
        (series(nu, x), series(nu + 1.0, x))
    } else {
        miller(nu, x)
    }
}

/// Ascending series; used only where its terms do not grow.
fn series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut t = 1.0;
    let mut sum = KahanSum::new();
    sum.add(1.0);
    for k in 1..500 {
        let kf = k as f64;
        t *= q / (kf * (nu + kf));
        sum.add(t);
        if t.abs() < 1e-17 * sum.value().abs() {
            break;
        }
    }
    (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)).exp() * sum.value()
}

fn miller_start(nu: f64, x: f64) -> usize {
    (x.max(nu) + 60.0 + 8.0 * x.cbrt()) as usize
}

/// Weights w_i with (x/2)^{ν0} = Σ_i w_i J_{ν0+2i}(x).
fn neumann_weights(nu0: f64, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    let mut c = 0.0;
    for i in 0..count {
        if i == 0 {
            w.push(statrs::function::gamma::gamma(nu0 + 1.0));
        } else {
            let fi = i as f64;
            c = if i == 1 { statrs::function::gamma::gamma(nu0 + 1.0) } else { c * (nu0 + fi - 1.0) / fi };
            w.push((nu0 + 2.0 * fi) * c);
        }
    }
    w
}

/// Miller backward recurrence normalized by the Neumann sum.
fn miller(nu: f64, x: f64) -> (f64, f64) {
    let n = nu.floor() as usize;
    let nu0 = nu - n as f64;
    let top = miller_start(nu, x).max(n + 2);
    let w = neumann_weights(nu0, top / 2 + 1);

    let (mut jk1, mut jk) = (0.0_f64, 1e-300_f64);
    let (mut at_n, mut at_n1) = (0.0, 0.0);
    let mut norm = 0.0;
    let mut k = top;
    loop {
        if k == n {
            at_n = jk;
        } else if k == n + 1 {
            at_n1 = jk;
        }
        if k.is_multiple_of(2) {
            norm += w[k / 2] * jk;
        }
        if k == 0 {
            break;
        }
        let jm = 2.0 * (nu0 + k as f64) / x * jk - jk1;
        jk1 = jk;
        jk = jm;
        k -= 1;
        if jk.abs() > 1e250 {
            jk *= 1e-250;
            jk1 *= 1e-250;
            at_n *= 1e-250;
            at_n1 *= 1e-250;
            norm *= 1e-250;
        }
    }
    let scale = (0.5 * x).powf(nu0) / norm;
    (at_n * scale, at_n1 * scale)
}

/// (J_0(x), Y_0(x)) for x > 0 via the Neumann series of Y_0.
pub(crate) fn bessel_j0_y0(x: f64) -> (f64, f64) {
    debug_assert!(x > 0.0);
    let top = miller_start(0.0, x) & !1;
    let (mut jk1, mut jk) = (0.0_f64, 1e-300_f64);
    let mut norm = 0.0;
    let mut ysum = 0.0;
    let mut k = top;
    loop {
        if k.is_multiple_of(2) {
            if k == 0 {
                norm += jk;
            } else {
                norm += 2.0 * jk;
                let half = (k / 2) as f64;
                let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                ysum += sign * jk / half;
            }
        }
        if k == 0 {
            break;
        }
        let jm = 2.0 * k as f64 / x * jk - jk1;
        jk1 = jk;
        jk = jm;
        k -= 1;
        if jk.abs() > 1e250 {
            jk *= 1e-250;
            jk1 *= 1e-250;
            norm *= 1e-250;
            ysum *= 1e-250;
        }
    }
    let j0 = jk / norm;
    let y0 = 2.0 / PI * ((0.5 * x).ln() + EULER_GAMMA) * j0 - 4.0 / PI * ysum / norm;
    (j0, y0)
}

/// First point of the zero-scan lattice for order ν; J_ν has no zero below it.
fn lattice_start(nu: f64) -> f64 {
    nu.max(1.0)
}

/// Zeros of J_ν are at least ~3.1 apart, so a unit lattice brackets each one.
const LATTICE_STEP: f64 = 1.0;

/// Scans the fixed lattice from index `i0` and refines each bracketed zero.
/// Stops when a found zero exceeds `xmax` or `limit` zeros have been found.
fn scan(nu: f64, i0: u64, xmax: f64, limit: usize) -> Vec<f64> {
    let x0 = lattice_start(nu);
    let mut out = Vec::new();
    let mut i = i0;
    let mut a = x0 + i as f64 * LATTICE_STEP;
    let mut fa = bessel_pair(nu, a).0;
    while out.len() < limit && a <= xmax {
        i += 1;
        let b = x0 + i as f64 * LATTICE_STEP;
        let fb = bessel_pair(nu, b).0;
        if fb == 0.0 || fa * fb < 0.0 {
            let z = if fb == 0.0 { b } else { refine(nu, a, b, fa) };
            if z > xmax {
                break;
            }
            out.push(z);
        }
        a = b;
        fa = fb;
    }
    out
}

/// Safeguarded Newton on a sign-change bracket (a, b).
fn refine(nu: f64, a: f64, b: f64, fa: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let lo_sign = fa.signum();
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let (j, j1) = bessel_pair(nu, x);
        if j == 0.0 {
            return x;
        }
        if j.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let dj = nu / x * j - j1;
        let step = j / dj;
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return next;
        }
        x = next;
    }
    x
}

/// All positive zeros of J_ν up to `xmax`, ascending.
pub fn bessel_zeros_below(nu: f64, xmax: f64) -> Result<Vec<f64>> {
    BesselOrder::new(nu)?;
    Ok(scan(nu, 0, xmax, usize::MAX))
}

/// Zeros of J_ν in (last of `known`, xmax], continuing the same scan that
/// produced `known`; results are bit-identical to a cold scan.
pub fn bessel_zeros_resume(nu: f64, known: &[f64], xmax: f64) -> Result<Vec<f64>> {
    BesselOrder::new(nu)?;
    let i0 = match known.last() {
        None => 0,
        Some(&last) => (last - lattice_start(nu)).ceil().max(0.0) as u64,
    };
    Ok(scan(nu, i0, xmax, usize::MAX))
}

/// The first `count` positive zeros of J_ν.
pub fn bessel_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    BesselOrder::new(nu)?;
    Ok(scan(nu, 0, f64::INFINITY, count))
}

/// The m-th positive zero j_{ν,m} (m ≥ 1).
pub fn bessel_zero(nu: f64, m: usize) -> Result<f64> {
    if m == 0 {
        return domain("zero index m must be at least 1");
    }
    Ok(*bessel_zeros(nu, m)?.last().expect("scan returns m zeros"))
}

/// A point z = magnitude·e^{iπ/4} on the ray where F is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerRayPoint {
    magnitude: f64,
}

impl KummerRayPoint {
    pub const MAX_MAGNITUDE: f64 = 200.0;

    pub fn new(magnitude: f64) -> Result<Self> {
        if !(0.0..=Self::MAX_MAGNITUDE).contains(&magnitude) {
            return domain(format!("ray magnitude must lie in [0, 200], got {magnitude}"));
        }
        Ok(KummerRayPoint { magnitude })
    }

    /// Accepts a complex point only if it lies on the π/4 ray.
    pub fn from_complex(z: Complex64) -> Result<Self> {
        let r = z.norm();
        if r > 0.0 && (z.arg() - FRAC_PI_4).abs() > 1e-12 {
            return domain(format!("{z} is not on the ray arg z = π/4"));
        }
        Self::new(r)
    }

    pub fn magnitude(self) -> f64 {
        self.magnitude
    }

    pub fn z(self) -> Complex64 {
        Complex64::from_polar(self.magnitude, FRAC_PI_4)
    }
}

/// Radius at which `kummer_f` switches from the series to the continued fraction.
pub const KUMMER_SWITCH: f64 = 8.0;

/// F(z) = Σ_k Γ((k+1)/2)(−z)^k/k! = √π e^{z²/4} − (2/z)(Φ(1,½;z²/4) − 1).
pub fn kummer_f(p: KummerRayPoint) -> Complex64 {
    if p.magnitude <= KUMMER_SWITCH {
        kummer_f_series(p)
    } else {
        kummer_f_continued_fraction(p)
    }
}

/// Even/odd split of the power series. The odd part is summed in
/// double-double: its terms reach e^{|z|²/4} before cancelling to O(1).
pub fn kummer_f_series(p: KummerRayPoint) -> Complex64 {
    let r = p.magnitude;
    if r == 0.0 {
        return Complex64::new(SQRT_PI, 0.0);
    }
    let r2 = Dd::new(r) * Dd::new(r);
    let (mut tre, mut tim) = (Dd::new(1.0), Dd::ZERO);
    let (mut sre, mut sim) = (Dd::new(1.0), Dd::ZERO);
    let mut j = 1u32;
    loop {
        // t_j = t_{j-1} · i r² / (2(2j+1))
        let d = 2.0 * (2 * j + 1) as f64;
        let (nre, nim) = (-tim, tre);
        tre = (nre * r2).div_f64(d);
        tim = (nim * r2).div_f64(d);
        sre = sre + tre;
        sim = sim + tim;
        let tmag = tre.hi.abs() + tim.hi.abs();
        let smag = sre.hi.abs() + sim.hi.abs();
        if (j as f64) > r * r && tmag < 1e-34 * smag {
            break;
        }
        j += 1;
    }
    // z·S with z = r(1+i)/√2
    let s = Dd::new(FRAC_1_SQRT_2);
    let s_lo = (Dd::new(0.5) - s * s).to_f64() / (2.0 * FRAC_1_SQRT_2);
    let inv_sqrt2 = s + Dd::new(s_lo);
    let k = inv_sqrt2 * r;
    let zs_re = (k * (sre - sim)).to_f64();
    let zs_im = (k * (sre + sim)).to_f64();
    let even = Complex64::from_polar(SQRT_PI, 0.25 * r * r);
    even - Complex64::new(zs_re, zs_im)
}

/// Large-|z| branch: the Laplace continued fraction of √π e^{x²}erfc(x), x = z/2,
/// whose asymptotic expansion is 2/z·(1 − 2/z² + 12/z⁴ − …).
pub fn kummer_f_continued_fraction(p: KummerRayPoint) -> Complex64 {
    let x = 0.5 * p.z();
    if p.magnitude == 0.0 {
        return Complex64::new(SQRT_PI, 0.0);
    }
    let eval = |depth: usize| {
        let mut t = x;
        for n in (1..=depth).rev() {
            t = x + (0.5 * n as f64) / t;
        }
        1.0 / t
    };
    let mut depth = 64;
    let mut prev = eval(depth);
    loop {
        depth *= 2;
        let cur = eval(depth);
        if (cur - prev).norm() <= 1e-16 * cur.norm() || depth >= 1 << 16 {
            return cur;
        }
        prev = cur;
    }
}

/// Truncated asymptotic expansion 2/z·Σ_{n<terms} (−1)^n (2n−1)!! 2^n z^{−2n}.
pub fn kummer_f_asymptotic_series(p: KummerRayPoint, terms: usize) -> Complex64 {
    let z = p.z();
    let w = 2.0 / (z * z);
    let mut t = Complex64::new(1.0, 0.0);
    let mut sum = t;
    for n in 1..terms {
        t *= -w * (2 * n - 1) as f64;
        sum += t;
    }
    2.0 / z * sum
}

/// ∫₀^∞ e^{iμs²}s^k ds = ½Γ((k+1)/2) e^{iπ(k+1)/4} μ^{−(k+1)/2}.
pub fn fresnel_moment(k: u32, mu: f64) -> Result<Complex64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return domain(format!("fresnel_moment requires mu > 0, got {mu}"));
    }
    let a = 0.5 * (k as f64 + 1.0);
    let mag = 0.5 * statrs::function::gamma::gamma(a) * mu.powf(-a);
    Ok(Complex64::from_polar(mag, FRAC_PI_2 * a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gamma_values() {
        assert_abs_diff_eq!(gamma(0.5).unwrap(), SQRT_PI, epsilon = 1e-14);
        assert_abs_diff_eq!(gamma(5.0).unwrap(), 24.0, epsilon = 1e-12);
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
    }

    #[test]
    fn bessel_trivial_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(2.5, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(bessel_j(0.5, PI).unwrap(), 0.0, epsilon = 1e-15);
        assert!(bessel_j(1.0, -1.0).is_err());
        assert!(bessel_j(-1.0, 1.0).is_err());
    }

    #[test]
    fn half_order_closed_form() {
        for &x in &[0.1, 1.0, 1.9, 2.1, 7.5, 33.0, 120.0, 199.0] {
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            assert_abs_diff_eq!(bessel_j(0.5, x).unwrap(), exact, epsilon = 1e-13);
            let exact15 = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert_abs_diff_eq!(bessel_j(1.5, x).unwrap(), exact15, epsilon = 1e-13);
        }
    }

    #[test]
    fn y0_matches_reference() {
        // scipy.special.y0
        let cases = [(0.5, -0.444_518_733_506_706_6), (3.0, 0.376_850_010_012_790_4), (17.0, -0.092_637_198_442_323_56)];
        for (x, y) in cases {
            assert_abs_diff_eq!(bessel_j0_y0(x).1, y, epsilon = 1e-13);
        }
    }

    #[test]
    fn half_order_zeros() {
        let z = bessel_zeros(0.5, 5).unwrap();
        for (m, zm) in z.iter().enumerate() {
            assert_abs_diff_eq!(*zm, (m + 1) as f64 * PI, epsilon = 1e-12);
        }
    }

    #[test]
    fn resume_is_bit_identical() {
        let cold = bessel_zeros_below(2.7, 80.0).unwrap();
        let head = bessel_zeros_below(2.7, 30.0).unwrap();
        let tail = bessel_zeros_resume(2.7, &head, 80.0).unwrap();
        let warm: Vec<f64> = head.into_iter().chain(tail).collect();
        assert_eq!(cold, warm);
    }

    #[test]
    fn kummer_origin_and_ray_check() {
        let f = kummer_f(KummerRayPoint::new(0.0).unwrap());
        assert_abs_diff_eq!(f.re, SQRT_PI, epsilon = 1e-15);
        assert!(KummerRayPoint::from_complex(Complex64::new(1.0, 0.0)).is_err());
        assert!(KummerRayPoint::from_complex(Complex64::new(1.0, 1.0)).is_ok());
        assert!(KummerRayPoint::new(250.0).is_err());
    }

    #[test]
    fn fresnel_first_moment() {
        let v = fresnel_moment(1, 3.0).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(v.im, 1.0 / 6.0, epsilon = 1e-15);
        assert!(fresnel_moment(0, 0.0).is_err());
    }
}
