mod data;

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use approx::assert_relative_eq;
use conewave_core::cluster_kernel::*;
use conewave_core::cone_geom::{chord, Cone};
use conewave_core::quadrature::legendre_cached;
use conewave_core::special_fn::{bessel_j, kummer_f, KummerRayPoint};
use conewave_core::spectrum::Lq;
use conewave_core::Error;
use data::oracles::{BESSEL_J0_Y0, CHI, HANKEL_H0, H_MODEL, R2_CLUSTER};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DELTA: f64 = 0.1;

fn chi() -> ChiProfile {
    make_chi(DELTA).unwrap()
}

fn table(lambda: u32) -> &'static AmplitudeA {
    static TABLES: OnceLock<[AmplitudeA; 3]> = OnceLock::new();
    let t = TABLES.get_or_init(|| {
        let c = chi();
        [100.0, 200.0, 400.0].map(|l| AmplitudeA::build(&c, l).unwrap())
    });
    match lambda {
        100 => &t[0],
        200 => &t[1],
        400 => &t[2],
        _ => unreachable!(),
    }
}

#[test]
fn chi_matches_oracle() {
    for &(delta, xi, want) in CHI {
        let c = make_chi(delta).unwrap();
        assert!((c.chi(xi) - want).abs() <= 1e-13 * c.chi_at_zero(), "{delta} {xi}");
        assert_eq!(c.chi(-xi), c.chi(xi));
    }
}

#[test]
fn chi_profile_shape() {
    let c = chi();
    assert!(c.chi_at_zero() > 0.0);
    for t in [0.0, 0.05, 0.1, 0.2, 0.3, -0.1, -0.2] {
        assert_eq!(c.chi_hat(t), 0.0, "{t}");
    }
    assert!(c.chi_hat(0.15) > 0.0 && c.chi_hat(-0.1001) > 0.0);
    assert!(matches!(make_chi(0.3), Err(Error::Domain(_))));
    assert!(matches!(make_chi(0.0), Err(Error::Domain(_))));
    let grid: Vec<f64> = (-50..=50).map(|k| k as f64 * 3.7).collect();
    let v = c.sample(&grid);
    for i in 0..grid.len() {
        assert!((v[i] - v[grid.len() - 1 - i]).abs() <= 1e-12 * c.chi_at_zero());
    }
}

#[test]
fn chi_decays_past_the_bump_scale() {
    let c = chi();
    let at = |x: f64| c.chi(x).abs() / c.chi_at_zero();
    // Fourier transform of exp(−1/(1−x²)) on a half-width δ/2: decay ~ exp(−(ξδ/2)^{1/2})
    let tail = (0..200).map(|k| at(200.0 / DELTA + k as f64 * 7.3)).fold(0.0, f64::max);
    assert!(tail < 1e-4, "{tail}");
    assert!(at(400.0 / DELTA) < at(100.0 / DELTA).max(1e-300) || at(400.0 / DELTA) < 1e-6);
}

#[test]
fn psi_cutoff() {
    for s in [0.0, 0.1, 0.25, -0.25] {
        assert_eq!(psi(s), 1.0);
    }
    for s in [0.5, -0.5, 0.7] {
        assert_eq!(psi(s), 0.0);
    }
    assert!(psi(0.4) > 0.0 && psi(0.4) < 1.0);
}

#[test]
fn b_reproduces_bessel_pair() {
    for &(x, j0, y0) in BESSEL_J0_Y0 {
        let e = Complex64::from_polar(1.0, x) * b_amplitude(x);
        assert!((e.re - j0).abs() <= 1e-13, "{x}");
        if x >= 8.0 {
            assert!((e.im - y0).abs() <= 1e-13, "{x}");
        }
    }
    for &(x, re, im) in HANKEL_H0 {
        let e = Complex64::from_polar(1.0, x) * b_amplitude(x);
        assert!((e.re - re).abs() <= 1e-14 && (e.im - im).abs() <= 1e-14, "{x}: {e}");
    }
    let (lo, hi) = (b_amplitude(20.0 - 1e-9), b_amplitude(20.0 + 1e-9));
    assert!((lo - hi).norm() < 1e-11);
}

#[test]
fn b_has_symbol_bounds() {
    // |b^{(k)}(x)| ≲ (1+x)^{−k−1/2} for k = 0, 1, 2
    let h = 1e-3;
    let mut worst = [0.0f64; 3];
    for i in 0..4000 {
        let x = 0.01 + i as f64 * 0.05;
        let (m, c, p) = (b_amplitude(x - h), b_amplitude(x), b_amplitude(x + h));
        let w = 1.0 + x;
        worst[0] = worst[0].max(c.norm() * w.sqrt());
        worst[1] = worst[1].max(((p - m) / (2.0 * h)).norm() * w.powf(1.5));
        worst[2] = worst[2].max(((p - 2.0 * c + m) / (h * h)).norm() * w.powf(2.5));
    }
    // the switch that removes Y₀ near the origin sets the constants: b'' ≈ 0.1 on [2, 10]
    assert!(worst[0] < 2.0 && worst[1] < 10.0 && worst[2] < 100.0, "{worst:?}");
}

#[test]
fn main_term_is_the_bessel_convolution() {
    let c = chi();
    for lambda in [50.0, 200.0] {
        for z in [0.02, 0.11, 0.15, 0.19, 0.4] {
            let a = a_lambda(&c, lambda, z).unwrap();
            let main = (lambda * Complex64::from_polar(1.0, lambda * z) * a).re;
            let conv = bessel_convolution(&c, lambda, z).unwrap();
            assert!((main - conv).abs() <= 1e-11 * lambda.sqrt(), "{lambda} {z}: {main} {conv}");
        }
    }
}

#[test]
fn r2_kernel_matches_oracle() {
    for &(delta, lambda, z, want) in R2_CLUSTER {
        let c = make_chi(delta).unwrap();
        let got = r2_cluster_kernel(&c, lambda, z).unwrap();
        assert!((got - want).abs() <= 1e-11 * (1.0 + want.abs()), "{delta} {lambda} {z}: {got} vs {want}");
    }
    assert_eq!(r2_cluster_kernel(&chi(), 200.0, 4.0 * DELTA).unwrap(), 0.0);
    assert!(r2_cluster_kernel(&chi(), 5.0, 0.1).is_err());
}

#[test]
fn table_interpolates_the_direct_amplitude() {
    let c = chi();
    let amp = table(200);
    let scale = (0..200).map(|i| amp.a(0.001 * i as f64).norm()).fold(0.0, f64::max);
    for z in [0.0013, 0.0537, 0.1111, 0.1503, 0.19977, 0.33] {
        let direct = a_lambda(&c, 200.0, z).unwrap();
        assert!((amp.a(z) - direct).norm() <= 1e-7 * scale, "{z}");
    }
    assert_eq!(amp.a(amp.zeta_max() + 1e-3), Complex64::new(0.0, 0.0));
    assert_relative_eq!(amp.normalized(0.15).norm(), amp.a(0.15).norm() * 200f64.sqrt(), max_relative = 1e-14);
}

#[test]
fn cone_geometric_kernel() {
    let amp = table(100);
    assert_eq!(cone_geo_cluster_kernel(amp, 0.1, 0.05, 1.5 * PI).unwrap(), Complex64::new(0.0, 0.0));
    let k = cone_geo_cluster_kernel(amp, 0.1, 0.05, PI).unwrap();
    assert_relative_eq!(k.norm(), amp.normalized(0.15).norm(), max_relative = 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (r1, r2, th) = (rng.random_range(0.01..0.2), rng.random_range(0.01..0.2), rng.random_range(-PI..PI));
        let k = cone_geo_cluster_kernel(amp, r1, r2, th).unwrap();
        assert_relative_eq!(k.norm(), amp.normalized(chord(r1, r2, th)).norm(), max_relative = 1e-12);
    }
}

#[test]
fn diffractive_kernel_refines() {
    let amp = table(100);
    let cone = Cone::new(3.0).unwrap();
    let base = diff_cluster_kernel(amp, cone, 0.1, 0.12, 1.0).unwrap();
    let fine = diff_cluster_kernel_with_order(amp, cone, 0.1, 0.12, 1.0, 200).unwrap();
    assert!((base.value - fine.value).norm() <= 1e-6 * fine.value.norm(), "{base:?} {fine:?}");
    assert!(base.error_estimate <= 1e-6 * base.value.norm());
}

#[test]
fn diffractive_kernel_edge_cases() {
    let amp = table(100);
    let cone = Cone::new(2.0).unwrap();
    // sin(θ/ρ) = 0 with cos(θ/ρ) = −1
    let z = diff_cluster_kernel(amp, cone, 0.05, 0.08, 2.0 * PI).unwrap();
    assert_eq!(z.value, Complex64::new(0.0, 0.0));
    assert!(matches!(diff_cluster_kernel(amp, cone, 0.05, 0.08, 4.0 * PI), Err(Error::Singular(_))));
    assert!(matches!(diff_cluster_kernel(amp, cone, 0.005, 0.08, 1.0), Err(Error::Regime(_))));
    assert!(matches!(diff_cluster_kernel(amp, cone, 0.05, 0.3, 1.0), Err(Error::Regime(_))));
}

#[test]
fn diffractive_kernel_small_radii_decay() {
    // r₁ + r₂ ≤ δ/2: no stationary point, |K| ≲ λ^{−1}(r₁r₂)^{−1/2}
    let amp = table(200);
    let cone = Cone::new(2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..40 {
        let r1: f64 = rng.random_range(0.006..0.04);
        let r2 = rng.random_range(0.006..(0.05 - r1).max(0.0061));
        let th = rng.random_range(0.01..3.0);
        let k = diff_cluster_kernel(amp, cone, r1, r2, th).unwrap();
        worst = worst.max(k.value.norm() * 200.0 * (r1 * r2).sqrt());
    }
    assert!(worst < 20.0, "{worst}");
}

#[test]
fn model_operator_matches_closed_form() {
    let amp = table(200);
    let cone = Cone::new(1.5).unwrap();
    let mut checked = 0;
    for &(mu, a2, theta, re, im) in H_MODEL {
        // choose r₁, r₂ with 2(r₁ + r₂) = a² and λr₁r₂ = μ when the regime allows it
        let (sum, p) = (0.5 * a2, mu / 200.0);
        let disc = sum * sum - 4.0 * p;
        if disc < 0.0 || sum >= 2.0 * DELTA || sum <= 0.5 * DELTA {
            continue;
        }
        let r1 = 0.5 * (sum - disc.sqrt());
        let r2 = sum - r1;
        if r1 < 1.0 / 200.0 {
            continue;
        }
        assert_relative_eq!(model_scale(r1, r2), a2.sqrt(), max_relative = 1e-14);
        let h = h_approx(amp, cone, r1, r2, theta).unwrap();
        let pre = 2.0 * 1.5 * a2.sqrt() * amp.normalized(sum);
        let want = pre * Complex64::new(re, im);
        assert!((h - want).norm() <= 1e-10 * want.norm(), "{mu} {theta}: {h} vs {want}");
        checked += 1;
    }
    assert_eq!(checked, H_MODEL.len());
}

#[test]
fn model_operator_limits() {
    let amp = table(200);
    let cone = Cone::new(2.0).unwrap();
    let (r1, r2) = (0.075, 0.075);
    assert_eq!(h_approx(amp, cone, r1, r2, 0.0).unwrap(), Complex64::new(0.0, 0.0));
    // the limit θ → 0⁺ is πρã(r₁+r₂), not 0: the kernel θ/(s²+θ²) tends to πδ(s)
    let edge = h_approx(amp, cone, r1, r2, 1e-9).unwrap();
    let jump = PI * 2.0 * amp.normalized(0.15);
    assert!((edge - jump).norm() <= 1e-6 * jump.norm(), "{edge} {jump}");
    let odd = h_approx(amp, cone, r1, r2, -0.3).unwrap() + h_approx(amp, cone, r1, r2, 0.3).unwrap();
    assert!(odd.norm() < 1e-15);
    assert!(matches!(h_approx(amp, cone, 0.2, 0.1, 0.3), Err(Error::Regime(_))));
    assert!(matches!(h_approx(amp, cone, 0.001, 0.1, 0.3), Err(Error::Regime(_))));
}

#[test]
fn model_operator_two_routes() {
    let amp = table(200);
    let cone = Cone::new(2.0).unwrap();
    for (r1, r2, th) in [(0.075, 0.075, 0.05), (0.03, 0.1, 0.4), (0.1, 0.08, -1.3), (0.02, 0.04, 2.5)] {
        let direct = h_approx(amp, cone, r1, r2, th).unwrap();
        let fourier = h_approx_by_multiplier(amp, cone, r1, r2, th).unwrap();
        assert!((direct - fourier).norm() <= 1e-4 * direct.norm(), "{r1} {r2} {th}: {direct} {fourier}");
    }
}

#[test]
fn conjugate_poisson_symbol() {
    assert_eq!(conjugate_poisson_multiplier(1.0, 0.0).unwrap(), Complex64::new(0.0, 0.0));
    let v = conjugate_poisson_multiplier(1.0, 1.0).unwrap();
    assert_relative_eq!(v.im, -(-1.0f64).exp(), max_relative = 1e-15);
    assert_eq!(v.re, 0.0);
    assert!(conjugate_poisson_multiplier(0.0, 1.0).is_err());
    // ∫ θ/(π(s²+θ²)) e^{−iθξ} dθ = −(2i/π)(π/2 − ∫₀^∞ s² sin(θξ)/(θ(s²+θ²)) dθ) for ξ > 0
    let gl = legendre_cached(24);
    for s in [0.1, 0.5, 1.0] {
        for xi in [0.25, 1.0, 3.0, 10.0, 40.0] {
            let g = |th: f64| s * s * (th * xi).sin() / (th * (s * s + th * th));
            let h = (0.5 / xi).min(0.5 * s);
            let mut acc = 0.0;
            let mut a = 0.0;
            while a < 4000.0 {
                acc += gl.integrate(g, a, a + h);
                a += h;
            }
            // tail ∫_A^∞ s² sin(θξ)/θ³ ≈ s² cos(Aξ)/(ξA³)
            acc += s * s * (a * xi).cos() / (xi * a.powi(3));
            let oracle = -2.0 / PI * (0.5 * PI - acc);
            let got = conjugate_poisson_multiplier(s, xi).unwrap();
            assert!((got.im - oracle).abs() <= 1e-5, "{s} {xi}: {} vs {oracle}", got.im);
            assert_eq!(conjugate_poisson_multiplier(s, -xi).unwrap(), -got);
        }
    }
}

fn amp_at(lambda: f64, r: f64) -> Complex64 {
    a_lambda(&chi(), lambda, r).unwrap() * lambda.sqrt()
}

#[test]
fn multiplier_two_routes() {
    for mu in [1.0, 25.0, 400.0] {
        let (r1, r2) = (0.075, 0.075);
        let lambda = mu / (r1 * r2);
        let amp = Complex64::new(0.8, -0.3);
        let smu = f64::sqrt(mu);
        for k in 1..=20 {
            let xi = smu * k as f64 / 20.0;
            let a = h_multiplier(lambda, 2.0, r1, r2, amp, xi).unwrap();
            let b = h_multiplier_series(lambda, 2.0, r1, r2, amp, xi).unwrap();
            assert!((a - b).norm() <= 1e-8 * a.norm(), "{mu} {xi}: {a} {b}");
        }
        assert_eq!(h_multiplier(lambda, 2.0, r1, r2, amp, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        let m = h_multiplier(lambda, 2.0, r1, r2, amp, -3.0).unwrap();
        assert_eq!(m, -h_multiplier(lambda, 2.0, r1, r2, amp, 3.0).unwrap());
    }
}

#[test]
fn multiplier_envelope() {
    for mu in [1.0, 25.0, 400.0] {
        let (r1, r2) = (0.075, 0.075);
        let lambda = mu / (r1 * r2);
        let amp = amp_at(lambda, r1 + r2);
        let xi: Vec<f64> = (0..400).map(|i| 1e-3 * f64::sqrt(mu) * 10f64.powf(i as f64 * 7.0 / 400.0)).collect();
        let t = MultiplierTable::build(lambda, 2.0, r1, r2, amp, xi).unwrap();
        assert!(t.constant <= 10.0, "{mu}: {}", t.constant);
        // |zF(z)| → 2 on the ray
        assert!((t.tail_constant - 2.0).abs() < 0.05, "{mu}: {}", t.tail_constant);
    }
}

#[test]
fn multiplier_rejects_degenerate_radii() {
    assert!(h_multiplier(100.0, 2.0, 0.0, 0.1, Complex64::new(1.0, 0.0), 1.0).is_err());
    let z = KummerRayPoint::new(3.0).unwrap();
    // r₁ = r₂ = 1: a = 2, μ = 1, so ξ = 3/2 sits at |z| = 3
    let direct = h_multiplier(1.0, 1.0, 1.0, 1.0, Complex64::new(1.0, 0.0), 1.5).unwrap();
    let want = 2.0 * PI * Complex64::from_polar(1.0, -FRAC_PI_4) * kummer_f(z);
    assert!((direct - want).norm() <= 1e-14 * want.norm());
}

#[test]
fn littlewood_paley_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let grid: Vec<f64> = (0..1000).map(|_| rng.random_range(-300.0..300.0)).chain([0.0, 0.5, -2.0, 4.0]).collect();
    let pieces = littlewood_paley(&grid, 8).unwrap();
    assert_eq!(pieces.len(), 9);
    for (i, &x) in grid.iter().enumerate() {
        let sum: f64 = pieces.iter().map(|p| p[i]).sum();
        assert!((sum - 1.0).abs() <= 1e-12, "{x}");
        assert!(pieces.iter().filter(|p| p[i] != 0.0).count() <= 2, "{x}");
        if x.abs() >= 2.0 {
            assert_eq!(pieces[0][i], 0.0);
        }
        for (ell, p) in pieces.iter().enumerate().take(8).skip(1) {
            let s = 2f64.powi(ell as i32 - 1);
            if p[i] != 0.0 {
                assert!(x.abs() > 0.5 * s && x.abs() < 2.0 * s, "{ell} {x}");
            }
        }
    }
    let at0 = littlewood_paley(&[0.0], 4).unwrap();
    assert_eq!(at0.iter().map(|p| p[0]).collect::<Vec<_>>(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    assert!(littlewood_paley(&[0.0], 0).is_err());
}

#[test]
fn sobolev_pieces() {
    let (lambda, rho, r1, r2) = (400.0 / 0.005625, 2.0, 0.075, 0.075);
    let amp = Complex64::new(0.7, 0.2);
    // a single frequency k has |H_ℓ f| constant on the circle
    let kk = 64usize;
    let k = 6i64;
    let mut f = vec![Complex64::new(0.0, 0.0); 2 * kk + 1];
    f[(kk as i64 + k) as usize] = Complex64::new(1.0, 0.0);
    let xi = k as f64 / rho;
    let ell = 3;
    let p = sobolev_piece_bound(lambda, rho, r1, r2, amp, ell, 8, &f).unwrap();
    let beta = littlewood_paley(&[xi], 8).unwrap()[ell][0];
    let m = h_multiplier(lambda, rho, r1, r2, amp, xi).unwrap().norm() * beta;
    let period = 2.0 * PI * rho;
    assert_relative_eq!(p.norm6, m * period.powf(1.0 / 6.0 - 0.5), max_relative = 1e-12);
    assert_eq!(p.branch, PieceBranch::Plateau);
    assert!(p.ratio.is_finite() && p.ratio > 0.0);

    let hi = sobolev_piece_bound(lambda, rho, r1, r2, amp, 7, 8, &f).unwrap();
    assert_eq!(hi.branch, PieceBranch::Tail);
    assert_relative_eq!(hi.bound, 2f64.powf(-14.0 / 3.0), max_relative = 1e-14);

    let zero = vec![Complex64::new(0.0, 0.0); 2 * kk + 1];
    assert_eq!(sobolev_piece_bound(lambda, rho, r1, r2, amp, 2, 8, &zero).unwrap().ratio, 0.0);
    assert!(sobolev_piece_bound(lambda, rho, r1, r2, amp, 2, 8, &zero[1..]).is_err());
}

#[test]
fn sobolev_ratio_is_bounded_on_random_data() {
    let (rho, r1, r2) = (2.0, 0.075, 0.075);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut worst = 0.0f64;
    for mu in [1.0, 25.0, 400.0] {
        let lambda = mu / (r1 * r2);
        let amp = amp_at(lambda, r1 + r2);
        let kk = 512;
        let f: Vec<Complex64> =
            (0..2 * kk + 1).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        for ell in 0..=8 {
            worst = worst.max(sobolev_piece_bound(lambda, rho, r1, r2, amp, ell, 8, &f).unwrap().ratio);
        }
    }
    assert!(worst < 10.0, "{worst}");
}

#[test]
fn angular_young_norms() {
    let brute = |s: f64, rho: f64, q: f64| {
        // periodic and analytic: the trapezoid rule is spectrally accurate
        let n = 200_000;
        let c = (s / rho).cosh();
        let h = 2.0 * PI * rho / n as f64;
        let sum: f64 = (0..n)
            .map(|i| {
                let x = (-PI * rho + i as f64 * h) / rho;
                (x.sin() / (c - x.cos())).abs().powf(q)
            })
            .sum();
        (sum * h).powf(1.0 / q)
    };
    for (s, rho) in [(0.05, 2.0), (0.5, 1.0), (3.0, 2.0)] {
        for q in [1.5, 2.0] {
            let y = theta_young_norm(s, rho, Lq::Finite(q)).unwrap();
            assert_relative_eq!(y.norm, brute(s, rho, q), max_relative = 1e-7);
        }
        let sup = theta_young_norm(s, rho, Lq::Inf).unwrap().norm;
        // maximum of sin x/(cosh σ − cos x) is 1/sinh σ
        assert_relative_eq!(sup, 1.0 / (s / rho).sinh(), max_relative = 1e-10);
    }
    let far = theta_young_norm(10.0, 2.0, Lq::Finite(2.0)).unwrap();
    assert!(far.norm <= 10.0 * (-5.0f64).exp(), "{far:?}");
    let near = theta_young_norm(0.01, 2.0, Lq::Finite(1.0)).unwrap();
    assert_eq!(near.envelope, 1.0);
    assert!(near.norm.is_finite());
    assert!(theta_young_norm(0.0, 2.0, Lq::Inf).is_err());
}

#[test]
fn angular_young_ratio_is_bounded() {
    let mut worst = 0.0f64;
    for rho in [0.5, 1.0, 2.0, 3.0] {
        for i in 0..40 {
            let s = 1e-3 * 10f64.powf(i as f64 * 4.0 / 40.0);
            for q in [Lq::Finite(1.5), Lq::Finite(2.0)] {
                worst = worst.max(theta_young_norm(s, rho, q).unwrap().ratio);
            }
        }
    }
    assert!(worst < 50.0, "{worst}");
}

#[test]
fn planar_kernel_scaling() {
    let c = chi();
    let (mut ker, mut rem) = (vec![], vec![]);
    for lambda in [50.0, 100.0, 200.0, 400.0] {
        let amp = AmplitudeA::build(&c, lambda).unwrap();
        let zs: Vec<f64> = (1..=400).map(|i| 2.0 * DELTA * i as f64 / 400.0).collect();
        let splits: Vec<KernelSplit> = zs.iter().map(|&z| r2_cluster_split(&c, &amp, z).unwrap()).collect();
        ker.push(splits.iter().map(|s| s.kernel.abs()).fold(0.0, f64::max) / lambda.sqrt());
        rem.push(splits.iter().map(|s| s.remainder.abs()).fold(0.0, f64::max));
        // exactly zero outside the support of the wave kernel
        assert_eq!(r2_cluster_kernel(&c, lambda, 4.0 * DELTA).unwrap(), 0.0);
        // the demodulated kernel is slowly varying on (δ, 2δ)
        let demod: Vec<Complex64> = (0..=200).map(|i| amp.normalized(DELTA * (1.0 + i as f64 / 200.0))).collect();
        let tv: f64 = demod.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
        let sup = demod.iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(tv <= 10.0 * sup, "{lambda}: {tv} {sup}");
    }
    let (lo, hi) = ker.iter().fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi <= 2.0 * lo, "{ker:?}");
    // the τ cutoff's share shrinks as λ grows past the scale 1/δ of χ
    assert!(rem.windows(2).all(|w| w[1] < w[0]), "{rem:?}");
}

#[test]
fn residual_scaling_relative_to_the_amplitude() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let cone = Cone::new(2.0).unwrap();
    let mut samples = vec![];
    while samples.len() < 60 {
        let (r1, r2): (f64, f64) = (rng.random_range(0.005..0.2), rng.random_range(0.005..0.2));
        if !(r1 + r2 > 0.05 && r1 + r2 < 0.2) {
            continue;
        }
        let th = 10f64.powf(rng.random_range(-3.0f64..(2.0 * PI).log10()));
        samples.push((r1, r2, if rng.random_bool(0.5) { th } else { -th }));
    }
    let mut sups = vec![];
    for lambda in [100u32, 200, 400] {
        let amp = table(lambda);
        let l = lambda as f64;
        let mut sup = 0.0f64;
        for &(r1, r2, th) in samples.iter().filter(|s| s.0 >= 1.0 / l && s.1 >= 1.0 / l) {
            let kt = k_tilde(amp, cone, r1, r2, th).unwrap();
            sup = sup.max(kt.norm() * (l * r1 * r2).sqrt() / amp.normalized(r1 + r2).norm());
        }
        sups.push(sup);
    }
    let (lo, hi) = sups.iter().fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi <= 3.0 * lo, "{sups:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn b_tracks_j0(x in 0.0f64..200.0) {
        let e = Complex64::from_polar(1.0, x) * b_amplitude(x);
        prop_assert!((e.re - bessel_j(0.0, x).unwrap()).abs() <= 1e-13);
    }

    #[test]
    fn psi_is_an_even_cutoff(s in -1.0f64..1.0) {
        let v = psi(s);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert_eq!(v, psi(-s));
    }

    #[test]
    fn littlewood_paley_sums_to_one(x in -1e4f64..1e4, ell_max in 1usize..14) {
        let p = littlewood_paley(&[x], ell_max).unwrap();
        let s: f64 = p.iter().map(|v| v[0]).sum();
        prop_assert!((s - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn geometric_kernel_is_even(r1 in 0.01f64..0.2, r2 in 0.01f64..0.2, th in -3.1f64..3.1) {
        let amp = table(100);
        let a = cone_geo_cluster_kernel(amp, r1, r2, th).unwrap();
        let b = cone_geo_cluster_kernel(amp, r2, r1, -th).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
    }
}
