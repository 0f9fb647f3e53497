//! The five experiments. Each composes the core modules, returns rows and
//! checks, and writes results.csv, summary.json and its own data files.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use conewave_core::cluster_kernel::{
    a_lambda, h_multiplier, h_multiplier_series, k_tilde, make_chi, r2_cluster_kernel, r2_cluster_split, AmplitudeA,
    MultiplierTable,
};
use conewave_core::cone_geom::{Cone, PolarPoint};
use conewave_core::phase_lab::{
    derivative_check, dg_expansion_check, no_critical_point_decay, psi_lower_bound_check, stationary_phase_probe, Amplitude,
    Phase, PsiSampling,
};
use conewave_core::special_fn::{kummer_f, kummer_f_continued_fraction, kummer_f_series, KummerRayPoint};
use conewave_core::spectrum::{
    cluster_sup_operator_norm, delta_q, fit_scaling_exponent, lower_bound_2_to_q, sector_correspondence_check, ClusterWindow,
    DirectZeros, Lq, PolarGrid, TruncatedCone, ZeroProvider,
};
use conewave_core::wave_kernel::{kernel_sample, propagator_pairing, GaussianBump, GeomValue};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{fmt17, write_csv, write_json, write_results, Check, Fit, Row, Summary, SUMMARY_SCHEMA};
use crate::zero_cache::{OpenStatus, ZeroCache};
use crate::{io_err, Context, Experiment, Result, RunConfig};

pub const DEFAULT_TRIALS: usize = 64;
pub const DEFAULT_KERNEL_SAMPLES: usize = 1000;
pub const DEFAULT_RESIDUAL_SAMPLES: usize = 200;
pub const DEFAULT_PSI_SAMPLES: usize = 10_000;

/// Everything a run produced; the same data is on disk.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub experiment: Experiment,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    pub fits: Vec<Fit>,
    pub notes: Vec<String>,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    fn new(experiment: Experiment) -> Self {
        RunOutcome { experiment, rows: vec![], checks: vec![], fits: vec![], notes: vec![], files: vec![] }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.fits.iter().all(|f| f.pass)
    }

    pub fn check<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }
}

/// Runs `cfg.experiment` and writes its outputs under `cfg.output_path`.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let out = &cfg.output_path;
    fs::create_dir_all(out).map_err(io_err(out))?;
    let mut o = RunOutcome::new(cfg.experiment);
    match cfg.experiment {
        Experiment::SpectrumScaling => spectrum_scaling(cfg, &mut o)?,
        Experiment::WaveValidate => wave_validate(cfg, &mut o)?,
        Experiment::MultiplierEnvelope => multiplier_envelope(cfg, &mut o)?,
        Experiment::PhaseCertify => phase_certify(cfg, &mut o)?,
        Experiment::SectorCheck => sector_check(cfg, &mut o)?,
    }
    let results = out.join("results.csv");
    write_results(&results, cfg.experiment.name(), &o.rows)?;
    o.files.insert(0, results);
    let summary_path = out.join("summary.json");
    o.files.push(summary_path.clone());
    let summary = Summary {
        schema: SUMMARY_SCHEMA,
        experiment: cfg.experiment.name(),
        config: cfg,
        pass: o.pass(),
        checks: &o.checks,
        fits: &o.fits,
        notes: &o.notes,
        files: o.files.iter().map(|p| file_name(p)).collect(),
    };
    write_json(&summary_path, &summary)?;
    Ok(o)
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn q_label(q: Lq) -> String {
    match q {
        Lq::Inf => "inf".into(),
        Lq::Finite(q) => format!("{q}"),
    }
}

fn spectrum_scaling(cfg: &RunConfig, o: &mut RunOutcome) -> Result<()> {
    let qs = cfg.q_values()?;
    let trials = cfg.trials.unwrap_or(DEFAULT_TRIALS);
    let cache = match &cfg.zero_cache {
        Some(p) => {
            let (c, status) = ZeroCache::open(p)?;
            if let OpenStatus::Rebuilt(reason) = status {
                o.notes.push(format!("zero cache rebuilt ({reason})"));
            }
            Some(c)
        }
        None => None,
    };
    let zeros: &dyn ZeroProvider = match &cache {
        Some(c) => c,
        None => &DirectZeros,
    };
    for rho in cfg.rhos() {
        let tc = TruncatedCone::new(Cone::new(rho).context(|| "cone".into())?, cfg.radius).context(|| "cone".into())?;
        let mut series: Vec<Vec<(f64, f64)>> = vec![vec![]; qs.len()];
        let mut modes = Vec::new();
        for &lambda in &cfg.lambda_list {
            let window = ClusterWindow::build(tc, lambda, zeros).context(|| format!("window rho={rho} lambda={lambda}"))?;
            modes.extend(window.modes.iter().copied());
            for (qi, &q) in qs.iter().enumerate() {
                let measured = match q {
                    Lq::Inf => cluster_sup_operator_norm(&window, tc, &PolarGrid::for_window(tc, &window)),
                    Lq::Finite(p) => {
                        lower_bound_2_to_q(&window, tc, p, trials, cfg.seed)
                            .context(|| format!("L^{p} lower bound rho={rho} lambda={lambda}"))?
                            .ratio
                    }
                };
                series[qi].push((lambda, measured));
                o.rows.push(Row::new(
                    "cluster-norm",
                    format!("rho={rho};q={};lambda={lambda};modes={}", q_label(q), window.modes.len()),
                    measured,
                    lambda.powf(delta_q(q)),
                ));
            }
        }
        for (qi, &q) in qs.iter().enumerate() {
            if series[qi].len() < 4 {
                o.notes.push(format!("rho={rho} q={}: fewer than 4 frequencies, no slope fitted", q_label(q)));
                continue;
            }
            let fit = fit_scaling_exponent(&series[qi]).context(|| "slope fit".into())?;
            let threshold = delta_q(q) + 0.15;
            o.fits.push(Fit {
                rho,
                q: q_label(q),
                slope: fit.slope,
                intercept: fit.intercept,
                residual: fit.residual,
                threshold,
                pass: fit.slope <= threshold,
            });
        }
        let path = cfg.output_path.join(format!("modes_rho{rho}.csv"));
        write_csv(
            &path,
            &["k", "m", "nu", "lambda", "norm_const"],
            modes.iter().map(|m| vec![m.k.to_string(), m.m.to_string(), fmt17(m.nu), fmt17(m.lambda), fmt17(m.norm_const)]),
        )?;
        o.files.push(path);
    }
    if let Some(c) = &cache {
        c.save()?;
    }
    Ok(())
}

fn wave_validate(cfg: &RunConfig, o: &mut RunOutcome) -> Result<()> {
    let samples = cfg.samples.unwrap_or(DEFAULT_KERNEL_SAMPLES);
    let mut sweep = Vec::new();
    for rho in cfg.rhos() {
        let cone = Cone::new(rho).context(|| "cone".into())?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let (mut max_diff, mut max_err, mut shadow) = (0.0f64, 0.0f64, 0usize);
        let r_hi = cfg.radius.min(1.0);
        for _ in 0..samples {
            let (r1, r2) = (rng.random_range(0.05 * r_hi..r_hi), rng.random_range(0.05 * r_hi..r_hi));
            let th1 = rng.random_range(-PI * rho..PI * rho);
            let th2 = rng.random_range(-PI * rho..PI * rho);
            let t = r1 + r2 + rng.random_range(0.01..2.0);
            let (p1, p2) = (
                PolarPoint::on(cone, r1, th1).context(|| "point".into())?,
                PolarPoint::on(cone, r2, th2).context(|| "point".into())?,
            );
            let s = kernel_sample(t, p1, p2, cone).context(|| format!("kernel at t={t}"))?;
            if s.shadow_singular {
                shadow += 1;
            } else {
                max_diff = max_diff.max(s.diff_value.abs());
                max_err = max_err.max(s.quadrature_error_estimate);
            }
            let geom = match s.geom_value {
                GeomValue::Finite(g) => fmt17(g),
                GeomValue::Singular => "inf".into(),
            };
            sweep.push(vec![
                fmt17(rho),
                fmt17(t),
                fmt17(p1.r),
                fmt17(p1.theta),
                fmt17(p2.r),
                fmt17(p2.theta),
                geom,
                fmt17(s.diff_value),
                fmt17(s.quadrature_error_estimate),
            ]);
        }
        let params = format!("rho={rho};samples={samples};shadow_singular={shadow}");
        o.rows.push(Row::new("diffracted-max", params.clone(), max_diff, if rho == 1.0 { 1e-10 } else { f64::NAN }));
        o.rows.push(Row::new("diffracted-quadrature-error", params, max_err, f64::NAN));
        if rho == 1.0 {
            o.checks.push(Check::at_most("plane: diffracted kernel vanishes", max_diff, 1e-10));
            continue;
        }
        // ⟨E(t)f, g⟩ by the closed-form kernel and by the eigenbasis
        let tc = TruncatedCone::new(cone, cfg.radius).context(|| "cone".into())?;
        let f = GaussianBump { r0: 0.5, theta0: 0.0, sigma: 0.05 };
        let g = GaussianBump { r0: 0.5, theta0: 2.0 * PI / 3.0, sigma: 0.05 };
        let t = 0.9;
        match propagator_pairing(t, &f, &g, tc, cfg.lambda_max()) {
            Ok(p) => {
                let rel = p.difference.abs() / p.kernel_route.abs();
                o.rows.push(Row::new(
                    "pairing",
                    format!("rho={rho};R={};t={t};lambda_max={};modes={}", cfg.radius, cfg.lambda_max(), p.modes_used),
                    rel,
                    1e-2,
                ));
                o.checks.push(Check::at_most(format!("rho={rho}: kernel and spectral pairings agree"), rel, 1e-2));
            }
            Err(conewave_core::Error::Domain(why)) => o.notes.push(format!("rho={rho}: pairing skipped ({why})")),
            Err(e) => return Err(e).context(|| "pairing".into()),
        }
    }
    let path = cfg.output_path.join("kernel_sweep.csv");
    write_csv(&path, &["rho", "t", "r1", "theta1", "r2", "theta2", "geom", "diff", "err"], sweep)?;
    o.files.push(path);
    Ok(())
}

fn multiplier_envelope(cfg: &RunConfig, o: &mut RunOutcome) -> Result<()> {
    kummer_rows(o);
    let delta = cfg.delta;
    let chi = make_chi(delta).context(|| "chi".into())?;
    let rho = cfg.rho;
    let cone = Cone::new(rho).context(|| "cone".into())?;

    // Ĥ envelope and the two evaluation routes, at r₁ + r₂ = 3δ/2
    let (r1, r2) = (0.75 * delta, 0.75 * delta);
    for mu in [1.0, 25.0, 400.0] {
        let lambda = mu / (r1 * r2);
        let amp = a_lambda(&chi, lambda, r1 + r2).context(|| "amplitude".into())? * lambda.sqrt();
        let smu = mu.sqrt();
        let xi: Vec<f64> = (0..400).map(|i| 1e-3 * smu * 10f64.powf(i as f64 * 7.0 / 400.0)).collect();
        let table = MultiplierTable::build(lambda, rho, r1, r2, amp, xi).context(|| format!("multiplier mu={mu}"))?;
        for ((x, v), env) in table.xi.iter().zip(&table.values).zip(&table.envelope) {
            let regime = if *x <= smu { "multiplier-plateau" } else { "multiplier-tail" };
            o.rows.push(Row::new(regime, format!("mu={mu};xi={}", fmt17(*x)), v.norm(), *env));
        }
        o.checks.push(Check::at_most(format!("mu={mu}: multiplier envelope constant"), table.constant, 10.0));
        let mut worst = 0.0f64;
        for k in 1..=20 {
            let x = smu * k as f64 / 20.0;
            let a = h_multiplier(lambda, rho, r1, r2, amp, x).context(|| "multiplier".into())?;
            let b = h_multiplier_series(lambda, rho, r1, r2, amp, x).context(|| "multiplier series".into())?;
            worst = worst.max((a - b).norm() / a.norm());
        }
        o.rows.push(Row::new("multiplier-two-routes", format!("mu={mu}"), worst, 1e-8));
        o.checks.push(Check::at_most(format!("mu={mu}: multiplier routes agree"), worst, 1e-8));
    }

    // residual K̃ = e^{−iλ(r₁+r₂)}K − H over random configurations
    let lambdas = cfg.residual_lambdas.clone().unwrap_or_else(|| vec![100.0, 200.0, 400.0]);
    let samples = cfg.samples.unwrap_or(DEFAULT_RESIDUAL_SAMPLES);
    let lo_r = 1.0 / lambdas[0];
    if !(lo_r < 2.0 * delta) {
        return Err(crate::CliError::Config("residual sweep needs 1/lambda < 2 delta".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut configs = Vec::with_capacity(samples);
    while configs.len() < samples {
        let (a, b): (f64, f64) = (rng.random_range(lo_r..2.0 * delta), rng.random_range(lo_r..2.0 * delta));
        if !(a + b > 0.5 * delta && a + b < 2.0 * delta) {
            continue;
        }
        let th = 10f64.powf(rng.random_range(-3.0f64..(2.0 * PI).log10()));
        configs.push((a, b, if rng.random_bool(0.5) { th } else { -th }));
    }
    let (mut raw, mut rel) = (vec![], vec![]);
    for &lambda in &lambdas {
        let amp = AmplitudeA::build(&chi, lambda).context(|| format!("amplitude table lambda={lambda}"))?;
        let (mut sup, mut sup_rel) = (0.0f64, 0.0f64);
        for &(a, b, th) in configs.iter().filter(|c| c.0 > 1.0 / lambda && c.1 > 1.0 / lambda) {
            let kt = k_tilde(&amp, cone, a, b, th).context(|| format!("residual at ({a}, {b}, {th})"))?;
            let v = kt.norm() * (lambda * a * b).sqrt();
            sup = sup.max(v);
            sup_rel = sup_rel.max(v / amp.normalized(a + b).norm());
        }
        raw.push(sup);
        rel.push(sup_rel);
    }
    let spread = |v: &[f64]| {
        let (lo, hi) = v.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
        hi / lo
    };
    for (i, &lambda) in lambdas.iter().enumerate() {
        o.rows.push(Row::new("residual", format!("lambda={lambda};samples={samples}"), raw[i], raw[0]));
        o.rows.push(Row::new("residual-amplitude-relative", format!("lambda={lambda};samples={samples}"), rel[i], rel[0]));
    }
    o.checks.push(Check::at_most("residual sup stable across lambda", spread(&raw), 3.0));
    o.notes.push(format!("residual sup relative to |a(r1+r2)|: spread {:.3}", spread(&rel)));

    // planar cluster kernel: λ^{1/2}-normalized sup and the far-field value
    let mut sups = vec![];
    for &lambda in &cfg.lambda_list {
        let amp = AmplitudeA::build(&chi, lambda).context(|| format!("amplitude table lambda={lambda}"))?;
        let zs = (1..=400).map(|i| 2.0 * delta * i as f64 / 400.0);
        let mut sup = 0.0f64;
        let mut rem = 0.0f64;
        for z in zs {
            let s = r2_cluster_split(&chi, &amp, z).context(|| format!("planar kernel z={z}"))?;
            sup = sup.max(s.kernel.abs());
            rem = rem.max(s.remainder.abs());
        }
        let far = r2_cluster_kernel(&chi, lambda, 4.0 * delta).context(|| "planar kernel".into())?.abs();
        o.rows.push(Row::new("planar-kernel", format!("lambda={lambda}"), sup / lambda.sqrt(), f64::NAN));
        o.rows.push(Row::new("planar-kernel-far", format!("lambda={lambda};z=4delta"), far, sup * lambda.powi(-3)));
        o.rows.push(Row::new("planar-kernel-cutoff-remainder", format!("lambda={lambda}"), rem, sup));
        o.checks.push(Check::at_most(format!("lambda={lambda}: planar kernel at 4 delta"), far, sup * lambda.powi(-3)));
        sups.push(sup / lambda.sqrt());
    }
    if sups.len() > 1 {
        o.checks.push(Check::at_most("planar kernel sup stable across lambda", spread(&sups), 2.0));
    }
    Ok(())
}

fn kummer_rows(o: &mut RunOutcome) {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let r = if i == 0 { 0.0 } else { (1e-3 * 1e5f64.powf(i as f64 / 999.0)).min(100.0) };
        let p = KummerRayPoint::new(r).expect("valid magnitude");
        let v = kummer_f(p).norm() * r.max(1.0);
        worst = worst.max(v);
        o.rows.push(Row::new("kummer-envelope", format!("abs_z={}", fmt17(r)), v, 10.0));
    }
    o.checks.push(Check::at_most("Kummer envelope constant", worst, 10.0));
    let mut overlap = 0.0f64;
    for i in 0..=400 {
        let p = KummerRayPoint::new(6.0 + 4.0 * i as f64 / 400.0).expect("valid magnitude");
        let (s, a) = (kummer_f_series(p), kummer_f_continued_fraction(p));
        overlap = overlap.max((s - a).norm() / a.norm());
    }
    o.rows.push(Row::new("kummer-overlap", "abs_z=6..10".into(), overlap, 1e-6));
    o.checks.push(Check::at_most("Kummer series and asymptotic branches agree", overlap, 1e-6));
    let p = KummerRayPoint::new(50.0).expect("valid magnitude");
    let lim = (p.z() * kummer_f(p) - Complex64::new(2.0, 0.0)).norm();
    o.rows.push(Row::new("kummer-limit", "abs_z=50".into(), lim, 0.1));
    o.checks.push(Check::at_most("|zF(z) - 2| at |z| = 50", lim, 0.1));
}

#[derive(Serialize)]
struct PhaseReport {
    seed: u64,
    chord_expansion: conewave_core::phase_lab::DgReport,
    psi: conewave_core::phase_lab::PsiReport,
    derivatives: conewave_core::phase_lab::DerivativeReport,
    stationary_phase: Vec<conewave_core::phase_lab::StationaryPhaseReport>,
    no_critical_point: Vec<conewave_core::phase_lab::NoCriticalReport>,
}

pub const STATIONARY_MU: [f64; 5] = [1e2, 1e3, 1e4, 1e5, 1e6];

fn phase_certify(cfg: &RunConfig, o: &mut RunOutcome) -> Result<()> {
    let (rho, delta) = (cfg.rho, cfg.delta);
    let cap = (PI * (rho - 1.0) / 2.0).min(PI / 4.0);
    let epsilon = 0.2f64.min(0.5 * cap);
    let sampling = PsiSampling {
        rho,
        epsilon,
        delta,
        lambda: cfg.lambda_max(),
        samples: cfg.samples.unwrap_or(DEFAULT_PSI_SAMPLES),
        seed: cfg.seed,
    };
    let psi = psi_lower_bound_check(&sampling).context(|| "phase lower bound".into())?;
    let params = format!("rho={rho};epsilon={epsilon};lambda={};samples={}", sampling.lambda, sampling.samples);
    o.rows.push(Row::new("psi-min-ratio", params.clone(), psi.min_ratio, 0.0));
    o.rows.push(Row::new("psi-min-ratio-doubled", params, psi.min_ratio_doubled, psi.min_ratio));
    o.checks.push(Check::above("phase lower bound constant", psi.min_ratio, 0.0));
    o.checks.push(Check::at_most("phase lower bound stable under doubling", psi.min_ratio / psi.min_ratio_doubled, 2.0));
    o.notes.push(format!(
        "case-split constant {:.6}: second-derivative branch min {:.4}, first-derivative branch min {:.4}",
        psi.split_constant, psi.split_min_second, psi.split_min_first
    ));

    let derivatives = derivative_check(500, cfg.seed);
    for (name, v) in [
        ("dG", derivatives.dg),
        ("d2G", derivatives.d2g),
        ("dPsi", derivatives.dpsi),
        ("d2Psi", derivatives.d2psi),
        ("dD", derivatives.dd_ds),
    ] {
        o.rows.push(Row::new("derivative", format!("quantity={name}"), v, 1e-6));
        o.checks.push(Check::at_most(format!("{name}: analytic vs finite difference"), v, 1e-6));
    }

    let thetas: Vec<f64> = (-6..=6).map(|k| PI + 0.05 * k as f64).collect();
    let chord_expansion = dg_expansion_check(0.05, 0.07, &thetas).context(|| "chord expansion".into())?;
    o.rows.push(Row::new("chord-expansion-first", "r1=0.05;r2=0.07".into(), chord_expansion.max_ratio1, 10.0));
    o.rows.push(Row::new("chord-expansion-second", "r1=0.05;r2=0.07".into(), chord_expansion.max_ratio2, 10.0));
    o.checks.push(Check::at_most("chord expansion remainders", chord_expansion.max_ratio1.max(chord_expansion.max_ratio2), 10.0));

    let mut stationary_phase = Vec::new();
    let phases = [Phase::Square, Phase::Diffraction { r1: 0.1, r2: 0.1 }, Phase::Chord { r1: 0.1, r2: 0.1 }];
    let amps = [Amplitude::One, Amplitude::Linear, Amplitude::Hinge { at: 0.3 }, Amplitude::Mollified { at: 0.3, width: 0.05 }];
    for p in phases {
        for a in amps {
            let rep = stationary_phase_probe(p, a, &STATIONARY_MU).context(|| "stationary phase".into())?;
            o.rows.push(Row::new("stationary-phase", format!("phase={p:?};amplitude={a:?}"), rep.sup_scaled, f64::NAN));
            o.checks.push(Check::finite(format!("{p:?}/{a:?}: sup finite"), rep.sup_scaled));
            if let Some(limit) = rep.limit {
                let last = rep.rows.last().expect("nonempty").scaled;
                o.rows.push(Row::new("fresnel-limit", format!("mu={}", STATIONARY_MU[4]), last, limit));
                o.checks.push(Check::at_most("Fresnel limit", (last - limit).abs(), 1e-3));
            }
            stationary_phase.push(rep);
        }
    }

    let mut no_critical_point = Vec::new();
    let chi = make_chi(delta).context(|| "chi".into())?;
    let cone = Cone::new(rho).context(|| "cone".into())?;
    let (r1, r2) = (0.2 * delta, 0.25 * delta);
    for lambda in [100.0, 200.0, 400.0, 800.0] {
        let amp = AmplitudeA::build_to(&chi, lambda, 5.0 * delta).context(|| "amplitude table".into())?;
        let rep = no_critical_point_decay(&amp, cone, r1, r2, 1.0).context(|| "no-critical-point tail".into())?;
        o.rows.push(Row::new("no-critical-tail", format!("lambda={lambda};r1={r1};r2={r2}"), rep.scaled_tail, 10.0));
        o.checks.push(Check::at_most(format!("lambda={lambda}: scaled tail bounded"), rep.scaled_tail, 10.0));
        o.checks.push(Check::at_most(
            format!("lambda={lambda}: (3/4)delta^2 over the onset gap"),
            rep.onset_floor / rep.onset_gap,
            1.0,
        ));
        no_critical_point.push(rep);
    }

    let path = cfg.output_path.join("phase_report.json");
    write_json(&path, &PhaseReport { seed: cfg.seed, chord_expansion, psi, derivatives, stationary_phase, no_critical_point })?;
    o.files.push(path);
    Ok(())
}

fn sector_check(cfg: &RunConfig, o: &mut RunOutcome) -> Result<()> {
    let mut table = Vec::new();
    for rho in cfg.rhos() {
        let alpha = PI * rho;
        let rep = sector_correspondence_check(alpha, cfg.lambda_max(), 1e-9).context(|| format!("sector alpha={alpha}"))?;
        for (i, (s, c)) in rep.sector.iter().zip(&rep.cone_odd).enumerate() {
            table.push(vec![fmt17(alpha), (i + 1).to_string(), fmt17(*s), fmt17(*c), fmt17((s - c).abs())]);
        }
        o.rows.push(Row::new(
            "sector",
            format!("alpha={};lambda_max={};count={}/{}", fmt17(alpha), cfg.lambda_max(), rep.sector.len(), rep.cone_odd.len()),
            rep.max_abs_diff,
            1e-9,
        ));
        o.checks.push(Check {
            name: format!("alpha={alpha:.6}: spectra match"),
            measured: rep.max_abs_diff,
            threshold: 1e-9,
            pass: rep.matched,
        });
    }
    let path = cfg.output_path.join("sector.csv");
    write_csv(&path, &["alpha", "index", "sector", "cone", "abs_diff"], table)?;
    o.files.push(path);
    Ok(())
}
