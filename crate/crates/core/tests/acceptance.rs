//! Acceptance criteria AC-1 to AC-10. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mirrorlab::consistency::{anticommutator_value, solve_alpha, BoundaryWeightProblem};
use mirrorlab::optics::{self, DielectricSpec};
use mirrorlab::scenario::{reflection_sweep, ContinuumStudy, FIG2_SWEEP};
use mirrorlab::{integrate, Complex64, DelaySystem, EffectiveModel, IntegratorConfig, ModelParams, Past, ReflectionSpec};
use rand::{rngs::StdRng, Rng, SeedableRng};

const TAU: f64 = 3.0;
const AC2_SWEEP: [f64; 7] = [-1.25, -1.0, -0.75, -0.5, -0.25, 0.0, 0.5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fig2_model(r: f64) -> EffectiveModel {
    EffectiveModel::new(ModelParams::fig2(), ReflectionSpec::real(r)).unwrap()
}

fn default_config(t_max: f64) -> IntegratorConfig {
    IntegratorConfig::new(TAU / 512.0, t_max)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let s = integrate(&fig2_model(0.0).system(), &default_config(5.0 * TAU)).unwrap();
    let err = s
        .times()
        .into_iter()
        .zip(s.occupation())
        .map(|(t, o)| (o - (-3.0 * t).exp()).abs())
        .fold(0.0, f64::max);
    let took = start.elapsed();
    outcome(
        err <= 1e-8 && took < Duration::from_secs(1),
        format!("max |occupation - exp(-2 K00 t)| = {err:.3e} (<= 1e-8), {took:.2?}"),
    )
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for &r in &AC2_SWEEP {
        let m = fig2_model(r);
        let s = integrate(&m.system(), &default_config(5.0 * TAU)).unwrap();
        let reference = m.closed_form_on(&s).unwrap();
        for (a, b) in s.amplitude().iter().zip(&reference) {
            worst = worst.max((a - b).norm());
        }
    }
    let took = start.elapsed();
    outcome(
        worst <= 1e-6 && took < Duration::from_secs(5),
        format!("max |numeric - closed form| = {worst:.3e} (<= 1e-6), {took:.2?}"),
    )
}

fn ac3() -> Outcome {
    let h = TAU / 512.0;
    let runs: Vec<_> = AC2_SWEEP
        .iter()
        .map(|&r| integrate(&fig2_model(r).system(), &default_config(2.0 * TAU)).unwrap())
        .collect();
    let k_tau = (TAU / h).round() as usize;
    let mut spread: f64 = 0.0;
    for a in &runs {
        for b in &runs {
            for i in 0..k_tau {
                spread = spread.max((a.amplitude()[i] - b.amplitude()[i]).norm());
            }
        }
    }
    // The derivative jumps by F ε(0) = F at the round trip and is continuous
    // elsewhere on [0, 2τ).
    let mut kink_ok = true;
    for (run, &r) in runs.iter().zip(&AC2_SWEEP) {
        let f = fig2_model(r).feedback().norm();
        let d = &run.traces()[0].derivative;
        for i in 1..(2 * k_tau) {
            let jump = (d[i] - d[i - 1]).norm();
            let smooth = 0.05;
            if i == k_tau {
                kink_ok &= (jump - f).abs() < smooth;
            } else {
                kink_ok &= jump < smooth;
            }
        }
    }
    outcome(
        spread <= 1e-12 && kink_ok,
        format!("pairwise spread on [0, tau - h] = {spread:.1e} (<= 1e-12), kink only at t = tau: {kink_ok}"),
    )
}

fn ac4() -> Outcome {
    let s = integrate(&fig2_model(-1.0).system(), &default_config(5.0 * TAU)).unwrap();
    let amp = s.history().interpolate(4.5).unwrap();
    let occ = amp.norm_sqr();
    // Two-term method-of-steps value, written out independently.
    let oracle = ((-6.75f64).exp() + 2.25 * (-2.25f64).exp()).powi(2);
    let pass = (occ - 0.05680).abs() <= 1e-4 && (occ - oracle).abs() <= 1e-6;
    outcome(
        pass,
        format!("occupation(4.5) = {occ:.6}, expected 0.05680 +- 1e-4, oracle {oracle:.6}"),
    )
}

fn ac5() -> Outcome {
    let half = BoundaryWeightProblem::new(1.0, 0.5).unwrap();
    let grid: Vec<f64> = (0..100).map(|i| i as f64 * 0.05).collect();
    let drift = grid
        .iter()
        .map(|&t| (anticommutator_value(&half, t).unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    let alpha = solve_alpha(&half, &grid, 1.0).unwrap();
    let quarter = BoundaryWeightProblem::new(1.0, 0.25).unwrap();
    let asymptote = anticommutator_value(&quarter, 20.0 / (2.0 * quarter.kappa())).unwrap();
    let pass = drift <= 1e-14 && (alpha - 0.5).abs() <= 1e-10 && (asymptote - 2.0).abs() <= 1e-8;
    outcome(
        pass,
        format!("drift at alpha=1/2: {drift:.1e}; solved alpha = {alpha:.12}; alpha=1/4 asymptote = {asymptote:.10}"),
    )
}

fn ac6() -> Outcome {
    let start = Instant::now();
    let study = ContinuumStudy::default();
    let points: Vec<_> = [12, 25, 50, 100].iter().map(|&m| study.run(m).unwrap()).collect();
    let took = start.elapsed();
    let devs: Vec<f64> = points.iter().map(|p| p.max_deviation).collect();
    let r = points[3].reflection.abs();
    let bound = (0.1 * r).max(3.0 * r * r);
    let monotone = devs.windows(2).all(|w| w[1] < w[0]);
    let budget = points.iter().all(|p| p.max_occupation <= 1.0 + 1e-6);
    let pass = monotone && devs[3] <= bound && budget && took < Duration::from_secs(60);
    let listed: Vec<String> = devs.iter().map(|d| format!("{d:.3e}")).collect();
    outcome(
        pass,
        format!(
            "max deviation at 12/25/50/100 atoms per wavelength = [{}], monotone: {monotone}, bound {bound:.2e}, occupation <= 1: {budget}, {took:.2?}",
            listed.join(", ")
        ),
    )
}

fn ac7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = 0;
    for _ in 0..1000 {
        let k00 = rng.random_range(0.01..10.0);
        let k11 = rng.random_range(0.0..5.0);
        let omega_e = rng.random_range(0.5..500.0);
        let mut detuning: f64 = rng.random_range(-100.0..100.0);
        if detuning.abs() < 1e-3 {
            detuning = 1.0;
        }
        let tau = rng.random_range(0.1..10.0);
        let density = rng.random_range(1.0..1e4);
        let p = ModelParams::derive(k00, k11, omega_e, omega_e + detuning, tau, 0.5, 1.0).unwrap();
        let id = optics::feedback_identity(&p, density, p.k0(), detuning).unwrap();
        if !id.ok {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("{failures} of 1000 random draws violate the identity"))
}

struct Exponential;

impl DelaySystem for Exponential {
    fn dim(&self) -> usize {
        1
    }
    fn delays(&self) -> &[f64] {
        &[]
    }
    fn initial_value(&self, _: usize) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn rhs(&self, _t: f64, y: &[Complex64], _p: &Past<'_>, dy: &mut [Complex64]) -> mirrorlab::Result<()> {
        dy[0] = -y[0];
        Ok(())
    }
}

fn ac8() -> Outcome {
    let exact = (-1.0f64).exp();
    let errors: Vec<f64> = [0.1, 0.05, 0.025, 0.0125]
        .iter()
        .map(|&h| {
            let s = integrate(&Exponential, &IntegratorConfig::new(h, 1.0)).unwrap();
            (s.amplitude().last().unwrap().re - exact).abs()
        })
        .collect();
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let pass = ratios.iter().all(|r| (14.0..=18.0).contains(r));
    let listed: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
    outcome(pass, format!("error ratios per halving = [{}] (within [14, 18])", listed.join(", ")))
}

fn ac9() -> Outcome {
    let spec = DielectricSpec::new(1e-6, 1.0, 0.0).unwrap();
    let chi = optics::susceptibility(&spec).unwrap().re;
    let ratio = optics::fresnel_from_dielectric(&spec).unwrap() / optics::weak_limit_reflection(&spec).unwrap();
    outcome(
        (ratio - 0.5).abs() <= 1e-3,
        format!("exact Fresnel / weak limit at chi = {chi:.0e}: {ratio:.6} (0.5 +- 1e-3)"),
    )
}

fn ac10() -> Outcome {
    let sweep: Vec<Complex64> = FIG2_SWEEP.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let runs = reflection_sweep(&ModelParams::fig2(), &sweep, &default_config(2.0 * TAU)).unwrap();
    let h = runs[0].series.grid().step;
    let k_tau = (TAU / h).round() as usize;
    let k_mid = (1.5 * TAU / h).round() as usize;
    let mut coincide: f64 = 0.0;
    let mut separation = f64::INFINITY;
    let mut oracle: f64 = 0.0;
    for (i, a) in runs.iter().enumerate() {
        for (x, y) in a.series.amplitude().iter().zip(&a.reference) {
            oracle = oracle.max((x - y).norm());
        }
        for b in &runs[i + 1..] {
            for k in 0..k_tau {
                coincide = coincide.max((a.series.amplitude()[k] - b.series.amplitude()[k]).norm());
            }
            let late = (a.series.occupation()[k_mid] - b.series.occupation()[k_mid]).abs();
            separation = separation.min(late);
        }
    }
    let occ = |r: f64| runs[FIG2_SWEEP.iter().position(|&x| x == r).unwrap()].series.occupation()[k_mid];
    let gain_gap = (occ(-1.25) - occ(-1.0)).abs();
    let loss_gap = (occ(-0.75) - occ(-1.0)).abs();
    let pass = coincide <= 1e-12 && separation > 1e-6 && oracle <= 1e-6 && gain_gap > loss_gap;
    outcome(
        pass,
        format!(
            "spread before tau = {coincide:.1e}, min separation at 1.5 tau = {separation:.2e}, max closed-form error = {oracle:.1e}, |d(-1.25)| = {gain_gap:.4} > |d(-0.75)| = {loss_gap:.4}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 10] = [
        ("AC-1", "pure decay", ac1),
        ("AC-2", "closed-form agreement", ac2),
        ("AC-3", "causality", ac3),
        ("AC-4", "spot value", ac4),
        ("AC-5", "boundary weight", ac5),
        ("AC-6", "continuum convergence", ac6),
        ("AC-7", "feedback identity", ac7),
        ("AC-8", "integrator order", ac8),
        ("AC-9", "factor-two audit", ac9),
        ("AC-10", "sweep reproduction", ac10),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{id} {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
