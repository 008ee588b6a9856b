//! Scenario runner behind the `mirrorlab` binary.

pub mod config;
pub mod csv;

use std::io::Write;
use std::path::Path;

use mirrorlab::consistency::{solve_alpha, BoundaryWeightProblem};
use mirrorlab::optics::{self, DielectricSpec};
use mirrorlab::scenario::{reflection_sweep, ContinuumStudy, SweepRun, FIG2_SWEEP};
use mirrorlab::{integrate, Complex64, EffectiveModel, MirrorNetwork, ModelParams, ReflectionSpec, TimeSeries};

use config::{ReflectionSource, RunConfig, Scenario};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<mirrorlab::Error> for CliError {
    fn from(e: mirrorlab::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Label used in file names for a reflection coefficient.
pub fn reflection_label(r: Complex64) -> String {
    if r.im == 0.0 {
        format!("{}", r.re + 0.0)
    } else {
        format!("{}{:+}i", r.re + 0.0, r.im)
    }
}

/// Worker count for sweeps, from `MIRRORLAB_THREADS` (unset means rayon's default).
fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("MIRRORLAB_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Config(format!("MIRRORLAB_THREADS must be a positive integer, got `{raw}`")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Runtime(e.to_string()))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::write(dir.join(name), contents)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", dir.join(name).display())))
}

/// Runs `config`, writing files under `config.out` and a summary to `log`.
pub fn run(config: &RunConfig, log: &mut dyn Write) -> Result<(), CliError> {
    match config.scenario {
        Scenario::Effective | Scenario::Fig2 => run_sweep(config, log),
        Scenario::Microscopic | Scenario::Reduced => run_network(config, log),
        Scenario::Optics => run_optics(config, log),
        Scenario::Validate => run_validate(config, log),
    }
}

fn run_sweep(config: &RunConfig, log: &mut dyn Write) -> Result<(), CliError> {
    let fig2 = config.scenario == Scenario::Fig2;
    let name = config.scenario.to_string();
    let sweep: Vec<Complex64> = match (&config.sweep, fig2) {
        (Some(s), _) => s.clone(),
        (None, true) => FIG2_SWEEP.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        (None, false) => vec![config.reflection.resolve()?.value()],
    };
    let single = !fig2 && config.sweep.is_none();
    let runs: Vec<SweepRun> = thread_pool()?.install(|| reflection_sweep(&config.params, &sweep, &config.integrator()))?;
    std::fs::create_dir_all(&config.out)?;
    let mut files = Vec::new();
    for run in &runs {
        let file = if single {
            format!("{name}.csv")
        } else {
            format!("{name}_r{}.csv", reflection_label(run.reflection))
        };
        write_file(&config.out, &file, &csv::render(&run.series, Some(&run.reference)))?;
        writeln!(
            log,
            "{file}: R = {}, {} rows, final occupation {:.6e}",
            reflection_label(run.reflection),
            run.series.len(),
            run.series.occupation().last().copied().unwrap_or(0.0)
        )?;
        files.push((file, run.reflection));
    }
    if config.gnuplot {
        let mut script = String::from("set datafile separator ','\nset key autotitle columnhead\nset xlabel 't'\nset ylabel 'occupation'\nplot ");
        let plots: Vec<String> = files
            .iter()
            .map(|(f, r)| format!("'{f}' using 1:4 with lines title 'R = {}'", reflection_label(*r)))
            .collect();
        script.push_str(&plots.join(", \\\n     "));
        script.push('\n');
        write_file(&config.out, &format!("{name}.gp"), &script)?;
        writeln!(log, "{name}.gp: gnuplot script")?;
    }
    Ok(())
}

/// Effective model driven by the weak-limit reflection of the configured
/// atoms, used as the reference column of network runs.
fn equivalent_effective(config: &RunConfig, network: &MirrorNetwork) -> Option<EffectiveModel> {
    let p = &config.params;
    let spec = DielectricSpec::from_line_density(p.k11(), network.geometry().line_density(), p.k0(), p.detuning()).ok()?;
    EffectiveModel::new(*p, ReflectionSpec::weak_limit(&spec).ok()?).ok()
}

fn run_network(config: &RunConfig, log: &mut dyn Write) -> Result<(), CliError> {
    let network = MirrorNetwork::new(config.params, config.geometry()?, config.born)?.with_transient(config.transient);
    let integrator = config.integrator().components(vec![0]);
    let series: TimeSeries = if config.scenario == Scenario::Microscopic {
        integrate(&network.rhs_network(), &integrator)?
    } else {
        integrate(&network.reduced_emitter()?, &integrator)?
    };
    let reference = match equivalent_effective(config, &network) {
        Some(m) => Some(m.closed_form_on(&series)?),
        None => None,
    };
    std::fs::create_dir_all(&config.out)?;
    let file = format!("{}.csv", config.scenario);
    write_file(&config.out, &file, &csv::render(&series, reference.as_deref()))?;
    writeln!(
        log,
        "{file}: {} atoms, born = {}, {} rows, final occupation {:.6e}",
        network.geometry().len(),
        config.born,
        series.len(),
        series.occupation().last().copied().unwrap_or(0.0)
    )?;
    Ok(())
}

fn run_optics(config: &RunConfig, log: &mut dyn Write) -> Result<(), CliError> {
    let spec = match config.reflection {
        ReflectionSource::Fresnel {
            strength,
            detuning,
            k11,
        } => DielectricSpec::new(strength, detuning, k11)?,
        ReflectionSource::Weak { strength, detuning } => DielectricSpec::new(strength, detuning, 0.0)?,
        ReflectionSource::Value(_) => {
            let p = &config.params;
            let density = config.geometry()?.line_density();
            DielectricSpec::from_line_density(p.k11(), density, p.k0(), p.detuning())?
        }
    };
    let chi = optics::susceptibility(&spec)?;
    let n = optics::refraction_index(chi)?;
    writeln!(log, "strength = {}", spec.strength)?;
    writeln!(log, "detuning = {}", spec.detuning)?;
    writeln!(log, "susceptibility = {} {:+}i", chi.re, chi.im)?;
    writeln!(log, "refraction index = {n}")?;
    writeln!(log, "fresnel reflection = {}", optics::fresnel_reflection(n)?)?;
    match optics::weak_limit_reflection(&spec) {
        Ok(r) => writeln!(log, "weak-limit reflection = {r}")?,
        Err(e) => writeln!(log, "weak-limit reflection: {e}")?,
    }
    Ok(())
}

fn run_validate(config: &RunConfig, log: &mut dyn Write) -> Result<(), CliError> {
    let template = BoundaryWeightProblem::new(1.0, 0.5)?;
    let grid: Vec<f64> = (0..100).map(|i| i as f64 * 0.05).collect();
    let alpha = solve_alpha(&template, &grid, 1.0)?;
    writeln!(log, "alpha* = {}", (alpha * 1e10).round() / 1e10)?;

    // The configured parameters when they are off resonance, otherwise the
    // densest point of the convergence study.
    let p = &config.params;
    let (params, density, detuning) = if p.detuning() != 0.0 {
        (*p, config.geometry()?.line_density(), p.detuning())
    } else {
        let study = ContinuumStudy::default();
        let density = study.geometry(100)?.line_density();
        let params = ModelParams::derive(
            study.k00,
            study.k11_for(density),
            study.omega_e,
            study.omega_e + study.detuning,
            study.tau,
            0.5,
            1.0,
        )?;
        (params, density, study.detuning)
    };
    let id = optics::feedback_identity(&params, density, params.k0(), detuning)?;
    writeln!(log, "feedback identity: {} (lhs = {:.12e}, rhs = {:.12e})", if id.ok { "ok" } else { "FAILED" }, id.lhs, id.rhs)?;
    if id.ok && (alpha - 0.5).abs() <= 1e-10 {
        Ok(())
    } else {
        Err(CliError::Runtime("validation failed".into()))
    }
}
