//! Run configuration: defaults, then a `key = value` file, then flags.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use mirrorlab::optics::DielectricSpec;
use mirrorlab::{Complex64, DielectricGeometry, IntegratorConfig, ModelParams, ReflectionSpec, Taper};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Effective,
    Microscopic,
    Reduced,
    Optics,
    Validate,
    Fig2,
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Scenario as ValueEnum>::from_str(s, true).map_err(|_| {
            format!("unknown scenario `{s}` (expected effective, microscopic, reduced, optics, validate or fig2)")
        })
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

/// Where the mirror reflection coefficient comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReflectionSource {
    Value(Complex64),
    /// Exact Fresnel chain for a dielectric `(C, Δ, K₁₁)`.
    Fresnel { strength: f64, detuning: f64, k11: f64 },
    /// Weak-limit coefficient `−C/(2Δ)`.
    Weak { strength: f64, detuning: f64 },
}

impl FromStr for ReflectionSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let numbers = |rest: &str, n: usize| -> Result<Vec<f64>, String> {
            let v: Vec<f64> = rest
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
                .collect::<Result<_, _>>()?;
            if v.len() != n {
                return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
            }
            Ok(v)
        };
        if let Some(rest) = s.strip_prefix("fresnel:") {
            let v = numbers(rest, 3)?;
            return Ok(ReflectionSource::Fresnel {
                strength: v[0],
                detuning: v[1],
                k11: v[2],
            });
        }
        if let Some(rest) = s.strip_prefix("weak:") {
            let v = numbers(rest, 2)?;
            return Ok(ReflectionSource::Weak {
                strength: v[0],
                detuning: v[1],
            });
        }
        parse_complex(s).map(ReflectionSource::Value)
    }
}

impl ReflectionSource {
    pub fn resolve(&self) -> mirrorlab::Result<ReflectionSpec> {
        match *self {
            ReflectionSource::Value(c) => Ok(ReflectionSpec::user(c)),
            ReflectionSource::Fresnel {
                strength,
                detuning,
                k11,
            } => ReflectionSpec::fresnel(&DielectricSpec::new(strength, detuning, k11)?),
            ReflectionSource::Weak { strength, detuning } => {
                ReflectionSpec::weak_limit(&DielectricSpec::new(strength, detuning, 0.0)?)
            }
        }
    }
}

/// Parses `a`, `bi` or `a+bi`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    Complex64::from_str(s.trim()).map_err(|_| format!("`{s}` is not a complex number (use forms like -1, 0.5i, -0.3+0.2i)"))
}

fn parse_sweep(s: &str) -> Result<Vec<Complex64>, String> {
    let v: Vec<Complex64> = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(parse_complex)
        .collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err("sweep list is empty".into());
    }
    Ok(v)
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        other => Err(format!("`{other}` is not a boolean (use true or false)")),
    }
}

/// Command-line flags. Every flag is optional and overrides the config file.
#[derive(Debug, Clone, Default, Parser)]
#[command(name = "mirrorlab", version, about = "Emitter-in-front-of-a-mirror delay simulations")]
pub struct Flags {
    /// effective, microscopic, reduced, optics, validate or fig2.
    pub scenario: Option<Scenario>,
    /// Flat `key = value` configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub k00: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k11: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_e: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    /// Value of the Heaviside step at zero.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Dipole ratio of emitter to mirror atoms.
    #[arg(long, allow_negative_numbers = true)]
    pub mu_ratio: Option<f64>,
    /// Reflection: a complex number, `fresnel:C,DELTA,K11` or `weak:C,DELTA`.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<ReflectionSource>,
    /// Comma-separated reflection coefficients.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sweep)]
    pub r_sweep: Option<::std::vec::Vec<Complex64>>,
    #[arg(long)]
    pub atoms: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub slab_depth: Option<f64>,
    #[arg(long, value_parser = parse_bool)]
    pub born: Option<bool>,
    #[arg(long, value_parser = parse_bool)]
    pub transient: Option<bool>,
    #[arg(long, value_parser = parse_bool)]
    pub taper: Option<bool>,
    #[arg(long, allow_negative_numbers = true)]
    pub step: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub stride: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV files.
    #[arg(long, value_parser = parse_bool, num_args = 0..=1, default_missing_value = "true")]
    pub gnuplot: Option<bool>,
}

/// Fully resolved and validated run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub params: ModelParams,
    pub reflection: ReflectionSource,
    pub sweep: Option<Vec<Complex64>>,
    pub atoms: usize,
    pub slab_depth: f64,
    pub born: bool,
    pub transient: bool,
    pub taper: bool,
    pub step: f64,
    pub t_max: f64,
    pub stride: usize,
    pub out: PathBuf,
    pub gnuplot: bool,
}

impl RunConfig {
    pub fn integrator(&self) -> IntegratorConfig {
        IntegratorConfig::new(self.step, self.t_max)
            .stride(self.stride)
            .alpha(self.params.alpha())
    }

    pub fn geometry(&self) -> mirrorlab::Result<DielectricGeometry> {
        DielectricGeometry::uniform(
            self.params.front_face(),
            self.slab_depth,
            self.atoms,
            self.taper.then(Taper::default),
        )
    }
}

const KEYS: &[&str] = &[
    "scenario",
    "k00",
    "k11",
    "omega_e",
    "omega",
    "tau",
    "alpha",
    "mu_ratio",
    "r",
    "r_sweep",
    "atoms",
    "slab_depth",
    "born",
    "transient",
    "taper",
    "step",
    "t_max",
    "stride",
    "out",
    "gnuplot",
];

/// Reads a config file into `key → (value, line)`; keys may use `-` or `_`.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, (String, usize)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config_text(&text, &path.display().to_string())
}

pub fn parse_config_text(text: &str, origin: &str) -> Result<BTreeMap<String, (String, usize)>, CliError> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!("{origin}:{line_no}: expected `key = value`, got `{line}`")));
        };
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("{origin}:{line_no}: unknown key `{key}`")));
        }
        if entries.insert(key.clone(), (value.trim().to_string(), line_no)).is_some() {
            return Err(CliError::Config(format!("{origin}:{line_no}: key `{key}` set twice")));
        }
    }
    Ok(entries)
}

/// Copies file entries into `flags` wherever the flag was not given.
fn merge_file(flags: &mut Flags, entries: &BTreeMap<String, (String, usize)>, origin: &str) -> Result<(), CliError> {
    fn set<T>(slot: &mut Option<T>, raw: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<(), String> {
        if slot.is_none() {
            *slot = Some(parse(raw)?);
        }
        Ok(())
    }
    fn num<T: FromStr>(s: &str) -> Result<T, String>
    where
        T::Err: fmt::Display,
    {
        s.parse::<T>().map_err(|e| format!("`{s}`: {e}"))
    }
    for (key, (raw, line)) in entries {
        let result = match key.as_str() {
            "scenario" => set(&mut flags.scenario, raw, <Scenario as FromStr>::from_str),
            "k00" => set(&mut flags.k00, raw, num),
            "k11" => set(&mut flags.k11, raw, num),
            "omega_e" => set(&mut flags.omega_e, raw, num),
            "omega" => set(&mut flags.omega, raw, num),
            "tau" => set(&mut flags.tau, raw, num),
            "alpha" => set(&mut flags.alpha, raw, num),
            "mu_ratio" => set(&mut flags.mu_ratio, raw, num),
            "r" => set(&mut flags.r, raw, ReflectionSource::from_str),
            "r_sweep" => set(&mut flags.r_sweep, raw, parse_sweep),
            "atoms" => set(&mut flags.atoms, raw, num),
            "slab_depth" => set(&mut flags.slab_depth, raw, num),
            "born" => set(&mut flags.born, raw, parse_bool),
            "transient" => set(&mut flags.transient, raw, parse_bool),
            "taper" => set(&mut flags.taper, raw, parse_bool),
            "step" => set(&mut flags.step, raw, num),
            "t_max" => set(&mut flags.t_max, raw, num),
            "stride" => set(&mut flags.stride, raw, num),
            "out" => set(&mut flags.out, raw, |s| Ok(PathBuf::from(s))),
            "gnuplot" => set(&mut flags.gnuplot, raw, parse_bool),
            _ => unreachable!("keys are checked while reading"),
        };
        result.map_err(|e| CliError::Config(format!("{origin}:{line}: key `{key}`: {e}")))?;
    }
    Ok(())
}

/// Resolves flags (and the config file they name) into a validated config.
pub fn parse_config(mut flags: Flags) -> Result<RunConfig, CliError> {
    if let Some(path) = flags.config.clone() {
        let entries = read_config_file(&path)?;
        merge_file(&mut flags, &entries, &path.display().to_string())?;
    }
    resolve(flags)
}

fn resolve(flags: Flags) -> Result<RunConfig, CliError> {
    let scenario = flags
        .scenario
        .ok_or_else(|| CliError::Config("no scenario given (pass one or set `scenario` in the config file)".into()))?;
    let k00 = flags.k00.unwrap_or(1.5);
    let tau = flags.tau.unwrap_or(3.0);
    let omega_e = flags.omega_e.unwrap_or(PI / tau);
    let omega = flags.omega.unwrap_or(omega_e);
    let alpha = flags.alpha.unwrap_or(0.5);
    let params = ModelParams::derive(
        k00,
        flags.k11.unwrap_or(0.0),
        omega_e,
        omega,
        tau,
        alpha,
        flags.mu_ratio.unwrap_or(1.0),
    )
    .map_err(|e| CliError::Config(e.to_string()))?;

    let reflection = flags.r.unwrap_or(ReflectionSource::Value(Complex64::new(-1.0, 0.0)));
    reflection.resolve().map_err(|e| CliError::Config(format!("r: {e}")))?;

    let default_t_max = match scenario {
        Scenario::Effective => 5.0 * tau,
        _ => 2.0 * tau,
    };
    let config = RunConfig {
        scenario,
        params,
        reflection,
        sweep: flags.r_sweep,
        atoms: flags.atoms.unwrap_or(32),
        slab_depth: flags.slab_depth.unwrap_or(1.0),
        born: flags.born.unwrap_or(true),
        transient: flags.transient.unwrap_or(false),
        taper: flags.taper.unwrap_or(true),
        step: flags.step.unwrap_or(tau / 512.0),
        t_max: flags.t_max.unwrap_or(default_t_max),
        stride: flags.stride.unwrap_or(1),
        out: flags.out.unwrap_or_else(|| PathBuf::from("out")),
        gnuplot: flags.gnuplot.unwrap_or(false),
    };
    if !(config.step > 0.0 && config.step.is_finite()) {
        return Err(CliError::Config(format!("step must be positive, got {}", config.step)));
    }
    if !(config.t_max > 0.0 && config.t_max.is_finite()) {
        return Err(CliError::Config(format!("t_max must be positive, got {}", config.t_max)));
    }
    if config.stride == 0 {
        return Err(CliError::Config("stride must be at least 1".into()));
    }
    if matches!(scenario, Scenario::Microscopic | Scenario::Reduced) {
        config.geometry().map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(config)
}
