//! Ready-made runs shared by the command line and the acceptance suite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dde::{integrate, IntegratorConfig};
use crate::effective::EffectiveModel;
use crate::error::Result;
use crate::geometry::{DielectricGeometry, Taper};
use crate::network::MirrorNetwork;
use crate::optics::{self, DielectricSpec};
use crate::params::ModelParams;
use crate::reflection::ReflectionSpec;
use crate::series::TimeSeries;

/// Reflection coefficients of the standard sweep, from no mirror to gain.
pub const FIG2_SWEEP: [f64; 6] = [0.0, -0.25, -0.5, -0.75, -1.0, -1.25];

/// One effective-model run together with its exact reference.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRun {
    pub reflection: Complex64,
    pub series: TimeSeries,
    pub reference: Vec<Complex64>,
}

/// Runs the effective model for every reflection coefficient in `sweep`, in
/// parallel, returning results in input order.
pub fn reflection_sweep(
    params: &ModelParams,
    sweep: &[Complex64],
    config: &IntegratorConfig,
) -> Result<Vec<SweepRun>> {
    sweep
        .par_iter()
        .map(|&r| {
            let model = EffectiveModel::new(*params, ReflectionSpec::user(r))?;
            let series = integrate(&model.system(), config)?;
            let reference = model.closed_form_on(&series)?;
            Ok(SweepRun {
                reflection: r,
                series,
                reference,
            })
        })
        .collect()
}

/// Setup of the microscopic-versus-effective convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumStudy {
    pub k00: f64,
    pub tau: f64,
    /// Emitter frequency; `ω_e τ` is chosen congruent to `π` so the feedback
    /// coefficient is real.
    pub omega_e: f64,
    /// `Δ = ω − ω_e` of the mirror atoms. The network also carries the
    /// sharp emitter wavefront and the atoms' switch-on transient, which the
    /// effective model lacks; both are of relative size `1/k₀` and `1/Δ`, so
    /// both are kept large.
    pub detuning: f64,
    /// Target weak-limit reflection coefficient.
    pub reflection: f64,
    pub half_wavelengths: usize,
    pub steps_per_round_trip: usize,
}

impl Default for ContinuumStudy {
    fn default() -> Self {
        ContinuumStudy {
            k00: 1.5,
            tau: 3.0,
            omega_e: 1001.0 * PI / 3.0,
            detuning: 1000.0,
            reflection: -0.05,
            half_wavelengths: 60,
            steps_per_round_trip: 8192,
        }
    }
}

/// Outcome of one density in a [`ContinuumStudy`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumPoint {
    pub atoms_per_wavelength: usize,
    pub atoms: usize,
    pub k11: f64,
    /// Weak-limit reflection of the equivalent dielectric.
    pub reflection: f64,
    /// Largest emitter-occupation difference over `[0, 2τ)`.
    pub max_deviation: f64,
    /// Largest emitter occupation of the network.
    pub max_occupation: f64,
}

impl ContinuumStudy {
    /// Mirror-atom rate that makes the weak-limit reflection equal to the
    /// target at line density `density`.
    pub fn k11_for(&self, density: f64) -> f64 {
        2.0 * self.reflection.abs() * self.detuning.abs() * self.omega_e / density
    }

    pub fn geometry(&self, atoms_per_wavelength: usize) -> Result<DielectricGeometry> {
        DielectricGeometry::commensurate_slab(
            0.5 * self.tau,
            self.omega_e,
            self.half_wavelengths,
            atoms_per_wavelength,
            Some(Taper::default()),
        )
    }

    pub fn run(&self, atoms_per_wavelength: usize) -> Result<ContinuumPoint> {
        let geometry = self.geometry(atoms_per_wavelength)?;
        let density = geometry.line_density();
        let k11 = self.k11_for(density);
        let params = ModelParams::derive(
            self.k00,
            k11,
            self.omega_e,
            self.omega_e + self.detuning,
            self.tau,
            0.5,
            1.0,
        )?;
        let spec = DielectricSpec::from_line_density(k11, density, params.k0(), self.detuning)?;
        let reflection = optics::weak_limit_reflection(&spec)?;
        let atoms = geometry.len();
        let network = MirrorNetwork::new(params, geometry, true)?;
        let t_max = 2.0 * self.tau;
        // Equally spaced atoms make the aligned grid very fine; the atom
        // delays are left unaligned instead.
        let config = IntegratorConfig::new(self.tau / self.steps_per_round_trip as f64, t_max)
            .align_grid(false)
            .components(vec![0]);
        let series = integrate(&network.rhs_network(), &config)?;
        let effective = EffectiveModel::new(params, ReflectionSpec::real(reflection))?;
        let mut max_deviation: f64 = 0.0;
        let mut max_occupation: f64 = 0.0;
        for (t, a) in series.times().into_iter().zip(series.amplitude()) {
            max_occupation = max_occupation.max(a.norm_sqr());
            if t >= t_max - 1e-9 * self.tau {
                continue;
            }
            let reference = effective.closed_form(t)?.norm_sqr();
            max_deviation = max_deviation.max((a.norm_sqr() - reference).abs());
        }
        Ok(ContinuumPoint {
            atoms_per_wavelength,
            atoms,
            k11,
            reflection,
            max_deviation,
            max_occupation,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_keeps_order() {
        let sweep: Vec<Complex64> = FIG2_SWEEP.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let runs = reflection_sweep(&ModelParams::fig2(), &sweep, &IntegratorConfig::new(3.0 / 128.0, 6.0)).unwrap();
        assert_eq!(runs.len(), 6);
        for (run, &r) in runs.iter().zip(&FIG2_SWEEP) {
            assert_eq!(run.reflection.re, r);
            assert_eq!(run.series.occupation()[0], 1.0);
        }
    }

    #[test]
    fn study_targets_reflection() {
        let s = ContinuumStudy::default();
        let g = s.geometry(12).unwrap();
        let k11 = s.k11_for(g.line_density());
        let spec = DielectricSpec::from_line_density(k11, g.line_density(), s.omega_e, s.detuning).unwrap();
        assert!((optics::weak_limit_reflection(&spec).unwrap() + 0.05).abs() < 1e-15);
        assert_eq!(g.len(), 360);
    }
}
