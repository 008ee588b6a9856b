//! Physical constants of the emitter/mirror model.
//!
//! All quantities are dimensionless with `c = ħ = ε₀ = 1`. Rates are in units
//! of inverse time, the emitter wavenumber equals its transition frequency
//! (`k₀ = ω_e`) and the emitter-to-mirror distance is half the round trip
//! (`l = τ/2`).

use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Result};

/// Factor by which the mirror-atom rate must undercut the detuning before the
/// Born/adiabatic reduction is considered valid.
pub const BORN_VALIDITY_FACTOR: f64 = 10.0;

/// Model constants shared by every model in the crate.
///
/// Construct with [`ModelParams::derive`]; the cross rate `k01` is always
/// `sqrt(k00 * k11)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    k00: f64,
    k11: f64,
    k01: f64,
    omega_e: f64,
    omega: f64,
    tau: f64,
    alpha: f64,
    mu_ratio: f64,
}

/// Non-fatal diagnostics raised by [`ModelParams::validity_warnings`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidityWarning {
    /// `BORN_VALIDITY_FACTOR * k11 > |ω − ω_e|`: the mirror atoms are not far
    /// enough off resonance for the Born/adiabatic reduction.
    BornRegime { k11: f64, detuning: f64 },
}

impl fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidityWarning::BornRegime { k11, detuning } => write!(
                f,
                "k11 = {k11} is not small against |omega - omega_e| = {}; \
                 the adiabatic mirror reduction is unreliable",
                detuning.abs()
            ),
        }
    }
}

impl ModelParams {
    /// Validates the inputs and derives the cross rate.
    ///
    /// Emits a `log` warning for each [`ValidityWarning`]; these never fail
    /// construction.
    pub fn derive(
        k00: f64,
        k11: f64,
        omega_e: f64,
        omega: f64,
        tau: f64,
        alpha: f64,
        mu_ratio: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("k00", k00),
            ("k11", k11),
            ("omega_e", omega_e),
            ("omega", omega),
            ("tau", tau),
            ("alpha", alpha),
            ("mu_ratio", mu_ratio),
        ] {
            if !v.is_finite() {
                return domain(format!("{name} must be finite, got {v}"));
            }
        }
        if k00 <= 0.0 {
            return domain(format!("k00 must be positive, got {k00}"));
        }
        if k11 < 0.0 {
            return domain(format!("k11 must be nonnegative, got {k11}"));
        }
        if tau <= 0.0 {
            return domain(format!("tau must be positive, got {tau}"));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return domain(format!("alpha must lie in [0, 1], got {alpha}"));
        }
        let params = ModelParams {
            k00,
            k11,
            k01: (k00 * k11).sqrt(),
            omega_e,
            omega,
            tau,
            alpha,
            mu_ratio,
        };
        for w in params.validity_warnings() {
            log::warn!("{w}");
        }
        Ok(params)
    }

    /// Parameters of the phenomenological figure: `K₀₀ = 1.5`, `τ = 3`,
    /// `ω_e = π/τ`, no mirror coupling.
    pub fn fig2() -> Self {
        let tau = 3.0;
        let omega_e = PI / tau;
        Self::derive(1.5, 0.0, omega_e, omega_e, tau, 0.5, 1.0).expect("valid defaults")
    }

    pub fn k00(&self) -> f64 {
        self.k00
    }
    pub fn k11(&self) -> f64 {
        self.k11
    }
    pub fn k01(&self) -> f64 {
        self.k01
    }
    pub fn omega_e(&self) -> f64 {
        self.omega_e
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn mu_ratio(&self) -> f64 {
        self.mu_ratio
    }

    /// Emitter wavenumber, equal to `ω_e` for `c = 1`.
    pub fn k0(&self) -> f64 {
        self.omega_e
    }

    /// Emitter-mirror distance `l = τ/2`.
    pub fn front_face(&self) -> f64 {
        0.5 * self.tau
    }

    /// Mirror detuning `Δ = ω − ω_e`.
    pub fn detuning(&self) -> f64 {
        self.omega - self.omega_e
    }

    pub fn validity_warnings(&self) -> Vec<ValidityWarning> {
        let mut out = Vec::new();
        let detuning = self.detuning();
        if BORN_VALIDITY_FACTOR * self.k11 > detuning.abs() {
            out.push(ValidityWarning::BornRegime {
                k11: self.k11,
                detuning,
            });
        }
        out
    }

    /// Prefactor `μ₀/(μ₁√(4π))` of the vacuum-noise term. The noise term has
    /// zero expectation in the implemented initial state, so this number never
    /// enters the dynamics.
    pub fn noise_prefactor(&self) -> Result<f64> {
        if self.mu_ratio <= 0.0 {
            return domain(format!(
                "dipole ratio must be positive, got {}",
                self.mu_ratio
            ));
        }
        Ok(self.mu_ratio / (4.0 * PI).sqrt())
    }

    pub fn with_tau(self, tau: f64) -> Result<Self> {
        Self::derive(
            self.k00,
            self.k11,
            self.omega_e,
            self.omega,
            tau,
            self.alpha,
            self.mu_ratio,
        )
    }

    pub fn with_k11(self, k11: f64) -> Result<Self> {
        Self::derive(
            self.k00,
            k11,
            self.omega_e,
            self.omega,
            self.tau,
            self.alpha,
            self.mu_ratio,
        )
    }

    pub fn with_frequencies(self, omega_e: f64, omega: f64) -> Result<Self> {
        Self::derive(
            self.k00,
            self.k11,
            omega_e,
            omega,
            self.tau,
            self.alpha,
            self.mu_ratio,
        )
    }
}
