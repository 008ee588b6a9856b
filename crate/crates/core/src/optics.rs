//! Linear optics of a dielectric made of two-level atoms, at normal incidence
//! and within the rotating-wave approximation.
//!
//! Two reflection-coefficient routes are kept side by side. The exact chain
//! `χ → n = sqrt(1 + Re χ) → R = −(n−1)/(n+1)` gives `R ≈ −χ/4` for a dilute
//! medium, while the weak-limit coefficient `R = −C/(2Δ)` equals `−χ/2`. The
//! weak-limit form is the one the continuum limit of the microscopic network
//! produces, and [`feedback_identity`] checks it against the network rates.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::params::ModelParams;

/// Dielectric of identical two-level atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricSpec {
    /// Strength `C = Nπμ₁²/ħ` (frequency units).
    pub strength: f64,
    /// Detuning `Δ = ω − ω_e` of the dielectric from the probe frequency.
    pub detuning: f64,
    /// Mirror-atom rate `K₁₁` (line width).
    pub k11: f64,
    /// Population inversion `⟨σ₁₁⟩ − ⟨σ₂₂⟩`; `1` for ground-state atoms.
    pub inversion: f64,
}

impl DielectricSpec {
    pub fn new(strength: f64, detuning: f64, k11: f64) -> Result<Self> {
        Self::with_inversion(strength, detuning, k11, 1.0)
    }

    pub fn with_inversion(strength: f64, detuning: f64, k11: f64, inversion: f64) -> Result<Self> {
        if !(strength.is_finite() && detuning.is_finite() && k11.is_finite()) {
            return domain("dielectric parameters must be finite");
        }
        if k11 < 0.0 {
            return domain(format!("k11 must be nonnegative, got {k11}"));
        }
        if !(-1.0..=1.0).contains(&inversion) {
            return domain(format!("inversion must lie in [-1, 1], got {inversion}"));
        }
        Ok(DielectricSpec {
            strength,
            detuning,
            k11,
            inversion,
        })
    }

    /// Dielectric equivalent to a line of atoms coupled to the emitter mode:
    /// `C = K₁₁ ρ / k₀` with `ρ` atoms per unit length.
    pub fn from_line_density(k11: f64, line_density: f64, k0: f64, detuning: f64) -> Result<Self> {
        if k0 <= 0.0 {
            return domain(format!("k0 must be positive, got {k0}"));
        }
        Self::new(k11 * line_density / k0, detuning, k11)
    }
}

/// `χ = C p (Δ − i K₁₁) / (Δ² + K₁₁²)`, the resonant part of the two-level
/// susceptibility (the `ω + ω_e` term is dropped).
pub fn susceptibility(spec: &DielectricSpec) -> Result<Complex64> {
    let DielectricSpec {
        strength,
        detuning,
        k11,
        inversion,
    } = *spec;
    let denom = detuning * detuning + k11 * k11;
    if denom == 0.0 {
        return domain("susceptibility is singular on resonance without damping");
    }
    Ok(Complex64::new(detuning, -k11) * (strength * inversion / denom))
}

/// `n = sqrt(1 + Re χ)`; absorption is neglected.
pub fn refraction_index(chi: Complex64) -> Result<f64> {
    if chi.re <= -1.0 {
        return domain(format!("Re chi = {} gives no real refraction index", chi.re));
    }
    Ok((1.0 + chi.re).sqrt())
}

/// Normal-incidence Fresnel coefficient from vacuum, `R = −(n−1)/(n+1)`.
pub fn fresnel_reflection(n: f64) -> Result<f64> {
    if !(n > 0.0) {
        return domain(format!("refraction index must be positive, got {n}"));
    }
    Ok(-(n - 1.0) / (n + 1.0))
}

/// Weak-limit reflection `R = −C/(2Δ)`.
pub fn weak_limit_reflection(spec: &DielectricSpec) -> Result<f64> {
    if spec.detuning == 0.0 {
        return domain("weak-limit reflection needs a nonzero detuning");
    }
    Ok(-spec.strength / (2.0 * spec.detuning))
}

/// Exact Fresnel chain `susceptibility → refraction_index → fresnel_reflection`.
pub fn fresnel_from_dielectric(spec: &DielectricSpec) -> Result<f64> {
    fresnel_reflection(refraction_index(susceptibility(spec)?)?)
}

/// Both sides of the rate identity linking the network feedback coefficient
/// to the weak-limit reflection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackIdentity {
    /// `K₀₁² ρ / (2 k₀ Δ)`, built from the cross rate.
    pub lhs: f64,
    /// `−K₀₀ R` with `R` the weak-limit coefficient of the equivalent dielectric.
    pub rhs: f64,
    pub ok: bool,
}

/// Evaluates the identity along its two independent derivation paths.
pub fn feedback_identity(
    params: &ModelParams,
    line_density: f64,
    k0: f64,
    detuning: f64,
) -> Result<FeedbackIdentity> {
    if detuning == 0.0 {
        return domain("identity needs a nonzero detuning");
    }
    if !(k0 > 0.0) {
        return domain(format!("k0 must be positive, got {k0}"));
    }
    let lhs = params.k01() * params.k01() * line_density / (2.0 * k0 * detuning);
    let spec = DielectricSpec::from_line_density(params.k11(), line_density, k0, detuning)?;
    let rhs = -params.k00() * weak_limit_reflection(&spec)?;
    let ok = (lhs - rhs).abs() <= 1e-12 * lhs.abs();
    Ok(FeedbackIdentity { lhs, rhs, ok })
}
