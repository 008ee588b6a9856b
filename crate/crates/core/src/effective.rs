//! Emitter in front of a mirror described only by its reflection coefficient.
//!
//! With the emitter initially excited and the field in vacuum, the emitter
//! amplitude obeys
//!
//! ```text
//! dε/dt = −K₀₀ ε(t) + F ε(t − τ) Θ(t − τ),    F = K₀₀ R e^{−i ω_e τ}
//! ```
//!
//! The sign of `F` follows from replacing the emitter population difference
//! by its initial value −1; only the feedback phase depends on that choice,
//! and the phase is scanned through `ω_e τ` anyway. At `R = −1` this is the
//! familiar perfect-mirror feedback equation.

use num_complex::Complex64;

use crate::dde::{DelayId, DelaySystem, Past};
use crate::error::{domain, Result};
use crate::params::ModelParams;
use crate::reflection::ReflectionSpec;
use crate::series::{RealSeries, TimeSeries};

/// `n!` beyond which series terms are dropped.
const FACTORIAL_CUTOFF: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveModel {
    params: ModelParams,
    reflection: ReflectionSpec,
    feedback: Complex64,
}

impl EffectiveModel {
    pub fn new(params: ModelParams, reflection: ReflectionSpec) -> Result<Self> {
        let phase = Complex64::from_polar(1.0, -params.omega_e() * params.tau());
        let feedback = reflection.value() * phase * params.k00();
        if !(feedback.re.is_finite() && feedback.im.is_finite()) {
            return domain(format!("feedback coefficient {feedback} is not finite"));
        }
        Ok(EffectiveModel {
            params,
            reflection,
            feedback,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn reflection(&self) -> &ReflectionSpec {
        &self.reflection
    }

    /// `F = K₀₀ R e^{−i ω_e τ}`.
    pub fn feedback(&self) -> Complex64 {
        self.feedback
    }

    /// Delay system for the emitter amplitude with `ε(0) = 1`.
    pub fn system(&self) -> EffectiveSystem {
        EffectiveSystem {
            k00: self.params.k00(),
            feedback: self.feedback,
            delays: [self.params.tau()],
            initial: Complex64::new(1.0, 0.0),
        }
    }

    /// Exact method-of-steps solution for `ε(0) = 1`:
    /// `ε(t) = Σ_{n ≤ t/τ} Fⁿ (t − nτ)ⁿ / n! · e^{−K₀₀ (t − nτ)}`.
    pub fn closed_form(&self, t: f64) -> Result<Complex64> {
        if !(t >= 0.0) {
            return domain(format!("closed form needs t >= 0, got {t}"));
        }
        let tau = self.params.tau();
        let k = self.params.k00();
        let n_max = (t / tau).floor() as u64;
        let mut sum = Complex64::default();
        let mut factorial = 1.0;
        for n in 0..=n_max {
            if n > 0 {
                factorial *= n as f64;
                if factorial > FACTORIAL_CUTOFF {
                    break;
                }
            }
            let s = t - n as f64 * tau;
            // Fⁿ sⁿ / n! built as a running product to avoid overflow.
            let mut term = Complex64::new((-k * s).exp(), 0.0);
            for j in 1..=n {
                term *= self.feedback * (s / j as f64);
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Closed form sampled on the grid of `series`.
    pub fn closed_form_on(&self, series: &TimeSeries) -> Result<Vec<Complex64>> {
        series.grid().times().map(|t| self.closed_form(t)).collect()
    }
}

/// `|ε(t)|²` of the first trace.
pub fn occupation(series: &TimeSeries) -> RealSeries {
    RealSeries {
        grid: series.grid(),
        values: series.occupation(),
    }
}

/// One-component delay system produced by [`EffectiveModel::system`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveSystem {
    k00: f64,
    feedback: Complex64,
    delays: [f64; 1],
    initial: Complex64,
}

impl EffectiveSystem {
    /// Starts from `ε(0) = amplitude` (and the same constant before `t = 0`).
    pub fn with_initial_amplitude(mut self, amplitude: Complex64) -> Self {
        self.initial = amplitude;
        self
    }
}

const ROUND_TRIP: DelayId = DelayId(0);

impl DelaySystem for EffectiveSystem {
    fn dim(&self) -> usize {
        1
    }

    fn delays(&self) -> &[f64] {
        &self.delays
    }

    fn initial_value(&self, _component: usize) -> Complex64 {
        self.initial
    }

    fn rhs(&self, _t: f64, y: &[Complex64], past: &Past<'_>, dy: &mut [Complex64]) -> Result<()> {
        dy[0] = -self.k00 * y[0] + self.feedback * past.gated(0, ROUND_TRIP)?;
        Ok(())
    }
}
