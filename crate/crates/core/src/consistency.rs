//! Boundary-weight constraint and series comparison metrics.
//!
//! For a single emitter before the first round trip, the equal-time
//! anticommutator of the emitter lowering operator evaluates to
//!
//! ```text
//! A(t) = e^{−2κt} + (g₀²π / (2κ)) (1 − e^{−2κt}),    κ = g₀² π α
//! ```
//!
//! in units with `c = 1`. Since `g₀²π/(2κ) = 1/(2α)`, the operator algebra is
//! preserved (`A ≡ 1`) only for `α = 1/2`.

use crate::error::{domain, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryWeightProblem {
    g0: f64,
    alpha: f64,
}

impl BoundaryWeightProblem {
    pub fn new(g0: f64, alpha: f64) -> Result<Self> {
        if !(g0 > 0.0 && g0.is_finite()) {
            return domain(format!("g0 must be positive, got {g0}"));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return domain(format!("alpha must lie in (0, 1], got {alpha}"));
        }
        Ok(BoundaryWeightProblem { g0, alpha })
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `κ = g₀² π α`.
    pub fn kappa(&self) -> f64 {
        self.g0 * self.g0 * std::f64::consts::PI * self.alpha
    }

    fn with_alpha(self, alpha: f64) -> Self {
        BoundaryWeightProblem { alpha, ..self }
    }
}

/// `A(t) = e^{−2κt} + (1 − e^{−2κt}) / (2α)`.
pub fn anticommutator_value(p: &BoundaryWeightProblem, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("anticommutator needs t >= 0, got {t}"));
    }
    let decay = (-2.0 * p.kappa() * t).exp();
    let asymptote = p.g0 * p.g0 * std::f64::consts::PI / (2.0 * p.kappa());
    Ok(decay + asymptote * (1.0 - decay))
}

/// The weight `α ∈ (0, 1]` for which `A(t)` relaxes to `target` instead of
/// moving away from it (`target = 1` restores the operator algebra).
///
/// The signed residual `A(t) − e^{−2κt} − target (1 − e^{−2κt})` is
/// bisected at the latest grid time; its sign is that of `1/(2α) − target`.
/// The grid must contain a time with `2κt ≥ 1` for the template `κ`.
pub fn solve_alpha(template: &BoundaryWeightProblem, grid: &[f64], target: f64) -> Result<f64> {
    if !(target.is_finite() && target >= 0.5) {
        return domain(format!("target {target} is not reachable for alpha in (0, 1]"));
    }
    let t = grid.iter().copied().filter(|t| t.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    if !(t > 0.0) || 2.0 * template.kappa() * t < 1.0 {
        return domain("grid does not resolve the relaxation (needs a time with 2 kappa t >= 1)");
    }
    let residual = |alpha: f64| -> Result<f64> {
        let p = template.with_alpha(alpha);
        let decay = (-2.0 * p.kappa() * t).exp();
        Ok(anticommutator_value(&p, t)? - decay - target * (1.0 - decay))
    };
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, 1.0);
    if residual(hi)? > 0.0 {
        return domain(format!("no alpha in (0, 1] reaches target {target}"));
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if residual(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// What [`compare_series`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `|a − b|` of the complex amplitudes.
    Amplitude,
    /// `| |a|² − |b|² |`.
    Occupation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesMetrics {
    pub max_abs: f64,
    /// Root mean square of the pointwise difference.
    pub l2: f64,
    /// First time at which `max_abs` is attained.
    pub worst_time: f64,
}

/// Compares the first traces of `a` and `b` on `a`'s grid. When the grids
/// differ `b` is resampled through its Hermite interpolant, and only the
/// overlap of the two time ranges is compared.
pub fn compare_series(a: &TimeSeries, b: &TimeSeries, quantity: Quantity) -> Result<SeriesMetrics> {
    if a.is_empty() || b.is_empty() {
        return domain("cannot compare empty series");
    }
    let (ga, gb) = (a.grid(), b.grid());
    let same = ga.len == gb.len
        && (ga.start - gb.start).abs() <= 1e-12 * ga.step
        && (ga.step - gb.step).abs() <= 1e-12 * ga.step;
    let diff = |x: num_complex::Complex64, y: num_complex::Complex64| match quantity {
        Quantity::Amplitude => (x - y).norm(),
        Quantity::Occupation => (x.norm_sqr() - y.norm_sqr()).abs(),
    };
    let mut pairs = Vec::with_capacity(a.len());
    if same {
        for (i, (&x, &y)) in a.amplitude().iter().zip(b.amplitude()).enumerate() {
            pairs.push((ga.time(i), diff(x, y)));
        }
    } else {
        let hist = b.history();
        let tol = 1e-9 * gb.step.max(ga.step);
        for (i, &x) in a.amplitude().iter().enumerate() {
            let t = ga.time(i);
            if t < gb.start - tol || t > gb.end() + tol {
                continue;
            }
            let t = t.clamp(gb.start, gb.end());
            pairs.push((ga.time(i), diff(x, hist.interpolate(t)?)));
        }
        if pairs.is_empty() {
            return domain("series cover disjoint time ranges");
        }
    }
    let mut metrics = SeriesMetrics {
        max_abs: 0.0,
        l2: 0.0,
        worst_time: pairs[0].0,
    };
    let mut sq = 0.0;
    for &(t, d) in &pairs {
        if d > metrics.max_abs {
            metrics.max_abs = d;
            metrics.worst_time = t;
        }
        sq += d * d;
    }
    metrics.l2 = (sq / pairs.len() as f64).sqrt();
    Ok(metrics)
}
