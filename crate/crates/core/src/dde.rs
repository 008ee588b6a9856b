//! Fixed-step integration of linear complex delay systems.
//!
//! The stepper is classical fourth-order Runge–Kutta. Every accepted step is
//! kept as a cubic Hermite segment, and delayed terms are read from those
//! segments. Because every declared delay is at least four steps long, no
//! stage ever needs a value from the step currently being computed.
//!
//! Solutions of delay equations are only piecewise smooth: their derivatives
//! jump at multiples of the delays. When possible the grid is shrunk so that
//! all delays are whole multiples of the step (see [`breaking_points`]). A
//! Heaviside factor `Θ(t − d)` whose argument vanishes exactly at a step
//! boundary is then evaluated on the side facing the interior of the step, so
//! each step sees a smooth right-hand side. Elsewhere `Θ(0)` takes the
//! boundary weight `α`.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{config, Error, Result};
use crate::history::HermiteWeights;
use crate::series::{Grid, TimeSeries, Trace};

/// Index into [`DelaySystem::delays`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DelayId(pub usize);

/// A system `y'(t) = f(t, y(t), y(t − d₁), …)` of complex amplitudes.
///
/// Delayed values are only reachable through [`Past`], addressed by
/// [`DelayId`], so every lookup uses a delay the system declared up front.
pub trait DelaySystem: Sync {
    fn dim(&self) -> usize;

    /// All delays the right-hand side may look up. Each must be finite and
    /// nonnegative; a zero delay may be declared for Heaviside factors but
    /// cannot be used for lookups.
    fn delays(&self) -> &[f64];

    /// State at `t = 0`.
    fn initial_value(&self, component: usize) -> Complex64;

    /// Values for `t < 0`. Defaults to the initial value.
    fn initial_history(&self, component: usize, _t: f64) -> Complex64 {
        self.initial_value(component)
    }

    fn rhs(&self, t: f64, y: &[Complex64], past: &Past<'_>, dy: &mut [Complex64]) -> Result<()>;
}

/// Which part of a step a right-hand side evaluation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StagePosition {
    Start,
    Interior,
    End,
}

/// Step and output settings for [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorConfig {
    /// Target step; may be shrunk to align the grid with the delays.
    pub step: f64,
    pub t_max: f64,
    /// Record every `stride`-th grid node.
    pub stride: usize,
    /// Value of `Θ(0)`.
    pub alpha: f64,
    /// Evaluate `Θ` one-sidedly when its argument vanishes at a step boundary.
    pub one_sided_breakpoints: bool,
    /// Shrink the step so delays and `t_max` are whole multiples of it.
    pub align_grid: bool,
    /// Components to record; `None` records all.
    pub components: Option<Vec<usize>>,
}

impl IntegratorConfig {
    pub fn new(step: f64, t_max: f64) -> Self {
        IntegratorConfig {
            step,
            t_max,
            stride: 1,
            alpha: 0.5,
            one_sided_breakpoints: true,
            align_grid: true,
            components: None,
        }
    }

    pub fn stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn one_sided_breakpoints(mut self, on: bool) -> Self {
        self.one_sided_breakpoints = on;
        self
    }

    pub fn align_grid(mut self, on: bool) -> Self {
        self.align_grid = on;
        self
    }

    pub fn components(mut self, components: Vec<usize>) -> Self {
        self.components = Some(components);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return config(format!("step must be positive, got {}", self.step));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return config(format!("t_max must be positive, got {}", self.t_max));
        }
        if self.stride == 0 {
            return config("stride must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return config(format!("alpha must lie in [0, 1], got {}", self.alpha));
        }
        Ok(())
    }
}

/// Largest step `h ≤ h_target` such that every positive delay and `t_max` is
/// a whole multiple of `h` (to 1e-12 relative), provided such an `h` is at
/// least `h_target / 64`. Otherwise `h_target` is returned unchanged.
pub fn breaking_points(delays: &[f64], t_max: f64, h_target: f64) -> f64 {
    let positive: Vec<f64> = delays.iter().copied().filter(|&d| d > 0.0).collect();
    let Some(reference) = positive.iter().copied().reduce(f64::min) else {
        return h_target;
    };
    let commensurate = |v: f64, h: f64| {
        let r = v / h;
        (v - r.round() * h).abs() <= 1e-12 * v
    };
    let n_min = ((reference / h_target) - 1e-9).ceil().max(1.0) as u64;
    let n_max = ((64.0 * reference / h_target) + 1e-9).floor() as u64;
    for n in n_min..=n_max {
        let h = reference / n as f64;
        if positive.iter().all(|&d| commensurate(d, h)) && commensurate(t_max, h) {
            return h;
        }
    }
    h_target
}

/// Accepted steps of all components, on the grid `i * h`.
struct Store {
    dim: usize,
    h: f64,
    /// Absolute index of the oldest retained node.
    first: usize,
    /// Absolute index of the newest node.
    latest: usize,
    values: Vec<Complex64>,
    derivs: Vec<Complex64>,
    /// Left-limit derivatives at nodes where a Heaviside factor switches.
    left_derivs: HashMap<usize, Vec<Complex64>>,
}

impl Store {
    fn new(dim: usize, h: f64, y0: &[Complex64], f0: &[Complex64]) -> Self {
        Store {
            dim,
            h,
            first: 0,
            latest: 0,
            values: y0.to_vec(),
            derivs: f0.to_vec(),
            left_derivs: HashMap::new(),
        }
    }

    fn push(&mut self, y: &[Complex64], f: &[Complex64], left: Option<Vec<Complex64>>) {
        self.latest += 1;
        self.values.extend_from_slice(y);
        self.derivs.extend_from_slice(f);
        if let Some(left) = left {
            self.left_derivs.insert(self.latest, left);
        }
    }

    /// Drops nodes older than `keep_from`, in large chunks.
    fn prune(&mut self, keep_from: usize) {
        if keep_from <= self.first {
            return;
        }
        let drop = keep_from - self.first;
        let retained = self.latest + 1 - self.first;
        if drop < 1024 || 2 * drop < retained {
            return;
        }
        self.values.drain(..drop * self.dim);
        self.derivs.drain(..drop * self.dim);
        self.first = keep_from;
        self.left_derivs.retain(|&k, _| k > keep_from);
    }

    fn span(&self) -> (f64, f64) {
        (self.first as f64 * self.h, self.latest as f64 * self.h)
    }

    #[inline]
    fn locate(&self, s: f64) -> Result<Located> {
        let pos = s / self.h;
        let k = pos.floor();
        let latest = self.latest as f64;
        if k >= latest {
            if pos - latest <= 1e-9 {
                return Ok(Located::Node(self.latest));
            }
            let (start, end) = self.span();
            return Err(Error::Lookup { t: s, start, end });
        }
        let k = k as usize;
        if k < self.first {
            let (start, end) = self.span();
            return Err(Error::Lookup { t: s, start, end });
        }
        let frac = pos - k as f64;
        if frac == 0.0 {
            return Ok(Located::Node(k));
        }
        Ok(Located::Segment(k, HermiteWeights::new(frac, self.h)))
    }

    #[inline]
    fn value(&self, at: &Located, c: usize) -> Complex64 {
        match *at {
            Located::Node(k) => self.values[(k - self.first) * self.dim + c],
            Located::Segment(k, w) => {
                let i0 = (k - self.first) * self.dim + c;
                let i1 = i0 + self.dim;
                let f1 = if self.left_derivs.is_empty() {
                    self.derivs[i1]
                } else {
                    self.left_derivs
                        .get(&(k + 1))
                        .map_or(self.derivs[i1], |v| v[c])
                };
                w.apply(self.values[i0], self.derivs[i0], self.values[i1], f1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Located {
    Node(usize),
    Segment(usize, HermiteWeights),
}

type InitialHistoryFn<'a> = dyn Fn(usize, f64) -> Complex64 + Sync + 'a;

/// Read access to accepted history during one right-hand side evaluation.
pub struct Past<'a> {
    store: &'a Store,
    delays: &'a [f64],
    initial: &'a InitialHistoryFn<'a>,
    t: f64,
    position: StagePosition,
    alpha: f64,
    one_sided: bool,
    tol: f64,
}

/// Resolved lookup time `t − d`, reusable across components.
pub struct Lookup<'p> {
    past: &'p Past<'p>,
    time: f64,
    at: Option<Located>,
}

impl Lookup<'_> {
    pub fn time(&self) -> f64 {
        self.time
    }

    #[inline]
    pub fn value(&self, component: usize) -> Complex64 {
        match &self.at {
            None => (self.past.initial)(component, self.time),
            Some(at) => self.past.store.value(at, component),
        }
    }
}

impl<'a> Past<'a> {
    /// Stage time of this evaluation.
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn position(&self) -> StagePosition {
        self.position
    }

    pub fn delay(&self, id: DelayId) -> f64 {
        self.delays[id.0]
    }

    /// `Θ(t − d)` under the integrator's boundary rule.
    #[inline]
    pub fn heaviside(&self, id: DelayId) -> f64 {
        let x = self.t - self.delays[id.0];
        if x > self.tol {
            1.0
        } else if x < -self.tol {
            0.0
        } else if self.one_sided {
            match self.position {
                StagePosition::Start => 1.0,
                StagePosition::End => 0.0,
                StagePosition::Interior => self.alpha,
            }
        } else {
            self.alpha
        }
    }

    /// Locates `t − d` in the history.
    #[inline]
    pub fn at(&self, id: DelayId) -> Result<Lookup<'_>> {
        let time = self.t - self.delays[id.0];
        let at = if time < 0.0 {
            None
        } else {
            Some(self.store.locate(time)?)
        };
        Ok(Lookup {
            past: self,
            time,
            at,
        })
    }

    /// `y_c(t − d)`.
    #[inline]
    pub fn delayed(&self, component: usize, id: DelayId) -> Result<Complex64> {
        Ok(self.at(id)?.value(component))
    }

    /// `Θ(t − d) · y_c(t − d)`, skipping the lookup when the step is closed.
    #[inline]
    pub fn gated(&self, component: usize, id: DelayId) -> Result<Complex64> {
        let theta = self.heaviside(id);
        if theta == 0.0 {
            return Ok(Complex64::default());
        }
        Ok(self.delayed(component, id)? * theta)
    }
}

/// Integrates `system` from `t = 0` to `config.t_max`.
pub fn integrate<S: DelaySystem + ?Sized>(system: &S, config: &IntegratorConfig) -> Result<TimeSeries> {
    config.validate()?;
    let dim = system.dim();
    let delays = system.delays();
    for &d in delays {
        if !(d.is_finite() && d >= 0.0) {
            return crate::error::config(format!("delays must be finite and nonnegative, got {d}"));
        }
    }
    let h = if config.align_grid {
        breaking_points(delays, config.t_max, config.step)
    } else {
        config.step
    };
    let min_delay = delays.iter().copied().filter(|&d| d > 0.0).reduce(f64::min);
    if let Some(d) = min_delay {
        if h > d / 4.0 * (1.0 + 1e-12) {
            return crate::error::config(format!(
                "step {h} exceeds a quarter of the shortest delay {d}"
            ));
        }
    }
    let max_delay = delays.iter().copied().fold(0.0, f64::max);
    let components: Vec<usize> = match &config.components {
        Some(c) => {
            if let Some(&bad) = c.iter().find(|&&c| c >= dim) {
                return crate::error::config(format!("component {bad} out of range for dimension {dim}"));
            }
            c.clone()
        }
        None => (0..dim).collect(),
    };

    let n_steps = (config.t_max / h + 1e-9).floor() as usize;
    let tol = 1e-6 * h;
    let mut breakpoints = vec![false; n_steps + 1];
    for &d in delays.iter().filter(|&&d| d > 0.0) {
        let m = (d / h).round();
        if (d - m * h).abs() <= tol && (m as usize) <= n_steps {
            breakpoints[m as usize] = true;
        }
    }

    let initial_fn = |c: usize, t: f64| system.initial_history(c, t);
    let eval = |store: &Store,
                t: f64,
                position: StagePosition,
                y: &[Complex64],
                dy: &mut [Complex64]|
     -> Result<()> {
        let past = Past {
            store,
            delays,
            initial: &initial_fn,
            t,
            position,
            alpha: config.alpha,
            one_sided: config.one_sided_breakpoints,
            tol,
        };
        system.rhs(t, y, &past, dy)
    };

    let mut y: Vec<Complex64> = (0..dim).map(|c| system.initial_value(c)).collect();
    let mut f = vec![Complex64::default(); dim];
    // Bootstrap store so the first evaluation can see node 0 if it asks.
    let mut store = Store::new(dim, h, &y, &f);
    eval(&store, 0.0, StagePosition::Start, &y, &mut f)?;
    store.derivs.copy_from_slice(&f);

    let recorded = n_steps / config.stride + 1;
    let mut traces: Vec<Trace> = components
        .iter()
        .map(|&c| Trace {
            component: c,
            amplitude: Vec::with_capacity(recorded),
            derivative: Vec::with_capacity(recorded),
        })
        .collect();
    let record = |traces: &mut [Trace], y: &[Complex64], f: &[Complex64]| {
        for tr in traces.iter_mut() {
            tr.amplitude.push(y[tr.component]);
            tr.derivative.push(f[tr.component]);
        }
    };
    record(&mut traces, &y, &f);

    let mut k2 = vec![Complex64::default(); dim];
    let mut k3 = vec![Complex64::default(); dim];
    let mut k4 = vec![Complex64::default(); dim];
    let mut stage = vec![Complex64::default(); dim];
    let half = 0.5 * h;
    let sixth = h / 6.0;
    let keep = (max_delay / h).ceil() as usize + 2;

    for n in 0..n_steps {
        let t_n = n as f64 * h;
        let t_next = (n + 1) as f64 * h;
        let k1 = &f;

        for i in 0..dim {
            stage[i] = y[i] + k1[i] * half;
        }
        eval(&store, t_n + half, StagePosition::Interior, &stage, &mut k2)?;
        for i in 0..dim {
            stage[i] = y[i] + k2[i] * half;
        }
        eval(&store, t_n + half, StagePosition::Interior, &stage, &mut k3)?;
        for i in 0..dim {
            stage[i] = y[i] + k3[i] * h;
        }
        eval(&store, t_next, StagePosition::End, &stage, &mut k4)?;
        for i in 0..dim {
            y[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * sixth;
        }

        let left = if breakpoints[n + 1] {
            let mut left = vec![Complex64::default(); dim];
            eval(&store, t_next, StagePosition::End, &y, &mut left)?;
            Some(left)
        } else {
            None
        };
        let mut f_next = std::mem::take(&mut k2);
        eval(&store, t_next, StagePosition::Start, &y, &mut f_next)?;
        k2 = std::mem::replace(&mut f, f_next);

        store.push(&y, &f, left);
        if (n + 1) % config.stride == 0 {
            record(&mut traces, &y, &f);
        }
        store.prune((n + 1).saturating_sub(keep));
    }

    TimeSeries::new(
        Grid {
            start: 0.0,
            step: h * config.stride as f64,
            len: traces.first().map_or(recorded, |t| t.amplitude.len()),
        },
        traces,
    )
}
