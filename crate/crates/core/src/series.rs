//! Sampled results on a uniform time grid.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::history::{AmplitudeHistory, InitialHistory};

/// Uniform grid `start + i * step`, `i < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl Grid {
    pub fn time(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.time(self.len.saturating_sub(1))
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.time(i))
    }
}

/// Recorded amplitude and derivative of one state component.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// Index of the component in the integrated system.
    pub component: usize,
    pub amplitude: Vec<Complex64>,
    pub derivative: Vec<Complex64>,
}

/// Complex amplitudes of selected components on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    grid: Grid,
    traces: Vec<Trace>,
}

impl TimeSeries {
    pub fn new(grid: Grid, traces: Vec<Trace>) -> Result<Self> {
        for tr in &traces {
            if tr.amplitude.len() != grid.len || tr.derivative.len() != grid.len {
                return domain("trace length does not match grid");
            }
        }
        Ok(TimeSeries { grid, traces })
    }

    /// Single-component series without derivative information. Resampling
    /// such a series falls back to linear-in-time derivatives estimated by
    /// finite differences.
    pub fn from_amplitudes(grid: Grid, amplitude: Vec<Complex64>) -> Result<Self> {
        if amplitude.len() != grid.len {
            return domain("amplitude length does not match grid");
        }
        let derivative = finite_difference(&amplitude, grid.step);
        Self::new(
            grid,
            vec![Trace {
                component: 0,
                amplitude,
                derivative,
            }],
        )
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len
    }

    pub fn is_empty(&self) -> bool {
        self.grid.len == 0
    }

    pub fn times(&self) -> Vec<f64> {
        self.grid.times().collect()
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    /// Trace for system component `component`, if it was recorded.
    pub fn trace(&self, component: usize) -> Option<&Trace> {
        self.traces.iter().find(|t| t.component == component)
    }

    /// Amplitudes of the first recorded trace (the emitter in every model of
    /// this crate).
    pub fn amplitude(&self) -> &[Complex64] {
        &self.traces[0].amplitude
    }

    /// `|ε|²` of the first recorded trace.
    pub fn occupation(&self) -> Vec<f64> {
        self.amplitude().iter().map(|a| a.norm_sqr()).collect()
    }

    /// Dense interpolant of the first recorded trace.
    pub fn history(&self) -> AmplitudeHistory {
        let tr = &self.traces[0];
        AmplitudeHistory::from_samples(
            self.times(),
            tr.amplitude.clone(),
            tr.derivative.clone(),
            InitialHistory::Constant(tr.amplitude.first().copied().unwrap_or_default()),
        )
        .expect("uniform grid is strictly increasing")
    }
}

/// Real values on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSeries {
    pub grid: Grid,
    pub values: Vec<f64>,
}

fn finite_difference(y: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = y.len();
    if n < 2 {
        return vec![Complex64::default(); n];
    }
    (0..n)
        .map(|i| {
            if i == 0 {
                (y[1] - y[0]) / h
            } else if i == n - 1 {
                (y[n - 1] - y[n - 2]) / h
            } else {
                (y[i + 1] - y[i - 1]) / (2.0 * h)
            }
        })
        .collect()
}
