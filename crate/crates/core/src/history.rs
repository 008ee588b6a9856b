//! Dense, interpolable record of a complex amplitude.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Cubic Hermite basis weights on a segment of width `h` at fraction `s ∈ [0, 1]`.
///
/// The derivative weights already include the factor `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct HermiteWeights {
    pub y0: f64,
    pub f0: f64,
    pub y1: f64,
    pub f1: f64,
}

impl HermiteWeights {
    #[inline]
    pub fn new(s: f64, h: f64) -> Self {
        let s2 = s * s;
        let s3 = s2 * s;
        HermiteWeights {
            y0: 2.0 * s3 - 3.0 * s2 + 1.0,
            f0: (s3 - 2.0 * s2 + s) * h,
            y1: -2.0 * s3 + 3.0 * s2,
            f1: (s3 - s2) * h,
        }
    }

    #[inline]
    pub fn apply(&self, y0: Complex64, f0: Complex64, y1: Complex64, f1: Complex64) -> Complex64 {
        y0 * self.y0 + f0 * self.f0 + y1 * self.y1 + f1 * self.f1
    }
}

/// Values served for times before the first sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialHistory {
    /// A constant value for all `t` below the first sample time.
    Constant(Complex64),
}

impl InitialHistory {
    pub fn value(&self, _t: f64) -> Complex64 {
        match *self {
            InitialHistory::Constant(c) => c,
        }
    }
}

/// Samples `(t, y, y')` of a single complex amplitude with cubic Hermite
/// interpolation between them.
///
/// Queries below the first sample are served by the initial history. Queries
/// beyond the last sample are errors.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeHistory {
    times: Vec<f64>,
    values: Vec<Complex64>,
    derivs: Vec<Complex64>,
    initial: InitialHistory,
}

impl AmplitudeHistory {
    /// An empty history whose pre-start values come from `initial`.
    pub fn new(initial: InitialHistory) -> Self {
        AmplitudeHistory {
            times: Vec::new(),
            values: Vec::new(),
            derivs: Vec::new(),
            initial,
        }
    }

    /// Builds a history from parallel sample arrays.
    pub fn from_samples(
        times: Vec<f64>,
        values: Vec<Complex64>,
        derivs: Vec<Complex64>,
        initial: InitialHistory,
    ) -> Result<Self> {
        if times.len() != values.len() || times.len() != derivs.len() {
            return domain("history arrays differ in length");
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("history sample times must be strictly increasing");
        }
        Ok(AmplitudeHistory {
            times,
            values,
            derivs,
            initial,
        })
    }

    /// Samples a function and its derivative on `t0 + i h`, `i = 0..=n`.
    pub fn sample<F, D>(t0: f64, h: f64, n: usize, f: F, df: D, initial: InitialHistory) -> Self
    where
        F: Fn(f64) -> Complex64,
        D: Fn(f64) -> Complex64,
    {
        let times: Vec<f64> = (0..=n).map(|i| t0 + i as f64 * h).collect();
        let values = times.iter().map(|&t| f(t)).collect();
        let derivs = times.iter().map(|&t| df(t)).collect();
        AmplitudeHistory {
            times,
            values,
            derivs,
            initial,
        }
    }

    /// Appends a sample; `t` must exceed the latest accepted time.
    pub fn push(&mut self, t: f64, value: Complex64, deriv: Complex64) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if !(t > last) {
                return domain(format!("sample at t = {t} does not follow t = {last}"));
            }
        }
        self.times.push(t);
        self.values.push(value);
        self.derivs.push(deriv);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn start(&self) -> Option<f64> {
        self.times.first().copied()
    }

    pub fn latest(&self) -> Option<f64> {
        self.times.last().copied()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Interpolated value at `t`.
    pub fn interpolate(&self, t: f64) -> Result<Complex64> {
        let (Some(&first), Some(&last)) = (self.times.first(), self.times.last()) else {
            if t <= 0.0 {
                return Ok(self.initial.value(t));
            }
            return Err(Error::Lookup {
                t,
                start: 0.0,
                end: 0.0,
            });
        };
        if t < first {
            return Ok(self.initial.value(t));
        }
        if t > last {
            return Err(Error::Lookup {
                t,
                start: first,
                end: last,
            });
        }
        // Index of the last node at or before t.
        let i = self.times.partition_point(|&ti| ti <= t) - 1;
        if self.times[i] == t || i + 1 == self.times.len() {
            return Ok(self.values[i]);
        }
        let h = self.times[i + 1] - self.times[i];
        let w = HermiteWeights::new((t - self.times[i]) / h, h);
        Ok(w.apply(
            self.values[i],
            self.derivs[i],
            self.values[i + 1],
            self.derivs[i + 1],
        ))
    }
}
