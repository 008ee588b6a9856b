use num_complex::Complex64;

use crate::error::Result;
use crate::optics::{self, DielectricSpec};

/// Where a reflection coefficient came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    FresnelExact,
    WeakLimit,
    User,
}

/// Complex amplitude reflection coefficient `R` of the mirror.
///
/// `R = −1` is a perfect mirror, `|R| > 1` a mirror with gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionSpec {
    value: Complex64,
    provenance: Provenance,
}

impl ReflectionSpec {
    pub fn user(value: Complex64) -> Self {
        ReflectionSpec {
            value,
            provenance: Provenance::User,
        }
    }

    pub fn real(value: f64) -> Self {
        Self::user(Complex64::new(value, 0.0))
    }

    pub fn perfect_mirror() -> Self {
        Self::real(-1.0)
    }

    pub fn fresnel(spec: &DielectricSpec) -> Result<Self> {
        Ok(ReflectionSpec {
            value: Complex64::new(optics::fresnel_from_dielectric(spec)?, 0.0),
            provenance: Provenance::FresnelExact,
        })
    }

    pub fn weak_limit(spec: &DielectricSpec) -> Result<Self> {
        Ok(ReflectionSpec {
            value: Complex64::new(optics::weak_limit_reflection(spec)?, 0.0),
            provenance: Provenance::WeakLimit,
        })
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}
