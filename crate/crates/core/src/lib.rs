//! Delay-differential models of a two-level emitter in front of a mirror.
//!
//! The emitter amplitude can be driven either by an effective mirror with a
//! given reflection coefficient ([`effective`]) or by a microscopic line of
//! two-level atoms ([`network`]). [`optics`] connects the two through the
//! linear response of the atoms, and [`consistency`] holds the boundary
//! weight check and comparison metrics.
//!
//! Units: `c = ħ = ε₀ = 1`. The emitter sits at the origin, the mirror face
//! at `l = τ/2`, and the emitter wavenumber is `k₀ = ω_e`.

pub mod consistency;
pub mod dde;
pub mod effective;
pub mod error;
pub mod geometry;
pub mod history;
pub mod network;
pub mod optics;
pub mod params;
pub mod reflection;
pub mod scenario;
pub mod series;

pub use dde::{integrate, DelayId, DelaySystem, IntegratorConfig, Past};
pub use effective::EffectiveModel;
pub use error::{Error, Result};
pub use geometry::{DielectricGeometry, Taper};
pub use history::{AmplitudeHistory, InitialHistory};
pub use network::MirrorNetwork;
pub use params::ModelParams;
pub use reflection::ReflectionSpec;
pub use series::{Grid, TimeSeries};
pub use num_complex::Complex64;

/// Guide chapters, compiled as doc-tests so the book stays runnable.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/effective.md")]
    pub mod effective {}
    #[doc = include_str!("../../../book/src/integrator.md")]
    pub mod integrator {}
    #[doc = include_str!("../../../book/src/network.md")]
    pub mod network {}
    #[doc = include_str!("../../../book/src/optics.md")]
    pub mod optics {}
    #[doc = include_str!("../../../book/src/consistency.md")]
    pub mod consistency {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
