//! One-dimensional placement of the mirror atoms.
//!
//! The emitter sits at `z₀ = 0`; the dielectric starts at the front face `l`.
//! With `c = 1` the emitter–atom delay is `l_j = z_j` and its round trip is
//! `τ_j = 2 z_j`.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Smooth amplitude taper at the back of a slab.
///
/// Over the last `fraction` of the slab the oscillator-strength weight falls
/// from 1 to 0 as `w(s) = 1 − s + sin(2πs)/(2π)`, whose derivative is a
/// raised-cosine bump. When the taper spans a whole number of at least two
/// half-wavelengths, its continuum back-face reflection vanishes exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taper {
    pub fraction: f64,
}

impl Default for Taper {
    fn default() -> Self {
        Taper { fraction: 0.1 }
    }
}

impl Taper {
    /// Weight at fractional depth `u ∈ [0, 1]` into the slab.
    pub fn weight(&self, u: f64) -> f64 {
        let start = 1.0 - self.fraction;
        if u <= start {
            return 1.0;
        }
        let s = ((u - start) / self.fraction).min(1.0);
        1.0 - s + (2.0 * PI * s).sin() / (2.0 * PI)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DielectricGeometry {
    front_face: f64,
    positions: Vec<f64>,
    weights: Vec<f64>,
    slab_depth: f64,
    line_density: f64,
}

impl DielectricGeometry {
    /// `atoms` atoms at the cell midpoints `z_j = l + (j − ½) Δz` of a slab
    /// `[l, l + depth]`.
    pub fn uniform(front_face: f64, depth: f64, atoms: usize, taper: Option<Taper>) -> Result<Self> {
        if !(front_face > 0.0 && front_face.is_finite()) {
            return domain(format!("front face must be positive, got {front_face}"));
        }
        if atoms > 0 && !(depth > 0.0 && depth.is_finite()) {
            return domain(format!("slab depth must be positive, got {depth}"));
        }
        if let Some(t) = taper {
            if !(t.fraction > 0.0 && t.fraction <= 1.0) {
                return domain(format!("taper fraction must lie in (0, 1], got {}", t.fraction));
            }
        }
        let dz = if atoms > 0 { depth / atoms as f64 } else { 0.0 };
        let positions: Vec<f64> = (0..atoms)
            .map(|j| front_face + (j as f64 + 0.5) * dz)
            .collect();
        let weights = positions
            .iter()
            .map(|&z| taper.map_or(1.0, |t| t.weight((z - front_face) / depth)))
            .collect();
        Ok(DielectricGeometry {
            front_face,
            positions,
            weights,
            slab_depth: depth,
            line_density: if atoms > 0 { atoms as f64 / depth } else { 0.0 },
        })
    }

    /// A slab of `half_wavelengths` half-wavelengths of the emitter light
    /// (wavenumber `k0`) holding `atoms_per_wavelength` atoms per wavelength.
    pub fn commensurate_slab(
        front_face: f64,
        k0: f64,
        half_wavelengths: usize,
        atoms_per_wavelength: usize,
        taper: Option<Taper>,
    ) -> Result<Self> {
        if !(k0 > 0.0) {
            return domain(format!("k0 must be positive, got {k0}"));
        }
        let wavelength = 2.0 * PI / k0;
        let depth = half_wavelengths as f64 * 0.5 * wavelength;
        let atoms = half_wavelengths * atoms_per_wavelength;
        if atoms % 2 != 0 {
            return domain("half-wavelength count times atoms per wavelength must be even");
        }
        Self::uniform(front_face, depth, atoms / 2, taper)
    }

    /// Arbitrary atom positions (sorted on input), all at full weight.
    pub fn from_positions(front_face: f64, mut positions: Vec<f64>, slab_depth: f64) -> Result<Self> {
        if !(front_face > 0.0) {
            return domain(format!("front face must be positive, got {front_face}"));
        }
        if positions.iter().any(|z| !z.is_finite()) {
            return domain("atom positions must be finite");
        }
        positions.sort_by(f64::total_cmp);
        if positions.first().is_some_and(|&z| z < front_face) {
            return domain("atoms must lie at or behind the front face");
        }
        if positions.windows(2).any(|w| w[1] <= w[0]) {
            return domain("atom positions must be distinct");
        }
        if !positions.is_empty() && !(slab_depth > 0.0) {
            return domain("slab depth must be positive");
        }
        let n = positions.len();
        Ok(DielectricGeometry {
            front_face,
            weights: vec![1.0; n],
            positions,
            slab_depth,
            line_density: if n > 0 { n as f64 / slab_depth } else { 0.0 },
        })
    }

    pub fn front_face(&self) -> f64 {
        self.front_face
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// Per-atom oscillator-strength weights in `(0, 1]` (1 without a taper).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn slab_depth(&self) -> f64 {
        self.slab_depth
    }

    /// Atoms per unit length (`N·A` of the continuum description).
    pub fn line_density(&self) -> f64 {
        self.line_density
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Emitter–atom delay `l_j` for atom `j`.
    pub fn emitter_delay(&self, j: usize) -> f64 {
        self.positions[j]
    }

    /// Atom–atom delay `l_{j,J}`.
    pub fn pair_delay(&self, j: usize, k: usize) -> f64 {
        (self.positions[j] - self.positions[k]).abs()
    }
}
