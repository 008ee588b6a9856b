//! Microscopic mirror: an emitter coupled through the one-dimensional field to
//! a line of two-level atoms, in the single-excitation sector.
//!
//! Component 0 is the emitter amplitude `ε₀`, component `1 + j` the dipole
//! amplitude of atom `j`. With `δ = ω_e − ω`, atom weights `w_j` and coupling
//! `g_j = K₀₁ √w_j e^{−i k₀ l_j}`:
//!
//! ```text
//! dε₀/dt = −K₀₀ ε₀ + Σ_j g_j ε_j(t − l_j) Θ(t − l_j)
//! dε_j/dt = −(i δ + K₁₁ w_j) ε_j − g_j ε₀(t − l_j) Θ(t − l_j)
//!           − Σ_{J≠j} K₁₁ √(w_j w_J) e^{−i k₀ l_{jJ}} ε_J(t − l_{jJ}) Θ(t − l_{jJ})
//! ```
//!
//! The last line is the photon exchange among mirror atoms and is dropped in
//! Born mode. Eliminating the far-detuned atoms adiabatically gives the
//! one-component [`ReducedSystem`].

use num_complex::Complex64;

use crate::dde::{DelayId, DelaySystem, Past};
use crate::error::{domain, Result};
use crate::geometry::DielectricGeometry;
use crate::history::AmplitudeHistory;
use crate::params::ModelParams;

/// Largest network with intra-mirror exchange (`O(N²)` delayed couplings).
pub const MAX_ATOMS_FULL: usize = 512;
/// Largest network in Born mode.
pub const MAX_ATOMS_BORN: usize = 20_000;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorNetwork {
    params: ModelParams,
    geometry: DielectricGeometry,
    born: bool,
    include_transient: bool,
}

impl MirrorNetwork {
    pub fn new(params: ModelParams, geometry: DielectricGeometry, born: bool) -> Result<Self> {
        if !(params.k0() > 0.0) {
            return domain(format!("k0 = omega_e must be positive, got {}", params.k0()));
        }
        let l = params.front_face();
        if (geometry.front_face() - l).abs() > 1e-12 * l {
            return domain(format!(
                "geometry front face {} does not match tau/2 = {l}",
                geometry.front_face()
            ));
        }
        let cap = if born { MAX_ATOMS_BORN } else { MAX_ATOMS_FULL };
        if geometry.len() > cap {
            return domain(format!(
                "{} atoms exceed the limit of {cap} for this mode",
                geometry.len()
            ));
        }
        Ok(MirrorNetwork {
            params,
            geometry,
            born,
            include_transient: false,
        })
    }

    /// Keep the oscillatory initial-response term in [`Self::reduced_emitter`].
    pub fn with_transient(mut self, on: bool) -> Self {
        self.include_transient = on;
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn geometry(&self) -> &DielectricGeometry {
        &self.geometry
    }

    pub fn born(&self) -> bool {
        self.born
    }

    pub fn include_transient(&self) -> bool {
        self.include_transient
    }

    /// `e^{−i k₀ l_j}`.
    pub fn emitter_phase(&self, j: usize) -> Complex64 {
        Complex64::from_polar(1.0, -self.params.k0() * self.geometry.emitter_delay(j))
    }

    /// `e^{−i k₀ l_{jJ}}`.
    pub fn pair_phase(&self, j: usize, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, -self.params.k0() * self.geometry.pair_delay(j, k))
    }

    /// Full `(1 + N)`-component network.
    pub fn rhs_network(&self) -> NetworkSystem {
        let n = self.geometry.len();
        let k01 = self.params.k01();
        let k11 = self.params.k11();
        let weights = self.geometry.weights();
        let mut delays: Vec<f64> = (0..n).map(|j| self.geometry.emitter_delay(j)).collect();
        let coupling = (0..n)
            .map(|j| self.emitter_phase(j) * (k01 * weights[j].sqrt()))
            .collect();
        let damping = (0..n)
            .map(|j| Complex64::new(k11 * weights[j], self.params.omega_e() - self.params.omega()))
            .collect();
        let mut exchange = Vec::new();
        if !self.born && k11 != 0.0 {
            exchange = vec![Vec::with_capacity(n.saturating_sub(1)); n];
            for j in 0..n {
                for k in (j + 1)..n {
                    let id = DelayId(delays.len());
                    delays.push(self.geometry.pair_delay(j, k));
                    let c = self.pair_phase(j, k) * (k11 * (weights[j] * weights[k]).sqrt());
                    exchange[j].push((k, id, c));
                    exchange[k].push((j, id, c));
                }
            }
            for row in &mut exchange {
                row.sort_by_key(|&(k, _, _)| k);
            }
        }
        NetworkSystem {
            k00: self.params.k00(),
            coupling,
            damping,
            exchange,
            delays,
        }
    }

    /// Emitter alone, with the atoms adiabatically eliminated:
    ///
    /// `dε₀/dt = −K₀₀ ε₀ + i K₀₁²/δ Σ_j w_j e^{−i ω_e τ_j} ε₀(t − τ_j) Θ(t − τ_j)`
    ///
    /// with `τ_j = 2 l_j`. The transient option adds
    /// `−i K₀₁²/δ Σ_j w_j e^{−i ω_e τ_j} e^{−i δ (t − τ_j)} ε₀(0) Θ(t − τ_j)`.
    pub fn reduced_emitter(&self) -> Result<ReducedSystem> {
        let delta = self.params.omega_e() - self.params.omega();
        if delta == 0.0 {
            return domain("adiabatic elimination needs off-resonant mirror atoms (omega != omega_e)");
        }
        let n = self.geometry.len();
        let scale = I * (self.params.k01() * self.params.k01() / delta);
        let delays: Vec<f64> = (0..n).map(|j| 2.0 * self.geometry.emitter_delay(j)).collect();
        let coefficients = (0..n)
            .map(|j| {
                scale
                    * self.geometry.weights()[j]
                    * Complex64::from_polar(1.0, -self.params.omega_e() * delays[j])
            })
            .collect();
        Ok(ReducedSystem {
            k00: self.params.k00(),
            delta,
            coefficients,
            delays,
            transient: self.include_transient,
        })
    }
}

/// Delay system produced by [`MirrorNetwork::rhs_network`].
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSystem {
    k00: f64,
    /// `g_j`.
    coupling: Vec<Complex64>,
    /// `K₁₁ w_j + i δ`.
    damping: Vec<Complex64>,
    /// Per atom: partner, pair delay and coupling, sorted by partner.
    exchange: Vec<Vec<(usize, DelayId, Complex64)>>,
    delays: Vec<f64>,
}

impl DelaySystem for NetworkSystem {
    fn dim(&self) -> usize {
        1 + self.coupling.len()
    }

    fn delays(&self) -> &[f64] {
        &self.delays
    }

    fn initial_value(&self, component: usize) -> Complex64 {
        if component == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::default()
        }
    }

    fn rhs(&self, _t: f64, y: &[Complex64], past: &Past<'_>, dy: &mut [Complex64]) -> Result<()> {
        let mut feedback = Complex64::default();
        for (j, (&g, &damp)) in self.coupling.iter().zip(&self.damping).enumerate() {
            let id = DelayId(j);
            let mut d = -damp * y[1 + j];
            let theta = past.heaviside(id);
            if theta != 0.0 {
                let at = past.at(id)?;
                feedback += g * at.value(1 + j) * theta;
                d -= g * at.value(0) * theta;
            }
            if let Some(row) = self.exchange.get(j) {
                for &(k, pid, c) in row {
                    d -= c * past.gated(1 + k, pid)?;
                }
            }
            dy[1 + j] = d;
        }
        dy[0] = -self.k00 * y[0] + feedback;
        Ok(())
    }
}

/// Delay system produced by [`MirrorNetwork::reduced_emitter`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSystem {
    k00: f64,
    delta: f64,
    coefficients: Vec<Complex64>,
    delays: Vec<f64>,
    transient: bool,
}

impl DelaySystem for ReducedSystem {
    fn dim(&self) -> usize {
        1
    }

    fn delays(&self) -> &[f64] {
        &self.delays
    }

    fn initial_value(&self, _component: usize) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn rhs(&self, t: f64, y: &[Complex64], past: &Past<'_>, dy: &mut [Complex64]) -> Result<()> {
        let mut d = -self.k00 * y[0];
        let initial = self.initial_value(0);
        for (j, &a) in self.coefficients.iter().enumerate() {
            let id = DelayId(j);
            let theta = past.heaviside(id);
            if theta == 0.0 {
                continue;
            }
            let mut v = past.delayed(0, id)?;
            if self.transient {
                v -= Complex64::from_polar(1.0, -self.delta * (t - self.delays[j])) * initial;
            }
            d += a * v * theta;
        }
        dy[0] = d;
        Ok(())
    }
}

/// Discrete atom sum against its continuum limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumCheck {
    /// `Σ_j w_j e^{−i ω_e τ_j} p(t − τ_j) Θ(t − τ_j)`.
    pub discrete: Complex64,
    /// `−i ρ/(2k₀) e^{−i ω_e τ} p(t − τ) Θ(t − τ)`.
    pub continuum: Complex64,
    pub rel_err: f64,
}

/// Compares the delayed atom sum driving the reduced emitter with the value
/// it takes for a continuous medium. Only meaningful once `t` lies past the
/// round trip to the back of the slab, so that the whole medium contributes.
pub fn continuum_sum_check(
    geometry: &DielectricGeometry,
    params: &ModelParams,
    probe: &AmplitudeHistory,
    t: f64,
) -> Result<ContinuumCheck> {
    let k0 = params.k0();
    if !(k0 > 0.0) {
        return domain(format!("k0 must be positive, got {k0}"));
    }
    let tau = 2.0 * geometry.front_face();
    if t < tau {
        return Ok(ContinuumCheck {
            discrete: Complex64::default(),
            continuum: Complex64::default(),
            rel_err: 0.0,
        });
    }
    let heaviside = |x: f64| {
        if x > 0.0 {
            1.0
        } else if x < 0.0 {
            0.0
        } else {
            params.alpha()
        }
    };
    let mut discrete = Complex64::default();
    for (&z, &w) in geometry.positions().iter().zip(geometry.weights()) {
        let tj = 2.0 * z;
        let theta = heaviside(t - tj);
        if theta != 0.0 {
            discrete += Complex64::from_polar(w, -k0 * tj) * probe.interpolate(t - tj)? * theta;
        }
    }
    let continuum = -I * (geometry.line_density() / (2.0 * k0))
        * Complex64::from_polar(1.0, -k0 * tau)
        * probe.interpolate(t - tau)?
        * heaviside(t - tau);
    let rel_err = if continuum == Complex64::default() {
        discrete.norm()
    } else {
        (discrete - continuum).norm() / continuum.norm()
    };
    Ok(ContinuumCheck {
        discrete,
        continuum,
        rel_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dde::{integrate, IntegratorConfig};
    use crate::effective::EffectiveModel;
    use crate::geometry::Taper;
    use crate::history::InitialHistory;
    use crate::reflection::ReflectionSpec;
    use std::f64::consts::PI;

    fn params(k11: f64, omega_e: f64, detuning: f64) -> ModelParams {
        ModelParams::derive(1.5, k11, omega_e, omega_e + detuning, 3.0, 0.5, 1.0).unwrap()
    }

    fn single_atom(k11: f64, detuning: f64, born: bool) -> MirrorNetwork {
        let p = params(k11, PI / 3.0, detuning);
        let g = DielectricGeometry::from_positions(1.5, vec![1.5], 1.0).unwrap();
        MirrorNetwork::new(p, g, born).unwrap()
    }

    #[test]
    fn empty_mirror_is_pure_decay() {
        let p = params(0.01, PI / 3.0, -5.0);
        let g = DielectricGeometry::uniform(1.5, 1.0, 0, None).unwrap();
        let net = MirrorNetwork::new(p, g, true).unwrap();
        let cfg = IntegratorConfig::new(3.0 / 512.0, 6.0);
        for s in [
            integrate(&net.rhs_network(), &cfg).unwrap(),
            integrate(&net.reduced_emitter().unwrap(), &cfg).unwrap(),
        ] {
            for (t, a) in s.times().into_iter().zip(s.amplitude()) {
                assert!((a.re - (-1.5 * t).exp()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn zero_coupling_decouples() {
        let net = single_atom(0.0, -5.0, true);
        let s = integrate(&net.rhs_network(), &IntegratorConfig::new(3.0 / 256.0, 6.0)).unwrap();
        assert!(s.trace(1).unwrap().amplitude.iter().all(|a| *a == Complex64::default()));
        assert!((s.amplitude().last().unwrap().re - (-9.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn single_atom_network_matches_reduced() {
        let net = single_atom(0.01, -5.0, true);
        let cfg = IntegratorConfig::new(3.0 / 1024.0, 4.5);
        let full = integrate(&net.rhs_network(), &cfg).unwrap();
        let reduced = integrate(&net.reduced_emitter().unwrap(), &cfg).unwrap();
        let a = full.occupation().last().copied().unwrap();
        let b = reduced.occupation().last().copied().unwrap();
        let p = net.params();
        let tol = 5.0 * (p.k11() + p.k01()) / 5.0;
        assert!((a - b).abs() <= tol * b, "{a} vs {b}");
        // The feedback must actually be visible at this time.
        assert!((a - (-13.5f64).exp()).abs() > 1e-3 * a);
    }

    #[test]
    fn single_atom_acts_as_mirror() {
        let net = single_atom(0.01, -5.0, true);
        let p = *net.params();
        let r = I * (p.k11() / (p.omega_e() - p.omega()));
        assert!((r.norm() - 0.002).abs() < 1e-15);
        let eff = EffectiveModel::new(p, ReflectionSpec::user(r)).unwrap();
        let reduced = integrate(&net.reduced_emitter().unwrap(), &IntegratorConfig::new(3.0 / 512.0, 9.0)).unwrap();
        for (t, a) in reduced.times().into_iter().zip(reduced.amplitude()) {
            assert!((eff.closed_form(t).unwrap() - a).norm() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn transient_term_is_small_and_reported() {
        let net = single_atom(0.04, -20.0, true);
        let cfg = IntegratorConfig::new(3.0 / 1024.0, 6.0);
        let plain = integrate(&net.reduced_emitter().unwrap(), &cfg).unwrap();
        let with = integrate(&net.clone().with_transient(true).reduced_emitter().unwrap(), &cfg).unwrap();
        let diff = plain
            .occupation()
            .iter()
            .zip(with.occupation())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff > 0.0 && diff < 1e-4, "{diff}");
    }

    #[test]
    fn resonant_reduction_is_rejected() {
        assert!(single_atom(0.01, 0.0, true).reduced_emitter().is_err());
    }

    #[test]
    fn mismatch_and_caps() {
        let p = params(0.01, PI / 3.0, -5.0);
        let g = DielectricGeometry::from_positions(1.0, vec![1.5], 1.0).unwrap();
        assert!(MirrorNetwork::new(p, g, true).is_err());
        let big = DielectricGeometry::uniform(1.5, 1.0, MAX_ATOMS_FULL + 1, None).unwrap();
        assert!(MirrorNetwork::new(p, big.clone(), false).is_err());
        assert!(MirrorNetwork::new(p, big, true).is_ok());
        let neg = ModelParams::derive(1.5, 0.01, -1.0, -6.0, 3.0, 0.5, 1.0).unwrap();
        let g = DielectricGeometry::from_positions(1.5, vec![1.5], 1.0).unwrap();
        assert!(MirrorNetwork::new(neg, g, true).is_err());
    }

    #[test]
    fn derived_tables() {
        let p = params(0.01, 7.0, -5.0);
        let g = DielectricGeometry::from_positions(1.5, vec![1.5, 1.9, 2.6], 1.2).unwrap();
        let net = MirrorNetwork::new(p, g, false).unwrap();
        for j in 0..3 {
            assert!((net.emitter_phase(j).norm() - 1.0).abs() < 1e-15);
            assert_eq!(net.geometry().pair_delay(j, j), 0.0);
            for k in 0..3 {
                assert_eq!(net.geometry().pair_delay(j, k), net.geometry().pair_delay(k, j));
                assert!((net.pair_phase(j, k).norm() - 1.0).abs() < 1e-15);
            }
        }
        assert_eq!(net.rhs_network().delays().len(), 3 + 3);
    }

    #[test]
    fn atom_order_does_not_matter() {
        let p = params(0.02, 5.0, 8.0);
        let a = DielectricGeometry::from_positions(1.5, vec![1.5, 1.62, 1.81, 2.05], 0.6).unwrap();
        let b = DielectricGeometry::from_positions(1.5, vec![2.05, 1.62, 1.5, 1.81], 0.6).unwrap();
        let cfg = IntegratorConfig::new(3.0 / 512.0, 6.0);
        for born in [true, false] {
            let sa = integrate(&MirrorNetwork::new(p, a.clone(), born).unwrap().rhs_network(), &cfg).unwrap();
            let sb = integrate(&MirrorNetwork::new(p, b.clone(), born).unwrap().rhs_network(), &cfg).unwrap();
            for (x, y) in sa.amplitude().iter().zip(sb.amplitude()) {
                assert!((x - y).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn exchange_vanishes_with_mirror_rate() {
        let positions = vec![1.5, 1.57, 1.66, 1.8, 1.93];
        let cfg = IntegratorConfig::new(3.0 / 512.0, 6.0);
        let mut last = f64::INFINITY;
        for &k11 in &[0.1, 0.01, 0.001] {
            let p = params(k11, 5.0, 8.0);
            let g = DielectricGeometry::from_positions(1.5, positions.clone(), 0.5).unwrap();
            let on = integrate(&MirrorNetwork::new(p, g.clone(), true).unwrap().rhs_network(), &cfg).unwrap();
            let off = integrate(&MirrorNetwork::new(p, g, false).unwrap().rhs_network(), &cfg).unwrap();
            let diff = on
                .amplitude()
                .iter()
                .zip(off.amplitude())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 0.1 * last, "k11 = {k11}: {diff} vs {last}");
            last = diff;
        }
    }

    fn constant_probe() -> AmplitudeHistory {
        let one = Complex64::new(1.0, 0.0);
        AmplitudeHistory::sample(0.0, 0.5, 40, |_| one, |_| Complex64::default(), InitialHistory::Constant(one))
    }

    #[test]
    fn continuum_check_before_round_trip() {
        let p = params(0.01, 20.0, 10.0);
        let g = DielectricGeometry::commensurate_slab(1.5, 20.0, 20, 50, Some(Taper::default())).unwrap();
        let c = continuum_sum_check(&g, &p, &constant_probe(), 2.9).unwrap();
        assert_eq!((c.discrete, c.continuum, c.rel_err), (Complex64::default(), Complex64::default(), 0.0));
    }

    #[test]
    fn continuum_check_converges() {
        let omega_e = 101.0 * PI / 3.0;
        let p = params(0.01, omega_e, 100.0);
        let mut errors = Vec::new();
        for &m in &[50usize, 100, 200, 400] {
            let g = DielectricGeometry::commensurate_slab(1.5, omega_e, 60, m, Some(Taper::default())).unwrap();
            let t = 2.0 * (1.5 + g.slab_depth()) + 0.5;
            let c = continuum_sum_check(&g, &p, &constant_probe(), t).unwrap();
            errors.push(c.rel_err);
        }
        assert!(errors[0] <= 0.05, "{errors:?}");
        for w in errors.windows(2) {
            assert!(w[1] <= 0.5 * w[0], "{errors:?}");
        }
    }
}
