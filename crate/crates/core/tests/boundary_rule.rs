//! How the value of `Θ(0)` at the round-trip breakpoint affects accuracy.

use mirrorlab::{integrate, EffectiveModel, IntegratorConfig, ModelParams, ReflectionSpec};

fn max_error(config: &IntegratorConfig) -> f64 {
    let m = EffectiveModel::new(ModelParams::fig2(), ReflectionSpec::real(-1.0)).unwrap();
    let s = integrate(&m.system(), config).unwrap();
    let reference = m.closed_form_on(&s).unwrap();
    s.amplitude()
        .iter()
        .zip(&reference)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

fn pointwise(steps: f64, alpha: f64) -> f64 {
    max_error(&IntegratorConfig::new(3.0 / steps, 15.0).one_sided_breakpoints(false).alpha(alpha))
}

#[test]
fn pointwise_weights_are_first_order() {
    for &alpha in &[0.0, 0.5, 1.0] {
        let ratio = pointwise(128.0, alpha) / pointwise(256.0, alpha);
        assert!((1.8..2.2).contains(&ratio), "alpha = {alpha}: ratio {ratio}");
    }
}

#[test]
fn half_weight_halves_the_pointwise_error() {
    for &steps in &[128.0, 256.0] {
        let half = pointwise(steps, 0.5);
        let edge = pointwise(steps, 0.0).min(pointwise(steps, 1.0));
        assert!(half < 0.6 * edge, "{half} vs {edge}");
    }
}

#[test]
fn one_sided_rule_restores_fourth_order() {
    let coarse = max_error(&IntegratorConfig::new(3.0 / 128.0, 15.0));
    let fine = max_error(&IntegratorConfig::new(3.0 / 256.0, 15.0));
    assert!(fine < pointwise(256.0, 0.5) / 1e5);
    let ratio = coarse / fine;
    assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
}
