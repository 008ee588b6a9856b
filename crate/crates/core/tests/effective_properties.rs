use mirrorlab::{integrate, Complex64, EffectiveModel, IntegratorConfig, ModelParams, ReflectionSpec};
use proptest::prelude::*;

fn model(k00: f64, omega_e: f64, tau: f64, r: Complex64) -> EffectiveModel {
    let p = ModelParams::derive(k00, 0.0, omega_e, omega_e, tau, 0.5, 1.0).unwrap();
    EffectiveModel::new(p, ReflectionSpec::user(r)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_ignores_mirror_before_round_trip(
        k00 in 0.1f64..5.0,
        omega_e in 0.1f64..20.0,
        tau in 0.5f64..5.0,
        re in -1.5f64..1.5,
        im in -1.5f64..1.5,
        frac in 0.0f64..0.999,
    ) {
        let t = frac * tau;
        let with = model(k00, omega_e, tau, Complex64::new(re, im)).closed_form(t).unwrap();
        let without = model(k00, omega_e, tau, Complex64::default()).closed_form(t).unwrap();
        prop_assert_eq!(with, without);
    }

    #[test]
    fn numeric_solution_tracks_closed_form(
        k00 in 0.2f64..3.0,
        omega_e in 0.1f64..10.0,
        re in -1.3f64..1.3,
        im in -1.3f64..1.3,
    ) {
        let m = model(k00, omega_e, 3.0, Complex64::new(re, im));
        let s = integrate(&m.system(), &IntegratorConfig::new(3.0 / 512.0, 15.0)).unwrap();
        prop_assert_eq!(s.occupation()[0], 1.0);
        for ((t, a), o) in s.times().into_iter().zip(s.amplitude()).zip(s.occupation()) {
            prop_assert!(o >= 0.0);
            prop_assert!((m.closed_form(t).unwrap() - a).norm() <= 1e-6);
        }
    }
}
