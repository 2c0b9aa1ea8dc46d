use proptest::prelude::*;
use qrefless::scattering::{amplitudes, amplitudes_from_connection, pole_census, r_zero_census};
use qrefless::solvable::Coupling;
use std::f64::consts::PI;

prop_compose! {
    fn coupling()(g in 0.1f64..0.7)(h in 0.05f64..(PI / g - 2.0).min(6.0), g in Just(g)) -> Coupling {
        Coupling::new(g, h).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitarity(cp in coupling(), s in 0.001f64..1.0) {
        let a = amplitudes(&cp, s * PI / cp.gamma).unwrap();
        prop_assert!(a.unitarity_defect < 1e-8, "{:e}", a.unitarity_defect);
    }

    #[test]
    fn invariant_under_inversion(cp in coupling(), s in 0.001f64..1.0) {
        let k = s * PI / cp.gamma;
        let a = amplitudes(&cp, k).unwrap();
        let b = amplitudes(&cp.inverted(), k).unwrap();
        prop_assert!((a.t - b.t).norm() < 1e-10 && (a.r - b.r).norm() < 1e-10);
    }

    #[test]
    fn integer_coupling_does_not_reflect(g in 0.1f64..0.6, n in 1usize..=3, s in 0.001f64..1.0) {
        prop_assume!(n as f64 + 2.0 < PI / g);
        let a = amplitudes(&Coupling::new(g, n as f64).unwrap(), s * PI / g).unwrap();
        prop_assert!(a.r.norm() < 1e-9);
    }

    #[test]
    fn reflection_has_no_real_zeros(g in 0.2f64..0.6, base in 0usize..3, frac in 0.1f64..0.9) {
        let h = base as f64 + frac;
        prop_assume!(h + 2.0 < PI / g);
        let cp = Coupling::new(g, h).unwrap();
        let ks: Vec<f64> = (1..=60).map(|i| 3.0 * i as f64 / 60.0).collect();
        let m = r_zero_census(&cp, &ks).unwrap();
        prop_assert!(m > 1e-8, "min |r| = {m:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn connection_route_matches_closed_form(cp in coupling(), s in 0.02f64..0.9) {
        let k = (s * PI / cp.gamma).min(6.0);
        let a = amplitudes(&cp, k).unwrap();
        let b = amplitudes_from_connection(&cp, k).unwrap();
        prop_assert!((a.t - b.t).norm() < 1e-6 && (a.r - b.r).norm() < 1e-6);
    }
}

#[test]
fn poles_only_at_bound_state_momenta() {
    for (g, h) in [(0.5, 1.6), (0.6, 0.7), (0.35, 2.45)] {
        let cp = Coupling::new(g, h).unwrap();
        let pc = pole_census(&cp, 2e-3);
        assert!(pc.clean(1e-6), "{pc:?}");
        assert_eq!(pc.expected.len(), cp.nmax + 1);
    }
}

#[test]
fn amplitude_results_flag_bound_states() {
    let cp = Coupling::new(0.4, 2.3).unwrap();
    let a = amplitudes(&cp, 1.0).unwrap();
    let kappas: Vec<f64> = a.pole_flags.iter().map(|p| p.kappa).collect();
    assert_eq!(kappas.len(), 3);
    for p in &a.pole_flags {
        assert!((p.kappa - (cp.h - p.level as f64)).abs() < 1e-14);
        assert!((p.energy - cp.energy(p.level).unwrap()).abs() < 1e-14);
    }
}
