use proptest::prelude::*;
use qrefless::numeric::c;
use qrefless::reflectionless::{potential_v, SeedSystem};
use qrefless::solvable::{
    classical_limit_defect, eigen_residual, inversion_defect, potential_generic, reflectionless_identification, Coupling,
};
use std::f64::consts::PI;

prop_compose! {
    fn coupling()(g in 0.08f64..0.7)(h in 0.05f64..(PI / g - 2.0).min(6.0), g in Just(g)) -> Coupling {
        Coupling::new(g, h).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_level_is_an_eigenstate(cp in coupling()) {
        let xs: Vec<f64> = (0..20).map(|i| -3.0 + 6.0 * i as f64 / 19.0).collect();
        for n in 0..=cp.nmax {
            let r = eigen_residual(&cp, n, &xs).unwrap();
            prop_assert!(r < 1e-7, "gamma={} h={} n={n}: residual {r:e}", cp.gamma, cp.h);
        }
    }

    #[test]
    fn energies_increase_and_stay_negative(cp in coupling()) {
        let e = cp.energies();
        prop_assert_eq!(e.len(), cp.nmax + 1);
        prop_assert!(e.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(e.iter().all(|&v| v < 0.0));
    }

    #[test]
    fn inversion_invariants(cp in coupling(), x in -4.0f64..4.0, y in -0.2f64..0.2) {
        let (p, s) = inversion_defect(&cp, c(x, y)).unwrap();
        prop_assert!(p < 1e-10 && s < 1e-10, "product {p:e}, sum {s:e}");
    }

    #[test]
    fn classical_limit_at_least_first_order(h in 0.3f64..3.0, x in -2.0f64..2.0) {
        let d1 = classical_limit_defect(0.1, h, x).unwrap();
        let d2 = classical_limit_defect(0.05, h, x).unwrap();
        prop_assert!(d2 < d1 && (d1 / d2).log2() >= 1.0, "{d1:e} -> {d2:e}");
    }

    #[test]
    fn integer_coupling_is_the_soliton_potential(g in 0.1f64..0.5, n in 1usize..=3, x in -5.0f64..5.0) {
        prop_assume!(n as f64 + 2.0 < PI / g);
        let cp = Coupling::new(g, n as f64).unwrap();
        let seed = SeedSystem::soliton(g, n).unwrap();
        let a = potential_generic(&cp, c(x, 0.0)).unwrap();
        let b = potential_v(&seed, c(x, 0.0)).unwrap();
        prop_assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn identification_reports_are_tight() {
    for (g, n) in [(0.2, 1), (0.3, 2), (0.25, 3), (0.15, 4)] {
        let r = reflectionless_identification(g, n);
        assert!(r.potential_dev < 1e-9 && r.polynomial_dev < 1e-9 && r.eigenvalue_dev < 1e-9, "{r:?}");
    }
}

#[test]
fn constructor_rejects_bad_couplings() {
    assert!(Coupling::new(0.5, 0.0).is_err());
    assert!(Coupling::new(0.5, -1.0).is_err());
    assert!(Coupling::new(0.5, PI / 0.5 - 2.0).is_err());
    assert!(Coupling::new(-0.1, 1.0).is_err());
}
