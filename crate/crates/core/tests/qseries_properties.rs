use proptest::prelude::*;
use qrefless::numeric::{c, C};
use qrefless::qseries::{self, Base, Phi21Params};

fn polar(r: f64, t: f64) -> C {
    C::from_polar(r, t)
}

fn q_diff_rel(base: &Base, p: &Phi21Params, z: C) -> Option<f64> {
    let f = |y: C| Ok(qseries::phi21(base, p, y, 1e-15)?.value);
    let r = qseries::q_difference_residual(base, p, f, z).ok()?;
    let (q, a, b, cc) = (base.q, p.a, p.b, p.c);
    let scale = (cc - a * b * z).norm() * f(q * z).ok()?.norm()
        + ((a + b) * z - cc - q).norm() * f(z).ok()?.norm()
        + (q - z).norm() * f(z / q).ok()?.norm();
    Some(r.norm() / scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn difference_equation_at_unit_modulus(
        g in 0.2f64..1.5, ra in 0.1f64..1.0, ta in -3.0f64..3.0, rb in 0.1f64..1.0, tb in -3.0f64..3.0,
        rc in 0.5f64..1.5, tc in -3.0f64..3.0, rz in 0.05f64..0.6, tz in -3.0f64..3.0,
    ) {
        let base = Base::new(g, 0.0);
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let p = Phi21Params::from_values(polar(ra, ta), polar(rb, tb), polar(rc, tc));
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let z = polar(rz, tz);
        let s = qseries::phi21(&base, &p, z, 1e-15);
        prop_assume!(s.map(|s| s.converged && !s.extrapolated).unwrap_or(false));
        if let Some(rel) = q_diff_rel(&base, &p, z) {
            prop_assert!(rel < 1e-8, "relative residual {rel:e}");
        }
        if let Some(rel) = q_diff_rel(&base.with_epsilon(1e-6), &p, z) {
            prop_assert!(rel < 1e-8, "regularized residual {rel:e}");
        }
    }

    #[test]
    fn epsilon_continuity(
        g in 0.2f64..1.5, ra in 0.1f64..1.0, ta in -3.0f64..3.0, rb in 0.1f64..1.0, tb in -3.0f64..3.0,
        rc in 0.5f64..1.5, tc in -3.0f64..3.0, rz in 0.05f64..0.6, tz in -3.0f64..3.0,
    ) {
        let base = Base::unchecked(g, 0.0);
        let p = Phi21Params::from_values(polar(ra, ta), polar(rb, tb), polar(rc, tc));
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let z = polar(rz, tz);
        let a = qseries::phi21(&base.with_epsilon(1e-6), &p, z, 1e-15);
        let b = qseries::phi21(&base.with_epsilon(1e-7), &p, z, 1e-15);
        prop_assume!(a.is_ok() && b.is_ok());
        let (a, b) = (a.unwrap(), b.unwrap());
        prop_assume!(a.converged && b.converged);
        prop_assert!((a.value - b.value).norm() < 1e-4 * b.value.norm());
    }

    #[test]
    fn terminating_equals_explicit_sum(
        g in 0.2f64..2.0, n in 0usize..9, rb in 0.2f64..2.0, tb in -3.0f64..3.0,
        rc in 0.2f64..2.0, tc in -3.0f64..3.0, rz in 0.1f64..3.0, tz in -3.0f64..3.0,
    ) {
        let base = Base::unchecked(g, 0.0);
        let q = base.q;
        let a = q.powi(-(n as i32));
        let (b, cc, z) = (polar(rb, tb), polar(rc, tc), polar(rz, tz));
        let p = Phi21Params::from_values(a, b, cc);
        prop_assume!(p.is_ok());
        let mut term = C::new(1.0, 0.0);
        let (mut sum, mut abs) = (term, 1.0);
        for k in 0..n {
            let qk = q.powi(k as i32);
            term *= (1.0 - a * qk) * (1.0 - b * qk) / ((1.0 - cc * qk) * (1.0 - q * qk)) * z;
            sum += term;
            abs += term.norm();
        }
        let got = qseries::phi21(&base, &p.unwrap(), z, 1e-15);
        prop_assume!(got.is_ok());
        prop_assert!((got.unwrap().value - sum).norm() < 1e-13 * abs);
    }

    #[test]
    fn ultraspherical_representations(g in 0.2f64..2.0, n in 0usize..=10, lb_re in -1.0f64..0.5, lb_im in -1.0f64..1.0, x in 0.1f64..3.0) {
        let base = Base::unchecked(g, 0.0);
        let f = qseries::q_ultraspherical_forms(&base, n, c(lb_re, lb_im), c(x, 0.0));
        prop_assume!(f.is_ok());
        let f = f.unwrap();
        prop_assume!(f.phi21.norm() > 1e-8);
        prop_assert!(f.max_rel_spread() < 1e-10, "spread {:e}", f.max_rel_spread());
    }
}
