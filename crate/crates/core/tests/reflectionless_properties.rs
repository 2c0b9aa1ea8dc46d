use proptest::prelude::*;
use qrefless::numeric::{c, C, I};
use qrefless::reflectionless::{self as rl, casoratian, seeds_build, SeedSystem};
use qrefless::scattering::pole_census;
use qrefless::solvable::Coupling;

prop_compose! {
    fn seed_system(max_n: usize)(
        n in 1..=max_n,
        g in 0.2f64..0.7,
    )(
        gaps in prop::collection::vec(0.2f64..1.5, n),
        mags in prop::collection::vec(0.1f64..5.0, n),
        g in Just(g),
    ) -> Option<SeedSystem> {
        let mut k = Vec::new();
        let mut acc = 0.0;
        for d in &gaps {
            acc += d;
            k.push(acc);
        }
        let ct: Vec<f64> = mags.iter().enumerate().map(|(j, m)| if j % 2 == 0 { *m } else { -m }).collect();
        seeds_build(g, &k, &ct).ok()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tau_positive_on_real_line(seed in seed_system(5), xs in prop::collection::vec(-30.0f64..30.0, 1000)) {
        prop_assume!(seed.is_some());
        let seed = seed.unwrap();
        for x in xs {
            let l = rl::log_tau_u(&seed, c(x, 0.0));
            prop_assert!(l.re.is_finite() && l.im.abs() < 1e-12, "x={x}: log u = {l}");
        }
    }

    #[test]
    fn determinant_equals_casoratian(seed in seed_system(5), x in -8.0f64..8.0) {
        prop_assume!(seed.is_some());
        let seed = seed.unwrap();
        let u = rl::tau_u(&seed, c(x, 0.0));
        prop_assume!(u.is_ok());
        let u = u.unwrap();
        let v = rl::tau_u_from_casoratian(&seed, c(x, 0.0));
        prop_assert!((u - v).norm() < 1e-9 * u.norm(), "rel {:e}", (u - v).norm() / u.norm());
    }

    #[test]
    fn determinant_equals_expansion(seed in seed_system(4), x in -8.0f64..8.0) {
        prop_assume!(seed.is_some());
        let seed = seed.unwrap();
        let u = rl::tau_u(&seed, c(x, 0.0));
        prop_assume!(u.is_ok());
        let u = u.unwrap();
        prop_assert!((u - rl::tau_u_expansion(&seed, c(x, 0.0))).norm() < 1e-9 * u.norm());
    }

    #[test]
    fn c_and_c_tilde_round_trip(seed in seed_system(6)) {
        prop_assume!(seed.is_some());
        let seed = seed.unwrap();
        let back = rl::c_tilde_from_c(seed.gamma, &seed.k, &seed.c);
        for (a, b) in back.iter().zip(&seed.c_tilde) {
            prop_assert!((a - b).abs() < 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn amplitude_product_is_unimodular(seed in seed_system(6), k in 0.01f64..10.0) {
        prop_assume!(seed.is_some());
        prop_assert!((rl::amplitude_product(&seed.unwrap(), k).t.norm() - 1.0).abs() < 1e-12);
    }
}

/// `γ^{−n(n−1)/2} W_γ → W` at second order.
#[test]
fn casoratian_tends_to_wronskian() {
    let f1 = |x: C| (0.3 * x).exp();
    let f2 = |x: C| x.cosh();
    let f3 = |x: C| (0.7 * x).sin();
    let x = c(0.4, 0.0);
    // derivatives up to second order
    let row = |f: [C; 3]| f;
    let m = [
        row([f1(x), 0.3 * f1(x), 0.09 * f1(x)]),
        row([f2(x), x.sinh(), x.cosh()]),
        row([f3(x), 0.7 * (0.7 * x).cos(), -0.49 * f3(x)]),
    ];
    // W = det(f_i^{(j)}) with functions as rows
    let w3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let w2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];

    let fs3: [&dyn Fn(C) -> C; 3] = [&f1, &f2, &f3];
    let err = |g: f64, n: usize| {
        let approx = casoratian(g, &fs3[..n], x) / g.powi((n * (n - 1) / 2) as i32);
        let exact = if n == 2 { w2 } else { w3 };
        (approx - exact).norm()
    };
    for n in [2, 3] {
        let e: Vec<f64> = [0.2, 0.1, 0.05].iter().map(|&g| err(g, n)).collect();
        let order = (e[1] / e[2]).log2();
        assert!(e[2] < e[1] && e[1] < e[0], "n={n}: {e:?}");
        assert!(order >= 1.9, "n={n}: observed order {order}");
    }
}

fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    (0..=n).map(|i| f(a + h * i as f64) * if i == 0 || i == n { 0.5 } else { 1.0 }).sum::<f64>() * h
}

#[test]
fn bound_states_are_orthogonal() {
    for seed in [
        seeds_build(0.4, &[0.6, 1.5, 2.7], &[1.2, -0.8, 2.0]).unwrap(),
        SeedSystem::soliton(0.3, 3).unwrap(),
    ] {
        let len = 40.0 / seed.k[0];
        let phi = |j: usize, x: f64| rl::bound_state(&seed, j, c(x, 0.0)).unwrap().re;
        let n = seed.n();
        let mut gram = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                gram[i][j] = trapezoid(|x| phi(i + 1, x) * phi(j + 1, x), -len, len, 16_000);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let off = gram[i][j].abs();
                assert!(off < 1e-6 * (gram[i][i] * gram[j][j]).sqrt(), "<{i}|{j}> = {off:e}");
            }
        }
    }
}

/// Bound states of the soliton seeds sit at the poles of `t` for `h = N`.
#[test]
fn transmission_poles_match_bound_states() {
    for (g, n) in [(0.5, 2), (0.4, 3)] {
        let seed = SeedSystem::soliton(g, n).unwrap();
        let pc = pole_census(&Coupling::new(g, n as f64).unwrap(), 1e-2);
        assert!(pc.spurious.is_empty() && pc.missing.is_empty(), "{pc:?}");
        let mut found = pc.found.clone();
        found.sort_by(f64::total_cmp);
        for (kappa, b) in found.iter().zip(seed.k.iter()) {
            assert!((kappa - b).abs() < 1e-9);
        }
        for b in seed.bound_states() {
            let kappa = seed.k[b.j - 1];
            // scattering energy 4 sinh²(kγ/2) continued to k = iκ
            let e = 4.0 * (0.5 * g * I * kappa).sinh().powi(2);
            assert!((e.re - b.energy).abs() < 1e-12 && e.im.abs() < 1e-12);
        }
    }
}

#[test]
fn no_zeros_of_u_in_the_strip() {
    let seed = seeds_build(0.4, &[0.6, 1.5, 2.7], &[1.2, -0.8, 2.0]).unwrap();
    assert_eq!(rl::strip_zero_count(&seed, 12.0, 4000), 0);
}
