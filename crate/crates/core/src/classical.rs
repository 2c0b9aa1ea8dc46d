//! Ordinary (`γ → 0`) counterparts: the complex Gamma function, the Gaussian
//! ₂F₁ and its connection formula, and the `1/cosh²x` scattering amplitudes.

use crate::error::{Error, Result};
use crate::numeric::{c, KahanSum, C, I};
use serde::Serialize;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(z)` by the Lanczos approximation, with reflection for `Re z < 1/2`.
pub fn gamma(z: C) -> C {
    if z.re < 0.5 {
        let s = (PI * z).sin();
        if s == C::new(0.0, 0.0) {
            return C::new(f64::INFINITY, 0.0);
        }
        return PI / (s * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = C::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `1/Γ(z)`, zero at the non-positive integers.
pub fn rgamma(z: C) -> C {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return C::new(0.0, 0.0);
    }
    1.0 / gamma(z)
}

/// Plain power series of ₂F₁; requires `|z| < 1`.
fn hyp2f1_series(a: C, b: C, cc: C, z: C) -> Result<C> {
    if z.norm() >= 1.0 {
        return Err(Error::Cut(format!("|z| = {} outside the unit disc", z.norm())));
    }
    let mut acc = KahanSum::new();
    let mut t = C::new(1.0, 0.0);
    acc.add(t);
    for n in 0..2_000_000usize {
        let nf = n as f64;
        let den = (cc + nf) * (nf + 1.0);
        if den == C::new(0.0, 0.0) {
            return Err(Error::Param(format!("lower parameter {cc} is a non-positive integer")));
        }
        t *= (a + nf) * (b + nf) / den * z;
        acc.add(t);
        if t == C::new(0.0, 0.0) || (n > 8 && t.norm() < 1e-17 * acc.value().norm()) {
            return Ok(acc.value());
        }
    }
    Err(Error::Divergence(format!("2F1 series did not settle at z={z}")))
}

/// `₂F₁(a, b; c | z)`: direct series for `|z| < 0.9`, Pfaff's transformation
/// `(1−z)^{−a} ₂F₁(a, c−b; c | z/(z−1))` when that lands closer to the origin,
/// and a long direct sum for the rest of the unit disc.
pub fn hyp2f1(a: C, b: C, cc: C, z: C) -> Result<C> {
    if z.norm() < 0.9 {
        return hyp2f1_series(a, b, cc, z);
    }
    let w = z / (z - 1.0);
    if w.norm() < 0.9 {
        return Ok((1.0 - z).powc(-a) * hyp2f1_series(a, cc - b, cc, w)?);
    }
    if z.norm() < 1.0 && (z - 1.0).norm() > 1e-6 {
        return hyp2f1_series(a, b, cc, z);
    }
    Err(Error::Cut(format!("z = {z} too close to the cut from 1 to infinity")))
}

/// Both sides of the connection formula between `z = 0` and `z = 1`.
pub fn classical_connection_2f1(alpha: C, beta: C, gam: C, z: C) -> Result<(C, C)> {
    let s = gam - alpha - beta;
    if s.im.abs() < 1e-12 && (s.re - s.re.round()).abs() < 1e-12 {
        return Err(Error::Param(format!("c − a − b = {s} is an integer")));
    }
    if z.im.abs() < 1e-14 && z.re > 1.0 {
        return Err(Error::Cut(format!("1 − z = {} on the cut", 1.0 - z)));
    }
    let lhs = hyp2f1(alpha, beta, gam, z)?;
    let w = 1.0 - z;
    let g = gamma(gam);
    let c1 = g * gamma(-s) * rgamma(alpha) * rgamma(beta);
    let c2 = g * gamma(s) * rgamma(gam - alpha) * rgamma(gam - beta);
    let mut rhs = c2 * hyp2f1(alpha, beta, 1.0 - s, w)?;
    if c1 != C::new(0.0, 0.0) {
        rhs += c1 * w.powc(s) * hyp2f1(gam - alpha, gam - beta, 1.0 + s, w)?;
    }
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalOracle {
    pub h: f64,
    pub k: f64,
}

fn is_nonneg_int(h: f64) -> bool {
    h >= 0.0 && h.fract() == 0.0
}

/// `𝔱(k) = Γ(−h−ik)Γ(1+h−ik)/(Γ(−ik)Γ(1−ik))`,
/// `𝔯(k) = Γ(ik)Γ(−h−ik)Γ(1+h−ik)/(Γ(−ik)Γ(−h)Γ(1+h))`.
pub fn classical_amplitudes(o: &ClassicalOracle) -> (C, C) {
    let (h, k) = (o.h, o.k);
    if is_nonneg_int(h) {
        let n = h as usize;
        let t = (1..=n).fold(C::new(1.0, 0.0), |acc, j| acc * c(k, j as f64) / c(k, -(j as f64)));
        return (t, C::new(0.0, 0.0));
    }
    let ik = I * k;
    let common = gamma(-h - ik) * gamma(1.0 + h - ik) * rgamma(-ik);
    let t = common * rgamma(1.0 - ik);
    let r = common * gamma(ik) * rgamma(c(-h, 0.0)) * rgamma(c(1.0 + h, 0.0));
    (t, r)
}

/// Coefficients of `e^{ikx}` and `e^{−ikx}` in the `x → −∞` asymptotics of
/// `(2cosh x)^{ik} ₂F₁(−h−ik, 1+h−ik; 1−ik | (1−tanh x)/2)`.
pub fn unitwave_coefficients(h: f64, k: f64) -> (C, C) {
    let ik = I * k;
    let c1 = gamma(1.0 - ik) * gamma(-ik) * rgamma(-h - ik) * rgamma(1.0 + h - ik);
    let c2 = gamma(1.0 - ik) * gamma(ik) * rgamma(c(1.0 + h, 0.0)) * rgamma(c(-h, 0.0));
    (c1, c2)
}

/// `(1 + tanh(y/2))/2 = 1/(1+e^{−y})` without cancellation.
fn logistic(y: f64) -> f64 {
    if y >= 0.0 {
        1.0 / (1.0 + (-y).exp())
    } else {
        let e = y.exp();
        e / (1.0 + e)
    }
}

/// The analytically continued eigenfunction itself.
pub fn unitwave(h: f64, k: f64, x: f64) -> Result<C> {
    let ik = I * k;
    let z = c(logistic(-2.0 * x), 0.0);
    let pre = (ik * (2.0 * x.cosh()).ln()).exp();
    Ok(pre * hyp2f1(-h - ik, 1.0 + h - ik, 1.0 - ik, z)?)
}

/// `unitwave` rebuilt from the `z = 1` side of the connection formula, the
/// form whose leading terms give [`unitwave_coefficients`].
pub fn unitwave_connected(h: f64, k: f64, x: f64) -> Result<C> {
    let ik = I * k;
    let w = c(logistic(2.0 * x), 0.0);
    let (c1, c2) = unitwave_coefficients(h, k);
    let pre = (ik * (2.0 * x.cosh()).ln()).exp();
    let a = -h - ik;
    let b = 1.0 + h - ik;
    let cc = 1.0 - ik;
    let f1 = hyp2f1(cc - a, cc - b, 1.0 + ik, w)?;
    let f2 = hyp2f1(a, b, 1.0 - ik, w)?;
    Ok(pre * (c1 * w.powc(ik) * f1 + c2 * f2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert!((gamma(c(5.0, 0.0)) - 24.0).norm() < 1e-12);
        assert!((gamma(c(0.5, 0.0)) - PI.sqrt()).norm() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)) + 2.0 * PI.sqrt()).norm() < 1e-13);
        // |Γ(iy)|² = π/(y sinh πy)
        let y = 1.3;
        let g = gamma(c(0.0, y));
        assert!((g.norm_sqr() - PI / (y * (PI * y).sinh())).abs() < 1e-12);
        // recurrence off the axis
        let z = c(0.3, 2.1);
        assert!((gamma(z + 1.0) - z * gamma(z)).norm() < 1e-13 * gamma(z + 1.0).norm());
        assert_eq!(rgamma(c(-3.0, 0.0)), C::new(0.0, 0.0));
    }

    #[test]
    fn hyp2f1_elementary() {
        // ₂F₁(1,1;2|z) = −log(1−z)/z
        for z in [c(0.3, 0.1), c(-2.5, 0.0), c(0.95, 0.0)] {
            let want = -(1.0 - z).ln() / z;
            let v = hyp2f1(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(2.0, 0.0), z).unwrap();
            assert!((v - want).norm() < 1e-12, "z={z}");
        }
        assert!(hyp2f1(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(2.0, 0.0), c(1.5, 0.0)).is_err());
    }

    #[test]
    fn connection_at_half() {
        let (l, r) = classical_connection_2f1(c(0.3, 0.2), c(-0.7, 0.1), c(1.1, -0.4), c(0.5, 0.0)).unwrap();
        assert!((l - r).norm() < 1e-12);
        let (l, r) = classical_connection_2f1(c(-3.0, 0.0), c(0.4, 0.3), c(1.7, 0.2), c(0.3, 0.0)).unwrap();
        assert!((l - r).norm() < 1e-12);
    }

    #[test]
    fn classical_unitarity_and_integer_limit() {
        for (h, k) in [(0.7, 0.4), (1.3, 2.0), (2.6, 0.9)] {
            let (t, r) = classical_amplitudes(&ClassicalOracle { h, k });
            assert!((t.norm_sqr() + r.norm_sqr() - 1.0).abs() < 1e-10, "h={h}");
        }
        let (t, r) = classical_amplitudes(&ClassicalOracle { h: 2.0, k: 1.1 });
        let (tn, rn) = classical_amplitudes(&ClassicalOracle { h: 2.0 + 1e-9, k: 1.1 });
        assert!((t - tn).norm() < 1e-7 && rn.norm() < 1e-7 && r == C::new(0.0, 0.0));
    }

    #[test]
    fn unitwave_routes_and_asymptotics() {
        let (h, k) = (1.4, 0.8);
        let (c1, c2) = unitwave_coefficients(h, k);
        let (t, r) = classical_amplitudes(&ClassicalOracle { h, k });
        assert!((1.0 / c1 - t).norm() < 1e-12 && (c2 / c1 - r).norm() < 1e-12);
        for x in [-3.0, -0.5, 1.0] {
            let a = unitwave(h, k, x).unwrap();
            let b = unitwave_connected(h, k, x).unwrap();
            assert!((a - b).norm() < 1e-9 * a.norm(), "x={x}");
        }
        let x = -18.0;
        let far = unitwave_connected(h, k, x).unwrap();
        let lead = c1 * (I * k * x).exp() + c2 * (-I * k * x).exp();
        assert!((far - lead).norm() < 1e-9 * lead.norm());
    }
}
