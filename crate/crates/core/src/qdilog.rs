//! The quantum dilogarithm
//!
//! ```text
//! Φ_γ(z) = exp( ∫_{ℝ+i0} e^{−izt} / (4 sinh γt sinh πt) dt/t ),   |Im z| < γ + π,
//! ```
//!
//! continued to the whole plane by the two functional equations
//! `Φ(z+iγ)/Φ(z−iγ) = 1/(1+e^z)` and `Φ(z+iπ)/Φ(z−iπ) = 1/(1+e^{πz/γ})`.
//! Poles sit at `i((2n₁−1)γ + (2n₂−1)π)`, zeros at the negatives.

use crate::error::{Error, LatticeKind, Result};
use crate::numeric::{c, expm1, log1p_exp, C, I};
use crate::quad::tanh_sinh;
use serde::Serialize;
use std::f64::consts::PI;

/// Distance below which an argument counts as sitting on a pole or zero.
pub const POLE_GUARD: f64 = 1e-8;
const DEFAULT_TOL: f64 = 1e-13;
const MAX_PANELS: usize = 20_000;
const MAX_SHIFTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QdilogParam {
    pub gamma: f64,
    pub strip_halfwidth: f64,
    /// Keep-out band at the strip edge for direct integration.
    pub margin: f64,
    /// Absolute tolerance on `log Φ` requested from the quadrature.
    pub tol: f64,
}

impl QdilogParam {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!("gamma must be finite and > 0, got {gamma}")));
        }
        let s = gamma + PI;
        Ok(Self {
            gamma,
            strip_halfwidth: s,
            margin: 1e-3 * s,
            tol: DEFAULT_TOL,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Parameter set of `Φ_{γ/2}`, the function behind [`eval_plus`].
    pub fn halved(&self) -> Self {
        let mut p = Self::new(0.5 * self.gamma).expect("halving a valid gamma");
        p.tol = self.tol;
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Integral,
    Continued,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QdilogValue {
    pub z: C,
    pub value: C,
    pub log_value: C,
    pub method: Method,
    pub est_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleZeroLattice {
    pub kind: LatticeKind,
    pub n1: u32,
    pub n2: u32,
    pub location: C,
}

/// Which functional equation drives the continuation out of the strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    /// Shift by `2iγ` using `1 + e^w`.
    Gamma,
    /// Shift by `2iπ` using `1 + e^{πw/γ}`.
    Pi,
    /// Whichever of the two is shorter.
    Auto,
}

/// Contour offset. The nearest singularities off the origin are at
/// `t = i` and `t = iπ/γ`; stay halfway below the closer one.
fn contour_offset(gamma: f64) -> f64 {
    0.5 * f64::min(1.0, PI / gamma)
}

/// `e^{−izt}/(4t sinh γt sinh πt)` written without overflow for either sign of `Re t`.
#[inline]
fn integrand(gamma: f64, z: C, t: C) -> C {
    let s = gamma + PI;
    if t.re >= 0.0 {
        let num = (-I * z * t - s * t).exp();
        num / (t * expm1(-2.0 * gamma * t) * expm1(-2.0 * PI * t))
    } else {
        let num = (-I * z * t + s * t).exp();
        num / (t * expm1(2.0 * gamma * t) * expm1(2.0 * PI * t))
    }
}

/// Raw contour integral for `log Φ_γ(z)`; returns the value and an error bound.
fn log_integral(gamma: f64, z: C, tol: f64) -> Result<(C, f64)> {
    let s = gamma + PI;
    let r = s - z.im.abs();
    if r <= 0.0 {
        return Err(Error::Domain(format!("|Im z| = {} outside the strip {s}", z.im.abs())));
    }
    let delta = contour_offset(gamma);
    let scale = 1.0 + z.norm_sqr() / (4.0 * gamma);
    let tol = tol * scale;

    // both half-lines decay at least like e^{−r s}
    let tail = |t: f64| {
        2.0 * (delta * z.re - r * t).exp()
            / (r * t * (-(-2.0 * gamma * t).exp_m1()) * (-(-2.0 * PI * t).exp_m1()))
    };
    let mut big_t = 1.0;
    while tail(big_t) > 0.25 * tol {
        big_t *= 1.05;
        if big_t > 1e5 {
            return Err(Error::Quadrature(format!("tail bound not met for z={z}")));
        }
    }

    let osc = z.re.abs().max(1e-300);
    let w_max = f64::min(1.5, 4.0 / osc);
    let mut edges = vec![0.0];
    let mut w = 0.5 * delta.min(w_max);
    while *edges.last().unwrap() < big_t {
        let e = (edges.last().unwrap() + w).min(big_t);
        edges.push(e);
        w = (w * 1.5).min(w_max);
        if edges.len() > MAX_PANELS {
            return Err(Error::Quadrature(format!("too many panels for z={z}")));
        }
    }
    let panel_tol = 0.5 * tol / (edges.len() as f64);
    let folded = |u: f64| {
        integrand(gamma, z, c(u, delta)) + integrand(gamma, z, c(-u, delta))
    };
    let mut total = C::new(0.0, 0.0);
    let mut err = tail(big_t);
    for win in edges.windows(2) {
        let q = tanh_sinh(folded, win[0], win[1], panel_tol);
        total += q.value;
        err += q.err;
    }
    if !total.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integral at z={z}")));
    }
    Ok((total, err))
}

fn inversion_exponent(gamma: f64, z: C) -> C {
    I / (4.0 * gamma) * (z * z + (gamma * gamma + PI * PI) / 3.0)
}

/// Nearest pole or zero of `Φ_γ` to `z`, with its distance.
pub fn nearest_lattice(p: &QdilogParam, z: C) -> (PoleZeroLattice, f64) {
    let g = p.gamma;
    let y = z.im.abs();
    let kind = if z.im >= 0.0 { LatticeKind::Pole } else { LatticeKind::Zero };
    let mut best: Option<(PoleZeroLattice, f64)> = None;
    let mut n2 = 1u32;
    loop {
        let base = (2 * n2 - 1) as f64 * PI;
        if base > y + g + 1.0 && best.is_some() {
            break;
        }
        let n1 = (((y - base) / g + 1.0) * 0.5).round().max(1.0) as u32;
        for m in [n1.saturating_sub(1).max(1), n1, n1 + 1] {
            let h = (2 * m - 1) as f64 * g + base;
            let loc = if kind == LatticeKind::Pole { c(0.0, h) } else { c(0.0, -h) };
            let d = (z - loc).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((PoleZeroLattice { kind, n1: m, n2, location: loc }, d));
            }
        }
        n2 += 1;
    }
    best.unwrap()
}

fn guard(p: &QdilogParam, z: C, allow_pole: bool) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    let (l, d) = nearest_lattice(p, z);
    if d < POLE_GUARD && !(allow_pole && l.kind == LatticeKind::Pole) {
        return Err(Error::Pole { kind: l.kind, n1: l.n1, n2: l.n2, z });
    }
    Ok(())
}

/// Direct integral representation; only valid inside the strip.
pub fn eval_integral(p: &QdilogParam, z: C) -> Result<QdilogValue> {
    if z.im.abs() >= p.strip_halfwidth - p.margin {
        return Err(Error::Domain(format!(
            "|Im z| = {} not inside the strip |Im z| < {} − margin",
            z.im.abs(),
            p.strip_halfwidth
        )));
    }
    let (lv, err) = log_integral(p.gamma, z, p.tol)?;
    finish(z, lv, Method::Integral, err)
}

fn finish(z: C, lv: C, method: Method, err: f64) -> Result<QdilogValue> {
    if lv.re > 709.0 {
        return Err(Error::Overflow(format!("|Φ(z)| ≈ e^{} at z={z}", lv.re)));
    }
    Ok(QdilogValue { z, value: lv.exp(), log_value: lv, method, est_error: err })
}

/// Continuation result in split form: `log Φ(z) = log_strip + Σ logs`, and the
/// same information multiplicatively for `1/Φ`.
struct Continued {
    log_strip: C,
    log_acc: C,
    recip_factor: C,
    shifts: usize,
    err: f64,
}

fn continue_to_strip(p: &QdilogParam, z: C, shift: Shift) -> Result<Continued> {
    let g = p.gamma;
    let use_gamma = match shift {
        Shift::Gamma => true,
        Shift::Pi => false,
        Shift::Auto => g <= PI,
    };
    let s = if use_gamma { g } else { PI };
    let arg = |w: C| if use_gamma { w } else { w * (PI / g) };
    let mut w = z;
    let mut log_acc = C::new(0.0, 0.0);
    let mut recip_factor = C::new(1.0, 0.0);
    let mut shifts = 0usize;
    let mut err = 0.0;
    while w.im > s {
        let u = arg(w - I * s);
        log_acc -= log1p_exp(u);
        recip_factor *= 1.0 + u.exp();
        err += f64::EPSILON * cond_1p_exp(u);
        w -= 2.0 * I * s;
        shifts += 1;
        if shifts > MAX_SHIFTS {
            return Err(Error::Overflow(format!("continuation from z={z} needs too many shifts")));
        }
    }
    while w.im < -s {
        let u = arg(w + I * s);
        log_acc += log1p_exp(u);
        recip_factor /= 1.0 + u.exp();
        err += f64::EPSILON * cond_1p_exp(u);
        w += 2.0 * I * s;
        shifts += 1;
        if shifts > MAX_SHIFTS {
            return Err(Error::Overflow(format!("continuation from z={z} needs too many shifts")));
        }
    }
    let (log_strip, e) = if w.re > 0.0 {
        let (l, e) = log_integral(g, -w, p.tol)?;
        (inversion_exponent(g, w) - l, e)
    } else {
        log_integral(g, w, p.tol)?
    };
    Ok(Continued { log_strip, log_acc, recip_factor, shifts, err: err + e })
}

fn cond_1p_exp(u: C) -> f64 {
    let e = u.exp();
    1.0 + e.norm() / (1.0 + e).norm().max(1e-300)
}

/// `Φ_γ(z)` anywhere off the pole/zero lattice.
pub fn eval(p: &QdilogParam, z: C) -> Result<QdilogValue> {
    eval_with_shift(p, z, Shift::Auto)
}

/// As [`eval`], forcing one of the two functional equations for continuation.
pub fn eval_with_shift(p: &QdilogParam, z: C, shift: Shift) -> Result<QdilogValue> {
    guard(p, z, false)?;
    let cont = continue_to_strip(p, z, shift)?;
    let method = if cont.shifts == 0 && z.re <= 0.0 {
        Method::Integral
    } else {
        Method::Continued
    };
    finish(z, cont.log_strip + cont.log_acc, method, cont.err)
}

/// `log Φ_γ(z)`; the branch is the one obtained by the continuation path.
pub fn log_phi(p: &QdilogParam, z: C) -> Result<C> {
    guard(p, z, false)?;
    let cont = continue_to_strip(p, z, Shift::Auto)?;
    Ok(cont.log_strip + cont.log_acc)
}

/// `log Φ_γ(z)` inside the strip `|Im z| < γ + π`, analytic in `z` there:
/// no functional-equation shifts are taken, so the logarithm never jumps by
/// `2πi` between nearby arguments.
pub fn log_phi_strip(p: &QdilogParam, z: C) -> Result<C> {
    guard(p, z, false)?;
    if z.re > 0.0 {
        let (l, _) = log_integral(p.gamma, -z, p.tol)?;
        Ok(inversion_exponent(p.gamma, z) - l)
    } else {
        Ok(log_integral(p.gamma, z, p.tol)?.0)
    }
}

/// `1/Φ_γ(z)`, which stays finite (and vanishes) at the poles of `Φ_γ`.
pub fn recip(p: &QdilogParam, z: C) -> Result<C> {
    guard(p, z, true)?;
    let cont = continue_to_strip(p, z, Shift::Auto)?;
    Ok((-cont.log_strip).exp() * cont.recip_factor)
}

/// `Φ⁽⁺⁾_{γ/2}(z) = Φ_{γ/2}(z + iγ/2 + iπ)` where `p` carries `γ`.
pub fn eval_plus(p: &QdilogParam, z: C) -> Result<C> {
    Ok(eval(&p.halved(), plus_arg(p.gamma, z))?.value)
}

/// `log Φ⁽⁺⁾_{γ/2}(z)`.
pub fn log_plus(p: &QdilogParam, z: C) -> Result<C> {
    log_phi(&p.halved(), plus_arg(p.gamma, z))
}

/// `1/Φ⁽⁺⁾_{γ/2}(z)`.
pub fn recip_plus(p: &QdilogParam, z: C) -> Result<C> {
    recip(&p.halved(), plus_arg(p.gamma, z))
}

#[inline]
fn plus_arg(gamma: f64, z: C) -> C {
    z + I * (0.5 * gamma + PI)
}

/// Both sides of the two duplication identities at `z`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DuplicationPair {
    /// `(Φ_γ(z+iπ/2)Φ_γ(z−iπ/2), Φ_{2γ}(2z))`
    pub pi_pair: (C, C),
    /// `(Φ_γ(z+iγ/2)Φ_γ(z−iγ/2), Φ_{γ/2}(z))`
    pub gamma_pair: (C, C),
}

impl DuplicationPair {
    pub fn max_rel_defect(&self) -> f64 {
        let d = |(a, b): (C, C)| (a - b).norm() / b.norm().max(1e-300);
        d(self.pi_pair).max(d(self.gamma_pair))
    }
}

pub fn duplication_pair(p: &QdilogParam, z: C) -> Result<DuplicationPair> {
    let g = p.gamma;
    let half_pi = 0.5 * PI;
    let lp = log_phi(p, z + I * half_pi)? + log_phi(p, z - I * half_pi)?;
    let mut p2 = QdilogParam::new(2.0 * g)?;
    p2.tol = p.tol;
    let rp = log_phi(&p2, 2.0 * z)?;
    let lg = log_phi(p, z + I * 0.5 * g)? + log_phi(p, z - I * 0.5 * g)?;
    let rg = log_phi(&p.halved(), z)?;
    Ok(DuplicationPair {
        pi_pair: (lp.exp(), rp.exp()),
        gamma_pair: (lg.exp(), rg.exp()),
    })
}

/// Every pole and zero with `|location| ≤ radius`, sorted by modulus.
pub fn pole_zero_enumerate(p: &QdilogParam, radius: f64) -> Vec<PoleZeroLattice> {
    let g = p.gamma;
    let mut out = Vec::new();
    let mut n2 = 1u32;
    while (2 * n2 - 1) as f64 * PI + g <= radius {
        let mut n1 = 1u32;
        loop {
            let h = (2 * n1 - 1) as f64 * g + (2 * n2 - 1) as f64 * PI;
            if h > radius {
                break;
            }
            out.push(PoleZeroLattice { kind: LatticeKind::Pole, n1, n2, location: c(0.0, h) });
            out.push(PoleZeroLattice { kind: LatticeKind::Zero, n1, n2, location: c(0.0, -h) });
            n1 += 1;
        }
        n2 += 1;
    }
    out.sort_by(|a, b| {
        a.location
            .im
            .abs()
            .total_cmp(&b.location.im.abs())
            .then((a.kind == LatticeKind::Zero).cmp(&(b.kind == LatticeKind::Zero)))
    });
    out
}

/// `Φ_γ(0) = exp(i(γ²+π²)/(24γ))`.
pub fn value_at_origin(gamma: f64) -> C {
    (I * (gamma * gamma + PI * PI) / (24.0 * gamma)).exp()
}

/// Right side of the inversion relation, `Φ(z)Φ(−z)`.
pub fn inversion_rhs(gamma: f64, z: C) -> C {
    inversion_exponent(gamma, z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_log_is_continuous_and_consistent() {
        let p = QdilogParam::new(0.4).unwrap();
        for im in [-3.0, -1.2, 0.0, 2.1, 3.4] {
            let a = log_phi_strip(&p, c(-1e-13, im)).unwrap();
            let b = log_phi_strip(&p, c(1e-13, im)).unwrap();
            assert!((a - b).norm() < 1e-10, "im={im} {a} {b}");
            let z = c(2.3, im);
            let v = eval(&p, z).unwrap().value;
            assert!((log_phi_strip(&p, z).unwrap().exp() - v).norm() < 1e-11 * v.norm());
        }
    }

    fn p(g: f64) -> QdilogParam {
        QdilogParam::new(g).unwrap()
    }

    #[test]
    fn origin_value() {
        for g in [0.05, 0.3, 1.0, 2.7, 6.0] {
            let v = eval_integral(&p(g), c(0.0, 0.0)).unwrap();
            assert!((v.value - value_at_origin(g)).norm() < 1e-11, "g={g} {:?}", v);
        }
    }

    #[test]
    fn halved_step_self_convergence() {
        // tighter tolerance forces extra refinement levels: values must not move
        let z = c(1.0, 0.5);
        let a = eval_integral(&p(1.0), z).unwrap().value;
        let b = eval_integral(&p(1.0).with_tol(1e-15), z).unwrap().value;
        assert!((a - b).norm() < 1e-11);
    }

    #[test]
    fn functional_equations() {
        let g = 0.7;
        let pp = p(g);
        for z in [c(0.3, 0.2), c(-1.1, -0.9), c(2.0, 0.1)] {
            let l = eval(&pp, z + I * g).unwrap().value / eval(&pp, z - I * g).unwrap().value;
            assert!((l * (1.0 + z.exp()) - 1.0).norm() < 1e-10);
            let l = eval(&pp, z + I * PI).unwrap().value / eval(&pp, z - I * PI).unwrap().value;
            assert!((l * (1.0 + (PI * z / g).exp()) - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn pole_rejected_and_recip_vanishes() {
        let pp = p(1.0);
        let pole = c(0.0, 1.0 + PI);
        match eval(&pp, pole) {
            Err(Error::Pole { kind: LatticeKind::Pole, n1: 1, n2: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(recip(&pp, pole).unwrap().norm() < 1e-13);
        assert!(recip(&pp, -pole).is_err());
    }

    #[test]
    fn lattice_enumeration() {
        let g = 1.0;
        let s = g + PI;
        assert!(pole_zero_enumerate(&p(g), s - 0.01).is_empty());
        let l = pole_zero_enumerate(&p(g), s + 0.1);
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].kind, LatticeKind::Pole);
        assert!((l[0].location - c(0.0, s)).norm() < 1e-15);
        let l = pole_zero_enumerate(&p(g), 3.0 * g + PI + 0.1);
        let poles: Vec<_> = l.iter().filter(|x| x.kind == LatticeKind::Pole).collect();
        assert_eq!(poles.len(), 2);
        assert!((poles[1].location.im - (3.0 * g + PI)).abs() < 1e-15);
    }

    #[test]
    fn duplication_examples() {
        assert!(duplication_pair(&p(1.0), c(0.0, 0.0)).unwrap().max_rel_defect() < 1e-10);
        assert!(duplication_pair(&p(0.7), c(0.3, -0.1)).unwrap().max_rel_defect() < 1e-10);
    }

    #[test]
    fn plus_at_shifted_origin() {
        let pp = p(0.8);
        let v = eval_plus(&pp, c(0.0, -0.4 - PI)).unwrap();
        assert!((v - value_at_origin(0.4)).norm() < 1e-11);
    }
}
