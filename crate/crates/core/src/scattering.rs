//! Scattering for the generic coupling: the `|q| = 1` connection formula for
//! ₂φ₁, the plane-wave solution `Ψ_k`, and the amplitudes `t(k)`, `r(k)`.
//!
//! The closed forms of `t`, `r` are the production path. The connection
//! pipeline rebuilds them from the asymptotics of `Ψ_k` and serves as
//! independent evidence.

use crate::amplitude::{e_tilde, AmplitudeResult, PoleDiagnostic};
use crate::error::{Error, LatticeKind, Result};
use crate::numeric::{c, log1p_exp, C, I};
use crate::qdilog::{eval_plus, log_phi_strip, log_plus, recip_plus, QdilogParam};
use crate::qseries::{
    finite_phi21_exp, phi21_exp, q_difference_residual_exp, qpochhammer_exp, Base, Phi21Params, SeriesResult,
};
use crate::solvable::Coupling;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

pub use crate::classical::{classical_amplitudes, classical_connection_2f1, ClassicalOracle};

/// Relative tolerance for deciding `λ − μ ∈ iγℤ`.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Internal tolerance for the ₂φ₁ sums feeding identity checks.
const SERIES_TOL: f64 = 1e-14;
/// Matching point for the `x → −∞` asymptotics of `Ψ_k`.
pub const CONNECTION_X0: f64 = -13.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionInput {
    pub gamma: f64,
    pub lambda: C,
    pub mu: C,
    pub nu: C,
    pub z: C,
}

impl ConnectionInput {
    pub fn new(gamma: f64, lambda: C, mu: C, nu: C, z: C) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!("gamma must be > 0, got {gamma}")));
        }
        check_degenerate(gamma, lambda, mu)?;
        Ok(Self { gamma, lambda, mu, nu, z })
    }

    /// `a = q^{−n}`, i.e. `λ = inγ`.
    pub fn terminating(gamma: f64, n: usize, mu: C, nu: C, z: C) -> Result<Self> {
        Self::new(gamma, I * gamma * n as f64, mu, nu, z)
    }

    fn base(&self) -> Result<Base> {
        Base::new(self.gamma, 0.0)
    }

    fn dilog(&self) -> QdilogParam {
        QdilogParam::new(self.gamma).expect("gamma validated")
    }
}

fn check_degenerate(gamma: f64, la: C, mu: C) -> Result<()> {
    let d = (la - mu) / (I * gamma);
    if (d.im).abs() < DEGENERACY_TOL && (d.re - d.re.round()).abs() < DEGENERACY_TOL {
        return Err(Error::Degenerate(format!("lambda - mu = {} lies in i*gamma*Z", la - mu)));
    }
    Ok(())
}

/// `log Φ⁽⁺⁾`, or `None` where `Φ⁽⁺⁾` has a pole (so `1/Φ⁽⁺⁾ = 0`).
fn log_plus_or_pole(p: &QdilogParam, z: C) -> Result<Option<C>> {
    match log_plus(p, z) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Pole { kind: LatticeKind::Pole, .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Logarithm of the first-branch coefficient
/// `Φ⁺(ν)Φ⁺(μ−λ)Φ⁺(z)Φ⁺(−iγ−z) / (Φ⁺(μ)Φ⁺(ν−λ)Φ⁺(λ+z)Φ⁺(−iγ−λ−z))`;
/// `None` when a denominator factor sits on a pole and the branch vanishes.
pub fn branch_log_coefficient(p: &QdilogParam, la: C, mu: C, nu: C, z: C) -> Result<Option<C>> {
    let g = I * p.gamma;
    let mut acc = C::new(0.0, 0.0);
    for d in [mu, nu - la, la + z, -g - la - z] {
        match log_plus_or_pole(p, d)? {
            Some(v) => acc -= v,
            None => return Ok(None),
        }
    }
    for n in [nu, mu - la, z, -g - z] {
        acc += log_plus(p, n)?;
    }
    Ok(Some(acc))
}

/// Parameters `(λ, λ−ν−iγ; λ−μ−iγ)` and argument exponent `ν−λ−μ−z−iγ` of
/// the first branch. The second branch swaps `λ ↔ μ`.
pub fn branch_params(gamma: f64, la: C, mu: C, nu: C, z: C) -> ([C; 3], C) {
    let g = I * gamma;
    ([la, la - nu - g, la - mu - g], nu - la - mu - z - g)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BranchValue {
    /// Zero when the branch is killed by a pole of a denominator factor.
    pub coefficient: C,
    pub series: Option<SeriesResult>,
    pub value: C,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConnectionValue {
    pub value: C,
    pub branches: [BranchValue; 2],
}

fn branch(ci: &ConnectionInput, swap: bool, tol: f64) -> Result<BranchValue> {
    let (la, mu) = if swap { (ci.mu, ci.lambda) } else { (ci.lambda, ci.mu) };
    let Some(lc) = branch_log_coefficient(&ci.dilog(), la, mu, ci.nu, ci.z)? else {
        return Ok(BranchValue { coefficient: C::new(0.0, 0.0), series: None, value: C::new(0.0, 0.0) });
    };
    let ([a, b, cc], w) = branch_params(ci.gamma, la, mu, ci.nu, ci.z);
    let s = phi21_exp(&ci.base()?, &Phi21Params::from_exponents(a, b, cc), w, tol)?;
    let value = (lc + s.value.ln()).exp();
    Ok(BranchValue { coefficient: lc.exp(), series: Some(s), value })
}

/// The right-hand side of the `|q| = 1` connection formula.
pub fn connection_rhs(ci: &ConnectionInput, tol: f64) -> Result<ConnectionValue> {
    check_degenerate(ci.gamma, ci.lambda, ci.mu)?;
    let b1 = branch(ci, false, tol)?;
    let b2 = branch(ci, true, tol)?;
    Ok(ConnectionValue { value: b1.value + b2.value, branches: [b1, b2] })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectionReport {
    pub input: ConnectionInput,
    pub lhs: C,
    pub rhs: C,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
    pub lhs_series: SeriesResult,
    pub rhs_branches: [BranchValue; 2],
}

fn usable(s: &SeriesResult) -> bool {
    s.converged && s.value.is_finite()
}

/// Compares both sides of the connection formula. Fails with
/// `Inconclusive` unless every series involved has stabilized.
pub fn connection_verify(ci: &ConnectionInput, tol: f64) -> Result<ConnectionReport> {
    let base = ci.base()?;
    let lhs = phi21_exp(&base, &Phi21Params::from_exponents(ci.lambda, ci.mu, ci.nu), ci.z, SERIES_TOL)
        .map_err(|e| Error::Inconclusive(format!("left side: {e}")))?;
    if !usable(&lhs) {
        return Err(Error::Inconclusive(format!("left series unsettled after {} terms", lhs.terms_used)));
    }
    let rhs = match connection_rhs(ci, SERIES_TOL) {
        Ok(v) => v,
        Err(e @ (Error::Divergence(_) | Error::Param(_))) => {
            return Err(Error::Inconclusive(format!("right side: {e}")))
        }
        Err(e) => return Err(e),
    };
    if rhs.branches.iter().any(|b| b.series.is_some_and(|s| !usable(&s))) {
        return Err(Error::Inconclusive("a right-hand series did not stabilize".into()));
    }
    let abs_diff = (lhs.value - rhs.value).norm();
    Ok(ConnectionReport {
        input: *ci,
        lhs: lhs.value,
        rhs: rhs.value,
        abs_diff,
        tol,
        pass: abs_diff < tol * lhs.value.norm().max(1.0),
        lhs_series: lhs,
        rhs_branches: rhs.branches,
    })
}

/// Finite-sum reduction of the `a = q^{−n}` case:
/// `(b;q)_n/(c;q)_n q^{−n(n+1)/2} (−z)^n ₂φ₁(q^{−n}, q^{1−n}/c; q^{1−n}/b | c q^{1+n}/(bz))`.
pub fn terminating_reduction(gamma: f64, n: usize, mu: C, nu: C, z: C) -> Result<C> {
    let base = Base::unchecked(gamma, 0.0);
    let lq = base.log_q;
    let nf = n as f64;
    let pre = qpochhammer_exp(&base, mu, n) / qpochhammer_exp(&base, nu, n)
        * (-0.5 * nf * (nf + 1.0) * lq + nf * (z + I * PI)).exp();
    let s = finite_phi21_exp(
        &base,
        [-nf * lq, (1.0 - nf) * lq - nu],
        (1.0 - nf) * lq - mu,
        nu + (1.0 + nf) * lq - mu - z,
        n,
    )?;
    Ok(pre * s)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct QEulerReport {
    pub lhs: C,
    pub rhs: C,
    pub abs_diff: f64,
    /// `Re(z + λ + μ − ν)`, the argument exponent of the right-hand series.
    pub w_re: f64,
    /// `e^{2π Re w/γ}`, the observed size of the discrepancy.
    pub predicted_scale: f64,
    pub pass: bool,
}

/// `₂φ₁(λ,μ;ν|z)` against `Φ⁺(z)/Φ⁺(z+λ+μ−ν) · ₂φ₁(ν−λ, ν−μ; ν | z+λ+μ−ν)`.
pub fn qeuler_check(gamma: f64, la: C, mu: C, nu: C, z: C, tol: f64) -> Result<QEulerReport> {
    let base = Base::new(gamma, 0.0)?;
    let p = QdilogParam::new(gamma)?;
    let w = z + la + mu - nu;
    let lhs = phi21_exp(&base, &Phi21Params::from_exponents(la, mu, nu), z, SERIES_TOL)?;
    let right = phi21_exp(&base, &Phi21Params::from_exponents(nu - la, nu - mu, nu), w, SERIES_TOL)?;
    if !usable(&lhs) || !usable(&right) {
        return Err(Error::Inconclusive("q-Euler series did not stabilize".into()));
    }
    let rhs = (log_plus(&p, z)? - log_plus(&p, w)?).exp() * right.value;
    let abs_diff = (lhs.value - rhs).norm();
    Ok(QEulerReport {
        lhs: lhs.value,
        rhs,
        abs_diff,
        w_re: w.re,
        predicted_scale: (2.0 * PI * w.re / gamma).exp(),
        pass: abs_diff < tol * lhs.value.norm().max(1.0),
    })
}

type Term = (C, [C; 4]);

fn expand(p: &QdilogParam, la: C, mu: C, nu: C, z: C) -> Result<Vec<Term>> {
    let mut out = Vec::with_capacity(2);
    for (a, b) in [(la, mu), (mu, la)] {
        let ([x, y, cc], w) = branch_params(p.gamma, a, b, nu, z);
        let coef = branch_log_coefficient(p, a, b, nu, z)?.map_or(C::new(0.0, 0.0), |l| l.exp());
        out.push((coef, [x, y, cc, w]));
    }
    Ok(out)
}

fn same(u: C, v: C) -> bool {
    (u - v).norm() <= 1e-9 * (1.0 + u.norm())
}

fn same_params(p: &[C; 4], q: &[C; 4]) -> bool {
    let ab = (same(p[0], q[0]) && same(p[1], q[1])) || (same(p[0], q[1]) && same(p[1], q[0]));
    ab && same(p[2], q[2]) && same(p[3], q[3])
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleReport {
    /// Summed coefficient of the original function after two applications.
    pub identity_sum: C,
    /// Summed coefficients of every other function produced.
    pub other_sums: Vec<C>,
    /// Largest single product of coefficients, a cancellation scale.
    pub term_scale: f64,
    pub defect: f64,
}

/// Applies the connection formula to each of its own right-hand terms and
/// collects coefficients: the original function must come back with total
/// coefficient 1 and everything else must cancel.
pub fn double_application(ci: &ConnectionInput) -> Result<DoubleReport> {
    let p = ci.dilog();
    let target = [ci.lambda, ci.mu, ci.nu, ci.z];
    let mut groups: Vec<(C, [C; 4])> = Vec::new();
    let mut scale: f64 = 0.0;
    for (c1, q1) in expand(&p, ci.lambda, ci.mu, ci.nu, ci.z)? {
        check_degenerate(ci.gamma, q1[0], q1[1])?;
        for (c2, q2) in expand(&p, q1[0], q1[1], q1[2], q1[3])? {
            let v = c1 * c2;
            scale = scale.max(v.norm());
            match groups.iter_mut().find(|(_, g)| same_params(g, &q2)) {
                Some(slot) => slot.0 += v,
                None => groups.push((v, q2)),
            }
        }
    }
    let mut identity_sum = C::new(0.0, 0.0);
    let mut other_sums = Vec::new();
    for (v, g) in groups {
        if same_params(&g, &target) {
            identity_sum += v;
        } else {
            other_sums.push(v);
        }
    }
    let defect = other_sums.iter().map(|v| v.norm()).fold((identity_sum - 1.0).norm(), f64::max);
    Ok(DoubleReport { identity_sum, other_sums, term_scale: scale, defect })
}

/// Relative residual of the ₂φ₁ q-difference equation (in `z`) applied to one
/// right-hand branch, `which ∈ {0, 1}`.
pub fn branch_q_difference_residual(ci: &ConnectionInput, which: usize, tol: f64) -> Result<f64> {
    let base = ci.base()?;
    let params = Phi21Params::from_exponents(ci.lambda, ci.mu, ci.nu);
    let f = |zz: C| -> Result<C> {
        let shifted = ConnectionInput { z: zz, ..*ci };
        Ok(branch(&shifted, which == 1, tol)?.value)
    };
    let res = q_difference_residual_exp(&base, &params, f, ci.z)?;
    // scale: the three terms of the equation separately
    let lq = base.log_q;
    let z = ci.z.exp();
    let (a, b, cc, q) = (params.a, params.b, params.c, base.q);
    let scale = ((cc - a * b * z) * f(ci.z + lq)?).norm()
        + (((a + b) * z - cc - q) * f(ci.z)?).norm()
        + ((q - z) * f(ci.z - lq)?).norm();
    Ok(res.norm() / scale.max(1e-300))
}

fn plus_param(gamma: f64) -> QdilogParam {
    QdilogParam::new(gamma).expect("gamma > 0")
}

/// `log t(k)` for complex `k`.
pub fn log_transmission(gamma: f64, h: f64, k: C) -> Result<C> {
    let p = plus_param(gamma);
    let g = gamma;
    let kg = k * g;
    Ok(I * 0.5 * g * h * (h + 1.0) + log_plus(&p, -kg + I * g * h)? + log_plus(&p, -kg - I * g * (h + 1.0))?
        - log_plus(&p, -kg)?
        - log_plus(&p, -kg - I * g)?)
}

/// `r(k)`; exactly zero when `Φ⁺(iγh)` or `Φ⁺(−iγ(h+1))` sits on a pole.
pub fn reflection(gamma: f64, h: f64, k: C) -> Result<C> {
    let p = plus_param(gamma);
    let g = gamma;
    let kg = k * g;
    let mut acc = 0.5 * kg * (1.0 - I * k);
    for d in [I * g * h, -I * g * (h + 1.0)] {
        match log_plus_or_pole(&p, d)? {
            Some(v) => acc -= v,
            None => return Ok(C::new(0.0, 0.0)),
        }
    }
    acc += log_plus(&p, kg)? + log_plus(&p, -kg + I * g * h)? + log_plus(&p, -kg - I * g * (h + 1.0))?
        - log_plus(&p, -kg)?;
    Ok(acc.exp())
}

fn pole_flags(cp: &Coupling) -> Vec<PoleDiagnostic> {
    if cp.h <= 0.0 {
        return Vec::new();
    }
    (0..=cp.nmax)
        .map(|n| PoleDiagnostic { kappa: cp.h - n as f64, level: n, energy: e_tilde(cp.gamma, cp.h - n as f64) })
        .collect()
}

/// `t(k)`, `r(k)` from their closed quantum-dilogarithm forms.
pub fn amplitudes(cp: &Coupling, k: f64) -> Result<AmplitudeResult> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("k must be > 0, got {k}")));
    }
    let kc = c(k, 0.0);
    let t = log_transmission(cp.gamma, cp.h, kc)?.exp();
    let r = reflection(cp.gamma, cp.h, kc)?;
    Ok(AmplitudeResult::new(k, t, r, pole_flags(cp)))
}

/// `1/t(k)`, finite at the bound-state poles of `t`.
pub fn inverse_transmission(gamma: f64, h: f64, k: C) -> Result<C> {
    let p = plus_param(gamma);
    let g = gamma;
    let kg = k * g;
    Ok((-I * 0.5 * g * h * (h + 1.0)).exp()
        * recip_plus(&p, -kg + I * g * h)?
        * recip_plus(&p, -kg - I * g * (h + 1.0))?
        * eval_plus(&p, -kg)?
        * eval_plus(&p, -kg - I * g)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct PoleCensus {
    pub expected: Vec<f64>,
    pub found: Vec<f64>,
    /// Largest distance from a found zero to its expected position.
    pub max_position_error: f64,
    pub spurious: Vec<f64>,
    pub missing: Vec<f64>,
    /// Grid points skipped because `1/t` has a pole there.
    pub skipped: usize,
    pub scanned: usize,
}

impl PoleCensus {
    pub fn clean(&self, tol: f64) -> bool {
        self.spurious.is_empty() && self.missing.is_empty() && self.max_position_error < tol
    }
}

fn refine_zero(f: &dyn Fn(C) -> Result<C>, start: f64) -> Option<C> {
    let mut x = c(start, 0.0);
    let d = 1e-6;
    for _ in 0..40 {
        let fx = f(x).ok()?;
        let df = (f(x + d).ok()? - f(x - d).ok()?) / (2.0 * d);
        if df == C::new(0.0, 0.0) || !df.is_finite() {
            return None;
        }
        let step = fx / df;
        x -= step;
        if step.norm() < 1e-14 * (1.0 + x.norm()) {
            return Some(x);
        }
        if step.norm() > 1.0 {
            return None;
        }
    }
    None
}

/// Zeros of `1/t(iκ)` for `0 < κ ≤ π/γ`, located by scanning `|1/t|` on a
/// grid, refining every local minimum by Newton's method in complex `κ`.
pub fn pole_census(cp: &Coupling, step: f64) -> PoleCensus {
    let (g, h) = (cp.gamma, cp.h);
    let top = PI / g;
    let n = (top / step).floor() as usize;
    let f = move |kappa: C| inverse_transmission(g, h, I * kappa);
    let vals: Vec<f64> = (1..=n)
        .into_par_iter()
        .map(|i| f(c(i as f64 * step, 0.0)).map_or(f64::NAN, |v| v.norm()))
        .collect();
    let skipped = vals.iter().filter(|v| !v.is_finite()).count();
    let mut found: Vec<f64> = Vec::new();
    for i in 0..vals.len() {
        let v = vals[i];
        let left = if i > 0 { vals[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < vals.len() { vals[i + 1] } else { f64::INFINITY };
        if !(v.is_finite() && v < left.min(f64::MAX) && v <= right.min(f64::MAX)) {
            continue;
        }
        let kappa0 = (i + 1) as f64 * step;
        let Some(z) = refine_zero(&f, kappa0) else { continue };
        let scale = [left, right].iter().filter(|x| x.is_finite()).fold(v, |a, &b| a.max(b));
        let ok = z.im.abs() < 1e-7
            && z.re > 0.0
            && z.re <= top
            && f(z).is_ok_and(|w| w.norm() < 1e-8 * scale.max(1e-300))
            && (z.re - kappa0).abs() < 2.0 * step;
        if ok && !found.iter().any(|&x| (x - z.re).abs() < 1e-9) {
            found.push(z.re);
        }
    }
    found.sort_by(f64::total_cmp);
    let expected: Vec<f64> = (0..=cp.nmax).map(|m| h - m as f64).filter(|&x| x > 0.0).rev().collect();
    let near = |x: f64, set: &[f64]| set.iter().any(|&y| (x - y).abs() < 1e-6);
    let spurious = found.iter().copied().filter(|&x| !near(x, &expected)).collect();
    let missing = expected.iter().copied().filter(|&x| !near(x, &found)).collect();
    let max_position_error = expected
        .iter()
        .filter_map(|&e| found.iter().map(|&x| (x - e).abs()).min_by(f64::total_cmp))
        .fold(0.0, f64::max);
    PoleCensus { expected, found, max_position_error, spurious, missing, skipped, scanned: n }
}

/// Smallest `|r(k)|` over `ks`; strictly positive when `r` has no real zeros.
pub fn r_zero_census(cp: &Coupling, ks: &[f64]) -> Result<f64> {
    ks.par_iter()
        .map(|&k| Ok(reflection(cp.gamma, cp.h, c(k, 0.0))?.norm()))
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))
}

/// Parameters `(λ, μ; ν)` of the ₂φ₁ inside `Ψ_k` and the argument exponent at `x`.
fn psi_params(cp: &Coupling, k: C, x: C) -> ([C; 3], C) {
    let g = cp.gamma;
    let h = cp.h;
    ([I * g * h - g * k, c(0.0, g * h), -I * g - g * k], -I * g * (1.0 + h) - 2.0 * x - I * PI)
}

/// `log` of `e^{ikx} e^{2hx} √(1+e^{2x}) (Φ_{γ/2}(2x+iγ(h+½))/Φ_{γ/2}(2x−iγ(h+½)))^{1/2}`.
fn psi_outer(cp: &Coupling, k: C, x: C) -> Result<C> {
    let p = QdilogParam::new(0.5 * cp.gamma)?;
    let a = I * cp.gamma * (cp.h + 0.5);
    let ratio = log_phi_strip(&p, 2.0 * x + a)? - log_phi_strip(&p, 2.0 * x - a)?;
    Ok(I * k * x + 2.0 * cp.h * x + 0.5 * log1p_exp(2.0 * x) + 0.5 * ratio)
}

/// `Ψ_k(x)` for complex `k` and `x` (`Re x > 0` keeps the series convergent).
pub fn wave_psi_complex(cp: &Coupling, k: C, x: C) -> Result<C> {
    let base = Base::unchecked(cp.gamma, 0.0);
    let ([a, b, cc], w) = psi_params(cp, k, x);
    let s = phi21_exp(&base, &Phi21Params::from_exponents(a, b, cc), w, SERIES_TOL)?;
    if !s.converged {
        return Err(Error::Divergence(format!("series for Psi_k unsettled at x={x}")));
    }
    Ok(psi_outer(cp, k, x)?.exp() * s.value)
}

/// Right-moving plane-wave solution `Ψ_k(x) → e^{ikx}` as `x → +∞`.
pub fn wave_psi(cp: &Coupling, k: f64, x: f64) -> Result<C> {
    wave_psi_complex(cp, c(k, 0.0), c(x, 0.0))
}

/// Coefficients `(A, B)` of `e^{ikx}` and `e^{−ikx}` in `Ψ_k` as `x → −∞`,
/// read off the two branches of the connection formula at `x0`.
pub fn connection_coefficients(cp: &Coupling, k: C, x0: f64) -> Result<(C, C)> {
    let p = QdilogParam::new(cp.gamma)?;
    let base = Base::unchecked(cp.gamma, 0.0);
    let x = c(x0, 0.0);
    let ([la, mu, nu], z) = psi_params(cp, k, x);
    let outer = psi_outer(cp, k, x)?;
    let ikx = I * k * x;
    let side = |a: C, b: C, sign: f64| -> Result<C> {
        let Some(lc) = branch_log_coefficient(&p, a, b, nu, z)? else {
            return Ok(C::new(0.0, 0.0));
        };
        let ([u, v, cc], w) = branch_params(cp.gamma, a, b, nu, z);
        let s = phi21_exp(&base, &Phi21Params::from_exponents(u, v, cc), w, SERIES_TOL)?;
        Ok((outer + lc + sign * ikx).exp() * s.value)
    };
    let big_a = side(mu, la, -1.0)?;
    let big_b = side(la, mu, 1.0)?;
    Ok((big_a, big_b))
}

/// `t = 1/A`, `r = B/A` from the connection pipeline.
pub fn amplitudes_from_connection(cp: &Coupling, k: f64) -> Result<AmplitudeResult> {
    let (a, b) = connection_coefficients(cp, c(k, 0.0), CONNECTION_X0)?;
    if a == C::new(0.0, 0.0) {
        return Err(Error::SingularPoint(format!("A(k) vanishes at k={k}")));
    }
    Ok(AmplitudeResult::new(k, 1.0 / a, b / a, pole_flags(cp)))
}

/// One step of the `γ → 0` study.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClassicalStep {
    pub gamma: f64,
    pub t: C,
    pub r: C,
    pub t_classical: C,
    pub r_classical: C,
    pub defect: f64,
}

/// Discrete amplitudes at fixed `(h, k)` along a `γ`-sequence, against the
/// Gamma-function values.
pub fn classical_limit(h: f64, k: f64, gammas: &[f64]) -> Result<Vec<ClassicalStep>> {
    let (tc, rc) = classical_amplitudes(&ClassicalOracle { h, k });
    gammas
        .iter()
        .map(|&g| {
            let cp = Coupling::new(g, h)?;
            let a = amplitudes(&cp, k)?;
            let defect = (a.t - tc).norm().max((a.r - rc).norm());
            Ok(ClassicalStep { gamma: g, t: a.t, r: a.r, t_classical: tc, r_classical: rc, defect })
        })
        .collect()
}
