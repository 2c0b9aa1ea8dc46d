//! q-shifted factorials, the basic hypergeometric series ₂φ₁ at `|q| ≤ 1`,
//! the ₂φ₁ q-difference operator and the Askey–Wilson / continuous
//! q-ultraspherical polynomials.
//!
//! Parameters are carried in exponent form (`a = e^λ`) wherever exact
//! termination has to be detected: `1 − e^{λ + n log q}` is evaluated with
//! the imaginary part reduced mod 2π so that `a = q^{−m}` gives an exact zero.

use crate::error::{Error, Result};
use crate::numeric::{c, one_minus_exp, KahanSum, C, I};
use serde::Serialize;
use std::f64::consts::PI;

/// Factors smaller than this count as exact zeros of `1 − a q^n`.
const ZERO_FACTOR: f64 = 1e-13;
const MAX_TERMS: usize = 200_000;
const FALLBACK_MAX_TERMS: usize = 2_000_000;
const WINDOW: usize = 32;
const FALLBACK_EPS: [f64; 3] = [1e-5, 1e-6, 1e-7];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Base {
    pub gamma: f64,
    pub epsilon: f64,
    pub q: C,
    pub log_q: C,
}

impl Base {
    /// `q = e^{−i(γ − iε)}`. With `ε = 0`, rejects `γ/π` within 1e-9 of a
    /// rational with denominator ≤ 64.
    pub fn new(gamma: f64, epsilon: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!("gamma must be > 0, got {gamma}")));
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::Domain(format!("epsilon must be >= 0, got {epsilon}")));
        }
        if epsilon == 0.0 {
            if let Some((p, n)) = near_rational(gamma / PI, 64, 1e-9) {
                return Err(Error::Domain(format!(
                    "q is (nearly) a root of unity: gamma/pi ≈ {p}/{n}"
                )));
            }
        }
        Ok(Self::unchecked(gamma, epsilon))
    }

    /// No root-of-unity guard; fine for terminating sums.
    pub fn unchecked(gamma: f64, epsilon: f64) -> Self {
        let log_q = c(-epsilon, -gamma);
        Self { gamma, epsilon, q: log_q.exp(), log_q }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self::unchecked(self.gamma, epsilon)
    }

    /// `q^s = e^{s log q}`.
    pub fn pow(&self, s: f64) -> C {
        (self.log_q * s).exp()
    }
}

fn near_rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    (1..=max_den).find_map(|n| {
        let p = (x * n as f64).round();
        ((x - p / n as f64).abs() < tol).then_some((p as i64, n))
    })
}

/// Upper/lower ₂φ₁ parameters; the exponents are authoritative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Phi21Params {
    pub a: C,
    pub b: C,
    pub c: C,
    pub log_a: C,
    pub log_b: C,
    pub log_c: C,
}

impl Phi21Params {
    pub fn from_exponents(lambda: C, mu: C, nu: C) -> Self {
        Self {
            a: lambda.exp(),
            b: mu.exp(),
            c: nu.exp(),
            log_a: lambda,
            log_b: mu,
            log_c: nu,
        }
    }

    /// From values, using principal logarithms. Zero parameters are not
    /// representable in exponent form.
    pub fn from_values(a: C, b: C, c: C) -> Result<Self> {
        if a == C::new(0.0, 0.0) || b == C::new(0.0, 0.0) || c == C::new(0.0, 0.0) {
            return Err(Error::Param("zero parameter has no exponent form".into()));
        }
        Ok(Self { a, b, c, log_a: a.ln(), log_b: b.ln(), log_c: c.ln() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: C,
    pub terms_used: usize,
    pub converged: bool,
    pub tail_bound: f64,
    /// Regularization actually used (0 for a direct `|q| = 1` sum).
    pub epsilon: f64,
    /// True when the value comes from ε-extrapolation.
    pub extrapolated: bool,
}

/// `(a; q)_n = ∏_{j<n} (1 − a q^j)`.
pub fn qpochhammer_finite(base: &Base, a: C, n: usize) -> C {
    (0..n).fold(C::new(1.0, 0.0), |acc, j| acc * (1.0 - a * base.pow(j as f64)))
}

/// `(e^λ; q)_n` with exact zeros at `e^λ = q^{−m}`, `m < n`.
pub fn qpochhammer_exp(base: &Base, log_a: C, n: usize) -> C {
    (0..n).fold(C::new(1.0, 0.0), |acc, j| {
        acc * one_minus_exp(log_a + base.log_q * j as f64)
    })
}

#[inline]
fn factor(log_x: C, k: usize, lq: C) -> C {
    let f = one_minus_exp(log_x + lq * k as f64);
    if f.norm() < ZERO_FACTOR {
        C::new(0.0, 0.0)
    } else {
        f
    }
}

/// Direct summation of ₂φ₁ with a window-based convergence monitor.
fn sum_direct(lq: C, p: &Phi21Params, z: C, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    let eps = -lq.re;
    let mut acc = KahanSum::new();
    acc.add(C::new(1.0, 0.0));
    let mut term = C::new(1.0, 0.0);
    let mut win_max = 0.0f64;
    let mut prev_win_max = f64::NAN;
    let mut good_windows = 0;
    let mut growing = 0usize;
    let mut growing_windows = 0usize;
    let mut last_tail = f64::INFINITY;
    for n in 0..max_terms {
        let num = factor(p.log_a, n, lq) * factor(p.log_b, n, lq);
        if num == C::new(0.0, 0.0) {
            return Ok(SeriesResult {
                value: acc.value(),
                terms_used: n + 1,
                converged: true,
                tail_bound: 0.0,
                epsilon: eps,
                extrapolated: false,
            });
        }
        let den = factor(p.log_c, n, lq) * factor(C::new(0.0, 0.0), n + 1, lq);
        if den == C::new(0.0, 0.0) {
            return Err(Error::Param(format!(
                "denominator (c;q)_n or (q;q)_n vanishes at n={n}"
            )));
        }
        let next = term * num / den * z;
        if next.norm() > term.norm() {
            growing += 1;
        } else {
            growing = 0;
        }
        term = next;
        if !term.is_finite() || term.norm() > 1e280 || growing >= 50 {
            return Err(Error::Divergence(format!(
                "terms grow without bound (n={n}, |term|={:.3e})",
                term.norm()
            )));
        }
        if term == C::new(0.0, 0.0) {
            // underflow: every further term is smaller still
            return Ok(SeriesResult {
                value: acc.value(),
                terms_used: n + 1,
                converged: true,
                tail_bound: 0.0,
                epsilon: eps,
                extrapolated: false,
            });
        }
        acc.add(term);
        win_max = win_max.max(term.norm());
        if (n + 1) % WINDOW == 0 {
            let s = acc.value().norm().max(1e-300);
            if prev_win_max.is_finite() {
                let rho = win_max / prev_win_max;
                if rho < 0.9 {
                    // geometric decay per window: remaining windows sum to ≤ W·M·ρ/(1−ρ)
                    last_tail = WINDOW as f64 * win_max * rho / (1.0 - rho);
                    if last_tail <= tol * s {
                        good_windows += 1;
                    } else {
                        good_windows = 0;
                    }
                    growing_windows = 0;
                } else {
                    last_tail = f64::INFINITY;
                    good_windows = 0;
                    if rho > 1.0 {
                        growing_windows += 1;
                    } else {
                        growing_windows = 0;
                    }
                }
                if good_windows >= 3 {
                    return Ok(SeriesResult {
                        value: acc.value(),
                        terms_used: n + 1,
                        converged: true,
                        tail_bound: last_tail,
                        epsilon: eps,
                        extrapolated: false,
                    });
                }
                if growing_windows >= 16 {
                    return Err(Error::Divergence(format!(
                        "term envelope grows over {growing_windows} windows (n={n})"
                    )));
                }
            }
            prev_win_max = win_max;
            win_max = 0.0;
        }
    }
    Ok(SeriesResult {
        value: acc.value(),
        terms_used: max_terms,
        converged: false,
        tail_bound: last_tail,
        epsilon: eps,
        extrapolated: false,
    })
}

/// ₂φ₁(a, b; c | q; z) with the `|q| ↗ 1` fallback: when the direct sum at
/// `ε = 0` does not converge, the series is summed at ε ∈ {1e-5, 1e-6, 1e-7}
/// and extrapolated quadratically to ε = 0.
pub fn phi21(base: &Base, p: &Phi21Params, z: C, tol: f64) -> Result<SeriesResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be > 0, got {tol}")));
    }
    if z == C::new(0.0, 0.0) {
        return Ok(SeriesResult {
            value: C::new(1.0, 0.0),
            terms_used: 1,
            converged: true,
            tail_bound: 0.0,
            epsilon: base.epsilon,
            extrapolated: false,
        });
    }
    let direct = sum_direct(base.log_q, p, z, tol, MAX_TERMS);
    match direct {
        Ok(r) if r.converged || base.epsilon > 0.0 => Ok(r),
        Err(e @ Error::Divergence(_)) if base.epsilon > 0.0 => Err(e),
        Err(e @ Error::Param(_)) => Err(e),
        other => {
            let fb = epsilon_extrapolate(base, p, z, tol);
            match (other, fb) {
                (_, Ok(r)) if r.converged => Ok(r),
                (Ok(r), Ok(f)) => Ok(if f.tail_bound < r.tail_bound { f } else { r }),
                (Ok(r), Err(_)) => Ok(r),
                (Err(_), Ok(f)) => Ok(f),
                (Err(e), Err(_)) => Err(e),
            }
        }
    }
}

/// ₂φ₁ at `z = e^w`.
pub fn phi21_exp(base: &Base, p: &Phi21Params, w: C, tol: f64) -> Result<SeriesResult> {
    phi21(base, p, w.exp(), tol)
}

fn epsilon_extrapolate(base: &Base, p: &Phi21Params, z: C, tol: f64) -> Result<SeriesResult> {
    let mut vals = [C::new(0.0, 0.0); 3];
    let mut tails = 0.0f64;
    let mut terms = 0;
    let mut all_conv = true;
    for (i, &e) in FALLBACK_EPS.iter().enumerate() {
        let r = sum_direct(base.with_epsilon(e).log_q, p, z, 0.1 * tol, FALLBACK_MAX_TERMS)?;
        vals[i] = r.value;
        tails = tails.max(r.tail_bound);
        terms += r.terms_used;
        all_conv &= r.converged;
    }
    let [e1, e2, e3] = FALLBACK_EPS;
    // Lagrange interpolation evaluated at ε = 0
    let w1 = e2 * e3 / ((e1 - e2) * (e1 - e3));
    let w2 = e1 * e3 / ((e2 - e1) * (e2 - e3));
    let w3 = e1 * e2 / ((e3 - e1) * (e3 - e2));
    let quad = vals[0] * w1 + vals[1] * w2 + vals[2] * w3;
    let lin = (vals[2] * e2 - vals[1] * e3) / (e2 - e3);
    let tail_bound = tails + (quad - lin).norm();
    Ok(SeriesResult {
        value: quad,
        terms_used: terms,
        converged: all_conv && tail_bound <= tol * quad.norm().max(1e-300),
        tail_bound,
        epsilon: 0.0,
        extrapolated: true,
    })
}

/// `(c − abz) f(qz) + ((a+b)z − c − q) f(z) + (q − z) f(z/q)`.
pub fn q_difference_residual<F>(base: &Base, p: &Phi21Params, f: F, z: C) -> Result<C>
where
    F: Fn(C) -> Result<C>,
{
    let q = base.q;
    let (a, b, cc) = (p.a, p.b, p.c);
    Ok((cc - a * b * z) * f(q * z)? + ((a + b) * z - cc - q) * f(z)? + (q - z) * f(z / q)?)
}

/// As [`q_difference_residual`] for a function of the exponent `w`
/// (`z = e^w`), so that `qz` and `z/q` are `w ± log q` without branch choices.
pub fn q_difference_residual_exp<F>(base: &Base, p: &Phi21Params, f: F, w: C) -> Result<C>
where
    F: Fn(C) -> Result<C>,
{
    let q = base.q;
    let z = w.exp();
    let (a, b, cc) = (p.a, p.b, p.c);
    let lq = base.log_q;
    Ok((cc - a * b * z) * f(w + lq)? + ((a + b) * z - cc - q) * f(w)? + (q - z) * f(w - lq)?)
}

/// Terminating basic hypergeometric sum `Σ_{k≤n}` with parameters in exponent
/// form; `None` in `lower` stands for a zero parameter.
fn finite_sum(lq: C, upper: &[C], lower: &[Option<C>], z: C, n: usize) -> Result<C> {
    let mut acc = KahanSum::new();
    let mut term = C::new(1.0, 0.0);
    acc.add(term);
    for k in 0..n {
        let mut num = z;
        for &u in upper {
            num *= factor(u, k, lq);
        }
        if num == C::new(0.0, 0.0) {
            break;
        }
        let mut den = factor(C::new(0.0, 0.0), k + 1, lq);
        for l in lower.iter().flatten() {
            den *= factor(*l, k, lq);
        }
        if den == C::new(0.0, 0.0) {
            return Err(Error::Param(format!("lower parameter factor vanishes at k={k}")));
        }
        term *= num / den;
        acc.add(term);
    }
    Ok(acc.value())
}

/// `Σ_{k≤n}` of ₂φ₁ with parameters and argument in exponent form.
pub fn finite_phi21_exp(base: &Base, upper: [C; 2], lower: C, w: C, n: usize) -> Result<C> {
    finite_sum(base.log_q, &upper, &[Some(lower)], w.exp(), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    /// `η = cos x`
    CosX,
    /// `η = i sinh x`, realised by `x → π/2 − ix`.
    ISinhX,
}

fn angle(x: C, coord: Coordinate) -> C {
    match coord {
        Coordinate::CosX => x,
        Coordinate::ISinhX => c(0.5 * PI, 0.0) - I * x,
    }
}

#[inline]
fn poch_val(x: C, lq: C, k: usize) -> C {
    (0..k).fold(C::new(1.0, 0.0), |acc, j| acc * (1.0 - x * (lq * j as f64).exp()))
}

/// Askey–Wilson polynomial `p_n(cos θ; a₁,a₂,a₃,a₄ | q)`.
///
/// Summed with the lower Pochhammers multiplied through,
/// `(a₁a₂;q)_n/(a₁a₂;q)_k = (a₁a₂q^k;q)_{n−k}`, so that vanishing lower
/// parameters cause no division by zero.
pub fn askey_wilson(base: &Base, n: usize, a: [C; 4], x: C, coord: Coordinate) -> Result<C> {
    let th = angle(x, coord);
    let lq = base.log_q;
    let b4 = a[0] * a[1] * a[2] * a[3];
    let upper = [
        (-lq * n as f64).exp(),
        b4 * (lq * (n as f64 - 1.0)).exp(),
        a[0] * (I * th).exp(),
        a[0] * (-I * th).exp(),
    ];
    let lower = [a[0] * a[1], a[0] * a[2], a[0] * a[3]];
    let mut acc = KahanSum::new();
    let mut qq = C::new(1.0, 0.0);
    for k in 0..=n {
        let qk = (lq * k as f64).exp();
        let mut t = upper.iter().fold(C::new(1.0, 0.0), |s, &u| s * poch_val(u, lq, k));
        t *= qq / poch_val(C::new(1.0, 0.0) * base.q, lq, k);
        for &l in &lower {
            t *= poch_val(l * qk, lq, n - k);
        }
        acc.add(t);
        qq *= base.q;
    }
    if !acc.value().is_finite() {
        return Err(Error::Param("non-finite Askey-Wilson sum".into()));
    }
    Ok(acc.value() * a[0].powi(-(n as i32)))
}

/// The four equivalent representations of `C_n(cos x; β | q)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct UltrasphericalForms {
    pub askey_wilson: C,
    pub phi43: C,
    pub phi32: C,
    pub phi21: C,
}

impl UltrasphericalForms {
    pub fn max_rel_spread(&self) -> f64 {
        let v = [self.askey_wilson, self.phi43, self.phi32];
        let s = self.phi21.norm().max(1e-300);
        v.iter().map(|x| (x - self.phi21).norm() / s).fold(0.0, f64::max)
    }
}

/// `C_n(cos x; β | q)` from the terminating ₂φ₁ representation;
/// `log_beta` is the exponent of β.
pub fn q_ultraspherical(base: &Base, n: usize, log_beta: C, x: C) -> Result<C> {
    let lq = base.log_q;
    let lb = log_beta;
    let nf = n as f64;
    let pref = qpochhammer_exp(base, lb, n) / qpochhammer_exp(base, C::new(0.0, 0.0) + lq, n)
        * (I * nf * x).exp();
    // ₂φ₁(q^{−n}, β; β^{−1}q^{1−n} | q; β^{−1} q e^{−2ix})
    let s = finite_sum(
        lq,
        &[-lq * nf, lb],
        &[Some(-lb + lq * (1.0 - nf))],
        (-lb + lq - 2.0 * I * x).exp(),
        n,
    )?;
    Ok(pref * s)
}

/// `C_n` through all four representations; `x` is the angle variable of
/// `cos x`.
pub fn q_ultraspherical_forms(base: &Base, n: usize, log_beta: C, x: C) -> Result<UltrasphericalForms> {
    let lq = base.log_q;
    let lb = log_beta;
    let nf = n as f64;
    let hb = 0.5 * lb;
    let hq = 0.5 * lq;
    let qq = |k: usize| qpochhammer_exp(base, lq, k);
    let b2n = qpochhammer_exp(base, 2.0 * lb, n);

    // Askey–Wilson line
    let a = [hb.exp(), (hb + hq).exp(), -(hb.exp()), -((hb + hq).exp())];
    let pn = askey_wilson(base, n, a, x, Coordinate::CosX)?;
    let den = qpochhammer_exp(base, lb + hq, n)
        * qpochhammer_exp(base, lb + I * PI, n)
        * qpochhammer_exp(base, lb + hq + I * PI, n)
        * qq(n);
    let aw = b2n / den * pn;

    // ₄φ₃ line
    let s43 = finite_sum(
        lq,
        &[-lq * nf, 2.0 * lb + lq * nf, hb + I * x, hb - I * x],
        &[Some(lb + hq), Some(lb + I * PI), Some(lb + hq + I * PI)],
        base.q,
        n,
    )?;
    let phi43 = b2n / qq(n) * (-0.5 * nf * lb).exp() * s43;

    // ₃φ₂ line, with (β²;q)_n/(β²;q)_k multiplied out
    let mut acc = KahanSum::new();
    let mut t = C::new(1.0, 0.0);
    for k in 0..=n {
        let tail = qpochhammer_exp(base, 2.0 * lb + lq * k as f64, n - k);
        acc.add(t * tail);
        if k < n {
            t *= factor(-lq * nf, k, lq) * factor(lb, k, lq) * factor(lb + 2.0 * I * x, k, lq)
                / factor(C::new(0.0, 0.0), k + 1, lq)
                * base.q;
        }
    }
    let phi32 = acc.value() / qq(n) * (-nf * lb - I * nf * x).exp();

    let phi21 = q_ultraspherical(base, n, lb, x)?;
    Ok(UltrasphericalForms { askey_wilson: aw, phi43, phi32, phi21 })
}

/// Empirical disc of convergence of ₂φ₁ at `|q| = 1`:
/// `|z| < max(1,|c|) / (max(1,|a|) max(1,|b|))`.
pub fn empirical_radius(p: &Phi21Params) -> f64 {
    p.c.norm().max(1.0) / (p.a.norm().max(1.0) * p.b.norm().max(1.0))
}
