//! General reflectionless potentials built from `N` exponential seeds
//! `ψ_j(x) = e^{k_j x} + c̃_j e^{−k_j x}` by repeated Darboux transformations.
//!
//! Everything is evaluated through the τ-function determinants `u_N`, `u_{N,j}`
//! in a rescaled form that stays finite for large `|x|`; the Casoratian
//! expressions are kept as an independent route for cross-checks.

use crate::amplitude::{e_tilde, AmplitudeResult, PoleDiagnostic};
use crate::error::{Error, Result};
use crate::numeric::{c, det, det_with_cond, sqrt_continued, C, I};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_MAX_SEEDS: usize = 12;
const SQRT_PATH_STEPS: usize = 24;

/// One record of a seeds file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub k: f64,
    pub c_tilde: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedSystem {
    pub gamma: f64,
    pub k: Vec<f64>,
    pub c_tilde: Vec<f64>,
    /// Determinant coefficients, all positive for admissible seeds.
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    /// Seed index, 1-based.
    pub j: usize,
    pub energy: f64,
    /// Level counted from the ground state, `n = N − j`.
    pub n: usize,
}

/// `c_j = c̃_j sin(γk_j) ∏_{i≠j} sin(γ(k_i+k_j)/2) / sin(γ(k_i−k_j)/2)`.
pub fn c_from_c_tilde(gamma: f64, k: &[f64], c_tilde: &[f64]) -> Vec<f64> {
    (0..k.len())
        .map(|j| {
            let mut v = c_tilde[j] * (gamma * k[j]).sin();
            for i in (0..k.len()).filter(|&i| i != j) {
                v *= (0.5 * gamma * (k[i] + k[j])).sin() / (0.5 * gamma * (k[i] - k[j])).sin();
            }
            v
        })
        .collect()
}

/// Inverse of [`c_from_c_tilde`].
pub fn c_tilde_from_c(gamma: f64, k: &[f64], cs: &[f64]) -> Vec<f64> {
    (0..k.len())
        .map(|j| {
            let mut v = cs[j] / (gamma * k[j]).sin();
            for i in (0..k.len()).filter(|&i| i != j) {
                v *= (0.5 * gamma * (k[i] - k[j])).sin() / (0.5 * gamma * (k[i] + k[j])).sin();
            }
            v
        })
        .collect()
}

pub fn seeds_build(gamma: f64, k: &[f64], c_tilde: &[f64]) -> Result<SeedSystem> {
    seeds_build_with_cap(gamma, k, c_tilde, DEFAULT_MAX_SEEDS)
}

pub fn seeds_build_with_cap(gamma: f64, k: &[f64], c_tilde: &[f64], max_n: usize) -> Result<SeedSystem> {
    let bad = |m: String| Err(Error::Validation(m));
    if !(gamma > 0.0 && gamma.is_finite()) {
        return bad(format!("gamma must be > 0, got {gamma}"));
    }
    if k.len() != c_tilde.len() {
        return bad(format!("{} wave numbers but {} coefficients", k.len(), c_tilde.len()));
    }
    if k.len() > max_n {
        return bad(format!("N = {} exceeds the cap {max_n}", k.len()));
    }
    for (j, (&kj, &cj)) in k.iter().zip(c_tilde).enumerate() {
        if !(kj.is_finite() && cj.is_finite()) {
            return bad(format!("seed {} is not finite", j + 1));
        }
        if j == 0 && kj <= 0.0 {
            return bad(format!("ordering: k_1 = {kj} must be > 0"));
        }
        if j > 0 && kj <= k[j - 1] {
            return bad(format!("ordering: k_{} = {kj} must exceed k_{} = {}", j + 1, j, k[j - 1]));
        }
        if kj >= PI / gamma {
            return bad(format!(
                "range: k_{} = {kj} must be strictly below pi/gamma = {}",
                j + 1,
                PI / gamma
            ));
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        if sign * cj <= 0.0 {
            return bad(format!("sign: (-1)^{} c_tilde_{} = {} must be > 0", j, j + 1, sign * cj));
        }
    }
    Ok(SeedSystem {
        gamma,
        k: k.to_vec(),
        c_tilde: c_tilde.to_vec(),
        c: c_from_c_tilde(gamma, k, c_tilde),
    })
}

impl SeedSystem {
    pub fn from_specs(gamma: f64, specs: &[SeedSpec]) -> Result<Self> {
        let k: Vec<f64> = specs.iter().map(|s| s.k).collect();
        let ct: Vec<f64> = specs.iter().map(|s| s.c_tilde).collect();
        seeds_build(gamma, &k, &ct)
    }

    /// `k_j = j`, `c̃_j = (−1)^{j−1}`.
    pub fn soliton(gamma: f64, n: usize) -> Result<Self> {
        let k: Vec<f64> = (1..=n).map(|j| j as f64).collect();
        let ct: Vec<f64> = (0..n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
        seeds_build(gamma, &k, &ct)
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    /// The first `m` seeds, with their own `c` recomputed from the same `c̃`.
    pub fn truncated(&self, m: usize) -> Self {
        let k = self.k[..m].to_vec();
        let ct = self.c_tilde[..m].to_vec();
        let cs = c_from_c_tilde(self.gamma, &k, &ct);
        Self { gamma: self.gamma, k, c_tilde: ct, c: cs }
    }

    /// Seed `ψ_j`, `j` 1-based.
    pub fn psi(&self, j: usize, x: C) -> C {
        let kj = self.k[j - 1];
        (kj * x).exp() + self.c_tilde[j - 1] * (-kj * x).exp()
    }

    pub fn bound_states(&self) -> Vec<BoundState> {
        let n = self.n();
        (1..=n)
            .rev()
            .map(|j| BoundState { j, energy: e_tilde(self.gamma, self.k[j - 1]), n: n - j })
            .collect()
    }
}

/// `i^{n(n−1)/2} det(f_k(x + i((n+1)/2 − j)γ))`.
pub fn casoratian(gamma: f64, fns: &[&dyn Fn(C) -> C], x: C) -> C {
    let n = fns.len();
    if n == 0 {
        return C::new(1.0, 0.0);
    }
    let m = DMatrix::from_fn(n, n, |j, k| {
        let xj = x + I * ((n as f64 + 1.0) * 0.5 - (j + 1) as f64) * gamma;
        fns[k](xj)
    });
    I.powu((n * (n - 1) / 2) as u32) * det(m)
}

/// `∏_{i<j} 2 sin(γ(k_j − k_i)/2)`.
pub fn exp_casoratian_prefactor(gamma: f64, ks: &[f64]) -> f64 {
    let mut p = 1.0;
    for j in 0..ks.len() {
        for i in 0..j {
            p *= 2.0 * (0.5 * gamma * (ks[j] - ks[i])).sin();
        }
    }
    p
}

/// τ-determinant for arbitrary `(k, c)` in split form `u = e^{scale} · mantissa`.
/// For `Re x < 0` the exponentials are pulled out of the matrix.
fn tau_split(gamma: f64, ks: &[f64], cs: &[f64], x: C) -> (C, C, f64) {
    let n = ks.len();
    if n == 0 {
        return (C::new(1.0, 0.0), C::new(0.0, 0.0), 1.0);
    }
    let s = |m: usize, l: usize| (0.5 * gamma * (ks[m] + ks[l])).sin();
    if x.re >= 0.0 {
        let a = DMatrix::from_fn(n, n, |m, l| {
            let d = if m == l { 1.0 } else { 0.0 };
            d + cs[m] * (-(ks[m] + ks[l]) * x).exp() / s(m, l)
        });
        let (d, cond) = det_with_cond(a);
        (d, C::new(0.0, 0.0), cond)
    } else {
        minor_sum(gamma, ks, cs, x)
    }
}

/// Principal-minor sum of the dressed matrix in log-sum-exp form. For
/// physical seeds every term is positive, so this is the well conditioned
/// route once `e^{-2kx}` dominates. The third field measures cancellation.
fn minor_sum(gamma: f64, ks: &[f64], cs: &[f64], x: C) -> (C, C, f64) {
    let n = ks.len();
    let eta: Vec<C> = (0..n)
        .map(|j| C::new(cs[j] / (gamma * ks[j]).sin(), 0.0).ln() - 2.0 * ks[j] * x)
        .collect();
    let logs: Vec<C> = (0u32..(1u32 << n))
        .map(|mask| {
            let mut e = C::new(0.0, 0.0);
            for j in (0..n).filter(|&j| mask >> j & 1 == 1) {
                e += eta[j];
                for i in (0..j).filter(|&i| mask >> i & 1 == 1) {
                    let r = (0.5 * gamma * (ks[i] - ks[j])).sin() / (0.5 * gamma * (ks[i] + ks[j])).sin();
                    e += (r * r).ln();
                }
            }
            e
        })
        .collect();
    let top = logs.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    let (mut sum, mut abs) = (C::new(0.0, 0.0), 0.0);
    for e in &logs {
        let t = (e - top).exp();
        sum += t;
        abs += t.norm();
    }
    (sum, C::new(top, 0.0), abs / sum.norm())
}

fn excl_params(seed: &SeedSystem, j: usize) -> (Vec<f64>, Vec<f64>) {
    let g = seed.gamma;
    let kj = seed.k[j - 1];
    let mut ks = Vec::with_capacity(seed.n() - 1);
    let mut cs = Vec::with_capacity(seed.n() - 1);
    for m in (0..seed.n()).filter(|&m| m != j - 1) {
        ks.push(seed.k[m]);
        cs.push((0.5 * g * (kj - seed.k[m])).sin() / (0.5 * g * (kj + seed.k[m])).sin() * seed.c[m]);
    }
    (ks, cs)
}

/// `u_N(x)` together with a condition estimate of the determinant.
pub fn tau_u_with_cond(seed: &SeedSystem, x: C) -> (C, f64) {
    let (m, s, cond) = tau_split(seed.gamma, &seed.k, &seed.c, x);
    (m * s.exp(), cond)
}

/// `u_N(x) = det(δ_{mn} + c_m e^{−(k_m+k_n)x} / sin(γ(k_m+k_n)/2))`.
pub fn tau_u(seed: &SeedSystem, x: C) -> Result<C> {
    let v = tau_u_with_cond(seed, x).0;
    if !v.is_finite() {
        return Err(Error::Overflow(format!("u_N overflows at x={x}")));
    }
    Ok(v)
}

/// `ln u_N(x)`, finite where `u_N` itself overflows. On the real line a
/// vanishing imaginary part certifies `u_N > 0`.
pub fn log_tau_u(seed: &SeedSystem, x: C) -> C {
    let (m, s, _) = tau_split(seed.gamma, &seed.k, &seed.c, x);
    m.ln() + s
}

/// `u_{N,j}(x)`, `j` 1-based. Row `j` of the dressed matrix is a unit row, so
/// the determinant reduces to the minor without seed `j`.
pub fn tau_u_excl(seed: &SeedSystem, j: usize, x: C) -> Result<C> {
    check_index(seed, j)?;
    let (ks, cs) = excl_params(seed, j);
    let (m, s, _) = tau_split(seed.gamma, &ks, &cs, x);
    let v = m * s.exp();
    if !v.is_finite() {
        return Err(Error::Overflow(format!("u_N,j overflows at x={x}")));
    }
    Ok(v)
}

fn check_index(seed: &SeedSystem, j: usize) -> Result<()> {
    if j == 0 || j > seed.n() {
        return Err(Error::Range(format!("seed index {j} outside 1..={}", seed.n())));
    }
    Ok(())
}

/// The `2^N`-term expansion of `u_N`.
pub fn tau_u_expansion(seed: &SeedSystem, x: C) -> C {
    let n = seed.n();
    let g = seed.gamma;
    let eta: Vec<C> = (0..n)
        .map(|j| (seed.c[j] / (g * seed.k[j]).sin()).ln() - 2.0 * seed.k[j] * x)
        .collect();
    let mut total = C::new(0.0, 0.0);
    for mask in 0u32..(1u32 << n) {
        let mut e = C::new(0.0, 0.0);
        for j in (0..n).filter(|&j| mask >> j & 1 == 1) {
            e += eta[j];
            for i in (0..j).filter(|&i| mask >> i & 1 == 1) {
                let r = (0.5 * g * (seed.k[i] - seed.k[j])).sin() / (0.5 * g * (seed.k[i] + seed.k[j])).sin();
                e += (r * r).ln();
            }
        }
        total += e.exp();
    }
    total
}

/// Seeds rescaled by `e^{−k_j |Re x|}` (a constant along vertical shifts),
/// which leaves Casoratian ratios unchanged and avoids overflow.
fn scaled_seed(seed: &SeedSystem, j: usize, x0: f64) -> impl Fn(C) -> C + '_ {
    let kj = seed.k[j - 1];
    let ct = seed.c_tilde[j - 1];
    let a = x0.abs();
    move |x: C| (kj * (x - a)).exp() + ct * (-kj * (x + a)).exp()
}

fn seed_casoratian_scaled(
    seed: &SeedSystem,
    upto: usize,
    skip: Option<usize>,
    extra: Option<&dyn Fn(C) -> C>,
    x: C,
    x0: f64,
) -> C {
    let fs: Vec<Box<dyn Fn(C) -> C + '_>> = (1..=upto)
        .filter(|&j| Some(j) != skip)
        .map(|j| Box::new(scaled_seed(seed, j, x0)) as Box<dyn Fn(C) -> C>)
        .collect();
    let mut refs: Vec<&dyn Fn(C) -> C> = fs.iter().map(|b| b.as_ref()).collect();
    if let Some(e) = extra {
        refs.push(e);
    }
    casoratian(seed.gamma, &refs, x)
}

/// `W_γ[ψ_1,…,ψ_N](x)` directly from the seeds.
pub fn seed_casoratian(seed: &SeedSystem, x: C) -> C {
    let s: f64 = seed.k.iter().sum();
    seed_casoratian_scaled(seed, seed.n(), None, None, x, x.re) * (s * x.re.abs()).exp()
}

/// `W_γ[ψ_1,…,ψ̆_j,…,ψ_N](x)`, seed `j` (1-based) left out.
pub fn seed_casoratian_excl(seed: &SeedSystem, j: usize, x: C) -> Result<C> {
    check_index(seed, j)?;
    let s: f64 = seed.k.iter().sum::<f64>() - seed.k[j - 1];
    Ok(seed_casoratian_scaled(seed, seed.n(), Some(j), None, x, x.re) * (s * x.re.abs()).exp())
}

/// `u_N` from the Casoratian normalization, an independent route to [`tau_u`].
pub fn tau_u_from_casoratian(seed: &SeedSystem, x: C) -> C {
    let s: f64 = seed.k.iter().sum();
    let w = seed_casoratian_scaled(seed, seed.n(), None, None, x, x.re);
    w * (s * x.re.abs() - s * x).exp() / exp_casoratian_prefactor(seed.gamma, &seed.k)
}

/// `u_{N,j}` from the excluded-seed Casoratian.
pub fn tau_u_excl_from_casoratian(seed: &SeedSystem, j: usize, x: C) -> Result<C> {
    check_index(seed, j)?;
    let ks: Vec<f64> = (0..seed.n()).filter(|&m| m != j - 1).map(|m| seed.k[m]).collect();
    let s: f64 = ks.iter().sum();
    let w = seed_casoratian_scaled(seed, seed.n(), Some(j), None, x, x.re);
    Ok(w * (s * x.re.abs() - s * x).exp() / exp_casoratian_prefactor(seed.gamma, &ks))
}

fn nonsingular(v: C, what: &str, x: C) -> Result<C> {
    if v == C::new(0.0, 0.0) || !v.is_finite() {
        return Err(Error::SingularPoint(format!("{what} vanishes or is not finite at x={x}")));
    }
    Ok(v)
}

/// `V^{[N]}(x)` from the Casoratians of the seeds.
pub fn potential_v(seed: &SeedSystem, x: C) -> Result<C> {
    let n = seed.n();
    if n == 0 {
        return Ok(C::new(1.0, 0.0));
    }
    let g = seed.gamma;
    let wa = |y: C| seed_casoratian_scaled(seed, n - 1, None, None, y, x.re);
    let wb = |y: C| seed_casoratian_scaled(seed, n, None, None, y, x.re);
    let d1 = nonsingular(wa(x), "W[psi_1..psi_N-1]", x)?;
    let d2 = nonsingular(wb(x - 0.5 * I * g), "W[psi_1..psi_N]", x)?;
    Ok(wa(x - I * g) / d1 * wb(x + 0.5 * I * g) / d2)
}

/// `V^{[N]}(x) = e^{iγk_N} u_{N−1}(x−iγ)/u_{N−1}(x) · u_N(x+iγ/2)/u_N(x−iγ/2)`.
pub fn potential_v_tau(seed: &SeedSystem, x: C) -> Result<C> {
    let n = seed.n();
    if n == 0 {
        return Ok(C::new(1.0, 0.0));
    }
    let g = seed.gamma;
    let prev = seed.truncated(n - 1);
    // ratios of split forms share the branch of the representation when Re x is common
    let r = |s: &SeedSystem, a: C, b: C| -> Result<C> {
        let (ma, sa, _) = tau_split(g, &s.k, &s.c, a);
        let (mb, sb, _) = tau_split(g, &s.k, &s.c, b);
        Ok(ma / nonsingular(mb, "u", b)? * (sa - sb).exp())
    };
    Ok((I * g * seed.k[n - 1]).exp() * r(&prev, x - I * g, x)? * r(seed, x + 0.5 * I * g, x - 0.5 * I * g)?)
}

/// `√(u_N(x+a)u_N(x−a))` continued from the real axis, in split form
/// `(e^{scale}, root of mantissa product)`.
fn sqrt_tau_pair(gamma: f64, ks: &[f64], cs: &[f64], x: C, a: f64) -> (C, C) {
    let (_, sp, _) = tau_split(gamma, ks, cs, x + I * a);
    let (_, sm, _) = tau_split(gamma, ks, cs, x - I * a);
    let f = |y: C| {
        let (mp, _, _) = tau_split(gamma, ks, cs, y + I * a);
        let (mm, _, _) = tau_split(gamma, ks, cs, y - I * a);
        mp * mm
    };
    let root = sqrt_continued(f, x, if x.im == 0.0 { 0 } else { SQRT_PATH_STEPS });
    (0.5 * (sp + sm), root)
}

/// `𝒰_N(x) = √(u_N(x+iγ)u_N(x−iγ)) / u_N(x)`.
pub fn potential_cal_u(seed: &SeedSystem, x: C) -> Result<C> {
    let g = seed.gamma;
    let (s2, root) = sqrt_tau_pair(g, &seed.k, &seed.c, x, g);
    let (m, s, _) = tau_split(g, &seed.k, &seed.c, x);
    Ok(root / nonsingular(m, "u_N", x)? * (s2 - s).exp())
}

/// Eigenstate `Φ^{[N]}_j(x)` with eigenvalue `Ẽ_{k_j}`, `j` 1-based.
pub fn bound_state(seed: &SeedSystem, j: usize, x: C) -> Result<C> {
    check_index(seed, j)?;
    let g = seed.gamma;
    let kj = seed.k[j - 1];
    let mut pref = if (j - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    for i in (0..seed.n()).filter(|&i| i != j - 1) {
        pref /= 2.0 * (0.5 * g * (seed.k[i] - kj)).sin();
    }
    let (ks, cs) = excl_params(seed, j);
    let (mj, sj, _) = tau_split(g, &ks, &cs, x);
    let (s2, root) = sqrt_tau_pair(g, &seed.k, &seed.c, x, 0.5 * g);
    let v = pref * mj / nonsingular(root, "u_N(x-ig/2)u_N(x+ig/2)", x)? * (sj - s2 - kj * x).exp();
    Ok(v)
}

/// `Φ^{[N]}_j` straight from its Casoratian definition (real `x` only).
pub fn bound_state_casoratian(seed: &SeedSystem, j: usize, x: f64) -> Result<C> {
    check_index(seed, j)?;
    let g = seed.gamma;
    let n = seed.n();
    let xc = c(x, 0.0);
    let num = seed_casoratian_scaled(seed, n, Some(j), None, xc, x);
    let wp = seed_casoratian_scaled(seed, n, None, None, xc + 0.5 * I * g, x);
    let wm = seed_casoratian_scaled(seed, n, None, None, xc - 0.5 * I * g, x);
    // scaling: numerator carries e^{(Σk − k_j)|x|}, the root e^{Σk|x|}
    let scale = (-seed.k[j - 1] * x.abs()).exp();
    Ok(num / nonsingular((wp * wm).sqrt(), "Casoratian product", xc)? * scale)
}

/// Level `n` eigenfunction `φ^{[N]}_n ∝ Φ^{[N]}_{N−n}` with the normalization
/// used for the `k_j = j` seeds.
pub fn level_state(seed: &SeedSystem, n: usize, x: C) -> Result<C> {
    let big_n = seed.n();
    if n >= big_n {
        return Err(Error::Range(format!("level {n} outside 0..{big_n}")));
    }
    let g = seed.gamma;
    let s = |l: f64| (0.5 * g * l).sin();
    let mut norm: f64 = (1..big_n).map(|l| 2.0 * s(l as f64)).product();
    for l in 1..=n {
        let l = l as f64;
        norm *= 2.0 * s(l) * s(2.0 * big_n as f64 - 2.0 * n as f64 + l) / s(big_n as f64 - l);
    }
    Ok(norm * bound_state(seed, big_n - n, x)?)
}

/// Right-moving scattering wave `Ψ^{[N]}_k(x)` with eigenvalue `E^s_k`.
pub fn wave_solution(seed: &SeedSystem, kk: f64, x: C) -> Result<C> {
    if !(kk > 0.0) {
        return Err(Error::Domain(format!("wave number must be > 0, got {kk}")));
    }
    let g = seed.gamma;
    let n = seed.n();
    let x0 = x.re;
    let plane = |y: C| (I * kk * y).exp();
    let num = seed_casoratian_scaled(seed, n, None, Some(&plane), x, x0);
    let f = |y: C| {
        seed_casoratian_scaled(seed, n, None, None, y + 0.5 * I * g, x0)
            * seed_casoratian_scaled(seed, n, None, None, y - 0.5 * I * g, x0)
    };
    let root = sqrt_continued(f, x, if x.im == 0.0 { 0 } else { SQRT_PATH_STEPS });
    Ok(num / nonsingular(root, "Casoratian product", x)?)
}

/// `t^{[N]}(k) = ∏ sinh(γ(k+ik_j)/2) / sinh(γ(k−ik_j)/2)`, `r = 0`.
pub fn amplitude_product(seed: &SeedSystem, kk: f64) -> AmplitudeResult {
    let g = seed.gamma;
    let t = seed.k.iter().fold(C::new(1.0, 0.0), |acc, &kj| {
        acc * (0.5 * g * c(kk, kj)).sinh() / (0.5 * g * c(kk, -kj)).sinh()
    });
    let poles = seed
        .bound_states()
        .into_iter()
        .map(|b| PoleDiagnostic { kappa: seed.k[b.j - 1], level: b.n, energy: b.energy })
        .collect();
    AmplitudeResult::new(kk, t, C::new(0.0, 0.0), poles)
}

/// Number of zeros of `u_N` inside `|Re x| < half_len`, `|Im x| < γ/2`, by the
/// argument principle on the rectangle boundary.
pub fn strip_zero_count(seed: &SeedSystem, half_len: f64, samples_per_side: usize) -> i64 {
    let g = seed.gamma;
    let h = 0.5 * g * (1.0 - 1e-9);
    let corners = [c(-half_len, -h), c(half_len, -h), c(half_len, h), c(-half_len, h)];
    let log_u = |x: C| {
        let (m, s, _) = tau_split(g, &seed.k, &seed.c, x);
        (m, s)
    };
    let mut total = 0.0;
    for side in 0..4 {
        let (a, b) = (corners[side], corners[(side + 1) % 4]);
        let mut prev = log_u(a);
        for i in 1..=samples_per_side {
            let x = a + (b - a) * (i as f64 / samples_per_side as f64);
            let cur = log_u(x);
            let mut d = (cur.1 - prev.1).im + (cur.0 / prev.0).arg();
            d -= 2.0 * PI * (d / (2.0 * PI)).round();
            total += d;
            prev = cur;
        }
    }
    (total / (2.0 * PI)).round() as i64
}

/// `𝔠_j = c̃_j 2k_j ∏_{i≠j} (k_i+k_j)/(k_i−k_j)`, the coefficients that survive
/// the `γ → 0` limit (`c_j ≈ (γ/2) 𝔠_j`).
pub fn classical_c(k: &[f64], c_tilde: &[f64]) -> Vec<f64> {
    (0..k.len())
        .map(|j| {
            let mut v = c_tilde[j] * 2.0 * k[j];
            for i in (0..k.len()).filter(|&i| i != j) {
                v *= (k[i] + k[j]) / (k[i] - k[j]);
            }
            v
        })
        .collect()
}

/// `𝔲_N(x) = det(δ_{mn} + 𝔠_m e^{−(k_m+k_n)x}/(k_m+k_n))`.
pub fn classical_tau(k: &[f64], frak_c: &[f64], x: f64) -> f64 {
    let n = k.len();
    let a = DMatrix::from_fn(n, n, |m, l| {
        let d = if m == l { 1.0 } else { 0.0 };
        c(d + frak_c[m] * (-(k[m] + k[l]) * x).exp() / (k[m] + k[l]), 0.0)
    });
    det(a).re
}

/// `U^{[N]}(x) = −2 ∂²_x log 𝔲_N(x)` by a five-point difference.
pub fn classical_potential(k: &[f64], c_tilde: &[f64], x: f64) -> f64 {
    let fc = classical_c(k, c_tilde);
    let h = 1e-2;
    let l = |y: f64| classical_tau(k, &fc, y).ln();
    let d2 = (-l(x + 2.0 * h) + 16.0 * l(x + h) - 30.0 * l(x) + 16.0 * l(x - h) - l(x - 2.0 * h))
        / (12.0 * h * h);
    -2.0 * d2
}
