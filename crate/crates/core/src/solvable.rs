//! The exactly solvable discrete analogue of the `1/cosh²x` potential with
//! generic coupling `h`, and its reduction to the reflectionless family at
//! integer `h`.

use crate::amplitude::e_tilde;
use crate::error::{Error, Result};
use crate::numeric::{c, log1p_exp, C, I};
use crate::qdilog::{log_phi_strip, QdilogParam};
use crate::qseries::{askey_wilson, Base, Coordinate};
use crate::reflectionless::{potential_v, seed_casoratian_excl, SeedSystem};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

/// Radicands closer than this (relative) to the negative real axis are
/// reported instead of rooted.
const BRANCH_GUARD: f64 = 1e-12;

/// Coupling of the generic Hamiltonian `𝓗 = 𝓗′ + Ẽ_h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling {
    pub gamma: f64,
    pub h: f64,
    pub a1: C,
    pub a2: C,
    pub alpha1: f64,
    pub alpha2: f64,
    /// Highest bound level, the greatest integer strictly below `h`.
    pub nmax: usize,
}

/// `[h]′`: greatest integer strictly below `h`.
pub fn nmax_of(h: f64) -> usize {
    if h <= 0.0 {
        return 0;
    }
    let f = h.floor();
    if f == h {
        (f as usize).saturating_sub(1)
    } else {
        f as usize
    }
}

impl Coupling {
    pub fn new(gamma: f64, h: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Validation(format!("gamma must be > 0, got {gamma}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Validation(format!("h must be > 0, got {h}")));
        }
        if h + 2.0 >= PI / gamma {
            return Err(Error::Validation(format!(
                "h + 2 = {} must be below pi/gamma = {}",
                h + 2.0,
                PI / gamma
            )));
        }
        let cp = Self::raw(gamma, h);
        let (ga1, ga2) = (gamma * cp.alpha1, gamma * cp.alpha2);
        let ga = ga1 + ga2;
        if !(gamma - PI < ga1 && ga1 < 0.0 && gamma - PI < ga2 && ga2 < 0.0 && -ga > PI - 0.5 * gamma) {
            return Err(Error::Validation("derived alpha parameters out of range".into()));
        }
        Ok(cp)
    }

    fn raw(gamma: f64, h: f64) -> Self {
        Self {
            gamma,
            h,
            a1: I * (0.5 * I * gamma * h).exp(),
            a2: I * (0.5 * I * gamma * (h - 1.0)).exp(),
            alpha1: -0.5 * PI / gamma - 0.5 * h,
            alpha2: -0.5 * PI / gamma - 0.5 * h + 0.5,
            nmax: nmax_of(h),
        }
    }

    /// The partner under `h + 1 ↔ −h`. Only the scattering quantities are
    /// meaningful for it; it has no bound states.
    pub fn inverted(&self) -> Self {
        let mut cp = Self::raw(self.gamma, -(self.h + 1.0));
        cp.nmax = 0;
        cp
    }

    /// Additive constant `Ẽ_h`.
    pub fn e_tilde_h(&self) -> f64 {
        e_tilde(self.gamma, self.h)
    }

    /// `ℰ_n = Ẽ_{h−n} = −4 sin²(γ(h−n)/2)`.
    pub fn energy(&self, n: usize) -> Result<f64> {
        if n > self.nmax {
            return Err(Error::Range(format!("level {n} exceeds nmax = {}", self.nmax)));
        }
        Ok(e_tilde(self.gamma, self.h - n as f64))
    }

    pub fn energies(&self) -> Vec<f64> {
        (0..=self.nmax).map(|n| e_tilde(self.gamma, self.h - n as f64)).collect()
    }

    pub(crate) fn qdilog_half(&self) -> QdilogParam {
        QdilogParam::new(0.5 * self.gamma).expect("gamma validated")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Free,
    GenericH,
    ReflectionlessN,
    General,
    Custom,
}

type Evaluator = Arc<dyn Fn(C) -> Result<C> + Send + Sync>;

/// A potential function `V(x)` together with the additive constant that
/// completes its Hamiltonian.
#[derive(Clone)]
pub struct PotentialFn {
    pub kind: PotentialKind,
    pub gamma: f64,
    /// Added to the shift operator, e.g. `Ẽ_h` for the generic family.
    pub constant: f64,
    evaluator: Evaluator,
}

impl std::fmt::Debug for PotentialFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PotentialFn")
            .field("kind", &self.kind)
            .field("gamma", &self.gamma)
            .field("constant", &self.constant)
            .finish()
    }
}

impl PotentialFn {
    pub fn free(gamma: f64) -> Self {
        Self { kind: PotentialKind::Free, gamma, constant: 0.0, evaluator: Arc::new(|_| Ok(C::new(1.0, 0.0))) }
    }

    pub fn generic(cp: &Coupling) -> Self {
        let cp = *cp;
        Self {
            kind: PotentialKind::GenericH,
            gamma: cp.gamma,
            constant: cp.e_tilde_h(),
            evaluator: Arc::new(move |x| potential_generic(&cp, x)),
        }
    }

    pub fn reflectionless(seed: &SeedSystem) -> Self {
        let constant = seed.k.last().map_or(0.0, |&k| e_tilde(seed.gamma, k));
        let s = seed.clone();
        Self {
            kind: PotentialKind::ReflectionlessN,
            gamma: seed.gamma,
            constant,
            evaluator: Arc::new(move |x| potential_v(&s, x)),
        }
    }

    pub fn general(p: GeneralParams) -> Self {
        Self {
            kind: PotentialKind::General,
            gamma: p.gamma,
            constant: 0.0,
            evaluator: Arc::new(move |x| potential_viii(&p, x)),
        }
    }

    pub fn custom<F>(gamma: f64, constant: f64, f: F) -> Self
    where
        F: Fn(C) -> Result<C> + Send + Sync + 'static,
    {
        Self { kind: PotentialKind::Custom, gamma, constant, evaluator: Arc::new(f) }
    }

    pub fn eval(&self, x: C) -> Result<C> {
        (self.evaluator)(x)
    }

    /// `V*(x) = V(x*)*`.
    pub fn eval_star(&self, x: C) -> Result<C> {
        Ok(self.eval(x.conj())?.conj())
    }
}

fn branch_root(v: C, what: &str, x: C) -> Result<C> {
    if v.re < 0.0 && v.im.abs() <= BRANCH_GUARD * v.norm() {
        return Err(Error::Branch(format!("radicand {what} = {v} sits on the cut at x={x}")));
    }
    Ok(v.sqrt())
}

/// `√(V(x)V*(x−iγ)) f(x−iγ) + √(V*(x)V(x+iγ)) f(x+iγ) − (V(x)+V*(x)) f(x)`.
pub fn apply_hamiltonian(v: &PotentialFn, gamma: f64, f: &dyn Fn(C) -> Result<C>, x: C) -> Result<C> {
    let g = I * gamma;
    let vx = v.eval(x)?;
    let vsx = v.eval_star(x)?;
    let down = branch_root(vx * v.eval_star(x - g)?, "V(x)V*(x-ig)", x)?;
    let up = branch_root(vsx * v.eval(x + g)?, "V*(x)V(x+ig)", x)?;
    Ok(down * f(x - g)? + up * f(x + g)? - (vx + vsx) * f(x)?)
}

/// The full Hamiltonian: the shift operator plus `v.constant`.
pub fn apply_full(v: &PotentialFn, f: &dyn Fn(C) -> Result<C>, x: C) -> Result<C> {
    Ok(apply_hamiltonian(v, v.gamma, f, x)? + v.constant * f(x)?)
}

/// `V(x) = e^{−iγh}(1+e^{iγh}e^{2x})(1+e^{iγ(h−1)}e^{2x}) / ((1+e^{2x})(1+e^{−iγ}e^{2x}))`.
pub fn potential_generic(cp: &Coupling, x: C) -> Result<C> {
    let g = cp.gamma;
    let h = cp.h;
    if x.re > 350.0 {
        // every factor is dominated by e^{2x}; the phases cancel exactly
        let e = (-2.0 * x).exp();
        let v = (-I * g * h).exp() * ((I * g * h).exp() + e) * ((I * g * (h - 1.0)).exp() + e)
            / ((1.0 + e) * ((-I * g).exp() + e));
        return Ok(v);
    }
    let e2 = (2.0 * x).exp();
    let d = (1.0 + e2) * (1.0 + (-I * g).exp() * e2);
    if d.norm() < 1e-14 * (1.0 + e2.norm()).powi(2) {
        return Err(Error::SingularPoint(format!("V has a pole at x={x}")));
    }
    Ok((-I * g * h).exp() * (1.0 + (I * g * h).exp() * e2) * (1.0 + (I * g * (h - 1.0)).exp() * e2) / d)
}

/// Parameters of the four-parameter family, `a_j = e^{−iγ(α_j + iβ_j)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralParams {
    pub gamma: f64,
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

impl GeneralParams {
    pub fn new(gamma: f64, alpha: [f64; 2], beta: [f64; 2]) -> Result<Self> {
        let ga = gamma * (alpha[0] + alpha[1]);
        if !(gamma > 0.0)
            || alpha.iter().any(|&a| !(gamma - PI < gamma * a && gamma * a < 0.0))
            || !(-ga > PI - 0.5 * gamma)
        {
            return Err(Error::Validation(format!("parameters out of range: alpha={alpha:?}")));
        }
        Ok(Self { gamma, alpha, beta })
    }

    pub fn from_coupling(cp: &Coupling) -> Self {
        Self { gamma: cp.gamma, alpha: [cp.alpha1, cp.alpha2], beta: [0.0, 0.0] }
    }

    pub fn a(&self) -> [C; 2] {
        let g = self.gamma;
        [0, 1].map(|j| (-I * g * c(self.alpha[j], self.beta[j])).exp())
    }
}

/// `V(x) = −e^{−iγ/2} (a₁*a₂*/|a₁a₂|) ∏(1+a_je^x)(1−a_j^{*−1}e^x) / ((1+e^{2x})(1+e^{−iγ}e^{2x}))`.
pub fn potential_viii(p: &GeneralParams, x: C) -> Result<C> {
    let g = p.gamma;
    let a = p.a();
    let ex = x.exp();
    let e2 = ex * ex;
    let d = (1.0 + e2) * (1.0 + (-I * g).exp() * e2);
    if d.norm() < 1e-14 * (1.0 + e2.norm()).powi(2) {
        return Err(Error::SingularPoint(format!("V has a pole at x={x}")));
    }
    let pref = -(-0.5 * I * g).exp() * a[0].conj() * a[1].conj() / (a[0] * a[1]).norm();
    let num = a.iter().fold(C::new(1.0, 0.0), |acc, &aj| acc * (1.0 + aj * ex) * (1.0 - ex / aj.conj()));
    Ok(pref * num / d)
}

/// `log φ₀(x)` in the single-`Φ_{γ/2}` form; analytic for `|Im x| ≤ γ`.
pub fn log_ground_state(cp: &Coupling, x: C) -> Result<C> {
    let p = cp.qdilog_half();
    let a = I * cp.gamma * (cp.h + 0.5);
    let ratio = log_phi_strip(&p, 2.0 * x + a)? - log_phi_strip(&p, 2.0 * x - a)?;
    Ok(cp.h * x + 0.5 * log1p_exp(2.0 * x) + 0.5 * ratio)
}

/// `φ₀(x) = e^{hx} √(1+e^{2x}) (Φ_{γ/2}(2x+iγ(h+½)) / Φ_{γ/2}(2x−iγ(h+½)))^{1/2}`.
pub fn ground_state(cp: &Coupling, x: C) -> Result<C> {
    Ok(log_ground_state(cp, x)?.exp())
}

/// The three equivalent closed forms of `φ₀`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GroundStateForms {
    pub half_product: C,
    pub gamma_pair: C,
    pub half_single: C,
}

impl GroundStateForms {
    pub fn max_rel_spread(&self) -> f64 {
        let s = self.half_single.norm().max(1e-300);
        ((self.half_product - self.half_single).norm() / s).max((self.gamma_pair - self.half_single).norm() / s)
    }
}

pub fn ground_state_forms(cp: &Coupling, x: C) -> Result<GroundStateForms> {
    let g = cp.gamma;
    let h = cp.h;
    let half = cp.qdilog_half();
    let full = QdilogParam::new(g)?;
    let lh = |z: C| log_phi_strip(&half, z);
    let lf = |z: C| log_phi_strip(&full, z);
    let outer = h * x + 0.5 * log1p_exp(2.0 * x);
    let hp = I * (0.5 * PI);
    let mut prod = C::new(0.0, 0.0);
    for s in [h + 1.0, h] {
        let b = I * 0.5 * g * s;
        prod += lh(x + b + hp)? + lh(x + b - hp)? - lh(x - b - hp)? - lh(x - b + hp)?;
    }
    let mut pair = C::new(0.0, 0.0);
    for s in [h + 1.0, h] {
        let b = I * g * s;
        pair += lf(2.0 * x + b)? - lf(2.0 * x - b)?;
    }
    Ok(GroundStateForms {
        half_product: (outer + 0.5 * prod).exp(),
        gamma_pair: (outer + 0.5 * pair).exp(),
        half_single: ground_state(cp, x)?,
    })
}

/// `∏_{j=1}^N (4 cosh(x−iγj/2) cosh(x+iγj/2))^{−1/2}`, the integer-`h` ground state.
pub fn ground_state_integer(gamma: f64, n: usize, x: C) -> C {
    let mut l = C::new(0.0, 0.0);
    for j in 1..=n {
        let b = 0.5 * I * gamma * j as f64;
        l -= 0.5 * (4.0 * (x - b).cosh() * (x + b).cosh()).ln();
    }
    l.exp()
}

/// `P_n(sinh x)`: the phase-dressed Askey–Wilson polynomial
/// `e^{−iγ(h−(3n−1)/4)n} p_n(i sinh x; e^{iγh/2}, e^{iγ(h−1)/2}, −e^{iγh/2}, −e^{iγ(h−1)/2} | e^{−iγ})`.
pub fn eigen_polynomial(cp: &Coupling, n: usize, x: C) -> Result<C> {
    let g = cp.gamma;
    let h = cp.h;
    let b1 = (0.5 * I * g * h).exp();
    let b2 = (0.5 * I * g * (h - 1.0)).exp();
    let base = Base::unchecked(g, 0.0);
    let p = askey_wilson(&base, n, [b1, b2, -b1, -b2], x, Coordinate::ISinhX)?;
    let nf = n as f64;
    Ok((-I * g * (h - 0.25 * (3.0 * nf - 1.0)) * nf).exp() * p)
}

/// `φ_n(x) = φ₀(x) P_n(sinh x)`.
pub fn eigenfunction(cp: &Coupling, n: usize, x: C) -> Result<C> {
    if n > cp.nmax {
        return Err(Error::Range(format!("level {n} exceeds nmax = {}", cp.nmax)));
    }
    Ok(ground_state(cp, x)? * eigen_polynomial(cp, n, x)?)
}

pub type WaveFn = Box<dyn Fn(C) -> Result<C> + Send + Sync>;

/// Energy `ℰ_n` and the eigenfunction `φ_n`.
pub fn eigenpair(cp: &Coupling, n: usize) -> Result<(f64, WaveFn)> {
    let e = cp.energy(n)?;
    let cp = *cp;
    Ok((e, Box::new(move |x| eigenfunction(&cp, n, x))))
}

/// `max |(𝓗φ_n)(x) − ℰ_nφ_n(x)| / max |φ_n(x)|` over `xs`.
pub fn eigen_residual(cp: &Coupling, n: usize, xs: &[f64]) -> Result<f64> {
    let (e, phi) = eigenpair(cp, n)?;
    let v = PotentialFn::generic(cp);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &x in xs {
        let xc = c(x, 0.0);
        let hphi = apply_full(&v, &phi, xc)?;
        let ph = phi(xc)?;
        worst = worst.max((hphi - e * ph).norm());
        scale = scale.max(ph.norm());
    }
    Ok(worst / scale.max(1e-300))
}

/// Defect of `γ⁻²𝓗 f` against `(p² − h(h+1)/cosh²x) f` for `f = e^{−x²}`.
pub fn classical_limit_defect(gamma: f64, h: f64, x: f64) -> Result<f64> {
    let cp = Coupling::raw(gamma, h);
    let v = PotentialFn::generic(&cp);
    let f = |y: C| Ok((-y * y).exp());
    let lhs = apply_full(&v, &f, c(x, 0.0))? / (gamma * gamma);
    let fx = (-x * x).exp();
    let f2 = (4.0 * x * x - 2.0) * fx;
    let rhs = -f2 - h * (h + 1.0) / x.cosh().powi(2) * fx;
    Ok((lhs - rhs).norm())
}

/// Deviations of the two inversion-invariant combinations under `h+1 ↔ −h`.
pub fn inversion_defect(cp: &Coupling, x: C) -> Result<(f64, f64)> {
    let inv = cp.inverted();
    let g = I * cp.gamma;
    let v1 = PotentialFn::generic(cp);
    let v2 = PotentialFn::generic(&inv);
    let prod = |v: &PotentialFn| -> Result<C> { Ok(v.eval(x)? * v.eval_star(x - g)?) };
    let sum = |v: &PotentialFn| -> Result<C> { Ok(v.eval(x)? + v.eval_star(x)? - v.constant) };
    let (p1, p2) = (prod(&v1)?, prod(&v2)?);
    let (s1, s2) = (sum(&v1)?, sum(&v2)?);
    Ok(((p1 - p2).norm() / p1.norm().max(1.0), (s1 - s2).norm() / s1.norm().max(1.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentificationReport {
    pub gamma: f64,
    pub n: usize,
    /// `max |V_generic(x) − V^{[N]}(x)|` on the grid.
    pub potential_dev: f64,
    /// Max relative gap between the excluded-seed Casoratian ratio and `P_n`.
    pub polynomial_dev: f64,
    /// Max gap between `ℰ^{[N]}_n` and `Ẽ_{k_{N−n}}`.
    pub eigenvalue_dev: f64,
    pub energies: Vec<f64>,
}

/// Compares the generic family at `h = N` with the soliton seeds `k_j = j`.
pub fn reflectionless_identification(gamma: f64, n: usize) -> IdentificationReport {
    let mut rep = IdentificationReport {
        gamma,
        n,
        potential_dev: f64::INFINITY,
        polynomial_dev: f64::INFINITY,
        eigenvalue_dev: f64::INFINITY,
        energies: Vec::new(),
    };
    let (Ok(cp), Ok(seed)) = (Coupling::new(gamma, n as f64), SeedSystem::soliton(gamma, n)) else {
        return rep;
    };
    let grid: Vec<C> = (0..41).map(|i| c(-4.0 + 0.2 * i as f64, 0.0)).chain([c(0.3, 0.2), c(-1.1, -0.35)]).collect();
    let mut pd: f64 = 0.0;
    for &x in &grid {
        match (potential_generic(&cp, x), potential_v(&seed, x)) {
            (Ok(a), Ok(b)) => pd = pd.max((a - b).norm()),
            _ => pd = f64::INFINITY,
        }
    }
    rep.potential_dev = pd;

    let big_n = n as f64;
    let s = |l: f64| (0.5 * gamma * l).sin();
    let mut qd: f64 = 0.0;
    for level in 0..n {
        let lf = level as f64;
        let norm: f64 = (1..=level)
            .map(|l| 2.0 * s(l as f64) * s(2.0 * big_n - 2.0 * lf + l as f64) / s(big_n - l as f64))
            .product();
        for &x in &grid {
            let lhs = seed_casoratian_excl(&seed, n - level, x)
                .and_then(|a| Ok(a / seed_casoratian_excl(&seed, n, x)? * norm));
            match (lhs, eigen_polynomial(&cp, level, x)) {
                (Ok(a), Ok(b)) => qd = qd.max((a - b).norm() / b.norm().max(1.0)),
                _ => qd = f64::INFINITY,
            }
        }
    }
    rep.polynomial_dev = qd;

    rep.energies = cp.energies();
    rep.eigenvalue_dev = rep
        .energies
        .iter()
        .enumerate()
        .map(|(lv, &e)| (e - e_tilde(gamma, seed.k[n - 1 - lv])).abs())
        .fold(0.0, f64::max);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::e_scatter;
    use crate::numeric::linspace;
    use crate::reflectionless::{bound_state, seeds_build, wave_solution};

    #[test]
    fn nmax_semantics() {
        assert_eq!(nmax_of(2.0), 1);
        assert_eq!(nmax_of(2.3), 2);
        assert_eq!(nmax_of(0.4), 0);
        assert!(Coupling::new(0.5, 4.5).is_err());
    }

    #[test]
    fn free_hamiltonian_on_exponentials() {
        let g = 0.37;
        let v = PotentialFn::free(g);
        for k in [0.4, 1.3] {
            let x = c(0.2, 0.1);
            for sgn in [1.0, -1.0] {
                let f = move |y: C| Ok((sgn * k * y).exp());
                let hf = apply_hamiltonian(&v, g, &f, x).unwrap();
                assert!((hf - e_tilde(g, k) * f(x).unwrap()).norm() < 1e-13);
                let w = move |y: C| Ok((sgn * I * k * y).exp());
                let hw = apply_hamiltonian(&v, g, &w, x).unwrap();
                assert!((hw - e_scatter(g, k) * w(x).unwrap()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn general_family_contains_generic() {
        let cp = Coupling::new(0.3, 1.7).unwrap();
        let gp = GeneralParams::new(0.3, [cp.alpha1, cp.alpha2], [0.0, 0.0]).unwrap();
        assert!((gp.a()[0] - cp.a1).norm() < 1e-14 && (gp.a()[1] - cp.a2).norm() < 1e-14);
        for x in [-2.0, 0.1, 1.5] {
            let x = c(x, 0.05);
            assert!((potential_viii(&gp, x).unwrap() - potential_generic(&cp, x).unwrap()).norm() < 1e-13);
        }
        // |V| → 1 at both ends; the phase is absorbed by the constant Ẽ_h
        let far = potential_generic(&cp, c(30.0, 0.0)).unwrap();
        assert!((far - (I * 0.3 * 1.7).exp()).norm() < 1e-12);
        let v = PotentialFn::generic(&cp);
        let free = -(far + far.conj()) + v.constant;
        assert!((free + 2.0).norm() < 1e-12);
    }

    #[test]
    fn ground_state_forms_agree() {
        let cp = Coupling::new(0.4, 1.3).unwrap();
        for x in [-2.5, -0.4, 0.0, 0.9, 3.0] {
            let f = ground_state_forms(&cp, c(x, 0.0)).unwrap();
            assert!(f.max_rel_spread() < 1e-9, "x={x}: {f:?}");
            assert!(f.half_single.im.abs() < 1e-10 * f.half_single.re);
        }
    }

    #[test]
    fn integer_ground_state_reduces() {
        let g = 0.35;
        let cp = Coupling::new(g, 3.0).unwrap();
        let r0 = ground_state(&cp, c(0.0, 0.0)).unwrap() / ground_state_integer(g, 3, c(0.0, 0.0));
        for x in [-2.0, -0.5, 1.0, 2.5] {
            let x = c(x, 0.0);
            let r = ground_state(&cp, x).unwrap() / ground_state_integer(g, 3, x);
            assert!((r - r0).norm() < 1e-10 * r0.norm());
        }
    }

    #[test]
    fn parity_and_levels() {
        let cp = Coupling::new(0.3, 3.4).unwrap();
        for n in 0..=cp.nmax {
            for x in [0.3, 1.1] {
                let a = eigen_polynomial(&cp, n, c(x, 0.0)).unwrap();
                let b = eigen_polynomial(&cp, n, c(-x, 0.0)).unwrap();
                let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((a - sgn * b).norm() < 1e-10 * a.norm().max(1.0));
            }
        }
        assert_eq!(eigen_polynomial(&cp, 0, c(0.7, 0.0)).unwrap(), C::new(1.0, 0.0));
        assert!(eigenpair(&cp, 4).is_err());
    }

    #[test]
    fn eigen_residuals_small() {
        let xs = linspace(-3.0, 3.0, 20);
        for (g, h) in [(0.3, 1.6), (0.5, 2.0), (0.2, 3.7)] {
            let cp = Coupling::new(g, h).unwrap();
            for n in 0..=cp.nmax {
                let r = eigen_residual(&cp, n, &xs).unwrap();
                assert!(r < 1e-7, "g={g} h={h} n={n}: {r}");
            }
        }
    }

    #[test]
    fn inversion_invariants() {
        let cp = Coupling::new(0.45, 1.2).unwrap();
        for x in [-1.0, 0.2, 2.0] {
            let (a, b) = inversion_defect(&cp, c(x, 0.0)).unwrap();
            assert!(a < 1e-13 && b < 1e-13);
        }
    }

    #[test]
    fn classical_limit_improves() {
        let d: Vec<f64> = [0.1, 0.05, 0.025].iter().map(|&g| classical_limit_defect(g, 1.4, 0.3).unwrap()).collect();
        assert!(d[1] < d[0] && d[2] < d[1]);
        assert!((d[1] / d[2]).log2() > 1.0);
    }

    #[test]
    fn identification_small_n() {
        let r = reflectionless_identification(0.5, 1);
        assert!(r.potential_dev < 1e-10);
        let r = reflectionless_identification(0.3, 2);
        assert!(r.potential_dev < 1e-10 && r.polynomial_dev < 1e-9 && r.eigenvalue_dev < 1e-14, "{r:?}");
    }

    #[test]
    fn reflectionless_states_solve_their_hamiltonian() {
        let s = seeds_build(0.3, &[0.7, 1.5, 2.6], &[1.2, -0.4, 3.0]).unwrap();
        let v = PotentialFn::reflectionless(&s);
        for j in 1..=3 {
            let f = |y: C| bound_state(&s, j, y);
            for x in [-2.0, 0.0, 1.7] {
                let x = c(x, 0.0);
                let r = apply_full(&v, &f, x).unwrap() - e_tilde(0.3, s.k[j - 1]) * f(x).unwrap();
                assert!(r.norm() < 1e-8 * f(x).unwrap().norm().max(1e-3), "j={j}");
            }
        }
        let w = |y: C| wave_solution(&s, 0.8, y);
        let x = c(0.4, 0.0);
        let r = apply_full(&v, &w, x).unwrap() - e_scatter(0.3, 0.8) * w(x).unwrap();
        assert!(r.norm() < 1e-8);
    }
}
