//! Small complex-arithmetic helpers shared by every module.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C = Complex64;

pub const I: C = C::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// `e^z − 1` without cancellation for small `|z|`.
pub fn expm1(z: C) -> C {
    let (x, y) = (z.re, z.im);
    let s = (0.5 * y).sin();
    C::new(x.exp_m1() * y.cos() - 2.0 * s * s, x.exp() * y.sin())
}

/// `log(1 + u)` on the principal branch, accurate for small `|u|`.
pub fn log1p(u: C) -> C {
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    C::new(re, u.im.atan2(1.0 + u.re))
}

/// `log(1 + e^w)`, finite for any `w` away from the zeros of `1 + e^w`.
pub fn log1p_exp(w: C) -> C {
    if w.re > 0.0 {
        w + log1p((-w).exp())
    } else {
        log1p(w.exp())
    }
}

/// `1 − e^w` with the imaginary part of `w` reduced mod 2π first, so that
/// exact integer multiples of `2πi` give an exact zero.
pub fn one_minus_exp(w: C) -> C {
    let tau = std::f64::consts::TAU;
    let im = w.im - tau * (w.im / tau).round();
    -expm1(C::new(w.re, im))
}

/// Compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: C,
    comp: C,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: C) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> C {
        self.sum
    }
}

/// Determinant by partial-pivot LU, with a crude condition estimate taken
/// from the spread of the pivots.
pub fn det_with_cond(m: DMatrix<C>) -> (C, f64) {
    let n = m.nrows();
    if n == 0 {
        return (C::new(1.0, 0.0), 1.0);
    }
    let lu = m.lu();
    let d = lu.determinant();
    let u = lu.u();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        let a = u[(i, i)].norm();
        lo = lo.min(a);
        hi = hi.max(a);
    }
    let cond = if lo == 0.0 { f64::INFINITY } else { hi / lo };
    (d, cond)
}

pub fn det(m: DMatrix<C>) -> C {
    det_with_cond(m).0
}

/// Square root of `v` on the branch closest to `prev` (continuation along a
/// sampled path). Without a previous value the principal root is taken.
pub fn sqrt_near(v: C, prev: Option<C>) -> C {
    let s = v.sqrt();
    match prev {
        Some(p) if (s - p).norm() > (s + p).norm() => -s,
        _ => s,
    }
}

/// Square root of `f(x)` continued from the real point `Re x` along the
/// vertical segment to `x`, starting on the principal branch.
pub fn sqrt_continued<F: Fn(C) -> C>(f: F, x: C, steps: usize) -> C {
    let base = C::new(x.re, 0.0);
    let mut prev = f(base).sqrt();
    if x.im == 0.0 {
        return prev;
    }
    for s in 1..=steps {
        let p = base + I * (x.im * s as f64 / steps as f64);
        prev = sqrt_near(f(p), Some(prev));
    }
    prev
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Relative distance `|a − b| / max(|b|, floor)`.
pub fn rel_err(a: C, b: C, floor: f64) -> f64 {
    (a - b).norm() / b.norm().max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_small_and_large() {
        let z = c(1e-12, -2e-12);
        assert!((expm1(z) - z).norm() < 1e-23);
        let z = c(0.7, 1.3);
        assert!((expm1(z) - (z.exp() - 1.0)).norm() < 1e-15);
    }

    #[test]
    fn log1p_exp_large_argument() {
        let w = c(800.0, 0.3);
        assert!((log1p_exp(w) - w).norm() < 1e-300 + 1e-15);
        let w = c(-0.4, 2.0);
        assert!((log1p_exp(w) - (1.0 + w.exp()).ln()).norm() < 1e-15);
    }

    #[test]
    fn one_minus_exp_exact_zero() {
        let w = c(0.0, 6.0 * std::f64::consts::PI);
        assert_eq!(one_minus_exp(w).norm(), 0.0);
    }

    #[test]
    fn kahan_beats_naive() {
        let mut k = KahanSum::new();
        k.add(c(1.0, 0.0));
        for _ in 0..1000 {
            k.add(c(1e-17, 0.0));
        }
        assert!((k.value().re - (1.0 + 1e-14)).abs() < 1e-16);
    }

    #[test]
    fn det_small() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 1.0), c(2.0, 0.0), c(0.0, 3.0), c(4.0, -1.0)]);
        let want = c(1.0, 1.0) * c(4.0, -1.0) - c(2.0, 0.0) * c(0.0, 3.0);
        assert!((det(m) - want).norm() < 1e-14);
        assert_eq!(det(DMatrix::zeros(0, 0)), c(1.0, 0.0));
    }

    #[test]
    fn sqrt_follows_path() {
        // sqrt(e^{2 i y}) continued from y=0 must equal e^{i y} even past the cut
        let f = |x: C| (2.0 * I * x.im).exp();
        let r = sqrt_continued(f, c(0.0, 2.5), 200);
        assert!((r - (I * 2.5).exp()).norm() < 1e-12);
    }
}
