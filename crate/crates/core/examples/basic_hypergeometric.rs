// ₂φ₁ with |q| = 1, its q-difference equation, and an Askey-Wilson polynomial.

use qrefless::numeric::c;
use qrefless::qseries::{self, askey_wilson, Base, Coordinate, Phi21Params};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = Base::new(0.3, 0.0)?;
    let p = Phi21Params::from_values(c(0.5, 0.1), c(0.2, 0.0), c(0.7, 0.2))?;
    let z = c(0.3, 0.1);
    let s = qseries::phi21(&base, &p, z, 1e-14)?;
    println!("2phi1 = {:.14} ({} terms, converged {})", s.value, s.terms_used, s.converged);

    let f = |y| Ok(qseries::phi21(&base, &p, y, 1e-15)?.value);
    let res = qseries::q_difference_residual(&base, &p, f, z)?;
    println!("q-difference residual {:.2e}", res.norm());

    // Regularized base approaches the |q| = 1 value.
    for eps in [1e-5, 1e-6, 1e-7] {
        let v = qseries::phi21(&base.with_epsilon(eps), &p, z, 1e-14)?.value;
        println!("  eps={eps:.0e}: |diff| = {:.2e}", (v - s.value).norm());
    }

    let a = [c(0.3, 0.0), c(-0.2, 0.1), c(0.5, 0.0), c(0.1, -0.4)];
    for n in 0..4 {
        let v = askey_wilson(&base, n, a, c(0.4, 0.0), Coordinate::ISinhX)?;
        println!("p_{n}(0.4) = {v:.10}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
