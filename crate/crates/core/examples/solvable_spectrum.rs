// Spectrum and eigenfunctions of the exactly solvable family.

use qrefless::solvable::{self, eigen_residual, reflectionless_identification, Coupling};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cp = Coupling::new(0.25, 2.6)?;
    println!("gamma={} h={} nmax={}", cp.gamma, cp.h, cp.nmax);
    let xs: Vec<f64> = (0..20).map(|i| -3.0 + 0.3 * i as f64).collect();
    for n in 0..=cp.nmax {
        println!("E_{n} = {:.10}   residual {:.1e}", cp.energy(n)?, eigen_residual(&cp, n, &xs)?);
    }

    let forms = solvable::ground_state_forms(&cp, qrefless::numeric::c(0.5, 0.0))?;
    println!("ground-state forms agree to {:.1e}", forms.max_rel_spread());

    let (prod, sum) = solvable::inversion_defect(&cp, qrefless::numeric::c(0.3, 0.0))?;
    println!("h -> -(h+1): product {prod:.1e}, sum {sum:.1e}");

    let rep = reflectionless_identification(0.25, 3);
    println!(
        "h = 3 against soliton seeds: potential {:.1e}, polynomials {:.1e}, energies {:.1e}",
        rep.potential_dev, rep.polynomial_dev, rep.eigenvalue_dev
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
