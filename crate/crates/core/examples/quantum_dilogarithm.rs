// Evaluate Φ_γ on and off the real line and check two functional equations.

use qrefless::numeric::{c, I};
use qrefless::qdilog::{self, QdilogParam};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let gamma = 0.7;
    let p = QdilogParam::new(gamma)?;

    for z in [c(0.0, 0.0), c(1.5, 0.3), c(-2.0, -1.1), c(0.4, 5.0)] {
        let v = qdilog::eval(&p, z)?;
        println!("Phi({z:.2}) = {:.12} via {:?}, est. error {:.1e}", v.value, v.method, v.est_error);
    }

    // Φ(z+iγ)/Φ(z−iγ) = 1/(1+e^z)
    let z = c(0.8, -0.2);
    let ratio = qdilog::eval(&p, z + I * gamma)?.value / qdilog::eval(&p, z - I * gamma)?.value;
    println!("gamma-shift defect {:.2e}", (ratio * (1.0 + z.exp()) - 1.0).norm());

    let inv = qdilog::eval(&p, z)?.value * qdilog::eval(&p, -z)?.value;
    println!("inversion defect   {:.2e}", (inv / qdilog::inversion_rhs(gamma, z) - 1.0).norm());

    // Lattice points are refused rather than evaluated.
    let pole = c(0.0, -(gamma + std::f64::consts::PI));
    match qdilog::eval(&p, pole) {
        Err(e) => println!("at {pole:.4}: {e}"),
        Ok(v) => println!("unexpected value {}", v.value),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
