// Numerical evidence for the |q| = 1 connection formula of ₂φ₁.

use qrefless::numeric::c;
use qrefless::scattering::{connection_verify, double_application, qeuler_check, ConnectionInput};
use qrefless::verify::{conjecture_suite, Suite};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let gamma = 0.35;
    let ci = ConnectionInput::terminating(gamma, 3, c(0.1, 0.4), c(-0.2, 0.3), c(0.5, -0.2))?;
    let rep = connection_verify(&ci, 1e-9)?;
    println!("terminating n=3: lhs {:.12}, rhs {:.12}", rep.lhs, rep.rhs);

    let q = qeuler_check(gamma, c(-0.2, 0.5), c(-0.3, -0.4), c(0.1, 0.2), c(-2.5, 0.3), 1e-6)?;
    println!("q-Euler counterpart: |lhs - rhs| = {:.1e}", q.abs_diff);

    // The q-Euler gap is not zero at |q| = 1; it shrinks like exp(2π Re w / γ).
    println!("{:>7} {:>10} {:>16}", "Re w", "gap", "gap/exp(2πRe w/γ)");
    for shift in [1.6, 1.2, 0.8, 0.4, 0.0] {
        let r = qeuler_check(gamma, c(-0.2, 0.5), c(-0.3, -0.4), c(0.1, 0.2), c(-1.0 - shift, 0.3), 1.0)?;
        println!("{:>7.2} {:>10.1e} {:>16.2e}", r.w_re, r.abs_diff, r.abs_diff / r.predicted_scale);
    }

    let ci = ConnectionInput::new(gamma, c(0.2, 0.3), c(-0.1, 0.6), c(0.3, -0.2), c(0.4, 0.1))?;
    println!("applying the formula twice: defect {:.1e}", double_application(&ci)?.defect);

    for s in Suite::ALL {
        let r = conjecture_suite(s, s.default_tol(), 7);
        println!("suite {:<12} {} ({} cases, worst {:.1e})", s.name(), if r.pass { "PASS" } else { "FAIL" }, r.cases.len(), r.worst());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
