// As γ → 0 the amplitudes approach those of the classical
// Schrödinger problem, computed here from Gamma functions.

use qrefless::classical::{classical_amplitudes, classical_connection_2f1, ClassicalOracle};
use qrefless::numeric::c;
use qrefless::scattering::classical_limit;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (t, r) = classical_amplitudes(&ClassicalOracle { h: 1.4, k: 0.9 });
    println!("classical t = {t:.10}, r = {r:.10}");

    for (h, k) in [(2.0, 1.0), (1.4, 0.9)] {
        println!("h={h} k={k}");
        for s in classical_limit(h, k, &[0.4, 0.2, 0.1, 0.05, 0.025])? {
            println!("  gamma={:<6} defect {:.3e}", s.gamma, s.defect);
        }
    }

    let (lhs, rhs) = classical_connection_2f1(c(0.3, 0.1), c(-0.4, 0.2), c(1.1, 0.0), c(0.5, 0.0))?;
    println!("2F1 connection formula gap {:.1e}", (lhs - rhs).norm());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
