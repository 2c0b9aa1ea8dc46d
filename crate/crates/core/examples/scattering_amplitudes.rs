// Transmission and reflection amplitudes, unitarity and bound-state poles.

use qrefless::scattering::{amplitudes, amplitudes_from_connection, pole_census};
use qrefless::solvable::Coupling;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cp = Coupling::new(0.5, 1.6)?;
    println!("{:>5} {:>26} {:>26} {:>9}", "k", "t", "r", "defect");
    for k in [0.25, 0.5, 1.0, 2.0, 4.0, 6.0] {
        let a = amplitudes(&cp, k)?;
        println!("{k:>5.2} {:>26.10} {:>26.10} {:>9.1e}", a.t, a.r, a.unitarity_defect);
    }

    let a = amplitudes(&cp, 1.3)?;
    let b = amplitudes_from_connection(&cp, 1.3)?;
    println!("closed form vs connection route: {:.1e}", (a.t - b.t).norm().max((a.r - b.r).norm()));

    let inv = amplitudes(&cp.inverted(), 1.3)?;
    println!("inversion invariance: {:.1e}", (a.t - inv.t).norm());

    let pc = pole_census(&cp, 1e-3);
    println!("poles of t at k = i*kappa: expected {:?}, found {:?}", pc.expected, pc.found);

    let int = amplitudes(&Coupling::new(0.5, 2.0)?, 1.3)?;
    println!("integer h: |r| = {:.1e}", int.r.norm());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
