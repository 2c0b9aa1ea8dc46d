// Build a three-seed reflectionless potential and inspect it.

use qrefless::numeric::c;
use qrefless::reflectionless::{self as rl, seeds_build};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let seed = seeds_build(0.4, &[0.6, 1.5, 2.7], &[1.2, -0.8, 2.0])?;
    println!("c = {:.6?}", seed.c);
    for b in seed.bound_states() {
        println!("bound state {} at energy {:.8}", b.j, b.energy);
    }

    println!("{:>6} {:>14} {:>24} {:>12}", "x", "u_N", "V", "Phi_1");
    for x in [-4.0, -1.0, 0.0, 1.0, 4.0] {
        let xc = c(x, 0.0);
        let u = rl::tau_u(&seed, xc)?;
        let v = rl::potential_v(&seed, xc)?;
        let phi = rl::bound_state(&seed, 1, xc)?;
        println!("{x:>6.1} {:>14.6e} {:>24.8} {:>12.6e}", u.re, v, phi.re);
    }

    let x = c(0.7, 0.0);
    let u = rl::tau_u(&seed, x)?;
    println!(
        "determinant vs Casoratian {:.1e}, vs expansion {:.1e}",
        (u - rl::tau_u_from_casoratian(&seed, x)).norm() / u.norm(),
        (u - rl::tau_u_expansion(&seed, x)).norm() / u.norm()
    );

    let zeros = rl::strip_zero_count(&seed, 12.0, 4000);
    println!("zeros of u_N in the strip: {zeros}");

    let a = rl::amplitude_product(&seed, 1.0);
    println!("t(1) = {:.10}, |t| = {:.12}", a.t, a.t.norm());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
