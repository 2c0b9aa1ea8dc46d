// Run a few acceptance criteria and print their summary lines.

use qrefless::verify::{run_criterion, VerifyOptions};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let opts = VerifyOptions::default();
    for id in [1, 2, 4, 8, 10] {
        let r = run_criterion(id, &opts);
        println!("{}", r.summary_line());
        for ck in r.checks.iter().filter(|c| !c.note.is_empty()) {
            println!("    {}: {}", ck.name, ck.note);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
