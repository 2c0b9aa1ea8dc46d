macro_rules! example {
    ($m:ident, $file:literal) => {
        mod $m {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(quantum_dilogarithm, "quantum_dilogarithm.rs");
example!(basic_hypergeometric, "basic_hypergeometric.rs");
example!(reflectionless_potential, "reflectionless_potential.rs");
example!(solvable_spectrum, "solvable_spectrum.rs");
example!(scattering_amplitudes, "scattering_amplitudes.rs");
example!(connection_formula, "connection_formula.rs");
example!(classical_limit, "classical_limit.rs");
example!(verification_report, "verification_report.rs");

#[test]
fn examples_run() {
    quantum_dilogarithm::run_example().unwrap();
    basic_hypergeometric::run_example().unwrap();
    reflectionless_potential::run_example().unwrap();
    solvable_spectrum::run_example().unwrap();
    scattering_amplitudes::run_example().unwrap();
    connection_formula::run_example().unwrap();
    classical_limit::run_example().unwrap();
    verification_report::run_example().unwrap();
}
