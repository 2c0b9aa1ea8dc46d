use crate::numeric::C;
use serde::Serialize;

/// Bound-state pole of `t(k)` at `k = iκ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleDiagnostic {
    pub kappa: f64,
    /// Level index `n`, counted from the ground state.
    pub level: usize,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeResult {
    pub k: f64,
    pub t: C,
    pub r: C,
    /// `| |t|² + |r|² − 1 |`
    pub unitarity_defect: f64,
    pub pole_flags: Vec<PoleDiagnostic>,
}

impl AmplitudeResult {
    pub fn new(k: f64, t: C, r: C, pole_flags: Vec<PoleDiagnostic>) -> Self {
        let unitarity_defect = (t.norm_sqr() + r.norm_sqr() - 1.0).abs();
        Self { k, t, r, unitarity_defect, pole_flags }
    }
}

/// `Ẽ_k = −4 sin²(kγ/2)`
pub fn e_tilde(gamma: f64, k: f64) -> f64 {
    let s = (0.5 * k * gamma).sin();
    -4.0 * s * s
}

/// `E^s_k = 4 sinh²(kγ/2)`
pub fn e_scatter(gamma: f64, k: f64) -> f64 {
    let s = (0.5 * k * gamma).sinh();
    4.0 * s * s
}
