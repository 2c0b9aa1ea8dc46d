pub mod amplitude;
pub mod classical;
pub mod cli;
pub mod error;
pub mod numeric;
pub mod qdilog;
pub mod qseries;
pub mod quad;
pub mod reflectionless;
pub mod scattering;
pub mod solvable;
pub mod verify;

pub use error::{Error, Result};
