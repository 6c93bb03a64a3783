//! Sharp constants of weighted Hardy, Hardy-Rellich and Rellich inequalities
//! for Laplacians perturbed by an angular operator `Λ_ω`, together with the
//! radial Rayleigh quotients that realize them.

pub mod cli;
pub mod constants;
pub mod error;
pub mod problem;
pub mod quotient;
pub mod radial;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
