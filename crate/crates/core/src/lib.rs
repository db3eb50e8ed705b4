//! Numerical verification and computation kernel for twisted/mixed gauge
//! geometry on coordinate charts: group-action cocycles, twisted and mixed
//! connections with their curvatures and transformation laws, Cartan-type
//! soldering/torsion data, conformal tractor/twistor calculus, and BRST
//! nilpotency — all realized as property-tested operations on jet-evaluable
//! fields.

pub mod brst;
pub mod cartan;
pub mod cli;
pub mod cocycle;
pub mod conformal;
pub mod error;
pub mod forms;
pub mod gauge;
pub mod sample;
pub mod jetmat;
pub mod lie;
pub mod jets;

pub use error::{KernelError, Result};

/// CLI entry point; returns the process exit code.
pub fn run() -> i32 {
    cli::run()
}
