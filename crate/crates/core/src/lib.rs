//! Grover search for integer solutions of `x + y = n`.
//!
//! The crate builds the whole search as a flat gate list and runs it on a dense
//! statevector:
//!
//! * [`statevector`] holds `2^w` amplitudes and applies H, X and the
//!   controlled-NOT family in place, with exact marginals and seeded sampling.
//! * [`circuit`] is the gate list, with adjoint, gate counts and OpenQASM 3 export.
//! * [`arith`] lays out the `x`, `y`, carry, sum and oracle registers and builds
//!   the non-overwriting adder.
//! * [`grover`] builds the equality oracle, the diffuser and full searches.
//! * [`analysis`] is the classical reference: brute-force solution lists and the
//!   closed-form success probability.
//! * [`cli`] is the command-line front end and its self-check suite.
//!
//! ```
//! use dioph_grover::grover::{run_grover, RunOptions};
//!
//! let report = run_grover(3, 5, &RunOptions::default()).unwrap();
//! assert_eq!(report.iterations, 2);
//! assert_eq!(report.solutions.len(), 6);
//! assert!(report.success_probability > 0.999);
//! ```

pub mod analysis;
pub mod arith;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod grover;
pub mod statevector;

pub use error::{Error, Result};
