use thiserror::Error;

/// Errors raised while building circuits, simulating them, or configuring a search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "state of {width} qubits exceeds the configured limit of {max_width} qubits \
         (would need {required_bytes} bytes of amplitudes)"
    )]
    Capacity {
        width: usize,
        max_width: usize,
        required_bytes: u128,
    },

    #[error("qubit count must be at least 1")]
    ZeroWidth,

    #[error("qubit {qubit} is out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },

    #[error("basis index {index} is out of range for width {width}")]
    BasisOutOfRange { index: usize, width: usize },

    #[error("qubit {qubit} appears more than once")]
    DuplicateQubit { qubit: usize },

    #[error("{kind} gate expects {expected} controls, got {got}")]
    Arity {
        kind: &'static str,
        expected: &'static str,
        got: usize,
    },

    #[error("circuit of width {circuit} does not fit a state of width {state}")]
    WidthMismatch { circuit: usize, state: usize },

    #[error("bits per variable must be at least 1")]
    ZeroBits,

    #[error("target {target} is not representable in {bits} bits")]
    TargetNotRepresentable { target: u64, bits: usize },

    #[error("solution count {solutions} is out of range for an index space of {space}")]
    SolutionCount { solutions: u64, space: u64 },

    #[error(
        "{solutions} of {space} index states are solutions; the diffuser needs a minority \
         (use force to run anyway)"
    )]
    MajoritySolutions { solutions: u64, space: u64 },

    #[error("shot count must be at least 1")]
    ZeroShots,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
