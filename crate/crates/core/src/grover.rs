//! Grover search for `x + y = n`.
//!
//! The oracle computes the sum into a work register, flips the oracle qubit
//! when the sum equals `n`, then uncomputes the sum. With the oracle qubit held
//! in `|−⟩` the flip becomes a sign change on exactly the marked index states.
//! The diffuser reflects the index register about its uniform superposition
//! using the same phase-kickback trick.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::analysis::{brute_force_solutions, predicted_success, solution_count, SolutionSet};
use crate::arith::{build_adder, build_layout, to_bits, RegisterLayout};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::statevector::{StateVector, DEFAULT_MAX_WIDTH};

/// `x + y = n` over `m`-bit naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchProblem {
    pub m: usize,
    pub n: u64,
    /// Index-space size `N = 2^{2m}`.
    pub space: u64,
    /// Number of solutions `M`.
    pub solutions: u64,
}

impl SearchProblem {
    pub fn new(m: usize, n: u64) -> Result<SearchProblem> {
        if m == 0 {
            return Err(Error::ZeroBits);
        }
        if m > 31 {
            return Err(Error::Capacity {
                width: 4 * m + 1,
                max_width: DEFAULT_MAX_WIDTH,
                required_bytes: u128::MAX,
            });
        }
        Ok(SearchProblem {
            m,
            n,
            space: 1 << (2 * m),
            solutions: solution_count(m, n),
        })
    }

    /// True when solutions are not a strict minority of the index space.
    pub fn is_majority(&self) -> bool {
        2 * self.solutions >= self.space
    }
}

/// H on every index qubit; X then H on the oracle qubit to prepare `|−⟩`.
pub fn build_initializer(layout: &RegisterLayout) -> Circuit {
    let mut c = Circuit::new(layout.total_width());
    for q in layout.index_qubits() {
        c.push(Gate::h(q)).expect("index qubit in range");
    }
    let q = layout.oracle_qubit();
    c.push(Gate::x(q)).expect("oracle qubit in range");
    c.push(Gate::h(q)).expect("oracle qubit in range");
    c
}

/// Flips the oracle qubit iff the sum register holds `n`.
///
/// Sum qubits whose bit of `n` is zero are wrapped in X gates so the
/// multi-controlled NOT fires on the pattern of `n`.
pub fn build_query(layout: &RegisterLayout, n: u64) -> Result<Circuit> {
    let sum = layout.sum_qubits();
    let bits = to_bits(n, sum.len())?;
    let zeros: Vec<usize> = sum
        .iter()
        .zip(&bits)
        .filter(|(_, &b)| !b)
        .map(|(&q, _)| q)
        .collect();
    let mut c = Circuit::new(layout.total_width());
    for &q in &zeros {
        c.push(Gate::x(q))?;
    }
    c.push(Gate::controlled_x(sum, layout.oracle_qubit())?)?;
    for &q in zeros.iter().rev() {
        c.push(Gate::x(q))?;
    }
    Ok(c)
}

/// Adder, query, adjoint adder.
pub fn build_oracle(layout: &RegisterLayout, n: u64) -> Result<Circuit> {
    build_oracle_with_adder(layout, &build_adder(layout), n)
}

/// Oracle around a caller-supplied adder circuit. Used to check that the
/// verification suite catches a broken adder.
pub fn build_oracle_with_adder(layout: &RegisterLayout, adder: &Circuit, n: u64) -> Result<Circuit> {
    let query = build_query(layout, n)?;
    let mut c = Circuit::new(layout.total_width());
    c.append(adder)?;
    c.append(&query)?;
    c.append(&adder.adjoint())?;
    Ok(c)
}

/// H and X layers around a NOT controlled on all index qubits, targeting the
/// oracle qubit.
pub fn build_diffuser(layout: &RegisterLayout) -> Circuit {
    let index = layout.index_qubits();
    let mut c = Circuit::new(layout.total_width());
    let layer = |c: &mut Circuit, gate: fn(usize) -> Gate| {
        for &q in &index {
            c.push(gate(q)).expect("index qubit in range");
        }
    };
    layer(&mut c, Gate::h);
    layer(&mut c, Gate::x);
    c.push(Gate::controlled_x(&index, layout.oracle_qubit()).expect("distinct qubits"))
        .expect("oracle qubit in range");
    layer(&mut c, Gate::x);
    layer(&mut c, Gate::h);
    c
}

/// One Grover iteration: oracle then diffuser.
pub fn build_iteration(layout: &RegisterLayout, n: u64) -> Result<Circuit> {
    let mut c = build_oracle(layout, n)?;
    c.append(&build_diffuser(layout))?;
    Ok(c)
}

/// Initializer followed by `k` iterations.
pub fn build_search_circuit(layout: &RegisterLayout, n: u64, k: usize) -> Result<Circuit> {
    let iteration = build_iteration(layout, n)?;
    let mut c = build_initializer(layout);
    for _ in 0..k {
        c.append(&iteration)?;
    }
    Ok(c)
}

/// Simulates the initializer and `k` iterations from `|0…0⟩`.
pub fn simulate_search(layout: &RegisterLayout, n: u64, k: usize, max_width: usize) -> Result<StateVector> {
    let mut state = StateVector::with_max_width(layout.total_width(), max_width)?;
    let iteration = build_iteration(layout, n)?;
    state.apply_circuit(&build_initializer(layout))?;
    for _ in 0..k {
        state.apply_circuit(&iteration)?;
    }
    Ok(state)
}

/// How many iterations to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iterations {
    Fixed(usize),
    /// `floor((π/4)·√(N/M))`, at least 1.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub iterations: Iterations,
    /// `None` reads exact probabilities; `Some(shots)` samples.
    pub shots: Option<u64>,
    pub seed: u64,
    /// Run even when solutions are a majority of the index space.
    pub force: bool,
    pub max_width: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            iterations: Iterations::Auto,
            shots: None,
            seed: 0,
            force: false,
            max_width: DEFAULT_MAX_WIDTH,
        }
    }
}

impl RunOptions {
    pub fn iterations(k: usize) -> RunOptions {
        RunOptions {
            iterations: Iterations::Fixed(k),
            ..RunOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    /// Index state in display order, `x` bits then `y` bits.
    pub state: String,
    pub x: u64,
    pub y: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverReport {
    pub problem: SearchProblem,
    pub iterations: usize,
    /// Probability (exact, or sampled frequency) per index bitstring. Empty
    /// when there are no solutions.
    pub histogram: BTreeMap<String, f64>,
    /// Raw shot counts when sampling.
    pub counts: Option<BTreeMap<String, u64>>,
    /// Exact total probability on the solution states.
    pub success_probability: f64,
    pub predicted_success: f64,
    pub solutions: Vec<Solution>,
}

impl GroverReport {
    pub fn has_solutions(&self) -> bool {
        !self.solutions.is_empty()
    }
}

/// Resolved iteration count for a problem.
pub fn schedule(problem: &SearchProblem, iterations: Iterations) -> usize {
    match iterations {
        Iterations::Fixed(k) => k,
        Iterations::Auto if problem.solutions == 0 => 0,
        Iterations::Auto => {
            let ratio = problem.space as f64 / problem.solutions as f64;
            ((FRAC_PI_4 * ratio.sqrt()).floor() as usize).max(1)
        }
    }
}

/// Builds and simulates the full search, then reads the index register.
///
/// No circuit is run when the equation has no solutions; the report comes
/// back with an empty histogram.
pub fn run_grover(m: usize, n: u64, options: &RunOptions) -> Result<GroverReport> {
    let problem = SearchProblem::new(m, n)?;
    let layout = build_layout(m)?;
    let iterations = schedule(&problem, options.iterations);
    if problem.solutions == 0 {
        return Ok(GroverReport {
            problem,
            iterations,
            histogram: BTreeMap::new(),
            counts: None,
            success_probability: 0.0,
            predicted_success: 0.0,
            solutions: Vec::new(),
        });
    }
    if problem.is_majority() && !options.force {
        return Err(Error::MajoritySolutions {
            solutions: problem.solutions,
            space: problem.space,
        });
    }
    if options.shots == Some(0) {
        return Err(Error::ZeroShots);
    }

    let state = simulate_search(&layout, n, iterations, options.max_width)?;
    let marginal = state.marginal(&layout.index_qubits())?;
    let solution_set: SolutionSet = brute_force_solutions(m, n);
    let solutions: Vec<Solution> = solution_set
        .pairs
        .iter()
        .map(|&(x, y)| Solution {
            state: layout.index_bitstring(x, y),
            x,
            y,
        })
        .collect();
    // display key of (x, y) is x·2^m + y
    let success_probability = solution_set
        .pairs
        .iter()
        .map(|&(x, y)| marginal.probability(((x << m) | y) as usize))
        .sum();
    let predicted = predicted_success(problem.space, problem.solutions, iterations)?;

    let (histogram, counts) = match options.shots {
        None => (marginal.to_map(), None),
        Some(shots) => {
            let counts = marginal.sample(shots, options.seed)?;
            let freq = counts
                .iter()
                .map(|(k, &c)| (k.clone(), c as f64 / shots as f64))
                .collect();
            (freq, Some(counts))
        }
    };

    Ok(GroverReport {
        problem,
        iterations,
        histogram,
        counts,
        success_probability,
        predicted_success: predicted,
        solutions,
    })
}
