//! Self-check suite run by `dioph-grover verify`.

use std::fmt;

use crate::analysis::{brute_force_solutions, predicted_success};
use crate::arith::{build_adder, build_layout, RegisterLayout};
use crate::circuit::Circuit;
use crate::error::Result;
use crate::grover::{build_diffuser, build_initializer, build_oracle_with_adder, SearchProblem};
use crate::statevector::StateVector;

/// Widest circuit whose adder is checked by statevector simulation; wider
/// adders are checked by classical basis-state evaluation.
const STATEVECTOR_ADDER_WIDTH: usize = 17;

const UNIT_TOL: f64 = 1e-10;
const CLOSED_FORM_TOL: f64 = 1e-9;
const MAX_CHECKED_ITERATIONS: usize = 8;

/// Deliberate corruption for testing that the suite catches faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Remove the adder gate at this position.
    DropAdderGate(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &'static str, outcome: std::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult { name, passed, detail });
    }
}

/// Runs every check for `x + y = n` on `m`-bit inputs.
pub fn verify(m: usize, n: u64, max_width: usize, fault: Option<Fault>) -> Result<VerifyReport> {
    let problem = SearchProblem::new(m, n)?;
    let layout = build_layout(m)?;
    // fail fast on capacity before any check allocates
    StateVector::with_max_width(layout.total_width(), max_width)?;

    let mut adder = build_adder(&layout);
    if let Some(Fault::DropAdderGate(i)) = fault {
        let mut gates = adder.gates().to_vec();
        if i < gates.len() {
            gates.remove(i);
        }
        adder = Circuit::new(layout.total_width());
        for g in gates {
            adder.push(g)?;
        }
    }

    let mut report = VerifyReport::default();
    report.record("adder_gate_counts", check_gate_counts(&layout, &adder));
    report.record("adder_exhaustive", check_adder(&layout, &adder, max_width)?);
    report.record("adder_adjoint_identity", check_adjoint(&layout, &adder));
    report.record("oracle_sign", check_oracle_sign(&layout, &adder, n, max_width)?);
    report.record("uncomputation", check_uncomputation(&layout, &adder, n, max_width)?);
    report.record("closed_form", check_closed_form(&layout, &adder, &problem, max_width)?);
    Ok(report)
}

fn check_gate_counts(layout: &RegisterLayout, adder: &Circuit) -> std::result::Result<String, String> {
    let m = layout.m();
    let counts = adder.gate_counts();
    let want = (3 * m - 1, 3 * m - 2);
    let inputs = layout.index_qubits();
    if adder.gates().iter().any(|g| inputs.contains(&g.target())) {
        return Err("an input qubit is targeted".into());
    }
    if (counts.cx, counts.ccx) == want && counts.total() == want.0 + want.1 {
        Ok(format!("{} CX, {} CCX", counts.cx, counts.ccx))
    } else {
        Err(format!(
            "{} CX, {} CCX (expected {}, {})",
            counts.cx, counts.ccx, want.0, want.1
        ))
    }
}

/// Ripple carries out of bit positions `0..m-1` of `x + y`, bit `t` for carry `a_t`.
fn ripple_carries(x: u64, y: u64, m: usize) -> u64 {
    (0..m.saturating_sub(1)).fold(0, |acc, t| {
        let low = (1u64 << (t + 1)) - 1;
        let carry = ((x & low) + (y & low)) >> (t + 1);
        acc | (carry << t)
    })
}

fn run_basis(circuit: &Circuit, width: usize, basis: u64, max_width: usize) -> Result<Option<u64>> {
    if width > STATEVECTOR_ADDER_WIDTH {
        return Ok(circuit.permute_basis(basis));
    }
    let mut state = StateVector::with_max_width(width, max_width)?;
    let mut init = Circuit::new(width);
    for q in 0..width {
        if (basis >> q) & 1 == 1 {
            init.push(crate::circuit::Gate::x(q))?;
        }
    }
    state.apply_circuit(&init)?;
    state.apply_circuit(circuit)?;
    let hit = state
        .amplitudes()
        .iter()
        .position(|a| (a.norm_sqr() - 1.0).abs() < UNIT_TOL);
    Ok(hit.map(|b| b as u64))
}

fn check_adder(
    layout: &RegisterLayout,
    adder: &Circuit,
    max_width: usize,
) -> Result<std::result::Result<String, String>> {
    let m = layout.m();
    let width = layout.total_width();
    let side = 1u64 << m;
    let mut wrong = 0u64;
    let mut first = None;
    for x in 0..side {
        for y in 0..side {
            let out = run_basis(adder, width, layout.basis_index(x, y), max_width)?;
            let ok = out.is_some_and(|b| {
                layout.read_x(b) == x
                    && layout.read_y(b) == y
                    && layout.read_sum(b) == x + y
                    && layout.read_carries(b) == ripple_carries(x, y, m)
                    && (b >> layout.oracle_qubit()) & 1 == 0
            });
            if !ok {
                wrong += 1;
                first.get_or_insert((x, y));
            }
        }
    }
    Ok(match first {
        None => Ok(format!("{} inputs", side * side)),
        Some((x, y)) => Err(format!("{wrong} of {} inputs wrong, first x={x} y={y}", side * side)),
    })
}

fn check_adjoint(layout: &RegisterLayout, adder: &Circuit) -> std::result::Result<String, String> {
    let mut round_trip = adder.clone();
    round_trip
        .append(&adder.adjoint())
        .map_err(|e| e.to_string())?;
    let side = 1u64 << layout.m();
    for x in 0..side {
        for y in 0..side {
            let b = layout.basis_index(x, y);
            if round_trip.permute_basis(b) != Some(b) {
                return Err(format!("not identity on x={x} y={y}"));
            }
        }
    }
    Ok(format!("{} inputs", side * side))
}

/// Applies the oracle to the uniform index state with the oracle qubit in
/// `|−⟩` and reads the sign of every index amplitude.
fn check_oracle_sign(
    layout: &RegisterLayout,
    adder: &Circuit,
    n: u64,
    max_width: usize,
) -> Result<std::result::Result<String, String>> {
    let m = layout.m();
    let oracle = build_oracle_with_adder(layout, adder, n)?;
    let mut state = StateVector::with_max_width(layout.total_width(), max_width)?;
    state.apply_circuit(&build_initializer(layout))?;
    state.apply_circuit(&oracle)?;
    let solutions = brute_force_solutions(m, n);
    let expected_mag = (1.0 / (1u64 << (2 * m)) as f64 / 2.0).sqrt();
    let side = 1u64 << m;
    let mut wrong = 0u64;
    for x in 0..side {
        for y in 0..side {
            let amp = state.amplitude(layout.basis_index(x, y) as usize);
            let want = if solutions.contains(x, y) { -1.0 } else { 1.0 };
            if (amp.re - want * expected_mag).abs() > UNIT_TOL || amp.im.abs() > UNIT_TOL {
                wrong += 1;
            }
        }
    }
    Ok(if wrong == 0 {
        Ok(format!("{} index states, {} marked", side * side, solutions.count()))
    } else {
        Err(format!("{wrong} of {} index states carry the wrong phase", side * side))
    })
}

fn check_uncomputation(
    layout: &RegisterLayout,
    adder: &Circuit,
    n: u64,
    max_width: usize,
) -> Result<std::result::Result<String, String>> {
    let mut iteration = build_oracle_with_adder(layout, adder, n)?;
    iteration.append(&build_diffuser(layout))?;
    let mut state = StateVector::with_max_width(layout.total_width(), max_width)?;
    state.apply_circuit(&build_initializer(layout))?;
    let work = layout.work_qubits();
    for k in 1..=3 {
        state.apply_circuit(&iteration)?;
        let clean = if work.is_empty() {
            1.0
        } else {
            state.marginal(&work)?.probability(0)
        };
        let oracle = state.marginal(&[layout.oracle_qubit()])?;
        if (clean - 1.0).abs() > UNIT_TOL
            || (oracle.probability(0) - 0.5).abs() > UNIT_TOL
            || (oracle.probability(1) - 0.5).abs() > UNIT_TOL
        {
            return Ok(Err(format!(
                "after {k} iterations work registers clear with p={clean}, oracle qubit p0={}",
                oracle.probability(0)
            )));
        }
    }
    Ok(Ok("work registers clear after 1..=3 iterations".into()))
}

fn check_closed_form(
    layout: &RegisterLayout,
    adder: &Circuit,
    problem: &SearchProblem,
    max_width: usize,
) -> Result<std::result::Result<String, String>> {
    if problem.solutions == 0 {
        return Ok(Ok("no solutions, nothing to amplify".into()));
    }
    let m = layout.m();
    let mut iteration = build_oracle_with_adder(layout, adder, problem.n)?;
    iteration.append(&build_diffuser(layout))?;
    let mut state = StateVector::with_max_width(layout.total_width(), max_width)?;
    state.apply_circuit(&build_initializer(layout))?;
    let solutions = brute_force_solutions(m, problem.n);
    let index = layout.index_qubits();
    let mut worst: f64 = 0.0;
    for k in 0..=MAX_CHECKED_ITERATIONS {
        if k > 0 {
            state.apply_circuit(&iteration)?;
        }
        let marginal = state.marginal(&index)?;
        let simulated: f64 = solutions
            .pairs
            .iter()
            .map(|&(x, y)| marginal.probability(((x << m) | y) as usize))
            .sum();
        let predicted = predicted_success(problem.space, problem.solutions, k)?;
        worst = worst.max((simulated - predicted).abs());
    }
    Ok(if worst < CLOSED_FORM_TOL {
        Ok(format!("k=0..={MAX_CHECKED_ITERATIONS}, max deviation {worst:.3e}"))
    } else {
        Err(format!("max deviation {worst:.3e} exceeds {CLOSED_FORM_TOL:e}"))
    })
}
