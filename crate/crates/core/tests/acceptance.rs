//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use dioph_grover::analysis::{brute_force_solutions, optimal_iterations};
use dioph_grover::arith::{build_adder, build_layout};
use dioph_grover::circuit::GateKind;
use dioph_grover::cli::ReportDocument;
use dioph_grover::grover::{build_iteration, build_oracle, build_search_circuit, run_grover, simulate_search, RunOptions};
use dioph_grover::statevector::{StateVector, DEFAULT_MAX_WIDTH};
use dioph_grover::circuit::{export_text, Gate};

type Outcome = Result<String, String>;

const SUM_FIVE: [(&str, u64, u64); 6] = [
    ("101000", 5, 0),
    ("001100", 1, 4),
    ("011010", 3, 2),
    ("100001", 4, 1),
    ("000101", 0, 5),
    ("010011", 2, 3),
];

const EXACT_TOL: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-10;

/// sin²((2k+1)θ), sin²θ = M/N, evaluated here rather than through the library.
fn closed_form(space: u64, solutions: u64, k: usize) -> f64 {
    let theta = (solutions as f64 / space as f64).sqrt().asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_adder_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for m in 1..=4 {
        let layout = build_layout(m).map_err(|e| e.to_string())?;
        let adder = build_adder(&layout);
        for x in 0..1u64 << m {
            for y in 0..1u64 << m {
                let b = layout.basis_index(x, y) as usize;
                let mut s = StateVector::basis(layout.total_width(), b).map_err(|e| e.to_string())?;
                s.apply_circuit(&adder).map_err(|e| e.to_string())?;
                let out = s
                    .amplitudes()
                    .iter()
                    .position(|a| a.re == 1.0 && a.im == 0.0)
                    .ok_or(format!("m={m} {x}+{y}: not a basis state"))? as u64;
                ensure(
                    layout.read_x(out) == x && layout.read_y(out) == y && layout.read_sum(out) == x + y,
                    || format!("m={m} {x}+{y}: got sum {}", layout.read_sum(out)),
                )?;
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(cases == 4 + 16 + 64 + 256, || format!("{cases} cases"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} cases exact in {elapsed:.2?}"))
}

fn c2_gate_counts() -> Outcome {
    for m in 1..=8 {
        let c = build_adder(&build_layout(m).map_err(|e| e.to_string())?).gate_counts();
        ensure(c.cx == 3 * m - 1 && c.ccx == 3 * m - 2 && c.total() == 6 * m - 3, || {
            format!("m={m}: {} CX, {} CCX", c.cx, c.ccx)
        })?;
    }
    let c = build_adder(&build_layout(3).unwrap()).gate_counts();
    ensure((c.cx, c.ccx) == (8, 7), || format!("m=3: {} CX, {} CCX", c.cx, c.ccx))?;
    Ok("m=1..8 follow 3m-1 CX / 3m-2 CCX; m=3 has 8 and 7".into())
}

fn c3_sum_five_search() -> Outcome {
    let start = Instant::now();
    let r = run_grover(3, 5, &RunOptions::iterations(2)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut listed: Vec<(String, u64, u64)> = r.solutions.iter().map(|s| (s.state.clone(), s.x, s.y)).collect();
    listed.sort();
    let mut want: Vec<(String, u64, u64)> = SUM_FIVE.iter().map(|&(s, x, y)| (s.to_string(), x, y)).collect();
    want.sort();
    ensure(listed == want, || format!("solutions {listed:?}"))?;
    let probs: Vec<f64> = SUM_FIVE.iter().map(|r0| r.histogram[r0.0]).collect();
    let total: f64 = probs.iter().sum();
    ensure(total >= 0.999, || format!("total {total}"))?;
    let spread = probs.iter().cloned().fold(f64::MIN, f64::max) - probs.iter().cloned().fold(f64::MAX, f64::min);
    ensure(spread < 1e-6, || format!("spread {spread}"))?;
    let worst_other = r
        .histogram
        .iter()
        .filter(|(k, _)| !SUM_FIVE.iter().any(|t| t.0 == k.as_str()))
        .map(|(_, &p)| p)
        .fold(0.0, f64::max);
    ensure(worst_other < 1e-4, || format!("non-solution probability {worst_other}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "six states, total {total:.6}, each {:.5}, largest other {worst_other:.2e}, {elapsed:.2?}",
        probs[0]
    ))
}

fn c4_one_iteration() -> Outcome {
    let r = run_grover(3, 5, &RunOptions::iterations(1)).map_err(|e| e.to_string())?;
    let want = closed_form(64, 6, 1);
    let diff = (r.success_probability - want).abs();
    ensure(diff < EXACT_TOL, || format!("{} vs {want}", r.success_probability))?;
    Ok(format!("{:.10} vs closed form {want:.10}", r.success_probability))
}

fn c5_six_iterations() -> Outcome {
    let k1 = run_grover(3, 5, &RunOptions::iterations(1)).map_err(|e| e.to_string())?;
    let k6 = run_grover(3, 5, &RunOptions::iterations(6)).map_err(|e| e.to_string())?;
    let gap = (k1.success_probability - k6.success_probability).abs();
    ensure(gap < 0.03, || format!("k=1 {} k=6 {}", k1.success_probability, k6.success_probability))?;
    Ok(format!(
        "k=6 {:.4} vs k=1 {:.4}, gap {gap:.4}",
        k6.success_probability, k1.success_probability
    ))
}

fn c6_sweep() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for m in [2usize, 3] {
        let space = 1u64 << (2 * m);
        let layout = build_layout(m).unwrap();
        let index = layout.index_qubits();
        for n in 0..(1u64 << (m + 1)) {
            let set = brute_force_solutions(m, n);
            let count = set.count();
            if count == 0 || 2 * count >= space {
                continue;
            }
            let iteration = build_iteration(&layout, n).map_err(|e| e.to_string())?;
            let mut s = simulate_search(&layout, n, 0, DEFAULT_MAX_WIDTH).map_err(|e| e.to_string())?;
            for k in 0..=8 {
                if k > 0 {
                    s.apply_circuit(&iteration).map_err(|e| e.to_string())?;
                }
                let marg = s.marginal(&index).unwrap();
                let sim: f64 = set.pairs.iter().map(|&(x, y)| marg.probability(((x << m) | y) as usize)).sum();
                let diff = (sim - closed_form(space, count, k)).abs();
                worst = worst.max(diff);
                ensure(diff < EXACT_TOL, || format!("m={m} n={n} k={k}: off by {diff:e}"))?;
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} cases, max deviation {worst:.2e}, {elapsed:.2?}"))
}

fn c7_oracle_sign() -> Outcome {
    let layout = build_layout(3).unwrap();
    let oq = layout.oracle_qubit();
    let mut marked = 0;
    for n in 0..=14 {
        let oracle = build_oracle(&layout, n).map_err(|e| e.to_string())?;
        let set = brute_force_solutions(3, n);
        for x in 0..8 {
            for y in 0..8 {
                let b = layout.basis_index(x, y) as usize;
                let mut s = StateVector::basis(13, b).unwrap();
                s.apply_gate(&Gate::x(oq)).unwrap();
                s.apply_gate(&Gate::h(oq)).unwrap();
                let before = s.amplitude(b);
                s.apply_circuit(&oracle).unwrap();
                let ratio = s.amplitude(b) / before;
                let sign = if set.contains(x, y) { -1.0 } else { 1.0 };
                ensure(ratio.re == sign && ratio.im == 0.0, || {
                    format!("n={n} x={x} y={y}: phase {ratio}")
                })?;
                if sign < 0.0 {
                    marked += 1;
                }
            }
        }
    }
    Ok(format!("15 targets x 64 states exact, {marked} marked in total"))
}

fn c8_uncomputation() -> Outcome {
    let layout = build_layout(3).unwrap();
    let work = layout.work_qubits();
    let mut lines = Vec::new();
    for k in 1..=3 {
        let s = simulate_search(&layout, 5, k, DEFAULT_MAX_WIDTH).map_err(|e| e.to_string())?;
        let clear = s.marginal(&work).unwrap().probability(0);
        let q = s.marginal(&[layout.oracle_qubit()]).unwrap();
        ensure((clear - 1.0).abs() < UNIT_TOL, || format!("k={k}: work clear p={clear}"))?;
        ensure(
            (q.probability(0) - 0.5).abs() < UNIT_TOL && (q.probability(1) - 0.5).abs() < UNIT_TOL,
            || format!("k={k}: oracle qubit {:?}", q.probabilities()),
        )?;
        lines.push(format!("k={k} |1-p|={:.1e}", (clear - 1.0).abs()));
    }
    Ok(lines.join(", "))
}

fn c9_auto_schedule() -> Outcome {
    let k = optimal_iterations(64, 6).map_err(|e| e.to_string())?;
    ensure(k == 2, || format!("got {k}"))?;
    let r = run_grover(3, 5, &RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.iterations == 2, || format!("run used {}", r.iterations))?;
    Ok("optimal_iterations(64, 6) = 2".into())
}

fn c10_sampling() -> Outcome {
    let shots = 100_000;
    let exact = run_grover(3, 5, &RunOptions::iterations(2)).map_err(|e| e.to_string())?;
    let opts = RunOptions {
        shots: Some(shots),
        seed: 20_240_601,
        ..RunOptions::iterations(2)
    };
    let a = run_grover(3, 5, &opts).map_err(|e| e.to_string())?;
    let b = run_grover(3, 5, &opts).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (state, &p) in &exact.histogram {
        let f = a.histogram.get(state).copied().unwrap_or(0.0);
        worst = worst.max((f - p).abs());
    }
    ensure(worst < 0.01, || format!("max frequency error {worst}"))?;
    let ja = ReportDocument::from_report(&a, shots, opts.seed, 0).to_json();
    let jb = ReportDocument::from_report(&b, shots, opts.seed, 0).to_json();
    ensure(ja == jb, || "reruns differ".into())?;
    Ok(format!("max |freq - p| = {worst:.4} over 64 states; rerun identical"))
}

fn c11_determinism_and_export() -> Outcome {
    let args = ["--bits", "3", "--target", "5", "--iterations", "1"];
    let a = common::run_bin(&args);
    let b = common::run_bin(&args);
    ensure(a.status.success(), || String::from_utf8_lossy(&a.stderr).into_owned())?;
    ensure(a.stdout == b.stdout, || "JSON output differs between runs".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("k1.qasm");
    let path_str = path.to_str().unwrap();
    let out = common::run_bin(&["--bits", "3", "--target", "5", "--iterations", "1", "--export-circuit", path_str]);
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let listing = common::parse_listing(&text)?;

    let layout = build_layout(3).unwrap();
    let circuit = build_search_circuit(&layout, 5, 1).map_err(|e| e.to_string())?;
    let counts = circuit.gate_counts();
    ensure(text == export_text(&circuit, &layout.register_names()), || "export differs from library text".into())?;
    ensure(listing.qubits == 13, || format!("{} qubits declared", listing.qubits))?;
    let tally = |k: &str| listing.gates.get(k).copied().unwrap_or(0);
    let matches = [
        (tally("h"), counts.get(GateKind::H)),
        (tally("x"), counts.get(GateKind::X)),
        (tally("cx"), counts.get(GateKind::CX)),
        (tally("ccx"), counts.get(GateKind::CCX)),
        (tally("mcx"), counts.get(GateKind::MCX)),
    ];
    ensure(matches.iter().all(|(a, b)| a == b) && listing.total_gates() == counts.total(), || {
        format!("listing {:?} vs counts {counts:?}", listing.gates)
    })?;
    Ok(format!("JSON byte-identical; 13 qubits, {} gates match gate_counts", counts.total()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("adder exhaustive correctness", c1_adder_exhaustive),
        ("gate-count law", c2_gate_counts),
        ("m=3, n=5 search at k=2", c3_sum_five_search),
        ("one-iteration closed form", c4_one_iteration),
        ("six-iteration recurrence", c5_six_iterations),
        ("closed-form agreement sweep", c6_sweep),
        ("oracle sign check", c7_oracle_sign),
        ("uncomputation", c8_uncomputation),
        ("auto-scheduling", c9_auto_schedule),
        ("sampling soundness", c10_sampling),
        ("determinism and export", c11_determinism_and_export),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
