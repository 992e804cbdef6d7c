// Build a Bell pair and a three-qubit GHZ state, then read marginals and
// sample them.

use dioph_grover::circuit::{Circuit, Gate};
use dioph_grover::statevector::StateVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut ghz = Circuit::new(3);
    ghz.push(Gate::h(0))?;
    ghz.push(Gate::cx(0, 1)?)?;
    ghz.push(Gate::cx(1, 2)?)?;

    let mut state = StateVector::new(3)?;
    state.apply_circuit(&ghz)?;
    println!("amplitudes:");
    for (b, a) in state.amplitudes().iter().enumerate() {
        if a.norm_sqr() > 0.0 {
            println!("  |{b:03b}>  {:+.6}{:+.6}i", a.re, a.im);
        }
    }

    // qubit 0 listed first, so it is the leftmost character
    for (key, p) in state.marginal_probabilities(&[0, 1])? {
        println!("P(q0 q1 = {key}) = {p:.3}");
    }

    let counts = state.sample(&[0, 1, 2], 1000, 7)?;
    println!("1000 shots, seed 7: {counts:?}");
    assert_eq!(counts.values().sum::<u64>(), 1000);
    assert!(counts.keys().all(|k| k == "000" || k == "111"));
    Ok(())
}
