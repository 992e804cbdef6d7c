// Apply the oracle to the uniform superposition and list which index states
// had their sign flipped. Work qubits come back clean.

use dioph_grover::arith::build_layout;
use dioph_grover::grover::{build_initializer, build_oracle};
use dioph_grover::statevector::StateVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layout = build_layout(2)?;
    for n in 0..=6 {
        let mut s = StateVector::new(layout.total_width())?;
        s.apply_circuit(&build_initializer(&layout))?;
        s.apply_circuit(&build_oracle(&layout, n)?)?;

        let mut flipped = Vec::new();
        for x in 0..4 {
            for y in 0..4 {
                if s.amplitude(layout.basis_index(x, y) as usize).re < 0.0 {
                    flipped.push(format!("{x}+{y}"));
                }
            }
        }
        let clean = s.marginal(&layout.work_qubits())?.probability(0);
        println!("n = {n}: flipped [{}], work clean with p = {clean:.12}", flipped.join(", "));
    }
    Ok(())
}
