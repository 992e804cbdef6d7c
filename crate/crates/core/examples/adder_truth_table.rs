// Run the ripple-carry adder on every input pair for m = 2 and print the
// sum and carry registers.

use dioph_grover::arith::{build_adder, build_layout, encode_bits};
use dioph_grover::statevector::StateVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 2;
    let layout = build_layout(m)?;
    let adder = build_adder(&layout);
    let counts = adder.gate_counts();
    println!("m = {m}: {} qubits, {} CX + {} CCX", layout.total_width(), counts.cx, counts.ccx);
    println!(" x  y | sum  carries");

    for x in 0..1u64 << m {
        for y in 0..1u64 << m {
            let mut s = StateVector::basis(layout.total_width(), layout.basis_index(x, y) as usize)?;
            s.apply_circuit(&adder)?;
            let out = s.probabilities().iter().position(|&p| p > 0.5).unwrap() as u64;
            let sum = layout.read_sum(out);
            println!(
                "{} {} | {}  {}",
                encode_bits(x, m),
                encode_bits(y, m),
                encode_bits(sum, m + 1),
                encode_bits(layout.read_carries(out), m)
            );
            assert_eq!(sum, x + y);
        }
    }
    Ok(())
}
