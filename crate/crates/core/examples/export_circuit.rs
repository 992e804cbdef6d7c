// Write a one-iteration search circuit as OpenQASM 3 and print its gate tally.

use dioph_grover::arith::build_layout;
use dioph_grover::circuit::export_text;
use dioph_grover::grover::build_search_circuit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layout = build_layout(3)?;
    let circuit = build_search_circuit(&layout, 5, 1)?;
    let text = export_text(&circuit, &layout.register_names());

    let path = std::env::temp_dir().join("dioph_grover_m3_n5_k1.qasm");
    std::fs::write(&path, &text)?;
    println!("wrote {} ({} lines)", path.display(), text.lines().count());

    let c = circuit.gate_counts();
    println!("{} gates: {} H, {} X, {} CX, {} CCX, {} MCX", c.total(), c.h, c.x, c.cx, c.ccx, c.mcx);
    for line in text.lines().take(12) {
        println!("  {line}");
    }
    Ok(())
}
