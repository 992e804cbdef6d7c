// Draw shots from the final Grover state and compare frequencies with the
// exact probabilities. Same seed, same counts.

use dioph_grover::grover::{run_grover, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let shots = 20_000;
    let exact = run_grover(3, 5, &RunOptions::iterations(2))?;
    let opts = RunOptions {
        shots: Some(shots),
        seed: 42,
        ..RunOptions::iterations(2)
    };
    let sampled = run_grover(3, 5, &opts)?;
    let counts = sampled.counts.as_ref().expect("shots requested");

    let mut worst: f64 = 0.0;
    for (state, &p) in &exact.histogram {
        let n = counts.get(state).copied().unwrap_or(0);
        let f = n as f64 / shots as f64;
        worst = worst.max((f - p).abs());
        if n > 0 {
            println!("{state}  {n:>6}  {f:.4}  (exact {p:.4})");
        }
    }
    println!("largest |frequency - probability| = {worst:.4}");

    assert_eq!(run_grover(3, 5, &opts)?.counts, sampled.counts);
    Ok(())
}
