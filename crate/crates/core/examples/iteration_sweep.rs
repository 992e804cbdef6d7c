// Success probability against iteration count: the simulated circuit next to
// sin²((2k+1)θ). Overshooting past the optimum rotates the state away again.

use dioph_grover::analysis::{optimal_iterations, solution_count};
use dioph_grover::grover::{run_grover, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (m, n) = (3, 5);
    let space = 1u64 << (2 * m);
    let best = optimal_iterations(space, solution_count(m, n))?;
    println!("m = {m}, n = {n}, optimal k = {best}");
    println!(" k  simulated     closed form");
    for k in 0..=8 {
        let r = run_grover(m, n, &RunOptions::iterations(k))?;
        let mark = if k == best { " <" } else { "" };
        println!("{k:>2}  {:.9}  {:.9}{mark}", r.success_probability, r.predicted_success);
        assert!((r.success_probability - r.predicted_success).abs() < 1e-9);
    }
    Ok(())
}
