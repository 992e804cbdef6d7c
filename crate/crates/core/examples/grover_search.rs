// Search for every pair of 3-bit naturals with x + y = 5 using two Grover
// iterations.

use dioph_grover::grover::{run_grover, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_grover(3, 5, &RunOptions::default())?;
    println!(
        "m = 3, n = 5: {} solutions among {} pairs, {} iterations",
        report.problem.solutions, report.problem.space, report.iterations
    );
    println!("state   x  y  probability");
    for s in &report.solutions {
        println!("{}  {}  {}  {:.8}", s.state, s.x, s.y, report.histogram[&s.state]);
    }
    println!(
        "success {:.8} (closed form {:.8})",
        report.success_probability, report.predicted_success
    );
    assert!(report.success_probability > 0.999);
    Ok(())
}
