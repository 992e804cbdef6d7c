//! Classical reference for the search: exhaustive solution lists, the
//! closed-form solution count, and the amplitude-amplification success curve.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::error::{Error, Result};

/// All `(x, y)` with `x + y = n` and both in `0..2^m`, sorted by `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub m: usize,
    pub n: u64,
    pub pairs: Vec<(u64, u64)>,
}

impl SolutionSet {
    pub fn count(&self) -> u64 {
        self.pairs.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: u64, y: u64) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }
}

/// Scans every one of the `2^{2m}` pairs.
pub fn brute_force_solutions(m: usize, n: u64) -> SolutionSet {
    let side = 1u64 << m;
    let mut pairs = Vec::new();
    for x in 0..side {
        for y in 0..side {
            if x + y == n {
                pairs.push((x, y));
            }
        }
    }
    SolutionSet { m, n, pairs }
}

/// Number of solutions without enumeration.
pub fn solution_count(m: usize, n: u64) -> u64 {
    let top = (1u64 << m) - 1;
    if n > 2 * top {
        return 0;
    }
    n.min(top) - n.saturating_sub(top) + 1
}

/// `sin²((2k+1)θ)` with `θ = asin(√(M/N))`.
pub fn predicted_success(space: u64, solutions: u64, iterations: usize) -> Result<f64> {
    if solutions == 0 || solutions > space {
        return Err(Error::SolutionCount { solutions, space });
    }
    if iterations == 0 {
        return Ok(solutions as f64 / space as f64);
    }
    let theta = (solutions as f64 / space as f64).sqrt().asin();
    Ok(((2 * iterations + 1) as f64 * theta).sin().powi(2))
}

/// `floor((π/4)·√(N/M))`, at least 1.
pub fn optimal_iterations(space: u64, solutions: u64) -> Result<usize> {
    if solutions == 0 || 2 * solutions >= space {
        return Err(Error::SolutionCount { solutions, space });
    }
    let k = (FRAC_PI_4 * (space as f64 / solutions as f64).sqrt()).floor() as usize;
    Ok(k.max(1))
}
