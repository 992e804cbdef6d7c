//! Dense statevector with in-place gate application.
//!
//! Basis index `b` stores qubit `q` in bit `(b >> q) & 1`. Display strings are
//! produced from an explicit qubit list, first listed qubit leftmost.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Largest width accepted unless overridden (2^30 amplitudes, 16 GiB).
pub const DEFAULT_MAX_WIDTH: usize = 30;

/// States at least this long are swept in parallel.
const PARALLEL_LEN: usize = 1 << 16;

/// Amplitudes per parallel task.
const TASK_LEN: usize = 1 << 13;

const BYTES_PER_AMPLITUDE: u128 = std::mem::size_of::<Complex64>() as u128;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `width` qubits, subject to [`DEFAULT_MAX_WIDTH`].
    pub fn new(width: usize) -> Result<StateVector> {
        StateVector::with_max_width(width, DEFAULT_MAX_WIDTH)
    }

    /// `|0…0⟩` on `width` qubits with an explicit capacity limit.
    pub fn with_max_width(width: usize, max_width: usize) -> Result<StateVector> {
        check_capacity(width, max_width)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << width];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { width, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(width: usize, index: usize) -> Result<StateVector> {
        let mut state = StateVector::new(width)?;
        if index >= state.amplitudes.len() {
            return Err(Error::BasisOutOfRange { index, width });
        }
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        state.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Builds a state from raw amplitudes, normalizing them. The length must be
    /// a power of two no smaller than 2 and the vector must not be all zeros.
    pub fn from_amplitudes(mut amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::ZeroWidth);
        }
        let width = len.trailing_zeros() as usize;
        check_capacity(width, DEFAULT_MAX_WIDTH)?;
        let norm = amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroWidth);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { width, amplitudes })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Σ |a_b|², which should stay at 1.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// |a_b|² for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(Complex64::norm_sqr).collect()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        if let Some(q) = gate.qubits().find(|&q| q >= self.width) {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                width: self.width,
            });
        }
        let target = gate.target();
        let mask = gate.control_mask() as usize;
        match gate.kind() {
            GateKind::H => sweep_pairs(&mut self.amplitudes, target, 0, |a, b| {
                let (lo, hi) = (*a, *b);
                *a = (lo + hi) * std::f64::consts::FRAC_1_SQRT_2;
                *b = (lo - hi) * std::f64::consts::FRAC_1_SQRT_2;
            }),
            GateKind::X | GateKind::CX | GateKind::CCX | GateKind::MCX => {
                sweep_pairs(&mut self.amplitudes, target, mask, std::mem::swap)
            }
        }
        Ok(())
    }

    /// Applies every gate of `circuit` in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.width() > self.width {
            return Err(Error::WidthMismatch {
                circuit: circuit.width(),
                state: self.width,
            });
        }
        circuit.gates().iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Probability distribution over the listed qubits.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Marginal> {
        check_qubit_list(qubits, self.width)?;
        let len = qubits.len();
        let mut probabilities = vec![0.0; 1 << len];
        for (b, amp) in self.amplitudes.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let key = qubits
                .iter()
                .fold(0usize, |k, &q| (k << 1) | ((b >> q) & 1));
            probabilities[key] += p;
        }
        Ok(Marginal {
            qubits: qubits.to_vec(),
            probabilities,
        })
    }

    /// Marginal keyed by bitstring, first listed qubit leftmost.
    pub fn marginal_probabilities(&self, qubits: &[usize]) -> Result<BTreeMap<String, f64>> {
        Ok(self.marginal(qubits)?.to_map())
    }

    /// Multinomial draw of `shots` outcomes over the listed qubits.
    pub fn sample(&self, qubits: &[usize], shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
        Ok(self.marginal(qubits)?.sample(shots, seed)?)
    }
}

fn check_capacity(width: usize, max_width: usize) -> Result<()> {
    if width == 0 {
        return Err(Error::ZeroWidth);
    }
    if width > max_width || width >= usize::BITS as usize {
        return Err(Error::Capacity {
            width,
            max_width,
            required_bytes: BYTES_PER_AMPLITUDE << width.min(120),
        });
    }
    Ok(())
}

fn check_qubit_list(qubits: &[usize], width: usize) -> Result<()> {
    for (i, &q) in qubits.iter().enumerate() {
        if q >= width {
            return Err(Error::QubitOutOfRange { qubit: q, width });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::DuplicateQubit { qubit: q });
        }
    }
    Ok(())
}

/// Calls `op(lo, hi)` on every amplitude pair differing only in the `target`
/// bit whose lower index has all bits of `mask` set.
fn sweep_pairs<F>(amps: &mut [Complex64], target: usize, mask: usize, op: F)
where
    F: Fn(&mut Complex64, &mut Complex64) + Sync,
{
    let half = 1usize << target;
    let block = half << 1;
    // controls above the target are constant across a block
    let high_mask = mask & !(block - 1);
    let low_mask = mask & (half - 1);
    let free = (half - 1) & !low_mask;
    let run = |base: usize, chunk: &mut [Complex64]| {
        if base & high_mask != high_mask {
            return;
        }
        let (lo, hi) = chunk.split_at_mut(half);
        if low_mask == 0 {
            lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| op(a, b));
            return;
        }
        // walk the subsets of the free low bits, controls held at one
        let mut sub = 0usize;
        loop {
            let j = sub | low_mask;
            op(&mut lo[j], &mut hi[j]);
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
    };
    if amps.len() < PARALLEL_LEN || rayon::current_num_threads() == 1 {
        amps.chunks_mut(block)
            .enumerate()
            .for_each(|(i, chunk)| run(i * block, chunk));
    } else if amps.len() / block >= 64 {
        amps.par_chunks_mut(block)
            .enumerate()
            .with_min_len((TASK_LEN / block).max(1))
            .for_each(|(i, chunk)| run(i * block, chunk));
    } else {
        for (i, chunk) in amps.chunks_mut(block).enumerate() {
            let base = i * block;
            let (lo, hi) = chunk.split_at_mut(half);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .enumerate()
                .with_min_len(TASK_LEN)
                .for_each(|(j, (a, b))| {
                    if (base + j) & mask == mask {
                        op(a, b);
                    }
                });
        }
    }
}

/// Exact distribution over an ordered qubit list. Entry `k` is the probability
/// of the bitstring `k` written MSB-first in `qubits.len()` bits.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal {
    qubits: Vec<usize>,
    probabilities: Vec<f64>,
}

impl Marginal {
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, key: usize) -> f64 {
        self.probabilities[key]
    }

    pub fn bitstring(&self, key: usize) -> String {
        bitstring(key, self.qubits.len())
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(k, &p)| (self.bitstring(k), p))
            .collect()
    }

    /// Multinomial sample by sequential conditional binomials over keys in
    /// ascending order. Only outcomes with nonzero counts are returned.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut remaining_shots = shots;
        let mut remaining_mass: f64 = self.probabilities.iter().sum();
        let last = self
            .probabilities
            .iter()
            .rposition(|&p| p > 0.0)
            .unwrap_or(0);
        let mut counts = BTreeMap::new();
        for (k, &p) in self.probabilities.iter().enumerate() {
            if remaining_shots == 0 {
                break;
            }
            let drawn = if k == last {
                remaining_shots
            } else if p <= 0.0 {
                0
            } else {
                let q = (p / remaining_mass).clamp(0.0, 1.0);
                Binomial::new(remaining_shots, q)
                    .expect("probability clamped to [0, 1]")
                    .sample(&mut rng)
            };
            remaining_mass -= p;
            remaining_shots -= drawn;
            if drawn > 0 {
                counts.insert(self.bitstring(k), drawn);
            }
        }
        Ok(counts)
    }
}

/// `value` written MSB-first in `len` binary digits.
pub fn bitstring(value: usize, len: usize) -> String {
    if len == 0 {
        return String::new();
    }
    format!("{value:0len$b}")
}
