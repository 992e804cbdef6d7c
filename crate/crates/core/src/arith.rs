//! Non-overwriting m-bit adder and the qubit layout it works on.
//!
//! Numbers are stored most significant bit first: `x_0` is the top bit of `x`
//! and `x_{m-1}` the bottom. The sum register has one extra bit, `s_0`, which
//! receives the final carry.

use crate::circuit::{Circuit, Gate, RegisterNames};
use crate::error::{Error, Result};

/// Assignment of register roles to qubit indices.
///
/// The default assignment places `x`, `y`, the carries, the sum and the oracle
/// qubit in that order, so for `m = 3` the oracle qubit is index 12.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    m: usize,
    x: Vec<usize>,
    y: Vec<usize>,
    carry: Vec<usize>,
    sum: Vec<usize>,
    oracle: usize,
}

/// Default layout for two `m`-bit inputs: `4m + 1` qubits.
pub fn build_layout(m: usize) -> Result<RegisterLayout> {
    RegisterLayout::new(m)
}

impl RegisterLayout {
    pub fn new(m: usize) -> Result<RegisterLayout> {
        if m == 0 {
            return Err(Error::ZeroBits);
        }
        // 4m + 1 qubits must index a u64 basis state
        if 4 * m + 1 > 63 {
            return Err(Error::Capacity {
                width: 4 * m + 1,
                max_width: 63,
                required_bytes: u128::MAX,
            });
        }
        Ok(RegisterLayout {
            m,
            x: (0..m).collect(),
            y: (m..2 * m).collect(),
            carry: (2 * m..3 * m - 1).collect(),
            sum: (3 * m - 1..4 * m).collect(),
            oracle: 4 * m,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x_qubits(&self) -> &[usize] {
        &self.x
    }

    pub fn y_qubits(&self) -> &[usize] {
        &self.y
    }

    pub fn carry_qubits(&self) -> &[usize] {
        &self.carry
    }

    pub fn sum_qubits(&self) -> &[usize] {
        &self.sum
    }

    pub fn oracle_qubit(&self) -> usize {
        self.oracle
    }

    pub fn total_width(&self) -> usize {
        4 * self.m + 1
    }

    /// The `2m` index qubits in display order `x_0 … x_{m-1} y_0 … y_{m-1}`.
    pub fn index_qubits(&self) -> Vec<usize> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    /// Carry and sum qubits, which every oracle must leave at zero.
    pub fn work_qubits(&self) -> Vec<usize> {
        self.carry.iter().chain(&self.sum).copied().collect()
    }

    /// Registers `x`, `y`, `a`, `s`, `q` for circuit export.
    pub fn register_names(&self) -> RegisterNames {
        RegisterNames::new()
            .with("x", self.x.clone())
            .with("y", self.y.clone())
            .with("a", self.carry.clone())
            .with("s", self.sum.clone())
            .with("q", vec![self.oracle])
    }

    /// Basis index with `x` and `y` loaded and every other qubit zero.
    pub fn basis_index(&self, x: u64, y: u64) -> u64 {
        write_register(0, &self.x, x) | write_register(0, &self.y, y)
    }

    pub fn read_x(&self, basis: u64) -> u64 {
        read_register(basis, &self.x)
    }

    pub fn read_y(&self, basis: u64) -> u64 {
        read_register(basis, &self.y)
    }

    pub fn read_sum(&self, basis: u64) -> u64 {
        read_register(basis, &self.sum)
    }

    /// Carry bits as an integer, `a_0` least significant.
    pub fn read_carries(&self, basis: u64) -> u64 {
        self.carry
            .iter()
            .enumerate()
            .fold(0, |acc, (t, &q)| acc | (((basis >> q) & 1) << t))
    }

    /// Display string for the index state `(x, y)`.
    pub fn index_bitstring(&self, x: u64, y: u64) -> String {
        format!("{}{}", encode_bits(x, self.m), encode_bits(y, self.m))
    }
}

/// Reads `qubits` (most significant first) out of a basis index.
pub fn read_register(basis: u64, qubits: &[usize]) -> u64 {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | ((basis >> q) & 1))
}

/// Writes `value` into `qubits` (most significant first) of a basis index.
pub fn write_register(basis: u64, qubits: &[usize], value: u64) -> u64 {
    let n = qubits.len();
    qubits.iter().enumerate().fold(basis, |acc, (i, &q)| {
        let bit = (value >> (n - 1 - i)) & 1;
        (acc & !(1 << q)) | (bit << q)
    })
}

/// `value` as `bits` binary digits, most significant first.
pub fn encode_bits(value: u64, bits: usize) -> String {
    (0..bits)
        .rev()
        .map(|i| if (value >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Checked conversion of `value` to a `bits`-wide bit list, most significant
/// first.
pub fn to_bits(value: u64, bits: usize) -> Result<Vec<bool>> {
    if bits < 64 && value >> bits != 0 {
        return Err(Error::TargetNotRepresentable {
            target: value,
            bits,
        });
    }
    Ok((0..bits).rev().map(|i| (value >> i) & 1 == 1).collect())
}

pub fn from_bits(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
}

/// The adder `|x, y, 0, 0⟩ → |x, y, carries, x + y⟩`.
///
/// Built one significance stage at a time, least significant first. Stage `t`
/// writes sum bit `s_{m-t}` with CNOTs from the two input bits and the incoming
/// carry, then forms the outgoing carry as the XOR of the three pairwise ANDs
/// with Toffolis. The first stage has no incoming carry; the last stage sends
/// its carry to `s_0`. A labelled barrier follows each stage (A, B, C, …).
/// Input registers are only ever used as controls. Carries are left set.
pub fn build_adder(layout: &RegisterLayout) -> Circuit {
    let m = layout.m;
    let mut c = Circuit::new(layout.total_width());
    let add = |c: &mut Circuit, g: Result<Gate>| {
        c.push(g.expect("adder gates use distinct qubits"))
            .expect("adder gates fit the layout");
    };
    for t in 0..m {
        let xb = layout.x[m - 1 - t];
        let yb = layout.y[m - 1 - t];
        let sb = layout.sum[m - t];
        let carry_out = if t == m - 1 { layout.sum[0] } else { layout.carry[t] };
        add(&mut c, Gate::cx(xb, sb));
        add(&mut c, Gate::cx(yb, sb));
        add(&mut c, Gate::ccx(xb, yb, carry_out));
        if t > 0 {
            let carry_in = layout.carry[t - 1];
            add(&mut c, Gate::cx(carry_in, sb));
            add(&mut c, Gate::ccx(xb, carry_in, carry_out));
            add(&mut c, Gate::ccx(yb, carry_in, carry_out));
        }
        c.barrier(stage_label(t));
    }
    c
}

fn stage_label(t: usize) -> String {
    if t < 26 {
        char::from(b'A' + t as u8).to_string()
    } else {
        format!("S{t}")
    }
}
