//! Flat gate-level circuit representation.
//!
//! Every supported gate is a member of the NOT family or a Hadamard, so all of
//! them are self-inverse and the adjoint of a circuit is its gate list reversed.
//! Multi-controlled NOT is kept as a single gate rather than decomposed.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// The kinds of gate the simulator understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GateKind {
    H,
    X,
    CX,
    CCX,
    MCX,
}

impl GateKind {
    /// Kind matching a NOT with the given number of controls.
    pub fn for_controls(count: usize) -> GateKind {
        match count {
            0 => GateKind::X,
            1 => GateKind::CX,
            2 => GateKind::CCX,
            _ => GateKind::MCX,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::CX => "CX",
            GateKind::CCX => "CCX",
            GateKind::MCX => "MCX",
        }
    }

    fn accepts(self, controls: usize) -> bool {
        match self {
            GateKind::H | GateKind::X => controls == 0,
            GateKind::CX => controls == 1,
            GateKind::CCX => controls == 2,
            GateKind::MCX => controls >= 3,
        }
    }

    fn arity_text(self) -> &'static str {
        match self {
            GateKind::H | GateKind::X => "0",
            GateKind::CX => "1",
            GateKind::CCX => "2",
            GateKind::MCX => "at least 3",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One primitive gate: a kind, its ordered control qubits and a target qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    controls: Vec<usize>,
    target: usize,
}

impl Gate {
    /// Checked constructor. Controls must be distinct, must not include the
    /// target, and their number must agree with `kind`.
    pub fn new(kind: GateKind, controls: Vec<usize>, target: usize) -> Result<Gate> {
        if !kind.accepts(controls.len()) {
            return Err(Error::Arity {
                kind: kind.name(),
                expected: kind.arity_text(),
                got: controls.len(),
            });
        }
        for (i, &c) in controls.iter().enumerate() {
            if c == target || controls[..i].contains(&c) {
                return Err(Error::DuplicateQubit { qubit: c });
            }
        }
        Ok(Gate {
            kind,
            controls,
            target,
        })
    }

    pub fn h(target: usize) -> Gate {
        Gate {
            kind: GateKind::H,
            controls: Vec::new(),
            target,
        }
    }

    pub fn x(target: usize) -> Gate {
        Gate {
            kind: GateKind::X,
            controls: Vec::new(),
            target,
        }
    }

    pub fn cx(control: usize, target: usize) -> Result<Gate> {
        Gate::new(GateKind::CX, vec![control], target)
    }

    pub fn ccx(c0: usize, c1: usize, target: usize) -> Result<Gate> {
        Gate::new(GateKind::CCX, vec![c0, c1], target)
    }

    /// NOT controlled on every qubit in `controls`; the kind follows the
    /// number of controls (X, CX, CCX or MCX).
    pub fn controlled_x(controls: &[usize], target: usize) -> Result<Gate> {
        Gate::new(GateKind::for_controls(controls.len()), controls.to_vec(), target)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Controls followed by the target.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().copied().chain(std::iter::once(self.target))
    }

    /// Largest qubit index touched.
    pub fn max_qubit(&self) -> usize {
        self.qubits().max().unwrap_or(self.target)
    }

    /// Bit mask of the control qubits.
    pub fn control_mask(&self) -> u64 {
        self.controls.iter().fold(0, |m, &c| m | (1u64 << c))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for c in &self.controls {
            write!(f, "{c},")?;
        }
        write!(f, "{})", self.target)
    }
}

/// A labelled annotation placed before the gate at `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barrier {
    pub position: usize,
    pub label: String,
}

/// Ordered gate sequence over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    barriers: Vec<Barrier>,
}

impl Circuit {
    pub fn new(width: usize) -> Circuit {
        Circuit {
            width,
            gates: Vec::new(),
            barriers: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn barriers(&self) -> &[Barrier] {
        &self.barriers
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        if let Some(q) = gate.qubits().find(|&q| q >= self.width) {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                width: self.width,
            });
        }
        self.gates.push(gate);
        Ok(self)
    }

    /// Marks the current end of the gate list with a label. Has no effect on
    /// simulation.
    pub fn barrier(&mut self, label: impl Into<String>) -> &mut Self {
        self.barriers.push(Barrier {
            position: self.gates.len(),
            label: label.into(),
        });
        self
    }

    /// Appends every gate (and barrier) of `other`.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.width > self.width {
            return Err(Error::WidthMismatch {
                circuit: other.width,
                state: self.width,
            });
        }
        let offset = self.gates.len();
        self.gates.extend(other.gates.iter().cloned());
        self.barriers.extend(other.barriers.iter().map(|b| Barrier {
            position: b.position + offset,
            label: b.label.clone(),
        }));
        Ok(self)
    }

    /// Gate order reversed. Each gate is its own inverse, so nothing else
    /// changes. Barriers are mirrored onto the reversed list.
    pub fn adjoint(&self) -> Circuit {
        let n = self.gates.len();
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().cloned().collect(),
            barriers: self
                .barriers
                .iter()
                .rev()
                .map(|b| Barrier {
                    position: n - b.position,
                    label: b.label.clone(),
                })
                .collect(),
        }
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            *counts.get_mut(g.kind) += 1;
        }
        counts
    }

    /// Classical evaluation on a computational basis state. Returns `None` if
    /// the circuit contains a Hadamard, which does not map basis states to
    /// basis states.
    pub fn permute_basis(&self, mut basis: u64) -> Option<u64> {
        for g in &self.gates {
            match g.kind {
                GateKind::H => return None,
                _ => {
                    let mask = g.control_mask();
                    if basis & mask == mask {
                        basis ^= 1 << g.target;
                    }
                }
            }
        }
        Some(basis)
    }
}

/// Gate tally by kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct GateCounts {
    pub h: usize,
    pub x: usize,
    pub cx: usize,
    pub ccx: usize,
    pub mcx: usize,
}

impl GateCounts {
    pub fn get(&self, kind: GateKind) -> usize {
        match kind {
            GateKind::H => self.h,
            GateKind::X => self.x,
            GateKind::CX => self.cx,
            GateKind::CCX => self.ccx,
            GateKind::MCX => self.mcx,
        }
    }

    fn get_mut(&mut self, kind: GateKind) -> &mut usize {
        match kind {
            GateKind::H => &mut self.h,
            GateKind::X => &mut self.x,
            GateKind::CX => &mut self.cx,
            GateKind::CCX => &mut self.ccx,
            GateKind::MCX => &mut self.mcx,
        }
    }

    pub fn total(&self) -> usize {
        self.h + self.x + self.cx + self.ccx + self.mcx
    }
}

/// Names for groups of qubits, used when printing a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RegisterNames {
    registers: Vec<(String, Vec<usize>)>,
}

impl RegisterNames {
    pub fn new() -> RegisterNames {
        RegisterNames::default()
    }

    /// A single register `q` covering qubits `0..width`.
    pub fn flat(width: usize) -> RegisterNames {
        RegisterNames::new().with("q", (0..width).collect())
    }

    pub fn with(mut self, name: impl Into<String>, qubits: Vec<usize>) -> RegisterNames {
        self.registers.push((name.into(), qubits));
        self
    }

    pub fn registers(&self) -> &[(String, Vec<usize>)] {
        &self.registers
    }
}

/// Renders the circuit as an OpenQASM 3 listing, one statement per line.
///
/// Registers come from `names`; empty registers are not declared, and any
/// qubit no register covers is placed in an extra register `r`. Multi-controlled
/// NOTs are written with the `ctrl(k) @ x` modifier. Barriers become bare
/// `barrier;` statements followed by their label as a comment.
pub fn export_text(circuit: &Circuit, names: &RegisterNames) -> String {
    let width = circuit.width();
    let mut labels: Vec<Option<String>> = vec![None; width];
    let mut decls: Vec<(String, usize)> = Vec::new();
    for (name, qubits) in names.registers() {
        let mut size = 0;
        for &q in qubits {
            if q < width && labels[q].is_none() {
                labels[q] = Some(format!("{name}[{size}]"));
                size += 1;
            }
        }
        if size > 0 {
            decls.push((name.clone(), size));
        }
    }
    let mut extra = 0;
    for label in labels.iter_mut().filter(|l| l.is_none()) {
        *label = Some(format!("r[{extra}]"));
        extra += 1;
    }
    if extra > 0 {
        decls.push(("r".to_string(), extra));
    }
    let labels: Vec<String> = labels.into_iter().map(Option::unwrap_or_default).collect();

    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\n");
    out.push_str("include \"stdgates.inc\";\n");
    for (name, size) in &decls {
        let _ = writeln!(out, "qubit[{size}] {name};");
    }
    let mut barriers = circuit.barriers().iter().peekable();
    for (i, gate) in circuit.gates().iter().enumerate() {
        while let Some(b) = barriers.next_if(|b| b.position == i) {
            let _ = writeln!(out, "barrier; // {}", b.label);
        }
        let operands: Vec<&str> = gate.qubits().map(|q| labels[q].as_str()).collect();
        let op = match gate.kind() {
            GateKind::H => "h".to_string(),
            GateKind::X => "x".to_string(),
            GateKind::CX => "cx".to_string(),
            GateKind::CCX => "ccx".to_string(),
            GateKind::MCX => format!("ctrl({}) @ x", gate.controls().len()),
        };
        let _ = writeln!(out, "{op} {};", operands.join(", "));
    }
    for b in barriers {
        let _ = writeln!(out, "barrier; // {}", b.label);
    }
    out
}
