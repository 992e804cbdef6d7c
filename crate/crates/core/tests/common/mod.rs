#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dioph-grover"));
    cmd.env_remove("DIOPH_GROVER_MAX_WIDTH");
    cmd
}

pub fn run_bin(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

/// Declared qubits and gate tally of an exported listing.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Listing {
    pub qubits: usize,
    pub registers: BTreeMap<String, usize>,
    pub gates: BTreeMap<String, usize>,
}

impl Listing {
    pub fn total_gates(&self) -> usize {
        self.gates.values().sum()
    }
}

/// Minimal reader for the OpenQASM 3 subset the exporter writes. Every
/// operand must refer to a declared register slot.
pub fn parse_listing(text: &str) -> Result<Listing, String> {
    let mut lines = text.lines();
    if lines.next() != Some("OPENQASM 3.0;") {
        return Err("missing version header".into());
    }
    if lines.next() != Some("include \"stdgates.inc\";") {
        return Err("missing include".into());
    }
    let mut out = Listing::default();
    for line in lines {
        let stmt = line.split("//").next().unwrap().trim();
        let stmt = stmt
            .strip_suffix(';')
            .ok_or_else(|| format!("unterminated statement: {line}"))?;
        if let Some(decl) = stmt.strip_prefix("qubit[") {
            let (size, name) = decl.split_once("] ").ok_or("bad declaration")?;
            let size: usize = size.parse().map_err(|_| "bad size")?;
            out.qubits += size;
            out.registers.insert(name.to_string(), size);
            continue;
        }
        if stmt == "barrier" {
            continue;
        }
        let (op, operands) = if let Some(rest) = stmt.strip_prefix("ctrl(") {
            let (k, rest) = rest.split_once(") @ x ").ok_or("bad modifier")?;
            let k: usize = k.parse().map_err(|_| "bad control count")?;
            (format!("mcx{k}"), rest)
        } else {
            let (op, rest) = stmt.split_once(' ').ok_or("bad gate")?;
            (op.to_string(), rest)
        };
        let arity = operands.split(", ").count();
        let want = match op.as_str() {
            "h" | "x" => 1,
            "cx" => 2,
            "ccx" => 3,
            mcx => mcx[3..].parse::<usize>().unwrap() + 1,
        };
        if arity != want {
            return Err(format!("{op} with {arity} operands"));
        }
        for operand in operands.split(", ") {
            let (reg, idx) = operand
                .strip_suffix(']')
                .and_then(|o| o.split_once('['))
                .ok_or_else(|| format!("bad operand {operand}"))?;
            let idx: usize = idx.parse().map_err(|_| "bad index")?;
            match out.registers.get(reg) {
                Some(&size) if idx < size => {}
                _ => return Err(format!("undeclared operand {operand}")),
            }
        }
        let key = if op.starts_with("mcx") { "mcx".to_string() } else { op };
        *out.gates.entry(key).or_default() += 1;
    }
    Ok(out)
}
