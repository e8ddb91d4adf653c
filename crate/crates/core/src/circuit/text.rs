//! Line-oriented circuit text: a few header lines, then one gate per line as
//! `KIND q0 q1 ... [theta=<angle>]`, with block-logical gates written as
//! `BLOCK q0 ... gate=<clifford> code=<name>`.

use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::clifford::CliffordKind;
use crate::code::Catalog;
use crate::error::{Error, Result};

use super::{Angle, GadgetCircuit, GadgetKind, Gate, GateKind};

pub fn gate_line(g: &Gate) -> String {
    let mut s = g.kind.name().to_string();
    for q in &g.qubits {
        write!(s, " {q}").unwrap();
    }
    match &g.kind {
        GateKind::ZTheta(t) | GateKind::CkZ { theta: t, .. } => write!(s, " theta={t}").unwrap(),
        GateKind::BlockLogical { op, code } => write!(s, " gate={op} code={}", code.name()).unwrap(),
        _ => {}
    }
    s
}

pub fn write_circuit(c: &GadgetCircuit) -> String {
    let mut s = String::new();
    writeln!(s, "gadget {}", c.label).unwrap();
    writeln!(s, "kind {}", c.kind.name()).unwrap();
    if let Some(claim) = &c.claimed {
        writeln!(s, "claim {claim}").unwrap();
    }
    writeln!(s, "register {}", c.register_size).unwrap();
    writeln!(s, "operands {}", c.operands).unwrap();
    for g in &c.gates {
        writeln!(s, "{}", gate_line(g)).unwrap();
    }
    s
}

fn parse_gate(line: &str, catalog: &Catalog) -> Result<Gate> {
    let bad = |m: &str| Error::Parse(format!("`{line}`: {m}"));
    let mut words = line.split_whitespace();
    let name = words.next().ok_or_else(|| bad("empty gate line"))?;
    let mut qubits: SmallVec<[usize; 3]> = SmallVec::new();
    let mut theta = None;
    let mut op = None;
    let mut code = None;
    for w in words {
        if let Some(v) = w.strip_prefix("theta=") {
            theta = Some(v.parse::<Angle>()?);
        } else if let Some(v) = w.strip_prefix("gate=") {
            op = Some(CliffordKind::from_name(v).ok_or_else(|| bad("unknown block gate"))?);
        } else if let Some(v) = w.strip_prefix("code=") {
            code = Some(catalog.get(v)?);
        } else {
            qubits.push(w.parse().map_err(|_| bad("bad qubit index"))?);
        }
    }
    let kind = match name {
        "ZTHETA" => GateKind::ZTheta(theta.ok_or_else(|| bad("missing theta"))?),
        "CKZ" => GateKind::CkZ {
            k: qubits.len().checked_sub(1).ok_or_else(|| bad("no qubits"))?,
            theta: theta.ok_or_else(|| bad("missing theta"))?,
        },
        "BLOCK" => GateKind::BlockLogical {
            op: op.ok_or_else(|| bad("missing gate="))?,
            code: code.ok_or_else(|| bad("missing code="))?,
        },
        other => GateKind::from_name(other)?,
    };
    Gate::new(kind, &qubits)
}

/// Parses [`write_circuit`] output; code names in `BLOCK` lines resolve
/// against `catalog`.
pub fn parse_circuit(text: &str, catalog: &Catalog) -> Result<GadgetCircuit> {
    let mut label = String::new();
    let mut kind = GadgetKind::Custom;
    let mut claimed = None;
    let mut register = None;
    let mut operands = 1;
    let mut gates = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        match head {
            "gadget" => label = rest.trim().to_string(),
            "kind" => kind = GadgetKind::from_name(rest.trim())?,
            "claim" => claimed = Some(GateKind::parse_spec(rest)?),
            "register" => {
                register = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad register line `{line}`")))?,
                )
            }
            "operands" => {
                operands = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad operands line `{line}`")))?
            }
            _ => gates.push(parse_gate(line, catalog)?),
        }
    }
    let register_size =
        register.ok_or_else(|| Error::Parse("circuit text lacks a `register` line".into()))?;
    let mut c = GadgetCircuit::new(label, register_size, operands, gates)?;
    c.kind = kind;
    c.claimed = claimed;
    Ok(c)
}
