use std::collections::BTreeSet;
use std::sync::Arc;

use crate::clifford::{conjugate_in_place, CliffordKind};
use crate::code::{StabilizerCode, TransversalRule, TransversalTarget};
use crate::concat::{Assignment, ConcatenationLayout};
use crate::error::{Error, Result};
use crate::pauli::{Letter, Phase};

use super::{Angle, Gate, GateKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Staircase,
    Transversal,
    Custom,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Staircase => "staircase",
            GadgetKind::Transversal => "transversal",
            GadgetKind::Custom => "custom",
        }
    }

    pub fn from_name(s: &str) -> Result<GadgetKind> {
        match s {
            "staircase" => Ok(GadgetKind::Staircase),
            "transversal" => Ok(GadgetKind::Transversal),
            "custom" => Ok(GadgetKind::Custom),
            _ => Err(Error::Parse(format!("unknown gadget kind `{s}`"))),
        }
    }
}

/// The outer-level circuit a lowered gadget was expanded from.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterCircuit {
    pub code: Arc<StabilizerCode>,
    pub gates: Vec<Gate>,
}

/// A physical circuit on `operands` equal blocks of `register_size /
/// operands` qubits each. Location `i` is gate `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetCircuit {
    pub label: String,
    pub kind: GadgetKind,
    pub claimed: Option<GateKind>,
    pub register_size: usize,
    pub operands: usize,
    pub gates: Vec<Gate>,
    pub outer: Option<OuterCircuit>,
}

impl GadgetCircuit {
    pub fn new(
        label: impl Into<String>,
        register_size: usize,
        operands: usize,
        gates: Vec<Gate>,
    ) -> Result<GadgetCircuit> {
        if operands == 0 || register_size % operands != 0 {
            return Err(Error::Parse(format!(
                "register of {register_size} qubits cannot hold {operands} equal blocks"
            )));
        }
        for g in &gates {
            if let Some(&q) = g.qubits.iter().find(|&&q| q >= register_size) {
                return Err(Error::Dimension {
                    expected: register_size,
                    found: q + 1,
                });
            }
        }
        Ok(GadgetCircuit {
            label: label.into(),
            kind: GadgetKind::Custom,
            claimed: None,
            register_size,
            operands,
            gates,
            outer: None,
        })
    }

    pub fn block_size(&self) -> usize {
        self.register_size / self.operands
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Every qubit some gate acts on, ascending.
    pub fn touched(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.gates.iter().flat_map(|g| g.qubits.iter().copied()).collect();
        set.into_iter().collect()
    }

    /// Touched qubits of operand block `b`, relative to the block start.
    pub fn touched_in_block(&self, b: usize) -> Vec<usize> {
        let n = self.block_size();
        self.touched()
            .into_iter()
            .filter(|q| q / n == b)
            .map(|q| q - b * n)
            .collect()
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_clifford())
    }

    /// Gate-name multiset as sorted `(name, count)` pairs.
    pub fn gate_counts(&self) -> Vec<(String, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for g in &self.gates {
            *m.entry(g.kind.label()).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    /// The same circuit with the gates from `from` onwards dropped.
    pub fn truncated(&self, from: usize, label: impl Into<String>) -> GadgetCircuit {
        GadgetCircuit {
            label: label.into(),
            kind: GadgetKind::Custom,
            claimed: None,
            gates: self.gates[..from.min(self.gates.len())].to_vec(),
            outer: None,
            ..self.clone()
        }
    }
}

/// Reversed gate order with every gate inverted.
pub fn invert(c: &GadgetCircuit) -> GadgetCircuit {
    GadgetCircuit {
        label: format!("inverse of {}", c.label),
        kind: c.kind,
        claimed: c.claimed.as_ref().map(GateKind::inverse),
        register_size: c.register_size,
        operands: c.operands,
        gates: c.gates.iter().rev().map(Gate::inverse).collect(),
        outer: c.outer.as_ref().map(|o| OuterCircuit {
            code: o.code.clone(),
            gates: o.gates.iter().rev().map(Gate::inverse).collect(),
        }),
    }
}

/// The per-block part of a staircase: local Cliffords normalizing a
/// minimum-weight logical-Z representative to `+Z…Z`, and its support.
#[derive(Clone, Debug, PartialEq)]
pub struct StaircasePlan {
    pub representative: crate::pauli::PauliOperator,
    pub support: Vec<usize>,
    /// Local Cliffords in time order.
    pub local_cliffords: Vec<(usize, GateKind)>,
    /// Last qubit of the staircase, carrying the logical parity.
    pub target: usize,
}

impl StaircasePlan {
    /// Gates of one block's LC followed by its CNOT staircase.
    fn compute_gates(&self, offset: usize) -> Vec<Gate> {
        let mut out: Vec<Gate> = self
            .local_cliffords
            .iter()
            .map(|(q, k)| Gate::single(k.clone(), offset + q))
            .collect();
        for w in self.support.windows(2) {
            out.push(Gate::new(GateKind::Cnot, &[offset + w[0], offset + w[1]]).expect("distinct"));
        }
        out
    }
}

/// X components are rotated by `K` (`K X K† = Z`), Y components by `K†`
/// (`K† Y K = Z`); a leftover `−1` is absorbed by `X` on the first support qubit.
pub fn staircase_plan(code: &StabilizerCode) -> Result<StaircasePlan> {
    let rep = code.min_weight_logical(Letter::Z)?;
    let support = rep.support();
    let mut lc = Vec::new();
    let mut p = rep.clone();
    for &q in &support {
        let kind = match rep.letter(q) {
            Letter::X => Some(CliffordKind::K),
            Letter::Y => Some(CliffordKind::KDagger),
            _ => None,
        };
        if let Some(kind) = kind {
            conjugate_in_place(&mut p, kind, &[q]);
            lc.push((q, GateKind::from(kind)));
        }
    }
    if p.phase() == Phase::MINUS_ONE {
        conjugate_in_place(&mut p, CliffordKind::X, &[support[0]]);
        lc.push((support[0], GateKind::X));
    }
    if let Some(&q) = support.iter().find(|&&q| p.letter(q) != Letter::Z) {
        return Err(Error::Synthesis(format!(
            "{}: qubit {q} of {rep} resists normalization to Z",
            code.name()
        )));
    }
    if p.phase() != Phase::ONE {
        return Err(Error::Synthesis(format!(
            "{}: {rep} normalizes to {p}, not a positive Z string",
            code.name()
        )));
    }
    let target = *support.last().ok_or_else(|| {
        Error::Synthesis(format!("{}: empty logical representative", code.name()))
    })?;
    Ok(StaircasePlan {
        representative: rep,
        support,
        local_cliffords: lc,
        target,
    })
}

fn staircase_gates(plan: &StaircasePlan, n: usize, k: usize, theta: Angle) -> Vec<Gate> {
    let mut pre = Vec::new();
    for b in 0..=k {
        pre.extend(plan.compute_gates(b * n));
    }
    let targets: Vec<usize> = (0..=k).map(|b| b * n + plan.target).collect();
    let mut gates = pre.clone();
    gates.push(Gate::new(GateKind::ckz(k, theta), &targets).expect("distinct targets"));
    gates.extend(pre.iter().rev().map(Gate::inverse));
    gates
}

/// Staircase gadget for logical `C^kZ(θ)` on `k + 1` blocks of `code`.
pub fn staircase_gadget(code: &Arc<StabilizerCode>, k: usize, theta: Angle) -> Result<GadgetCircuit> {
    let plan = staircase_plan(code)?;
    let n = code.n();
    let claim = GateKind::ckz(k, theta);
    let mut c = GadgetCircuit::new(
        format!("{claim} staircase on {}", code.name()),
        (k + 1) * n,
        k + 1,
        staircase_gates(&plan, n, k, theta),
    )?;
    c.kind = GadgetKind::Staircase;
    c.claimed = Some(claim);
    Ok(c)
}

fn expand_rule(rule: &TransversalRule, n: usize, offsets: &[usize]) -> Result<Vec<Gate>> {
    let mut out = Vec::new();
    for op in &rule.ops {
        match op.target {
            TransversalTarget::Each => {
                for j in 0..n {
                    let qs: Vec<usize> = offsets.iter().map(|o| o + j).collect();
                    out.push(Gate::new(op.kind.clone(), &qs)?);
                }
            }
            TransversalTarget::Qubit(q) => {
                if op.kind.arity() != 1 || q >= n {
                    return Err(Error::InvalidCode(format!(
                        "transversal op {} at {q} is not a single-qubit fixup",
                        op.kind
                    )));
                }
                out.push(Gate::single(op.kind.clone(), offsets[0] + q));
            }
        }
    }
    Ok(out)
}

/// Bitwise gadget for a gate the catalog declares transversal in `code`.
pub fn transversal_gadget(code: &Arc<StabilizerCode>, gate: &GateKind) -> Result<GadgetCircuit> {
    let rule = code.transversal_rule(gate).ok_or_else(|| {
        Error::UnsupportedGate(format!("{gate} is not declared transversal in {}", code.name()))
    })?;
    let n = code.n();
    let m = gate.arity();
    let offsets: Vec<usize> = (0..m).map(|b| b * n).collect();
    let mut c = GadgetCircuit::new(
        format!("{gate} transversal on {}", code.name()),
        m * n,
        m,
        expand_rule(rule, n, &offsets)?,
    )?;
    c.kind = GadgetKind::Transversal;
    c.claimed = Some(gate.clone());
    Ok(c)
}

/// Lowers one outer-level gate on `m` copies of `layout` to physical gates.
fn lower_gate(
    layout: &ConcatenationLayout,
    g: &Gate,
    allow_block_logical: bool,
    out: &mut Vec<Gate>,
) -> Result<()> {
    let n_out = layout.outer().n();
    let total = layout.total_n();
    let pos: Vec<(usize, usize)> = g.qubits.iter().map(|&u| (u / n_out, u % n_out)).collect();
    let first = &layout.assignment()[pos[0].1];
    for &(_, q) in &pos[1..] {
        if layout.assignment()[q] != *first {
            return Err(Error::Refused(format!(
                "{}: {} couples outer qubits with different encodings",
                layout.name(),
                g.kind
            )));
        }
    }
    let offsets: Vec<usize> = pos
        .iter()
        .map(|&(b, q)| b * total + layout.offsets()[q])
        .collect();
    match first {
        Assignment::Bare => out.push(Gate::new(g.kind.clone(), &offsets)?),
        Assignment::Encoded(inner) => {
            if let Some(rule) = inner.transversal_rule(&g.kind) {
                out.extend(expand_rule(rule, inner.n(), &offsets)?);
            } else if let (true, Some(op), 1) = (allow_block_logical, g.kind.clifford_form(), g.kind.arity()) {
                let qs: Vec<usize> = (0..inner.n()).map(|j| offsets[0] + j).collect();
                out.push(Gate::new(
                    GateKind::BlockLogical {
                        op,
                        code: inner.clone(),
                    },
                    &qs,
                )?);
            } else {
                return Err(Error::Refused(format!(
                    "{}: the gadget needs {} on encoded outer qubit {}, but {} is not transversal in {}; \
                     this violates the second necessary condition for code concatenation",
                    layout.name(),
                    g.kind,
                    pos[0].1,
                    g.kind,
                    inner.name()
                )));
            }
        }
    }
    Ok(())
}

/// Physical gadget realizing logical `gate` on `gate.arity()` copies of
/// `layout`. Gates transversal in the outer code expand bitwise; the
/// remaining `C^kZ(θ)` family goes through the outer staircase. Every
/// outer-level gate on an encoded qubit must then be transversal in its inner
/// code, except that outer-transversal single-qubit Cliffords fall back to
/// an ideal block-logical gate.
pub fn logical_gadget_for(layout: &ConcatenationLayout, gate: &GateKind) -> Result<GadgetCircuit> {
    let outer = layout.outer();
    let n_out = outer.n();
    let m = gate.arity();
    let (outer_gates, kind) = if let Some(rule) = outer.transversal_rule(gate) {
        let offsets: Vec<usize> = (0..m).map(|b| b * n_out).collect();
        (expand_rule(rule, n_out, &offsets)?, GadgetKind::Transversal)
    } else if let Some((k, theta)) = gate.diagonal() {
        let plan = staircase_plan(outer)?;
        (staircase_gates(&plan, n_out, k, theta), GadgetKind::Staircase)
    } else {
        return Err(Error::UnsupportedGate(format!(
            "{gate} is neither transversal in {} nor in the C^kZ family",
            outer.name()
        )));
    };
    let mut gates = Vec::new();
    for g in &outer_gates {
        lower_gate(layout, g, kind == GadgetKind::Transversal, &mut gates)?;
    }
    let mut c = GadgetCircuit::new(
        format!("{gate} on {}", layout.name()),
        m * layout.total_n(),
        m,
        gates,
    )?;
    c.kind = kind;
    c.claimed = Some(gate.clone());
    c.outer = Some(OuterCircuit {
        code: outer.clone(),
        gates: outer_gates,
    });
    Ok(c)
}
