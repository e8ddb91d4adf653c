use std::collections::HashSet;
use std::sync::Arc;

use crate::circuit::{Angle, GadgetCircuit, Gate, GateKind};
use crate::clifford::conjugate_in_place;
use crate::code::{shared_decoder, LookupDecoder, StabilizerCode};
use crate::concat::ConcatenationLayout;
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::verify::conjugate_block_logical;

use super::{enumerate_locations, FaultLocation};

/// Smallest Fourier coefficient kept as a branch.
const BRANCH_THRESHOLD: f64 = 1e-9;

/// Physical Paulis a fault set can leave at gadget end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationResult {
    /// Distinct unsigned branches, in first-reached order.
    pub branches: Vec<PauliOperator>,
    pub deterministic: bool,
}

/// Pauli components of `U p U†` for `U = C^kZ(θ)` on `qubits`:
/// `p · Z^s` for every `s` in the Fourier support of
/// `g(b) = u(b ⊕ x) · conj(u(b))`, `x` the X part of `p` on `qubits`.
pub fn diagonal_branches(p: &PauliOperator, qubits: &[usize], theta: Angle) -> Vec<PauliOperator> {
    let a = qubits.len();
    let x = qubits
        .iter()
        .enumerate()
        .filter(|(_, &q)| p.x_bit(q))
        .fold(0usize, |acc, (j, _)| acc | 1 << j);
    if x == 0 || theta.is_zero() {
        return vec![p.clone()];
    }
    let all = (1usize << a) - 1;
    let phase = theta.phase();
    let u = |b: usize| {
        if b == all {
            phase
        } else {
            num_complex::Complex64::new(1.0, 0.0)
        }
    };
    let mut out = Vec::new();
    for s in 0..=all {
        let c: num_complex::Complex64 = (0..=all)
            .map(|b| {
                let sign = if (s & b).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                u(b ^ x) * u(b).conj() * sign
            })
            .sum::<num_complex::Complex64>()
            / (1usize << a) as f64;
        if c.norm() > BRANCH_THRESHOLD {
            let mut q = p.clone();
            for (j, &qb) in qubits.iter().enumerate() {
                if s >> j & 1 == 1 {
                    let l = q.letter(qb);
                    q.set_letter(qb, Letter::from_bits(l.bits().0, !l.bits().1));
                }
            }
            out.push(q);
        }
    }
    out
}

/// Fault locations of one gadget with everything needed to propagate and
/// decode them.
pub struct FaultModel {
    circuit: GadgetCircuit,
    layout: ConcatenationLayout,
    locations: Vec<FaultLocation>,
    lifted: Vec<PauliOperator>,
    block_decoders: Vec<Option<Arc<LookupDecoder>>>,
}

impl FaultModel {
    pub fn new(layout: &ConcatenationLayout, c: &GadgetCircuit) -> Result<Self> {
        Self::with_locations(layout, c, enumerate_locations(c))
    }

    /// A model over an explicit location list (used for replay).
    pub fn with_locations(
        layout: &ConcatenationLayout,
        c: &GadgetCircuit,
        locations: Vec<FaultLocation>,
    ) -> Result<Self> {
        let expected = c.operands * layout.total_n();
        if c.register_size != expected {
            return Err(Error::InvalidLayout(format!(
                "{} has {} qubits but {} operand(s) of {} need {expected}",
                c.label,
                c.register_size,
                c.operands,
                layout.name()
            )));
        }
        for l in &locations {
            if let super::FaultSite::Gate(g) = l.site {
                if g >= c.gates.len() {
                    return Err(Error::Parse(format!("fault after gate {g}, circuit has {}", c.gates.len())));
                }
            }
        }
        let lifted = locations
            .iter()
            .map(|l| l.lift(c.register_size))
            .collect::<Result<Vec<_>>>()?;
        let block_decoders = c
            .gates
            .iter()
            .map(|g| match &g.kind {
                GateKind::BlockLogical { code, .. } => shared_decoder(code).map(Some),
                _ => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FaultModel {
            circuit: c.clone(),
            layout: layout.clone(),
            locations,
            lifted,
            block_decoders,
        })
    }

    pub fn circuit(&self) -> &GadgetCircuit {
        &self.circuit
    }

    pub fn locations(&self) -> &[FaultLocation] {
        &self.locations
    }

    /// Pushes the faults with the given location indices to the end of the
    /// circuit.
    pub fn propagate(&self, faults: &[usize]) -> Result<PropagationResult> {
        let n = self.circuit.register_size;
        let len = self.circuit.gates.len();
        let start = faults
            .iter()
            .map(|&f| self.locations[f].site.position())
            .min()
            .unwrap_or(len);
        let mut branches = vec![PauliOperator::identity(n)];
        let mut deterministic = true;
        for pos in start..=len {
            for &f in faults {
                if self.locations[f].site.position() == pos {
                    for b in &mut branches {
                        b.mul_assign_unchecked(&self.lifted[f]);
                    }
                }
            }
            if pos == len {
                break;
            }
            let g = &self.circuit.gates[pos];
            let next = self.through_gate(pos, g, branches)?;
            if next.len() > 1 {
                deterministic = false;
            }
            branches = next;
        }
        let branches = branches.into_iter().map(|b| b.unsigned()).collect::<Vec<_>>();
        Ok(PropagationResult {
            branches: dedup(branches),
            deterministic,
        })
    }

    fn through_gate(&self, pos: usize, g: &Gate, branches: Vec<PauliOperator>) -> Result<Vec<PauliOperator>> {
        if let Some(kind) = g.kind.clifford_form() {
            let mut branches = branches;
            for b in &mut branches {
                conjugate_in_place(b, kind, &g.qubits);
            }
            return Ok(branches);
        }
        if let GateKind::BlockLogical { op, code } = &g.kind {
            let decoder = self.block_decoders[pos].as_ref().expect("decoder for block gate");
            let mut out = Vec::new();
            for b in branches {
                out.extend(through_block(b, *op, code, decoder, &g.qubits)?);
            }
            return Ok(dedup(out));
        }
        if let Some((_, theta)) = g.kind.diagonal() {
            let mut out = Vec::new();
            for b in &branches {
                out.extend(diagonal_branches(b, &g.qubits, theta));
            }
            return Ok(dedup(out));
        }
        Err(Error::UnsupportedGate(format!("cannot propagate faults through {}", g.kind)))
    }

    /// Residual logical letter of each operand block after hierarchical
    /// decoding of `branch`.
    pub fn residual(&self, branch: &PauliOperator) -> Result<Vec<Letter>> {
        let n = self.layout.total_n();
        (0..self.circuit.operands)
            .map(|o| self.layout.hierarchical_decode(&branch.restrict_range(o * n..(o + 1) * n)))
            .collect()
    }
}

/// An ideal block-logical gate acts exactly on normalizer elements. Other
/// errors split as `C · N` with `C` the decoder's correction; `N` is pushed
/// through exactly and `C` survives next to an arbitrary logical.
fn through_block(
    mut p: PauliOperator,
    op: crate::clifford::CliffordKind,
    code: &StabilizerCode,
    decoder: &LookupDecoder,
    qubits: &[usize],
) -> Result<Vec<PauliOperator>> {
    let part = p.restrict(qubits);
    if code.logical_class(&part).is_some() {
        conjugate_block_logical(&mut p, op, code, qubits)?;
        return Ok(vec![p]);
    }
    let correction = decoder.decode_key(code.syndrome_key(&part)).clone();
    let mut normal = &correction * &part;
    let mut normal_full = PauliOperator::identity(p.n());
    normal_full.overwrite(qubits, &normal);
    conjugate_block_logical(&mut normal_full, op, code, qubits)?;
    normal = normal_full.restrict(qubits);
    let mut out = Vec::with_capacity(4);
    for l in Letter::ALL {
        let new_part = &(&correction * &code.logical(l)) * &normal;
        let mut q = p.clone();
        q.overwrite(qubits, &new_part);
        out.push(q);
    }
    Ok(out)
}

fn dedup(branches: Vec<PauliOperator>) -> Vec<PauliOperator> {
    if branches.len() <= 1 {
        return branches;
    }
    let mut seen = HashSet::with_capacity(branches.len());
    branches
        .into_iter()
        .map(|b| b.unsigned())
        .filter(|b| seen.insert(b.clone()))
        .collect()
}
