use crate::circuit::{GadgetCircuit, Gate, GateKind};
use crate::clifford::{conjugate_in_place, CliffordKind};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::symplectic::EchelonForm;

use super::{Certificate, Method};

/// Conjugates the restriction of `p` to `qubits` by an ideal logical `op` of
/// `code`. The restriction must lie in the normalizer of `code`.
pub fn conjugate_block_logical(
    p: &mut PauliOperator,
    op: CliffordKind,
    code: &StabilizerCode,
    qubits: &[usize],
) -> Result<()> {
    let part = p.restrict(qubits);
    let class = code.logical_class(&part).ok_or_else(|| {
        Error::Verification(format!(
            "block-logical {op} on {} met {part}, which is outside the normalizer",
            code.name()
        ))
    })?;
    if class == Letter::I {
        return Ok(());
    }
    // part = s · L_c with s in the stabilizer group (up to phase); the gate
    // fixes s and maps L_c to its logical image.
    let rep = code.logical(class);
    let s = &part * &rep.inverse();
    let (img, ph) = op.conjugate_letter(class);
    let mut image = code.logical(img);
    image.set_phase(image.phase().mul(ph));
    let new_part = &s * &image;
    let phase = p.phase().mul(new_part.phase());
    p.overwrite(qubits, &new_part);
    p.set_phase(phase);
    Ok(())
}

/// Exact Heisenberg conjugation `g p g†` for Clifford and block-logical gates.
pub fn conjugate_gate(p: &mut PauliOperator, g: &Gate) -> Result<()> {
    if let GateKind::BlockLogical { op, code } = &g.kind {
        return conjugate_block_logical(p, *op, code, &g.qubits);
    }
    if let Some(kind) = g.kind.clifford_form() {
        conjugate_in_place(p, kind, &g.qubits);
        return Ok(());
    }
    if g.kind.diagonal().is_some_and(|(_, t)| t.is_zero()) {
        return Ok(());
    }
    Err(Error::UnsupportedGate(format!(
        "{} is not Clifford; Heisenberg verification needs Clifford gates",
        g.kind
    )))
}

pub fn conjugate_through(p: &PauliOperator, gates: &[Gate]) -> Result<PauliOperator> {
    let mut out = p.clone();
    for g in gates {
        conjugate_gate(&mut out, g)?;
    }
    Ok(out)
}

/// Image of an `m`-qubit logical Pauli under a Clifford claim acting on
/// logical qubits `0..m`.
pub fn claimed_image(claim: &GateKind, logical: &PauliOperator) -> Result<PauliOperator> {
    let kind = claim
        .clifford_form()
        .ok_or_else(|| Error::UnsupportedGate(format!("claimed {claim} is not Clifford")))?;
    let m = logical.n();
    if kind.arity() != m {
        return Err(Error::Dimension {
            expected: kind.arity(),
            found: m,
        });
    }
    let mut out = logical.clone();
    let qs: Vec<usize> = (0..m).collect();
    conjugate_in_place(&mut out, kind, &qs);
    Ok(out)
}

fn lift(codes: &[&StabilizerCode], offsets: &[usize], total: usize, p: &PauliOperator) -> PauliOperator {
    let mut out = PauliOperator::identity(total).with_phase(p.phase());
    for (i, code) in codes.iter().enumerate() {
        let l = p.letter(i);
        if l != Letter::I {
            out.mul_assign_unchecked(&code.logical(l).embed_at(total, offsets[i]).expect("fits"));
        }
    }
    out
}

/// Conjugates every generator and logical representative of the blocks
/// through `circuit`; generators must map into the stabilizer group and
/// logicals onto the claimed images, signs included.
pub fn verify_clifford_heisenberg(
    codes: &[&StabilizerCode],
    circuit: &GadgetCircuit,
    claim: &GateKind,
) -> Result<Certificate> {
    let total: usize = codes.iter().map(|c| c.n()).sum();
    if total != circuit.register_size {
        return Err(Error::Dimension {
            expected: circuit.register_size,
            found: total,
        });
    }
    let m = codes.len();
    let mut offsets = Vec::with_capacity(m);
    let mut acc = 0;
    for c in codes {
        offsets.push(acc);
        acc += c.n();
    }
    let mut gens = Vec::new();
    for (c, &off) in codes.iter().zip(&offsets) {
        for g in c.generators() {
            gens.push(g.embed_at(total, off)?);
        }
    }
    let group = EchelonForm::new(total, &gens);
    let fail = |detail: String| Certificate::new(Method::Heisenberg, false, 0.0, detail);
    for g in &gens {
        let img = conjugate_through(g, &circuit.gates)?;
        if !group.contains(&img) {
            return Ok(fail(format!("stabilizer {g} maps to {img}, outside the group")));
        }
    }
    for i in 0..m {
        for l in [Letter::X, Letter::Z] {
            let logical = PauliOperator::single(m, i, l);
            let physical = lift(codes, &offsets, total, &logical);
            let img = conjugate_through(&physical, &circuit.gates)?;
            let want = lift(codes, &offsets, total, &claimed_image(claim, &logical)?);
            let diff = &img * &want.inverse();
            if !group.contains(&diff) {
                return Ok(fail(format!(
                    "logical {logical} maps to {img}, expected {want} up to stabilizers"
                )));
            }
        }
    }
    Ok(Certificate::new(
        Method::Heisenberg,
        true,
        1.0,
        format!(
            "{} generators and {} logicals conjugated exactly",
            gens.len(),
            2 * m
        ),
    ))
}
