use crate::circuit::GateKind;
use crate::clifford::{conjugate_by_gate, CliffordGate};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};

use super::{StabilizerCode, TransversalOp, TransversalRule};

fn support_where(n: usize, pred: impl Fn(usize) -> bool) -> Vec<usize> {
    (0..n).filter(|&q| pred(q)).collect()
}

fn each(logical: GateKind, physical: GateKind) -> TransversalRule {
    TransversalRule::new(logical, vec![TransversalOp::each(physical)])
}

fn pointwise(logical: GateKind, physical: &[GateKind]) -> TransversalRule {
    let ops = physical
        .iter()
        .enumerate()
        .map(|(q, g)| TransversalOp::at(g.clone(), q))
        .collect();
    TransversalRule::new(logical, ops)
}

/// The `[[7,1,3]]` Steane code from the `[7,4,3]` Hamming code whose parity
/// check column for qubit `q` is the binary expansion of `q + 1`.
pub fn steane() -> StabilizerCode {
    let n = 7;
    let rows: Vec<Vec<usize>> = (0..3)
        .map(|b| support_where(n, |q| ((q + 1) >> b) & 1 == 1))
        .collect();
    let mut gens: Vec<PauliOperator> = rows
        .iter()
        .map(|r| PauliOperator::on_support(n, r, Letter::X))
        .collect();
    gens.extend(rows.iter().map(|r| PauliOperator::on_support(n, r, Letter::Z)));
    let all: Vec<usize> = (0..n).collect();
    StabilizerCode::new(
        "steane",
        gens,
        PauliOperator::on_support(n, &all, Letter::X),
        PauliOperator::on_support(n, &all, Letter::Z),
        true,
    )
    .expect("steane code is valid")
    .with_derivation("hamming [7,4,3]")
    .with_transversal(vec![
        each(GateKind::X, GateKind::X),
        each(GateKind::Z, GateKind::Z),
        each(GateKind::H, GateKind::H),
        each(GateKind::S, GateKind::Sdg),
        each(GateKind::Sdg, GateKind::S),
        each(GateKind::Cnot, GateKind::Cnot),
        each(GateKind::Cz, GateKind::Cz),
    ])
}

/// The cyclic `[[5,1,3]]` code generated by `XZZXI` and its shifts.
pub fn five_qubit() -> StabilizerCode {
    let base = [Letter::X, Letter::Z, Letter::Z, Letter::X, Letter::I];
    let gens = (0..4)
        .map(|s| {
            let letters: Vec<Letter> = (0..5).map(|q| base[(q + 5 - s) % 5]).collect();
            PauliOperator::from_letters(Default::default(), &letters)
        })
        .collect();
    let all: Vec<usize> = (0..5).collect();
    StabilizerCode::new(
        "five_qubit",
        gens,
        PauliOperator::on_support(5, &all, Letter::X),
        PauliOperator::on_support(5, &all, Letter::Z),
        false,
    )
    .expect("five-qubit code is valid")
    .with_derivation("cyclic XZZXI")
    .with_transversal(vec![
        each(GateKind::X, GateKind::X),
        each(GateKind::Z, GateKind::Z),
        each(GateKind::K, GateKind::K),
    ])
}

/// The five-qubit code conjugated by `K` on qubit 1, `Y` on qubit 3 and `K`
/// on qubit 5 (1-based), which admits a pure-`Z` weight-3 logical.
pub fn five_prime() -> StabilizerCode {
    let gates = [
        CliffordGate::single(crate::clifford::CliffordKind::K, 0),
        CliffordGate::single(crate::clifford::CliffordKind::Y, 2),
        CliffordGate::single(crate::clifford::CliffordKind::K, 4),
    ];
    transform_code(&five_qubit(), &gates)
        .expect("local Clifford transform")
        .renamed("five_prime")
        .with_derivation("five_qubit ∘ K1 Y3 K5")
        .with_transversal(vec![
            pointwise(GateKind::X, &[GateKind::Z, GateKind::X, GateKind::X, GateKind::X, GateKind::Z]),
            pointwise(GateKind::Z, &[GateKind::Y, GateKind::Z, GateKind::Z, GateKind::Z, GateKind::Y]),
            TransversalRule::new(
                GateKind::K,
                vec![TransversalOp::at(GateKind::X, 2), TransversalOp::each(GateKind::K)],
            ),
        ])
}

/// The `[[15,1,3]]` quantum Reed-Muller code. Qubit `q` is labelled by the
/// nonzero 4-bit vector `q + 1`; X stabilizers are the four coordinate rows of
/// the punctured first-order Reed-Muller code, Z stabilizers add their six
/// pairwise products.
pub fn reed_muller_15() -> StabilizerCode {
    let n = 15;
    let row = |b: usize| support_where(n, |q| ((q + 1) >> b) & 1 == 1);
    let mut gens: Vec<PauliOperator> = (0..4)
        .map(|b| PauliOperator::on_support(n, &row(b), Letter::X))
        .collect();
    gens.extend((0..4).map(|b| PauliOperator::on_support(n, &row(b), Letter::Z)));
    for a in 0..4 {
        for b in a + 1..4 {
            let s = support_where(n, |q| ((q + 1) >> a) & 1 == 1 && ((q + 1) >> b) & 1 == 1);
            gens.push(PauliOperator::on_support(n, &s, Letter::Z));
        }
    }
    let all: Vec<usize> = (0..n).collect();
    StabilizerCode::new(
        "rm15",
        gens,
        PauliOperator::on_support(n, &all, Letter::X),
        PauliOperator::on_support(n, &all, Letter::Z),
        true,
    )
    .expect("reed-muller code is valid")
    .with_derivation("punctured reed-muller RM(1,4)*")
    .with_transversal(vec![
        each(GateKind::X, GateKind::X),
        each(GateKind::Z, GateKind::Z),
        each(GateKind::T, GateKind::Tdg),
        each(GateKind::Tdg, GateKind::T),
        each(GateKind::S, GateKind::Sdg),
        each(GateKind::Sdg, GateKind::S),
        each(GateKind::Cnot, GateKind::Cnot),
        each(GateKind::Cz, GateKind::Cz),
        each(GateKind::Ccz, GateKind::Ccz),
    ])
}

/// Conjugates every generator and logical representative by a sequence of
/// single-qubit Cliffords. The result carries no transversal declarations.
pub fn transform_code(code: &StabilizerCode, gates: &[CliffordGate]) -> Result<StabilizerCode> {
    if let Some(g) = gates.iter().find(|g| g.kind.arity() != 1) {
        return Err(Error::UnsupportedGate(format!(
            "{g}: only local (single-qubit) Cliffords may transform a code"
        )));
    }
    let apply = |p: &PauliOperator| -> Result<PauliOperator> {
        let mut out = p.clone();
        for g in gates {
            out = conjugate_by_gate(&out, g)?;
        }
        Ok(out)
    };
    let gens = code.generators().iter().map(apply).collect::<Result<Vec<_>>>()?;
    let css = gens.iter().all(|g| g.is_x_type() || g.is_z_type());
    let label = gates
        .iter()
        .map(|g| format!("{}{}", g.kind, g.qubits[0] + 1))
        .collect::<Vec<_>>()
        .join(" ");
    let out = StabilizerCode::new(
        code.name(),
        gens,
        apply(code.logical_x())?,
        apply(code.logical_z())?,
        css,
    )?;
    Ok(if gates.is_empty() {
        out.with_derivation(code.derivation().unwrap_or_default().to_string())
    } else {
        out.with_derivation(format!("{} ∘ {label}", code.name()))
    })
}
