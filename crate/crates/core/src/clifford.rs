//! Heisenberg-picture action of Clifford gates on Pauli operators.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator, Phase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CliffordKind {
    H,
    S,
    SDagger,
    /// `K = S·H`.
    K,
    KDagger,
    X,
    Y,
    Z,
    Cnot,
    Cz,
}

impl CliffordKind {
    pub const SINGLE_QUBIT: [CliffordKind; 8] = [
        CliffordKind::H,
        CliffordKind::S,
        CliffordKind::SDagger,
        CliffordKind::K,
        CliffordKind::KDagger,
        CliffordKind::X,
        CliffordKind::Y,
        CliffordKind::Z,
    ];

    pub fn arity(self) -> usize {
        match self {
            CliffordKind::Cnot | CliffordKind::Cz => 2,
            _ => 1,
        }
    }

    pub fn inverse(self) -> CliffordKind {
        match self {
            CliffordKind::S => CliffordKind::SDagger,
            CliffordKind::SDagger => CliffordKind::S,
            CliffordKind::K => CliffordKind::KDagger,
            CliffordKind::KDagger => CliffordKind::K,
            other => other,
        }
    }

    pub fn is_pauli(self) -> bool {
        matches!(self, CliffordKind::X | CliffordKind::Y | CliffordKind::Z)
    }

    /// Images of `X` and `Z` under `U · P · U†` for single-qubit kinds.
    fn images(self) -> ((Letter, Phase), (Letter, Phase)) {
        use Letter::*;
        let (p, m) = (Phase::ONE, Phase::MINUS_ONE);
        match self {
            CliffordKind::H => ((Z, p), (X, p)),
            CliffordKind::S => ((Y, p), (Z, p)),
            CliffordKind::SDagger => ((Y, m), (Z, p)),
            CliffordKind::K => ((Z, p), (Y, p)),
            CliffordKind::KDagger => ((Y, p), (X, p)),
            CliffordKind::X => ((X, p), (Z, m)),
            CliffordKind::Y => ((X, m), (Z, m)),
            CliffordKind::Z => ((X, m), (Z, p)),
            CliffordKind::Cnot | CliffordKind::Cz => unreachable!("two-qubit kind"),
        }
    }

    /// Image of a single letter under conjugation, with exact phase.
    pub fn conjugate_letter(self, letter: Letter) -> (Letter, Phase) {
        let ((xl, xp), (zl, zp)) = self.images();
        match letter {
            Letter::I => (Letter::I, Phase::ONE),
            Letter::X => (xl, xp),
            Letter::Z => (zl, zp),
            Letter::Y => {
                // Y = i X Z, so U Y U† = i · U X U† · U Z U†.
                let ux = PauliOperator::from_letters(xp, &[xl]);
                let uz = PauliOperator::from_letters(zp, &[zl]);
                let prod = &ux * &uz;
                (prod.letter(0), prod.phase().mul(Phase::I))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CliffordKind::H => "H",
            CliffordKind::S => "S",
            CliffordKind::SDagger => "SDG",
            CliffordKind::K => "K",
            CliffordKind::KDagger => "KDG",
            CliffordKind::X => "X",
            CliffordKind::Y => "Y",
            CliffordKind::Z => "Z",
            CliffordKind::Cnot => "CNOT",
            CliffordKind::Cz => "CZ",
        }
    }

    pub fn from_name(s: &str) -> Option<CliffordKind> {
        Some(match s {
            "H" => CliffordKind::H,
            "S" => CliffordKind::S,
            "SDG" => CliffordKind::SDagger,
            "K" => CliffordKind::K,
            "KDG" => CliffordKind::KDagger,
            "X" => CliffordKind::X,
            "Y" => CliffordKind::Y,
            "Z" => CliffordKind::Z,
            "CNOT" => CliffordKind::Cnot,
            "CZ" => CliffordKind::Cz,
            _ => return None,
        })
    }
}

impl fmt::Display for CliffordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Clifford gate on an ordered list of qubits (control first for CNOT).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordGate {
    pub kind: CliffordKind,
    pub qubits: SmallVec<[usize; 2]>,
}

impl CliffordGate {
    pub fn new(kind: CliffordKind, qubits: &[usize]) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::UnsupportedGate(format!(
                "{kind} expects {} qubits, got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::UnsupportedGate(format!(
                "{kind} on repeated qubit {}",
                qubits[0]
            )));
        }
        Ok(CliffordGate {
            kind,
            qubits: qubits.into(),
        })
    }

    pub fn single(kind: CliffordKind, q: usize) -> Self {
        Self::new(kind, &[q]).expect("single-qubit kind")
    }

    pub fn inverse(&self) -> Self {
        CliffordGate {
            kind: self.kind.inverse(),
            qubits: self.qubits.clone(),
        }
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// Returns `g · p · g†` with exact phase.
pub fn conjugate_by_gate(p: &PauliOperator, g: &CliffordGate) -> Result<PauliOperator> {
    for &q in &g.qubits {
        if q >= p.n() {
            return Err(Error::Dimension {
                expected: p.n(),
                found: q + 1,
            });
        }
    }
    let mut out = p.clone();
    conjugate_in_place(&mut out, g.kind, &g.qubits);
    Ok(out)
}

/// In-place conjugation; qubits must be in range.
pub(crate) fn conjugate_in_place(p: &mut PauliOperator, kind: CliffordKind, qubits: &[usize]) {
    match kind {
        CliffordKind::Cnot => cnot_in_place(p, qubits[0], qubits[1]),
        CliffordKind::Cz => {
            let (a, b) = (qubits[0], qubits[1]);
            conjugate_single(p, CliffordKind::H, b);
            cnot_in_place(p, a, b);
            conjugate_single(p, CliffordKind::H, b);
        }
        single => conjugate_single(p, single, qubits[0]),
    }
}

fn conjugate_single(p: &mut PauliOperator, kind: CliffordKind, q: usize) {
    let letter = p.letter(q);
    if letter == Letter::I {
        return;
    }
    let (new_letter, ph) = kind.conjugate_letter(letter);
    p.set_letter(q, new_letter);
    p.set_phase(p.phase().mul(ph));
}

fn cnot_in_place(p: &mut PauliOperator, c: usize, t: usize) {
    let (xc, zc) = (p.x_bit(c), p.z_bit(c));
    let (xt, zt) = (p.x_bit(t), p.z_bit(t));
    if xc && zt && (xt == zc) {
        p.set_phase(p.phase().mul(Phase::MINUS_ONE));
    }
    p.set_letter(c, Letter::from_bits(xc, zc ^ zt));
    p.set_letter(t, Letter::from_bits(xt ^ xc, zt));
}

/// Conjugates `p` by every gate of `gates` in order (first gate applied first).
pub fn conjugate_by_circuit(p: &PauliOperator, gates: &[CliffordGate]) -> Result<PauliOperator> {
    let mut out = p.clone();
    for g in gates {
        out = conjugate_by_gate(&out, g)?;
    }
    Ok(out)
}
