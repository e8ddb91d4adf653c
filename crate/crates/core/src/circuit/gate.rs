use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::clifford::CliffordKind;
use crate::code::StabilizerCode;
use crate::dense::{clifford_kind_matrix, Matrix};
use crate::error::{Error, Result};

use super::Angle;

/// Gate kinds. `T`, `S`, `Z`, `CZ` and `CCZ` are the named members of the
/// `C^kZ(θ)` family; [`GateKind::canonical`] maps each onto `CkZ`.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    H,
    S,
    Sdg,
    T,
    Tdg,
    K,
    Kdg,
    X,
    Y,
    Z,
    ZTheta(Angle),
    Cnot,
    Cz,
    Ccz,
    CkZ { k: usize, theta: Angle },
    /// An ideal logical Clifford on a whole inner code block (used where an
    /// outer-transversal gate needs an inner gate the block lacks).
    BlockLogical {
        op: CliffordKind,
        code: Arc<StabilizerCode>,
    },
}

impl GateKind {
    /// The named kind for `C^kZ(θ)` where one exists.
    pub fn ckz(k: usize, theta: Angle) -> GateKind {
        match (k, theta.numerator(), theta.denominator()) {
            (_, 0, _) => GateKind::CkZ { k, theta },
            (0, 1, 4) => GateKind::T,
            (0, 7, 4) => GateKind::Tdg,
            (0, 1, 2) => GateKind::S,
            (0, 3, 2) => GateKind::Sdg,
            (0, 1, 1) => GateKind::Z,
            (0, _, _) => GateKind::ZTheta(theta),
            (1, 1, 1) => GateKind::Cz,
            (2, 1, 1) => GateKind::Ccz,
            _ => GateKind::CkZ { k, theta },
        }
    }

    /// Diagonal kinds become `CkZ { k, θ }`; all others are returned as is.
    pub fn canonical(&self) -> GateKind {
        match self.diagonal() {
            Some((k, theta)) => GateKind::CkZ { k, theta },
            None => self.clone(),
        }
    }

    /// `(k, θ)` for members of the `C^kZ(θ)` family.
    pub fn diagonal(&self) -> Option<(usize, Angle)> {
        let q = |n| Angle::pi_fraction(n, 4);
        Some(match self {
            GateKind::T => (0, q(1)),
            GateKind::Tdg => (0, q(-1)),
            GateKind::S => (0, q(2)),
            GateKind::Sdg => (0, q(-2)),
            GateKind::Z => (0, Angle::PI),
            GateKind::ZTheta(t) => (0, *t),
            GateKind::Cz => (1, Angle::PI),
            GateKind::Ccz => (2, Angle::PI),
            GateKind::CkZ { k, theta } => (*k, *theta),
            _ => return None,
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal().is_some()
    }

    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz => 2,
            GateKind::Ccz => 3,
            GateKind::CkZ { k, .. } => k + 1,
            GateKind::BlockLogical { code, .. } => code.n(),
            _ => 1,
        }
    }

    pub fn inverse(&self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::K => GateKind::Kdg,
            GateKind::Kdg => GateKind::K,
            GateKind::ZTheta(t) => GateKind::ZTheta(t.neg()),
            GateKind::CkZ { k, theta } => GateKind::CkZ {
                k: *k,
                theta: theta.neg(),
            },
            GateKind::BlockLogical { op, code } => GateKind::BlockLogical {
                op: op.inverse(),
                code: code.clone(),
            },
            other => other.clone(),
        }
    }

    /// Clifford kind of a physical gate, `None` for non-Clifford kinds and
    /// block-logical gates.
    pub fn clifford_form(&self) -> Option<CliffordKind> {
        Some(match self {
            GateKind::H => CliffordKind::H,
            GateKind::S => CliffordKind::S,
            GateKind::Sdg => CliffordKind::SDagger,
            GateKind::K => CliffordKind::K,
            GateKind::Kdg => CliffordKind::KDagger,
            GateKind::X => CliffordKind::X,
            GateKind::Y => CliffordKind::Y,
            GateKind::Z => CliffordKind::Z,
            GateKind::Cnot => CliffordKind::Cnot,
            GateKind::Cz => CliffordKind::Cz,
            GateKind::ZTheta(_) | GateKind::CkZ { .. } => {
                return match GateKind::ckz(self.diagonal()?.0, self.diagonal()?.1) {
                    g @ (GateKind::S | GateKind::Sdg | GateKind::Z | GateKind::Cz) => {
                        g.clifford_form()
                    }
                    _ => None,
                }
            }
            _ => return None,
        })
    }

    pub fn is_clifford(&self) -> bool {
        self.clifford_form().is_some()
            || matches!(self, GateKind::BlockLogical { .. })
            || self.diagonal().is_some_and(|(_, t)| t.is_zero())
    }

    /// Gates that permute computational basis states (`X`, `CNOT`).
    pub fn is_permutation(&self) -> bool {
        matches!(self, GateKind::X | GateKind::Cnot)
    }

    /// Dense matrix; qubit 0 of the gate is the most significant factor.
    pub fn matrix(&self) -> Result<Matrix> {
        if let Some((k, theta)) = self.diagonal() {
            if k > 10 {
                return Err(Error::SizeLimit {
                    what: "dense C^kZ matrix (controls)",
                    limit: 10,
                    requested: k,
                });
            }
            let dim = 1 << (k + 1);
            let mut d = vec![Complex64::new(1.0, 0.0); dim];
            d[dim - 1] = theta.phase();
            return Ok(Matrix::diagonal(&d));
        }
        match self.clifford_form() {
            Some(c) => Ok(clifford_kind_matrix(c)),
            None => Err(Error::UnsupportedGate(format!(
                "{} has no dense matrix",
                self.name()
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::K => "K",
            GateKind::Kdg => "KDG",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::ZTheta(_) => "ZTHETA",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Ccz => "CCZ",
            GateKind::CkZ { .. } => "CKZ",
            GateKind::BlockLogical { .. } => "BLOCK",
        }
    }

    /// Parses fixed-arity names (`H`, `TDG`, `CCZ`, ...). Parameterized kinds
    /// go through the circuit text format.
    pub fn from_name(s: &str) -> Result<GateKind> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "H" => GateKind::H,
            "S" => GateKind::S,
            "SDG" | "S_DAGGER" => GateKind::Sdg,
            "T" => GateKind::T,
            "TDG" | "T_DAGGER" => GateKind::Tdg,
            "K" => GateKind::K,
            "KDG" | "K_DAGGER" => GateKind::Kdg,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "CNOT" | "CX" => GateKind::Cnot,
            "CZ" => GateKind::Cz,
            "CCZ" => GateKind::Ccz,
            _ => return Err(Error::Parse(format!("unknown gate `{s}`"))),
        })
    }

    /// Parses a logical gate spec as accepted on the command line: a fixed
    /// name, `ZTHETA(<angle>)` or `CKZ(<k>,<angle>)`.
    pub fn parse_spec(s: &str) -> Result<GateKind> {
        let t = s.trim();
        let upper = t.to_ascii_uppercase();
        let args = |prefix: &str| -> Option<String> {
            upper
                .strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .map(|r| r.to_ascii_lowercase())
        };
        if let Some(a) = args("ZTHETA") {
            return Ok(GateKind::ckz(0, a.parse()?));
        }
        if let Some(a) = args("CKZ") {
            let (k, theta) = a
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("`{s}`: expected CKZ(k,theta)")))?;
            let k = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{s}`: bad k")))?;
            return Ok(GateKind::ckz(k, theta.parse()?));
        }
        GateKind::from_name(t)
    }

    /// Short label used in reports (`T`, `CKZ(3,pi/8)`, `BLOCK[H@rm15]`).
    pub fn label(&self) -> String {
        match self {
            GateKind::ZTheta(t) => format!("ZTHETA({t})"),
            GateKind::CkZ { k, theta } => format!("CKZ({k},{theta})"),
            GateKind::BlockLogical { op, code } => format!("BLOCK[{op}@{}]", code.name()),
            other => other.name().to_string(),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl From<CliffordKind> for GateKind {
    fn from(c: CliffordKind) -> GateKind {
        match c {
            CliffordKind::H => GateKind::H,
            CliffordKind::S => GateKind::S,
            CliffordKind::SDagger => GateKind::Sdg,
            CliffordKind::K => GateKind::K,
            CliffordKind::KDagger => GateKind::Kdg,
            CliffordKind::X => GateKind::X,
            CliffordKind::Y => GateKind::Y,
            CliffordKind::Z => GateKind::Z,
            CliffordKind::Cnot => GateKind::Cnot,
            CliffordKind::Cz => GateKind::Cz,
        }
    }
}

/// A gate placed on an ordered list of register qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: SmallVec<[usize; 3]>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Gate> {
        if qubits.len() != kind.arity() {
            return Err(Error::UnsupportedGate(format!(
                "{kind} expects {} qubits, got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        let mut sorted: Vec<usize> = qubits.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::UnsupportedGate(format!(
                "{kind} on repeated qubits {qubits:?}"
            )));
        }
        Ok(Gate {
            kind,
            qubits: qubits.into(),
        })
    }

    pub fn single(kind: GateKind, q: usize) -> Gate {
        Gate::new(kind, &[q]).expect("single-qubit kind")
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            qubits: self.qubits.clone(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::gate_line(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(n: i64, d: i64) -> Angle {
        Angle::pi_fraction(n, d)
    }

    #[test]
    fn named_members_match_ckz_matrices() {
        for (named, k, theta) in [
            (GateKind::T, 0, pi(1, 4)),
            (GateKind::S, 0, pi(1, 2)),
            (GateKind::Cz, 1, pi(1, 1)),
            (GateKind::Ccz, 2, pi(1, 1)),
        ] {
            let general = GateKind::CkZ { k, theta };
            assert_eq!(named.canonical(), general);
            assert!(named.matrix().unwrap().max_abs_diff(&general.matrix().unwrap()) < 1e-12);
            assert_eq!(GateKind::ckz(k, theta), named);
        }
        let cz = GateKind::Cz.matrix().unwrap();
        assert!(cz.max_abs_diff(&clifford_kind_matrix(CliffordKind::Cz)) < 1e-12);
    }

    #[test]
    fn inverses() {
        for g in [
            GateKind::H,
            GateKind::S,
            GateKind::T,
            GateKind::K,
            GateKind::Ccz,
            GateKind::CkZ { k: 3, theta: pi(1, 8) },
        ] {
            let m = g.matrix().unwrap();
            let mi = g.inverse().matrix().unwrap();
            assert!(m.mul(&mi).max_abs_diff(&Matrix::identity(m.dim)) < 1e-12, "{g}");
            assert_eq!(g.inverse().inverse(), g);
        }
    }

    #[test]
    fn clifford_detection() {
        assert_eq!(GateKind::ZTheta(pi(1, 2)).clifford_form(), Some(CliffordKind::S));
        assert_eq!(GateKind::CkZ { k: 1, theta: pi(1, 1) }.clifford_form(), Some(CliffordKind::Cz));
        assert!(GateKind::T.clifford_form().is_none());
        assert!(GateKind::Ccz.clifford_form().is_none());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(GateKind::parse_spec("t").unwrap(), GateKind::T);
        assert_eq!(GateKind::parse_spec("ZTHETA(pi/4)").unwrap(), GateKind::T);
        assert_eq!(GateKind::parse_spec("ckz(2,pi)").unwrap(), GateKind::Ccz);
        assert_eq!(
            GateKind::parse_spec("CKZ(3,pi/8)").unwrap(),
            GateKind::CkZ { k: 3, theta: pi(1, 8) }
        );
        assert!(GateKind::parse_spec("FOO").is_err());
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::new(GateKind::Cnot, &[1, 1]).is_err());
        assert!(Gate::new(GateKind::Ccz, &[0, 1]).is_err());
        let g = Gate::new(GateKind::Cnot, &[2, 0]).unwrap();
        assert_eq!(g.inverse(), g);
    }
}
