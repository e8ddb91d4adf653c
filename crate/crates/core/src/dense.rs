//! Small dense complex matrices: gate unitaries, claimed logical actions and
//! the startup self-test of the Pauli/Clifford conventions.

use num_complex::Complex64;

use crate::clifford::{conjugate_by_gate, CliffordGate, CliffordKind};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};

/// Square row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![c(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dim);
            m.data[i * dim..(i + 1) * dim].copy_from_slice(r);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = e;
        }
        m
    }

    pub fn get(&self, r: usize, col: usize) -> Complex64 {
        self.data[r * self.dim + col]
    }

    pub fn set(&mut self, r: usize, col: usize, v: Complex64) {
        self.data[r * self.dim + col] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    /// `self ⊗ other`, with `self` on the more significant index.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * (a * b) + (j * b + l)] = s * other.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Equality up to a single global phase.
    pub fn approx_eq_up_to_phase(&self, other: &Matrix, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some(idx) = other
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(i, _)| i)
        else {
            return true;
        };
        if other.data[idx].norm() < tol || self.data[idx].norm() < tol {
            return self.max_abs_diff(other) < tol;
        }
        let ratio = self.data[idx] / other.data[idx];
        let phase = ratio / ratio.norm();
        self.max_abs_diff(&other.scale(phase)) < tol
    }
}

pub fn pauli_letter_matrix(l: Letter) -> Matrix {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match l {
        Letter::I => Matrix::identity(2),
        Letter::X => Matrix::from_rows(&[&[z, o], &[o, z]]),
        Letter::Y => Matrix::from_rows(&[&[z, -i], &[i, z]]),
        Letter::Z => Matrix::from_rows(&[&[o, z], &[z, -o]]),
    }
}

/// Dense matrix of a Pauli operator; qubit 0 is the most significant tensor
/// factor.
pub fn pauli_matrix(p: &PauliOperator) -> Matrix {
    let mut m = Matrix::identity(1);
    for q in 0..p.n() {
        m = m.kron(&pauli_letter_matrix(p.letter(q)));
    }
    m.scale(p.phase().to_complex())
}

pub fn clifford_kind_matrix(kind: CliffordKind) -> Matrix {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let h = Matrix::from_rows(&[&[c(r, 0.0), c(r, 0.0)], &[c(r, 0.0), c(-r, 0.0)]]);
    let s = Matrix::diagonal(&[o, i]);
    match kind {
        CliffordKind::H => h,
        CliffordKind::S => s,
        CliffordKind::SDagger => s.adjoint(),
        CliffordKind::K => s.mul(&h),
        CliffordKind::KDagger => s.mul(&h).adjoint(),
        CliffordKind::X => pauli_letter_matrix(Letter::X),
        CliffordKind::Y => pauli_letter_matrix(Letter::Y),
        CliffordKind::Z => pauli_letter_matrix(Letter::Z),
        CliffordKind::Cnot => Matrix::from_rows(&[
            &[o, z, z, z],
            &[z, o, z, z],
            &[z, z, z, o],
            &[z, z, o, z],
        ]),
        CliffordKind::Cz => Matrix::diagonal(&[o, o, o, -o]),
    }
}

/// Checks the fixed conventions against dense matrices: `Y = iXZ`, `K = S·H`,
/// and the conjugation tables of every Clifford kind on all 4 (or 16) Paulis.
pub fn self_test() -> Result<()> {
    let tol = 1e-12;
    let i = c(0.0, 1.0);
    let y = pauli_letter_matrix(Letter::X)
        .mul(&pauli_letter_matrix(Letter::Z))
        .scale(i);
    if y.max_abs_diff(&pauli_letter_matrix(Letter::Y)) > tol {
        return Err(Error::Internal("Y != iXZ".into()));
    }
    let sh = clifford_kind_matrix(CliffordKind::S).mul(&clifford_kind_matrix(CliffordKind::H));
    if sh.max_abs_diff(&clifford_kind_matrix(CliffordKind::K)) > tol {
        return Err(Error::Internal("K != SH".into()));
    }
    for kind in CliffordKind::SINGLE_QUBIT
        .into_iter()
        .chain([CliffordKind::Cnot, CliffordKind::Cz])
    {
        let arity = kind.arity();
        let qubits: Vec<usize> = (0..arity).collect();
        let gate = CliffordGate::new(kind, &qubits)?;
        let u = clifford_kind_matrix(kind);
        for idx in 0..4usize.pow(arity as u32) {
            let letters: Vec<Letter> = (0..arity)
                .map(|q| Letter::ALL[(idx >> (2 * (arity - 1 - q))) & 3])
                .collect();
            let p = PauliOperator::from_letters(Default::default(), &letters);
            let image = conjugate_by_gate(&p, &gate)?;
            let dense = u.mul(&pauli_matrix(&p)).mul(&u.adjoint());
            if dense.max_abs_diff(&pauli_matrix(&image)) > tol {
                return Err(Error::Internal(format!(
                    "conjugation of {p} by {kind} disagrees with dense matrices"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions_hold() {
        self_test().unwrap();
    }

    #[test]
    fn up_to_phase_comparison() {
        let z = pauli_letter_matrix(Letter::Z);
        assert!(z.approx_eq_up_to_phase(&z.scale(c(0.0, 1.0)), 1e-12));
        assert!(!z.approx_eq_up_to_phase(&pauli_letter_matrix(Letter::X), 1e-12));
    }
}
