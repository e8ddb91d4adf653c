use num_complex::Complex64;

use crate::circuit::{GadgetCircuit, Gate, GateKind};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Largest register simulated densely.
pub const MAX_DENSE_QUBITS: usize = 22;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense state of `n` qubits; qubit 0 is the most significant index bit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    fn check_size(n: usize) -> Result<()> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::SizeLimit {
                what: "dense statevector (qubits)",
                limit: MAX_DENSE_QUBITS,
                requested: n,
            });
        }
        Ok(())
    }

    /// `|basis⟩`, with bit `n - 1 - q` of `basis` holding qubit `q`.
    pub fn basis(n: usize, basis: usize) -> Result<StateVector> {
        Self::check_size(n)?;
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[basis] = c(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<StateVector> {
        Self::check_size(n)?;
        if amps.len() != 1 << n {
            return Err(Error::Dimension {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) -> f64 {
        let norm = self.norm();
        if norm > 0.0 {
            for a in &mut self.amps {
                *a /= norm;
            }
        }
        norm
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&mut self, s: Complex64) {
        for a in &mut self.amps {
            *a *= s;
        }
    }

    pub fn add_scaled(&mut self, other: &StateVector, s: Complex64) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += s * b;
        }
    }

    /// `self ⊗ other`, `self` on the more significant qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n + other.n;
        Self::check_size(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { n, amps })
    }

    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: p.n(),
            });
        }
        let (mut xm, mut zm, mut ys) = (0usize, 0usize, 0u32);
        for q in 0..self.n {
            let (x, z) = p.letter(q).bits();
            if x {
                xm |= self.mask(q);
            }
            if z {
                zm |= self.mask(q);
            }
            if x && z {
                ys += 1;
            }
        }
        // P = phase · i^{#Y} · X^x Z^z, since Y = iXZ.
        let pre = p.phase().to_complex() * c(0.0, 1.0).powu(ys);
        let old = std::mem::take(&mut self.amps);
        let mut amps = vec![c(0.0, 0.0); old.len()];
        for (b, a) in old.into_iter().enumerate() {
            let sign = if (b & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            amps[b ^ xm] = a * pre * sign;
        }
        self.amps = amps;
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩` for Hermitian `P`.
    pub fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        let mut t = self.clone();
        t.apply_pauli(p)?;
        Ok(self.inner(&t).re)
    }

    /// `ψ ← (ψ + sign·Pψ)/2`.
    pub fn project(&mut self, p: &PauliOperator, sign: f64) -> Result<()> {
        let mut t = self.clone();
        t.apply_pauli(p)?;
        for (a, b) in self.amps.iter_mut().zip(&t.amps) {
            *a = (*a + b * sign) * 0.5;
        }
        Ok(())
    }

    fn apply_single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = self.mask(q);
        for b in 0..self.amps.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                self.amps[b] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[b | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        if let Some(&q) = g.qubits.iter().find(|&&q| q >= self.n) {
            return Err(Error::Dimension {
                expected: self.n,
                found: q + 1,
            });
        }
        if let Some((_, theta)) = g.kind.diagonal() {
            let all: usize = g.qubits.iter().map(|&q| self.mask(q)).sum();
            let phase = theta.phase();
            for (b, a) in self.amps.iter_mut().enumerate() {
                if b & all == all {
                    *a *= phase;
                }
            }
            return Ok(());
        }
        match &g.kind {
            GateKind::Cnot => {
                let (cm, tm) = (self.mask(g.qubits[0]), self.mask(g.qubits[1]));
                for b in 0..self.amps.len() {
                    if b & cm != 0 && b & tm == 0 {
                        self.amps.swap(b, b | tm);
                    }
                }
                Ok(())
            }
            GateKind::BlockLogical { .. } => Err(Error::UnsupportedGate(
                "block-logical gates have no dense realization".into(),
            )),
            kind => {
                let m = kind.matrix()?;
                if m.dim != 2 {
                    return Err(Error::Internal(format!("{kind}: unexpected arity")));
                }
                self.apply_single(
                    g.qubits[0],
                    [[m.get(0, 0), m.get(0, 1)], [m.get(1, 0), m.get(1, 1)]],
                );
                Ok(())
            }
        }
    }

    pub fn apply_circuit(&mut self, circuit: &GadgetCircuit) -> Result<()> {
        if circuit.register_size != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: circuit.register_size,
            });
        }
        for g in &circuit.gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }
}

/// Phase convention: the first amplitude of larger magnitude than 1e-9 is
/// made real and positive.
fn fix_phase(s: &mut StateVector) {
    if let Some(a) = s.amps.iter().find(|a| a.norm() > 1e-9).copied() {
        s.scale(a.conj() / a.norm());
    }
}

/// `|0̄⟩` and `|1̄⟩ = X_L|0̄⟩`, obtained by projecting computational basis
/// states onto the `+1` eigenspace of every generator and of `Z_L`.
pub fn logical_basis(code: &StabilizerCode) -> Result<[StateVector; 2]> {
    let n = code.n();
    StateVector::check_size(n)?;
    for start in 0..(1usize << n) {
        let mut s = StateVector::basis(n, start)?;
        for g in code.generators() {
            s.project(g, 1.0)?;
        }
        s.project(code.logical_z(), 1.0)?;
        if s.norm() > 1e-6 {
            s.normalize();
            fix_phase(&mut s);
            let mut one = s.clone();
            one.apply_pauli(code.logical_x())?;
            return Ok([s, one]);
        }
    }
    Err(Error::Internal(format!("{}: empty codespace", code.name())))
}

/// `α|0̄⟩ + β|1̄⟩`.
pub fn encode(code: &StabilizerCode, alpha: Complex64, beta: Complex64) -> Result<StateVector> {
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Parse(format!("|α|²+|β|² = {} ≠ 1", norm * norm)));
    }
    let [zero, one] = logical_basis(code)?;
    let mut s = zero;
    s.scale(alpha);
    s.add_scaled(&one, beta);
    Ok(s)
}

/// Logical basis of `m` blocks: entry `b` is `|b̄_0 … b̄_{m-1}⟩` with operand 0
/// the most significant bit of `b`.
pub fn product_basis(codes: &[&StabilizerCode]) -> Result<Vec<StateVector>> {
    let n: usize = codes.iter().map(|c| c.n()).sum();
    StateVector::check_size(n)?;
    let bases = codes.iter().map(|c| logical_basis(c)).collect::<Result<Vec<_>>>()?;
    let m = codes.len();
    (0..1usize << m)
        .map(|b| {
            let mut s = StateVector::basis(0, 0)?;
            for (i, basis) in bases.iter().enumerate() {
                let bit = (b >> (m - 1 - i)) & 1;
                s = s.tensor(&basis[bit])?;
            }
            Ok(s)
        })
        .collect()
}

/// Expectation of every generator, for codespace checks.
pub fn generator_expectations(code: &StabilizerCode, s: &StateVector) -> Result<Vec<f64>> {
    code.generators().iter().map(|g| s.expectation(g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Angle;
    use crate::code::{five_qubit, reed_muller_15, steane};

    #[test]
    fn encoded_zero_is_stabilized() {
        for code in [steane(), five_qubit(), reed_muller_15()] {
            let s = encode(&code, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
            for e in generator_expectations(&code, &s).unwrap() {
                assert!((e - 1.0).abs() < 1e-12);
            }
            assert!((s.expectation(code.logical_z()).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rm_zero_has_sixteen_equal_amplitudes() {
        let s = encode(&reed_muller_15(), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let nz: Vec<f64> = s.amplitudes().iter().map(|a| a.norm()).filter(|&a| a > 1e-9).collect();
        assert_eq!(nz.len(), 16);
        assert!(nz.iter().all(|a| (a - 0.25).abs() < 1e-12));
    }

    #[test]
    fn encoded_one_is_logical_x_of_zero() {
        let code = steane();
        let mut zero = encode(&code, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        zero.apply_pauli(code.logical_x()).unwrap();
        let one = encode(&code, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((one.inner(&zero).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gate_application_basics() {
        let mut s = StateVector::basis(3, 0b101).unwrap();
        let orig = s.clone();
        let empty = GadgetCircuit::new("empty", 3, 1, vec![]).unwrap();
        s.apply_circuit(&empty).unwrap();
        assert_eq!(s, orig);
        s.apply_gate(&Gate::single(GateKind::X, 0)).unwrap();
        s.apply_gate(&Gate::single(GateKind::X, 0)).unwrap();
        assert_eq!(s, orig);
        let ccz = Gate::new(GateKind::CkZ { k: 2, theta: Angle::PI }, &[0, 1, 2]).unwrap();
        for b in 0..8 {
            let mut t = StateVector::basis(3, b).unwrap();
            t.apply_gate(&ccz).unwrap();
            let want = if b == 7 { -1.0 } else { 1.0 };
            assert!((t.amplitudes()[b] - c(want, 0.0)).norm() < 1e-12);
        }
        let mut t = StateVector::basis(2, 0b10).unwrap();
        t.apply_gate(&Gate::new(GateKind::Cnot, &[0, 1]).unwrap()).unwrap();
        assert!((t.amplitudes()[0b11] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pauli_application_matches_dense_matrix() {
        let p: PauliOperator = "-iXYZ".parse().unwrap();
        let m = crate::dense::pauli_matrix(&p);
        for b in 0..8 {
            let mut s = StateVector::basis(3, b).unwrap();
            s.apply_pauli(&p).unwrap();
            for r in 0..8 {
                assert!((s.amplitudes()[r] - m.get(r, b)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn size_cap() {
        assert!(StateVector::basis(23, 0).is_err());
    }
}
