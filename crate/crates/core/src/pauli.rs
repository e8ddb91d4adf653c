//! n-qubit Pauli operators in the symplectic (bit-vector) representation.
//!
//! An operator is stored as `i^k · P_0 ⊗ P_1 ⊗ … ⊗ P_{n-1}` where every `P_q`
//! is one of the Hermitian letters `I, X, Y, Z` and `(x_q, z_q)` encodes the
//! letter as `(0,0)/(1,0)/(1,1)/(0,1)`. The letter `Y` is fixed as `i·X·Z`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

pub(crate) type Bits = SmallVec<[u64; 4]>;

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A power of `i`: `Phase(k)` is `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        use num_complex::Complex64;
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        }
    }
}

/// Single-qubit Pauli letter. Also used as the residual logical class of a
/// one-qubit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    pub const NONTRIVIAL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' | '_' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An n-qubit Pauli operator with exact phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Bits,
    z: Bits,
    phase: Phase,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliOperator {
            n,
            x: smallvec![0; w],
            z: smallvec![0; w],
            phase: Phase::ONE,
        }
    }

    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(qubit, letter);
        p
    }

    pub fn from_letters(phase: Phase, letters: &[Letter]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l);
        }
        p.phase = phase;
        p
    }

    /// The same letter on every qubit of `support`.
    pub fn on_support(n: usize, support: &[usize], letter: Letter) -> Self {
        let mut p = Self::identity(n);
        for &q in support {
            p.set_letter(q, letter);
        }
        p
    }

    /// Builds an operator from little-endian bit words (qubit 0 is bit 0 of word 0).
    pub fn from_words(n: usize, x: &[u64], z: &[u64], phase: Phase) -> Result<Self> {
        let w = words_for(n);
        if x.len() != w || z.len() != w {
            return Err(Error::Dimension {
                expected: w,
                found: x.len().max(z.len()),
            });
        }
        let mut p = PauliOperator {
            n,
            x: x.into(),
            z: z.into(),
            phase,
        };
        p.mask_tail();
        Ok(p)
    }

    fn mask_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            if let Some(last) = self.x.last_mut() {
                *last &= mask;
            }
            if let Some(last) = self.z.last_mut() {
                *last &= mask;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    /// Same letters with phase `+1`.
    pub fn unsigned(&self) -> Self {
        self.clone().with_phase(Phase::ONE)
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn x_bit(&self, q: usize) -> bool {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        (self.x[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        (self.z[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n).map(|q| self.letter(q)).collect()
    }

    /// Overwrites the letter on `q`, leaving the phase untouched.
    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (xb, zb) = letter.bits();
        let (w, b) = (q / 64, q % 64);
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| self.x_bit(q) || self.z_bit(q))
            .collect()
    }

    /// True when every letter is `I` (any phase).
    pub fn is_trivial(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    /// True when this is exactly `+I`.
    pub fn is_identity(&self) -> bool {
        self.is_trivial() && self.phase == Phase::ONE
    }

    pub fn is_x_type(&self) -> bool {
        self.z.iter().all(|&w| w == 0)
    }

    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    fn check_dim(&self, other: &PauliOperator) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// `self ← self · other`; dimensions must already agree.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &PauliOperator) {
        debug_assert_eq!(self.n, other.n);
        let mut plus = 0u32;
        let mut minus = 0u32;
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (a_x, a_y, a_z) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (b_x, b_y, b_z) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, YZ = iX, ZX = iY and their reverses pick up -i.
            plus += ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).count_ones();
            minus += ((a_x & b_z) | (a_y & b_x) | (a_z & b_y)).count_ones();
            self.x[w] = x1 ^ x2;
            self.z[w] = z1 ^ z2;
        }
        let k = self.phase.0 as i64 + other.phase.0 as i64 + plus as i64 - minus as i64;
        self.phase = Phase::from_exponent(k);
    }

    /// Inverse element: the letters are Hermitian and self-inverse, so only the
    /// phase is conjugated.
    pub fn inverse(&self) -> PauliOperator {
        let mut p = self.clone();
        p.phase = p.phase.conj();
        p
    }

    /// Symplectic test: `true` iff `<x1,z2> + <z1,x2>` is even.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliOperator) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() & 1;
        }
        parity == 0
    }

    /// Places qubit `j` of `self` at `positions[j]` of a `total`-qubit register.
    pub fn embed(&self, total: usize, positions: &[usize]) -> Result<PauliOperator> {
        if positions.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: positions.len(),
            });
        }
        let mut out = PauliOperator::identity(total);
        for (j, &pos) in positions.iter().enumerate() {
            if pos >= total {
                return Err(Error::Dimension {
                    expected: total,
                    found: pos + 1,
                });
            }
            out.set_letter(pos, self.letter(j));
        }
        out.phase = self.phase;
        Ok(out)
    }

    pub fn embed_at(&self, total: usize, offset: usize) -> Result<PauliOperator> {
        let positions: Vec<usize> = (offset..offset + self.n).collect();
        self.embed(total, &positions)
    }

    /// Letters on `positions`, with phase `+1`.
    pub fn restrict(&self, positions: &[usize]) -> PauliOperator {
        let mut out = PauliOperator::identity(positions.len());
        for (j, &pos) in positions.iter().enumerate() {
            out.set_letter(j, self.letter(pos));
        }
        out
    }

    pub fn restrict_range(&self, range: std::ops::Range<usize>) -> PauliOperator {
        let positions: Vec<usize> = range.collect();
        self.restrict(&positions)
    }

    /// Overwrites the letters on `positions` with those of `part` (phase kept).
    pub fn overwrite(&mut self, positions: &[usize], part: &PauliOperator) {
        for (j, &pos) in positions.iter().enumerate() {
            self.set_letter(pos, part.letter(j));
        }
    }

    /// Deterministic order: weight, then X bits, then Z bits, each bit vector
    /// read as a little-endian integer (qubit 0 least significant).
    pub fn canonical_cmp(&self, other: &PauliOperator) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| cmp_le_words(&self.x, &other.x))
            .then_with(|| cmp_le_words(&self.z, &other.z))
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

fn cmp_le_words(a: &[u64], b: &[u64]) -> Ordering {
    for (wa, wb) in a.iter().rev().zip(b.iter().rev()) {
        match wa.cmp(wb) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase.prefix())?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Accepts `[+|-][i]LETTERS`, e.g. `+XIZZY`, `-iYY`, `ZZ`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (0i64, &s[1..]),
            Some(b'-') => (2i64, &s[1..]),
            _ => (0i64, s),
        };
        let (imag, letters) = match rest.strip_prefix('i') {
            Some(r) => (1i64, r),
            None => (0i64, rest),
        };
        let parsed: Option<Vec<Letter>> = letters.chars().map(Letter::from_char).collect();
        let parsed = parsed.ok_or_else(|| Error::Parse(format!("bad Pauli string `{s}`")))?;
        if parsed.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string `{s}`")));
        }
        Ok(PauliOperator::from_letters(
            Phase::from_exponent(sign + imag),
            &parsed,
        ))
    }
}

impl std::ops::Mul for &PauliOperator {
    type Output = PauliOperator;

    /// Panics on mismatched register sizes; use [`PauliOperator::multiply`]
    /// for a checked product.
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.multiply(rhs).expect("Pauli dimension mismatch")
    }
}
