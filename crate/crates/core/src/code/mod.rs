//! Stabilizer codes with one logical qubit: the base-code catalog, syndromes,
//! coset enumeration, exact distance and lookup decoding.

mod catalog;
mod decoder;
mod library;

pub use catalog::{Catalog, TransversalOp, TransversalRule, TransversalTarget, BUILTIN_CATALOG};
pub use decoder::{residual_logical_action, shared_decoder, LookupDecoder};
pub use library::{five_prime, five_qubit, reed_muller_15, steane, transform_code};

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator, Phase};
use crate::symplectic::EchelonForm;

/// Largest `n - k` for which cosets are enumerated exhaustively.
pub const MAX_ENUMERABLE_GENERATORS: usize = 20;

/// An `[[n, 1, d]]` stabilizer code.
#[derive(Clone, PartialEq)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
    css: bool,
    derivation: Option<String>,
    transversal: Vec<TransversalRule>,
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerCode({}, n={})", self.name, self.n)
    }
}

impl StabilizerCode {
    /// Builds and validates a code: generators commute and are independent,
    /// logicals commute with every generator and anticommute with each other,
    /// and CSS codes have pure X/Z generators.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<PauliOperator>,
        logical_x: PauliOperator,
        logical_z: PauliOperator,
        css: bool,
    ) -> Result<Self> {
        let name = name.into();
        let n = logical_x.n();
        let bad = |msg: String| Error::InvalidCode(format!("{name}: {msg}"));
        for g in generators.iter().chain([&logical_x, &logical_z]) {
            if g.n() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        if generators.len() + 1 != n {
            return Err(bad(format!(
                "expected {} generators for one logical qubit, got {}",
                n - 1,
                generators.len()
            )));
        }
        for (i, a) in generators.iter().enumerate() {
            if !matches!(a.phase(), Phase::ONE | Phase::MINUS_ONE) {
                return Err(bad(format!("generator {a} is not Hermitian")));
            }
            for b in &generators[i + 1..] {
                if !a.commutes_unchecked(b) {
                    return Err(bad(format!("generators {a} and {b} anticommute")));
                }
            }
            if !a.commutes_unchecked(&logical_x) || !a.commutes_unchecked(&logical_z) {
                return Err(bad(format!("generator {a} does not commute with the logicals")));
            }
            if css && !(a.is_x_type() || a.is_z_type()) {
                return Err(bad(format!("generator {a} is mixed in a CSS code")));
            }
        }
        if logical_x.commutes_unchecked(&logical_z) {
            return Err(bad("logical X and Z commute".into()));
        }
        if EchelonForm::new(n, &generators).rank() != generators.len() {
            return Err(bad("generators are not independent".into()));
        }
        let mut all = generators.clone();
        all.push(logical_x.clone());
        all.push(logical_z.clone());
        if EchelonForm::new(n, &all).rank() != n + 1 {
            return Err(bad("logical operators lie in the stabilizer group".into()));
        }
        Ok(StabilizerCode {
            name,
            n,
            generators,
            logical_x,
            logical_z,
            css,
            derivation: None,
            transversal: Vec::new(),
        })
    }

    pub fn with_derivation(mut self, derivation: impl Into<String>) -> Self {
        self.derivation = Some(derivation.into());
        self
    }

    pub fn with_transversal(mut self, rules: Vec<TransversalRule>) -> Self {
        self.transversal = rules;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &PauliOperator {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOperator {
        &self.logical_z
    }

    pub fn is_css(&self) -> bool {
        self.css
    }

    pub fn derivation(&self) -> Option<&str> {
        self.derivation.as_deref()
    }

    pub fn transversal_rules(&self) -> &[TransversalRule] {
        &self.transversal
    }

    /// Representative of a logical class; `Y` is `i · X_L · Z_L`.
    pub fn logical(&self, class: Letter) -> PauliOperator {
        match class {
            Letter::I => PauliOperator::identity(self.n),
            Letter::X => self.logical_x.clone(),
            Letter::Z => self.logical_z.clone(),
            Letter::Y => {
                let xz = &self.logical_x * &self.logical_z;
                let phase = xz.phase().mul(Phase::I);
                xz.with_phase(phase)
            }
        }
    }

    /// Bit `i` is set iff `error` anticommutes with generator `i`.
    pub fn syndrome(&self, error: &PauliOperator) -> Result<Vec<bool>> {
        if error.n() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: error.n(),
            });
        }
        Ok(self
            .generators
            .iter()
            .map(|g| !g.commutes_unchecked(error))
            .collect())
    }

    /// Syndrome packed into an integer, generator `i` at bit `i`; the index
    /// used by [`LookupDecoder::with_entry`].
    pub fn syndrome_key(&self, error: &PauliOperator) -> u64 {
        debug_assert!(self.generators.len() <= 64);
        self.generators
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, g)| {
                acc | ((!g.commutes_unchecked(error) as u64) << i)
            })
    }

    /// Logical class of an operator in the normalizer, `None` if it has a
    /// nonzero syndrome.
    pub fn logical_class(&self, op: &PauliOperator) -> Option<Letter> {
        if self.generators.iter().any(|g| !g.commutes_unchecked(op)) {
            return None;
        }
        let x = !op.commutes_unchecked(&self.logical_z);
        let z = !op.commutes_unchecked(&self.logical_x);
        Some(Letter::from_bits(x, z))
    }

    /// Every element `rep · s` for `s` in the stabilizer group, with exact phases.
    pub fn coset(&self, class: Letter) -> Result<Vec<PauliOperator>> {
        let r = self.generators.len();
        if r > MAX_ENUMERABLE_GENERATORS {
            return Err(Error::SizeLimit {
                what: "coset enumeration (generators)",
                limit: MAX_ENUMERABLE_GENERATORS,
                requested: r,
            });
        }
        let mut current = self.logical(class);
        let mut out = Vec::with_capacity(1 << r);
        out.push(current.clone());
        // Gray-code walk: step i flips generator `trailing_zeros(i)`.
        for i in 1u64..(1u64 << r) {
            let g = i.trailing_zeros() as usize;
            current.mul_assign_unchecked(&self.generators[g]);
            out.push(current.clone());
        }
        Ok(out)
    }

    /// Minimum-weight coset member; ties broken by [`PauliOperator::canonical_cmp`].
    pub fn min_weight_logical(&self, class: Letter) -> Result<PauliOperator> {
        if class == Letter::I {
            return Err(Error::Parse("logical class must be X, Y or Z".into()));
        }
        let coset = self.coset(class)?;
        Ok(coset
            .into_iter()
            .min_by(|a, b| a.canonical_cmp(b))
            .expect("non-empty coset"))
    }

    /// Exact distance by full coset enumeration of the three nontrivial classes.
    pub fn distance(&self) -> Result<usize> {
        let mut d = usize::MAX;
        for class in Letter::NONTRIVIAL {
            d = d.min(self.min_weight_logical(class)?.weight());
        }
        Ok(d)
    }

    /// Stable 16-hex-digit digest of the canonical catalog text of this code.
    pub fn fingerprint(&self) -> String {
        let text = catalog::dump_code(self);
        let digest = Sha256::digest(text.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// First rule realizing `logical`, if any.
    pub fn transversal_rule(&self, logical: &crate::circuit::GateKind) -> Option<&TransversalRule> {
        let want = logical.canonical();
        self.transversal.iter().find(|r| r.logical.canonical() == want)
    }
}
