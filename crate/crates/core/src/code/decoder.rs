use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator, Phase};

use super::StabilizerCode;

/// Largest syndrome table built (2^16 entries).
pub const MAX_TABLE_BITS: usize = 16;

/// Syndrome → minimum-weight correction, ties broken on (weight, X bits,
/// Z bits) read as little-endian integers.
#[derive(Clone, Debug)]
pub struct LookupDecoder {
    code: Arc<StabilizerCode>,
    table: Vec<PauliOperator>,
}

struct Builder {
    n: usize,
    masks_x: Vec<u64>,
    masks_z: Vec<u64>,
    best: Vec<Option<(u64, u64)>>,
    filled: usize,
}

impl Builder {
    fn visit(&mut self, x: u64, z: u64, synd: u64) {
        let slot = &mut self.best[synd as usize];
        match slot {
            None => {
                *slot = Some((x, z));
                self.filled += 1;
            }
            // Slots filled at a lower weight are never revisited at this
            // weight because candidates arrive in weight order; equal-weight
            // ties keep the smaller (x, z).
            Some((bx, bz)) => {
                if (x | z).count_ones() == (*bx | *bz).count_ones() && (x, z) < (*bx, *bz) {
                    *slot = Some((x, z));
                }
            }
        }
    }

    fn enumerate(&mut self, start: usize, remaining: usize, x: u64, z: u64, synd: u64) {
        if remaining == 0 {
            self.visit(x, z, synd);
            return;
        }
        for q in start..=self.n - remaining {
            let bit = 1u64 << q;
            let (mx, mz) = (self.masks_x[q], self.masks_z[q]);
            self.enumerate(q + 1, remaining - 1, x | bit, z, synd ^ mx);
            self.enumerate(q + 1, remaining - 1, x, z | bit, synd ^ mz);
            self.enumerate(q + 1, remaining - 1, x | bit, z | bit, synd ^ mx ^ mz);
        }
    }
}

impl LookupDecoder {
    pub fn build(code: Arc<StabilizerCode>) -> Result<Self> {
        let r = code.generators().len();
        if r > MAX_TABLE_BITS || code.n() > 64 {
            return Err(Error::SizeLimit {
                what: "lookup table (syndrome bits)",
                limit: MAX_TABLE_BITS,
                requested: r,
            });
        }
        let n = code.n();
        let masks_x = (0..n)
            .map(|q| code.syndrome_key(&PauliOperator::single(n, q, Letter::X)))
            .collect();
        let masks_z = (0..n)
            .map(|q| code.syndrome_key(&PauliOperator::single(n, q, Letter::Z)))
            .collect();
        let mut b = Builder {
            n,
            masks_x,
            masks_z,
            best: vec![None; 1 << r],
            filled: 0,
        };
        for w in 0..=n {
            b.enumerate(0, w, 0, 0, 0);
            if b.filled == 1 << r {
                break;
            }
        }
        if b.filled != 1 << r {
            return Err(Error::Internal(format!(
                "{}: syndrome table incomplete",
                code.name()
            )));
        }
        let table = b
            .best
            .into_iter()
            .map(|e| {
                let (x, z) = e.expect("filled");
                PauliOperator::from_words(n, &[x], &[z], Phase::ONE).expect("one word")
            })
            .collect();
        Ok(LookupDecoder { code, table })
    }

    pub fn code(&self) -> &Arc<StabilizerCode> {
        &self.code
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// All corrections indexed by syndrome integer (bit `i` = generator `i`).
    pub fn entries(&self) -> &[PauliOperator] {
        &self.table
    }

    pub fn decode(&self, syndrome: &[bool]) -> Result<PauliOperator> {
        let r = self.code.generators().len();
        if syndrome.len() != r {
            return Err(Error::Dimension {
                expected: r,
                found: syndrome.len(),
            });
        }
        let key = syndrome
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i));
        Ok(self.table[key].clone())
    }

    pub(crate) fn decode_key(&self, key: u64) -> &PauliOperator {
        &self.table[key as usize]
    }

    /// Replaces one table entry; used to build deliberately broken decoders
    /// for mutation tests.
    pub fn with_entry(mut self, syndrome_key: usize, correction: PauliOperator) -> Self {
        self.table[syndrome_key] = correction;
        self
    }

    /// Residual logical action of `error` after ideal syndrome measurement
    /// and correction.
    pub fn residual(&self, error: &PauliOperator) -> Result<Letter> {
        if error.n() != self.code.n() {
            return Err(Error::Dimension {
                expected: self.code.n(),
                found: error.n(),
            });
        }
        let correction = self.decode_key(self.code.syndrome_key(error));
        let product = correction * error;
        self.code.logical_class(&product).ok_or_else(|| {
            Error::Internal(format!(
                "{}: correction {correction} leaves {product} with a nonzero syndrome",
                self.code.name()
            ))
        })
    }
}

/// Residual logical action of `error` on `code` under `decoder`.
pub fn residual_logical_action(
    code: &StabilizerCode,
    error: &PauliOperator,
    decoder: &LookupDecoder,
) -> Result<Letter> {
    if decoder.code().as_ref() != code {
        return Err(Error::Internal(format!(
            "decoder built for {} used on {}",
            decoder.code().name(),
            code.name()
        )));
    }
    decoder.residual(error)
}

/// Process-wide decoder cache keyed by code fingerprint.
pub fn shared_decoder(code: &Arc<StabilizerCode>) -> Result<Arc<LookupDecoder>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<LookupDecoder>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = code.fingerprint();
    if let Some(d) = cache.lock().expect("decoder cache").get(&key) {
        return Ok(d.clone());
    }
    let built = Arc::new(LookupDecoder::build(code.clone())?);
    Ok(cache
        .lock()
        .expect("decoder cache")
        .entry(key)
        .or_insert(built)
        .clone())
}
