//! Codeword-coset verification for circuits of diagonal and bit-permuting
//! gates on CSS blocks: every codeword is a uniform superposition over an X
//! coset, so the logical action is read off classical strings with exact
//! phase arithmetic.

use crate::circuit::{Angle, GadgetCircuit, Gate, GateKind};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::Phase;

use super::{Certificate, Method};

/// Largest total number of X-type generators enumerated.
pub const MAX_COSET_BITS: usize = 20;

#[derive(Default)]
struct XorBasis {
    rows: Vec<(u32, u128)>,
}

impl XorBasis {
    fn reduce(&self, mut v: u128) -> u128 {
        for &(p, r) in &self.rows {
            if v >> p & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    fn insert(&mut self, v: u128) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = 127 - v.leading_zeros();
        for row in &mut self.rows {
            if row.1 >> p & 1 == 1 {
                row.1 ^= v;
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Gates this verifier can follow through classical strings.
pub fn supports(g: &GateKind) -> bool {
    g.is_diagonal() || matches!(g, GateKind::X | GateKind::Y | GateKind::Cnot)
}

fn run(gates: &[Gate], mut v: u128, mut phase: Angle) -> Result<(u128, Angle)> {
    for g in gates {
        let bit = |q: usize| (v >> q) & 1 == 1;
        if let Some((_, theta)) = g.kind.diagonal() {
            if g.qubits.iter().all(|&q| bit(q)) {
                phase = phase.add(theta);
            }
            continue;
        }
        match g.kind {
            GateKind::X => v ^= 1 << g.qubits[0],
            GateKind::Y => {
                // Y|b⟩ = i(−1)^b |b⊕1⟩.
                let b = bit(g.qubits[0]) as i64;
                phase = phase.add(Angle::pi_fraction(1 + 2 * b, 2));
                v ^= 1 << g.qubits[0];
            }
            GateKind::Cnot => {
                if bit(g.qubits[0]) {
                    v ^= 1 << g.qubits[1];
                }
            }
            _ => {
                return Err(Error::UnsupportedGate(format!(
                    "{} is neither diagonal nor a bit permutation",
                    g.kind
                )))
            }
        }
    }
    Ok((v, phase))
}

fn bits_of(p: &crate::pauli::PauliOperator, offset: usize, x: bool) -> u128 {
    (0..p.n())
        .filter(|&q| if x { p.x_bit(q) } else { p.z_bit(q) })
        .fold(0u128, |acc, q| acc | 1u128 << (offset + q))
}

/// Checks that `circuit` maps every logical basis codeword `|b̄⟩` of the CSS
/// blocks to `e^{iφ}` times the codeword named by `claim`, with one common
/// global phase and a constant phase across each output coset.
pub fn verify_diagonal_gate_css(
    codes: &[&StabilizerCode],
    circuit: &GadgetCircuit,
    claim: &GateKind,
) -> Result<Certificate> {
    let total: usize = codes.iter().map(|c| c.n()).sum();
    if total != circuit.register_size || total > 128 {
        return Err(Error::SizeLimit {
            what: "css coset register (qubits)",
            limit: 128,
            requested: total,
        });
    }
    if let Some(g) = circuit.gates.iter().find(|g| !supports(&g.kind)) {
        return Err(Error::UnsupportedGate(format!(
            "css coset check cannot follow {}",
            g.kind
        )));
    }
    let m = codes.len();
    let mut gens = Vec::new();
    let mut logical_x = Vec::new();
    let mut offset = 0;
    for c in codes {
        let ok_gens = c.generators().iter().all(|g| {
            g.is_x_type() || (g.is_z_type() && g.phase() == Phase::ONE)
        });
        if !c.is_css() || !ok_gens || !c.logical_x().is_x_type() || c.logical_x().phase() != Phase::ONE {
            return Err(Error::UnsupportedGate(format!(
                "{} lacks the CSS form the coset check needs",
                c.name()
            )));
        }
        for g in c.generators().iter().filter(|g| g.is_x_type()) {
            if g.phase() != Phase::ONE {
                return Err(Error::UnsupportedGate(format!("{}: signed X generator", c.name())));
            }
            gens.push(bits_of(g, offset, true));
        }
        logical_x.push(bits_of(c.logical_x(), offset, true));
        offset += c.n();
    }
    if gens.len() > MAX_COSET_BITS {
        return Err(Error::SizeLimit {
            what: "css coset enumeration (X generators)",
            limit: MAX_COSET_BITS,
            requested: gens.len(),
        });
    }
    let mut basis = XorBasis::default();
    for &g in &gens {
        basis.insert(g);
    }
    let claim_qubits: Vec<usize> = (0..m).collect();
    let claim_gate = Gate::new(claim.clone(), &claim_qubits)?;
    if !supports(claim) {
        return Err(Error::UnsupportedGate(format!("claimed {claim} is not monomial")));
    }
    let base = |b: u128| -> u128 {
        (0..m)
            .filter(|&i| b >> i & 1 == 1)
            .fold(0u128, |acc, i| acc ^ logical_x[i])
    };
    let mut global: Option<Angle> = None;
    let strings = 1u64 << gens.len();
    for b in 0..(1u128 << m) {
        let (target, want) = run(std::slice::from_ref(&claim_gate), b, Angle::ZERO)?;
        let target_base = base(target);
        let mut v = base(b);
        let mut coset_phase: Option<Angle> = None;
        for i in 0..strings {
            if i > 0 {
                v ^= gens[i.trailing_zeros() as usize];
            }
            let (out, ph) = run(&circuit.gates, v, Angle::ZERO)?;
            if basis.reduce(out ^ target_base) != 0 {
                return Ok(Certificate::new(
                    Method::CssCoset,
                    false,
                    0.0,
                    format!("logical input {b:0m$b}: output string leaves the claimed coset"),
                ));
            }
            match coset_phase {
                None => coset_phase = Some(ph),
                Some(p) if p != ph => {
                    return Ok(Certificate::new(
                        Method::CssCoset,
                        false,
                        0.0,
                        format!("logical input {b:0m$b}: phase varies within the coset ({p} vs {ph})"),
                    ))
                }
                _ => {}
            }
        }
        let delta = coset_phase.expect("nonempty").add(want.neg());
        match global {
            None => global = Some(delta),
            Some(g) if g != delta => {
                return Ok(Certificate::new(
                    Method::CssCoset,
                    false,
                    0.0,
                    format!("logical input {b:0m$b}: relative phase {delta} differs from {g}"),
                ))
            }
            _ => {}
        }
    }
    let global = global.expect("at least one input");
    let mut cert = Certificate::new(
        Method::CssCoset,
        true,
        1.0,
        format!(
            "{strings} coset strings per logical input, {} inputs, exact phases",
            1u64 << m
        ),
    );
    cert.phase = Some([global.phase().re, global.phase().im]);
    cert.global_phase = Some(global.to_string());
    Ok(cert)
}
