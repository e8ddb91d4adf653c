use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::GadgetCircuit;
use crate::code::shared_decoder;
use crate::concat::ConcatenationLayout;
use crate::error::{Error, Result};
use crate::verify::{encode, StateVector};

use super::FaultLocation;

/// Smallest syndrome-outcome probability followed.
const OUTCOME_FLOOR: f64 = 1e-12;
/// Fidelity below `1 − FIDELITY_SLACK` counts as a logical failure.
const FIDELITY_SLACK: f64 = 1e-9;

/// Statevector replay of a fault set followed by ideal syndrome projection
/// and lookup correction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseCheck {
    /// Inputs (same state on every operand) with a failing outcome.
    pub failing_inputs: Vec<String>,
    pub min_fidelity: f64,
    /// Total probability of failing outcomes, maximized over inputs.
    pub failure_probability: f64,
    pub confirmed: bool,
}

fn inputs() -> [(&'static str, Complex64, Complex64); 4] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = Complex64::new;
    [
        ("|0>", c(1.0, 0.0), c(0.0, 0.0)),
        ("|1>", c(0.0, 0.0), c(1.0, 0.0)),
        ("|+>", c(r, 0.0), c(r, 0.0)),
        ("|+i>", c(r, 0.0), c(0.0, r)),
    ]
}

fn run(c: &GadgetCircuit, state: &mut StateVector, faults: &[FaultLocation]) -> Result<()> {
    let n = c.register_size;
    for pos in 0..=c.gates.len() {
        for f in faults.iter().filter(|f| f.site.position() == pos) {
            state.apply_pauli(&f.lift(n)?)?;
        }
        if pos < c.gates.len() {
            state.apply_gate(&c.gates[pos])?;
        }
    }
    Ok(())
}

/// Replays `faults` on a bare layout of at most 22 qubits for the inputs
/// `|0⟩, |1⟩, |+⟩, |+i⟩`, follows every syndrome outcome and compares the
/// corrected state with the fault-free output.
pub fn revalidate_dense(
    layout: &ConcatenationLayout,
    c: &GadgetCircuit,
    faults: &[FaultLocation],
) -> Result<DenseCheck> {
    if !layout.is_bare() {
        return Err(Error::InvalidLayout(format!(
            "dense revalidation needs a bare layout, {} is concatenated",
            layout.name()
        )));
    }
    let code = layout.flattened();
    let decoder = shared_decoder(code)?;
    let n = code.n();
    let m = c.operands;
    let mut gens = Vec::new();
    for o in 0..m {
        for g in code.generators() {
            gens.push((o, g.embed_at(c.register_size, o * n)?));
        }
    }
    let r = code.generators().len();
    let mut check = DenseCheck {
        failing_inputs: Vec::new(),
        min_fidelity: 1.0,
        failure_probability: 0.0,
        confirmed: false,
    };
    for (name, a, b) in inputs() {
        let block = encode(code, a, b)?;
        let mut input = StateVector::basis(0, 0)?;
        for _ in 0..m {
            input = input.tensor(&block)?;
        }
        let mut ideal = input.clone();
        run(c, &mut ideal, &[])?;
        let mut noisy = input;
        run(c, &mut noisy, faults)?;
        let mut leaves = vec![(noisy, vec![0u64; m])];
        for (i, (o, g)) in gens.iter().enumerate() {
            let mut next = Vec::with_capacity(leaves.len() * 2);
            for (s, keys) in leaves {
                for (sign, bit) in [(1.0, 0u64), (-1.0, 1u64)] {
                    let mut t = s.clone();
                    t.project(g, sign)?;
                    if t.norm().powi(2) > OUTCOME_FLOOR {
                        let mut k = keys.clone();
                        k[*o] |= bit << (i % r);
                        next.push((t, k));
                    }
                }
            }
            leaves = next;
        }
        let mut failed = 0.0;
        for (mut s, keys) in leaves {
            for (o, key) in keys.iter().enumerate() {
                let corr = decoder.decode_key(*key).embed_at(c.register_size, o * n)?;
                s.apply_pauli(&corr)?;
            }
            let p = s.normalize().powi(2);
            let fid = ideal.inner(&s).norm_sqr();
            check.min_fidelity = check.min_fidelity.min(fid);
            if fid < 1.0 - FIDELITY_SLACK {
                failed += p;
            }
        }
        if failed > 0.0 {
            check.failing_inputs.push(name.to_string());
            check.failure_probability = check.failure_probability.max(failed);
        }
    }
    check.confirmed = !check.failing_inputs.is_empty();
    Ok(check)
}
