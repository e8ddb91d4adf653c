//! Fault tolerance under the gate-fault model: Pauli faults at circuit
//! inputs and gate outputs, pushed to the end of a gadget, then decoded once
//! by an ideal hierarchical decoder.

mod propagate;
mod revalidate;

pub use propagate::{diagonal_branches, FaultModel, PropagationResult};
pub use revalidate::{revalidate_dense, DenseCheck};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{GadgetCircuit, GateKind};
use crate::concat::ConcatenationLayout;
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::verify::admit;

/// Default cap on the number of location pairs a search may visit.
pub const DEFAULT_PAIR_BUDGET: u64 = 5_000_000;

/// One-line statement of what the analysis models.
pub const FAULT_MODEL: &str = "Pauli faults on circuit inputs of touched qubits and on gate outputs, \
no idle faults, one ideal round of hierarchical error correction at gadget end";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaultSite {
    /// Before the first gate.
    Input,
    /// Right after the gate with this index.
    Gate(usize),
}

impl FaultSite {
    /// Number of gates applied before the fault acts.
    pub fn position(self) -> usize {
        match self {
            FaultSite::Input => 0,
            FaultSite::Gate(g) => g + 1,
        }
    }
}

/// A Pauli injected on `qubits` at `site`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaultLocation {
    pub site: FaultSite,
    pub qubits: Vec<usize>,
    /// Pauli on `qubits`, in order.
    pub pauli: PauliOperator,
}

impl FaultLocation {
    pub fn new(site: FaultSite, qubits: Vec<usize>, pauli: PauliOperator) -> Result<Self> {
        if pauli.n() != qubits.len() {
            return Err(Error::Dimension {
                expected: qubits.len(),
                found: pauli.n(),
            });
        }
        if pauli.is_identity() {
            return Err(Error::Parse("fault with trivial Pauli".into()));
        }
        Ok(FaultLocation { site, qubits, pauli })
    }

    /// The fault on the full register.
    pub fn lift(&self, register: usize) -> Result<PauliOperator> {
        self.pauli.unsigned().embed(register, &self.qubits)
    }
}

impl fmt::Display for FaultLocation {
    /// `input 3 X` or `12 3,7 XZ`, the body of a replay `fault` line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.site {
            FaultSite::Input => write!(f, "input")?,
            FaultSite::Gate(g) => write!(f, "{g}")?,
        }
        let qs: Vec<String> = self.qubits.iter().map(|q| q.to_string()).collect();
        let letters: String = (0..self.pauli.n()).map(|j| self.pauli.letter(j).as_char()).collect();
        write!(f, " {} {letters}", qs.join(","))
    }
}

impl FromStr for FaultLocation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad fault `{s}`"));
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [site, qs, letters] = parts[..] else {
            return Err(bad());
        };
        let site = match site {
            "input" => FaultSite::Input,
            g => FaultSite::Gate(g.parse().map_err(|_| bad())?),
        };
        let qubits = qs
            .split(',')
            .map(|q| q.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let letters = letters
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let pauli = PauliOperator::from_letters(crate::pauli::Phase::ONE, &letters);
        FaultLocation::new(site, qubits, pauli)
    }
}

impl Serialize for FaultLocation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Every fault location of `c`: three input Paulis on each touched qubit,
/// then for each gate all `4^a − 1` Paulis on its qubits. Block-logical
/// gates get their three logical faults plus every single-qubit fault.
pub fn enumerate_locations(c: &GadgetCircuit) -> Vec<FaultLocation> {
    let mut out = Vec::new();
    for q in c.touched() {
        for l in Letter::NONTRIVIAL {
            out.push(FaultLocation {
                site: FaultSite::Input,
                qubits: vec![q],
                pauli: PauliOperator::single(1, 0, l),
            });
        }
    }
    for (i, g) in c.gates.iter().enumerate() {
        let site = FaultSite::Gate(i);
        let qubits: Vec<usize> = g.qubits.to_vec();
        if let GateKind::BlockLogical { code, .. } = &g.kind {
            for l in Letter::NONTRIVIAL {
                out.push(FaultLocation {
                    site,
                    qubits: qubits.clone(),
                    pauli: code.logical(l).unsigned(),
                });
            }
            for j in 0..qubits.len() {
                for l in Letter::NONTRIVIAL {
                    out.push(FaultLocation {
                        site,
                        qubits: vec![qubits[j]],
                        pauli: PauliOperator::single(1, 0, l),
                    });
                }
            }
            continue;
        }
        let a = qubits.len();
        for t in 1..(1usize << (2 * a)) {
            let letters: Vec<Letter> = (0..a).map(|j| Letter::ALL[(t >> (2 * j)) & 3]).collect();
            out.push(FaultLocation {
                site,
                qubits: qubits.clone(),
                pauli: PauliOperator::from_letters(crate::pauli::Phase::ONE, &letters),
            });
        }
    }
    out
}

/// One uncorrectable outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaultFailure {
    pub faults: Vec<FaultLocation>,
    /// Physical Pauli at gadget end.
    pub branch: String,
    /// Residual logical letter on each operand block.
    pub residual: String,
}

/// A failing fault set, ready for replay.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub faults: Vec<FaultLocation>,
    pub branch: String,
    pub residual: String,
    /// Statevector confirmation when the register is small enough.
    pub dense: Option<DenseCheck>,
}

impl Witness {
    fn from_failure(f: FaultFailure) -> Self {
        Witness {
            faults: f.faults,
            branch: f.branch,
            residual: f.residual,
            dense: None,
        }
    }

    pub fn size(&self) -> usize {
        self.faults.len()
    }
}

/// Result of a fault campaign on one gadget.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaultReport {
    pub layout: String,
    pub layout_fingerprint: String,
    pub gadget: String,
    pub fault_model: &'static str,
    pub input_locations: usize,
    pub gate_locations: usize,
    pub locations_checked: usize,
    pub branches_checked: usize,
    pub failure_count: usize,
    /// The first failures in location order (at most [`MAX_LISTED_FAILURES`]).
    pub failures: Vec<FaultFailure>,
    /// Smallest failing fault-set size found, if any.
    pub min_uncorrectable_size: Option<usize>,
    /// Largest fault-set size searched exhaustively.
    pub searched_up_to: usize,
    pub pairs_checked: Option<u64>,
    pub witness: Option<Witness>,
}

pub const MAX_LISTED_FAILURES: usize = 32;

impl FaultReport {
    /// `min_uncorrectable_size` as text: `"2"` or `"none ≤ 2"`.
    pub fn min_uncorrectable_text(&self) -> String {
        match self.min_uncorrectable_size {
            Some(s) => s.to_string(),
            None => format!("none ≤ {}", self.searched_up_to),
        }
    }
}

fn decode_branch(model: &FaultModel, faults: &[usize], branch: &PauliOperator) -> Result<Option<FaultFailure>> {
    let residual = model.residual(branch)?;
    if residual.iter().all(|&l| l == Letter::I) {
        return Ok(None);
    }
    Ok(Some(FaultFailure {
        faults: faults.iter().map(|&i| model.locations()[i].clone()).collect(),
        branch: branch.to_string(),
        residual: residual.iter().map(|l| l.as_char()).collect(),
    }))
}

/// Propagates the fault set and returns its first failing branch together
/// with the number of branches examined.
fn first_failure(model: &FaultModel, faults: &[usize]) -> Result<(usize, Option<FaultFailure>)> {
    let prop = model.propagate(faults)?;
    for b in &prop.branches {
        if let Some(f) = decode_branch(model, faults, b)? {
            return Ok((prop.branches.len(), Some(f)));
        }
    }
    Ok((prop.branches.len(), None))
}

/// Exhaustive single-fault campaign: every location, every branch.
pub fn check_single_fault_ft(layout: &ConcatenationLayout, c: &GadgetCircuit) -> Result<FaultReport> {
    let model = FaultModel::new(layout, c)?;
    let results = (0..model.locations().len())
        .into_par_iter()
        .map(|i| -> Result<(usize, Vec<FaultFailure>)> {
            let prop = model.propagate(&[i])?;
            let mut fails = Vec::new();
            for b in &prop.branches {
                if let Some(f) = decode_branch(&model, &[i], b)? {
                    fails.push(f);
                }
            }
            Ok((prop.branches.len(), fails))
        })
        .collect::<Result<Vec<_>>>()?;
    let branches_checked = results.iter().map(|r| r.0).sum();
    let all: Vec<FaultFailure> = results.into_iter().flat_map(|r| r.1).collect();
    let mut report = base_report(layout, &model);
    report.branches_checked = branches_checked;
    report.failure_count = all.len();
    report.searched_up_to = 1;
    if let Some(first) = all.first() {
        report.min_uncorrectable_size = Some(1);
        report.witness = Some(Witness::from_failure(first.clone()));
    }
    report.failures = all.into_iter().take(MAX_LISTED_FAILURES).collect();
    Ok(report)
}

fn base_report(layout: &ConcatenationLayout, model: &FaultModel) -> FaultReport {
    let inputs = model
        .locations()
        .iter()
        .filter(|l| l.site == FaultSite::Input)
        .count();
    FaultReport {
        layout: layout.name().to_string(),
        layout_fingerprint: layout.fingerprint(),
        gadget: model.circuit().label.clone(),
        fault_model: FAULT_MODEL,
        input_locations: inputs,
        gate_locations: model.locations().len() - inputs,
        locations_checked: model.locations().len(),
        branches_checked: 0,
        failure_count: 0,
        failures: Vec::new(),
        min_uncorrectable_size: None,
        searched_up_to: 0,
        pairs_checked: None,
        witness: None,
    }
}

/// Number of unordered location pairs of `c`, the pair-search cost estimate.
pub fn pair_estimate(c: &GadgetCircuit) -> u64 {
    let l = enumerate_locations(c).len() as u64;
    l * l.saturating_sub(1) / 2
}

/// Searches fault sets of size 1 and then 2 (when `max_faults` is 2) in
/// lexicographic location order and returns the first failing set.
/// Witnesses on registers of at most 22 qubits are replayed densely.
pub fn find_min_uncorrectable(
    layout: &ConcatenationLayout,
    c: &GadgetCircuit,
    max_faults: usize,
    budget: u64,
) -> Result<FaultReport> {
    if !(1..=2).contains(&max_faults) {
        return Err(Error::SizeLimit {
            what: "fault-set size",
            limit: 2,
            requested: max_faults,
        });
    }
    let model = FaultModel::new(layout, c)?;
    let n_loc = model.locations().len();
    let mut report = base_report(layout, &model);
    let singles = (0..n_loc)
        .into_par_iter()
        .map(|i| first_failure(&model, &[i]))
        .collect::<Result<Vec<_>>>()?;
    report.branches_checked = singles.iter().map(|s| s.0).sum();
    report.searched_up_to = 1;
    let mut witness = singles.into_iter().find_map(|s| s.1).map(Witness::from_failure);
    if witness.is_none() && max_faults == 2 {
        let estimate = (n_loc as u64) * (n_loc as u64).saturating_sub(1) / 2;
        if estimate > budget {
            return Err(Error::Budget { estimate, budget });
        }
        let found = (0..n_loc)
            .into_par_iter()
            .map(|i| -> Result<Option<(u64, FaultFailure)>> {
                for j in i + 1..n_loc {
                    if let (_, Some(f)) = first_failure(&model, &[i, j])? {
                        return Ok(Some((pair_rank(n_loc, i, j), f)));
                    }
                }
                Ok(None)
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        match found {
            Some(Err(e)) => return Err(e),
            Some(Ok(Some((rank, f)))) => {
                report.pairs_checked = Some(rank + 1);
                witness = Some(Witness::from_failure(f));
            }
            _ => {
                report.pairs_checked = Some(estimate);
                report.searched_up_to = 2;
            }
        }
    }
    if let Some(w) = witness.as_mut() {
        report.min_uncorrectable_size = Some(w.size());
        report.searched_up_to = w.size();
        if c.register_size <= crate::verify::MAX_DENSE_QUBITS && layout.is_bare() {
            w.dense = Some(revalidate_dense(layout, c, &w.faults)?);
        }
    }
    report.witness = witness;
    Ok(report)
}

/// Index of pair `(i, j)` in lexicographic order over `i < j < n`.
fn pair_rank(n: usize, i: usize, j: usize) -> u64 {
    let (n, i, j) = (n as u64, i as u64, j as u64);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Logical gates whose gadgets make up the layout's universal library:
/// the outer code's transversal non-Pauli gates, then `T` and `CCZ`.
pub fn universal_gate_set(layout: &ConcatenationLayout) -> Vec<GateKind> {
    let mut out = vec![GateKind::T, GateKind::Ccz];
    for rule in layout.outer().transversal_rules() {
        let g = &rule.logical;
        if !matches!(g, GateKind::X | GateKind::Y | GateKind::Z) && !out.contains(g) {
            out.push(g.clone());
        }
    }
    out
}

/// Admitted gadgets for every gate of [`universal_gate_set`].
pub fn universal_gadgets(layout: &ConcatenationLayout) -> Result<Vec<GadgetCircuit>> {
    universal_gate_set(layout)
        .iter()
        .map(|g| admit(layout, g).map(|a| a.circuit.clone()))
        .collect()
}

/// Per-gadget line of an effective-distance campaign.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GadgetSummary {
    pub gadget: String,
    pub locations: usize,
    pub branches: usize,
    pub single_fault_failures: usize,
    /// Pair search outcome: `"witness"`, `"clean"`, `"skipped"` or `"over budget (N pairs)"`.
    pub pairs: String,
}

/// Effective distance of a layout over a gadget set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EffectiveDistance {
    pub layout: String,
    /// Exact value when a witness pins it down.
    pub value: Option<usize>,
    /// Human-readable bound, e.g. `"3"` or `"≥ 5"`.
    pub bound: String,
    pub gadgets: Vec<GadgetSummary>,
    pub witness_gadget: Option<String>,
    pub witness: Option<Witness>,
}

/// Effective distance `2w − 1` where `w` is the smallest uncorrectable
/// fault set found over `gadgets`. All single-fault suites run first; pair
/// searches then run gadget by gadget until one yields a witness.
pub fn effective_distance_report(
    layout: &ConcatenationLayout,
    gadgets: &[GadgetCircuit],
    budget: u64,
) -> Result<EffectiveDistance> {
    let mut summaries = Vec::new();
    let mut first_single: Option<(String, Witness)> = None;
    for g in gadgets {
        let r = check_single_fault_ft(layout, g)?;
        if first_single.is_none() {
            if let Some(w) = &r.witness {
                first_single = Some((g.label.clone(), w.clone()));
            }
        }
        summaries.push(GadgetSummary {
            gadget: g.label.clone(),
            locations: r.locations_checked,
            branches: r.branches_checked,
            single_fault_failures: r.failure_count,
            pairs: "skipped".into(),
        });
    }
    let mut out = EffectiveDistance {
        layout: layout.name().to_string(),
        value: None,
        bound: String::new(),
        gadgets: summaries,
        witness_gadget: None,
        witness: None,
    };
    if let Some((label, w)) = first_single {
        out.value = Some(1);
        out.bound = "1".into();
        out.witness_gadget = Some(label);
        out.witness = Some(w);
        return Ok(out);
    }
    let mut incomplete = false;
    for (i, g) in gadgets.iter().enumerate() {
        match find_min_uncorrectable(layout, g, 2, budget) {
            Ok(r) => {
                if let Some(w) = r.witness {
                    out.gadgets[i].pairs = "witness".into();
                    out.value = Some(2 * w.size() - 1);
                    out.bound = out.value.expect("set").to_string();
                    out.witness_gadget = Some(g.label.clone());
                    out.witness = Some(w);
                    return Ok(out);
                }
                out.gadgets[i].pairs = "clean".into();
            }
            Err(Error::Budget { estimate, .. }) => {
                out.gadgets[i].pairs = format!("over budget ({estimate} pairs)");
                incomplete = true;
            }
            Err(e) => return Err(e),
        }
    }
    out.bound = if incomplete { "≥ 3".into() } else { "≥ 5".into() };
    Ok(out)
}

/// Effective distance over the layout's full universal library.
pub fn layout_effective_distance(layout: &ConcatenationLayout, budget: u64) -> Result<EffectiveDistance> {
    let gadgets = universal_gadgets(layout)?;
    effective_distance_report(layout, &gadgets, budget)
}

/// Replay document: the circuit text, the layout and one `fault` line per
/// fault.
pub fn replay_text(layout: &ConcatenationLayout, c: &GadgetCircuit, faults: &[FaultLocation]) -> String {
    let mut s = format!("layout {}\n", layout.inline());
    for f in faults {
        s.push_str(&format!("fault {f}\n"));
    }
    s.push_str(&crate::circuit::write_circuit(c));
    s
}

/// A parsed replay document.
#[derive(Clone, Debug)]
pub struct Replay {
    pub layout: Arc<ConcatenationLayout>,
    pub circuit: GadgetCircuit,
    pub faults: Vec<FaultLocation>,
}

pub fn parse_replay(text: &str, catalog: &crate::code::Catalog) -> Result<Replay> {
    let mut layout = None;
    let mut faults = Vec::new();
    let mut rest = String::new();
    for line in text.lines() {
        if let Some(l) = line.strip_prefix("layout ") {
            layout = Some(crate::concat::parse_descriptor(l.trim(), catalog)?);
        } else if let Some(f) = line.strip_prefix("fault ") {
            faults.push(f.parse()?);
        } else {
            rest.push_str(line);
            rest.push('\n');
        }
    }
    let layout = layout.ok_or_else(|| Error::Parse("replay without a layout line".into()))?;
    let circuit = crate::circuit::parse_circuit(&rest, catalog)?;
    Ok(Replay {
        layout: Arc::new(layout),
        circuit,
        faults,
    })
}

/// Outcome of replaying a fault set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplayOutcome {
    pub faults: Vec<FaultLocation>,
    pub branches: usize,
    pub failing_branches: usize,
    pub first_failure: Option<FaultFailure>,
    pub dense: Option<DenseCheck>,
}

pub fn replay(r: &Replay) -> Result<ReplayOutcome> {
    let model = FaultModel::with_locations(&r.layout, &r.circuit, r.faults.clone())?;
    let ids: Vec<usize> = (0..r.faults.len()).collect();
    let prop = model.propagate(&ids)?;
    let mut failing = Vec::new();
    for b in &prop.branches {
        if let Some(f) = decode_branch(&model, &ids, b)? {
            failing.push(f);
        }
    }
    let dense = if r.circuit.register_size <= crate::verify::MAX_DENSE_QUBITS && r.layout.is_bare() {
        Some(revalidate_dense(&r.layout, &r.circuit, &r.faults)?)
    } else {
        None
    };
    Ok(ReplayOutcome {
        faults: r.faults.clone(),
        branches: prop.branches.len(),
        failing_branches: failing.len(),
        first_failure: failing.into_iter().next(),
        dense,
    })
}

#[cfg(test)]
mod tests;
