//! Command implementations behind the `nuqec` binary. Every command returns
//! a [`Report`]: one JSON value that both renderings are produced from.

mod table;

pub use table::render_table;

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::circuit::{write_circuit, GadgetCircuit, GateKind};
use crate::code::{Catalog, StabilizerCode};
use crate::concat::{parse_descriptor, presets, ConcatenationLayout};
use crate::error::{Error, Result};
use crate::ft::{
    check_single_fault_ft, effective_distance_report, find_min_uncorrectable, parse_replay, replay,
    replay_text, universal_gadgets, FaultReport,
};
use crate::verify::{admit, verify_transversal_rule};

pub const TOOL: &str = "nuqec";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
    Refused,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub catalog: String,
    pub status: Status,
    pub results: Value,
    /// Wall-clock time; the only field allowed to differ between runs.
    pub elapsed_ms: u64,
}

impl Report {
    fn new(command: impl Into<String>, catalog: &Catalog, status: Status, results: Value, start: Instant) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command: command.into(),
            catalog: catalog.fingerprint(),
            status,
            results,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }

    /// Pretty JSON.
    pub fn machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering of the same numbers.
    pub fn table(&self) -> String {
        render_table(self)
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failed | Status::Refused => 1,
        }
    }
}

/// Loads a catalog file, or the embedded catalog when `path` is `None`.
pub fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    match path {
        None => Ok(Catalog::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            Catalog::parse(&text)
        }
    }
}

/// A preset name, a descriptor file, or an inline descriptor.
pub fn resolve_layout(arg: &str, catalog: &Catalog) -> Result<ConcatenationLayout> {
    if presets::NAMES.contains(&arg) || arg.starts_with("bare_") {
        return presets::build(arg, catalog);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return parse_descriptor(&text, catalog);
    }
    parse_descriptor(arg, catalog)
}

/// Gate spec such as `T`, `CCZ` or `CKZ(2,pi/4)`; `theta` replaces the
/// angle of a diagonal gate.
pub fn resolve_gate(spec: &str, theta: Option<&str>) -> Result<GateKind> {
    let g = GateKind::parse_spec(spec)?;
    match theta {
        None => Ok(g),
        Some(t) => {
            let (k, _) = g.diagonal().ok_or_else(|| {
                Error::Parse(format!("--theta needs a diagonal gate, got {g}"))
            })?;
            Ok(GateKind::ckz(k, t.parse()?))
        }
    }
}

fn code_summary(code: &StabilizerCode) -> Result<Value> {
    Ok(json!({
        "name": code.name(),
        "n": code.n(),
        "k": code.k(),
        "d": code.distance()?,
        "css": code.is_css(),
        "transversal": code.transversal_rules().iter().map(|r| r.logical.label()).collect::<Vec<_>>(),
    }))
}

pub fn cmd_codes_list(catalog: &Catalog) -> Result<Report> {
    let start = Instant::now();
    let codes = catalog
        .codes()
        .iter()
        .map(|c| code_summary(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new("codes list", catalog, Status::Ok, json!({ "codes": codes }), start))
}

pub fn cmd_codes_info(catalog: &Catalog, name: &str) -> Result<Report> {
    let start = Instant::now();
    let code = catalog.get(name)?;
    let mut rules = Vec::new();
    let mut all_pass = true;
    for rule in code.transversal_rules() {
        let cert = verify_transversal_rule(&code, rule)?;
        all_pass &= cert.pass;
        rules.push(json!({
            "rule": rule.text(),
            "verified": cert.pass,
            "method": cert.method.name(),
            "global_phase": cert.global_phase,
            "detail": cert.detail,
        }));
    }
    let mut v = code_summary(&code)?;
    v["derivation"] = json!(code.derivation());
    v["generators"] = json!(code.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    v["logical_x"] = json!(code.logical_x().to_string());
    v["logical_z"] = json!(code.logical_z().to_string());
    v["rules"] = json!(rules);
    v["fingerprint"] = json!(code.fingerprint());
    let status = if all_pass { Status::Ok } else { Status::Failed };
    Ok(Report::new(format!("codes info {name}"), catalog, status, v, start))
}

pub fn cmd_codes_dump(catalog: &Catalog) -> Report {
    let start = Instant::now();
    Report::new("codes dump", catalog, Status::Ok, json!({ "catalog": catalog.dump() }), start)
}

fn layout_value(layout: &ConcatenationLayout) -> Value {
    json!({
        "name": layout.name(),
        "descriptor": layout.inline(),
        "qubits": layout.total_n(),
        "uniform": layout.is_uniform(),
        "encoded": layout.encoded_qubits(),
        "fingerprint": layout.fingerprint(),
    })
}

pub fn cmd_distance(catalog: &Catalog, layout: &ConcatenationLayout) -> Result<Report> {
    let start = Instant::now();
    let d = layout.concatenated_distance()?;
    let v = json!({
        "layout": layout_value(layout),
        "distance": d.distance,
        "class": d.class,
        "outer_logical": d.outer_logical.to_string(),
        "witness": d.witness.to_string(),
        "witness_weight": d.witness.weight(),
        "bare_support": d.bare_support,
        "encoded_support": d.encoded_support,
    });
    Ok(Report::new(format!("distance {}", layout.name()), catalog, Status::Ok, v, start))
}

/// Outer qubits a gadget couples within its first operand block.
fn coupled_outer_qubits(c: &GadgetCircuit) -> Vec<usize> {
    let Some(outer) = &c.outer else {
        return Vec::new();
    };
    let n = outer.code.n();
    let mut qs: Vec<usize> = outer
        .gates
        .iter()
        .filter(|g| g.qubits.len() > 1)
        .flat_map(|g| g.qubits.iter().copied())
        .filter(|&q| q < n)
        .collect();
    qs.sort_unstable();
    qs.dedup();
    qs
}

/// Synthesizes and verifies a gadget; returns the report and, on success,
/// the circuit text.
pub fn cmd_gadget(
    catalog: &Catalog,
    layout: &ConcatenationLayout,
    gate: &GateKind,
) -> Result<(Report, Option<String>)> {
    let start = Instant::now();
    let command = format!("gadget {} {}", layout.name(), gate.label());
    match admit(layout, gate) {
        Ok(a) => {
            let c = &a.circuit;
            let v = json!({
                "layout": layout_value(layout),
                "gate": gate.label(),
                "gadget": c.label,
                "kind": c.kind.name(),
                "register": c.register_size,
                "gates": c.len(),
                "gate_counts": c.gate_counts().into_iter().collect::<std::collections::BTreeMap<_, _>>(),
                "touched_qubits": c.touched().len(),
                "coupled_outer_qubits": coupled_outer_qubits(c),
                "certificate": a.certificate,
            });
            let status = if a.certificate.pass { Status::Ok } else { Status::Failed };
            Ok((Report::new(command, catalog, status, v, start), Some(write_circuit(c))))
        }
        Err(Error::Refused(msg)) => {
            let v = json!({
                "layout": layout_value(layout),
                "gate": gate.label(),
                "refused": msg,
            });
            Ok((Report::new(command, catalog, Status::Refused, v, start), None))
        }
        Err(e) => Err(e),
    }
}

/// What `ftcheck` analyzes.
pub enum FtTarget {
    /// Admitted gadgets for these gates; empty means the universal set.
    Gates(Vec<GateKind>),
    /// A circuit read from a file, analyzed as is.
    Circuit(GadgetCircuit),
}

fn fault_value(r: &FaultReport) -> Value {
    serde_json::to_value(r).expect("fault report serializes")
}

/// Single-fault campaign on every target gadget; with `pairs`, also the
/// pair search and the effective distance over the whole set.
pub fn cmd_ftcheck(
    catalog: &Catalog,
    layout: &ConcatenationLayout,
    target: FtTarget,
    pairs: bool,
    budget: u64,
) -> Result<(Report, Vec<String>)> {
    let start = Instant::now();
    let gadgets: Vec<GadgetCircuit> = match target {
        FtTarget::Circuit(c) => vec![c],
        FtTarget::Gates(g) if g.is_empty() => universal_gadgets(layout)?,
        FtTarget::Gates(g) => g
            .iter()
            .map(|g| admit(layout, g).map(|a| a.circuit.clone()))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut singles = Vec::new();
    let mut replays = Vec::new();
    let mut failed = false;
    for g in &gadgets {
        let r = check_single_fault_ft(layout, g)?;
        failed |= r.failure_count > 0;
        if let Some(w) = &r.witness {
            replays.push(replay_text(layout, g, &w.faults));
        }
        singles.push(fault_value(&r));
    }
    let mut v = json!({
        "layout": layout_value(layout),
        "single_fault": singles,
    });
    if pairs {
        let mut searches = Vec::new();
        for g in &gadgets {
            let r = find_min_uncorrectable(layout, g, 2, budget)?;
            if let Some(w) = &r.witness {
                replays.push(replay_text(layout, g, &w.faults));
            }
            searches.push(fault_value(&r));
        }
        let eff = effective_distance_report(layout, &gadgets, budget)?;
        v["pair_search"] = json!(searches);
        v["effective_distance"] = serde_json::to_value(&eff).expect("serializes");
    }
    let status = if failed { Status::Failed } else { Status::Ok };
    Ok((
        Report::new(format!("ftcheck {}", layout.name()), catalog, status, v, start),
        replays,
    ))
}

/// One row of the distance comparison table.
#[derive(Clone)]
pub struct Table1Row {
    pub method: String,
    pub layout: ConcatenationLayout,
    /// Published (qubits, overall distance, effective distance); `None`
    /// where no value is published.
    pub reference: (usize, Option<usize>, usize),
    pub note: Option<String>,
}

/// The three standard rows, plus the 47-, 73- and 55-qubit rows when
/// `extended`.
pub fn table1_rows(catalog: &Catalog, extended: bool) -> Result<Vec<Table1Row>> {
    let row = |method: &str, preset: &str, reference, note: Option<&str>| -> Result<Table1Row> {
        Ok(Table1Row {
            method: method.to_string(),
            layout: presets::build(preset, catalog)?,
            reference,
            note: note.map(str::to_string),
        })
    };
    let mut rows = vec![
        row("uniform (steane ∘ rm15)", "uniform105", (105, Some(9), 3), None)?,
        row("non-uniform (steane, B1 in rm15)", "nonuniform49", (49, Some(5), 3), None)?,
        row(
            "five_prime ∘ rm15",
            "uniform75",
            (75, Some(9), 3),
            Some(
                "listed as non-uniform among steane/rm15 codes in the reference table; computed here as \
                 five_prime with rm15 on every outer qubit (the steane-based distance-9 non-uniform code is b2encoded73)",
            ),
        )?,
    ];
    if extended {
        rows.push(row("non-uniform (five_prime, B1 in rm15)", "nonuniform47", (47, None, 3), None)?);
        rows.push(row("B2 in steane (steane outer)", "b2encoded73", (73, Some(9), 3), None)?);
        rows.push(row("B2 in five_prime (five_prime outer)", "b2encoded55", (55, Some(9), 3), None)?);
    }
    Ok(rows)
}

/// Computes every cell of `rows`; the status is `Failed` when any computed
/// number differs from its reference.
pub fn table1_from_layouts(catalog: &Catalog, rows: &[Table1Row], budget: u64) -> Result<Report> {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut mismatches = Vec::new();
    for r in rows {
        let qubits = r.layout.total_n();
        let d = r.layout.concatenated_distance()?;
        let gadgets = universal_gadgets(&r.layout)?;
        let eff = effective_distance_report(&r.layout, &gadgets, budget)?;
        let (rq, rd, re) = r.reference;
        let eff_match = eff.value == Some(re);
        for (what, got, want) in [
            ("qubits", qubits.to_string(), Some(rq.to_string())),
            ("overall distance", d.distance.to_string(), rd.map(|v| v.to_string())),
            ("effective distance", eff.bound.clone(), Some(re.to_string())),
        ] {
            if let Some(want) = want.filter(|w| *w != got) {
                mismatches.push(format!("{}: {what} computed {got}, reference {want}", r.layout.name()));
            }
        }
        out.push(json!({
            "method": r.method,
            "layout": r.layout.name(),
            "qubits": qubits,
            "overall_distance": d.distance,
            "effective_distance": eff.bound,
            "provenance": { "qubits": "computed", "overall_distance": "computed", "effective_distance": "computed" },
            "reference": { "qubits": rq, "overall_distance": rd, "effective_distance": re },
            "matches_reference": qubits == rq && rd.is_none_or(|v| v == d.distance) && eff_match,
            "distance_witness": d.witness.to_string(),
            "effective_witness_gadget": eff.witness_gadget,
            "effective_witness": eff.witness.as_ref().map(|w| w.faults.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
            "gadgets": eff.gadgets,
            "note": r.note,
        }));
    }
    let status = if mismatches.is_empty() { Status::Ok } else { Status::Failed };
    let v = json!({ "rows": out, "mismatches": mismatches });
    Ok(Report::new("table1", catalog, status, v, start))
}

pub fn cmd_table1(catalog: &Catalog, extended: bool, budget: u64) -> Result<Report> {
    let rows = table1_rows(catalog, extended)?;
    let mut r = table1_from_layouts(catalog, &rows, budget)?;
    if extended {
        r.command = "table1 --extended".into();
    }
    Ok(r)
}

/// Replays a witness document.
pub fn cmd_replay(catalog: &Catalog, text: &str) -> Result<Report> {
    let start = Instant::now();
    let r = parse_replay(text, catalog)?;
    let out = replay(&r)?;
    let status = if out.failing_branches > 0 { Status::Failed } else { Status::Ok };
    let v = json!({
        "layout": layout_value(&r.layout),
        "gadget": r.circuit.label,
        "outcome": out,
    });
    Ok(Report::new("replay", catalog, status, v, start))
}

#[cfg(test)]
mod tests;
