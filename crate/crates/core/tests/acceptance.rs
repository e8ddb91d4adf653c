//! Acceptance gate. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; any FAIL exits nonzero.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nuqec::circuit::{staircase_gadget, transversal_gadget, Angle, Gate, GadgetCircuit, GateKind};
use nuqec::code::{shared_decoder, Catalog};
use nuqec::concat::presets;
use nuqec::dense::pauli_matrix;
use nuqec::ft::{
    check_single_fault_ft, find_min_uncorrectable, layout_effective_distance, parse_replay, replay,
    replay_text, DEFAULT_PAIR_BUDGET,
};
use nuqec::report::{cmd_gadget, cmd_table1, table1_from_layouts, table1_rows, Status};
use nuqec::symplectic::{rank, EchelonForm};
use nuqec::verify::{admit, verify_logical_action, verify_transversal_rule, Method, DENSE_TOLERANCE, MAX_DENSE_QUBITS};
use nuqec::{Letter, PauliOperator, Phase, StabilizerCode};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const FIDELITY_TOL: f64 = 1e-10;
const PHASE_TOL: f64 = 1e-10;
const MATRIX_TOL: f64 = 1e-12;
const PAULI_CASES: usize = 10_000;
const SEED: u64 = 0x5eed_c0de;

const BASE_CODES_LIMIT: Duration = Duration::from_secs(5);
const STAIRCASE_LIMIT: Duration = Duration::from_secs(60);
const SINGLE_FAULT_LIMIT: Duration = Duration::from_secs(600);

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() <= limit, || format!("took {:.1?}, limit {limit:?}", t.elapsed()))
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Smallest weight of a Pauli that commutes with every generator but is
/// not a stabilizer, by plain enumeration of all weight-w operators.
fn brute_distance(code: &StabilizerCode) -> Option<usize> {
    let n = code.n();
    let stab = EchelonForm::new(n, code.generators());
    for w in 1..=n {
        let mut found = false;
        for_each_support(n, w, &mut |support| {
            let letters = [Letter::X, Letter::Y, Letter::Z];
            let mut idx = vec![0usize; w];
            loop {
                let mut p = PauliOperator::identity(n);
                for (&q, &i) in support.iter().zip(&idx) {
                    p.set_letter(q, letters[i]);
                }
                let centralizes = code.generators().iter().all(|g| g.commutes(&p).unwrap());
                if centralizes && !stab.spans(&p) {
                    found = true;
                    return;
                }
                let Some(pos) = idx.iter().position(|&i| i < 2) else { return };
                idx[pos] += 1;
                idx[..pos].iter_mut().for_each(|i| *i = 0);
            }
        });
        if found {
            return Some(w);
        }
    }
    None
}

fn for_each_support(n: usize, w: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, w: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == w {
            f(cur);
            return;
        }
        for q in start..n {
            cur.push(q);
            rec(q + 1, n, w, cur, f);
            cur.pop();
        }
    }
    rec(0, n, w, &mut Vec::new(), f);
}

fn crit1(cat: &Catalog) -> Check {
    let t = Instant::now();
    let mut out = Vec::new();
    for name in ["steane", "five_qubit", "five_prime", "rm15"] {
        let code = cat.get(name).map_err(e)?;
        let d = code.distance().map_err(e)?;
        ensure(d == 3, || format!("{name}: coset scan gives {d}"))?;
        out.push(format!("{name}={d}"));
    }
    within(t, BASE_CODES_LIMIT)?;
    for name in ["steane", "five_qubit", "five_prime", "rm15"] {
        let code = cat.get(name).map_err(e)?;
        let b = brute_distance(&code);
        ensure(b == Some(3), || format!("{name}: enumeration oracle gives {b:?}"))?;
    }
    Ok(format!("{} (enumeration oracle agrees)", out.join(" ")))
}

fn crit2(cat: &Catalog) -> Check {
    let t = Instant::now();
    let cases = [
        ("steane", 0, Angle::pi_fraction(1, 4)),
        ("steane", 2, Angle::PI),
        ("five_prime", 0, Angle::pi_fraction(1, 4)),
        ("five_prime", 1, Angle::PI),
        ("five_prime", 2, Angle::PI),
    ];
    let mut worst: f64 = 1.0;
    for (name, k, theta) in cases {
        let code = cat.get(name).map_err(e)?;
        let d = code.distance().map_err(e)?;
        let c = staircase_gadget(&code, k, theta).map_err(e)?;
        for b in 0..=k {
            let touched = c.touched_in_block(b).len();
            ensure(touched == d, || format!("{name} k={k}: block {b} couples {touched} qubits, d = {d}"))?;
        }
        let codes: Vec<&StabilizerCode> = (0..=k).map(|_| code.as_ref()).collect();
        let cert = verify_logical_action(&codes, &c, &GateKind::ckz(k, theta).matrix().map_err(e)?).map_err(e)?;
        ensure(cert.pass && cert.fidelity >= 1.0 - FIDELITY_TOL, || {
            format!("{name} k={k}: dense fidelity {}", cert.fidelity)
        })?;
        worst = worst.min(cert.fidelity);
    }
    within(t, STAIRCASE_LIMIT)?;
    Ok(format!("5 staircases couple d=3 qubits per block, min dense fidelity {worst:.12}"))
}

/// A dense certificate passes only if every logical matrix entry agrees
/// with the claim up to one global phase within the oracle tolerance; the
/// coset oracle compares phases exactly.
fn phase_tolerance_pinned() -> Result<(), String> {
    ensure(DENSE_TOLERANCE <= PHASE_TOL, || format!("oracle tolerance {DENSE_TOLERANCE} exceeds {PHASE_TOL}"))
}

fn crit3(cat: &Catalog) -> Check {
    phase_tolerance_pinned()?;
    let rm = cat.get("rm15").map_err(e)?;
    let mut out = Vec::new();
    for gate in [GateKind::T, GateKind::Ccz] {
        let rule = rm.transversal_rule(&gate).ok_or_else(|| format!("rm15 declares no {gate} rule"))?;
        let cert = verify_transversal_rule(&rm, rule).map_err(e)?;
        ensure(cert.method == Method::CssCoset, || format!("{gate}: checked by {}", cert.method.name()))?;
        ensure(cert.pass && cert.fidelity >= 1.0 - FIDELITY_TOL, || {
            format!("{gate}: {}", cert.detail)
        })?;
        out.push(format!("rm15 {} css-coset", rule.text()));
    }
    // Z on the third qubit after K on all five, written in time order.
    let fp = cat.get("five_prime").map_err(e)?;
    let mut gates: Vec<Gate> = (0..5).map(|q| Gate::single(GateKind::K, q)).collect();
    gates.push(Gate::single(GateKind::Z, 2));
    let mut c = GadgetCircuit::new("Z3 K^5", 5, 1, gates).map_err(e)?;
    c.claimed = Some(GateKind::K);
    let cert = verify_logical_action(&[fp.as_ref()], &c, &GateKind::K.matrix().map_err(e)?).map_err(e)?;
    ensure(cert.pass && cert.fidelity >= 1.0 - FIDELITY_TOL, || {
        format!("five_prime Z3 K^5: {}", cert.detail)
    })?;
    let catalog_rule = transversal_gadget(&fp, &GateKind::K).map_err(e)?;
    let cat_cert = verify_logical_action(&[fp.as_ref()], &catalog_rule, &GateKind::K.matrix().map_err(e)?).map_err(e)?;
    ensure(cat_cert.pass, || "catalog K rule of five_prime fails densely".into())?;
    out.push(format!("five_prime Z3·K^5 dense fidelity {:.12}", cert.fidelity));
    Ok(out.join("; "))
}

fn crit4() -> Check {
    let t = Instant::now();
    let mut out = Vec::new();
    let l49 = presets::nonuniform49();
    let l47 = presets::nonuniform47();
    let jobs = [
        (&l49, GateKind::T),
        (&l49, GateKind::Ccz),
        (&l47, GateKind::T),
        (&l47, GateKind::S),
        (&l47, GateKind::Cz),
        (&l47, GateKind::Ccz),
        (&l47, GateKind::K),
    ];
    let mut branches = 0;
    for (layout, gate) in jobs {
        let g = admit(layout, &gate).map_err(e)?;
        let r = check_single_fault_ft(layout, &g.circuit).map_err(e)?;
        ensure(r.failure_count == 0, || {
            format!("{} {gate}: {} failing branches", layout.name(), r.failure_count)
        })?;
        branches += r.branches_checked;
        out.push(format!("{}:{}", layout.total_n(), gate.label()));
    }
    within(t, SINGLE_FAULT_LIMIT)?;
    Ok(format!("0 failures over {branches} branches [{}]", out.join(" ")))
}

fn pair_witness(layout: &nuqec::ConcatenationLayout, c: &GadgetCircuit) -> Result<String, String> {
    let r = find_min_uncorrectable(layout, c, 2, DEFAULT_PAIR_BUDGET).map_err(e)?;
    let w = r.witness.ok_or_else(|| format!("{}: no witness", layout.name()))?;
    ensure(w.size() == 2, || format!("{}: smallest failing set has {} faults", layout.name(), w.size()))?;
    let doc = replay_text(layout, c, &w.faults);
    let back = replay(&parse_replay(&doc, &Catalog::builtin()).map_err(e)?).map_err(e)?;
    ensure(back.failing_branches > 0, || format!("{}: replay does not fail", layout.name()))?;
    if c.register_size <= MAX_DENSE_QUBITS && layout.is_bare() {
        let dense = w.dense.ok_or_else(|| format!("{}: no dense replay", layout.name()))?;
        ensure(dense.confirmed, || format!("{}: dense replay does not confirm", layout.name()))?;
    }
    let faults: Vec<String> = w.faults.iter().map(|f| f.to_string()).collect();
    Ok(format!("{}: {}", layout.total_n(), faults.join(" + ")))
}

fn crit5() -> Check {
    let mut out = Vec::new();
    for layout in [presets::nonuniform49(), presets::uniform75(), presets::uniform105()] {
        let t = admit(&layout, &GateKind::T).map_err(e)?;
        out.push(pair_witness(&layout, &t.circuit)?);
    }
    // A register small enough for the dense replay.
    let bare = presets::bare("rm15");
    let t = transversal_gadget(&bare.outer().clone(), &GateKind::T).map_err(e)?;
    out.push(format!("{} dense-confirmed", pair_witness(&bare, &t)?));
    Ok(out.join("; "))
}

fn crit6(cat: &Catalog) -> Check {
    let report = cmd_table1(cat, false, DEFAULT_PAIR_BUDGET).map_err(e)?;
    ensure(report.status == Status::Ok, || report.table())?;
    let rows = report.results["rows"].as_array().ok_or("no rows")?;
    let got: Vec<(u64, u64, String)> = rows
        .iter()
        .map(|r| {
            (
                r["qubits"].as_u64().unwrap_or(0),
                r["overall_distance"].as_u64().unwrap_or(0),
                r["effective_distance"].as_str().unwrap_or("").to_string(),
            )
        })
        .collect();
    let want = [(105, 9, "3"), (49, 5, "3"), (75, 9, "3")];
    ensure(got.len() == want.len(), || format!("{} rows", got.len()))?;
    for ((q, d, eff), (wq, wd, we)) in got.iter().zip(want) {
        ensure((*q, *d, eff.as_str()) == (wq, wd, we), || format!("row ({q}, {d}, {eff}), expected ({wq}, {wd}, {we})"))?;
    }
    let layouts = table1_rows(cat, false).map_err(e)?;
    for (row, r) in layouts.iter().zip(&got) {
        let d = row.layout.concatenated_distance().map_err(e)?.distance as u64;
        ensure(d == r.1, || format!("{}: table says {}, scan says {d}", row.layout.name(), r.1))?;
    }
    // A corrupted inner decoder must change the table.
    let rm = cat.get("rm15").map_err(e)?;
    let dec = shared_decoder(&rm).map_err(e)?;
    let err = PauliOperator::single(15, 0, Letter::Z);
    let wrong = (&err * rm.logical_z()).unsigned();
    let broken = Arc::new(dec.as_ref().clone().with_entry(rm.syndrome_key(&err) as usize, wrong));
    let mut mutated: Vec<_> = layouts.into_iter().filter(|r| r.layout.name() == "nonuniform49").collect();
    mutated[0].layout = mutated[0].layout.clone().with_inner_decoder("rm15", broken);
    let bad = table1_from_layouts(cat, &mutated, DEFAULT_PAIR_BUDGET).map_err(e)?;
    ensure(bad.status == Status::Failed, || "corrupted decoder left the table unchanged".into())?;
    Ok("(105, 9, 3) (49, 5, 3) (75, 9, 3) computed; corrupted decoder detected".into())
}

fn crit7() -> Check {
    let mut out = Vec::new();
    for layout in [presets::b2encoded73(), presets::b2encoded55()] {
        let d = layout.concatenated_distance().map_err(e)?.distance;
        ensure(d == 9, || format!("{}: overall distance {d}", layout.name()))?;
        let eff = layout_effective_distance(&layout, DEFAULT_PAIR_BUDGET).map_err(e)?;
        ensure(eff.value == Some(3) && eff.witness.is_some(), || {
            format!("{}: effective distance {}", layout.name(), eff.bound)
        })?;
        out.push(format!("{}: d=9 eff=3", layout.total_n()));
    }
    Ok(out.join("; "))
}

fn crit8(cat: &Catalog) -> Check {
    let l = presets::five_qubit_rm();
    let (r, text) = cmd_gadget(cat, &l, &GateKind::T).map_err(e)?;
    let msg = r.results["refused"].as_str().unwrap_or("");
    ensure(r.status == Status::Refused && text.is_none(), || "five_qubit over rm15 was not refused".into())?;
    ensure(msg.contains("violates the second necessary condition for code concatenation") && msg.contains("K"), || {
        format!("refusal does not cite K: {msg}")
    })?;
    let bare = presets::bare("steane");
    let full = nuqec::circuit::logical_gadget_for(&bare, &GateKind::T).map_err(e)?;
    let ckz = full.gates.iter().position(|g| g.kind == GateKind::T).ok_or("no T in staircase")?;
    let cut = full.truncated(ckz + 1, "T staircase without uncompute");
    let rc = check_single_fault_ft(&bare, &cut).map_err(e)?;
    ensure(rc.failure_count > 0, || "staircase without uncompute passed".into())?;
    let rf = check_single_fault_ft(&bare, &full).map_err(e)?;
    Ok(format!(
        "refused; no-uncompute staircase: {} failing branches (full bare staircase: {})",
        rc.failure_count, rf.failure_count
    ))
}

fn random_pauli(rng: &mut StdRng, n: usize) -> PauliOperator {
    let letters: Vec<Letter> = (0..n)
        .map(|_| [Letter::I, Letter::X, Letter::Y, Letter::Z][rng.gen_range(0..4)])
        .collect();
    PauliOperator::from_letters(Phase::from_exponent(rng.gen_range(0..4)), &letters)
}

fn crit9() -> Check {
    let mut rng = StdRng::seed_from_u64(SEED);
    for case in 0..PAULI_CASES {
        let n = 1 + case % 2;
        let (a, b) = (random_pauli(&mut rng, n), random_pauli(&mut rng, n));
        let (ma, mb) = (pauli_matrix(&a), pauli_matrix(&b));
        let prod = a.multiply(&b).map_err(e)?;
        let diff = pauli_matrix(&prod).max_abs_diff(&ma.mul(&mb));
        ensure(diff <= MATRIX_TOL, || format!("{a} * {b}: product differs by {diff}"))?;
        let commutator = ma.mul(&mb).max_abs_diff(&mb.mul(&ma)) <= MATRIX_TOL;
        ensure(a.commutes(&b).map_err(e)? == commutator, || format!("{a}, {b}: commutation"))?;
    }
    let mut decoded = 0;
    for name in ["uniform105", "nonuniform49", "uniform75", "nonuniform47", "b2encoded73", "b2encoded55"] {
        let layout = presets::build(name, &Catalog::builtin()).map_err(e)?;
        let n = layout.total_n();
        for q in 0..n {
            for l in [Letter::X, Letter::Y, Letter::Z] {
                let r = layout.hierarchical_decode(&PauliOperator::single(n, q, l)).map_err(e)?;
                ensure(r == Letter::I, || format!("{name}: {l} on {q} decodes to {r}"))?;
                decoded += 1;
            }
        }
        let stabs = layout.flatten_stabilizers();
        for (i, s) in stabs.iter().enumerate() {
            for t in &stabs[i + 1..] {
                ensure(s.commutes(t).map_err(e)?, || format!("{name}: {s} and {t} anticommute"))?;
            }
        }
        let r = rank(n, stabs);
        ensure(r == n - 1, || format!("{name}: rank {r}, expected {}", n - 1))?;
        let flat = layout.flattened();
        let (lx, lz) = (flat.logical_x(), flat.logical_z());
        for s in stabs {
            ensure(s.commutes(lx).map_err(e)? && s.commutes(lz).map_err(e)?, || format!("{name}: logical fails to commute"))?;
        }
        ensure(!lx.commutes(lz).map_err(e)?, || format!("{name}: logical X and Z commute"))?;
    }
    Ok(format!("{PAULI_CASES} Pauli cases vs dense; {decoded} weight-1 errors decoded; 6 stabilizer sets checked"))
}

fn main() -> ExitCode {
    let cat = Catalog::builtin();
    let criteria: Vec<Criterion> = vec![
        ("base codes have distance 3", Box::new(|| crit1(&cat))),
        ("staircase gadgets", Box::new(|| crit2(&cat))),
        ("transversality certificates", Box::new(|| crit3(&cat))),
        ("single-fault tolerance", Box::new(crit4)),
        ("pair witnesses", Box::new(crit5)),
        ("distance table", Box::new(|| crit6(&cat))),
        ("B2-encoded variants", Box::new(crit7)),
        ("negative controls", Box::new(|| crit8(&cat))),
        ("property suites", Box::new(crit9)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} {name} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} {name} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
