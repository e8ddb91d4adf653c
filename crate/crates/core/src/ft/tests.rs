use super::*;
use crate::circuit::{logical_gadget_for, staircase_gadget, Angle, Gate};
use crate::code::{steane, Catalog};
use crate::concat::presets;
use crate::dense::{pauli_matrix, Matrix};
use num_complex::Complex64;

fn one_gate(kind: GateKind, qubits: &[usize], register: usize) -> GadgetCircuit {
    GadgetCircuit::new("g", register, 1, vec![Gate::new(kind, qubits).unwrap()]).unwrap()
}

fn gate_locations(c: &GadgetCircuit) -> usize {
    enumerate_locations(c)
        .iter()
        .filter(|l| l.site != FaultSite::Input)
        .count()
}

#[test]
fn location_counts() {
    assert_eq!(gate_locations(&one_gate(GateKind::T, &[0], 1)), 3);
    assert_eq!(gate_locations(&one_gate(GateKind::Cnot, &[0, 1], 2)), 15);
    assert_eq!(gate_locations(&one_gate(GateKind::Ccz, &[0, 1, 2], 3)), 63);
    let t = admit(&presets::nonuniform49(), &GateKind::T).unwrap();
    let locs = enumerate_locations(&t.circuit);
    assert_eq!(locs.len(), 3 * 45 + 60 * 15 + 15 * 3);
    assert_eq!(locs.iter().filter(|l| l.site == FaultSite::Input).count(), 135);
}

#[test]
fn location_text_round_trips() {
    let t = staircase_gadget(&Arc::new(steane()), 1, Angle::PI).unwrap();
    for l in enumerate_locations(&t) {
        assert_eq!(l.to_string().parse::<FaultLocation>().unwrap(), l);
    }
    assert!("input 3 Q".parse::<FaultLocation>().is_err());
    assert!("input 3 I".parse::<FaultLocation>().is_err());
}

fn model_for(c: &GadgetCircuit, locations: Vec<FaultLocation>) -> FaultModel {
    let layout = presets::bare("steane");
    let mut c = c.clone();
    c.register_size = c.operands * 7;
    FaultModel::with_locations(&layout, &c, locations).unwrap()
}

#[test]
fn x_spreads_down_the_staircase() {
    let gates = vec![
        Gate::new(GateKind::Cnot, &[0, 1]).unwrap(),
        Gate::new(GateKind::Cnot, &[1, 2]).unwrap(),
    ];
    let c = GadgetCircuit::new("stairs", 7, 1, gates).unwrap();
    let x: FaultLocation = "input 0 X".parse().unwrap();
    let z: FaultLocation = "input 2 Z".parse().unwrap();
    let m = model_for(&c, vec![x, z]);
    let r = m.propagate(&[0]).unwrap();
    assert!(r.deterministic);
    assert_eq!(r.branches, vec!["+XXXIIII".parse().unwrap()]);
    let r = m.propagate(&[1]).unwrap();
    assert_eq!(r.branches, vec!["+IZZIIII".parse().unwrap()]);
}

#[test]
fn z_passes_through_t_and_x_branches() {
    let c = one_gate(GateKind::T, &[0], 7);
    let m = model_for(&c, vec!["input 0 Z".parse().unwrap(), "input 0 X".parse().unwrap()]);
    let z = m.propagate(&[0]).unwrap();
    assert!(z.deterministic);
    assert_eq!(z.branches.len(), 1);
    let x = m.propagate(&[1]).unwrap();
    assert!(!x.deterministic);
    let mut got: Vec<String> = x.branches.iter().map(|b| b.to_string()).collect();
    got.sort();
    assert_eq!(got, ["+XIIIIII", "+YIIIIII"]);
}

/// Pauli support of `U P U†` computed from dense matrices.
fn dense_support(u: &Matrix, p: &PauliOperator) -> Vec<PauliOperator> {
    let a = p.n();
    let pm = pauli_matrix(p);
    let conj = u.mul(&pm).mul(&u.adjoint());
    let mut out = Vec::new();
    for t in 0..(1usize << (2 * a)) {
        let letters: Vec<Letter> = (0..a).map(|j| Letter::ALL[(t >> (2 * j)) & 3]).collect();
        let q = PauliOperator::from_letters(crate::pauli::Phase::ONE, &letters);
        let qm = pauli_matrix(&q);
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..qm.dim {
            for k in 0..qm.dim {
                tr += qm.get(k, i).conj() * conj.get(k, i);
            }
        }
        if tr.norm() / (1 << a) as f64 > 1e-9 {
            out.push(q);
        }
    }
    out.sort_by(|x, y| x.canonical_cmp(y));
    out
}

#[test]
fn diagonal_branches_match_dense_conjugation() {
    let gates = [
        GateKind::T,
        GateKind::Tdg,
        GateKind::ZTheta(Angle::pi_fraction(1, 8)),
        GateKind::Ccz,
        GateKind::ckz(1, Angle::pi_fraction(1, 2)),
        GateKind::ckz(2, Angle::pi_fraction(1, 4)),
    ];
    for g in gates {
        let a = g.arity();
        let u = g.matrix().unwrap();
        let qs: Vec<usize> = (0..a).collect();
        let theta = g.diagonal().unwrap().1;
        for t in 1..(1usize << (2 * a)) {
            let letters: Vec<Letter> = (0..a).map(|j| Letter::ALL[(t >> (2 * j)) & 3]).collect();
            let p = PauliOperator::from_letters(crate::pauli::Phase::ONE, &letters);
            let mut got = diagonal_branches(&p, &qs, theta);
            got.sort_by(|x, y| x.canonical_cmp(y));
            assert_eq!(got, dense_support(&u, &p), "{g} on {p}");
        }
    }
}

#[test]
fn clifford_gadgets_propagate_deterministically() {
    let st = Arc::new(steane());
    for g in [GateKind::H, GateKind::S, GateKind::Cnot, GateKind::Cz] {
        let c = crate::circuit::transversal_gadget(&st, &g).unwrap();
        let layout = presets::bare("steane");
        let m = FaultModel::new(&layout, &c).unwrap();
        for i in 0..m.locations().len() {
            assert!(m.propagate(&[i]).unwrap().deterministic);
        }
    }
}

#[test]
fn forty_nine_qubit_t_gadget_is_single_fault_tolerant() {
    let layout = presets::nonuniform49();
    let t = admit(&layout, &GateKind::T).unwrap();
    let r = check_single_fault_ft(&layout, &t.circuit).unwrap();
    assert_eq!(r.failure_count, 0, "{:?}", r.failures.first());
    assert_eq!(r.locations_checked, 1080);
    assert!(r.branches_checked > r.locations_checked);
    assert_eq!(r.min_uncorrectable_text(), "none ≤ 1");
}

#[test]
fn single_faults_stay_one_per_block() {
    let layout = presets::nonuniform49();
    let t = admit(&layout, &GateKind::T).unwrap();
    let m = FaultModel::new(&layout, &t.circuit).unwrap();
    let b1 = [0, 1, 2];
    for i in 0..m.locations().len() {
        for b in m.propagate(&[i]).unwrap().branches {
            for q in 0..7 {
                let w = b.restrict_range(layout.block(q)).weight();
                if b1.contains(&q) {
                    assert!(w <= 1, "{} leaves weight {w} on block {q}", m.locations()[i]);
                } else {
                    assert_eq!(w, 0);
                }
            }
        }
    }
}

#[test]
fn forty_nine_qubit_block_logical_gadgets_pass() {
    let layout = presets::nonuniform49();
    for g in [GateKind::H, GateKind::S, GateKind::Cnot] {
        let a = admit(&layout, &g).unwrap();
        let r = check_single_fault_ft(&layout, &a.circuit).unwrap();
        assert_eq!(r.failure_count, 0, "{g}: {:?}", r.failures.first());
    }
}

#[test]
fn bare_staircase_is_not_fault_tolerant() {
    let layout = presets::bare("steane");
    let full = logical_gadget_for(&layout, &GateKind::T).unwrap();
    let r = find_min_uncorrectable(&layout, &full, 1, DEFAULT_PAIR_BUDGET).unwrap();
    let w = r.witness.expect("a single fault breaks the bare staircase");
    assert_eq!(w.size(), 1);
    let dense = w.dense.expect("seven qubits replay densely");
    assert!(dense.confirmed);
    assert!(dense.failure_probability > 0.1);
}

#[test]
fn staircase_without_uncompute_fails() {
    let layout = presets::bare("steane");
    let full = logical_gadget_for(&layout, &GateKind::T).unwrap();
    let ckz = full.gates.iter().position(|g| g.kind == GateKind::T).unwrap();
    let broken = full.truncated(ckz + 1, "T staircase without uncompute");
    let r = check_single_fault_ft(&layout, &broken).unwrap();
    assert!(r.failure_count > 0);
    let first = &r.failures[0];
    assert_eq!(first.faults[0].to_string(), "input 0 X");
    assert_eq!(first.residual, "X");
}

#[test]
fn dense_revalidation_rejects_harmless_faults() {
    let layout = presets::bare("steane");
    let h = crate::circuit::transversal_gadget(&Arc::new(steane()), &GateKind::H).unwrap();
    let one: FaultLocation = "input 4 Y".parse().unwrap();
    assert!(!revalidate_dense(&layout, &h, &[one.clone()]).unwrap().confirmed);
    let two: FaultLocation = "input 5 Y".parse().unwrap();
    assert!(revalidate_dense(&layout, &h, &[one, two]).unwrap().confirmed);
}

#[test]
fn pair_search_on_the_49_qubit_t_gadget() {
    let layout = presets::nonuniform49();
    let t = admit(&layout, &GateKind::T).unwrap();
    let r = find_min_uncorrectable(&layout, &t.circuit, 2, DEFAULT_PAIR_BUDGET).unwrap();
    let w = r.witness.expect("pair witness");
    assert_eq!(w.size(), 2);
    let texts: Vec<String> = w.faults.iter().map(|f| f.to_string()).collect();
    assert_eq!(texts, ["input 0 X", "input 1 X"]);
    assert_eq!(r.pairs_checked, Some(3));
    assert!(w.dense.is_none());
    let doc = replay_text(&layout, &t.circuit, &w.faults);
    let parsed = parse_replay(&doc, &Catalog::builtin()).unwrap();
    let out = replay(&parsed).unwrap();
    assert!(out.failing_branches > 0);
    assert_eq!(out.first_failure.unwrap().residual, w.residual);
}

#[test]
fn budget_refusal_reports_the_estimate() {
    let layout = presets::nonuniform49();
    let t = admit(&layout, &GateKind::T).unwrap();
    match find_min_uncorrectable(&layout, &t.circuit, 2, 10) {
        Err(Error::Budget { estimate, budget }) => {
            assert_eq!(estimate, pair_estimate(&t.circuit));
            assert_eq!(budget, 10);
        }
        other => panic!("expected a budget refusal, got {other:?}"),
    }
    assert!(find_min_uncorrectable(&layout, &t.circuit, 3, 10).is_err());
}

#[test]
fn pair_rank_is_lexicographic() {
    let n = 6;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            assert_eq!(pair_rank(n, i, j), k);
            k += 1;
        }
    }
}

#[test]
fn transversal_only_bare_steane_has_distance_three_witness() {
    let layout = presets::bare("steane");
    let st = Arc::new(steane());
    let gadgets: Vec<GadgetCircuit> = [GateKind::H, GateKind::S, GateKind::Cnot]
        .iter()
        .map(|g| crate::circuit::transversal_gadget(&st, g).unwrap())
        .collect();
    let e = effective_distance_report(&layout, &gadgets, DEFAULT_PAIR_BUDGET).unwrap();
    assert_eq!(e.value, Some(3));
    let w = e.witness.unwrap();
    assert!(w.faults.iter().all(|f| f.site == FaultSite::Input));
    assert!(w.dense.unwrap().confirmed);
}

#[test]
fn universal_sets() {
    let names = |l: &ConcatenationLayout| -> Vec<String> {
        universal_gate_set(l).iter().map(|g| g.label()).collect()
    };
    assert_eq!(names(&presets::nonuniform49()), ["T", "CCZ", "H", "S", "SDG", "CNOT", "CZ"]);
    assert_eq!(names(&presets::nonuniform47()), ["T", "CCZ", "K"]);
}
