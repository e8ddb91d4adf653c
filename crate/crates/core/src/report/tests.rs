use super::*;
use crate::code::shared_decoder;
use crate::ft::DEFAULT_PAIR_BUDGET;
use crate::pauli::PauliOperator;
use std::sync::Arc;

fn cat() -> Catalog {
    Catalog::builtin()
}

fn strip_timing(s: &str) -> String {
    s.lines().filter(|l| !l.contains("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn codes_list_and_info() {
    let r = cmd_codes_list(&cat()).unwrap();
    let codes = r.results["codes"].as_array().unwrap();
    assert_eq!(codes.len(), 4);
    assert!(codes.iter().all(|c| c["d"] == 3 && c["k"] == 1));
    assert!(r.table().contains("[[7,1,3]]"));

    let rm = cmd_codes_info(&cat(), "rm15").unwrap();
    assert_eq!(rm.status, Status::Ok);
    let rules: Vec<&str> = rm.results["rules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["rule"].as_str().unwrap())
        .collect();
    assert!(rules.contains(&"T = TDG*") && rules.contains(&"CCZ = CCZ*"));
    let fp = cmd_codes_info(&cat(), "five_prime").unwrap();
    assert!(fp.table().contains("derivation: five_qubit ∘ K1 Y3 K5"));
    assert!(cmd_codes_info(&cat(), "golay").is_err());
}

#[test]
fn distances() {
    for (preset, d) in [("uniform105", 9), ("nonuniform49", 5), ("b2encoded73", 9)] {
        let l = resolve_layout(preset, &cat()).unwrap();
        let r = cmd_distance(&cat(), &l).unwrap();
        assert_eq!(r.results["distance"], d, "{preset}");
    }
}

#[test]
fn gadget_reports() {
    let l = resolve_layout("nonuniform49", &cat()).unwrap();
    let (r, text) = cmd_gadget(&cat(), &l, &GateKind::T).unwrap();
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.results["coupled_outer_qubits"], json!([0, 1, 2]));
    assert_eq!(r.results["certificate"]["method"], "css-coset");
    assert!(text.unwrap().starts_with("gadget "));

    let l = resolve_layout("nonuniform47", &cat()).unwrap();
    let (r, _) = cmd_gadget(&cat(), &l, &GateKind::Ccz).unwrap();
    assert_eq!(r.status, Status::Ok, "{}", r.table());

    let l = resolve_layout("five_qubit_rm", &cat()).unwrap();
    let (r, text) = cmd_gadget(&cat(), &l, &GateKind::T).unwrap();
    assert_eq!(r.status, Status::Refused);
    assert_eq!(r.exit_code(), 1);
    assert!(text.is_none());
    let msg = r.results["refused"].as_str().unwrap();
    assert!(msg.contains("violates the second necessary condition for code concatenation"));
    assert!(msg.contains("needs K"));
}

#[test]
fn gate_and_layout_resolution() {
    assert_eq!(resolve_gate("CCZ", Some("pi/4")).unwrap(), GateKind::ckz(2, "pi/4".parse().unwrap()));
    assert!(resolve_gate("H", Some("pi/4")).is_err());
    let inline = resolve_layout("nonuniform49", &cat()).unwrap().inline();
    assert_eq!(resolve_layout(&inline, &cat()).unwrap().total_n(), 49);
    assert!(resolve_layout("nowhere", &cat()).is_err());
}

#[test]
fn machine_output_is_deterministic() {
    let l = resolve_layout("nonuniform49", &cat()).unwrap();
    let a = cmd_ftcheck(&cat(), &l, FtTarget::Gates(vec![GateKind::T]), true, DEFAULT_PAIR_BUDGET).unwrap();
    let b = cmd_ftcheck(&cat(), &l, FtTarget::Gates(vec![GateKind::T]), true, DEFAULT_PAIR_BUDGET).unwrap();
    assert_eq!(strip_timing(&a.0.machine()), strip_timing(&b.0.machine()));
    assert_eq!(a.0.results["effective_distance"]["bound"], "3");
    assert_eq!(a.1.len(), 1);
}

fn small_rows(catalog: &Catalog) -> Vec<Table1Row> {
    table1_rows(catalog, false)
        .unwrap()
        .into_iter()
        .filter(|r| r.layout.name() == "nonuniform49")
        .collect()
}

#[test]
fn table_rows_are_computed_not_stored() {
    let catalog = cat();
    let rows = small_rows(&catalog);
    let good = table1_from_layouts(&catalog, &rows, DEFAULT_PAIR_BUDGET).unwrap();
    assert_eq!(good.status, Status::Ok, "{}", good.table());
    let row = &good.results["rows"][0];
    assert_eq!((row["qubits"].clone(), row["overall_distance"].clone()), (json!(49), json!(5)));
    assert_eq!(row["effective_distance"], "3");

    // Break one syndrome entry of the inner decoder: the correction for a
    // weight-one error now carries a logical Z.
    let rm = catalog.get("rm15").unwrap();
    let dec = shared_decoder(&rm).unwrap();
    let err = PauliOperator::single(15, 0, crate::pauli::Letter::Z);
    let key = rm.syndrome_key(&err) as usize;
    let wrong = (&err * rm.logical_z()).unsigned();
    let broken = Arc::new(dec.as_ref().clone().with_entry(key, wrong));
    let mut mutated = rows.clone();
    mutated[0].layout = mutated[0].layout.clone().with_inner_decoder("rm15", broken);
    let bad = table1_from_layouts(&catalog, &mutated, DEFAULT_PAIR_BUDGET).unwrap();
    assert_eq!(bad.status, Status::Failed);
    assert_eq!(bad.results["rows"][0]["effective_distance"], "1");
    assert_ne!(strip_timing(&bad.machine()), strip_timing(&good.machine()));
}

#[test]
fn replay_reproduces_a_witness() {
    let l = resolve_layout("nonuniform49", &cat()).unwrap();
    let (_, replays) = cmd_ftcheck(&cat(), &l, FtTarget::Gates(vec![GateKind::T]), true, DEFAULT_PAIR_BUDGET).unwrap();
    let r = cmd_replay(&cat(), &replays[0]).unwrap();
    assert_eq!(r.status, Status::Failed);
    assert!(r.results["outcome"]["failing_branches"].as_u64().unwrap() > 0);
}
