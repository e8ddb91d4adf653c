use serde_json::Value;

use super::{Report, Status};

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(text).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.iter().map(|h| h.to_string()).collect());
    s.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    for r in rows {
        s.push_str(&line(r.clone()));
    }
    s
}

fn pairs(v: &Value, keys: &[&str]) -> String {
    keys.iter()
        .map(|k| format!("{k}: {}\n", text(&v[*k])))
        .collect()
}

fn fault_rows(list: &Value) -> Vec<Vec<String>> {
    list.as_array()
        .into_iter()
        .flatten()
        .map(|r| {
            let witness = r["witness"]["faults"]
                .as_array()
                .map(|f| f.iter().map(text).collect::<Vec<_>>().join(" + "))
                .unwrap_or_else(|| "-".into());
            let min = match &r["min_uncorrectable_size"] {
                Value::Null => format!("none ≤ {}", text(&r["searched_up_to"])),
                v => text(v),
            };
            vec![
                text(&r["gadget"]),
                text(&r["locations_checked"]),
                text(&r["branches_checked"]),
                text(&r["failure_count"]),
                min,
                witness,
            ]
        })
        .collect()
}

/// Human-readable rendering of a report.
pub fn render_table(r: &Report) -> String {
    let v = &r.results;
    let status = match r.status {
        Status::Ok => "ok",
        Status::Failed => "FAILED",
        Status::Refused => "REFUSED",
    };
    let mut s = format!("{} {} | {} | catalog {} | {status}\n", r.tool, r.version, r.command, r.catalog);
    let cmd = r.command.as_str();
    if cmd == "codes list" {
        let rows: Vec<Vec<String>> = v["codes"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|c| {
                vec![
                    text(&c["name"]),
                    format!("[[{},{},{}]]", c["n"], c["k"], c["d"]),
                    text(&c["css"]),
                    text(&c["transversal"]),
                ]
            })
            .collect();
        s.push_str(&grid(&["code", "[[n,k,d]]", "css", "transversal"], &rows));
    } else if cmd.starts_with("codes info") {
        s.push_str(&pairs(v, &["name", "n", "k", "d", "css", "derivation", "logical_x", "logical_z", "fingerprint"]));
        for g in v["generators"].as_array().into_iter().flatten() {
            s.push_str(&format!("generator: {}\n", text(g)));
        }
        let rows: Vec<Vec<String>> = v["rules"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|r| {
                vec![
                    text(&r["rule"]),
                    if r["verified"] == Value::Bool(true) { "verified".into() } else { "FAILED".into() },
                    text(&r["method"]),
                ]
            })
            .collect();
        s.push_str(&grid(&["transversal", "status", "oracle"], &rows));
    } else if cmd == "codes dump" {
        return text(&v["catalog"]);
    } else if cmd.starts_with("distance") {
        s.push_str(&pairs(&v["layout"], &["descriptor", "qubits"]));
        s.push_str(&pairs(v, &["distance", "class", "witness_weight", "bare_support", "encoded_support", "witness"]));
    } else if cmd.starts_with("gadget") {
        s.push_str(&pairs(&v["layout"], &["descriptor", "qubits"]));
        if v.get("refused").is_some() {
            s.push_str(&pairs(v, &["gate", "refused"]));
        } else {
            s.push_str(&pairs(v, &["gate", "gadget", "kind", "register", "gates", "touched_qubits", "coupled_outer_qubits"]));
            let counts: Vec<String> = v["gate_counts"]
                .as_object()
                .into_iter()
                .flatten()
                .map(|(k, n)| format!("{k}×{n}"))
                .collect();
            s.push_str(&format!("gate_counts: {}\n", counts.join(" ")));
            let c = &v["certificate"];
            s.push_str(&format!(
                "certificate: {} via {}, fidelity {}, variant {}, phase {}\n  {}\n",
                if c["pass"] == Value::Bool(true) { "pass" } else { "FAIL" },
                text(&c["method"]),
                text(&c["fidelity"]),
                text(&c["variant"]),
                text(&c["global_phase"]),
                text(&c["detail"]),
            ));
        }
    } else if cmd.starts_with("ftcheck") {
        s.push_str(&pairs(&v["layout"], &["descriptor", "qubits"]));
        let header = ["gadget", "locations", "branches", "failures", "min uncorrectable", "witness"];
        s.push_str("single faults:\n");
        s.push_str(&grid(&header, &fault_rows(&v["single_fault"])));
        if v.get("pair_search").is_some() {
            s.push_str("pair search:\n");
            s.push_str(&grid(&header, &fault_rows(&v["pair_search"])));
            let e = &v["effective_distance"];
            s.push_str(&format!(
                "effective distance: {} (witness gadget {})\n",
                text(&e["bound"]),
                text(&e["witness_gadget"])
            ));
        }
    } else if cmd.starts_with("table1") {
        let rows: Vec<Vec<String>> = v["rows"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|r| {
                let rf = &r["reference"];
                vec![
                    text(&r["method"]),
                    text(&r["qubits"]),
                    text(&r["overall_distance"]),
                    text(&r["effective_distance"]),
                    format!(
                        "({}, {}, {})",
                        text(&rf["qubits"]),
                        text(&rf["overall_distance"]),
                        text(&rf["effective_distance"])
                    ),
                    if r["matches_reference"] == Value::Bool(true) { "yes".into() } else { "NO".into() },
                ]
            })
            .collect();
        s.push_str(&grid(
            &["method", "#qubits", "overall distance", "effective distance", "reference", "match"],
            &rows,
        ));
        s.push_str("all numbers computed: distances by exact coset scan, effective distances by fault search\n");
        for r in v["rows"].as_array().into_iter().flatten() {
            if !r["note"].is_null() {
                s.push_str(&format!("note ({}): {}\n", text(&r["layout"]), text(&r["note"])));
            }
        }
        for m in v["mismatches"].as_array().into_iter().flatten() {
            s.push_str(&format!("MISMATCH {}\n", text(m)));
        }
    } else if cmd == "replay" {
        let o = &v["outcome"];
        s.push_str(&pairs(v, &["gadget"]));
        s.push_str(&pairs(o, &["faults", "branches", "failing_branches"]));
        if !o["first_failure"].is_null() {
            s.push_str(&format!(
                "first failure: residual {} from branch {}\n",
                text(&o["first_failure"]["residual"]),
                text(&o["first_failure"]["branch"])
            ));
        }
        if !o["dense"].is_null() {
            s.push_str(&format!(
                "dense replay: confirmed {}, min fidelity {}\n",
                text(&o["dense"]["confirmed"]),
                text(&o["dense"]["min_fidelity"])
            ));
        }
    } else {
        s.push_str(&serde_json::to_string_pretty(v).expect("serializes"));
        s.push('\n');
    }
    s
}
