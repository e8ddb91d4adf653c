//! Versioned text catalog of base codes. Each entry lists generators and
//! logical representatives in phase-letter notation plus transversal
//! declarations, which are re-verified by an oracle whenever a catalog loads.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use crate::circuit::GateKind;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

use super::{five_prime, five_qubit, reed_muller_15, steane, StabilizerCode};

/// The embedded catalog shipped with the library.
pub const BUILTIN_CATALOG: &str = include_str!("catalog.txt");

const HEADER: &str = "# nuqec code catalog v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransversalTarget {
    /// The gate on every qubit (qubit `j` of each operand block together).
    Each,
    /// A single-qubit fixup on one qubit of the first block.
    Qubit(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransversalOp {
    pub kind: GateKind,
    pub target: TransversalTarget,
}

impl TransversalOp {
    pub fn each(kind: GateKind) -> Self {
        TransversalOp {
            kind,
            target: TransversalTarget::Each,
        }
    }

    pub fn at(kind: GateKind, qubit: usize) -> Self {
        TransversalOp {
            kind,
            target: TransversalTarget::Qubit(qubit),
        }
    }

    fn text(&self) -> String {
        match self.target {
            TransversalTarget::Each => format!("{}*", self.kind),
            TransversalTarget::Qubit(q) => format!("{}@{q}", self.kind),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        if let Some(k) = s.strip_suffix('*') {
            return Ok(TransversalOp::each(GateKind::parse_spec(k)?));
        }
        let (k, q) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("transversal op `{s}`: expected KIND* or KIND@q")))?;
        let q = q
            .parse()
            .map_err(|_| Error::Parse(format!("transversal op `{s}`: bad qubit")))?;
        Ok(TransversalOp::at(GateKind::parse_spec(k)?, q))
    }
}

/// A logical gate realized by applying `ops` in order.
#[derive(Clone, Debug, PartialEq)]
pub struct TransversalRule {
    pub logical: GateKind,
    pub ops: Vec<TransversalOp>,
}

impl TransversalRule {
    pub fn new(logical: GateKind, ops: Vec<TransversalOp>) -> Self {
        TransversalRule { logical, ops }
    }

    pub fn text(&self) -> String {
        let ops: Vec<String> = self.ops.iter().map(TransversalOp::text).collect();
        format!("{} = {}", self.logical, ops.join(" "))
    }
}

/// Canonical catalog text of one code.
pub fn dump_code(code: &StabilizerCode) -> String {
    let mut s = String::new();
    writeln!(s, "code {}", code.name()).unwrap();
    writeln!(s, "n {}", code.n()).unwrap();
    writeln!(s, "css {}", code.is_css()).unwrap();
    if let Some(d) = code.derivation() {
        writeln!(s, "derivation {d}").unwrap();
    }
    for g in code.generators() {
        writeln!(s, "gen {g}").unwrap();
    }
    writeln!(s, "logical_x {}", code.logical_x()).unwrap();
    writeln!(s, "logical_z {}", code.logical_z()).unwrap();
    for r in code.transversal_rules() {
        writeln!(s, "transversal {}", r.text()).unwrap();
    }
    s.push_str("end\n");
    s
}

#[derive(Clone, Debug)]
pub struct Catalog {
    codes: Vec<Arc<StabilizerCode>>,
}

#[derive(Default)]
struct Entry {
    name: String,
    n: Option<usize>,
    css: Option<bool>,
    derivation: Option<String>,
    gens: Vec<PauliOperator>,
    lx: Option<PauliOperator>,
    lz: Option<PauliOperator>,
    rules: Vec<TransversalRule>,
}

impl Entry {
    fn finish(self) -> Result<StabilizerCode> {
        let missing = |f: &str| Error::Parse(format!("code {}: missing `{f}`", self.name));
        let n = self.n.ok_or_else(|| missing("n"))?;
        let lx = self.lx.clone().ok_or_else(|| missing("logical_x"))?;
        let lz = self.lz.clone().ok_or_else(|| missing("logical_z"))?;
        if lx.n() != n {
            return Err(Error::Dimension {
                expected: n,
                found: lx.n(),
            });
        }
        let mut code = StabilizerCode::new(
            self.name.clone(),
            self.gens,
            lx,
            lz,
            self.css.ok_or_else(|| missing("css"))?,
        )?
        .with_transversal(self.rules);
        if let Some(d) = self.derivation {
            code = code.with_derivation(d);
        }
        Ok(code)
    }
}

impl Catalog {
    /// The embedded catalog, parsed and verified once per process.
    pub fn builtin() -> Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::parse(BUILTIN_CATALOG).expect("embedded catalog verifies"))
            .clone()
    }

    /// The catalog as built by the library constructors.
    pub fn from_constructors() -> Catalog {
        Catalog {
            codes: vec![
                Arc::new(steane()),
                Arc::new(five_qubit()),
                Arc::new(five_prime()),
                Arc::new(reed_muller_15()),
            ],
        }
    }

    pub fn from_codes(codes: Vec<Arc<StabilizerCode>>) -> Catalog {
        Catalog { codes }
    }

    /// Parses catalog text and oracle-verifies every transversal declaration.
    pub fn parse(text: &str) -> Result<Catalog> {
        let catalog = Catalog::parse_unverified(text)?;
        for code in &catalog.codes {
            for rule in code.transversal_rules() {
                let cert = crate::verify::verify_transversal_rule(code, rule)?;
                if !cert.pass {
                    return Err(Error::Verification(format!(
                        "{}: declared transversal {} fails the {} check ({})",
                        code.name(),
                        rule.text(),
                        cert.method.name(),
                        cert.detail
                    )));
                }
            }
        }
        Ok(catalog)
    }

    /// Parses catalog text, validating codes but not transversal declarations.
    pub fn parse_unverified(text: &str) -> Result<Catalog> {
        let mut codes = Vec::new();
        let mut cur: Option<Entry> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| Error::Parse(format!("catalog line {}: {m}: `{line}`", lineno + 1));
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let rest = rest.trim();
            if key == "code" {
                if cur.is_some() {
                    return Err(bad("previous code lacks `end`"));
                }
                cur = Some(Entry {
                    name: rest.to_string(),
                    ..Entry::default()
                });
                continue;
            }
            let e = cur.as_mut().ok_or_else(|| bad("outside a `code` block"))?;
            match key {
                "n" => e.n = Some(rest.parse().map_err(|_| bad("bad n"))?),
                "css" => e.css = Some(rest.parse().map_err(|_| bad("bad css flag"))?),
                "derivation" => e.derivation = Some(rest.to_string()),
                "gen" => e.gens.push(rest.parse()?),
                "logical_x" => e.lx = Some(rest.parse()?),
                "logical_z" => e.lz = Some(rest.parse()?),
                "transversal" => {
                    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| bad("expected `=`"))?;
                    let ops = rhs
                        .split_whitespace()
                        .map(TransversalOp::parse)
                        .collect::<Result<Vec<_>>>()?;
                    if ops.is_empty() {
                        return Err(bad("no physical ops"));
                    }
                    e.rules.push(TransversalRule::new(GateKind::parse_spec(lhs)?, ops));
                }
                "end" => {
                    let entry = cur.take().expect("checked above");
                    if codes.iter().any(|c: &Arc<StabilizerCode>| c.name() == entry.name) {
                        return Err(bad("duplicate code name"));
                    }
                    codes.push(Arc::new(entry.finish()?));
                }
                _ => return Err(bad("unknown key")),
            }
        }
        if cur.is_some() {
            return Err(Error::Parse("catalog ends inside a `code` block".into()));
        }
        Ok(Catalog { codes })
    }

    pub fn dump(&self) -> String {
        let mut s = String::from(HEADER);
        s.push('\n');
        for c in &self.codes {
            s.push('\n');
            s.push_str(&dump_code(c));
        }
        s
    }

    pub fn codes(&self) -> &[Arc<StabilizerCode>] {
        &self.codes
    }

    pub fn names(&self) -> Vec<&str> {
        self.codes.iter().map(|c| c.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<Arc<StabilizerCode>> {
        self.codes
            .iter()
            .find(|c| c.name() == name)
            .cloned()
            .ok_or_else(|| Error::UnknownCode(name.to_string()))
    }

    /// 16-hex-digit digest of the canonical dump.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.dump().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
