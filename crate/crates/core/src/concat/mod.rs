//! Uniform and non-uniform two-level concatenation: layouts, the B1/B2
//! partition, flattened stabilizers, hierarchical decoding and exact
//! concatenated distance.

pub mod presets;

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::code::{shared_decoder, Catalog, LookupDecoder, StabilizerCode};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator, Phase};

/// What sits at one outer qubit.
#[derive(Clone, Debug, PartialEq)]
pub enum Assignment {
    Bare,
    Encoded(Arc<StabilizerCode>),
}

impl Assignment {
    pub fn size(&self) -> usize {
        match self {
            Assignment::Bare => 1,
            Assignment::Encoded(c) => c.n(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Assignment::Bare => "bare",
            Assignment::Encoded(c) => c.name(),
        }
    }
}

/// Outer qubits coupled by the non-transversal gadget (`b1`) and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
}

/// `b1` is the gadget support, `b2` its complement.
pub fn partition_from_gadget(outer: &StabilizerCode, support: &[usize]) -> Result<Partition> {
    if support.is_empty() {
        return Err(Error::InvalidLayout("empty gadget support".into()));
    }
    if let Some(&q) = support.iter().find(|&&q| q >= outer.n()) {
        return Err(Error::InvalidLayout(format!(
            "support qubit {q} outside {} ({} qubits)",
            outer.name(),
            outer.n()
        )));
    }
    let mut b1 = support.to_vec();
    b1.sort_unstable();
    b1.dedup();
    let b2 = (0..outer.n()).filter(|q| !b1.contains(q)).collect();
    Ok(Partition { b1, b2 })
}

/// The staircase support of the outer code's minimum-weight logical Z.
pub fn staircase_partition(outer: &StabilizerCode) -> Result<Partition> {
    let plan = crate::circuit::staircase_plan(outer)?;
    partition_from_gadget(outer, &plan.support)
}

pub enum LayoutRule {
    Uniform(Arc<StabilizerCode>),
    NonUniform {
        inner: Arc<StabilizerCode>,
        partition: Partition,
    },
    B2Encoded {
        inner: Arc<StabilizerCode>,
        partition: Partition,
        b2_inner: Arc<StabilizerCode>,
    },
}

pub fn make_layout(outer: Arc<StabilizerCode>, rule: LayoutRule) -> Result<ConcatenationLayout> {
    let n = outer.n();
    let check = |p: &Partition| -> Result<()> {
        let mut all: Vec<usize> = p.b1.iter().chain(&p.b2).copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidLayout(format!(
                "partition {:?} / {:?} does not split the {n} outer qubits",
                p.b1, p.b2
            )));
        }
        Ok(())
    };
    let assignment = match rule {
        LayoutRule::Uniform(inner) => vec![Assignment::Encoded(inner); n],
        LayoutRule::NonUniform { inner, partition } => {
            check(&partition)?;
            (0..n)
                .map(|q| {
                    if partition.b1.contains(&q) {
                        Assignment::Encoded(inner.clone())
                    } else {
                        Assignment::Bare
                    }
                })
                .collect()
        }
        LayoutRule::B2Encoded {
            inner,
            partition,
            b2_inner,
        } => {
            check(&partition)?;
            (0..n)
                .map(|q| {
                    if partition.b1.contains(&q) {
                        Assignment::Encoded(inner.clone())
                    } else {
                        Assignment::Encoded(b2_inner.clone())
                    }
                })
                .collect()
        }
    };
    ConcatenationLayout::new(None, outer, assignment)
}

/// An outer code with every outer qubit either bare or encoded in an inner
/// code, flattened onto `total_n` physical qubits in outer-qubit order.
#[derive(Clone)]
pub struct ConcatenationLayout {
    name: String,
    outer: Arc<StabilizerCode>,
    assignment: Vec<Assignment>,
    offsets: Vec<usize>,
    total_n: usize,
    flat: Arc<StabilizerCode>,
    outer_decoder: Arc<LookupDecoder>,
    inner_decoders: Vec<Option<Arc<LookupDecoder>>>,
}

impl fmt::Debug for ConcatenationLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConcatenationLayout({}, n={})", self.name, self.total_n)
    }
}

impl ConcatenationLayout {
    pub fn new(
        name: Option<String>,
        outer: Arc<StabilizerCode>,
        assignment: Vec<Assignment>,
    ) -> Result<Self> {
        if assignment.len() != outer.n() {
            return Err(Error::InvalidLayout(format!(
                "{} has {} qubits but {} assignments were given",
                outer.name(),
                outer.n(),
                assignment.len()
            )));
        }
        let mut offsets = Vec::with_capacity(assignment.len());
        let mut total_n = 0;
        for a in &assignment {
            offsets.push(total_n);
            total_n += a.size();
        }
        let name = name.unwrap_or_else(|| inline_descriptor(&outer, &assignment));
        let lift = |p: &PauliOperator| lift_with(&assignment, &offsets, total_n, p);
        let mut gens = Vec::with_capacity(total_n - 1);
        for (a, &off) in assignment.iter().zip(&offsets) {
            if let Assignment::Encoded(inner) = a {
                for g in inner.generators() {
                    gens.push(g.embed_at(total_n, off)?);
                }
            }
        }
        for g in outer.generators() {
            gens.push(lift(g));
        }
        let css = outer.is_css()
            && assignment.iter().all(|a| match a {
                Assignment::Bare => true,
                Assignment::Encoded(c) => c.is_css(),
            });
        let flat = StabilizerCode::new(
            name.clone(),
            gens,
            lift(outer.logical_x()),
            lift(outer.logical_z()),
            css,
        )
        .map_err(|e| Error::Internal(format!("flattening {name}: {e}")))?;
        let outer_decoder = shared_decoder(&outer)?;
        let inner_decoders = assignment
            .iter()
            .map(|a| match a {
                Assignment::Bare => Ok(None),
                Assignment::Encoded(c) => shared_decoder(c).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConcatenationLayout {
            name,
            outer,
            assignment,
            offsets,
            total_n,
            flat: Arc::new(flat),
            outer_decoder,
            inner_decoders,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replaces the decoder of every block encoded in `code_name`.
    pub fn with_inner_decoder(mut self, code_name: &str, decoder: Arc<LookupDecoder>) -> Self {
        for (a, d) in self.assignment.iter().zip(self.inner_decoders.iter_mut()) {
            if a.name() == code_name {
                *d = Some(decoder.clone());
            }
        }
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn outer(&self) -> &Arc<StabilizerCode> {
        &self.outer
    }

    pub fn assignment(&self) -> &[Assignment] {
        &self.assignment
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn block(&self, q: usize) -> Range<usize> {
        self.offsets[q]..self.offsets[q] + self.assignment[q].size()
    }

    pub fn total_n(&self) -> usize {
        self.total_n
    }

    pub fn is_uniform(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_bare(&self) -> bool {
        self.assignment.iter().all(|a| *a == Assignment::Bare)
    }

    /// Outer qubits carrying an inner code.
    pub fn encoded_qubits(&self) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&q| self.assignment[q] != Assignment::Bare)
            .collect()
    }

    /// The flattened code: embedded inner generators followed by lifted outer
    /// generators; logicals are the lifted outer logicals.
    pub fn flattened(&self) -> &Arc<StabilizerCode> {
        &self.flat
    }

    pub fn flatten_stabilizers(&self) -> &[PauliOperator] {
        self.flat.generators()
    }

    /// Replaces each outer letter by the inner logical representative (or the
    /// physical letter on bare qubits).
    pub fn lift(&self, outer_op: &PauliOperator) -> PauliOperator {
        lift_with(&self.assignment, &self.offsets, self.total_n, outer_op)
    }

    /// Inline descriptor `outer:a0,a1,...`.
    pub fn inline(&self) -> String {
        inline_descriptor(&self.outer, &self.assignment)
    }

    /// Multi-line descriptor accepted by [`parse_descriptor`].
    pub fn descriptor(&self) -> String {
        let names: Vec<&str> = self.assignment.iter().map(Assignment::name).collect();
        format!(
            "layout {}\nouter {}\nassign {}\n",
            self.name,
            self.outer.name(),
            names.join(" ")
        )
    }

    /// Digest of the descriptor and every code involved.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.inline().as_bytes());
        h.update(self.outer.fingerprint().as_bytes());
        for a in &self.assignment {
            if let Assignment::Encoded(c) = a {
                h.update(c.fingerprint().as_bytes());
            }
        }
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Residual logical letter of each outer qubit: the inner residual on
    /// encoded blocks, the physical letter on bare qubits.
    pub fn outer_image(&self, error: &PauliOperator) -> Result<PauliOperator> {
        if error.n() != self.total_n {
            return Err(Error::Dimension {
                expected: self.total_n,
                found: error.n(),
            });
        }
        let mut letters = Vec::with_capacity(self.assignment.len());
        for (q, dec) in self.inner_decoders.iter().enumerate() {
            letters.push(match dec {
                None => error.letter(self.offsets[q]),
                Some(d) => d.residual(&error.restrict_range(self.block(q)))?,
            });
        }
        Ok(PauliOperator::from_letters(Phase::ONE, &letters))
    }

    /// Decode every inner block, then the outer code; returns the outer
    /// residual logical class.
    pub fn hierarchical_decode(&self, error: &PauliOperator) -> Result<Letter> {
        let outer_err = self.outer_image(error)?;
        self.outer_decoder.residual(&outer_err)
    }

    /// Exact minimum weight of a nontrivial flattened logical, with a
    /// verified witness.
    pub fn concatenated_distance(&self) -> Result<DistanceReport> {
        concatenated_distance(self)
    }
}

fn inline_descriptor(outer: &StabilizerCode, assignment: &[Assignment]) -> String {
    let names: Vec<&str> = assignment.iter().map(Assignment::name).collect();
    format!("{}:{}", outer.name(), names.join(","))
}

fn lift_with(
    assignment: &[Assignment],
    offsets: &[usize],
    total_n: usize,
    p: &PauliOperator,
) -> PauliOperator {
    let mut out = PauliOperator::identity(total_n).with_phase(p.phase());
    for (q, a) in assignment.iter().enumerate() {
        let l = p.letter(q);
        if l == Letter::I {
            continue;
        }
        match a {
            Assignment::Bare => out.set_letter(offsets[q], l),
            Assignment::Encoded(c) => {
                let rep = c.logical(l).embed_at(total_n, offsets[q]).expect("fits");
                out.mul_assign_unchecked(&rep);
            }
        }
    }
    out
}

/// Minimum-weight flattened logical and how it decomposes.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport {
    pub distance: usize,
    pub class: Letter,
    pub outer_logical: PauliOperator,
    pub witness: PauliOperator,
    /// Outer qubits in the witness support that are bare / encoded.
    pub bare_support: Vec<usize>,
    pub encoded_support: Vec<usize>,
}

/// Scans every element of the three nontrivial outer cosets, charging 1 per
/// bare non-identity letter and the inner minimum weight of the letter's
/// class per encoded qubit.
pub fn concatenated_distance(layout: &ConcatenationLayout) -> Result<DistanceReport> {
    let outer = layout.outer();
    let mut min_reps: Vec<Option<[Option<PauliOperator>; 4]>> = Vec::new();
    let mut cache: Vec<(Arc<StabilizerCode>, [Option<PauliOperator>; 4])> = Vec::new();
    for a in layout.assignment() {
        min_reps.push(match a {
            Assignment::Bare => None,
            Assignment::Encoded(c) => {
                if let Some((_, r)) = cache.iter().find(|(k, _)| Arc::ptr_eq(k, c) || **k == **c) {
                    Some(r.clone())
                } else {
                    let reps = [
                        None,
                        Some(c.min_weight_logical(Letter::X)?),
                        Some(c.min_weight_logical(Letter::Y)?),
                        Some(c.min_weight_logical(Letter::Z)?),
                    ];
                    cache.push((c.clone(), reps.clone()));
                    Some(reps)
                }
            }
        });
    }
    let idx = |l: Letter| match l {
        Letter::I => 0,
        Letter::X => 1,
        Letter::Y => 2,
        Letter::Z => 3,
    };
    let cost = |p: &PauliOperator| -> usize {
        (0..outer.n())
            .map(|q| {
                let l = p.letter(q);
                match (&min_reps[q], l) {
                    (_, Letter::I) => 0,
                    (None, _) => 1,
                    (Some(r), l) => r[idx(l)].as_ref().expect("nontrivial").weight(),
                }
            })
            .sum()
    };
    let mut best: Option<(usize, Letter, PauliOperator)> = None;
    for class in Letter::NONTRIVIAL {
        for p in outer.coset(class)? {
            let c = cost(&p);
            let better = match &best {
                None => true,
                Some((bc, _, bp)) => c < *bc || (c == *bc && p.canonical_cmp(bp).is_lt()),
            };
            if better {
                best = Some((c, class, p));
            }
        }
    }
    let (distance, _, outer_logical) = best.expect("nonempty cosets");
    let n = layout.total_n();
    let mut witness = PauliOperator::identity(n);
    let (mut bare_support, mut encoded_support) = (Vec::new(), Vec::new());
    for q in 0..outer.n() {
        let l = outer_logical.letter(q);
        if l == Letter::I {
            continue;
        }
        match &min_reps[q] {
            None => {
                witness.set_letter(layout.offsets()[q], l);
                bare_support.push(q);
            }
            Some(r) => {
                let rep = r[idx(l)].as_ref().expect("nontrivial");
                witness.mul_assign_unchecked(&rep.unsigned().embed_at(n, layout.offsets()[q])?);
                encoded_support.push(q);
            }
        }
    }
    let witness = witness.unsigned();
    let flat = layout.flattened();
    let got = flat.logical_class(&witness);
    if witness.weight() != distance || got.is_none() || got == Some(Letter::I) {
        return Err(Error::Internal(format!(
            "{}: distance witness {witness} fails verification (class {got:?}, weight {})",
            layout.name(),
            witness.weight()
        )));
    }
    Ok(DistanceReport {
        distance,
        class: got.expect("checked"),
        outer_logical,
        witness,
        bare_support,
        encoded_support,
    })
}

/// Parses either the inline form `outer:a0,a1,...` or the multi-line form
/// written by [`ConcatenationLayout::descriptor`].
pub fn parse_descriptor(text: &str, catalog: &Catalog) -> Result<ConcatenationLayout> {
    let t = text.trim();
    let resolve = |names: &[&str]| -> Result<Vec<Assignment>> {
        names
            .iter()
            .map(|s| match s.trim() {
                "bare" => Ok(Assignment::Bare),
                other => Ok(Assignment::Encoded(catalog.get(other)?)),
            })
            .collect()
    };
    if !t.contains('\n') {
        if let Some((outer, rest)) = t.split_once(':') {
            let names: Vec<&str> = rest.split(',').collect();
            return ConcatenationLayout::new(None, catalog.get(outer.trim())?, resolve(&names)?);
        }
    }
    let (mut name, mut outer, mut assign) = (None, None, None);
    for raw in t.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once(' ').unwrap_or((line, ""));
        match k {
            "layout" => name = Some(v.trim().to_string()),
            "outer" => outer = Some(catalog.get(v.trim())?),
            "assign" => assign = Some(resolve(&v.split_whitespace().collect::<Vec<_>>())?),
            _ => return Err(Error::Parse(format!("layout descriptor: unknown line `{line}`"))),
        }
    }
    ConcatenationLayout::new(
        name,
        outer.ok_or_else(|| Error::Parse("layout descriptor lacks `outer`".into()))?,
        assign.ok_or_else(|| Error::Parse("layout descriptor lacks `assign`".into()))?,
    )
}
