//! The layouts studied here, built from a catalog.

use std::sync::Arc;

use crate::code::Catalog;
use crate::error::{Error, Result};

use super::{
    make_layout, staircase_partition, Assignment, ConcatenationLayout, LayoutRule, Partition,
};

/// Preset names accepted by [`build`].
pub const NAMES: [&str; 10] = [
    "uniform105",
    "nonuniform49",
    "uniform75",
    "nonuniform47",
    "b2encoded73",
    "b2encoded55",
    "bare_steane",
    "bare_five_qubit",
    "bare_five_prime",
    "five_qubit_rm",
];

fn non_uniform(catalog: &Catalog, outer: &str, name: &str) -> Result<ConcatenationLayout> {
    let outer = catalog.get(outer)?;
    let partition = staircase_partition(&outer)?;
    Ok(make_layout(
        outer,
        LayoutRule::NonUniform {
            inner: catalog.get("rm15")?,
            partition,
        },
    )?
    .named(name))
}

fn b2_encoded(catalog: &Catalog, outer: &str, name: &str) -> Result<ConcatenationLayout> {
    let outer_code = catalog.get(outer)?;
    let partition: Partition = staircase_partition(&outer_code)?;
    Ok(make_layout(
        outer_code.clone(),
        LayoutRule::B2Encoded {
            inner: catalog.get("rm15")?,
            partition,
            b2_inner: outer_code,
        },
    )?
    .named(name))
}

pub fn build(name: &str, catalog: &Catalog) -> Result<ConcatenationLayout> {
    match name {
        "uniform105" => Ok(make_layout(catalog.get("steane")?, LayoutRule::Uniform(catalog.get("rm15")?))?
            .named(name)),
        "uniform75" => Ok(make_layout(
            catalog.get("five_prime")?,
            LayoutRule::Uniform(catalog.get("rm15")?),
        )?
        .named(name)),
        "nonuniform49" => non_uniform(catalog, "steane", name),
        "nonuniform47" => non_uniform(catalog, "five_prime", name),
        "five_qubit_rm" => non_uniform(catalog, "five_qubit", name),
        "b2encoded73" => b2_encoded(catalog, "steane", name),
        "b2encoded55" => b2_encoded(catalog, "five_prime", name),
        other => match other.strip_prefix("bare_") {
            Some(code) => bare_in(code, catalog),
            None => Err(Error::InvalidLayout(format!(
                "unknown preset `{other}` (known: {})",
                NAMES.join(", ")
            ))),
        },
    }
}

fn bare_in(code: &str, catalog: &Catalog) -> Result<ConcatenationLayout> {
    let outer = catalog.get(code)?;
    let n = outer.n();
    ConcatenationLayout::new(Some(format!("bare_{code}")), outer, vec![Assignment::Bare; n])
}

fn builtin(name: &str) -> ConcatenationLayout {
    build(name, &Catalog::builtin()).expect("preset builds from the embedded catalog")
}

/// Every outer qubit bare: the outer code itself.
pub fn bare(code: &str) -> ConcatenationLayout {
    bare_in(code, &Catalog::builtin()).expect("catalog code")
}

pub fn uniform105() -> ConcatenationLayout {
    builtin("uniform105")
}

pub fn nonuniform49() -> ConcatenationLayout {
    builtin("nonuniform49")
}

pub fn uniform75() -> ConcatenationLayout {
    builtin("uniform75")
}

pub fn nonuniform47() -> ConcatenationLayout {
    builtin("nonuniform47")
}

pub fn b2encoded73() -> ConcatenationLayout {
    builtin("b2encoded73")
}

pub fn b2encoded55() -> ConcatenationLayout {
    builtin("b2encoded55")
}

/// The standard five-qubit code with its gadget support encoded in RM-15;
/// its staircase needs `K` on encoded blocks.
pub fn five_qubit_rm() -> ConcatenationLayout {
    builtin("five_qubit_rm")
}

/// Shared handle for callers that keep layouts around.
pub fn shared(name: &str, catalog: &Catalog) -> Result<Arc<ConcatenationLayout>> {
    build(name, catalog).map(Arc::new)
}
