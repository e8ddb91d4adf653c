//! Non-uniform concatenated stabilizer codes: Pauli algebra, a verified code
//! catalog, concatenation layouts with hierarchical decoding, logical gadget
//! synthesis, simulation oracles and fault-tolerance analysis.

pub mod circuit;
pub mod clifford;
pub mod code;
pub mod concat;
pub mod dense;
pub mod error;
pub mod ft;
pub mod pauli;
pub mod report;
pub mod symplectic;
pub mod verify;

pub use circuit::{Angle, GadgetCircuit, Gate, GateKind};
pub use clifford::{CliffordGate, CliffordKind};
pub use code::{Catalog, StabilizerCode};
pub use concat::{Assignment, ConcatenationLayout};
pub use error::{Error, Result};
pub use pauli::{Letter, PauliOperator, Phase};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/paulis.md")]
mod paulis {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/codes.md")]
mod codes {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/concatenation.md")]
mod concatenation {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/gadgets.md")]
mod gadgets {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/fault_tolerance.md")]
mod fault_tolerance {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
