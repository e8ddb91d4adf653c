//! Located gate circuits, staircase `C^kZ(θ)` synthesis, transversal
//! expansion and logical-gadget dispatch on concatenation layouts.

mod angle;
mod gadget;
mod gate;
mod text;

pub use angle::Angle;
pub use gadget::{
    invert, logical_gadget_for, staircase_gadget, staircase_plan, transversal_gadget,
    GadgetCircuit, GadgetKind, OuterCircuit, StaircasePlan,
};
pub use gate::{Gate, GateKind};
pub use text::{gate_line, parse_circuit, write_circuit};
