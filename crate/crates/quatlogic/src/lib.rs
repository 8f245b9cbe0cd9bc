//! Synthesis toolkit for four-valued logic.
//!
//! The crate covers the pipeline from truth tables to gate netlists:
//!
//! * [`algebra`] — the qudit domain and its operator set, with packed-binary
//!   semantics (a qudit is an ordered bit pair).
//! * [`table`] — completely specified n-variable functions as 4^n-row truth
//!   tables, plus the `.qtt` text format.
//! * [`sop`] — two sum-of-products forms: weighted equality min-terms
//!   (form-I) and a binary decomposition with exact two-level minimization
//!   (form-II), plus functional-inverter peephole rewrites and the `.qsop`
//!   text format.
//! * [`netlist`] — fan-in-bounded gate DAGs, SOP lowering, simulation,
//!   gate-count/depth measurement and worst-case bounds, plus the `.qnet`
//!   text format.
//! * [`circuits`] — generators for equality realizations, decoders,
//!   demultiplexers and multiplexers.
//! * [`cli`] — the `quatlogic` command-line front end.

pub mod algebra;
pub mod circuits;
pub mod cli;
pub mod netlist;
pub mod sop;
pub mod table;

pub use algebra::{apply_dyadic, apply_unary, AlgebraError, OperatorKind, Qudit};
pub use netlist::{
    form1_bounds, form2_bounds, lower_sop, worst_case_table, BoundsReport, Gate, GateId,
    LowerOptions, Netlist, NetlistError, SopBounds,
};
pub use sop::{synthesize_form1, synthesize_form2, SopError, SopExpr, SopForm};
pub use table::{QFunction, TableError};
