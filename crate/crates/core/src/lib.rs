// SPDX-License-Identifier: Apache-2.0
//! Reversible logic toolkit.
//!
//! * [`gate`]: built-in reversible gates (FG, PG, TG, FRG, PFAG, HNG, HNFG)
//!   as checked bijections with quantum and logical cost metadata, plus
//!   user-defined gates;
//! * [`netlist`]: the fan-out-free, define-before-use circuit IR and its
//!   structural validation;
//! * [`sim`]: forward and inverse simulation, truth tables and oracle
//!   equivalence checks;
//! * [`metrics`]: gate count, quantum cost, garbage, constants and
//!   logical-calculation totals, with comparison against published figures;
//! * [`builders`]: the PFAG ripple-carry adder, two BCD digit adder designs
//!   and multi-digit BCD chains;
//! * [`textio`]: the text netlist format.

pub mod builders;
pub mod gate;
pub mod metrics;
pub mod netlist;
pub mod sim;
pub mod textio;

pub use builders::{
    build_bcd_adder, build_bcd_chain, build_ripple_adder, BcdDesign, BuildOptions, CarryIn,
    DesignId,
};
pub use gate::{
    check_bijective, eval_gate, inverse_eval_gate, Builtin, GateDefinition, GateError, GateLibrary,
    LogicCost, QuantumCost,
};
pub use metrics::{analyze, compare, literature_table, Comparison, LiteratureRow, MetricsReport};
pub use netlist::{
    garbage_wires, validate, GarbageSet, GateInstance, Netlist, NetlistError, ValidationReport,
    Violation, Wire,
};
pub use sim::{Assignment, SimError, Simulator, TraceResult};
pub use textio::{parse_netlist, serialize_netlist, ParseError, ParseErrors};
