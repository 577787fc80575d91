// SPDX-License-Identifier: Apache-2.0
//! Fan-out-free reversible netlists and their structural validation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gate::{check_bijective, is_identifier, GateDefinition};

/// A named signal line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wire(String);

impl Wire {
    pub fn new(name: impl Into<String>) -> Result<Wire, NetlistError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Wire(name))
        } else {
            Err(NetlistError::InvalidWireName(name))
        }
    }

    /// Caller guarantees `name` is an identifier.
    pub(crate) fn trusted(name: String) -> Wire {
        debug_assert!(is_identifier(&name), "bad wire name {name}");
        Wire(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Wire {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateInstance {
    pub gate: Arc<GateDefinition>,
    pub inputs: Vec<Wire>,
    pub outputs: Vec<Wire>,
}

impl GateInstance {
    pub fn new(gate: Arc<GateDefinition>, inputs: Vec<Wire>, outputs: Vec<Wire>) -> Self {
        GateInstance {
            gate,
            inputs,
            outputs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Netlist {
    pub name: String,
    pub primary_inputs: Vec<Wire>,
    pub constants: Vec<(Wire, bool)>,
    /// Gates in execution order.
    pub gates: Vec<GateInstance>,
    pub primary_outputs: Vec<Wire>,
}

/// Where a wire is defined or consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    PrimaryInput(usize),
    Constant(usize),
    GateInput { gate: usize, pin: usize },
    GateOutput { gate: usize, pin: usize },
    PrimaryOutput(usize),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Site::PrimaryInput(i) => write!(f, "primary input {i}"),
            Site::Constant(i) => write!(f, "constant {i}"),
            Site::GateInput { gate, pin } => write!(f, "gate {gate} input {pin}"),
            Site::GateOutput { gate, pin } => write!(f, "gate {gate} output {pin}"),
            Site::PrimaryOutput(i) => write!(f, "primary output {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("redefinition of {wire}: first defined at {first}, again at {second}")]
    Redefinition {
        wire: Wire,
        first: Site,
        second: Site,
    },
    #[error("use before definition of {wire} at {used}: defined later at {defined}")]
    UseBeforeDefinition {
        wire: Wire,
        used: Site,
        defined: Site,
    },
    #[error("undefined wire {wire} used at {used}")]
    Undefined { wire: Wire, used: Site },
    #[error("fan-out at {wire}: consumed at {first} and at {second}")]
    FanOut {
        wire: Wire,
        first: Site,
        second: Site,
    },
    #[error(
        "arity mismatch at gate {gate} ({name}): arity {arity}, {inputs} inputs, {outputs} outputs"
    )]
    ArityMismatch {
        gate: usize,
        name: String,
        arity: usize,
        inputs: usize,
        outputs: usize,
    },
    #[error("gate {gate} ({name}) is not a bijection")]
    NonBijectiveGate { gate: usize, name: String },
    #[error("line conservation broken: {sources} source lines but {terminals} terminal lines")]
    LineConservation { sources: usize, terminals: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Warning {
    #[error("constant {wire} is never consumed")]
    UnusedConstant { wire: Wire },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("invalid wire name `{0}`")]
    InvalidWireName(String),
    #[error("invalid netlist: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Wires that are defined but neither consumed by a gate nor listed as a
/// primary output, in definition order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GarbageSet {
    wires: Vec<Wire>,
}

impl GarbageSet {
    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }

    pub fn contains(&self, wire: &Wire) -> bool {
        self.wires.contains(wire)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Wire> {
        self.wires.iter()
    }

    pub fn as_slice(&self) -> &[Wire] {
        &self.wires
    }
}

impl Netlist {
    pub fn new(name: impl Into<String>) -> Self {
        Netlist {
            name: name.into(),
            ..Netlist::default()
        }
    }

    /// Every defined wire with its definition site, in definition order.
    pub fn definitions(&self) -> impl Iterator<Item = (&Wire, Site)> {
        let inputs = self
            .primary_inputs
            .iter()
            .enumerate()
            .map(|(i, w)| (w, Site::PrimaryInput(i)));
        let consts = self
            .constants
            .iter()
            .enumerate()
            .map(|(i, (w, _))| (w, Site::Constant(i)));
        let gates = self.gates.iter().enumerate().flat_map(|(g, inst)| {
            inst.outputs
                .iter()
                .enumerate()
                .map(move |(pin, w)| (w, Site::GateOutput { gate: g, pin }))
        });
        inputs.chain(consts).chain(gates)
    }

    /// Input lines of the whole circuit: primary inputs, then constants.
    pub fn source_wires(&self) -> Vec<Wire> {
        self.primary_inputs
            .iter()
            .chain(self.constants.iter().map(|(w, _)| w))
            .cloned()
            .collect()
    }

    /// Checks every structural rule and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut defined: HashMap<&Wire, Site> = HashMap::new();
        for (wire, site) in self.definitions() {
            if let Some(&first) = defined.get(wire) {
                report.violations.push(Violation::Redefinition {
                    wire: wire.clone(),
                    first,
                    second: site,
                });
            } else {
                defined.insert(wire, site);
            }
        }

        let mut uses: Vec<(&Wire, Site)> = Vec::new();
        for (g, inst) in self.gates.iter().enumerate() {
            let arity = inst.gate.arity();
            if inst.inputs.len() != arity || inst.outputs.len() != arity {
                report.violations.push(Violation::ArityMismatch {
                    gate: g,
                    name: inst.gate.name().to_string(),
                    arity,
                    inputs: inst.inputs.len(),
                    outputs: inst.outputs.len(),
                });
            }
            if !check_bijective(&inst.gate.table()).unwrap_or(false) {
                report.violations.push(Violation::NonBijectiveGate {
                    gate: g,
                    name: inst.gate.name().to_string(),
                });
            }
            for (pin, wire) in inst.inputs.iter().enumerate() {
                let used = Site::GateInput { gate: g, pin };
                match defined.get(wire) {
                    None => report.violations.push(Violation::Undefined {
                        wire: wire.clone(),
                        used,
                    }),
                    Some(&site) if !defined_before_gate(site, g) => {
                        report.violations.push(Violation::UseBeforeDefinition {
                            wire: wire.clone(),
                            used,
                            defined: site,
                        })
                    }
                    Some(_) => {}
                }
                uses.push((wire, used));
            }
        }
        for (i, wire) in self.primary_outputs.iter().enumerate() {
            let used = Site::PrimaryOutput(i);
            if !defined.contains_key(wire) {
                report.violations.push(Violation::Undefined {
                    wire: wire.clone(),
                    used,
                });
            }
            uses.push((wire, used));
        }

        let mut consumed: HashMap<&Wire, Site> = HashMap::new();
        for (wire, site) in uses {
            if let Some(&first) = consumed.get(wire) {
                report.violations.push(Violation::FanOut {
                    wire: wire.clone(),
                    first,
                    second: site,
                });
            } else {
                consumed.insert(wire, site);
            }
        }

        if report.violations.is_empty() {
            let sources = self.primary_inputs.len() + self.constants.len();
            let garbage = self
                .definitions()
                .filter(|(w, _)| !consumed.contains_key(w))
                .count();
            let terminals = self.primary_outputs.len() + garbage;
            if sources != terminals {
                report
                    .violations
                    .push(Violation::LineConservation { sources, terminals });
            }
        }

        for (wire, _) in &self.constants {
            if !consumed.contains_key(wire) {
                report
                    .warnings
                    .push(Warning::UnusedConstant { wire: wire.clone() });
            }
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<(), NetlistError> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(NetlistError::Invalid(report.violations))
        }
    }

    /// Garbage wires, by scanning for defined-but-unconsumed lines.
    pub fn garbage_wires(&self) -> Result<GarbageSet, NetlistError> {
        self.ensure_valid()?;
        let consumed: std::collections::HashSet<&Wire> = self
            .gates
            .iter()
            .flat_map(|g| g.inputs.iter())
            .chain(self.primary_outputs.iter())
            .collect();
        let wires = self
            .definitions()
            .filter(|(w, _)| !consumed.contains(w))
            .map(|(w, _)| w.clone())
            .collect();
        Ok(GarbageSet { wires })
    }

    /// Primary outputs followed by garbage wires.
    pub fn terminal_wires(&self) -> Result<Vec<Wire>, NetlistError> {
        let garbage = self.garbage_wires()?;
        Ok(self
            .primary_outputs
            .iter()
            .cloned()
            .chain(garbage.wires)
            .collect())
    }
}

fn defined_before_gate(site: Site, gate: usize) -> bool {
    match site {
        Site::PrimaryInput(_) | Site::Constant(_) => true,
        Site::GateOutput { gate: g, .. } => g < gate,
        Site::GateInput { .. } | Site::PrimaryOutput(_) => false,
    }
}

/// Validates `netlist`.
pub fn validate(netlist: &Netlist) -> ValidationReport {
    netlist.validate()
}

/// Garbage wires of a valid netlist.
pub fn garbage_wires(netlist: &Netlist) -> Result<GarbageSet, NetlistError> {
    netlist.garbage_wires()
}
