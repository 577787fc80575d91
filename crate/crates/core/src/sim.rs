// SPDX-License-Identifier: Apache-2.0
//! Forward and inverse simulation, exhaustive truth tables and oracle
//! equivalence checking.
//!
//! Bit patterns index wires in declaration order. When a pattern is read as
//! an integer, the first wire is the most significant bit.

use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

use crate::gate::{pack, unpack, GateDefinition};
use crate::netlist::{Netlist, NetlistError, Wire};

/// Default cap on primary inputs for exhaustive enumeration.
pub const DEFAULT_INPUT_LIMIT: usize = 20;
/// Default cap on reported counterexamples.
pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error("missing binding for wire {0}")]
    Missing(Wire),
    #[error("unexpected binding for wire {0}")]
    Unexpected(Wire),
    #[error("expected {expected} bits, got {got}")]
    Width { expected: usize, got: usize },
    #[error(
        "circuit has {inputs} primary inputs, above the exhaustive limit of {limit}; raise it with --max-inputs"
    )]
    InputLimit { inputs: usize, limit: usize },
}

/// Wire-to-bit bindings, kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    bindings: IndexMap<Wire, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    /// Zips `wires` with `bits`.
    pub fn from_bits(wires: &[Wire], bits: &[bool]) -> Result<Self, SimError> {
        if wires.len() != bits.len() {
            return Err(SimError::Width {
                expected: wires.len(),
                got: bits.len(),
            });
        }
        Ok(wires.iter().cloned().zip(bits.iter().copied()).collect())
    }

    pub fn insert(&mut self, wire: Wire, bit: bool) -> Option<bool> {
        self.bindings.insert(wire, bit)
    }

    pub fn get(&self, wire: &Wire) -> Option<bool> {
        self.bindings.get(wire).copied()
    }

    /// Looks up by wire name.
    pub fn bit(&self, name: &str) -> Option<bool> {
        self.bindings
            .iter()
            .find(|(w, _)| w.as_str() == name)
            .map(|(_, &b)| b)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Wire, bool)> {
        self.bindings.iter().map(|(w, &b)| (w, b))
    }

    /// Bits for `wires` in the given order.
    pub fn bits_for(&self, wires: &[Wire]) -> Result<Vec<bool>, SimError> {
        wires
            .iter()
            .map(|w| self.get(w).ok_or_else(|| SimError::Missing(w.clone())))
            .collect()
    }

    pub fn bits(&self) -> Vec<bool> {
        self.bindings.values().copied().collect()
    }

    /// Restriction to `wires`, in that order.
    pub fn restrict(&self, wires: &[Wire]) -> Result<Assignment, SimError> {
        let bits = self.bits_for(wires)?;
        Assignment::from_bits(wires, &bits)
    }
}

impl FromIterator<(Wire, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Wire, bool)>>(iter: I) -> Self {
        Assignment {
            bindings: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub primary_out: Assignment,
    pub garbage_out: Assignment,
    /// Every wire, in definition order.
    pub all_lines: Assignment,
}

impl TraceResult {
    /// Primary outputs followed by garbage, the domain of inverse simulation.
    pub fn terminals(&self) -> Assignment {
        self.primary_out
            .iter()
            .chain(self.garbage_out.iter())
            .map(|(w, b)| (w.clone(), b))
            .collect()
    }
}

/// One truth-table row; each field lists bits in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthRow {
    pub input: Vec<bool>,
    pub primary: Vec<bool>,
    pub garbage: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Vec<bool>,
    pub expected: Vec<bool>,
    pub actual: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquivalenceReport {
    /// Patterns compared against the oracle.
    pub checked: usize,
    pub mismatches: usize,
    /// The first mismatches, up to the configured cap.
    pub counterexamples: Vec<Counterexample>,
}

impl EquivalenceReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches == 0
    }
}

#[derive(Debug, Clone)]
struct CompiledGate {
    gate: Arc<GateDefinition>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

/// A validated netlist lowered to slot indices for repeated evaluation.
#[derive(Debug, Clone)]
pub struct Simulator {
    wires: Vec<Wire>,
    inputs: Vec<usize>,
    constants: Vec<(usize, bool)>,
    gates: Vec<CompiledGate>,
    outputs: Vec<usize>,
    garbage: Vec<usize>,
}

impl Simulator {
    pub fn new(netlist: &Netlist) -> Result<Self, SimError> {
        let garbage_set = netlist.garbage_wires()?;
        let wires: Vec<Wire> = netlist.definitions().map(|(w, _)| w.clone()).collect();
        let slot: HashMap<&Wire, usize> = wires.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let slots = |ws: &[Wire]| ws.iter().map(|w| slot[w]).collect::<Vec<_>>();
        let n_inputs = netlist.primary_inputs.len();
        Ok(Simulator {
            inputs: (0..n_inputs).collect(),
            constants: netlist
                .constants
                .iter()
                .enumerate()
                .map(|(i, &(_, bit))| (n_inputs + i, bit))
                .collect(),
            gates: netlist
                .gates
                .iter()
                .map(|g| CompiledGate {
                    gate: Arc::clone(&g.gate),
                    inputs: slots(&g.inputs),
                    outputs: slots(&g.outputs),
                })
                .collect(),
            outputs: slots(&netlist.primary_outputs),
            garbage: slots(garbage_set.as_slice()),
            wires,
        })
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn garbage_count(&self) -> usize {
        self.garbage.len()
    }

    pub fn input_wires(&self) -> Vec<Wire> {
        self.pick(&self.inputs)
    }

    pub fn output_wires(&self) -> Vec<Wire> {
        self.pick(&self.outputs)
    }

    pub fn garbage_wires(&self) -> Vec<Wire> {
        self.pick(&self.garbage)
    }

    /// Primary inputs, then constants.
    pub fn source_wires(&self) -> Vec<Wire> {
        let mut v = self.input_wires();
        v.extend(self.constants.iter().map(|&(s, _)| self.wires[s].clone()));
        v
    }

    /// Primary outputs, then garbage.
    pub fn terminal_wires(&self) -> Vec<Wire> {
        let mut v = self.output_wires();
        v.extend(self.garbage_wires());
        v
    }

    fn pick(&self, slots: &[usize]) -> Vec<Wire> {
        slots.iter().map(|&s| self.wires[s].clone()).collect()
    }

    /// Values of every wire, in definition order, for the given primary
    /// input bits.
    pub fn eval_lines(&self, inputs: &[bool]) -> Result<Vec<bool>, SimError> {
        if inputs.len() != self.inputs.len() {
            return Err(SimError::Width {
                expected: self.inputs.len(),
                got: inputs.len(),
            });
        }
        let mut values = vec![false; self.wires.len()];
        for (&slot, &bit) in self.inputs.iter().zip(inputs) {
            values[slot] = bit;
        }
        for &(slot, bit) in &self.constants {
            values[slot] = bit;
        }
        let mut scratch = Vec::with_capacity(8);
        for g in &self.gates {
            scratch.clear();
            scratch.extend(g.inputs.iter().map(|&s| values[s]));
            let out = g.gate.forward_packed(pack(&scratch));
            for (&slot, bit) in g.outputs.iter().zip(unpack(out, g.gate.arity())) {
                values[slot] = bit;
            }
        }
        Ok(values)
    }

    /// Primary output bits for the given primary input bits.
    pub fn eval(&self, inputs: &[bool]) -> Result<Vec<bool>, SimError> {
        let lines = self.eval_lines(inputs)?;
        Ok(self.outputs.iter().map(|&s| lines[s]).collect())
    }

    /// Runs the circuit backwards from terminal bits (primary outputs then
    /// garbage) and returns source bits (primary inputs then constants).
    pub fn eval_inverse(&self, terminals: &[bool]) -> Result<Vec<bool>, SimError> {
        let expected = self.outputs.len() + self.garbage.len();
        if terminals.len() != expected {
            return Err(SimError::Width {
                expected,
                got: terminals.len(),
            });
        }
        let mut values = vec![false; self.wires.len()];
        for (&slot, &bit) in self.outputs.iter().chain(&self.garbage).zip(terminals) {
            values[slot] = bit;
        }
        let mut scratch = Vec::with_capacity(8);
        for g in self.gates.iter().rev() {
            scratch.clear();
            scratch.extend(g.outputs.iter().map(|&s| values[s]));
            let input = g.gate.inverse_packed(pack(&scratch));
            for (&slot, bit) in g.inputs.iter().zip(unpack(input, g.gate.arity())) {
                values[slot] = bit;
            }
        }
        Ok(self
            .inputs
            .iter()
            .chain(self.constants.iter().map(|(s, _)| s))
            .map(|&s| values[s])
            .collect())
    }

    pub fn run(&self, input: &Assignment) -> Result<TraceResult, SimError> {
        let wires = self.input_wires();
        if let Some((extra, _)) = input.iter().find(|(w, _)| !wires.contains(w)) {
            return Err(SimError::Unexpected(extra.clone()));
        }
        let bits = input.bits_for(&wires)?;
        let lines = self.eval_lines(&bits)?;
        let all_lines = Assignment::from_bits(&self.wires, &lines)?;
        Ok(TraceResult {
            primary_out: all_lines.restrict(&self.output_wires())?,
            garbage_out: all_lines.restrict(&self.garbage_wires())?,
            all_lines,
        })
    }

    pub fn run_inverse(&self, terminals: &Assignment) -> Result<Assignment, SimError> {
        let wires = self.terminal_wires();
        if let Some((extra, _)) = terminals.iter().find(|(w, _)| !wires.contains(w)) {
            return Err(SimError::Unexpected(extra.clone()));
        }
        let bits = terminals.bits_for(&wires)?;
        let sources = self.eval_inverse(&bits)?;
        Assignment::from_bits(&self.source_wires(), &sources)
    }

    fn check_limit(&self, limit: usize) -> Result<(), SimError> {
        if self.inputs.len() > limit {
            Err(SimError::InputLimit {
                inputs: self.inputs.len(),
                limit,
            })
        } else {
            Ok(())
        }
    }

    /// One row per input pattern, in ascending binary order.
    pub fn truth_table(&self, limit: usize) -> Result<Vec<TruthRow>, SimError> {
        self.check_limit(limit)?;
        let width = self.inputs.len();
        (0..1usize << width)
            .map(|p| {
                let input = unpack(p, width);
                let lines = self.eval_lines(&input)?;
                Ok(TruthRow {
                    primary: self.outputs.iter().map(|&s| lines[s]).collect(),
                    garbage: self.garbage.iter().map(|&s| lines[s]).collect(),
                    input,
                })
            })
            .collect()
    }

    /// Compares primary outputs against `oracle` on every pattern accepted by
    /// `domain`.
    pub fn check_equivalence<O, D>(
        &self,
        oracle: O,
        domain: D,
        limit: usize,
        cap: usize,
    ) -> Result<EquivalenceReport, SimError>
    where
        O: Fn(&[bool]) -> Vec<bool>,
        D: Fn(&[bool]) -> bool,
    {
        self.check_limit(limit)?;
        let width = self.inputs.len();
        let patterns = (0..1usize << width)
            .map(|p| unpack(p, width))
            .filter(|x| domain(x));
        self.check_patterns(patterns, oracle, cap)
    }

    /// Compares primary outputs against `oracle` on an explicit pattern set.
    pub fn check_patterns<I, O>(
        &self,
        patterns: I,
        oracle: O,
        cap: usize,
    ) -> Result<EquivalenceReport, SimError>
    where
        I: IntoIterator<Item = Vec<bool>>,
        O: Fn(&[bool]) -> Vec<bool>,
    {
        let mut report = EquivalenceReport::default();
        for input in patterns {
            let actual = self.eval(&input)?;
            let expected = oracle(&input);
            report.checked += 1;
            if actual != expected {
                report.mismatches += 1;
                if report.counterexamples.len() < cap {
                    report.counterexamples.push(Counterexample {
                        input,
                        expected,
                        actual,
                    });
                }
            }
        }
        Ok(report)
    }
}

pub fn run(netlist: &Netlist, input: &Assignment) -> Result<TraceResult, SimError> {
    Simulator::new(netlist)?.run(input)
}

pub fn run_inverse(netlist: &Netlist, terminals: &Assignment) -> Result<Assignment, SimError> {
    Simulator::new(netlist)?.run_inverse(terminals)
}

pub fn truth_table(netlist: &Netlist, limit: usize) -> Result<Vec<TruthRow>, SimError> {
    Simulator::new(netlist)?.truth_table(limit)
}

pub fn check_equivalence<O, D>(
    netlist: &Netlist,
    oracle: O,
    domain: D,
) -> Result<EquivalenceReport, SimError>
where
    O: Fn(&[bool]) -> Vec<bool>,
    D: Fn(&[bool]) -> bool,
{
    Simulator::new(netlist)?.check_equivalence(
        oracle,
        domain,
        DEFAULT_INPUT_LIMIT,
        DEFAULT_COUNTEREXAMPLE_CAP,
    )
}

/// Reads `bits` as an unsigned integer, most significant bit first.
pub fn bits_to_u64(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
}

/// `width` bits of `value`, most significant first.
pub fn u64_to_bits(value: u64, width: usize) -> Vec<bool> {
    (0..width).rev().map(|i| (value >> i) & 1 == 1).collect()
}
