// SPDX-License-Identifier: Apache-2.0
//! Reversible gate definitions.
//!
//! A gate is a bijection on `{0,1}^k`. Built-in gates are generated from their
//! algebraic output expressions; custom gates are given as explicit tables and
//! rejected unless every output pattern occurs exactly once.
//!
//! Patterns are packed with line 0 as the most significant bit.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

/// Largest arity accepted for user-defined gates.
pub const MAX_CUSTOM_ARITY: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GateError {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate `{gate}` has arity {expected}, got {got} bits")]
    Arity {
        gate: String,
        expected: usize,
        got: usize,
    },
    #[error("malformed truth table: {0}")]
    Shape(String),
    #[error("truth table for `{0}` is not a bijection")]
    NotBijective(String),
    #[error("gate `{0}` is already registered")]
    DuplicateName(String),
    #[error("invalid gate name `{0}`")]
    InvalidName(String),
}

/// Counts of two-input EXOR (alpha), two-input AND (beta) and NOT (delta)
/// calculations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LogicCost {
    #[serde(rename = "xor")]
    pub alpha: u64,
    #[serde(rename = "and")]
    pub beta: u64,
    #[serde(rename = "not")]
    pub delta: u64,
}

impl LogicCost {
    pub const ZERO: LogicCost = LogicCost::new(0, 0, 0);

    pub const fn new(alpha: u64, beta: u64, delta: u64) -> Self {
        LogicCost { alpha, beta, delta }
    }

    pub fn scale(self, factor: u64) -> Self {
        LogicCost::new(self.alpha * factor, self.beta * factor, self.delta * factor)
    }
}

impl Add for LogicCost {
    type Output = LogicCost;

    fn add(self, rhs: LogicCost) -> LogicCost {
        LogicCost::new(
            self.alpha + rhs.alpha,
            self.beta + rhs.beta,
            self.delta + rhs.delta,
        )
    }
}

impl Sum for LogicCost {
    fn sum<I: Iterator<Item = LogicCost>>(iter: I) -> Self {
        iter.fold(LogicCost::ZERO, Add::add)
    }
}

/// Renders in the `56α+21β+6δ` form, omitting zero terms.
impl fmt::Display for LogicCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = [(self.alpha, 'α'), (self.beta, 'β'), (self.delta, 'δ')]
            .into_iter()
            .filter(|(n, _)| *n != 0)
            .map(|(n, sym)| format!("{n}{sym}"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// A quantum cost that may be unknown. Unknown absorbs under addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct QuantumCost(Option<u64>);

impl QuantumCost {
    pub const UNKNOWN: QuantumCost = QuantumCost(None);
    pub const ZERO: QuantumCost = QuantumCost(Some(0));

    pub const fn known(cost: u64) -> Self {
        QuantumCost(Some(cost))
    }

    pub fn value(self) -> Option<u64> {
        self.0
    }

    pub fn is_known(self) -> bool {
        self.0.is_some()
    }
}

impl From<Option<u64>> for QuantumCost {
    fn from(cost: Option<u64>) -> Self {
        QuantumCost(cost)
    }
}

impl Add for QuantumCost {
    type Output = QuantumCost;

    fn add(self, rhs: QuantumCost) -> QuantumCost {
        QuantumCost(self.0.zip(rhs.0).map(|(a, b)| a + b))
    }
}

impl Sum for QuantumCost {
    fn sum<I: Iterator<Item = QuantumCost>>(iter: I) -> Self {
        iter.fold(QuantumCost::ZERO, Add::add)
    }
}

impl fmt::Display for QuantumCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(cost) => write!(f, "{cost}"),
            None => f.write_str("Unknown"),
        }
    }
}

/// The built-in gate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Feynman gate.
    Fg,
    /// Peres gate.
    Pg,
    /// Toffoli gate.
    Tg,
    /// Fredkin gate.
    Frg,
    /// Full adder gate with quantum realization cost 8.
    Pfag,
    /// HNG full adder gate.
    Hng,
    /// Two Feynman gates side by side.
    Hnfg,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::Fg,
        Builtin::Pg,
        Builtin::Tg,
        Builtin::Frg,
        Builtin::Pfag,
        Builtin::Hng,
        Builtin::Hnfg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Fg => "FG",
            Builtin::Pg => "PG",
            Builtin::Tg => "TG",
            Builtin::Frg => "FRG",
            Builtin::Pfag => "PFAG",
            Builtin::Hng => "HNG",
            Builtin::Hnfg => "HNFG",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Fg => 2,
            Builtin::Pg | Builtin::Tg | Builtin::Frg => 3,
            Builtin::Pfag | Builtin::Hng | Builtin::Hnfg => 4,
        }
    }

    pub fn quantum_cost(self) -> QuantumCost {
        match self {
            Builtin::Fg => QuantumCost::known(1),
            Builtin::Pg => QuantumCost::known(4),
            Builtin::Tg | Builtin::Frg => QuantumCost::known(5),
            Builtin::Pfag => QuantumCost::known(8),
            Builtin::Hnfg => QuantumCost::known(2),
            Builtin::Hng => QuantumCost::UNKNOWN,
        }
    }

    /// Operation counts of the canonical output expressions. For PFAG the
    /// `A⊕B` term is shared between Q and S while R recomputes it.
    pub fn logic_cost(self) -> LogicCost {
        match self {
            Builtin::Fg => LogicCost::new(1, 0, 0),
            Builtin::Pg => LogicCost::new(2, 1, 0),
            Builtin::Tg => LogicCost::new(1, 1, 0),
            Builtin::Frg => LogicCost::new(2, 4, 2),
            Builtin::Pfag => LogicCost::new(5, 2, 0),
            Builtin::Hng => LogicCost::new(4, 2, 0),
            Builtin::Hnfg => LogicCost::new(2, 0, 0),
        }
    }

    /// Evaluates the algebraic definition. `x` must have `self.arity()` bits.
    pub fn eval(self, x: &[bool]) -> Vec<bool> {
        match self {
            Builtin::Fg => vec![x[0], x[0] ^ x[1]],
            Builtin::Pg => vec![x[0], x[0] ^ x[1], (x[0] & x[1]) ^ x[2]],
            Builtin::Tg => vec![x[0], x[1], (x[0] & x[1]) ^ x[2]],
            Builtin::Frg => {
                let (a, b, c) = (x[0], x[1], x[2]);
                vec![a, (!a & b) ^ (a & c), (!a & c) ^ (a & b)]
            }
            Builtin::Pfag => {
                let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
                let p = a ^ b;
                vec![a, p, p ^ c, (p & c) ^ (a & b) ^ d]
            }
            Builtin::Hng => {
                let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
                let p = a ^ b;
                vec![a, b, p ^ c, (p & c) ^ (a & b) ^ d]
            }
            Builtin::Hnfg => vec![x[0], x[0] ^ x[1], x[2], x[2] ^ x[3]],
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn pack(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

pub(crate) fn unpack(pattern: usize, width: usize) -> Vec<bool> {
    (0..width)
        .map(|i| (pattern >> (width - 1 - i)) & 1 == 1)
        .collect()
}

/// Checks that `table` is a permutation of `{0,1}^k`.
///
/// The table must have exactly `2^k` rows of width `k` with `k >= 1`.
pub fn check_bijective(table: &[Vec<bool>]) -> Result<bool, GateError> {
    let arity = table_arity(table)?;
    let mut seen = vec![false; table.len()];
    for row in table {
        let p = pack(row);
        if seen[p] {
            return Ok(false);
        }
        seen[p] = true;
    }
    debug_assert!(arity >= 1);
    Ok(true)
}

fn table_arity(table: &[Vec<bool>]) -> Result<usize, GateError> {
    let rows = table.len();
    if rows < 2 || !rows.is_power_of_two() {
        return Err(GateError::Shape(format!(
            "expected 2^k rows with k >= 1, got {rows}"
        )));
    }
    let arity = rows.trailing_zeros() as usize;
    if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != arity) {
        return Err(GateError::Shape(format!(
            "row {i} has width {}, expected {arity}",
            row.len()
        )));
    }
    Ok(arity)
}

/// A named k-line reversible gate with cost metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDefinition {
    name: String,
    arity: usize,
    forward: Vec<u16>,
    inverse: Vec<u16>,
    quantum_cost: QuantumCost,
    logic_cost: LogicCost,
}

impl GateDefinition {
    pub fn builtin(kind: Builtin) -> GateDefinition {
        let arity = kind.arity();
        let forward: Vec<u16> = (0..1usize << arity)
            .map(|p| pack(&kind.eval(&unpack(p, arity))) as u16)
            .collect();
        let inverse = invert(&forward).expect("built-in gates are bijections");
        GateDefinition {
            name: kind.name().to_string(),
            arity,
            forward,
            inverse,
            quantum_cost: kind.quantum_cost(),
            logic_cost: kind.logic_cost(),
        }
    }

    /// Looks up a built-in gate by its netlist name.
    pub fn builtin_by_name(name: &str) -> Result<GateDefinition, GateError> {
        Builtin::from_name(name)
            .map(GateDefinition::builtin)
            .ok_or_else(|| GateError::UnknownGate(name.to_string()))
    }

    /// Builds a gate from an explicit truth table, row `i` being the output
    /// for input pattern `i` (line 0 most significant).
    pub fn from_table(
        name: &str,
        table: &[Vec<bool>],
        quantum_cost: Option<u64>,
        logic_cost: LogicCost,
    ) -> Result<GateDefinition, GateError> {
        if !is_identifier(name) {
            return Err(GateError::InvalidName(name.to_string()));
        }
        let arity = table_arity(table)?;
        if arity > MAX_CUSTOM_ARITY {
            return Err(GateError::Shape(format!(
                "arity {arity} exceeds the maximum of {MAX_CUSTOM_ARITY}"
            )));
        }
        let forward: Vec<u16> = table.iter().map(|r| pack(r) as u16).collect();
        let inverse = invert(&forward).ok_or_else(|| GateError::NotBijective(name.to_string()))?;
        Ok(GateDefinition {
            name: name.to_string(),
            arity,
            forward,
            inverse,
            quantum_cost: quantum_cost.into(),
            logic_cost,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn quantum_cost(&self) -> QuantumCost {
        self.quantum_cost
    }

    pub fn logic_cost(&self) -> LogicCost {
        self.logic_cost
    }

    /// Full truth table in input-pattern order.
    pub fn table(&self) -> Vec<Vec<bool>> {
        self.forward
            .iter()
            .map(|&p| unpack(p as usize, self.arity))
            .collect()
    }

    pub fn eval(&self, input: &[bool]) -> Result<Vec<bool>, GateError> {
        self.check_width(input.len())?;
        Ok(unpack(self.forward[pack(input)] as usize, self.arity))
    }

    pub fn inverse_eval(&self, output: &[bool]) -> Result<Vec<bool>, GateError> {
        self.check_width(output.len())?;
        Ok(unpack(self.inverse[pack(output)] as usize, self.arity))
    }

    pub(crate) fn forward_packed(&self, pattern: usize) -> usize {
        self.forward[pattern] as usize
    }

    pub(crate) fn inverse_packed(&self, pattern: usize) -> usize {
        self.inverse[pattern] as usize
    }

    fn check_width(&self, got: usize) -> Result<(), GateError> {
        if got == self.arity {
            Ok(())
        } else {
            Err(GateError::Arity {
                gate: self.name.clone(),
                expected: self.arity,
                got,
            })
        }
    }
}

fn invert(forward: &[u16]) -> Option<Vec<u16>> {
    let mut inverse = vec![u16::MAX; forward.len()];
    for (input, &output) in forward.iter().enumerate() {
        let slot = &mut inverse[output as usize];
        if *slot != u16::MAX {
            return None;
        }
        *slot = input as u16;
    }
    Some(inverse)
}

/// Applies `gate` to `input`.
pub fn eval_gate(gate: &GateDefinition, input: &[bool]) -> Result<Vec<bool>, GateError> {
    gate.eval(input)
}

/// Returns the unique input that `gate` maps to `output`.
pub fn inverse_eval_gate(gate: &GateDefinition, output: &[bool]) -> Result<Vec<bool>, GateError> {
    gate.inverse_eval(output)
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Registry of gates usable in netlists, keyed by case-sensitive name.
///
/// Registration is a setup step; lookups hand out shared immutable
/// definitions.
#[derive(Debug, Clone, Default)]
pub struct GateLibrary {
    gates: HashMap<String, Arc<GateDefinition>>,
}

impl GateLibrary {
    /// An empty library, without the built-ins.
    pub fn empty() -> Self {
        GateLibrary::default()
    }

    /// A library holding the seven built-in gates.
    pub fn with_builtins() -> Self {
        let gates = Builtin::ALL
            .into_iter()
            .map(|b| (b.name().to_string(), Arc::new(GateDefinition::builtin(b))))
            .collect();
        GateLibrary { gates }
    }

    /// Shared process-wide copy of [`GateLibrary::with_builtins`].
    pub fn standard() -> &'static GateLibrary {
        static STANDARD: OnceLock<GateLibrary> = OnceLock::new();
        STANDARD.get_or_init(GateLibrary::with_builtins)
    }

    pub fn get(&self, name: &str) -> Result<Arc<GateDefinition>, GateError> {
        self.gates
            .get(name)
            .cloned()
            .ok_or_else(|| GateError::UnknownGate(name.to_string()))
    }

    pub fn builtin(&self, kind: Builtin) -> Arc<GateDefinition> {
        self.get(kind.name())
            .unwrap_or_else(|_| Arc::new(GateDefinition::builtin(kind)))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.gates.contains_key(name)
    }

    /// Sorted gate names.
    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.gates.keys().map(String::as_str).collect();
        names.sort_unstable();
        names
    }

    /// Registers an already-built definition.
    pub fn register(&mut self, gate: GateDefinition) -> Result<Arc<GateDefinition>, GateError> {
        if self.gates.contains_key(gate.name()) {
            return Err(GateError::DuplicateName(gate.name().to_string()));
        }
        let gate = Arc::new(gate);
        self.gates
            .insert(gate.name().to_string(), Arc::clone(&gate));
        Ok(gate)
    }

    /// Builds a gate from a truth table and registers it. A missing quantum
    /// cost makes every circuit using the gate report an unknown cost.
    pub fn define_custom_gate(
        &mut self,
        name: &str,
        table: &[Vec<bool>],
        quantum_cost: Option<u64>,
        logic_cost: LogicCost,
    ) -> Result<Arc<GateDefinition>, GateError> {
        if self.gates.contains_key(name) {
            return Err(GateError::DuplicateName(name.to_string()));
        }
        let gate = GateDefinition::from_table(name, table, quantum_cost, logic_cost)?;
        self.register(gate)
    }
}
