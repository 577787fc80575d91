// SPDX-License-Identifier: Apache-2.0
//! Constructors for the PFAG ripple-carry adder, the two BCD digit adder
//! designs and multi-digit BCD chains.
//!
//! Buses are declared most significant bit first: `a3 a2 a1 a0 b3 b2 b1 b0
//! cin`, with outputs `s3 s2 s1 s0 c4` (ripple) or `z3 z2 z1 z0 cout` (BCD).
//!
//! A BCD digit adder is built in four parts:
//!
//! 1. a 4-bit PFAG ripple adder producing the binary sum `s3..s0` and `c4`;
//! 2. copy gates so that `s1`, `s2` and `s3` can feed both the overflow
//!    detector and the correction adder (a PFAG with `B=C=D=0` yields three
//!    copies of `s2`);
//! 3. the overflow detector `ov = c4 | s3&s2 | s3&s1`, computed by a PG
//!    producing `x1 = s2^s1`, `x2 = s2&s1` and a PFAG whose carry output is
//!    `(x1^x2)&s3 ^ x1&x2 ^ c4`. Since `x1&x2 = 0`, `x1^x2 = s1|s2`; and
//!    `c4 = 1` forces `s3 = 0` for valid digits, so the XOR acts as an OR;
//! 4. a second PFAG ripple adder adding `0 ov ov 0` to `s3..s0`, whose final
//!    carry is discarded. Two FG copies fan `ov` out to the two adder bits
//!    and `cout`.

use std::sync::Arc;

use thiserror::Error;

use crate::gate::{Builtin, GateDefinition, GateLibrary};
use crate::netlist::{GateInstance, Netlist, Wire};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("a BCD chain needs at least one digit, got {0}")]
    EmptyChain(usize),
    #[error("invalid wire prefix `{0}`")]
    InvalidPrefix(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BcdDesign {
    /// Fan-out handled by four FG gates.
    Design1,
    /// Fan-out handled by two FG gates and one HNFG gate.
    Design2,
}

impl BcdDesign {
    pub fn name(self) -> &'static str {
        match self {
            BcdDesign::Design1 => "bcd1",
            BcdDesign::Design2 => "bcd2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesignId {
    Ripple4,
    Bcd(BcdDesign),
    BcdChain(usize),
}

impl DesignId {
    pub fn build(self, opts: &BuildOptions) -> Result<Netlist, BuildError> {
        match self {
            DesignId::Ripple4 => Ok(build_ripple_adder()),
            DesignId::Bcd(d) => build_bcd_adder(d, opts),
            DesignId::BcdChain(n) => build_bcd_chain(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CarryIn {
    /// `cin` is a primary input.
    #[default]
    Primary,
    /// `cin` is tied to a constant 0.
    Constant0,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BuildOptions {
    pub carry_in: CarryIn,
    /// Prepended to every wire name.
    pub wire_prefix: String,
}

/// Incremental netlist construction with generated constant and garbage
/// names.
struct Emitter {
    netlist: Netlist,
    prefix: String,
    constants: usize,
    garbage: usize,
}

impl Emitter {
    fn new(name: &str) -> Self {
        Emitter {
            netlist: Netlist::new(name),
            prefix: String::new(),
            constants: 0,
            garbage: 0,
        }
    }

    fn wire(&self, name: &str) -> Wire {
        Wire::trusted(format!("{}{name}", self.prefix))
    }

    fn input(&mut self, name: &str) -> Wire {
        let w = self.wire(name);
        self.netlist.primary_inputs.push(w.clone());
        w
    }

    fn zero(&mut self) -> Wire {
        let w = self.wire(&format!("k{}", self.constants));
        self.constants += 1;
        self.netlist.constants.push((w.clone(), false));
        w
    }

    fn garbage(&mut self) -> Wire {
        let w = self.wire(&format!("g{}", self.garbage));
        self.garbage += 1;
        w
    }

    fn gate(&mut self, kind: Builtin, inputs: Vec<Wire>, outputs: Vec<Wire>) {
        let gate: Arc<GateDefinition> = GateLibrary::standard().builtin(kind);
        self.netlist
            .gates
            .push(GateInstance::new(gate, inputs, outputs));
    }

    fn finish(self) -> Netlist {
        debug_assert!(self.netlist.validate().is_ok());
        self.netlist
    }
}

/// Four PFAG full adders, bit 0 first. `a` and `b` are indexed by bit
/// weight. Returns the sum wires by weight and the final carry.
fn ripple4(
    em: &mut Emitter,
    a: [Wire; 4],
    b: [Wire; 4],
    cin: Wire,
    sum_names: [&str; 4],
    carry_names: [&str; 4],
) -> ([Wire; 4], Wire) {
    let mut carry = cin;
    let mut sums = Vec::with_capacity(4);
    for (i, (ai, bi)) in a.into_iter().zip(b).enumerate() {
        let d = em.zero();
        let s = em.wire(sum_names[i]);
        let next = em.wire(carry_names[i]);
        let (g0, g1) = (em.garbage(), em.garbage());
        em.gate(
            Builtin::Pfag,
            vec![ai, bi, carry, d],
            vec![g0, g1, s.clone(), next.clone()],
        );
        sums.push(s);
        carry = next;
    }
    (sums.try_into().expect("four sum bits"), carry)
}

/// Declares `{name}3 .. {name}0` and returns them indexed by weight.
fn input_bus(em: &mut Emitter, name: &str) -> [Wire; 4] {
    let mut bus: Vec<Wire> = (0..4)
        .rev()
        .map(|i| em.input(&format!("{name}{i}")))
        .collect();
    bus.reverse();
    bus.try_into().expect("four bits")
}

/// The 4-bit PFAG ripple-carry adder: 4 gates, 4 constants, 8 garbage.
pub fn build_ripple_adder() -> Netlist {
    let mut em = Emitter::new("ripple4");
    let a = input_bus(&mut em, "a");
    let b = input_bus(&mut em, "b");
    let cin = em.input("cin");
    let (s, c4) = ripple4(
        &mut em,
        a,
        b,
        cin,
        ["s0", "s1", "s2", "s3"],
        ["c1", "c2", "c3", "c4"],
    );
    em.netlist.primary_outputs = s.into_iter().rev().chain([c4]).collect();
    em.finish()
}

enum DigitCarry {
    Wire(Wire),
    Zero,
}

/// Emits one BCD digit adder. Returns `z` indexed by weight and `cout`.
fn bcd_digit(
    em: &mut Emitter,
    design: BcdDesign,
    a: [Wire; 4],
    b: [Wire; 4],
    cin: DigitCarry,
) -> ([Wire; 4], Wire) {
    let zero_cin = matches!(cin, DigitCarry::Zero);
    let cin = match cin {
        DigitCarry::Wire(w) => w,
        DigitCarry::Zero => em.zero(),
    };
    let (s, c4) = ripple4(
        em,
        a,
        b,
        cin,
        ["s0", "s1", "s2", "s3"],
        ["c1", "c2", "c3", "c4"],
    );
    let [s0, s1, s2, s3] = s;

    // s2 tripler: PFAG(s2, 0, 0, 0) = (s2, s2, s2, 0)
    let (s2_1, s2_2) = (em.wire("s2_1"), em.wire("s2_2"));
    let spare_zero = em.wire("t0");
    let tripler_inputs = vec![s2, em.zero(), em.zero(), em.zero()];
    let tripler_outputs = vec![
        s2_1.clone(),
        s2_2.clone(),
        em.garbage(),
        if zero_cin {
            spare_zero.clone()
        } else {
            em.garbage()
        },
    ];
    em.gate(Builtin::Pfag, tripler_inputs, tripler_outputs);

    let (s1_1, s1_2, s3_1, s3_2) = (
        em.wire("s1_1"),
        em.wire("s1_2"),
        em.wire("s3_1"),
        em.wire("s3_2"),
    );
    match design {
        BcdDesign::Design1 => {
            let k = em.zero();
            em.gate(Builtin::Fg, vec![s1, k], vec![s1_1.clone(), s1_2.clone()]);
            let k = em.zero();
            em.gate(Builtin::Fg, vec![s3, k], vec![s3_1.clone(), s3_2.clone()]);
        }
        BcdDesign::Design2 => {
            let (k0, k1) = (em.zero(), em.zero());
            em.gate(
                Builtin::Hnfg,
                vec![s1, k0, s3, k1],
                vec![s1_1.clone(), s1_2.clone(), s3_1.clone(), s3_2.clone()],
            );
        }
    }

    let (x1, x2) = (em.wire("x1"), em.wire("x2"));
    let k = em.zero();
    let g = em.garbage();
    em.gate(
        Builtin::Pg,
        vec![s2_1, s1_1, k],
        vec![g, x1.clone(), x2.clone()],
    );

    let ov = em.wire("ov");
    let outs = vec![em.garbage(), em.garbage(), em.garbage(), ov.clone()];
    em.gate(Builtin::Pfag, vec![x1, x2, s3_1, c4], outs);

    let (ov_1, ov_t, ov_2, cout) = (
        em.wire("ov_1"),
        em.wire("ov_t"),
        em.wire("ov_2"),
        em.wire("cout"),
    );
    let k = em.zero();
    em.gate(Builtin::Fg, vec![ov, k], vec![ov_1.clone(), ov_t.clone()]);
    let k = em.zero();
    em.gate(Builtin::Fg, vec![ov_t, k], vec![ov_2.clone(), cout.clone()]);

    // correction: s + 0110 when ov, carry-in 0
    let (z0, z1, z2, z3) = (em.wire("z0"), em.wire("z1"), em.wire("z2"), em.wire("z3"));
    let (c5, c6, c7) = (em.wire("c5"), em.wire("c6"), em.wire("c7"));

    let (kb, kc) = (em.zero(), em.zero());
    let kd = if zero_cin { spare_zero } else { em.zero() };
    let outs = vec![em.garbage(), em.garbage(), z0.clone(), c5.clone()];
    em.gate(Builtin::Pfag, vec![s0, kb, kc, kd], outs);

    let kd = em.zero();
    let outs = vec![em.garbage(), em.garbage(), z1.clone(), c6.clone()];
    em.gate(Builtin::Pfag, vec![s1_2, ov_1, c5, kd], outs);

    let kd = em.zero();
    let outs = vec![em.garbage(), em.garbage(), z2.clone(), c7.clone()];
    em.gate(Builtin::Pfag, vec![s2_2, ov_2, c6, kd], outs);

    let (kb, kd) = (em.zero(), em.zero());
    let outs = vec![em.garbage(), em.garbage(), z3.clone(), em.garbage()];
    em.gate(Builtin::Pfag, vec![s3_2, kb, c7, kd], outs);

    ([z0, z1, z2, z3], cout)
}

/// One BCD digit adder with the Table I gate multiset and 19 constants.
pub fn build_bcd_adder(design: BcdDesign, opts: &BuildOptions) -> Result<Netlist, BuildError> {
    if !opts.wire_prefix.is_empty() && Wire::new(format!("{}x", opts.wire_prefix)).is_err() {
        return Err(BuildError::InvalidPrefix(opts.wire_prefix.clone()));
    }
    let mut em = Emitter::new(design.name());
    em.prefix = opts.wire_prefix.clone();
    let a = input_bus(&mut em, "a");
    let b = input_bus(&mut em, "b");
    let cin = match opts.carry_in {
        CarryIn::Primary => DigitCarry::Wire(em.input("cin")),
        CarryIn::Constant0 => DigitCarry::Zero,
    };
    let (z, cout) = bcd_digit(&mut em, design, a, b, cin);
    em.netlist.primary_outputs = z.into_iter().rev().chain([cout]).collect();
    Ok(em.finish())
}

/// `digits` Design 2 digit adders rippling the decimal carry. Stage `i`
/// (least significant first) uses the wire prefix `d{i}_`; operand digits
/// are declared most significant first, then the global `cin`.
pub fn build_bcd_chain(digits: usize) -> Result<Netlist, BuildError> {
    if digits < 1 {
        return Err(BuildError::EmptyChain(digits));
    }
    let mut em = Emitter::new(&format!("bcd_chain_{digits}"));
    let operand = |em: &mut Emitter, name: &str| -> Vec<[Wire; 4]> {
        let mut buses: Vec<[Wire; 4]> = (0..digits)
            .rev()
            .map(|i| {
                em.prefix = format!("d{i}_");
                input_bus(em, name)
            })
            .collect();
        buses.reverse();
        buses
    };
    let a = operand(&mut em, "a");
    let b = operand(&mut em, "b");
    em.prefix.clear();
    let mut carry = em.input("cin");

    let mut sums = Vec::with_capacity(digits);
    for (i, (ai, bi)) in a.into_iter().zip(b).enumerate() {
        em.prefix = format!("d{i}_");
        em.constants = 0;
        em.garbage = 0;
        let (z, cout) = bcd_digit(&mut em, BcdDesign::Design2, ai, bi, DigitCarry::Wire(carry));
        sums.push(z);
        carry = cout;
    }
    em.netlist.primary_outputs = sums
        .into_iter()
        .rev()
        .flat_map(|z| z.into_iter().rev())
        .chain([carry])
        .collect();
    Ok(em.finish())
}
