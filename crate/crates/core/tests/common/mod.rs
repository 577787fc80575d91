// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use revlogic::{Builtin, GateInstance, GateLibrary, Netlist, Wire};

pub fn w(name: &str) -> Wire {
    Wire::new(name).unwrap()
}

/// A random netlist that is valid by construction: every gate reads
/// still-unconsumed wires and defines fresh ones.
pub fn random_netlist<R: Rng>(rng: &mut R, max_gates: usize) -> Netlist {
    let lib = GateLibrary::standard();
    let mut n = Netlist::new(format!("rand{}", rng.gen::<u16>()));
    let mut pool: Vec<Wire> = Vec::new();
    for i in 0..rng.gen_range(0..=6) {
        let wire = w(&format!("i{i}"));
        n.primary_inputs.push(wire.clone());
        pool.push(wire);
    }
    for i in 0..rng.gen_range(0..=4) {
        let wire = w(&format!("k{i}"));
        n.constants.push((wire.clone(), rng.gen()));
        pool.push(wire);
    }
    let mut fresh = 0;
    for _ in 0..rng.gen_range(0..=max_gates) {
        let candidates: Vec<Builtin> = Builtin::ALL
            .into_iter()
            .filter(|b| b.arity() <= pool.len())
            .collect();
        let Some(&kind) = candidates.choose(rng) else {
            break;
        };
        pool.shuffle(rng);
        let inputs: Vec<Wire> = pool.split_off(pool.len() - kind.arity());
        let outputs: Vec<Wire> = (0..kind.arity())
            .map(|_| {
                fresh += 1;
                w(&format!("w{fresh}"))
            })
            .collect();
        pool.extend(outputs.iter().cloned());
        n.gates
            .push(GateInstance::new(lib.builtin(kind), inputs, outputs));
    }
    pool.shuffle(rng);
    let keep = rng.gen_range(0..=pool.len());
    n.primary_outputs = pool[..keep].to_vec();
    n
}

/// Same circuit with every constant turned into a primary input.
pub fn free_constants(n: &Netlist) -> Netlist {
    let mut free = n.clone();
    free.primary_inputs
        .extend(n.constants.iter().map(|(w, _)| w.clone()));
    free.constants.clear();
    free
}

fn rename(n: &Netlist, prefix: &str) -> Netlist {
    let r = |x: &Wire| w(&format!("{prefix}{x}"));
    Netlist {
        name: n.name.clone(),
        primary_inputs: n.primary_inputs.iter().map(r).collect(),
        constants: n.constants.iter().map(|(x, b)| (r(x), *b)).collect(),
        gates: n
            .gates
            .iter()
            .map(|g| {
                GateInstance::new(
                    g.gate.clone(),
                    g.inputs.iter().map(r).collect(),
                    g.outputs.iter().map(r).collect(),
                )
            })
            .collect(),
        primary_outputs: n.primary_outputs.iter().map(r).collect(),
    }
}

/// Two circuits side by side, wires renamed apart.
pub fn disjoint_union(a: &Netlist, b: &Netlist) -> Netlist {
    let (a, b) = (rename(a, "l_"), rename(b, "r_"));
    Netlist {
        name: "union".into(),
        primary_inputs: [a.primary_inputs, b.primary_inputs].concat(),
        constants: [a.constants, b.constants].concat(),
        gates: [a.gates, b.gates].concat(),
        primary_outputs: [a.primary_outputs, b.primary_outputs].concat(),
    }
}

/// A random gate order that still respects define-before-use.
pub fn random_topological_order<R: Rng>(rng: &mut R, n: &Netlist) -> Netlist {
    let producer: HashMap<&Wire, usize> = n
        .gates
        .iter()
        .enumerate()
        .flat_map(|(i, g)| g.outputs.iter().map(move |o| (o, i)))
        .collect();
    let deps: Vec<Vec<usize>> = n
        .gates
        .iter()
        .map(|g| {
            g.inputs
                .iter()
                .filter_map(|i| producer.get(i).copied())
                .collect()
        })
        .collect();
    let mut placed = vec![false; n.gates.len()];
    let mut order = Vec::with_capacity(n.gates.len());
    while order.len() < n.gates.len() {
        let ready: Vec<usize> = (0..n.gates.len())
            .filter(|&i| !placed[i] && deps[i].iter().all(|&d| placed[d]))
            .collect();
        let &pick = ready.choose(rng).expect("acyclic");
        placed[pick] = true;
        order.push(pick);
    }
    let mut out = n.clone();
    out.gates = order.into_iter().map(|i| n.gates[i].clone()).collect();
    out
}

/// BCD digit-adder input bits: `a3..a0 b3..b0 cin`.
pub fn bcd_input(a: u64, b: u64, cin: bool) -> Vec<bool> {
    let mut v: Vec<bool> = (0..4).rev().map(|i| (a >> i) & 1 == 1).collect();
    v.extend((0..4).rev().map(|i| (b >> i) & 1 == 1));
    v.push(cin);
    v
}

pub fn to_u64(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| acc * 2 + u64::from(b))
}

/// Chain input bits for `digits`-digit operands, most significant digit
/// first, then `cin`.
pub fn chain_input(digits: u32, a: u64, b: u64, cin: bool) -> Vec<bool> {
    let mut v = Vec::new();
    for operand in [a, b] {
        for i in (0..digits).rev() {
            let d = (operand / 10u64.pow(i)) % 10;
            v.extend((0..4).rev().map(|k| (d >> k) & 1 == 1));
        }
    }
    v.push(cin);
    v
}

/// Reads chain outputs back as a decimal number including the final carry.
pub fn chain_value(digits: u32, out: &[bool]) -> u64 {
    let mut value = u64::from(out[4 * digits as usize]);
    for chunk in out[..4 * digits as usize].chunks(4) {
        value = value * 10 + to_u64(chunk);
    }
    value
}
