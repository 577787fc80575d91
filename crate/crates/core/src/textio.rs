// SPDX-License-Identifier: Apache-2.0
//! Line-oriented netlist text format.
//!
//! ```text
//! # comment
//! circuit NAME
//! inputs W...
//! const W BIT
//! gate GATENAME IN... -> OUT...
//! outputs W...
//! end
//! ```
//!
//! Statements other than `circuit` (first) and `end` (last) may appear in any
//! order, but wires must be defined before they are used, so a gate can only
//! read wires from earlier lines. `inputs` and `outputs` appear once each.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::gate::{is_identifier, GateLibrary};
use crate::netlist::{GateInstance, Netlist, NetlistError, Wire};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("invalid bit `{0}`, expected 0 or 1")]
    InvalidBit(String),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error(
        "arity mismatch: {gate} takes {arity} lines, got {inputs} inputs and {outputs} outputs"
    )]
    ArityMismatch {
        gate: String,
        arity: usize,
        inputs: usize,
        outputs: usize,
    },
    #[error("redefinition of `{wire}` (first defined on line {first_line})")]
    Redefinition { wire: String, first_line: usize },
    #[error("use before definition of `{wire}` (defined on line {defined_line})")]
    UseBeforeDefinition { wire: String, defined_line: usize },
    #[error("undefined wire `{0}`")]
    Undefined(String),
    #[error("fan-out at `{wire}` (already consumed on line {first_line})")]
    FanOut { wire: String, first_line: usize },
}

impl ParseErrorKind {
    /// Whether this is a circuit-rule violation rather than a malformed
    /// document.
    pub fn is_structural(&self) -> bool {
        !matches!(
            self,
            ParseErrorKind::Syntax(_)
                | ParseErrorKind::InvalidIdentifier(_)
                | ParseErrorKind::InvalidBit(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}{}: {kind}", token.map(|t| format!(", token {t}")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 0-based token index within the line.
    pub token: Option<usize>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseErrors(pub Vec<ParseError>);

impl ParseErrors {
    pub fn is_structural(&self) -> bool {
        self.0.iter().all(|e| e.kind.is_structural())
    }
}

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseErrors {}

struct Token<'a> {
    text: &'a str,
    index: usize,
}

struct Parser<'a> {
    lib: &'a GateLibrary,
    netlist: Netlist,
    errors: Vec<ParseError>,
    defined: HashMap<String, usize>,
    consumed: HashMap<String, usize>,
    seen_inputs: bool,
    seen_outputs: bool,
    seen_end: bool,
    /// Wires read before any definition, checked once the whole file is read.
    pending: Vec<(String, usize, usize)>,
}

impl<'a> Parser<'a> {
    fn error(&mut self, line: usize, token: Option<usize>, kind: ParseErrorKind) {
        self.errors.push(ParseError { line, token, kind });
    }

    fn wire(&mut self, line: usize, tok: &Token<'_>) -> Option<Wire> {
        match Wire::new(tok.text) {
            Ok(w) => Some(w),
            Err(_) => {
                self.error(
                    line,
                    Some(tok.index),
                    ParseErrorKind::InvalidIdentifier(tok.text.to_string()),
                );
                None
            }
        }
    }

    fn define(&mut self, line: usize, tok: &Token<'_>) -> Option<Wire> {
        let w = self.wire(line, tok)?;
        if let Some(&first_line) = self.defined.get(w.as_str()) {
            self.error(
                line,
                Some(tok.index),
                ParseErrorKind::Redefinition {
                    wire: w.to_string(),
                    first_line,
                },
            );
        } else {
            self.defined.insert(w.to_string(), line);
        }
        Some(w)
    }

    fn consume(&mut self, line: usize, tok: &Token<'_>) -> Option<Wire> {
        let w = self.wire(line, tok)?;
        if !self.defined.contains_key(w.as_str()) {
            self.pending.push((w.to_string(), line, tok.index));
        }
        if let Some(&first_line) = self.consumed.get(w.as_str()) {
            self.error(
                line,
                Some(tok.index),
                ParseErrorKind::FanOut {
                    wire: w.to_string(),
                    first_line,
                },
            );
        } else {
            self.consumed.insert(w.to_string(), line);
        }
        Some(w)
    }

    fn statement(&mut self, line: usize, tokens: &[Token<'_>]) {
        let keyword = tokens[0].text;
        if self.seen_end {
            self.error(line, Some(0), syntax("content after `end`"));
            return;
        }
        if self.netlist.name.is_empty() && keyword != "circuit" {
            self.error(line, Some(0), syntax("expected `circuit NAME` first"));
            // keep going so later diagnostics still surface
            self.netlist.name = "_".into();
        }
        if self.seen_outputs && keyword != "end" {
            self.error(line, Some(0), syntax("only `end` may follow `outputs`"));
            return;
        }
        match keyword {
            "circuit" => {
                if self.netlist.name.is_empty() {
                    match tokens {
                        [_, name] if is_identifier(name.text) => {
                            self.netlist.name = name.text.to_string()
                        }
                        [_, name] => self.error(
                            line,
                            Some(1),
                            ParseErrorKind::InvalidIdentifier(name.text.to_string()),
                        ),
                        _ => self.error(line, None, syntax("expected `circuit NAME`")),
                    }
                    if self.netlist.name.is_empty() {
                        self.netlist.name = "_".into();
                    }
                } else {
                    self.error(line, Some(0), syntax("duplicate `circuit` line"));
                }
            }
            "inputs" => {
                if std::mem::replace(&mut self.seen_inputs, true) {
                    self.error(line, Some(0), syntax("duplicate `inputs` line"));
                    return;
                }
                for tok in &tokens[1..] {
                    if let Some(w) = self.define(line, tok) {
                        self.netlist.primary_inputs.push(w);
                    }
                }
            }
            "const" => match tokens {
                [_, wire, bit] => {
                    let value = match bit.text {
                        "0" => Some(false),
                        "1" => Some(true),
                        other => {
                            self.error(
                                line,
                                Some(2),
                                ParseErrorKind::InvalidBit(other.to_string()),
                            );
                            None
                        }
                    };
                    let w = self.define(line, wire);
                    if let (Some(w), Some(value)) = (w, value) {
                        self.netlist.constants.push((w, value));
                    }
                }
                _ => self.error(line, None, syntax("expected `const WIRE BIT`")),
            },
            "gate" => self.gate(line, tokens),
            "outputs" => {
                self.seen_outputs = true;
                for tok in &tokens[1..] {
                    if let Some(w) = self.consume(line, tok) {
                        self.netlist.primary_outputs.push(w);
                    }
                }
            }
            "end" => {
                if tokens.len() > 1 {
                    self.error(line, Some(1), syntax("unexpected token after `end`"));
                }
                self.seen_end = true;
            }
            other => self.error(
                line,
                Some(0),
                syntax(&format!("unknown statement `{other}`")),
            ),
        }
    }

    fn gate(&mut self, line: usize, tokens: &[Token<'_>]) {
        let Some(arrow) = tokens.iter().position(|t| t.text == "->") else {
            self.error(line, None, syntax("expected `gate NAME IN... -> OUT...`"));
            return;
        };
        if arrow < 2 {
            self.error(line, Some(arrow), syntax("missing gate name"));
            return;
        }
        let name = &tokens[1];
        let ins = &tokens[2..arrow];
        let outs = &tokens[arrow + 1..];
        let gate = match self.lib.get(name.text) {
            Ok(g) => Some(g),
            Err(_) => {
                self.error(
                    line,
                    Some(1),
                    ParseErrorKind::UnknownGate(name.text.to_string()),
                );
                None
            }
        };
        if let Some(g) = &gate {
            if ins.len() != g.arity() || outs.len() != g.arity() {
                self.error(
                    line,
                    Some(1),
                    ParseErrorKind::ArityMismatch {
                        gate: name.text.to_string(),
                        arity: g.arity(),
                        inputs: ins.len(),
                        outputs: outs.len(),
                    },
                );
            }
        }
        // inputs are consumed before outputs are defined, so `a -> a` is a
        // redefinition rather than a self-loop
        let inputs: Vec<Option<Wire>> = ins.iter().map(|t| self.consume(line, t)).collect();
        let outputs: Vec<Option<Wire>> = outs.iter().map(|t| self.define(line, t)).collect();
        if let Some(gate) = gate {
            let inputs: Option<Vec<Wire>> = inputs.into_iter().collect();
            let outputs: Option<Vec<Wire>> = outputs.into_iter().collect();
            if let (Some(inputs), Some(outputs)) = (inputs, outputs) {
                self.netlist
                    .gates
                    .push(GateInstance::new(gate, inputs, outputs));
            }
        }
    }

    fn finish(mut self, last_line: usize) -> Result<Netlist, ParseErrors> {
        for (wire, line, token) in std::mem::take(&mut self.pending) {
            let kind = match self.defined.get(&wire) {
                Some(&defined_line) => ParseErrorKind::UseBeforeDefinition { wire, defined_line },
                None => ParseErrorKind::Undefined(wire),
            };
            self.error(line, Some(token), kind);
        }
        if self.netlist.name.is_empty() {
            self.error(1, None, syntax("missing `circuit NAME` line"));
        }
        if !self.seen_outputs {
            self.error(last_line, None, syntax("missing `outputs` line"));
        }
        if !self.seen_end {
            self.error(last_line, None, syntax("missing `end` line"));
        }
        if !self.errors.is_empty() {
            self.errors.sort_by_key(|e| (e.line, e.token));
            return Err(ParseErrors(self.errors));
        }
        // anything the line-level checks cannot see
        let report = self.netlist.validate();
        if !report.is_ok() {
            let errors = report
                .violations
                .into_iter()
                .map(|v| ParseError {
                    line: last_line,
                    token: None,
                    kind: syntax(&v.to_string()),
                })
                .collect();
            return Err(ParseErrors(errors));
        }
        Ok(self.netlist)
    }
}

fn syntax(msg: &str) -> ParseErrorKind {
    ParseErrorKind::Syntax(msg.to_string())
}

/// Parses a netlist document, resolving gate names against `lib`.
pub fn parse_netlist(text: &str, lib: &GateLibrary) -> Result<Netlist, ParseErrors> {
    let mut parser = Parser {
        lib,
        netlist: Netlist::default(),
        errors: Vec::new(),
        defined: HashMap::new(),
        consumed: HashMap::new(),
        seen_inputs: false,
        seen_outputs: false,
        seen_end: false,
        pending: Vec::new(),
    };
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<Token<'_>> = content
            .split_whitespace()
            .enumerate()
            .map(|(index, text)| Token { text, index })
            .collect();
        if !tokens.is_empty() {
            parser.statement(line, &tokens);
        }
    }
    parser.finish(last_line)
}

/// Canonical text form of a valid netlist.
pub fn serialize_netlist(netlist: &Netlist) -> Result<String, NetlistError> {
    netlist.ensure_valid()?;
    if !is_identifier(&netlist.name) {
        return Err(NetlistError::InvalidWireName(netlist.name.clone()));
    }
    let join = |ws: &[Wire]| -> String { ws.iter().map(|w| format!(" {w}")).collect() };
    let mut out = String::new();
    let _ = writeln!(out, "circuit {}", netlist.name);
    let _ = writeln!(out, "inputs{}", join(&netlist.primary_inputs));
    for (w, bit) in &netlist.constants {
        let _ = writeln!(out, "const {w} {}", u8::from(*bit));
    }
    for g in &netlist.gates {
        let _ = writeln!(
            out,
            "gate {}{} ->{}",
            g.gate.name(),
            join(&g.inputs),
            join(&g.outputs)
        );
    }
    let _ = writeln!(out, "outputs{}", join(&netlist.primary_outputs));
    out.push_str("end\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Netlist, ParseErrors> {
        parse_netlist(text, GateLibrary::standard())
    }

    const MINIMAL: &str = "circuit c\ninputs a b\ngate FG a b -> p q\noutputs p q\nend\n";

    #[test]
    fn minimal_document() {
        let n = parse(MINIMAL).unwrap();
        assert_eq!(n.name, "c");
        assert_eq!(n.gates.len(), 1);
        assert_eq!(serialize_netlist(&n).unwrap(), MINIMAL);
    }

    #[test]
    fn comments_and_whitespace_are_canonicalized() {
        let doc = "# header\n  circuit   c # trailing\n\ninputs a  b\n\tgate FG a b -> p q\noutputs p q\nend";
        let n = parse(doc).unwrap();
        assert_eq!(serialize_netlist(&n).unwrap(), MINIMAL);
    }

    fn single_error(doc: &str) -> ParseError {
        let errs = parse(doc).unwrap_err().0;
        assert_eq!(errs.len(), 1, "{errs:?}");
        errs.into_iter().next().unwrap()
    }

    #[test]
    fn fan_out_is_positioned() {
        let e = single_error("circuit c\ninputs a b\ngate FG a a -> p q\noutputs p q\nend\n");
        assert_eq!((e.line, e.token), (3, Some(3)));
        assert!(
            matches!(e.kind, ParseErrorKind::FanOut { ref wire, first_line: 3 } if wire == "a")
        );
        assert!(e.to_string().starts_with("line 3, token 3: fan-out"));
    }

    #[test]
    fn use_before_definition() {
        let doc =
            "circuit c\ninputs a b\ngate FG a t -> p q\ngate FG b q -> t r\noutputs p r\nend\n";
        let e = single_error(doc);
        assert_eq!(e.line, 3);
        assert_eq!(
            e.kind,
            ParseErrorKind::UseBeforeDefinition {
                wire: "t".into(),
                defined_line: 4
            }
        );
    }

    #[test]
    fn arity_mismatch() {
        let e =
            single_error("circuit c\ninputs a b c\ngate FG a b c -> p q r\noutputs p q r\nend\n");
        assert_eq!((e.line, e.token), (3, Some(1)));
        assert!(matches!(
            e.kind,
            ParseErrorKind::ArityMismatch {
                arity: 2,
                inputs: 3,
                ..
            }
        ));
    }

    #[test]
    fn duplicate_definition() {
        let e = single_error(
            "circuit c\ninputs a b\nconst a 0\ngate FG a b -> p q\noutputs p q\nend\n",
        );
        assert_eq!((e.line, e.token), (3, Some(1)));
        assert!(matches!(
            e.kind,
            ParseErrorKind::Redefinition { first_line: 2, .. }
        ));
    }

    #[test]
    fn unknown_gate() {
        let e = single_error("circuit c\ninputs a b\ngate NG a b -> p q\noutputs p q\nend\n");
        assert_eq!(e.kind, ParseErrorKind::UnknownGate("NG".into()));
        assert!(e.kind.is_structural());
    }

    #[test]
    fn syntax_errors() {
        let errs = parse("inputs a\noutputs a\n").unwrap_err();
        assert!(!errs.is_structural());
        assert!(errs.to_string().contains("missing `end`"));
        let e = single_error("circuit c\ninputs a\nconst k 2\noutputs a\nend\n");
        assert_eq!(e.kind, ParseErrorKind::InvalidBit("2".into()));
        let e = single_error("circuit c\ninputs a\noutputs a\nend\ninputs b\n");
        assert_eq!(e.line, 5);
        let e = single_error("circuit c\ninputs a\ngate FG a\noutputs a\nend\n");
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn undefined_output() {
        let e = single_error("circuit c\ninputs a\noutputs a b\nend\n");
        assert_eq!(e.kind, ParseErrorKind::Undefined("b".into()));
        assert_eq!(e.token, Some(2));
    }

    #[test]
    fn serializing_invalid_netlist_fails() {
        let mut n = parse(MINIMAL).unwrap();
        n.primary_outputs.push(n.primary_outputs[0].clone());
        assert!(serialize_netlist(&n).is_err());
    }
}
