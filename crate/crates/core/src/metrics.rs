// SPDX-License-Identifier: Apache-2.0
//! Design metrics (gate count, quantum cost, garbage, constants, logical
//! calculations) and comparison against published BCD adder figures.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::gate::{LogicCost, QuantumCost};
use crate::netlist::{Netlist, NetlistError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsReport {
    pub gate_count: usize,
    pub gates: BTreeMap<String, usize>,
    pub quantum_cost: QuantumCost,
    pub garbage: usize,
    pub constants: usize,
    pub logical: LogicCost,
    #[serde(skip)]
    pub inputs: usize,
    #[serde(skip)]
    pub outputs: usize,
}

impl MetricsReport {
    /// Componentwise sum, as for two circuits placed side by side.
    pub fn combine(&self, other: &MetricsReport) -> MetricsReport {
        let mut gates = self.gates.clone();
        for (name, count) in &other.gates {
            *gates.entry(name.clone()).or_default() += count;
        }
        MetricsReport {
            gate_count: self.gate_count + other.gate_count,
            gates,
            quantum_cost: self.quantum_cost + other.quantum_cost,
            garbage: self.garbage + other.garbage,
            constants: self.constants + other.constants,
            logical: self.logical + other.logical,
            inputs: self.inputs + other.inputs,
            outputs: self.outputs + other.outputs,
        }
    }

    /// Gate multiset as `10 PFAG + 4 FG + 1 PG = 15`, largest count first.
    pub fn gate_expr(&self) -> String {
        let mut entries: Vec<(&String, &usize)> = self.gates.iter().collect();
        entries.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        let terms: Vec<String> = entries.iter().map(|(n, c)| format!("{c} {n}")).collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            format!("{} = {}", terms.join(" + "), self.gate_count)
        }
    }
}

pub fn analyze(netlist: &Netlist) -> Result<MetricsReport, NetlistError> {
    let garbage = netlist.garbage_wires()?.len();
    let mut gates = BTreeMap::new();
    for inst in &netlist.gates {
        *gates.entry(inst.gate.name().to_string()).or_default() += 1;
    }
    let report = MetricsReport {
        gate_count: netlist.gates.len(),
        gates,
        quantum_cost: netlist.gates.iter().map(|g| g.gate.quantum_cost()).sum(),
        garbage,
        constants: netlist.constants.len(),
        logical: netlist.gates.iter().map(|g| g.gate.logic_cost()).sum(),
        inputs: netlist.primary_inputs.len(),
        outputs: netlist.primary_outputs.len(),
    };
    debug_assert_eq!(
        report.garbage + report.outputs,
        report.inputs + report.constants
    );
    Ok(report)
}

/// One published row of the BCD adder comparison, stored as printed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteratureRow {
    pub label: &'static str,
    pub gate_count_expr: &'static str,
    pub gate_count: usize,
    pub garbage: usize,
    pub logical: LogicCost,
    pub quantum_cost: QuantumCost,
}

pub fn literature_table() -> Vec<LiteratureRow> {
    const fn row(
        label: &'static str,
        gate_count_expr: &'static str,
        gate_count: usize,
        garbage: usize,
        logical: LogicCost,
        quantum_cost: QuantumCost,
    ) -> LiteratureRow {
        LiteratureRow {
            label,
            gate_count_expr,
            gate_count,
            garbage,
            logical,
            quantum_cost,
        }
    }
    let unknown = QuantumCost::UNKNOWN;
    vec![
        row(
            "This study: Design 1",
            "10 PFAG +4FG+1PG=15",
            15,
            24,
            LogicCost::new(56, 21, 0),
            QuantumCost::known(88),
        ),
        row(
            "This study: Design 2",
            "10 PFAG+1PG +2FG+1HNFG=14",
            14,
            24,
            LogicCost::new(56, 21, 0),
            QuantumCost::known(88),
        ),
        row(
            "BCD adder [15]",
            "8 HNG +2NG+ 1TG+2FG + 1HNFG=14",
            14,
            22,
            LogicCost::new(49, 21, 6),
            unknown,
        ),
        row(
            "BCD adder [16]",
            "19+4FG=23",
            23,
            22,
            LogicCost::new(42, 30, 33),
            unknown,
        ),
        row(
            "Conventional BCD adder plus fanout [17]",
            "11+5FG=16",
            16,
            22,
            LogicCost::new(59, 30, 33),
            unknown,
        ),
        row(
            "Carry skip BCD adder plus fanout [17]",
            "15+7FG=22",
            22,
            27,
            LogicCost::new(75, 48, 36),
            unknown,
        ),
    ]
}

/// Published figures for a design this crate can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaperClaim {
    pub gate_count: usize,
    pub garbage: usize,
    pub constants: usize,
    pub logical: Option<LogicCost>,
    pub quantum_cost: QuantumCost,
}

/// Claims for the built designs, keyed by netlist name.
pub fn paper_claim(label: &str) -> Option<PaperClaim> {
    let bcd = |gate_count| PaperClaim {
        gate_count,
        garbage: 24,
        constants: 19,
        logical: Some(LogicCost::new(56, 21, 0)),
        quantum_cost: QuantumCost::known(88),
    };
    match label {
        "ripple4" => Some(PaperClaim {
            gate_count: 4,
            garbage: 8,
            constants: 4,
            logical: None,
            quantum_cost: QuantumCost::known(32),
        }),
        "bcd1" => Some(bcd(15)),
        "bcd2" => Some(bcd(14)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowSource {
    Computed,
    PaperClaimed,
}

impl fmt::Display for RowSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowSource::Computed => "computed",
            RowSource::PaperClaimed => "paper-claimed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub field: &'static str,
    pub computed: String,
    pub claimed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub label: String,
    pub source: RowSource,
    pub gate_count: usize,
    pub gate_count_expr: String,
    pub garbage: usize,
    pub constants: Option<usize>,
    pub logical: LogicCost,
    pub quantum_cost: QuantumCost,
    pub discrepancies: Vec<Discrepancy>,
}

impl ComparisonRow {
    pub fn discrepancy(&self, field: &str) -> Option<&Discrepancy> {
        self.discrepancies.iter().find(|d| d.field == field)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

fn computed_row(label: &str, report: &MetricsReport) -> ComparisonRow {
    let mut discrepancies = Vec::new();
    if let Some(claim) = paper_claim(label) {
        let mut check = |field, computed: String, claimed: String| {
            if computed != claimed {
                discrepancies.push(Discrepancy {
                    field,
                    computed,
                    claimed,
                });
            }
        };
        check(
            "gate_count",
            report.gate_count.to_string(),
            claim.gate_count.to_string(),
        );
        check(
            "garbage",
            report.garbage.to_string(),
            claim.garbage.to_string(),
        );
        check(
            "constants",
            report.constants.to_string(),
            claim.constants.to_string(),
        );
        if let Some(logical) = claim.logical {
            check("logical", report.logical.to_string(), logical.to_string());
        }
        check(
            "quantum_cost",
            report.quantum_cost.to_string(),
            claim.quantum_cost.to_string(),
        );
    }
    ComparisonRow {
        label: label.to_string(),
        source: RowSource::Computed,
        gate_count: report.gate_count,
        gate_count_expr: report.gate_expr(),
        garbage: report.garbage,
        constants: Some(report.constants),
        logical: report.logical,
        quantum_cost: report.quantum_cost,
        discrepancies,
    }
}

/// Computed rows first, then (optionally) the published rows.
pub fn compare(reports: &[(String, MetricsReport)], include_literature: bool) -> Comparison {
    let mut rows: Vec<ComparisonRow> = reports
        .iter()
        .map(|(label, report)| computed_row(label, report))
        .collect();
    if include_literature {
        rows.extend(literature_table().into_iter().map(|lit| ComparisonRow {
            label: lit.label.to_string(),
            source: RowSource::PaperClaimed,
            gate_count: lit.gate_count,
            gate_count_expr: lit.gate_count_expr.to_string(),
            garbage: lit.garbage,
            constants: None,
            logical: lit.logical,
            quantum_cost: lit.quantum_cost,
            discrepancies: Vec::new(),
        }));
    }
    Comparison { rows }
}

/// Marker placed next to a computed value that disagrees with its claim.
pub const DISCREPANCY_MARKER: &str = "(!)";

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header = [
            "Design",
            "Source",
            "Gate Count",
            "Garbage Outputs",
            "Constants",
            "Logical Calculations",
            "Quantum Cost",
        ];
        let cell = |row: &ComparisonRow, field: &str, value: String| match row.discrepancy(field) {
            Some(d) => format!("{value} [paper: {}] {DISCREPANCY_MARKER}", d.claimed),
            None => value,
        };
        let table: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.label.clone(),
                    r.source.to_string(),
                    cell(r, "gate_count", r.gate_count_expr.clone()),
                    cell(r, "garbage", r.garbage.to_string()),
                    cell(
                        r,
                        "constants",
                        r.constants.map_or("-".to_string(), |c| c.to_string()),
                    ),
                    cell(r, "logical", r.logical.to_string()),
                    cell(r, "quantum_cost", r.quantum_cost.to_string()),
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &table {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
                if i > 0 {
                    s.push_str(" | ");
                }
                let pad = w - c.chars().count();
                let _ = write!(s, "{c}{}", " ".repeat(pad));
            }
            s.trim_end().to_string()
        };
        writeln!(f, "{}", line(&header.map(String::from)))?;
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        writeln!(f, "{}", line(&rule).replace(" | ", "-+-"))?;
        for row in &table {
            writeln!(f, "{}", line(row))?;
        }
        let notes: Vec<String> = self
            .rows
            .iter()
            .flat_map(|r| {
                r.discrepancies.iter().map(move |d| {
                    format!(
                        "{DISCREPANCY_MARKER} {}: {} computed {}, paper-claimed {}",
                        r.label, d.field, d.computed, d.claimed
                    )
                })
            })
            .collect();
        if !notes.is_empty() {
            writeln!(f)?;
            for note in notes {
                writeln!(f, "{note}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_bcd_adder, build_ripple_adder, BcdDesign, BuildOptions};
    use crate::gate::{Builtin, GateLibrary};
    use crate::netlist::{GateInstance, Wire};

    fn w(name: &str) -> Wire {
        Wire::new(name).unwrap()
    }

    #[test]
    fn ripple_metrics() {
        let r = analyze(&build_ripple_adder()).unwrap();
        assert_eq!(r.gate_count, 4);
        assert_eq!(r.gates.get("PFAG"), Some(&4));
        assert_eq!(r.quantum_cost, QuantumCost::known(32));
        assert_eq!(r.garbage, 8);
        assert_eq!(r.constants, 4);
        assert_eq!(r.logical, LogicCost::new(20, 8, 0));
    }

    #[test]
    fn bcd1_metrics() {
        let r = analyze(&build_bcd_adder(BcdDesign::Design1, &BuildOptions::default()).unwrap())
            .unwrap();
        assert_eq!(r.gate_count, 15);
        assert_eq!(r.gate_expr(), "10 PFAG + 4 FG + 1 PG = 15");
        assert_eq!(r.quantum_cost, QuantumCost::known(88));
        assert_eq!(r.constants, 19);
        assert_eq!(r.logical, LogicCost::new(56, 21, 0));
    }

    #[test]
    fn hng_makes_cost_unknown() {
        let n = Netlist {
            name: "h".into(),
            primary_inputs: vec![w("a"), w("b"), w("c")],
            constants: vec![(w("k"), false)],
            gates: vec![GateInstance::new(
                GateLibrary::standard().builtin(Builtin::Hng),
                vec![w("a"), w("b"), w("c"), w("k")],
                vec![w("p"), w("q"), w("s"), w("co")],
            )],
            primary_outputs: vec![w("s"), w("co")],
        };
        let r = analyze(&n).unwrap();
        assert_eq!(r.quantum_cost, QuantumCost::UNKNOWN);
        assert_eq!(
            serde_json::to_value(&r).unwrap()["quantum_cost"],
            serde_json::Value::Null
        );
    }

    #[test]
    fn literature_rows() {
        let rows = literature_table();
        assert_eq!(rows.len(), 6);
        let find = |l: &str| rows.iter().find(|r| r.label == l).unwrap();
        assert_eq!(
            find("This study: Design 2").gate_count_expr,
            "10 PFAG+1PG +2FG+1HNFG=14"
        );
        assert_eq!(find("Carry skip BCD adder plus fanout [17]").garbage, 27);
        assert_eq!(find("BCD adder [16]").logical, LogicCost::new(42, 30, 33));
    }

    #[test]
    fn compare_flags_garbage_discrepancy() {
        let n = build_bcd_adder(BcdDesign::Design2, &BuildOptions::default()).unwrap();
        let report = analyze(&n).unwrap();
        let cmp = compare(&[("bcd2".to_string(), report)], true);
        assert_eq!(cmp.rows.len(), 7);
        let d = cmp.rows[0].discrepancy("garbage").unwrap();
        assert_eq!((d.computed.as_str(), d.claimed.as_str()), ("23", "24"));
        assert_eq!(cmp.rows[0].discrepancies.len(), 1);
        let text = cmp.to_string();
        assert!(text.contains("23 [paper: 24] (!)"), "{text}");
    }

    #[test]
    fn compare_variants() {
        assert_eq!(compare(&[], true).rows.len(), 6);
        let r = analyze(&build_ripple_adder()).unwrap();
        let cmp = compare(&[("ripple4".to_string(), r)], false);
        assert_eq!(cmp.rows.len(), 1);
        assert_eq!(cmp.rows[0].source, RowSource::Computed);
        assert!(cmp.rows[0].discrepancies.is_empty());
    }

    #[test]
    fn json_key_order_is_stable() {
        let r = analyze(&build_ripple_adder()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"gate_count":4,"gates":{"PFAG":4},"quantum_cost":32,"garbage":8,"constants":4,"logical":{"xor":20,"and":8,"not":0}}"#
        );
    }
}
