// SPDX-License-Identifier: Apache-2.0
//! `revlogic` command line tool.
//!
//! Exit codes: 0 on success, 1 when a validation, equivalence or metric
//! check fails, 2 on usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use revlogic::metrics::{analyze, compare};
use revlogic::sim::{
    bits_to_u64, u64_to_bits, Assignment, EquivalenceReport, Simulator, DEFAULT_COUNTEREXAMPLE_CAP,
    DEFAULT_INPUT_LIMIT,
};
use revlogic::{
    build_bcd_adder, build_bcd_chain, build_ripple_adder, parse_netlist, serialize_netlist,
    BcdDesign, BuildOptions, CarryIn, GateLibrary, Netlist, Wire,
};

#[derive(Parser)]
#[command(author, version, about = "Reversible logic netlist toolkit", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural rules of a netlist
    Validate { file: PathBuf },
    /// Simulate a netlist forward
    Sim {
        file: PathBuf,
        /// Primary input bits in declaration order
        #[arg(long = "in", value_name = "BITSTRING", conflicts_with = "exhaustive")]
        input: Option<String>,
        /// Enumerate every primary input pattern
        #[arg(long, required_unless_present = "input")]
        exhaustive: bool,
        #[arg(long)]
        show_garbage: bool,
        /// Largest input count accepted by --exhaustive
        #[arg(long, default_value_t = DEFAULT_INPUT_LIMIT)]
        max_inputs: usize,
    },
    /// Simulate a netlist backwards from all terminal lines
    Inverse {
        file: PathBuf,
        /// Primary output bits, then garbage bits
        #[arg(long = "out", value_name = "BITSTRING")]
        output: String,
    },
    /// Report gate count, quantum cost, garbage, constants and logical cost
    Metrics {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit the netlist of a built-in design
    Build {
        #[arg(value_enum)]
        design: DesignArg,
        /// Digit count for bcd-chain
        digits: Option<usize>,
        #[arg(long, value_enum, default_value_t = CarryArg::Primary)]
        carry_in: CarryArg,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check an adder netlist against integer or decimal addition
    CheckAdder {
        file: PathBuf,
        /// ripple4, bcd, or bcd-chain followed by the digit count
        #[arg(long, num_args = 1..=2, value_names = ["KIND", "DIGITS"], required = true)]
        kind: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_INPUT_LIMIT)]
        max_inputs: usize,
    },
    /// Tabulate metrics of several netlists, optionally with published rows
    Compare {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        with_literature: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DesignArg {
    Ripple4,
    Bcd1,
    Bcd2,
    BcdChain,
}

#[derive(Clone, Copy, ValueEnum)]
enum CarryArg {
    Primary,
    Const,
}

enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Usage(String),
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Sim {
            file,
            input,
            exhaustive,
            show_garbage,
            max_inputs,
        } => cmd_sim(
            &file,
            input.as_deref(),
            exhaustive,
            show_garbage,
            max_inputs,
        ),
        Command::Inverse { file, output } => cmd_inverse(&file, &output),
        Command::Metrics { file, json } => cmd_metrics(&file, json),
        Command::Build {
            design,
            digits,
            carry_in,
            output,
        } => cmd_build(design, digits, carry_in, output.as_deref()),
        Command::CheckAdder {
            file,
            kind,
            max_inputs,
        } => cmd_check_adder(&file, &kind, max_inputs),
        Command::Compare {
            files,
            with_literature,
            json,
        } => cmd_compare(&files, with_literature, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Netlist, Failure> {
    let text = read_text(path)?;
    parse_netlist(&text, GateLibrary::standard())
        .map_err(|e| usage(format!("{}:\n{e}", path.display())))
}

fn parse_bits(s: &str) -> Result<Vec<bool>, Failure> {
    s.chars()
        .filter(|&c| c != '_')
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(usage(format!("invalid bit `{other}` in `{s}`"))),
        })
        .collect()
}

fn fmt_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn fmt_wires(wires: &[Wire]) -> String {
    wires.iter().map(Wire::as_str).collect::<Vec<_>>().join(" ")
}

fn simulator(netlist: &Netlist) -> Result<Simulator, Failure> {
    Simulator::new(netlist).map_err(|e| Failure::Check(e.to_string()))
}

fn cmd_validate(path: &Path) -> CmdResult {
    let text = read_text(path)?;
    let netlist = match parse_netlist(&text, GateLibrary::standard()) {
        Ok(n) => n,
        Err(errors) => {
            let msg = format!("{}:\n{errors}", path.display());
            return Err(if errors.is_structural() {
                Failure::Check(msg)
            } else {
                Failure::Usage(msg)
            });
        }
    };
    let report = netlist.validate();
    for w in &report.warnings {
        println!("warning: {w}");
    }
    if !report.is_ok() {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Check(lines.join("\n")));
    }
    println!(
        "ok: {} ({} inputs, {} constants, {} gates, {} outputs)",
        netlist.name,
        netlist.primary_inputs.len(),
        netlist.constants.len(),
        netlist.gates.len(),
        netlist.primary_outputs.len()
    );
    Ok(())
}

fn cmd_sim(
    path: &Path,
    input: Option<&str>,
    exhaustive: bool,
    show_garbage: bool,
    max_inputs: usize,
) -> CmdResult {
    let netlist = load(path)?;
    let sim = simulator(&netlist)?;
    if let Some(bits) = input {
        let bits = parse_bits(bits)?;
        let input = Assignment::from_bits(&sim.input_wires(), &bits).map_err(usage)?;
        let trace = sim.run(&input).map_err(usage)?;
        println!(
            "inputs  {} = {}",
            fmt_wires(&sim.input_wires()),
            fmt_bits(&bits)
        );
        println!(
            "outputs {} = {}",
            fmt_wires(&sim.output_wires()),
            fmt_bits(&trace.primary_out.bits())
        );
        if show_garbage {
            println!(
                "garbage {} = {}",
                fmt_wires(&sim.garbage_wires()),
                fmt_bits(&trace.garbage_out.bits())
            );
        }
        return Ok(());
    }
    debug_assert!(exhaustive);
    let rows = sim.truth_table(max_inputs).map_err(usage)?;
    let mut header = format!(
        "# {} | {}",
        fmt_wires(&sim.input_wires()),
        fmt_wires(&sim.output_wires())
    );
    if show_garbage {
        header.push_str(&format!(" | {}", fmt_wires(&sim.garbage_wires())));
    }
    println!("{header}");
    for row in rows {
        if show_garbage {
            println!(
                "{} | {} | {}",
                fmt_bits(&row.input),
                fmt_bits(&row.primary),
                fmt_bits(&row.garbage)
            );
        } else {
            println!("{} | {}", fmt_bits(&row.input), fmt_bits(&row.primary));
        }
    }
    Ok(())
}

fn cmd_inverse(path: &Path, output: &str) -> CmdResult {
    let netlist = load(path)?;
    let sim = simulator(&netlist)?;
    let bits = parse_bits(output)?;
    let sources = sim.eval_inverse(&bits).map_err(usage)?;
    let (inputs, constants) = sources.split_at(sim.input_count());
    println!(
        "inputs    {} = {}",
        fmt_wires(&sim.input_wires()),
        fmt_bits(inputs)
    );
    let const_wires: Vec<Wire> = netlist.constants.iter().map(|(w, _)| w.clone()).collect();
    println!(
        "constants {} = {}",
        fmt_wires(&const_wires),
        fmt_bits(constants)
    );
    for ((wire, declared), &got) in netlist.constants.iter().zip(constants) {
        if *declared != got {
            println!(
                "note: constant {wire} recovered as {}, declared {}",
                u8::from(got),
                u8::from(*declared)
            );
        }
    }
    Ok(())
}

fn cmd_metrics(path: &Path, json: bool) -> CmdResult {
    let netlist = load(path)?;
    let report = analyze(&netlist).map_err(|e| Failure::Check(e.to_string()))?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        println!("circuit       {}", netlist.name);
        println!("gates         {}", report.gate_expr());
        println!("quantum cost  {}", report.quantum_cost);
        println!("garbage       {}", report.garbage);
        println!("constants     {}", report.constants);
        println!("logical       {}", report.logical);
    }
    Ok(())
}

fn cmd_build(
    design: DesignArg,
    digits: Option<usize>,
    carry_in: CarryArg,
    output: Option<&Path>,
) -> CmdResult {
    let opts = BuildOptions {
        carry_in: match carry_in {
            CarryArg::Primary => CarryIn::Primary,
            CarryArg::Const => CarryIn::Constant0,
        },
        ..BuildOptions::default()
    };
    if digits.is_some() && !matches!(design, DesignArg::BcdChain) {
        return Err(usage("a digit count is only accepted by bcd-chain"));
    }
    let netlist = match design {
        DesignArg::Ripple4 => build_ripple_adder(),
        DesignArg::Bcd1 => build_bcd_adder(BcdDesign::Design1, &opts).map_err(usage)?,
        DesignArg::Bcd2 => build_bcd_adder(BcdDesign::Design2, &opts).map_err(usage)?,
        DesignArg::BcdChain => {
            let n = digits.ok_or_else(|| usage("bcd-chain needs a digit count"))?;
            build_bcd_chain(n).map_err(usage)?
        }
    };
    let text = serialize_netlist(&netlist).map_err(|e| Failure::Check(e.to_string()))?;
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

enum AdderKind {
    Ripple4,
    Bcd,
    BcdChain(usize),
}

fn parse_kind(kind: &[String]) -> Result<AdderKind, Failure> {
    match kind {
        [k] if k == "ripple4" => Ok(AdderKind::Ripple4),
        [k] if k == "bcd" => Ok(AdderKind::Bcd),
        [k, n] if k == "bcd-chain" => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .map(AdderKind::BcdChain)
            .ok_or_else(|| usage(format!("invalid digit count `{n}`"))),
        [k] if k == "bcd-chain" => Err(usage("bcd-chain needs a digit count")),
        other => Err(usage(format!("unknown adder kind `{}`", other.join(" ")))),
    }
}

/// Decimal digits of an operand, most significant first.
fn read_digits(bits: &[bool]) -> Vec<u64> {
    bits.chunks(4).map(bits_to_u64).collect()
}

fn decimal_sum(a: &[u64], b: &[u64], cin: bool) -> Vec<bool> {
    let mut carry = u64::from(cin);
    let mut digits = vec![0; a.len()];
    for i in (0..a.len()).rev() {
        let t = a[i] + b[i] + carry;
        digits[i] = t % 10;
        carry = t / 10;
    }
    let mut out: Vec<bool> = digits.iter().flat_map(|&d| u64_to_bits(d, 4)).collect();
    out.push(carry == 1);
    out
}

fn cmd_check_adder(path: &Path, kind: &[String], max_inputs: usize) -> CmdResult {
    let kind = parse_kind(kind)?;
    let netlist = load(path)?;
    let sim = simulator(&netlist)?;
    let (inputs, outputs) = (sim.input_count(), sim.output_count());
    let shape_error = |expected: &str| {
        Failure::Check(format!(
            "{}: {inputs} inputs and {outputs} outputs do not fit {expected}",
            netlist.name
        ))
    };
    let cap = DEFAULT_COUNTEREXAMPLE_CAP;
    let (report, scope) = match kind {
        AdderKind::Ripple4 => {
            if (inputs, outputs) != (9, 5) {
                return Err(shape_error("a 4-bit adder (9 inputs, 5 outputs)"));
            }
            let oracle = |x: &[bool]| {
                let sum = bits_to_u64(&x[0..4]) + bits_to_u64(&x[4..8]) + u64::from(x[8]);
                let mut out = u64_to_bits(sum % 16, 4);
                out.push(sum >= 16);
                out
            };
            let r = sim
                .check_equivalence(oracle, |_| true, max_inputs, cap)
                .map_err(usage)?;
            (r, "all input patterns")
        }
        AdderKind::Bcd => {
            if !matches!(inputs, 8 | 9) || outputs != 5 {
                return Err(shape_error("a BCD digit adder (8 or 9 inputs, 5 outputs)"));
            }
            let with_cin = inputs == 9;
            let oracle = |x: &[bool]| {
                let cin = with_cin && x[8];
                decimal_sum(&read_digits(&x[0..4]), &read_digits(&x[4..8]), cin)
            };
            let domain = |x: &[bool]| read_digits(&x[0..8]).iter().all(|&d| d <= 9);
            let r = sim
                .check_equivalence(oracle, domain, max_inputs, cap)
                .map_err(usage)?;
            (r, "all valid digit patterns")
        }
        AdderKind::BcdChain(n) => {
            if inputs != 8 * n + 1 || outputs != 4 * n + 1 {
                return Err(shape_error(&format!("a {n}-digit BCD chain")));
            }
            let oracle = |x: &[bool]| {
                decimal_sum(
                    &read_digits(&x[..4 * n]),
                    &read_digits(&x[4 * n..8 * n]),
                    x[8 * n],
                )
            };
            chain_check(&sim, n, oracle, cap)?
        }
    };
    println!(
        "{}: checked {} patterns ({scope}), {} mismatches",
        netlist.name, report.checked, report.mismatches
    );
    if report.is_ok() {
        return Ok(());
    }
    let inputs = fmt_wires(&sim.input_wires());
    let mut lines = vec![format!("counterexamples ({inputs} -> expected / actual):")];
    for c in &report.counterexamples {
        lines.push(format!(
            "  {} -> {} / {}",
            fmt_bits(&c.input),
            fmt_bits(&c.expected),
            fmt_bits(&c.actual)
        ));
    }
    Err(Failure::Check(lines.join("\n")))
}

/// Chains of up to three digits are checked over every valid operand pair;
/// longer chains over a fixed-seed random sample.
const CHAIN_EXHAUSTIVE_DIGITS: usize = 3;
const CHAIN_SAMPLE: usize = 100_000;

fn chain_check(
    sim: &Simulator,
    digits: usize,
    oracle: impl Fn(&[bool]) -> Vec<bool>,
    cap: usize,
) -> Result<(EquivalenceReport, &'static str), Failure> {
    let encode = |a: u64, b: u64, cin: bool| {
        let mut x = Vec::with_capacity(8 * digits + 1);
        for operand in [a, b] {
            for i in (0..digits).rev() {
                x.extend(u64_to_bits((operand / 10u64.pow(i as u32)) % 10, 4));
            }
        }
        x.push(cin);
        x
    };
    let limit = 10u64.pow(digits as u32);
    if digits <= CHAIN_EXHAUSTIVE_DIGITS {
        let patterns = (0..limit)
            .flat_map(|a| (0..limit).flat_map(move |b| [false, true].map(|cin| encode(a, b, cin))));
        let r = sim.check_patterns(patterns, oracle, cap).map_err(usage)?;
        Ok((r, "all valid operand pairs"))
    } else {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let patterns: Vec<Vec<bool>> = (0..CHAIN_SAMPLE)
            .map(|_| encode(rng.gen_range(0..limit), rng.gen_range(0..limit), rng.gen()))
            .collect();
        let r = sim.check_patterns(patterns, oracle, cap).map_err(usage)?;
        Ok((r, "random sample of valid operands"))
    }
}

fn cmd_compare(files: &[PathBuf], with_literature: bool, json: bool) -> CmdResult {
    let mut reports = Vec::with_capacity(files.len());
    for path in files {
        let netlist = load(path)?;
        let report = analyze(&netlist).map_err(|e| Failure::Check(e.to_string()))?;
        reports.push((netlist.name.clone(), report));
    }
    let table = compare(&reports, with_literature);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&table).expect("comparison serializes")
        );
    } else {
        print!("{table}");
    }
    Ok(())
}
