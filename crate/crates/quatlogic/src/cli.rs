//! Command-line front end: synthesize, lower, simulate, verify, print
//! bounds and emit library circuits. Exit codes: 0 on success (and on
//! successful equivalence), 1 on a verification mismatch, 2 on usage,
//! parse or I/O errors.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{apply_dyadic, apply_unary, OperatorKind, Qudit};
use crate::circuits::{self, EqualityVariant};
use crate::netlist::{
    form1_bounds, form2_bounds, lower_sop, worst_case_table, BoundsReport, LowerOptions, Netlist,
};
use crate::sop::{synthesize_form1, synthesize_form2, SopExpr, SopForm};
use crate::table::{input_vectors, QFunction};

#[derive(Parser)]
#[command(
    name = "quatlogic",
    version,
    about = "Quaternary logic synthesis toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the truth tables of all operators
    Tables,
    /// Synthesize a truth table (.qtt) into a sum-of-products (.qsop)
    Synth(SynthArgs),
    /// Lower a sum-of-products (.qsop) to a gate netlist (.qnet)
    Lower(LowerArgs),
    /// Simulate a netlist (.qnet) for one set of input values
    Sim(SimArgs),
    /// Check a netlist or expression against a truth table, exhaustively
    Verify(VerifyArgs),
    /// Print worst-case gate-count and depth bounds for an SOP form
    Bounds(BoundsArgs),
    /// Emit a library circuit as a netlist (.qnet)
    Circuit(CircuitArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Input truth table (.qtt); omit when using --random or --worst-case
    input: Option<PathBuf>,
    /// SOP form to synthesize
    #[arg(long, value_parser = parse_form)]
    form: u8,
    /// Output expression file
    #[arg(short = 'o', long)]
    output: PathBuf,
    /// Synthesize a seeded random table instead of reading a file
    #[arg(long, conflicts_with = "input", requires = "vars")]
    random: bool,
    /// Synthesize the worst-case table for the chosen form
    #[arg(long, conflicts_with_all = ["input", "random"], requires = "vars")]
    worst_case: bool,
    /// Variable count for --random / --worst-case
    #[arg(long)]
    vars: Option<usize>,
    /// Seed for --random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the synthesized table to this .qtt file
    #[arg(long)]
    save_table: Option<PathBuf>,
}

#[derive(Args)]
struct LowerArgs {
    /// Input expression (.qsop)
    input: PathBuf,
    /// Output netlist file
    #[arg(short = 'o', long)]
    output: PathBuf,
    /// AND/MIN fan-in limit
    #[arg(long, default_value_t = 2)]
    v1: usize,
    /// OR/MAX fan-in limit
    #[arg(long, default_value_t = 2)]
    v2: usize,
    /// Realize equality literals from XOR, bitswap and outward inverters
    #[arg(long)]
    expand_equality: bool,
    /// Emit MIN/MAX gates instead of AND/OR (form 1 only)
    #[arg(long)]
    use_minmax: bool,
    /// Apply the functional-inverter peephole rewrites before lowering
    #[arg(long)]
    peephole: bool,
}

#[derive(Args)]
struct SimArgs {
    /// Input netlist (.qnet)
    input: PathBuf,
    /// Input binding `NAME=VALUE`; repeat for every input
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Candidate netlist (.qnet) or expression (.qsop)
    candidate: PathBuf,
    /// Reference truth table (.qtt)
    table: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    /// SOP form
    #[arg(long, value_parser = parse_form)]
    form: u8,
    /// Variable count
    #[arg(long)]
    vars: usize,
    /// AND/MIN fan-in limit
    #[arg(long, default_value_t = 2)]
    v1: usize,
    /// OR/MAX fan-in limit
    #[arg(long, default_value_t = 2)]
    v2: usize,
    /// Gate cost of one equality literal (form 1)
    #[arg(long, default_value_t = 1)]
    n0: usize,
    /// Depth of one equality literal (form 1)
    #[arg(long, default_value_t = 1)]
    d0: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CircuitKind {
    EqualitySop,
    EqualityXnorAnd,
    EqualityNor,
    EqualityOutwardAnd,
    EqualityOutwardOr,
    UnaryEq,
    BitswapFromEq,
    Decoder,
    DecoderExpanded,
    Demux,
    Mux,
    MinRef,
    MaxRef,
}

#[derive(Args)]
struct CircuitArgs {
    /// Circuit to generate
    kind: CircuitKind,
    /// Output netlist file
    #[arg(short = 'o', long)]
    output: PathBuf,
    /// Selector count for decoder/demux/mux
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// AND/MIN fan-in limit
    #[arg(long, default_value_t = 2)]
    v1: usize,
    /// OR/MAX fan-in limit
    #[arg(long, default_value_t = 2)]
    v2: usize,
    /// Comparison constant for unary-eq
    #[arg(long, value_parser = parse_qudit, default_value = "0")]
    constant: Qudit,
}

fn parse_form(s: &str) -> Result<u8, String> {
    match s {
        "1" => Ok(1),
        "2" => Ok(2),
        _ => Err("form must be 1 or 2".to_string()),
    }
}

fn parse_qudit(s: &str) -> Result<Qudit, String> {
    s.parse::<u8>()
        .ok()
        .and_then(|v| Qudit::new(v).ok())
        .ok_or_else(|| "expected a value in 0..=3".to_string())
}

/// Runs a parsed invocation, printing to stdout/stderr; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Tables => {
            print!("{}", render_tables());
            Ok(0)
        }
        Command::Synth(args) => run_synth(&args),
        Command::Lower(args) => run_lower(&args),
        Command::Sim(args) => run_sim(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Bounds(args) => run_bounds(&args),
        Command::Circuit(args) => run_circuit(&args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

/// Parses the command line and runs it; clap itself exits with code 2 on
/// usage errors.
pub fn main_entry() -> i32 {
    run(Cli::parse())
}

type CmdResult = Result<i32, String>;

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn stringify(err: impl fmt::Display, path: &Path) -> String {
    format!("{}: {err}", path.display())
}

fn run_synth(args: &SynthArgs) -> CmdResult {
    let table = if args.random {
        QFunction::random(args.vars.unwrap(), args.seed).map_err(|e| e.to_string())?
    } else if args.worst_case {
        let form = if args.form == 1 {
            SopForm::Form1
        } else {
            SopForm::Form2
        };
        worst_case_table(args.vars.unwrap(), form).map_err(|e| e.to_string())?
    } else {
        let path = args
            .input
            .as_ref()
            .ok_or("no input: give a .qtt file or --random/--worst-case")?;
        QFunction::parse_qtt(&read_file(path)?).map_err(|e| stringify(e, path))?
    };
    if let Some(path) = &args.save_table {
        write_file(path, &table.to_qtt())?;
    }
    let expr = if args.form == 1 {
        synthesize_form1(&table)
    } else {
        synthesize_form2(&table).map_err(|e| e.to_string())?
    };
    write_file(&args.output, &expr.to_qsop().map_err(|e| e.to_string())?)?;
    println!(
        "form {} vars {} terms {}",
        args.form,
        expr.arity(),
        expr.term_count()
    );
    Ok(0)
}

fn run_lower(args: &LowerArgs) -> CmdResult {
    let text = read_file(&args.input)?;
    let mut expr = SopExpr::parse_qsop(&text).map_err(|e| stringify(e, &args.input))?;
    if args.peephole {
        expr = expr.peephole_inverters();
    }
    let options = LowerOptions {
        v1: args.v1,
        v2: args.v2,
        expand_equality: args.expand_equality,
        use_minmax: args.use_minmax,
    };
    let netlist = lower_sop(&expr, &options).map_err(|e| e.to_string())?;
    write_file(&args.output, &netlist.to_qnet())?;
    println!("gates {} depth {}", netlist.gate_count(), netlist.depth());
    // expanded equality literals cost 5 gates over 4 levels, atomic ones 1/1
    let (eq_gates, eq_depth) = if args.expand_equality { (5, 4) } else { (1, 1) };
    let bounds = match expr.form() {
        SopForm::Form1 => form1_bounds(expr.arity(), args.v1, args.v2, eq_gates, eq_depth),
        SopForm::Form2 => form2_bounds(expr.arity(), args.v1, args.v2),
    };
    let report = BoundsReport::measure(&netlist, bounds);
    println!(
        "bound gates {} depth {}",
        report.gate_bound, report.depth_bound
    );
    Ok(0)
}

fn run_sim(args: &SimArgs) -> CmdResult {
    let netlist =
        Netlist::parse_qnet(&read_file(&args.input)?).map_err(|e| stringify(e, &args.input))?;
    let mut bindings = Vec::with_capacity(args.set.len());
    for setting in &args.set {
        let Some((name, value)) = setting.split_once('=') else {
            return Err(format!("bad binding `{setting}`: expected NAME=VALUE"));
        };
        let value = parse_qudit(value).map_err(|e| format!("bad binding `{setting}`: {e}"))?;
        bindings.push((name.to_string(), value));
    }
    let outputs = netlist.simulate(&bindings).map_err(|e| e.to_string())?;
    let rendered: Vec<String> = outputs
        .iter()
        .map(|(name, value)| format!("{name}={value}"))
        .collect();
    println!("{}", rendered.join(" "));
    Ok(0)
}

fn run_verify(args: &VerifyArgs) -> CmdResult {
    let table =
        QFunction::parse_qtt(&read_file(&args.table)?).map_err(|e| stringify(e, &args.table))?;
    let extension = args
        .candidate
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("");
    let candidate: QFunction = match extension {
        "qnet" => {
            let netlist = Netlist::parse_qnet(&read_file(&args.candidate)?)
                .map_err(|e| stringify(e, &args.candidate))?;
            netlist.tabulate().map_err(|e| e.to_string())?
        }
        "qsop" => {
            let expr = SopExpr::parse_qsop(&read_file(&args.candidate)?)
                .map_err(|e| stringify(e, &args.candidate))?;
            expr.to_function().map_err(|e| e.to_string())?
        }
        other => {
            return Err(format!(
                "cannot verify a `.{other}` file (expected .qnet or .qsop)"
            ))
        }
    };
    if candidate.arity() != table.arity() {
        return Err(format!(
            "arity mismatch: candidate has {} variables, table has {}",
            candidate.arity(),
            table.arity()
        ));
    }
    for x in input_vectors(table.arity()) {
        let expected = table.eval(&x).unwrap();
        let actual = candidate.eval(&x).unwrap();
        if expected != actual {
            let rendered: Vec<String> = x.iter().map(|q| q.to_string()).collect();
            println!(
                "mismatch at {}: expected {expected}, got {actual}",
                rendered.join(" ")
            );
            return Ok(1);
        }
    }
    println!("equivalent");
    Ok(0)
}

fn run_bounds(args: &BoundsArgs) -> CmdResult {
    if args.v1 < 2 || args.v2 < 2 {
        return Err("fan-in limits must be at least 2".to_string());
    }
    if args.vars == 0 {
        return Err("variable count must be at least 1".to_string());
    }
    let bounds = if args.form == 1 {
        form1_bounds(args.vars, args.v1, args.v2, args.n0, args.d0)
    } else {
        form2_bounds(args.vars, args.v1, args.v2)
    };
    println!("N={} d={}", bounds.gates, bounds.depth);
    Ok(0)
}

fn run_circuit(args: &CircuitArgs) -> CmdResult {
    let equality =
        |variant| circuits::equality_netlist(variant, args.v1, args.v2).map_err(|e| e.to_string());
    let reference = |expr: &SopExpr| {
        let options = LowerOptions {
            v1: args.v1,
            v2: args.v2,
            ..LowerOptions::default()
        };
        lower_sop(expr, &options).map_err(|e| e.to_string())
    };
    let netlist = match args.kind {
        CircuitKind::EqualitySop => equality(EqualityVariant::Sop)?,
        CircuitKind::EqualityXnorAnd => equality(EqualityVariant::XnorAnd)?,
        CircuitKind::EqualityNor => equality(EqualityVariant::Nor)?,
        CircuitKind::EqualityOutwardAnd => equality(EqualityVariant::OutwardAnd)?,
        CircuitKind::EqualityOutwardOr => equality(EqualityVariant::OutwardOr)?,
        CircuitKind::UnaryEq => {
            circuits::unary_equality(args.constant).map_err(|e| e.to_string())?
        }
        CircuitKind::BitswapFromEq => {
            circuits::bitswap_from_equality().map_err(|e| e.to_string())?
        }
        CircuitKind::Decoder => circuits::decoder(args.n, args.v1).map_err(|e| e.to_string())?,
        CircuitKind::DecoderExpanded => {
            circuits::decoder_expanded(args.n, args.v1).map_err(|e| e.to_string())?
        }
        CircuitKind::Demux => circuits::demux(args.n, args.v1).map_err(|e| e.to_string())?,
        CircuitKind::Mux => circuits::mux(args.n, args.v1, args.v2).map_err(|e| e.to_string())?,
        CircuitKind::MinRef => reference(&circuits::min_reference())?,
        CircuitKind::MaxRef => reference(&circuits::max_reference())?,
    };
    write_file(&args.output, &netlist.to_qnet())?;
    println!("gates {} depth {}", netlist.gate_count(), netlist.depth());
    Ok(0)
}

/// Renders the operator truth tables: the dyadic operators over the ten
/// unordered operand pairs (all are commutative) and the unary operators
/// repeated per left operand, followed by the derived complement forms.
pub fn render_tables() -> String {
    let pairs: Vec<(Qudit, Qudit)> = {
        let mut out = Vec::new();
        for a in Qudit::ALL {
            for b in Qudit::ALL {
                if a.value() <= b.value() {
                    out.push((a, b));
                }
            }
        }
        out
    };
    let mut text = String::new();
    let mut row = |label: &str, values: Vec<Qudit>| {
        text.push_str(&format!("{label:<18}"));
        let rendered: Vec<String> = values.iter().map(|q| q.to_string()).collect();
        text.push_str(&rendered.join(" "));
        text.push('\n');
    };
    row("A", pairs.iter().map(|(a, _)| *a).collect());
    row("B", pairs.iter().map(|(_, b)| *b).collect());
    let unary = [
        ("NOT", OperatorKind::Not),
        ("OUTWARD", OperatorKind::Outward),
        ("BITSWAP", OperatorKind::Bitswap),
        ("INWARD", OperatorKind::Inward),
    ];
    for (label, op) in unary {
        row(
            label,
            pairs
                .iter()
                .map(|(a, _)| apply_unary(op, *a).unwrap())
                .collect(),
        );
    }
    let dyadic = [
        ("AND", OperatorKind::And),
        ("OR", OperatorKind::Or),
        ("XOR", OperatorKind::Xor),
        ("EQ", OperatorKind::Equality),
        ("MIN", OperatorKind::Min),
        ("MAX", OperatorKind::Max),
        ("XNOR", OperatorKind::Xnor),
        ("NAND", OperatorKind::Nand),
        ("NOR", OperatorKind::Nor),
    ];
    for (label, op) in dyadic {
        row(
            label,
            pairs
                .iter()
                .map(|(a, b)| apply_dyadic(op, *a, *b).unwrap())
                .collect(),
        );
    }
    text
}
