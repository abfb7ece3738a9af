//! Command-line surface. `run` returns the process exit code:
//! 0 success, 1 operational error or internal inconsistency, 2 a negative
//! finding (nonexistent, not equitable, not perfect, not invariant), 64 usage
//! or input parse error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::io::{
    table_to_csv, CertificateDocument, MatrixDocument, PartitionDocument, PerfectStructureDocument, SweepLine, TableDocument,
};
use crate::krawtchouk::Method;
use crate::linalg::format_rational;
use crate::oracle::{
    brute_interweight, brute_triangle, ps_initial_triangle, search_partitions, strong_invariance_check, verify_equitable,
    verify_perfect_structure, InvarianceOutcome, Vertex, DEFAULT_NODE_BUDGET,
};
use crate::quotient::validate_quotient;
use crate::recursion::{build_table, build_table_from, cross_check, cross_check_quotient, CrossCheckInput, CrossCheckReport, DistributionTable, TableKind};
use crate::screen::{certify, sweep_ci, CertificateVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "interweight", version, about = "Exact distributions and nonexistence screening for equitable partitions of hypercubes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a triangle or interweight table from a quotient matrix.
    Table(TableArgs),
    /// Print the three-variable Krawtchouk polynomial P^{r1,r2,r3}.
    Poly(PolyArgs),
    /// Certify a single quotient matrix (exit 2 when nonexistent).
    Screen(ScreenArgs),
    /// Correlation-immunity sweep over 2x2 quotient matrices.
    Sweep(SweepArgs),
    /// Brute-force tools on explicit partitions and perfect structures.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Triangle,
    Interweight,
}

impl From<Kind> for TableKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Triangle => TableKind::Triangle,
            Kind::Interweight => TableKind::Interweight,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Recursion,
    Direct,
    Genfun,
    All,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Matrix document {"n": .., "S": [[..]]}.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "triangle")]
    pub kind: Kind,
    /// Highest level r1+r2+r3 to compute (default n).
    #[arg(long)]
    pub max_level: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Re-derive every entry along all axes and check the symmetries.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub r1: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub r2: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub r3: i64,
    /// Substitute a fixed cube dimension.
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long, value_enum, default_value = "recursion")]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub max_level: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// JSON-lines report; the summary table then goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Check equitability and print the quotient matrix.
    Verify {
        #[arg(long)]
        partition: PathBuf,
    },
    /// Triangle table by enumerating all vertex triples.
    Triangle {
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Allow n above the enumeration cap of 6.
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Interweight table anchored at one vertex.
    Interweight {
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        vertex: Vertex,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Strong distance invariance across anchors of each cell.
    Invariance {
        #[arg(long)]
        partition: PathBuf,
    },
    /// Backtracking search for partitions with a given quotient matrix.
    Search {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        /// Force a vertex into a cell, as VERTEX:CELL with 1-based CELL.
        #[arg(long = "pin")]
        pins: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check a perfect structure against a parameter matrix.
    PsVerify {
        #[arg(long)]
        ps: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Triangle table of a perfect structure, propagated from its level-0 tensor.
    PsTable {
        #[arg(long)]
        ps: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { EXIT_USAGE } else { EXIT_ERROR };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_ERROR, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: EXIT_ERROR, message: format!("{}: {e}", path.display()) })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_table(table: &DistributionTable, format: Format) -> String {
    match format {
        Format::Json => TableDocument::from_table(table).to_json() + "\n",
        Format::Csv => table_to_csv(table),
    }
}

fn report_mismatches(err: &mut dyn Write, report: &CrossCheckReport) -> std::io::Result<i32> {
    if report.passed() {
        writeln!(err, "cross-check passed ({} comparisons)", report.comparisons)?;
        return Ok(EXIT_OK);
    }
    for m in report.mismatches.iter().take(20) {
        writeln!(err, "inconsistency: {m:?}")?;
    }
    writeln!(err, "cross-check failed: {} mismatches", report.mismatches.len())?;
    Ok(EXIT_ERROR)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Table(a) => cmd_table(a, out, err),
        Command::Poly(a) => cmd_poly(a, out),
        Command::Screen(a) => cmd_screen(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Oracle(c) => cmd_oracle(c, out, err),
    }
}

fn cmd_table(a: TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let doc = MatrixDocument::parse(&read(&a.input)?)?;
    let q = validate_quotient(&doc.s, doc.n)?;
    let level = a.max_level.unwrap_or(doc.n);
    let table = build_table(&q, a.kind.into(), level, None)?;
    emit(out, a.output.as_deref(), &render_table(&table, a.format))?;
    if a.cross_check {
        return Ok(report_mismatches(err, &cross_check_quotient(&q, level)?)?);
    }
    Ok(EXIT_OK)
}

fn cmd_poly(a: PolyArgs, out: &mut dyn Write) -> CmdResult {
    let methods: Vec<Method> = match a.method {
        MethodArg::Recursion => vec![Method::Recursion],
        MethodArg::Direct => vec![Method::Direct],
        MethodArg::Genfun => vec![Method::Genfun],
        MethodArg::All => Method::ALL.to_vec(),
    };
    let mut results = Vec::new();
    for m in &methods {
        let p = m.compute(a.r1, a.r2, a.r3)?;
        results.push(match a.n {
            Some(n) => p.specialize_n(n),
            None => p,
        });
    }
    if let Some((i, _)) = results.iter().enumerate().find(|(_, p)| *p != &results[0]) {
        return Err(Failure {
            code: EXIT_ERROR,
            message: format!(
                "methods disagree: {} gives {}, {} gives {}",
                methods[0].as_str(),
                results[0].render(),
                methods[i].as_str(),
                results[i].render()
            ),
        });
    }
    writeln!(out, "{}", results[0].render())?;
    Ok(EXIT_OK)
}

fn cmd_screen(a: ScreenArgs, out: &mut dyn Write) -> CmdResult {
    let doc = MatrixDocument::parse(&read(&a.input)?)?;
    let cert = certify(&doc.s, doc.n, a.max_level);
    emit(out, a.output.as_deref(), &(CertificateDocument::from_certificate(&cert).to_json() + "\n"))?;
    Ok(match cert.verdict {
        CertificateVerdict::Candidate => EXIT_OK,
        CertificateVerdict::Nonexistent => EXIT_NEGATIVE,
    })
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let report = sweep_ci(a.n_max, a.jobs)?;
    let lines: String = report.records.iter().map(|r| SweepLine::from_record(r).to_json_line() + "\n").collect();
    let summary = crate::io::sweep_summary(&report.records, report.n_max);
    match &a.out {
        Some(path) => {
            fs::write(path, lines)?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            out.write_all(lines.as_bytes())?;
            err.write_all(summary.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_pin(s: &str) -> std::result::Result<(Vertex, usize), Failure> {
    let bad = || Failure { code: EXIT_USAGE, message: format!("invalid pin '{s}', expected VERTEX:CELL") };
    let (v, c) = s.split_once(':').ok_or_else(bad)?;
    let v: Vertex = v.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    if c == 0 {
        return Err(bad());
    }
    Ok((v, c - 1))
}

fn cmd_oracle(c: OracleCommand, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match c {
        OracleCommand::Verify { partition } => {
            let p = PartitionDocument::parse(&read(&partition)?)?.to_instance()?;
            match verify_equitable(&p) {
                Ok(q) => {
                    writeln!(out, "{}", MatrixDocument { n: q.n(), s: q.rows().to_vec() }.to_json())?;
                    Ok(EXIT_OK)
                }
                Err(w) => {
                    writeln!(out, "not equitable: {w}")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        OracleCommand::Triangle { partition, format, allow_large, output } => {
            let p = PartitionDocument::parse(&read(&partition)?)?.to_instance()?;
            let table = brute_triangle(&p, allow_large)?;
            emit(out, output.as_deref(), &render_table(&table, format))?;
            Ok(EXIT_OK)
        }
        OracleCommand::Interweight { partition, vertex, format, output } => {
            let p = PartitionDocument::parse(&read(&partition)?)?.to_instance()?;
            let table = brute_interweight(&p, vertex)?;
            emit(out, output.as_deref(), &render_table(&table, format))?;
            Ok(EXIT_OK)
        }
        OracleCommand::Invariance { partition } => {
            let p = PartitionDocument::parse(&read(&partition)?)?.to_instance()?;
            match strong_invariance_check(&p)? {
                InvarianceOutcome::Invariant => {
                    writeln!(out, "strongly distance invariant")?;
                    Ok(EXIT_OK)
                }
                InvarianceOutcome::NotInvariant { cell, first, second, triple } => {
                    writeln!(
                        out,
                        "not invariant: vertices {first} and {second} of cell {} differ at {},{},{}",
                        cell + 1,
                        triple.0,
                        triple.1,
                        triple.2
                    )?;
                    Ok(EXIT_NEGATIVE)
                }
                InvarianceOutcome::Inapplicable(w) => {
                    writeln!(out, "inapplicable, partition is not equitable: {w}")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        OracleCommand::Search { input, limit, pins, budget } => {
            let doc = MatrixDocument::parse(&read(&input)?)?;
            let q = validate_quotient(&doc.s, doc.n)?;
            let pins = pins.iter().map(|s| parse_pin(s)).collect::<std::result::Result<Vec<_>, _>>()?;
            let result = search_partitions(&q, limit, &pins, budget)?;
            let docs: Vec<PartitionDocument> = result.partitions.iter().map(PartitionDocument::from_instance).collect();
            let value = serde_json::json!({ "partitions": docs, "truncated": result.truncated, "nodes": result.nodes });
            writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"))?;
            if result.truncated {
                writeln!(err, "node budget exhausted; results are partial")?;
            }
            Ok(EXIT_OK)
        }
        OracleCommand::PsVerify { ps, input } => {
            let ps = PerfectStructureDocument::parse(&read(&ps)?)?.to_structure()?;
            let s = MatrixDocument::parse(&read(&input)?)?.matrix();
            match verify_perfect_structure(&ps, &s)? {
                Ok(()) => {
                    writeln!(out, "perfect structure")?;
                    Ok(EXIT_OK)
                }
                Err(w) => {
                    let fmt = |v: &[crate::linalg::Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
                    writeln!(out, "not perfect: vertex {} has neighbor sum ({}), expected ({})", w.vertex, fmt(&w.found), fmt(&w.expected))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        OracleCommand::PsTable { ps, input, max_level, format, cross_check: check, output } => {
            let ps = PerfectStructureDocument::parse(&read(&ps)?)?.to_structure()?;
            let s = MatrixDocument::parse(&read(&input)?)?.matrix();
            let level = max_level.unwrap_or(ps.n());
            let table = build_table_from(&s, ps.n(), TableKind::Triangle, level, ps_initial_triangle(&ps))?;
            emit(out, output.as_deref(), &render_table(&table, format))?;
            if check {
                let report = cross_check(&CrossCheckInput { s: &s, triangle: Some(&table), interweight: None, sizes: None })?;
                return Ok(report_mismatches(err, &report)?);
            }
            Ok(EXIT_OK)
        }
    }
}
