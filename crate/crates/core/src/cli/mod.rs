//! The `taucat` command line: load a quiver file, build the inventory and run
//! predicates, completions, enumerations, checks or graph exports. The JSON
//! report goes to standard output, tables and timing to standard error.

mod dot;
mod members;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::parse_algebra;
use crate::error::{Error, Result};
use crate::modcat::DEFAULT_INVENTORY_CAP;
use crate::tautilt::{ApproxWitness, Check, CompletionMethod, Subcat, TauContext};

pub use dot::{stt_exchange, tors_hasse, Graph};
pub use members::parse_members;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MEMBER: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "taucat", version, about = "Support τ-tilting theory of bound quiver algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest number of indecomposables to compute before giving up.
    #[arg(long, global = true, env = "TAUCAT_CAP", default_value_t = DEFAULT_INVENTORY_CAP)]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every predicate on a subcategory.
    Check {
        file: PathBuf,
        /// Members, e.g. `P1,S1`, `1,1#0;S2` or `` for the zero subcategory.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        members: String,
    },
    /// Complete a subcategory.
    Complete {
        file: PathBuf,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        members: String,
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// List subcategories of one kind.
    Enumerate {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: WhatArg,
    },
    /// Run exhaustive checks over the inventory.
    Verify {
        file: PathBuf,
        /// A check key (2.2, 3.2, 3.4, 3.6, 3.7, 4.4, 4.7, 4.8), a check name, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_selection)]
        theorem: Selection,
    },
    /// Write a DOT graph.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        graph: GraphArg,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fac,
    TauPerp,
    Tilting,
}

impl From<MethodArg> for CompletionMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Fac => CompletionMethod::FacCokernel,
            MethodArg::TauPerp => CompletionMethod::TauPerp,
            MethodArg::Tilting => CompletionMethod::TiltingPerp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhatArg {
    /// Support τ-tilting subcategories.
    Stt,
    /// Torsion classes `S = Fac P(S)`.
    Tors,
    Tilting,
    TauRigid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    TorsHasse,
    SttExchange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    One(Check),
}

/// The external key of each check, as accepted by `--theorem`.
pub fn check_key(check: Check) -> &'static str {
    match check {
        Check::TauRigidEquivalence => "2.2",
        Check::FacCompletion => "3.2",
        Check::TorsionBijection => "3.4",
        Check::BongartzCompletion => "3.6",
        Check::BongartzSequence => "3.7",
        Check::TiltingPerpEquality => "4.4",
        Check::TwoTiltingCompletions => "4.7",
        Check::TiltingSequence => "4.8",
    }
}

pub fn parse_selection(text: &str) -> std::result::Result<Selection, String> {
    if text == "all" {
        return Ok(Selection::All);
    }
    Check::ALL.into_iter().find(|&c| check_key(c) == text || c.name() == text).map(Selection::One).ok_or_else(|| {
        let keys: Vec<&str> = Check::ALL.iter().map(|&c| check_key(c)).collect();
        format!("expected `all`, a key ({}) or a check name", keys.join(", "))
    })
}

/// Identifies the input: a hash of the file contents and the field.
#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    pub sha256: String,
    pub field: String,
    pub vertices: usize,
    pub inventory: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub algebra: Fingerprint,
    pub command: String,
    pub passed: bool,
    pub result: Value,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownVertex(_) | Error::Json(_) | Error::Io(_) => EXIT_PARSE,
        Error::UnknownMember(_) => EXIT_MEMBER,
        Error::Precondition(_) | Error::NotHereditary => EXIT_PRECONDITION,
        Error::InventoryCapExceeded { .. } | Error::EnumerationTooLarge(_) => EXIT_CAP,
        _ => EXIT_FAIL,
    }
}

fn load(file: &Path, cap: usize) -> Result<(TauContext, Fingerprint)> {
    let bytes = std::fs::read(file).map_err(|e| Error::Io(format!("cannot read {}: {e}", file.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Io(format!("{} is not UTF-8", file.display())))?;
    let algebra = Arc::new(parse_algebra(&text)?);
    let ctx = TauContext::build(&algebra, cap)?;
    let fingerprint = Fingerprint {
        sha256: Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect(),
        field: algebra.field().to_string(),
        vertices: algebra.vertex_count(),
        inventory: ctx.len(),
    };
    Ok((ctx, fingerprint))
}

fn file_of(command: &Command) -> &Path {
    match command {
        Command::Check { file, .. }
        | Command::Complete { file, .. }
        | Command::Enumerate { file, .. }
        | Command::Verify { file, .. }
        | Command::Export { file, .. } => file,
    }
}

fn witnesses(ctx: &TauContext, list: &[crate::tautilt::ApproxSeq]) -> Vec<ApproxWitness> {
    let labels = ctx.algebra().quiver().vertices();
    list.iter().zip(labels).map(|(w, v)| ApproxWitness::new(ctx, &format!("P{v}"), w)).collect()
}

fn table(title: &str, rows: &[(String, String)]) {
    eprintln!("{title}");
    let width = rows.iter().map(|(a, _)| a.chars().count()).max().unwrap_or(0);
    for (a, b) in rows {
        eprintln!("  {a:<width$}  {b}");
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<Value> {
    serde_json::to_value(value).map_err(|e| Error::Json(e.to_string()))
}

/// Predicates of a subcategory together with its `Fac` closure.
pub fn check_result(ctx: &TauContext, s: &Subcat) -> Result<Value> {
    let mut value = to_json(&ctx.predicate_summary(s)?)?;
    value["fac"] = json!(ctx.names(&ctx.fac(s)));
    Ok(value)
}

/// A completion with its approximation witnesses; the flag reports whether
/// every witness verified.
pub fn complete_result(ctx: &TauContext, s: &Subcat, method: CompletionMethod) -> Result<(bool, Value)> {
    let report = ctx.complete(s, method)?;
    let verified = report.verify(ctx)?;
    let value = json!({
        "method": report.method,
        "input": ctx.names(s),
        "output": ctx.names(&report.output),
        "witnesses": witnesses(ctx, &report.witnesses),
        "witnesses_verified": verified,
    });
    Ok((verified, value))
}

pub fn enumerate_result(ctx: &TauContext, what: WhatArg) -> Result<Value> {
    let (name, entries): (&str, Vec<Value>) = match what {
        WhatArg::Stt => (
            "stt",
            ctx.support_tau_tilting_list()?
                .iter()
                .map(|m| json!({ "members": ctx.names(m), "fac": ctx.names(&ctx.fac(m)) }))
                .collect(),
        ),
        WhatArg::Tors => (
            "tors",
            ctx.enumerate_fac_fixed_points()?
                .iter()
                .map(|s| json!({ "members": ctx.names(s), "ext_projectives": ctx.names(&ctx.ext_projectives(s)) }))
                .collect(),
        ),
        WhatArg::Tilting => {
            ("tilting", ctx.tilting_list()?.iter().map(|s| json!({ "members": ctx.names(s) })).collect())
        }
        WhatArg::TauRigid => {
            ("tau-rigid", ctx.tau_rigid_subcats().iter().map(|s| json!({ "members": ctx.names(s) })).collect())
        }
    };
    Ok(json!({ "what": name, "count": entries.len(), "subcategories": entries }))
}

/// Runs the selected checks. With `Selection::All`, checks that need a
/// hereditary algebra are reported as not applicable instead of failing.
pub fn verify_result(ctx: &TauContext, selection: Selection) -> Result<(bool, Value)> {
    let selected: Vec<Check> = match selection {
        Selection::All => Check::ALL.to_vec(),
        Selection::One(c) => vec![c],
    };
    let mut entries = Vec::new();
    let mut all_passed = true;
    for check in selected {
        match ctx.run_check(check) {
            Ok(r) => {
                all_passed &= r.passed;
                let mut v = to_json(&r)?;
                v["key"] = json!(check_key(check));
                entries.push(v);
            }
            Err(Error::NotHereditary) if selection == Selection::All => entries.push(json!({
                "check": check,
                "key": check_key(check),
                "applicable": false,
                "reason": Error::NotHereditary.to_string(),
            })),
            Err(e) => return Err(e),
        }
    }
    Ok((all_passed, json!({ "checks": entries })))
}

pub fn graph(ctx: &TauContext, kind: GraphArg) -> Result<Graph> {
    match kind {
        GraphArg::TorsHasse => tors_hasse(ctx),
        GraphArg::SttExchange => stt_exchange(ctx),
    }
}

fn print_tables(command: &Command, result: &Value) {
    match command {
        Command::Check { .. } => {
            let rows: Vec<(String, String)> = [
                ("τ-rigid", "tau_rigid"),
                ("Ext¹(M, Fac M) = 0", "tau_rigid_ext"),
                ("support τ-tilting", "support_tau_tilting"),
                ("τ-tilting", "tau_tilting"),
                ("τ-tilting (regular module)", "tau_tilting_regular"),
                ("partial tilting", "partial_tilting"),
                ("tilting", "tilting"),
            ]
            .iter()
            .map(|(label, key)| (label.to_string(), result[key].to_string()))
            .collect();
            table(&format!("{{{}}}", join_strings(&result["members"])), &rows);
        }
        Command::Complete { .. } => {
            let row =
                (format!("{{{}}}", join_strings(&result["input"])), format!("{{{}}}", join_strings(&result["output"])));
            table("completion", &[row]);
        }
        Command::Enumerate { .. } => {
            eprintln!("{}: {}", result["what"].as_str().unwrap_or_default(), result["count"]);
            for e in result["subcategories"].as_array().into_iter().flatten() {
                eprintln!("  {{{}}}", join_strings(&e["members"]));
            }
        }
        Command::Verify { .. } => {
            let rows: Vec<(String, String)> = result["checks"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|c| {
                    let label = format!(
                        "{} {}",
                        c["key"].as_str().unwrap_or_default(),
                        c["check"].as_str().unwrap_or_default()
                    );
                    let status = match c["passed"].as_bool() {
                        Some(true) => format!("pass ({} instances)", c["instances"]),
                        Some(false) => format!("FAIL ({} instances)", c["instances"]),
                        None => "not applicable".to_string(),
                    };
                    (label, status)
                })
                .collect();
            table("checks", &rows);
        }
        Command::Export { out, .. } => {
            let edges = result["edges"].as_array().map_or(0, Vec::len);
            eprintln!(
                "{}: {} nodes, {edges} edges -> {}",
                result["graph"].as_str().unwrap_or_default(),
                result["nodes"],
                out.display()
            );
        }
    }
}

/// Runs one command and returns the report and the exit code.
pub fn run(cli: &Cli) -> Result<(RunReport, i32)> {
    let (ctx, algebra) = load(file_of(&cli.command), cli.cap)?;
    let (command, passed, result) = match &cli.command {
        Command::Check { members, .. } => ("check", true, check_result(&ctx, &parse_members(&ctx, members)?)?),
        Command::Complete { members, method, .. } => {
            let (verified, value) = complete_result(&ctx, &parse_members(&ctx, members)?, (*method).into())?;
            ("complete", verified, value)
        }
        Command::Enumerate { what, .. } => ("enumerate", true, enumerate_result(&ctx, *what)?),
        Command::Verify { theorem, .. } => {
            let (passed, value) = verify_result(&ctx, *theorem)?;
            ("verify", passed, value)
        }
        Command::Export { graph: kind, out, .. } => {
            let g = graph(&ctx, *kind)?;
            std::fs::write(out, &g.dot).map_err(|e| Error::Io(format!("cannot write {}: {e}", out.display())))?;
            let name = kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            let value = json!({ "graph": name, "nodes": g.nodes, "edges": g.edges, "out": out.display().to_string() });
            ("export", true, value)
        }
    };
    print_tables(&cli.command, &result);
    let code = if passed { EXIT_PASS } else { EXIT_FAIL };
    Ok((RunReport { algebra, command: command.to_string(), passed, result }, code))
}

fn join_strings(values: &Value) -> String {
    values.as_array().into_iter().flatten().filter_map(Value::as_str).collect::<Vec<_>>().join(", ")
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok((report, code)) => match serde_json::to_string_pretty(&report) {
            Ok(text) => {
                println!("{text}");
                code
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_FAIL
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    code
}
