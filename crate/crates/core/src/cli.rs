//! The `streq` command-line front end.
//!
//! Exit codes: 0 satisfiable (or success), 1 unsatisfiable or rejected,
//! 2 usage, parse or solver error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::assignment::Assignment;
use crate::border::{build_formula, compute_valid_lengths, solve_border};
use crate::check::{classify, verify, verify_deletions, SystemStats};
use crate::exact::{solve_deletions_xp, solve_xp};
use crate::format::{
    parse_assignment, parse_graph, parse_instance, parse_strings, render_assignment,
    render_instance,
};
use crate::lcs::solve_deletions_lcs;
use crate::reductions::{
    decode, gen_clique_mixed, gen_clique_single_eq, gen_clique_two_eq, gen_clique_two_eq_empty,
    gen_from_lcs_multi, gen_from_lcs_single, gen_mcc_size3, Graph, ReductionOutput,
};
use crate::solve::{SolveError, SolveOptions, SolveOutcome, Status, DEFAULT_BRANCH_CAP};
use crate::system::{Semantics, System};

pub const EXIT_SAT: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "streq",
    version,
    about = "Solve and generate systems of string equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide satisfiability and print a witness.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
        solver: SolverChoice,
        /// Deletion budget; overrides the instance's `deletions:` line.
        #[arg(long)]
        deletions: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BRANCH_CAP)]
        branch_cap: u64,
        #[arg(long)]
        json: bool,
        /// Also write the witness to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check an assignment against an instance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        deletions: Option<usize>,
    },
    /// Generate an instance from a graph or a list of strings.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        kappa: Option<usize>,
        /// One string per line, for the lcs kinds.
        #[arg(long)]
        strings: Option<PathBuf>,
        /// Target common-subsequence length; sets the budget of `lcs-multi`.
        #[arg(long)]
        lambda: Option<usize>,
        /// Budget of `lcs-single`.
        #[arg(long)]
        deletions: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print structural parameters.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Read the vertex set selected by a witness of a generated clique instance.
    Decode {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        kappa: usize,
        #[arg(long)]
        assignment: PathBuf,
    },
    /// Dump the 2SAT formula of a border-only instance.
    Formula { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverChoice {
    Auto,
    Brute,
    BorderSat,
    LcsDel,
}

impl SolverChoice {
    fn name(self) -> &'static str {
        match self {
            SolverChoice::Auto => "auto",
            SolverChoice::Brute => "brute",
            SolverChoice::BorderSat => "border-sat",
            SolverChoice::LcsDel => "lcs-del",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    #[value(name = "clique-1eq")]
    Clique1Eq,
    #[value(name = "clique-2eq")]
    Clique2Eq,
    #[value(name = "clique-2eq-empty")]
    Clique2EqEmpty,
    #[value(name = "mcc-size3")]
    MccSize3,
    #[value(name = "clique-mixed")]
    CliqueMixed,
    #[value(name = "lcs-multi")]
    LcsMulti,
    #[value(name = "lcs-single")]
    LcsSingle,
}

/// The solver `auto` picks for `system` at budget `d`.
///
/// Deletion-free border-only non-erasing systems go to the 2SAT solver.
/// Otherwise the brute force is used, except with deletions when starting-point
/// enumeration (`t^(rc)` branches) is cheaper than deletion enumeration
/// (`(tr)^d · t^(2k)`).
pub fn auto_solver(stats: &SystemStats, semantics: Semantics, d: usize) -> SolverChoice {
    if d == 0 {
        if stats.only_border_blocks && semantics == Semantics::NonErasing {
            return SolverChoice::BorderSat;
        }
        return SolverChoice::Brute;
    }
    let t = (stats.t.max(2)) as f64;
    let lcs_cost = (stats.r * stats.c) as f64 * t.ln();
    let brute_cost = d as f64 * (t * stats.r as f64).ln() + 2.0 * stats.k as f64 * t.ln();
    if lcs_cost < brute_cost {
        SolverChoice::LcsDel
    } else {
        SolverChoice::Brute
    }
}

/// Runs `solver` on `system` with budget `d`, resolving `auto`.
pub fn dispatch(
    system: &System,
    solver: SolverChoice,
    d: usize,
    opts: &SolveOptions,
) -> (SolverChoice, Result<SolveOutcome, SolveError>) {
    let solver = match solver {
        SolverChoice::Auto => auto_solver(&classify(system), system.semantics(), d),
        other => other,
    };
    let res = match solver {
        SolverChoice::Brute if d == 0 => solve_xp(&system.with_deletion_budget(None), opts),
        SolverChoice::Brute => solve_deletions_xp(system, d, opts),
        SolverChoice::LcsDel => solve_deletions_lcs(system, d, opts),
        SolverChoice::BorderSat => solve_border(&system.with_deletion_budget(Some(d))),
        SolverChoice::Auto => unreachable!("auto is resolved above"),
    };
    (solver, res)
}

#[derive(Debug, Serialize)]
struct Report {
    status: &'static str,
    witness: Option<Map<String, Value>>,
    stats: SystemStats,
    solver: &'static str,
    branches: u64,
    ms: f64,
}

fn witness_json(system: &System, a: &Assignment) -> Map<String, Value> {
    a.ordered(system)
        .into_iter()
        .map(|(b, v)| {
            (
                system.block_label(b),
                Value::String(system.render_string(v)),
            )
        })
        .collect()
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<System, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { EXIT_SAT } else { EXIT_ERROR };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            file,
            solver,
            deletions,
            branch_cap,
            json,
            witness,
        } => {
            let system = load_instance(&file)?;
            solve_command(
                &system,
                solver,
                deletions,
                branch_cap,
                json,
                witness.as_deref(),
                out,
            )
        }
        Command::Verify {
            file,
            assignment,
            deletions,
        } => {
            let system = load_instance(&file)?;
            let a = parse_assignment(&read(&assignment)?, &system)
                .map_err(|e| Failure(format!("{}: {e}", assignment.display())))?;
            let d = deletions.or(system.deletion_budget()).unwrap_or(0);
            let verdict = if d == 0 {
                verify(&system, &a)
            } else {
                verify_deletions(&system, &a, d)
            };
            match verdict.failure() {
                None => {
                    writeln!(out, "OK")?;
                    Ok(EXIT_SAT)
                }
                Some(f) => {
                    writeln!(out, "REJECTED: {}", f.describe(&system))?;
                    Ok(EXIT_UNSAT)
                }
            }
        }
        Command::Gen {
            kind,
            graph,
            kappa,
            strings,
            lambda,
            deletions,
            output,
        } => {
            let system = generate(
                kind,
                graph.as_deref(),
                kappa,
                strings.as_deref(),
                lambda,
                deletions,
            )?;
            let text = render_instance(&system);
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                None => write!(out, "{text}")?,
            }
            Ok(EXIT_SAT)
        }
        Command::Classify { file, json } => {
            let stats = classify(&load_instance(&file)?);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&stats)?)?;
            } else {
                writeln!(out, "{stats}")?;
            }
            Ok(EXIT_SAT)
        }
        Command::Decode {
            kind,
            graph,
            kappa,
            assignment,
        } => {
            let g = load_graph(&graph)?;
            let output = clique_reduction(kind, &g, kappa)?;
            let a = parse_assignment(&read(&assignment)?, &output.system)
                .map_err(|e| Failure(format!("{}: {e}", assignment.display())))?;
            let verdict = verify(&output.system, &a);
            if let Some(f) = verdict.failure() {
                return Err(Failure(format!(
                    "assignment does not satisfy the instance: {}",
                    f.describe(&output.system)
                )));
            }
            let picked = decode(&output, &a)?;
            let labels: Vec<&str> = picked.iter().map(|&v| g.label(v)).collect();
            writeln!(out, "{}", labels.join(" "))?;
            let is_clique = g.is_clique(&picked.iter().copied().collect::<Vec<_>>());
            Ok(if is_clique { EXIT_SAT } else { EXIT_UNSAT })
        }
        Command::Formula { file } => {
            let system = load_instance(&file)?;
            let table = compute_valid_lengths(&system)?;
            let formula = build_formula(&system, &table)?;
            write!(out, "{}", formula.render(&system))?;
            Ok(EXIT_SAT)
        }
    }
}

fn solve_command(
    system: &System,
    solver: SolverChoice,
    deletions: Option<usize>,
    branch_cap: u64,
    json: bool,
    witness_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let d = deletions.or(system.deletion_budget()).unwrap_or(0);
    let stats = classify(system);
    let start = Instant::now();
    let (used, res) = dispatch(system, solver, d, &SolveOptions::with_cap(branch_cap));
    let ms = start.elapsed().as_secs_f64() * 1e3;

    let outcome = match res {
        Ok(o) => o,
        Err(e) => {
            if json {
                let report = Report {
                    status: "ERROR",
                    witness: None,
                    stats,
                    solver: used.name(),
                    branches: 0,
                    ms,
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            }
            return Err(Failure(e.to_string()));
        }
    };
    if let Status::Sat(a) = &outcome.status {
        let verdict = if d == 0 {
            verify(system, a)
        } else {
            verify_deletions(system, a, d)
        };
        if let Some(f) = verdict.failure() {
            return Err(Failure(format!(
                "witness failed verification: {}",
                f.describe(system)
            )));
        }
        if let Some(path) = witness_path {
            fs::write(path, render_assignment(system, a))
                .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        }
    }
    let (status, code) = match outcome.status {
        Status::Sat(_) => ("SAT", EXIT_SAT),
        Status::Unsat => ("UNSAT", EXIT_UNSAT),
    };
    if json {
        let report = Report {
            status,
            witness: outcome.witness().map(|a| witness_json(system, a)),
            stats,
            solver: used.name(),
            branches: outcome.branches_explored,
            ms,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        writeln!(out, "# status: {status}")?;
        writeln!(out, "# solver: {}", used.name())?;
        writeln!(out, "# stats: {stats}")?;
        writeln!(out, "# branches: {}", outcome.branches_explored)?;
        writeln!(out, "# ms: {ms:.3}")?;
        if let Some(a) = outcome.witness() {
            write!(out, "{}", render_assignment(system, a))?;
        }
    }
    Ok(code)
}

fn clique_reduction(kind: GenKind, g: &Graph, kappa: usize) -> Result<ReductionOutput, Failure> {
    Ok(match kind {
        GenKind::Clique1Eq => gen_clique_single_eq(g, kappa)?,
        GenKind::Clique2Eq => gen_clique_two_eq(g, kappa)?,
        GenKind::Clique2EqEmpty => gen_clique_two_eq_empty(g, kappa)?,
        GenKind::MccSize3 => gen_mcc_size3(g, kappa)?,
        GenKind::CliqueMixed => gen_clique_mixed(g, kappa)?,
        GenKind::LcsMulti | GenKind::LcsSingle => {
            return Err(Failure("lcs kinds are not graph reductions".into()))
        }
    })
}

fn generate(
    kind: GenKind,
    graph: Option<&Path>,
    kappa: Option<usize>,
    strings: Option<&Path>,
    lambda: Option<usize>,
    deletions: Option<usize>,
) -> Result<System, Failure> {
    match kind {
        GenKind::LcsMulti | GenKind::LcsSingle => {
            let path = strings.ok_or_else(|| Failure("--strings is required".into()))?;
            let list = parse_strings(&read(path)?);
            if kind == GenKind::LcsMulti {
                let emb = gen_from_lcs_multi(&list)?;
                Ok(match lambda {
                    Some(l) => emb.system.with_deletion_budget(Some(emb.budget(l)?)),
                    None => emb.system,
                })
            } else {
                let d = deletions.ok_or_else(|| Failure("--deletions is required".into()))?;
                Ok(gen_from_lcs_single(&list, d)?)
            }
        }
        _ => {
            let path = graph.ok_or_else(|| Failure("--graph is required".into()))?;
            let kappa = kappa.ok_or_else(|| Failure("--kappa is required".into()))?;
            Ok(clique_reduction(kind, &load_graph(path)?, kappa)?.system)
        }
    }
}
