//! Command-line front end. [`run`] parses arguments and returns the exit code.
//!
//! Exit codes: 0 success, 1 a hypothesis fails, 2 invalid instance,
//! 3 unparseable document, 4 soundness alarm, 5 I/O failure.

mod file;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::{chain_components, chain_metric};
use crate::contraction::{global_contraction_factor, minimal_alpha, ordered_contraction_factor, ContractionKind, DEFAULT_GRID_STEP};
use crate::lab::{
    reduce_to_banach, search_counterexamples, validate_theorem1, validate_theorem2, validate_theorem5, Evidence,
    Instance, LabError, SearchConfig, SearchWitness, Status, Theorem, TheoremReport,
};
use crate::picard::{all_orbits, classify, Limit, PicardResult};
use crate::space::{PointId, DEFAULT_TOLERANCE};

pub use file::{InstanceError, InstanceFile, MetricSpec, OrderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_ALARM: i32 = 4;
pub const EXIT_IO: i32 = 5;

const AFTER_HELP: &str = "\
Environment:
  ORDFIX_TOLERANCE  default for --tolerance (1e-9)

Exit codes:
  0  success (hypotheses and conclusion hold)
  1  some hypothesis fails; the conclusion is not asserted
  2  the instance is invalid (metric, order or map)
  3  the instance document cannot be parsed
  4  soundness alarm: hypotheses hold but the conclusion fails
  5  file could not be read or written";

#[derive(Debug, Parser)]
#[command(name = "ordfix", version, about = "Fixed-point checks on finite ordered metric spaces", after_help = AFTER_HELP)]
struct Cli {
    /// Slack on every inequality check.
    #[arg(long, global = true, env = "ORDFIX_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Print the machine-readable report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { path: PathBuf },
    /// Check the hypotheses and conclusion of a fixed-point theorem.
    Check {
        path: PathBuf,
        #[arg(long)]
        theorem: Theorem,
        /// Contraction factor for T5; without it the grid 0.1..0.9 is tried.
        #[arg(long)]
        alpha: Option<f64>,
        /// Also evaluate the T5 premise with d(y,Ty) in place of d(y,Tx).
        #[arg(long)]
        compare_dual: bool,
        /// Step of the grid used to report a minimal contraction factor.
        #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
        grid_step: f64,
    },
    /// Build the chain metric and transfer the contraction factor to it.
    Reduce { path: PathBuf },
    /// Iterate the map and report orbits.
    Solve {
        path: PathBuf,
        /// Start point name; every point when omitted.
        #[arg(long)]
        start: Option<String>,
    },
    /// Look for counterexamples with one hypothesis dropped.
    Search {
        #[arg(long)]
        theorem: Theorem,
        /// Hypothesis id to drop, or "none".
        #[arg(long, default_value = "none")]
        drop: String,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of points: "k" or "a..b" (inclusive).
        #[arg(long, default_value = "3..6")]
        n: SizeRange,
        /// Directory for witness files and the summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SizeRange(usize, usize);

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad size {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let k = parse(s)?;
                (k, k)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("size range {s:?} must satisfy 1 <= a <= b"));
        }
        Ok(SizeRange(lo, hi))
    }
}

/// A finished command: exit code, JSON report and human summary.
struct Outcome {
    code: i32,
    report: Value,
    summary: String,
}

impl Outcome {
    fn failure(code: i32, error: Value, summary: String) -> Self {
        Outcome { code, report: json!({ "error": error }), summary }
    }
}

#[derive(Serialize)]
struct Header<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    tolerance: f64,
    grid_step: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn header(command: &str, tol: f64, grid_step: f64, seed: Option<u64>) -> Value {
    serde_json::to_value(Header {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        tolerance: tol,
        grid_step,
        seed,
    })
    .expect("header serializes")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Parses `args` (including the program name), runs the command and prints
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let json_out = cli.json;
    let outcome = execute(cli);
    if json_out {
        println!("{}", serde_json::to_string_pretty(&outcome.report).expect("report serializes"));
    } else if outcome.code == EXIT_OK || outcome.code == EXIT_HYPOTHESIS || outcome.code == EXIT_ALARM {
        print!("{}", outcome.summary);
    } else {
        eprint!("{}", outcome.summary);
    }
    outcome.code
}

fn execute(cli: Cli) -> Outcome {
    let tol = cli.tolerance;
    if !(tol.is_finite() && tol >= 0.0) {
        return Outcome::failure(
            EXIT_VALIDATION,
            json!({ "error": "bad_tolerance", "tolerance": tol.to_string() }),
            format!("error: tolerance {tol} must be finite and nonnegative\n"),
        );
    }
    match cli.command {
        Command::Validate { path } => cmd_validate(&path, tol),
        Command::Check { path, theorem, alpha, compare_dual, grid_step } => {
            cmd_check(&path, theorem, alpha, compare_dual, grid_step, tol)
        }
        Command::Reduce { path } => cmd_reduce(&path, tol),
        Command::Solve { path, start } => cmd_solve(&path, start.as_deref(), tol),
        Command::Search { theorem, drop, budget, seed, n, out } => {
            let drop = (drop != "none").then_some(drop);
            cmd_search(theorem, drop, budget, seed, n, out.as_deref(), tol)
        }
    }
}

/// Reads, parses and validates an instance file.
pub fn load_instance(path: &Path, tol: f64) -> Result<(InstanceFile, Instance), (i32, Value, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        let msg = format!("cannot read {}: {e}", path.display());
        (EXIT_IO, json!({ "error": "io", "message": msg }), msg)
    })?;
    let file: InstanceFile = serde_json::from_str(&text).map_err(|e| {
        let msg = format!("cannot parse {}: {e}", path.display());
        (EXIT_PARSE, json!({ "error": "parse", "message": msg, "line": e.line(), "column": e.column() }), msg)
    })?;
    let instance = file.to_instance(tol).map_err(|e| {
        let msg = format!("invalid instance {}: {e}", path.display());
        (EXIT_VALIDATION, json!({ "error": "validation", "message": msg, "detail": to_json(&e) }), msg)
    })?;
    Ok((file, instance))
}

macro_rules! load_or_fail {
    ($path:expr, $tol:expr) => {
        match load_instance($path, $tol) {
            Ok(loaded) => loaded,
            Err((code, error, msg)) => return Outcome::failure(code, error, format!("error: {msg}\n")),
        }
    };
}

fn cmd_validate(path: &Path, tol: f64) -> Outcome {
    let (file, instance) = load_or_fail!(path, tol);
    let report = merge(
        header("validate", tol, DEFAULT_GRID_STEP, instance.seed),
        json!({
            "valid": true,
            "instance": file,
            "points": instance.size(),
            "order_kind": instance.space.order().kind(),
        }),
    );
    let summary = format!("{}: valid ({} points, {:?} order)\n", path.display(), instance.size(), instance.space.order().kind());
    Outcome { code: EXIT_OK, report, summary }
}

fn verdict_code(report: &TheoremReport) -> i32 {
    if report.soundness_alarm {
        EXIT_ALARM
    } else if !report.hypotheses_hold {
        EXIT_HYPOTHESIS
    } else {
        EXIT_OK
    }
}

fn cmd_check(path: &Path, theorem: Theorem, alpha: Option<f64>, compare_dual: bool, grid_step: f64, tol: f64) -> Outcome {
    let started = Instant::now();
    let (file, instance) = load_or_fail!(path, tol);
    let result = match theorem {
        Theorem::T1 => validate_theorem1(&instance, tol),
        Theorem::T2 => validate_theorem2(&instance, tol),
        Theorem::T5 => validate_theorem5(&instance, alpha, compare_dual, tol),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            return Outcome::failure(EXIT_VALIDATION, to_json(&e), format!("error: {e}\n"));
        }
    };
    let kind = match theorem {
        Theorem::T5 => ContractionKind::WeakG,
        _ => ContractionKind::OrderedD,
    };
    let grid_alpha = match minimal_alpha(&instance.space, &instance.map, kind, grid_step, tol) {
        Ok(a) => a,
        Err(e) => return Outcome::failure(EXIT_VALIDATION, to_json(&e), format!("error: {e}\n")),
    };
    let e = chain_metric(&instance.space);
    let code = verdict_code(&report);
    let summary = theorem_summary(&instance, &report, grid_alpha);
    let body = json!({
        "instance": file,
        "point_ids": instance.names,
        "report": report,
        "minimal_alpha": { "kind": kind, "alpha": grid_alpha },
        "chain_metric": e,
        "elapsed_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    Outcome { code, report: merge(header("check", tol, grid_step, instance.seed), body), summary }
}

fn name(instance: &Instance, p: PointId) -> &str {
    &instance.names[p.0]
}

fn describe(instance: &Instance, evidence: &Evidence) -> String {
    let nm = |p: PointId| name(instance, p).to_string();
    match evidence {
        Evidence::Contraction { report } => {
            let mut s = format!("alpha* = {}", report.alpha_star);
            if let Some(w) = &report.witness {
                let _ = write!(s, ", witness ({}, {})", nm(w.x), nm(w.y));
            }
            s
        }
        Evidence::AlphaGrid { trials, report } => {
            let passing: Vec<String> = trials.iter().filter(|t| t.verdict).map(|t| t.alpha.to_string()).collect();
            match (passing.first(), &report.witness) {
                (Some(first), _) => format!("passes at alpha = {first} ({} of {} tried)", passing.len(), trials.len()),
                (None, Some(w)) => format!(
                    "fails at all {} alphas, e.g. pair ({}, {}) at alpha = {}",
                    trials.len(),
                    nm(w.x),
                    nm(w.y),
                    w.alpha
                ),
                (None, None) => format!("fails at all {} alphas", trials.len()),
            }
        }
        Evidence::Pair { x, y } => format!("pair ({}, {})", nm(*x), nm(*y)),
        Evidence::Disconnected { components, x, y } => {
            format!("{components} chain components, e.g. {} and {} unjoined", nm(*x), nm(*y))
        }
        Evidence::Points { points } => {
            let names: Vec<String> = points.iter().map(|p| nm(*p)).collect();
            format!("{{{}}}", names.join(", "))
        }
        Evidence::SelfClosed { report } => match &report.witness {
            None => format!("{} ascending orbits, all dominated", report.ascending_orbits),
            Some(w) => format!("{w:?}"),
        },
        Evidence::Note { note } => note.clone(),
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "FAILS",
        Status::AutoSatisfied => "auto",
        Status::NotApplicable => "n/a",
    }
}

fn theorem_summary(instance: &Instance, report: &TheoremReport, grid_alpha: Option<f64>) -> String {
    let mut s = String::new();
    let label = if instance.label.is_empty() { "instance" } else { instance.label.as_str() };
    let _ = writeln!(
        s,
        "{} on {label}: hypotheses {}, conclusion {} {}",
        report.theorem,
        if report.hypotheses_hold { "hold" } else { "fail" },
        report.theorem.conclusion(),
        if report.conclusion { "holds" } else { "fails" },
    );
    for h in &report.hypotheses {
        let detail = h.evidence.as_ref().map(|e| describe(instance, e)).unwrap_or_default();
        let _ = writeln!(s, "  {:<15} {:<6} {detail}", h.id, status_word(h.status));
    }
    for d in &report.derivations {
        let _ = writeln!(s, "  {} => {}: {} => {}", d.premise, d.consequence, d.premise_holds, d.consequence_holds);
    }
    if let Some(red) = &report.reduction {
        let _ = writeln!(s, "  chain-metric factor {} (reduction {})", red.e_report.alpha_star, red.verdict);
    }
    if let Some(dual) = &report.dual_premise {
        let _ = writeln!(s, "  c03 with d(y,Ty): {}", describe(instance, dual));
    }
    match grid_alpha {
        Some(a) => {
            let _ = writeln!(s, "  smallest grid factor: {a}");
        }
        None => {
            let _ = writeln!(s, "  no grid factor below 1 passes");
        }
    }
    let fixed: Vec<&str> = report.classification.fixed_points.iter().map(|p| name(instance, *p)).collect();
    let _ = writeln!(s, "  fixed points: {{{}}}", fixed.join(", "));
    if report.soundness_alarm {
        let _ = writeln!(s, "SOUNDNESS ALARM: hypotheses hold but the conclusion fails");
    }
    s
}

fn cmd_reduce(path: &Path, tol: f64) -> Outcome {
    let started = Instant::now();
    let (file, instance) = load_or_fail!(path, tol);
    let (space, map) = (&instance.space, &instance.map);
    let e = chain_metric(space);
    let components = chain_components(space);
    let d_report = ordered_contraction_factor(space, map);
    let e_report = global_contraction_factor(&e, map);
    let (code, verdict, not_applicable) = match reduce_to_banach(&instance, tol) {
        Ok(r) if r.verdict => (EXIT_OK, Some(true), None),
        Ok(_) => (EXIT_ALARM, Some(false), None),
        Err(LabError::NotApplicable { id }) => (EXIT_HYPOTHESIS, None, Some(id)),
        Err(other) => return Outcome::failure(EXIT_VALIDATION, to_json(&other), format!("error: {other}\n")),
    };

    let mut s = String::new();
    let _ = writeln!(s, "chain metric ({} component{}):", components.components.len(), if components.components.len() == 1 { "" } else { "s" });
    let width = instance.names.iter().map(String::len).max().unwrap_or(1).max(6);
    for (i, row) in e.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", v.to_string())).collect();
        let _ = writeln!(s, "  {:>width$} {}", instance.names[i], cells.join(" "));
    }
    let _ = writeln!(s, "ordered d-factor: {}", d_report.alpha_star);
    let _ = writeln!(s, "global e-factor:  {}{}", e_report.alpha_star, if e_report.extended_regime { " (extended regime)" } else { "" });
    match (&verdict, &not_applicable) {
        (Some(v), _) => {
            let _ = writeln!(s, "reduction verdict: {v}");
        }
        (None, Some(id)) => {
            let _ = writeln!(s, "reduction not applicable: {id} fails");
        }
        _ => {}
    }
    if code == EXIT_ALARM {
        let _ = writeln!(s, "SOUNDNESS ALARM: hypotheses hold but the factor does not transfer");
    }

    let body = json!({
        "instance": file,
        "point_ids": instance.names,
        "chain_metric": e,
        "components": components.components,
        "d_factor": d_report,
        "e_factor": e_report,
        "verdict": verdict,
        "not_applicable": not_applicable,
        "elapsed_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    Outcome { code, report: merge(header("reduce", tol, DEFAULT_GRID_STEP, instance.seed), body), summary: s }
}

#[derive(Serialize)]
struct NamedOrbit<'a> {
    start: &'a str,
    orbit: Vec<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed_point: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle: Option<Vec<&'a str>>,
    steps_to_limit: usize,
    reached_fixed_point: bool,
    ascending: bool,
    limit_dominates: bool,
}

fn named_orbit<'a>(instance: &'a Instance, r: &PicardResult) -> NamedOrbit<'a> {
    let names = |ps: &[PointId]| ps.iter().map(|p| name(instance, *p)).collect::<Vec<_>>();
    let (fixed_point, cycle) = match &r.limit {
        Limit::Fixed(z) => (Some(name(instance, *z)), None),
        Limit::Cycle(c) => (None, Some(names(c))),
    };
    NamedOrbit {
        start: name(instance, r.start),
        orbit: names(&r.orbit),
        fixed_point,
        cycle,
        steps_to_limit: r.steps_to_limit,
        reached_fixed_point: r.reached_fixed_point,
        ascending: r.ascending,
        limit_dominates: r.limit_dominates,
    }
}

fn cmd_solve(path: &Path, start: Option<&str>, tol: f64) -> Outcome {
    let started = Instant::now();
    let (file, instance) = load_or_fail!(path, tol);
    let orbits = all_orbits(&instance.space, &instance.map).expect("validated instance");
    let chosen: Vec<&PicardResult> = match start {
        None => orbits.iter().collect(),
        Some(s) => match instance.names.iter().position(|n| n == s) {
            Some(i) => vec![&orbits[i]],
            None => {
                let err = json!({ "error": "unknown_point", "name": s });
                return Outcome::failure(EXIT_VALIDATION, err, format!("error: unknown start point {s:?}\n"));
            }
        },
    };
    let classification = classify(&instance.space, &instance.map).expect("validated instance");
    let named: Vec<NamedOrbit> = chosen.iter().map(|r| named_orbit(&instance, r)).collect();

    let mut s = String::new();
    for o in &named {
        let path = o.orbit.join(" -> ");
        match (&o.fixed_point, &o.cycle) {
            (Some(z), _) => {
                let _ = writeln!(s, "{path}: fixed point {z} after {} steps", o.steps_to_limit);
            }
            (_, Some(c)) => {
                let _ = writeln!(s, "{path} -> ...: cycle ({}) entered after {} steps", c.join(" "), o.steps_to_limit);
            }
            _ => {}
        }
    }
    let fixed: Vec<&str> = classification.fixed_points.iter().map(|p| name(&instance, *p)).collect();
    let _ = writeln!(s, "fixed points: {{{}}}; picard (plain) {}; picard (ordered) {}", fixed.join(", "), classification.picard_plain, classification.picard_ordered);

    let body = json!({
        "instance": file,
        "point_ids": instance.names,
        "orbits": named,
        "fixed_points": fixed,
        "classification": classification,
        "elapsed_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    Outcome { code: EXIT_OK, report: merge(header("solve", tol, DEFAULT_GRID_STEP, instance.seed), body), summary: s }
}

/// The report written next to each witness file; no timing, so reruns are byte-identical.
fn witness_report(w: &SearchWitness, file_name: &str, tol: f64) -> Value {
    merge(
        header("search", tol, DEFAULT_GRID_STEP, Some(w.seed)),
        json!({
            "index": w.index,
            "instance_file": file_name,
            "generator": w.config,
            "dropped": w.dropped,
            "violated_conclusion": w.violated_conclusion,
            "point_ids": w.instance.names,
            "report": w.report,
        }),
    )
}

fn write_json(path: &Path, value: &impl Serialize) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text)
}

fn cmd_search(
    theorem: Theorem,
    drop: Option<String>,
    budget: usize,
    seed: u64,
    n: SizeRange,
    out: Option<&Path>,
    tol: f64,
) -> Outcome {
    if budget == 0 {
        let err = json!({ "error": "bad_budget" });
        return Outcome::failure(EXIT_VALIDATION, err, "error: budget must be at least 1\n".into());
    }
    let config = SearchConfig { theorem, drop, budget, base_seed: seed, n_min: n.0, n_max: n.1, tol };
    let outcome = match search_counterexamples(&config) {
        Ok(o) => o,
        Err(e) => return Outcome::failure(EXIT_VALIDATION, to_json(&e), format!("error: {e}\n")),
    };

    let entry = |prefix: &str, w: &SearchWitness| {
        let file = format!("{prefix}-{:04}.json", w.index);
        json!({ "index": w.index, "seed": w.seed, "file": file, "fixed_points": w.report.classification.fixed_points.len() })
    };
    let witnesses: Vec<Value> = outcome.witnesses.iter().map(|w| entry("witness", w)).collect();
    let alarms: Vec<Value> = outcome.alarms.iter().map(|w| entry("alarm", w)).collect();
    let summary_json = merge(
        header("search", tol, DEFAULT_GRID_STEP, Some(seed)),
        json!({
            "search": config,
            "examined": outcome.examined,
            "generation_failures": outcome.generation_failures,
            "filtered_out": outcome.filtered_out,
            "witness_count": outcome.witnesses.len(),
            "witnesses": witnesses,
            "alarms": alarms,
        }),
    );

    if let Some(dir) = out {
        let written = (|| -> std::io::Result<()> {
            std::fs::create_dir_all(dir)?;
            for (prefix, list) in [("witness", &outcome.witnesses), ("alarm", &outcome.alarms)] {
                for w in list {
                    let file = format!("{prefix}-{:04}.json", w.index);
                    write_json(&dir.join(&file), &InstanceFile::from_instance(&w.instance))?;
                    let report = format!("{prefix}-{:04}.report.json", w.index);
                    write_json(&dir.join(report), &witness_report(w, &file, tol))?;
                }
            }
            write_json(&dir.join("summary.json"), &summary_json)
        })();
        if let Err(e) = written {
            let msg = format!("cannot write to {}: {e}", dir.display());
            return Outcome::failure(EXIT_IO, json!({ "error": "io", "message": msg }), format!("error: {msg}\n"));
        }
    }

    let mut s = String::new();
    let dropped = config.drop.as_deref().unwrap_or("none");
    let _ = writeln!(
        s,
        "{theorem} drop {dropped}: {} witnesses from {} instances ({} filtered, {} generation failures)",
        outcome.witnesses.len(),
        outcome.examined,
        outcome.filtered_out,
        outcome.generation_failures
    );
    for w in &outcome.witnesses {
        let _ = writeln!(s, "  #{:<5} seed {:<20} {} points, {} fixed points", w.index, w.seed, w.instance.size(), w.report.classification.fixed_points.len());
    }
    let code = if outcome.alarms.is_empty() {
        EXIT_OK
    } else {
        let _ = writeln!(s, "SOUNDNESS ALARM on {} instances", outcome.alarms.len());
        EXIT_ALARM
    };
    Outcome { code, report: summary_json, summary: s }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_ranges() {
        assert_eq!("5".parse::<SizeRange>(), Ok(SizeRange(5, 5)));
        assert_eq!("3..6".parse::<SizeRange>(), Ok(SizeRange(3, 6)));
        assert_eq!("3..=6".parse::<SizeRange>(), Ok(SizeRange(3, 6)));
        assert!("0".parse::<SizeRange>().is_err());
        assert!("6..3".parse::<SizeRange>().is_err());
        assert!("x".parse::<SizeRange>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
