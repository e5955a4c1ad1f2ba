//! Command-line front end. `run` returns the text to print and the exit code so the whole
//! surface is testable without spawning processes.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::classical::{make_datum, t_root_system, ParabolicDatum};
use crate::error::{Error, Result};
use crate::invariants::multiset_cap;
use crate::parse::{parse_index_list, parse_parts, parse_signs, parse_troots};
use crate::rational::{format_rational, BasisTag, Vector};
use crate::report::{check_classical, check_g2, format_troot, paper_report, Report, PAPER_EXAMPLES};
use crate::roots::LieType;
use crate::verify::{grid, sweep, DatumSweep, SweepOptions};

/// Exit code for malformed input.
pub const EXIT_USAGE: i32 = 1;
/// Exit code when `verify-main-theorem` finds a violation.
pub const EXIT_VIOLATION: i32 = 4;

const S_HELP: &str = "t-roots, comma separated. Each is either symbolic or a vector.\n\
Symbolic grammar: [sign][coefficient]d<index> [(+|-)[coefficient]d<index>], e.g. d1-d2, -2d1, d1+d2.\n\
Vectors: (1,-1) or [1/2,0] with one rational per δ-coordinate.\n\
For --type G2 there is a single coordinate: the coefficient of alpha_1.";

#[derive(Debug, Parser)]
#[command(name = "kostant", version, about = "Parabolic subalgebras with prescribed reductive part")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DatumArgs {
    /// gl, B, C or D (check also accepts G2)
    #[arg(long = "type")]
    pub lie_type: String,
    /// n; for gl this is n of gl_n
    #[arg(long)]
    pub rank: Option<usize>,
    /// Parts in order, e.g. "[1,2];[3]"
    #[arg(long, default_value = "")]
    pub parts: String,
    /// The largest part I_0 (Type II), e.g. "[3,4]"
    #[arg(long)]
    pub i0: Option<String>,
    /// One '+'/'-' per index 1..n ('.' allowed on I_0); all '+' when omitted
    #[arg(long)]
    pub signs: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the t-roots of a parabolic datum with their module labels and dimensions
    Troots {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether S lies in a parabolic with the given reductive part
    Check {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long = "S", allow_hyphen_values = true, long_help = S_HELP, default_value = "")]
        s: String,
        /// Invariant degree bound; defaults to 4k + 4
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce one of the fixed examples: B, C, D-nonsat, G2-sat, G2-nonsat, F4, E6, E7, E8
    Paper {
        id: String,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive check of order extension against invariants over a grid of data
    VerifyMainTheorem {
        /// Comma-separated subset of gl,B,C,D
        #[arg(long, default_value = "gl,B,C,D")]
        types: String,
        /// Skip ranks above this
        #[arg(long)]
        max_rank: Option<usize>,
        /// Invariant degree bound; defaults to 4k + 4 per datum
        #[arg(long)]
        max_degree: Option<usize>,
        /// Only saturated S (otherwise non-saturated S are also examined and flagged)
        #[arg(long)]
        saturated_only: bool,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// The datum described by the `--type/--rank/--parts/--i0/--signs` flags.
pub fn build_datum(a: &DatumArgs) -> Result<ParabolicDatum> {
    let lie: LieType = a.lie_type.parse()?;
    let n = a.rank.ok_or_else(|| Error::Parse("--rank is required".into()))?;
    lie.validate_rank(n)?;
    let parts = parse_parts(&a.parts)?;
    let i0 = a.i0.as_deref().map(|s| parse_index_list("--i0", s)).transpose()?;
    let excluded: Vec<usize> = i0.iter().flatten().copied().collect();
    let domain: Vec<usize> = (1..=n).filter(|j| !excluded.contains(j)).collect();
    let signs = match (&a.signs, lie) {
        (Some(s), LieType::Gl) => parse_signs(s, n, &domain)?.into_iter().filter(|&(_, x)| x > 0).collect(),
        (Some(s), _) => parse_signs(s, n, &domain)?,
        (None, _) => domain.iter().map(|&j| (j, 1)).collect(),
    };
    if lie == LieType::Gl && a.signs.as_deref().is_some_and(|s| s.contains('-')) {
        return Err(Error::InvalidDatum("gl_n carries no signs".into()));
    }
    make_datum(lie, n, parts, i0, signs)
}

#[derive(Serialize)]
struct TrootRow {
    delta: Vector,
    name: String,
    dim: usize,
    label: String,
}

#[derive(Serialize)]
struct TrootListing {
    datum: ParabolicDatum,
    troots: Vec<TrootRow>,
}

fn troot_rows(datum: &ParabolicDatum) -> Vec<TrootRow> {
    t_root_system(datum)
        .troots
        .iter()
        .map(|t| TrootRow {
            delta: t.delta.clone(),
            name: format_troot(&t.delta),
            dim: t.dim,
            label: t.label.to_string(),
        })
        .collect()
}

/// The datum and its t-roots as a JSON document.
pub fn troots_json(datum: &ParabolicDatum) -> String {
    let listing = TrootListing { datum: datum.clone(), troots: troot_rows(datum) };
    serde_json::to_string_pretty(&listing).expect("serializable")
}

fn cmd_troots(a: &DatumArgs, json: bool) -> Result<(String, i32)> {
    let datum = build_datum(a)?;
    if json {
        return Ok((troots_json(&datum) + "\n", 0));
    }
    let rows = troot_rows(&datum);
    let mut out = format!("{datum}: {} t-roots\n", rows.len());
    for row in rows {
        let coords: Vec<String> = row.delta.coords.iter().map(format_rational).collect();
        out.push_str(&format!("{:>8}  ({})  dim {}  {}\n", row.name, coords.join(", "), row.dim, row.label));
    }
    Ok((out, 0))
}

fn emit(report: &Report, json: bool) -> (String, i32) {
    let text = if json { report.to_json() + "\n" } else { report.render() };
    (text, report.verdict.exit_code())
}

/// Full report for `S` (in the `--S` syntax) against the datum, or against G2 when the type is G2.
pub fn check_report(a: &DatumArgs, s: &str, max_degree: Option<usize>) -> Result<Report> {
    let lie: LieType = a.lie_type.parse()?;
    if lie == LieType::G2 {
        return check_g2(&parse_troots(s, 1)?, max_degree);
    }
    let datum = build_datum(a)?;
    let set: Vec<Vector> = parse_troots(s, datum.k())?;
    debug_assert!(set.iter().all(|v| v.basis == BasisTag::Delta));
    check_classical(&datum, &set, max_degree)
}

fn cmd_check(a: &DatumArgs, s: &str, max_degree: Option<usize>, json: bool) -> Result<(String, i32)> {
    Ok(emit(&check_report(a, s, max_degree)?, json))
}

fn cmd_paper(id: &str, json: bool) -> Result<(String, i32)> {
    if !PAPER_EXAMPLES.contains(&id) {
        return Err(Error::Parse(format!("unknown example {id:?}; expected one of {}", PAPER_EXAMPLES.join(", "))));
    }
    Ok(emit(&paper_report(id)?, json))
}

#[derive(Serialize)]
struct VerifySummary {
    max_degree: Option<usize>,
    saturated_only: bool,
    cap: String,
    data: usize,
    main_violations: usize,
    t_level_violations: usize,
    nonsaturated_flags: usize,
    capped: usize,
    rows: Vec<DatumSweep>,
}

fn cmd_verify(
    types: &str,
    max_rank: Option<usize>,
    max_degree: Option<usize>,
    saturated_only: bool,
    jobs: Option<usize>,
    json: bool,
) -> Result<(String, i32)> {
    let types: Vec<LieType> = types.split(',').map(|t| t.parse()).collect::<Result<_>>()?;
    if let Some(t) = types.iter().find(|t| !matches!(t, LieType::Gl | LieType::B | LieType::C | LieType::D)) {
        return Err(Error::Unsupported(format!("the grid covers gl, B, C and D, not {t}")));
    }
    let data = grid(&types, max_rank);
    let cap = multiset_cap();
    let opts = SweepOptions { saturated_only, max_degree, cap, invariants: true };
    let rows = sweep(&data, opts, jobs)?;
    let count = |f: fn(&DatumSweep) -> usize| rows.iter().map(f).sum::<usize>();
    let summary = VerifySummary {
        max_degree,
        saturated_only,
        cap: cap.to_string(),
        data: rows.len(),
        main_violations: count(|r| r.main_violations.len()),
        t_level_violations: count(|r| r.t_level_violations.len()),
        nonsaturated_flags: count(|r| r.nonsaturated_flags.len()),
        capped: count(|r| r.capped.len()),
        rows,
    };
    let code = if summary.main_violations + summary.t_level_violations > 0 { EXIT_VIOLATION } else { 0 };
    if json {
        return Ok((serde_json::to_string_pretty(&summary).expect("serializable") + "\n", code));
    }
    let mut out = format!(
        "{:<40} {:>4} {:>3} {:>7} {:>5} {:>5} {:>8} {:>5} {:>5} {:>6}\n",
        "datum", "|R|", "D", "orbits", "sat", "order", "inv-free", "viol", "flag", "capped"
    );
    for r in &summary.rows {
        out.push_str(&format!(
            "{:<40} {:>4} {:>3} {:>7} {:>5} {:>5} {:>8} {:>5} {:>5} {:>6}\n",
            r.datum,
            r.rsh_size,
            r.max_degree,
            r.orbits,
            r.saturated_orbits,
            r.order_exists,
            r.invariant_free,
            r.main_violations.len() + r.t_level_violations.len(),
            r.nonsaturated_flags.len(),
            r.capped.len()
        ));
    }
    for r in &summary.rows {
        for f in r.main_violations.iter().chain(&r.t_level_violations) {
            out.push_str(&format!("VIOLATION {}: S = {{{}}}: {}\n", f.datum, f.s.join(", "), f.detail));
        }
        for f in &r.nonsaturated_flags {
            out.push_str(&format!("flagged {}: S = {{{}}}: {}\n", f.datum, f.s.join(", "), f.detail));
        }
        for f in &r.capped {
            out.push_str(&format!("capped {}: S = {{{}}}: {}\n", f.datum, f.s.join(", "), f.detail));
        }
    }
    out.push_str(&format!(
        "{} data, {} violations, {} t-level violations, {} non-saturated flags, {} capped\n",
        summary.data, summary.main_violations, summary.t_level_violations, summary.nonsaturated_flags, summary.capped
    ));
    Ok((out, code))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    let result = match &cli.command {
        Command::Troots { datum, json } => cmd_troots(datum, *json),
        Command::Check { datum, s, max_degree, json } => cmd_check(datum, s, *max_degree, *json),
        Command::Paper { id, json } => cmd_paper(id, *json),
        Command::VerifyMainTheorem { types, max_rank, max_degree, saturated_only, jobs, json } => {
            cmd_verify(types, *max_rank, *max_degree, *saturated_only, *jobs, *json)
        }
    };
    match result {
        Ok(out) => out,
        Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
    }
}
