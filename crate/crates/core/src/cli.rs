//! Command-line front end.
//!
//! [`parse_command`] turns argv into a validated [`Invocation`]; [`run`] evaluates
//! it into an exit code and the text for each output stream. Exit codes are 0 on
//! success, 1 on domain errors and 2 on usage errors. Every error produces
//! exactly one diagnostic line.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::diffhier::{self, OpenSequence, RankCondition, RankSet};
use crate::engine::{self, LevelDescription, LevelKind, LevelLabel, RenderWindow, WadgeInvariant};
use crate::oracle::{self, GeneratorConfig, TermFilter};
use crate::ordinal::{ExtOrdinal, Ordinal};
use crate::space::{self, parse_term, SpaceTerm};

#[derive(Parser, Debug)]
#[command(name = "wadge", version, about = "Wadge hierarchies of zero-dimensional Polish spaces")]
struct Args {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Sampling depth for point enumeration.
    #[arg(long, global = true, default_value_t = 8)]
    depth: u64,
    /// Seed for generated terms.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: RawCommand,
}

#[derive(Subcommand, Debug)]
enum RawCommand {
    /// Print the invariant (alpha, theta).
    Invariants { term: String },
    /// Print the length of the hierarchy.
    Theta { term: String },
    /// Print the least level from which limit levels are nonselfdual.
    Alpha { term: String },
    /// Describe one level of the hierarchy.
    Level { term: String, level: String },
    /// List the levels below a bound.
    Hierarchy {
        term: String,
        up_to: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a space with the given invariant.
    Realize { alpha: String, theta: String },
    /// Decide whether two spaces have isomorphic hierarchies.
    Same { left: String, right: String },
    /// Express the rank-parity set opposite to alpha as a difference of open sets.
    DiffWitness { term: String, alpha: String },
    /// Sample the reductions between A_alpha and the complete Baire set.
    VerifyReduction { alpha: String },
    /// Compare CB-types with the order-type oracle on generated terms.
    OracleCheck {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Command {
    Invariants(SpaceTerm),
    Theta(SpaceTerm),
    Alpha(SpaceTerm),
    Level(SpaceTerm, Ordinal),
    Hierarchy(SpaceTerm, Ordinal, Format),
    Realize(ExtOrdinal, ExtOrdinal),
    Same(SpaceTerm, SpaceTerm),
    DiffWitness(SpaceTerm, Ordinal),
    VerifyReduction(Ordinal),
    OracleCheck { count: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Invocation {
    pub command: Command,
    pub json: bool,
    pub depth: u64,
    pub seed: u64,
}

/// The result of running a command.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Outcome {
        let line = msg.to_string().lines().next().unwrap_or_default().trim().to_string();
        Outcome { code, stdout: String::new(), stderr: format!("error: {line}\n") }
    }
}

/// Parses argv (without the program name) into a validated invocation.
pub fn parse_command<S: AsRef<str>>(argv: &[S]) -> Result<Invocation, Outcome> {
    let full = std::iter::once("wadge").chain(argv.iter().map(AsRef::as_ref));
    let args = match Args::try_parse_from(full) {
        Ok(args) => args,
        Err(e) => {
            use clap::error::ErrorKind;
            return Err(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
                _ => Outcome::fail(2, e.to_string().trim_start_matches("error: ")),
            });
        }
    };
    let term = |s: &str| parse_term(s).map_err(|e| Outcome::fail(2, format!("term {s:?}: {e}")));
    let ordinal =
        |s: &str| s.parse::<Ordinal>().map_err(|e| Outcome::fail(2, format!("ordinal {s:?}: {e}")));
    let ext = |s: &str| {
        s.parse::<ExtOrdinal>().map_err(|e| Outcome::fail(2, format!("ordinal {s:?}: {e}")))
    };
    let command = match args.command {
        RawCommand::Invariants { term: t } => Command::Invariants(term(&t)?),
        RawCommand::Theta { term: t } => Command::Theta(term(&t)?),
        RawCommand::Alpha { term: t } => Command::Alpha(term(&t)?),
        RawCommand::Level { term: t, level } => Command::Level(term(&t)?, ordinal(&level)?),
        RawCommand::Hierarchy { term: t, up_to, format } => {
            Command::Hierarchy(term(&t)?, ordinal(&up_to)?, format)
        }
        RawCommand::Realize { alpha, theta } => Command::Realize(ext(&alpha)?, ext(&theta)?),
        RawCommand::Same { left, right } => Command::Same(term(&left)?, term(&right)?),
        RawCommand::DiffWitness { term: t, alpha } => Command::DiffWitness(term(&t)?, ordinal(&alpha)?),
        RawCommand::VerifyReduction { alpha } => Command::VerifyReduction(ordinal(&alpha)?),
        RawCommand::OracleCheck { count } => Command::OracleCheck { count },
    };
    Ok(Invocation { command, json: args.json, depth: args.depth, seed: args.seed })
}

/// Parses and runs argv, never panicking on bad input.
pub fn main_with_args<S: AsRef<str>>(argv: &[S]) -> Outcome {
    match parse_command(argv) {
        Ok(inv) => run(&inv),
        Err(outcome) => outcome,
    }
}

pub fn run(inv: &Invocation) -> Outcome {
    match execute(inv) {
        Ok(doc) => Outcome::ok(doc),
        Err(msg) => Outcome::fail(1, msg),
    }
}

fn emit(inv: &Invocation, text: String, value: Value) -> String {
    if inv.json {
        format!("{value}\n")
    } else {
        format!("{text}\n")
    }
}

fn execute(inv: &Invocation) -> Result<String, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match &inv.command {
        Command::Invariants(t) => {
            let w = engine::wadge_invariant(t).map_err(|e| err(&e))?;
            Ok(emit(inv, format!("alpha = {}\ntheta = {}", w.alpha, w.theta), invariant_json(&w)))
        }
        Command::Theta(t) => {
            let theta = engine::theta_of(t).map_err(|e| err(&e))?;
            Ok(emit(inv, theta.to_string(), json!(theta.to_string())))
        }
        Command::Alpha(t) => {
            let alpha = engine::alpha_of(t).map_err(|e| err(&e))?;
            Ok(emit(inv, alpha.to_string(), json!(alpha.to_string())))
        }
        Command::Level(t, a) => {
            let d = engine::describe_level(t, a).map_err(|e| err(&e))?;
            Ok(emit(inv, level_line(&d), level_json(&d)))
        }
        Command::Hierarchy(t, up_to, format) => hierarchy(inv, t, up_to, *format),
        Command::Realize(alpha, theta) => {
            let w = WadgeInvariant { alpha: alpha.clone(), theta: theta.clone() };
            let t = engine::realize_invariant(&w).map_err(|e| err(&e))?;
            let mut value = invariant_json(&w);
            value["term"] = json!(t.to_string());
            Ok(emit(inv, t.to_string(), value))
        }
        Command::Same(a, b) => {
            let same = engine::same_hierarchy(a, b).map_err(|e| err(&e))?;
            Ok(emit(inv, same.to_string(), json!(same)))
        }
        Command::DiffWitness(t, alpha) => diff_witness(inv, t, alpha),
        Command::VerifyReduction(alpha) => {
            let w = diffhier::reduction_for_a(alpha);
            let report = diffhier::verify_reduction(&w, inv.depth).map_err(|e| err(&e))?;
            if report.mismatches > 0 {
                return Err(format!(
                    "{} of {} sampled points disagree, e.g. {}",
                    report.mismatches,
                    report.checked,
                    report.example.unwrap_or_default()
                ));
            }
            let text = format!(
                "alpha = {alpha}, depth = {}: checked {} points, 0 mismatches{}",
                inv.depth,
                report.checked,
                if report.truncated { " (point budget reached)" } else { "" }
            );
            Ok(emit(inv, text, serde_json::to_value(&report).expect("serializable")))
        }
        Command::OracleCheck { count } => oracle_check(inv, *count),
    }
}

pub fn invariant_json(w: &WadgeInvariant) -> Value {
    json!({"alpha": w.alpha.to_string(), "theta": w.theta.to_string()})
}

fn kind_tag(kind: LevelKind) -> &'static str {
    match kind {
        LevelKind::SelfdualDegree => "sd",
        LevelKind::NonselfdualPair => "nsd",
    }
}

pub fn level_json(d: &LevelDescription) -> Value {
    let label = match &d.label {
        LevelLabel::DifferenceClassPair(b) => json!({"type": "DifferenceClassPair", "index": b.to_string()}),
        LevelLabel::SelfdualSupremum(b) => json!({"type": "SelfdualSupremum", "index": b.to_string()}),
        other => json!({"type": other.to_string()}),
    };
    json!({"level": d.level.to_string(), "kind": kind_tag(d.kind), "label": label})
}

fn level_line(d: &LevelDescription) -> String {
    let kind = match d.kind {
        LevelKind::SelfdualDegree => "sd",
        LevelKind::NonselfdualPair => "nsd-pair",
    };
    format!("{:>12}  {:<8}  {}", d.level.to_string(), kind, d.label)
}

fn hierarchy(inv: &Invocation, t: &SpaceTerm, up_to: &Ordinal, format: Format) -> Result<String, String> {
    let theta = engine::theta_of(t).map_err(|e| e.to_string())?;
    let r = engine::hierarchy_render_with(t, up_to, &RenderWindow::default()).map_err(|e| e.to_string())?;
    let as_json = inv.json || format == Format::Json;
    if as_json {
        let levels: Vec<Value> = r.levels.iter().map(level_json).collect();
        let doc = json!({
            "term": t.to_string(),
            "up_to": up_to.to_string(),
            "theta": theta.to_string(),
            "truncated": r.truncated,
            "levels": levels,
        });
        return Ok(format!("{doc}\n"));
    }
    let mut out = format!("# hierarchy of {t} below {up_to} (theta = {theta})\n");
    if r.truncated {
        out.push_str("# only levels with CNF coefficients up to 6 are listed\n");
    }
    if theta.is_big_theta() {
        out.push_str("# limit levels of uncountable cofinality are not representable; they are nsd-pairs\n");
    }
    for d in &r.levels {
        out.push_str(&level_line(d));
        out.push('\n');
    }
    Ok(out)
}

fn diff_witness(inv: &Invocation, t: &SpaceTerm, alpha: &Ordinal) -> Result<String, String> {
    let set = RankSet { space: t.clone(), condition: RankCondition::Parity(alpha.parity().flip()) };
    let w = diffhier::difference_witness(&set).map_err(|e| e.to_string())?;
    let points = diffhier::enumerate_points(t, inv.depth).map_err(|e| e.to_string())?;
    let mut agree = 0u64;
    for p in &points {
        let lhs = diffhier::eval_difference(&w.opens, &w.beta, t, p).map_err(|e| e.to_string())?;
        if lhs == set.contains(p).map_err(|e| e.to_string())? {
            agree += 1;
        }
    }
    if agree as usize != points.len() {
        return Err(format!("witness disagrees on {} of {} points", points.len() as u64 - agree, points.len()));
    }
    let opens = match &w.opens {
        OpenSequence::RankThresholds => "U_g = rank <= g".to_string(),
        OpenSequence::Explicit(sets) => {
            sets.iter().enumerate().map(|(i, u)| format!("U_{i} = {u}")).collect::<Vec<_>>().join(", ")
        }
    };
    let text = format!("beta = {}\n{opens}\nagrees on {agree} points to depth {}", w.beta, inv.depth);
    let value = json!({"beta": w.beta.to_string(), "opens": opens, "checked": agree, "depth": inv.depth});
    Ok(emit(inv, text, value))
}

fn oracle_check(inv: &Invocation, count: usize) -> Result<String, String> {
    let cfg = GeneratorConfig { seed: inv.seed, filter: TermFilter::CompactCountable, ..Default::default() };
    let mut disagreements = 0u64;
    let mut example = None;
    for t in oracle::generate_terms(cfg).take(count) {
        let structural = space::cb_type(&t).map_err(|e| e.to_string())?;
        let oracle = oracle::cb_type_oracle(&t).map_err(|e| e.to_string())?;
        if structural != oracle {
            disagreements += 1;
            example.get_or_insert(format!("{t}: {structural} vs {oracle}"));
        }
    }
    if let Some(ex) = example {
        return Err(format!("{disagreements} of {count} terms disagree, e.g. {ex}"));
    }
    let text = format!("{count} compact countable terms, 0 disagreements (seed {})", inv.seed);
    Ok(emit(inv, text, json!({"checked": count, "disagreements": 0, "seed": inv.seed})))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmd(argv: &[&str]) -> Command {
        parse_command(argv).unwrap().command
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            cmd(&["invariants", "sum(C, Y(w))"]),
            Command::Invariants(parse_term("sum(C, Y(w))").unwrap())
        );
        assert_eq!(
            cmd(&["level", "Z(w)", "w"]),
            Command::Level(SpaceTerm::Z(Ordinal::omega()), Ordinal::omega())
        );
        assert_eq!(
            cmd(&["realize", "w+1", "T"]),
            Command::Realize(ExtOrdinal::Countable(Ordinal::omega().successor()), ExtOrdinal::BigTheta)
        );
        let inv = parse_command(&["--json", "theta", "1", "--depth", "3"]).unwrap();
        assert!(inv.json);
        assert_eq!(inv.depth, 3);
    }

    #[test]
    fn usage_errors_exit_two() {
        for argv in [vec!["theta", "K("], vec!["frobnicate"], vec!["level", "1", "w+"], vec![]] {
            let out = main_with_args(&argv);
            assert_eq!(out.code, 2, "{argv:?}");
            assert_eq!(out.stderr.lines().count(), 1);
            assert!(out.stdout.is_empty());
        }
    }

    #[test]
    fn runs_examples() {
        let out = main_with_args(&["--json", "invariants", "N"]);
        assert_eq!(out.stdout, "{\"alpha\":\"T\",\"theta\":\"T\"}\n");
        assert_eq!(main_with_args(&["theta", "1"]).stdout, "2\n");
        assert_eq!(main_with_args(&["same", "N", "w*C"]).stdout, "true\n");
    }

    #[test]
    fn domain_errors_exit_one() {
        let out = main_with_args(&["realize", "3", "T"]);
        assert_eq!(out.code, 1);
        assert_eq!(out.stderr.lines().count(), 1);
        assert_eq!(main_with_args(&["level", "Y(w)", "w+1"]).code, 1);
        assert_eq!(main_with_args(&["diff-witness", "Y(w)", "1"]).code, 1);
    }
}
