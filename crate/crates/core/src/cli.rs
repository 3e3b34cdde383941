//! The `sbp` command line.
//!
//! Exit status: 0 when a check passes or a construction succeeds, 1 when a
//! check fails (the violations are written to stdout as JSON, whatever the
//! output format), 2 for unreadable or malformed input (a JSON error object
//! on stderr).

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::action::{functor_p, functor_q, roundtrip_witness, verify_action_system, ActionSystem};
use crate::enumeration::{
    census_2x2, classify, describe_system, enumerate_action_systems, render_census_list, CensusEntry,
};
use crate::error::{Error, Result};
use crate::format::{
    parse, parse_lines, to_line, to_pretty, ActionSystemDoc, CensusEntryDoc, MapDoc, MonoidDoc, SemibiproductDoc,
};
use crate::monoid::{enumerate_monoids, Homomorphism, Monoid};
use crate::registry::Registry;
use crate::report::VerificationReport;
use crate::semibiproduct::{
    check_exactness, compose_semibiproducts, pullback_semibiproduct, verify_semibiproduct, Composition, Pointedness,
    Semibiproduct,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "sbp", about = "Pointed semibiproducts of finite monoids and their action systems")]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON object mapping extra names to monoid documents.
    #[arg(long, global = true)]
    pub seed_registry: Option<PathBuf>,
}

/// Monoid arguments are registry names or paths to monoid documents;
/// other inputs are paths, with `-` for stdin.
#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Validate a monoid table.
    MonoidCheck { monoid: String },
    /// List the monoids of order n (at most 4) up to isomorphism.
    MonoidEnum { n: usize },
    /// Check the semibiproduct laws.
    SbpVerify {
        input: String,
        /// Check only ps=1, qk=1 and kq+sp=1.
        #[arg(long)]
        skip_pointedness: bool,
    },
    /// Pull a semibiproduct back along a homomorphism h: C → B.
    SbpPullback { input: String, map: String },
    /// Compose (X,A,B,...) with (C,B,D,...).
    SbpCompose { first: String, second: String },
    /// Check that X → A → B is exact.
    SbpExactness { input: String },
    /// Check the action-system axioms.
    ActVerify { input: String },
    /// Realize an action system as a semibiproduct.
    ActRealize { input: String },
    /// Derive the action system of a semibiproduct.
    ActDerive { input: String },
    /// List every action system over a kernel X and quotient B.
    ActEnumerate { x: String, b: String },
    /// Group action systems into isomorphism classes: either one JSON-lines
    /// file of systems, or a kernel and quotient to enumerate over.
    ActClassify {
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<String>,
    },
    /// Build and check the isomorphism between A and its realization.
    Roundtrip { input: String },
    /// All action systems with two-element kernel and quotient.
    Census,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: 0, stdout, stderr: String::new() }
    }

    fn failed(stdout: String) -> Self {
        Outcome { status: 1, stdout, stderr: String::new() }
    }

    fn report(report: &VerificationReport, format: OutputFormat) -> Self {
        if report.passed() {
            match format {
                OutputFormat::Json => Outcome::ok(to_pretty(report)),
                OutputFormat::Table => Outcome::ok("passed\n".to_string()),
            }
        } else {
            Outcome::failed(to_pretty(report))
        }
    }

    fn error(err: &Error) -> Self {
        let body = json!({ "error": { "kind": err.kind(), "message": err.to_string() } });
        Outcome { status: 2, stdout: String::new(), stderr: to_line(&body) }
    }
}

struct Context<'a> {
    registry: Registry,
    format: OutputFormat,
    stdin: &'a mut dyn Read,
}

impl Context<'_> {
    fn read(&mut self, arg: &str) -> Result<String> {
        if arg == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
            return Ok(s);
        }
        std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))
    }

    fn monoid(&mut self, arg: &str) -> Result<Monoid> {
        if self.registry.contains(arg) {
            return self.registry.get(arg);
        }
        if arg != "-" && !Path::new(arg).exists() {
            return Err(Error::UnknownMonoid(arg.to_string()));
        }
        let text = self.read(arg)?;
        parse::<MonoidDoc>(&text)?.resolve(&self.registry)
    }

    fn semibiproduct(&mut self, arg: &str) -> Result<Semibiproduct> {
        let text = self.read(arg)?;
        parse::<SemibiproductDoc>(&text)?.resolve(&self.registry)
    }

    fn action_system(&mut self, arg: &str) -> Result<ActionSystem> {
        let text = self.read(arg)?;
        parse::<ActionSystemDoc>(&text)?.resolve(&self.registry)
    }

    fn sbp_doc(&self, sbp: &Semibiproduct) -> String {
        to_pretty(&SemibiproductDoc::from_semibiproduct(&self.registry, sbp))
    }

    fn system_doc(&self, t: &ActionSystem) -> ActionSystemDoc {
        ActionSystemDoc::from_system(&self.registry, t)
    }
}

fn load_registry(path: Option<&Path>) -> Result<Registry> {
    let mut registry = Registry::new();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let seeds: std::collections::BTreeMap<String, MonoidDoc> = parse(&text)?;
        for (name, doc) in seeds {
            let m = doc.resolve(&registry).map_err(|e| Error::Parse(format!("registry entry `{name}`: {e}")))?;
            registry.insert(name, m);
        }
    }
    Ok(registry)
}

/// Runs one command. Output is deterministic for fixed inputs.
pub fn run(cmd: &Command, stdin: &mut dyn Read) -> Outcome {
    let outcome = match load_registry(cmd.seed_registry.as_deref()) {
        Ok(registry) => {
            let mut ctx = Context { registry, format: cmd.format, stdin };
            dispatch(&mut ctx, &cmd.verb).unwrap_or_else(|e| Outcome::error(&e))
        }
        Err(e) => Outcome::error(&e),
    };
    match (&cmd.out, outcome.status) {
        (Some(path), 0 | 1) => match std::fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome { stdout: String::new(), ..outcome },
            Err(e) => Outcome::error(&Error::Io(format!("{}: {e}", path.display()))),
        },
        _ => outcome,
    }
}

#[derive(Serialize)]
struct MonoidSummary {
    valid: bool,
    size: usize,
    idempotent: bool,
    commutative: bool,
    group: bool,
    monoid: MonoidDoc,
}

fn dispatch(ctx: &mut Context<'_>, verb: &Verb) -> Result<Outcome> {
    let format = ctx.format;
    match verb {
        Verb::MonoidCheck { monoid } => {
            let m = match ctx.monoid(monoid) {
                Ok(m) => m,
                Err(e @ (Error::NotIdentity { .. } | Error::NotAssociative { .. } | Error::IndexOutOfRange { .. })) => {
                    let body = json!({ "valid": false, "error": { "kind": e.kind(), "message": e.to_string() } });
                    return Ok(Outcome::failed(to_pretty(&body)));
                }
                Err(e) => return Err(e),
            };
            let summary = MonoidSummary {
                valid: true,
                size: m.size(),
                idempotent: m.is_idempotent(),
                commutative: m.is_commutative(),
                group: m.is_group(),
                monoid: MonoidDoc::from_monoid(&ctx.registry, &m),
            };
            Ok(Outcome::ok(match format {
                OutputFormat::Json => to_pretty(&summary),
                OutputFormat::Table => format!(
                    "size {}\nidempotent {}\ncommutative {}\ngroup {}\n{}",
                    summary.size,
                    summary.idempotent,
                    summary.commutative,
                    summary.group,
                    render_table(&m)
                ),
            }))
        }
        Verb::MonoidEnum { n } => {
            let monoids = enumerate_monoids(*n)?;
            let mut out = String::new();
            for m in &monoids {
                match format {
                    OutputFormat::Json => out.push_str(&to_line(&MonoidDoc::from_monoid(&ctx.registry, m))),
                    OutputFormat::Table => {
                        out.push_str(&render_table(m));
                        out.push('\n');
                    }
                }
            }
            Ok(Outcome::ok(out))
        }
        Verb::SbpVerify { input, skip_pointedness } => {
            let sbp = ctx.semibiproduct(input)?;
            let mode = if *skip_pointedness { Pointedness::Skip } else { Pointedness::Require };
            Ok(Outcome::report(&verify_semibiproduct(&sbp, mode), format))
        }
        Verb::SbpExactness { input } => {
            let sbp = ctx.semibiproduct(input)?;
            let report = verify_semibiproduct(&sbp, Pointedness::Require);
            if !report.passed() {
                return Ok(Outcome::failed(to_pretty(&report)));
            }
            Ok(Outcome::report(&check_exactness(&sbp), format))
        }
        Verb::SbpPullback { input, map } => {
            let sbp = ctx.semibiproduct(input)?;
            let text = ctx.read(map)?;
            let h = Homomorphism::try_from(parse::<MapDoc>(&text)?.resolve(&ctx.registry)?)?;
            let report = verify_semibiproduct(&sbp, Pointedness::Require);
            if !report.passed() {
                return Ok(Outcome::failed(to_pretty(&report)));
            }
            let pulled = pullback_semibiproduct(&sbp, &h)?;
            Ok(Outcome::ok(ctx.sbp_doc(&pulled)))
        }
        Verb::SbpCompose { first, second } => {
            let first = ctx.semibiproduct(first)?;
            let second = ctx.semibiproduct(second)?;
            for sbp in [&first, &second] {
                let report = verify_semibiproduct(sbp, Pointedness::Require);
                if !report.passed() {
                    return Ok(Outcome::failed(to_pretty(&report)));
                }
            }
            match compose_semibiproducts(&first, &second)? {
                Composition::Composite { semibiproduct, .. } => Ok(Outcome::ok(ctx.sbp_doc(&semibiproduct))),
                Composition::Obstruction(obs) => {
                    Ok(Outcome::failed(to_pretty(&json!({ "composable": false, "obstruction": obs }))))
                }
            }
        }
        Verb::ActVerify { input } => {
            let t = ctx.action_system(input)?;
            Ok(Outcome::report(&verify_action_system(&t), format))
        }
        Verb::ActRealize { input } => {
            let t = ctx.action_system(input)?;
            let report = verify_action_system(&t);
            if !report.passed() {
                return Ok(Outcome::failed(to_pretty(&report)));
            }
            let real = functor_q(&t)?;
            Ok(Outcome::ok(match format {
                OutputFormat::Json => to_pretty(&SemibiproductDoc::from_realization(&ctx.registry, &real)),
                OutputFormat::Table => render_table(&real.monoid),
            }))
        }
        Verb::ActDerive { input } => {
            let sbp = ctx.semibiproduct(input)?;
            let report = verify_semibiproduct(&sbp, Pointedness::Require);
            if !report.passed() {
                return Ok(Outcome::failed(to_pretty(&report)));
            }
            let t = functor_p(&sbp)?;
            Ok(Outcome::ok(match format {
                OutputFormat::Json => to_pretty(&ctx.system_doc(&t)),
                OutputFormat::Table => format!("{}\n", describe_system(&ctx.registry, &t)),
            }))
        }
        Verb::ActEnumerate { x, b } => {
            let (x, b) = (ctx.monoid(x)?, ctx.monoid(b)?);
            let systems = enumerate_action_systems(&x, &b)?;
            Ok(Outcome::ok(render_systems(ctx, &systems)))
        }
        Verb::ActClassify { inputs } => {
            let systems = match inputs.as_slice() {
                [file] => {
                    let text = ctx.read(file)?;
                    parse_lines::<ActionSystemDoc>(&text)?
                        .iter()
                        .map(|d| d.resolve(&ctx.registry))
                        .collect::<Result<Vec<_>>>()?
                }
                [x, b] => {
                    let (x, b) = (ctx.monoid(x)?, ctx.monoid(b)?);
                    enumerate_action_systems(&x, &b)?
                }
                _ => unreachable!("clap enforces one or two inputs"),
            };
            let mut entries = Vec::with_capacity(systems.len());
            for t in systems {
                let report = verify_action_system(&t);
                if !report.passed() {
                    return Ok(Outcome::failed(to_pretty(&report)));
                }
                entries.push(CensusEntry::new(t)?);
            }
            let classes = classify(&entries);
            let mut out = String::new();
            for (i, class) in classes.iter().enumerate() {
                match format {
                    OutputFormat::Json => out.push_str(&to_line(&json!({
                        "class": i + 1,
                        "size": class.members.len(),
                        "canonical_key": hex::encode(&class.representative.canonical_key),
                        "representative": ctx.system_doc(&class.representative.system),
                    }))),
                    OutputFormat::Table => out.push_str(&format!(
                        "{}. {} x{}\n",
                        i + 1,
                        describe_system(&ctx.registry, &class.representative.system),
                        class.members.len()
                    )),
                }
            }
            Ok(Outcome::ok(out))
        }
        Verb::Roundtrip { input } => {
            let sbp = ctx.semibiproduct(input)?;
            let report = verify_semibiproduct(&sbp, Pointedness::Require);
            if !report.passed() {
                return Ok(Outcome::failed(to_pretty(&report)));
            }
            let w = match roundtrip_witness(&sbp) {
                Ok(w) => w,
                Err(Error::InvalidSemibiproduct(report)) => return Ok(Outcome::failed(to_pretty(&report))),
                Err(e) => return Err(e),
            };
            let checks = w.check();
            let body = json!({
                "carrier": w.realization.carrier.iter().map(|&(x, b)| [x, b]).collect::<Vec<_>>(),
                "alpha": w.alpha.values(),
                "beta": w.beta.values(),
                "checks": checks,
            });
            Ok(if checks.passed() { Outcome::ok(to_pretty(&body)) } else { Outcome::failed(to_pretty(&body)) })
        }
        Verb::Census => {
            let entries = census_2x2();
            Ok(Outcome::ok(match format {
                OutputFormat::Table => render_census_list(&ctx.registry, &entries),
                OutputFormat::Json => entries
                    .iter()
                    .enumerate()
                    .map(|(i, e)| to_line(&CensusEntryDoc::from_entry(&ctx.registry, i + 1, e)))
                    .collect(),
            }))
        }
    }
}

fn render_systems(ctx: &Context<'_>, systems: &[ActionSystem]) -> String {
    let mut out = String::new();
    for (i, t) in systems.iter().enumerate() {
        match ctx.format {
            OutputFormat::Json => out.push_str(&to_line(&ctx.system_doc(t))),
            OutputFormat::Table => out.push_str(&format!("{}. {}\n", i + 1, describe_system(&ctx.registry, t))),
        }
    }
    out
}

fn render_table(m: &crate::monoid::MonoidTable) -> String {
    let labels: Vec<String> = m.elements().map(|i| m.label(i)).collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for i in m.elements() {
        let row: Vec<String> = m.elements().map(|j| format!("{:>width$}", labels[m.op(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cmd = Command::try_parse_from(std::iter::once("sbp").chain(args.iter().copied())).unwrap();
        run(&cmd, &mut std::io::empty())
    }

    #[test]
    fn census_table_has_fourteen_lines() {
        let out = run_args(&["census", "--format", "table"]);
        assert_eq!(out.status, 0);
        assert_eq!(out.stdout.lines().count(), 14);
        assert!(out.stdout.starts_with("1. (G,G,ρ0,φ0,γ0)\n"));
    }

    #[test]
    fn unknown_registry_name_is_an_input_error() {
        let out = run_args(&["act-enumerate", "M", "Q8"]);
        assert_eq!(out.status, 2);
        assert!(out.stderr.contains("UnknownMonoid"));
    }

    #[test]
    fn monoid_enum_lists_registry_names() {
        let out = run_args(&["monoid-enum", "2"]);
        assert_eq!(out.stdout, "\"G\"\n\"M\"\n");
        assert_eq!(run_args(&["monoid-enum", "5"]).status, 2);
    }
}
