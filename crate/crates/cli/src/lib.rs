//! Command-line driver for `quiverpi`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical
//! counterexample is found (and printed), 2 on usage or resource errors.

pub mod document;

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverpi::verifier::{PathVerification, ScanOptions};
use quiverpi::{
    identity_space, maximal_chains, parse_poly, theorem_report, tideal_component, verify_identity_on_paths,
    Comparison, Error, IdentitySubspace, MultilinearPoly, PathSet, ReportOptions, TheoremReport, TransitiveRelation,
    DEFAULT_MAX_LEN,
};
use serde_json::{json, Value};

pub use document::{parse_document, parse_json_document, DocError, QuiverDocument};

#[derive(Debug, Parser)]
#[command(name = "quiverpi", version, about = "Polynomial identities of quiver path algebras and incidence algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Quiver description file.
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Path set to use: a declared name, `all` or `arrows`. Defaults to the
    /// first declared path set, else `all`.
    #[arg(long)]
    pub pi: Option<String>,
    /// Also write a machine-readable result here.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the path algebra satisfies a polynomial identity.
    CheckPi(Input),
    /// Print the incidence pattern of the path set.
    Pattern(Input),
    /// Basis of the multilinear identities of the incidence algebra.
    Identities {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: usize,
    },
    /// Multilinear component of the T-ideal generated by polynomials.
    Tideal {
        #[command(flatten)]
        input: Input,
        /// Polynomial name from the document, or an inline expression.
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        #[arg(long)]
        degree: usize,
    },
    /// Compare the identity space with a T-ideal, another path set, or the
    /// intersection over maximal chains.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: usize,
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(long)]
        with_pi: Option<String>,
        #[arg(long)]
        chains: bool,
    },
    /// Maximal chains of the incidence relation.
    Chains(Input),
    /// Check one identity on all path tuples up to a length bound.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Polynomial name from the document, or an inline expression.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute identity spaces up to a degree and check each basis element
    /// on path tuples.
    Report {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m_max: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Validate a saved report; with `--doc`, also recompute it.
    CheckReport {
        report: PathBuf,
        #[arg(long)]
        doc: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        pi: Option<String>,
    },
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Counterexample,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Counterexample => 1,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Counterexample
        }
    }
}

pub fn load_document(path: &FsPath, format: Format) -> anyhow::Result<QuiverDocument> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = match format {
        Format::Text => parse_document(&text),
        Format::Json => parse_json_document(&text),
    };
    doc.map_err(|e| anyhow!("{}: {e}", path.display()))
}

struct Loaded {
    doc: QuiverDocument,
    pi_name: String,
    pi: PathSet,
}

fn load(input: &Input) -> anyhow::Result<Loaded> {
    let doc = load_document(&input.file, input.format)?;
    let pi_name = input.pi.clone().unwrap_or_else(|| doc.default_pathset_name().to_string());
    let pi = doc.pathset(&pi_name).ok_or_else(|| anyhow!("no path set named '{pi_name}'"))?;
    Ok(Loaded { doc, pi_name, pi })
}

impl Loaded {
    fn relation(&self) -> TransitiveRelation {
        TransitiveRelation::from_pi(&self.doc.quiver, &self.pi)
    }

    /// A polynomial by document name, or parsed inline.
    fn poly(&self, spec: &str) -> anyhow::Result<MultilinearPoly> {
        if let Some(p) = self.doc.poly(spec) {
            return Ok(p.poly.clone());
        }
        parse_poly(spec).map_err(|e| anyhow!("'{spec}' is neither a polynomial name nor an expression ({e})"))
    }
}

fn write_json(path: &Option<PathBuf>, value: &Value) -> anyhow::Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value)? + "\n";
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn basis_strings(space: &IdentitySubspace) -> Vec<String> {
    space.basis().iter().map(ToString::to_string).collect()
}

fn pattern_lines(rel: &TransitiveRelation) -> Vec<String> {
    rel.render().lines().map(str::to_string).collect()
}

/// Runs a parsed command, writing human output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::CheckPi(input) => {
            let l = load(&input)?;
            let status = l.doc.quiver.pi_status();
            match status.witness {
                None => writeln!(out, "PI: yes")?,
                Some(v) => writeln!(out, "PI: no (vertex {v} lies on two distinct oriented cycles)")?,
            }
            write_json(&input.json, &json!({"schema": 1, "command": "check-pi", "pi": status.is_pi, "witness": status.witness}))?;
            Ok(Outcome::from_pass(status.is_pi))
        }
        Command::Pattern(input) => {
            let l = load(&input)?;
            let rel = l.relation();
            write!(out, "{}", rel.render())?;
            write_json(
                &input.json,
                &json!({"schema": 1, "command": "pattern", "pi": l.pi_name, "pattern": pattern_lines(&rel), "pairs": rel.pairs()}),
            )?;
            Ok(Outcome::Pass)
        }
        Command::Identities { input, degree } => {
            let l = load(&input)?;
            let space = identity_space(&l.relation(), degree)?;
            write!(out, "{space}")?;
            write_json(
                &input.json,
                &json!({"schema": 1, "command": "identities", "pi": l.pi_name, "m": degree,
                        "dimension": space.dimension(), "basis": basis_strings(&space)}),
            )?;
            Ok(Outcome::Pass)
        }
        Command::Tideal { input, generators, degree } => {
            let l = load(&input)?;
            let gens = generators.iter().map(|g| l.poly(g)).collect::<anyhow::Result<Vec<_>>>()?;
            let space = tideal_component(&gens, degree)?;
            write!(out, "{space}")?;
            write_json(
                &input.json,
                &json!({"schema": 1, "command": "tideal", "generators": generators, "m": degree,
                        "dimension": space.dimension(), "basis": basis_strings(&space)}),
            )?;
            Ok(Outcome::Pass)
        }
        Command::Compare { input, degree, generators, with_pi, chains } => {
            let l = load(&input)?;
            let left = identity_space(&l.relation(), degree)?;
            let chosen = usize::from(!generators.is_empty()) + usize::from(with_pi.is_some()) + usize::from(chains);
            if chosen != 1 {
                bail!("compare needs exactly one of --gen, --with-pi, --chains");
            }
            let (label, right) = if !generators.is_empty() {
                let gens = generators.iter().map(|g| l.poly(g)).collect::<anyhow::Result<Vec<_>>>()?;
                (format!("T-ideal of {}", generators.join(", ")), tideal_component(&gens, degree)?)
            } else if let Some(other) = with_pi {
                let pi = l.doc.pathset(&other).ok_or_else(|| anyhow!("no path set named '{other}'"))?;
                (format!("identities of {other}"), identity_space(&TransitiveRelation::from_pi(&l.doc.quiver, &pi), degree)?)
            } else {
                let mut acc = IdentitySubspace::full(degree);
                let found = maximal_chains(&l.relation())?;
                for c in &found {
                    acc = acc.intersect(&identity_space(&c.pattern(), degree)?)?;
                }
                let names: Vec<String> = found.iter().map(ToString::to_string).collect();
                (format!("intersection over chains {}", names.join(", ")), acc)
            };
            let cmp = left.compare(&right)?;
            writeln!(out, "left:  identities of {} (dimension {})", l.pi_name, left.dimension())?;
            writeln!(out, "right: {label} (dimension {})", right.dimension())?;
            writeln!(out, "{}", cmp.label())?;
            let (left_only, right_only) = match &cmp {
                Comparison::Equal => (None, None),
                Comparison::Subset { witness } => (None, Some(witness)),
                Comparison::Superset { witness } => (Some(witness), None),
                Comparison::Incomparable { left_only, right_only } => (Some(left_only), Some(right_only)),
            };
            if let Some(w) = left_only {
                writeln!(out, "only left:  {w}")?;
            }
            if let Some(w) = right_only {
                writeln!(out, "only right: {w}")?;
            }
            write_json(
                &input.json,
                &json!({"schema": 1, "command": "compare", "m": degree, "left_dimension": left.dimension(),
                        "right": label, "right_dimension": right.dimension(), "relation": cmp.label(),
                        "left_only": left_only.map(ToString::to_string), "right_only": right_only.map(ToString::to_string)}),
            )?;
            Ok(Outcome::from_pass(cmp == Comparison::Equal))
        }
        Command::Chains(input) => {
            let l = load(&input)?;
            let found = maximal_chains(&l.relation())?;
            for c in &found {
                writeln!(out, "{c}  {}", c.block_word())?;
            }
            let listed: Vec<Value> = found
                .iter()
                .map(|c| json!({"vertices": c.vertices, "self_related": c.self_related, "blocks": c.block_word()}))
                .collect();
            write_json(&input.json, &json!({"schema": 1, "command": "chains", "chains": listed}))?;
            Ok(Outcome::Pass)
        }
        Command::Verify { input, poly, degree, max_len, seed } => {
            let l = load(&input)?;
            let f = l.poly(&poly)?;
            if let Some(m) = degree {
                if m != f.degree() {
                    bail!("--degree {m} does not match the degree {} of '{poly}'", f.degree());
                }
            }
            let result = match verify_identity_on_paths(&f, &l.doc.quiver, &l.pi, ScanOptions::new(max_len, seed)) {
                Err(Error::Precondition(msg)) => {
                    writeln!(out, "counterexample: {msg}")?;
                    write_json(&input.json, &json!({"schema": 1, "command": "verify", "verdict": "fail", "reason": msg}))?;
                    return Ok(Outcome::Counterexample);
                }
                other => other?,
            };
            print_verification(out, &l, &result)?;
            let s = &result.scan;
            write_json(
                &input.json,
                &json!({"schema": 1, "command": "verify", "pi": l.pi_name, "m": f.degree(), "bound": s.bound,
                        "checked_tuples": s.checked_tuples, "total_tuples": s.total_tuples.to_string(),
                        "sampled": s.sampled, "seed": seed, "pi_quiver": result.pi_quiver,
                        "counterexample": s.counterexample, "verdict": if s.passed() { "pass" } else { "fail" }}),
            )?;
            Ok(Outcome::from_pass(s.passed()))
        }
        Command::Report { input, m_max, max_len, seed, inject_fault } => {
            let l = load(&input)?;
            let opts = ReportOptions { seed, fault: inject_fault, ..ReportOptions::new(m_max, max_len) };
            let report = theorem_report(&l.doc.quiver, &l.pi, opts)?;
            write!(out, "{}", report.summary())?;
            for d in &report.degrees {
                if let Some(c) = &d.counterexample {
                    writeln!(
                        out,
                        "counterexample at m={}: basis element {} on ({}) gives coefficient {} on {}",
                        d.m,
                        c.poly + 1,
                        c.tuple.join(", "),
                        c.coefficient,
                        c.path
                    )?;
                }
            }
            if let Some(p) = &input.json {
                std::fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(Outcome::from_pass(report.passed()))
        }
        Command::CheckReport { report, doc, format, pi } => {
            let text = std::fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let parsed: TheoremReport =
                serde_json::from_str(&text).with_context(|| format!("{} is not a report", report.display()))?;
            if parsed.schema != quiverpi::verifier::REPORT_SCHEMA {
                bail!("unsupported report schema {}", parsed.schema);
            }
            let mut problems = consistency_problems(&parsed);
            if let Some(doc_path) = doc {
                let l = load(&Input { file: doc_path, format, pi, json: None })?;
                let m_max = parsed.degrees.len();
                let opts = ReportOptions { seed: parsed.seed, ..ReportOptions::new(m_max, parsed.bound) };
                let fresh = theorem_report(&l.doc.quiver, &l.pi, opts)?;
                if fresh != parsed {
                    problems.push("report differs from a fresh run on the document".to_string());
                }
            }
            for p in &problems {
                writeln!(out, "problem: {p}")?;
            }
            let pass = problems.is_empty() && parsed.passed();
            writeln!(out, "report verdict: {}", if pass { "pass" } else { "fail" })?;
            Ok(Outcome::from_pass(pass))
        }
    }
}

fn print_verification(out: &mut dyn Write, l: &Loaded, v: &PathVerification) -> anyhow::Result<()> {
    let s = &v.scan;
    if !v.pi_quiver {
        writeln!(out, "warning: quiver is not PI; identities of the incidence algebra need not hold")?;
    }
    writeln!(
        out,
        "path set {}: {} closure paths of length <= {}; checked {} of {} tuples{}",
        l.pi_name,
        s.closure_size,
        s.bound,
        s.checked_tuples,
        s.total_tuples,
        if s.sampled { " (sampled)" } else { "" }
    )?;
    if let Some(c) = &s.counterexample {
        writeln!(out, "counterexample: f({}) has coefficient {} on {}", c.tuple.join(", "), c.coefficient, c.path)?;
    }
    if let Some((tuple, viol)) = &s.first_violation {
        writeln!(
            out,
            "unique products violated on ({}): sector ({},{}) holds {} and {}",
            tuple.join(", "),
            viol.source,
            viol.target,
            l.doc.quiver.label(&viol.products.0),
            l.doc.quiver.label(&viol.products.1)
        )?;
    }
    writeln!(out, "verdict: {}", if s.passed() { "pass" } else { "fail" })?;
    Ok(())
}

/// Internal contradictions in a report, such as a passing verdict next to a
/// recorded counterexample.
pub fn consistency_problems(r: &TheoremReport) -> Vec<String> {
    let mut problems = Vec::new();
    for d in &r.degrees {
        let clean = d.counterexample.is_none() && d.unique_product_violations == 0 && d.sector_sum_failures == 0;
        let expected = if clean { "pass" } else { "fail" };
        if d.verdict != expected {
            problems.push(format!("degree {} is marked {} but its checks say {expected}", d.m, d.verdict));
        }
        if d.basis.len() != d.dimension {
            problems.push(format!("degree {} lists {} basis elements for dimension {}", d.m, d.basis.len(), d.dimension));
        }
        for b in &d.basis {
            match parse_poly(b) {
                Ok(f) if f.degree() == d.m => {}
                _ => problems.push(format!("degree {} has a malformed basis element '{b}'", d.m)),
            }
        }
    }
    let expected = if r.degrees.iter().all(|d| d.verdict == "pass") { "pass" } else { "fail" };
    if r.verdict != expected {
        problems.push(format!("overall verdict is {} but the degrees say {expected}", r.verdict));
    }
    problems
}
