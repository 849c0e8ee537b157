//! Command-line front end. `run` parses arguments, dispatches to the engine
//! and writes a text or JSON report; the binary and the C interface both
//! go through it.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{
    format_basis, format_element, jacobi_window, parse_bracket_expr, AlgebraInstance, BasisIndex, Window,
    WindowMap,
};
use crate::arith::{fmt_rational, int, parse_rational, HalfInt, Rational, Var};
use crate::automorphisms::{
    build_automorphism, check_homomorphism, commutator_relation_check, composition_law_check,
    ideal_preservation_check, AutomorphismSpec,
};
use crate::derivations::{analyze_candidate, closed_form_derivation, h1_component, ClosedForm, DerivationCandidate};
use crate::error::{Error, Result};
use crate::spec::{jacobi_symbolic, parse_spec, preset, print_spec, AlgebraSpec};
use crate::structure::{center, perfectness_check, shift_isomorphism, CenterMode};

pub const SCHEMA: u64 = 1;

/// Exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "graded-lie", version, about = "Exact computations on graded Lie algebras given by bracket tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Built-in algebra: witt, wab or wgab.
    #[arg(long, default_value = "wgab")]
    pub preset: String,
    /// Algebra description file; overrides --preset.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Value of the parameter a, as p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Value of the parameter b, as p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Truncation window min:max, with half-integers as k/2.
    #[arg(long, allow_hyphen_values = true, default_value = "-10:10")]
    pub window: String,
    /// Interior margin.
    #[arg(long, default_value_t = 3)]
    pub margin: u32,
    /// Emit the JSON report.
    #[arg(long)]
    pub json: bool,
    /// Compare the report against a stored JSON report.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    /// With --golden: write the file instead of comparing.
    #[arg(long, requires = "golden")]
    pub bless: bool,
    /// Add wall-clock time to the output (not part of the digest).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi identity: symbolic over the parameters, plus on the window when a and b are given.
    Jacobi {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one bracket, e.g. "[Y(3/2), Y(1/2)]".
    Bracket {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Outer derivations of one degree.
    H1 {
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[command(flatten)]
        common: Common,
    },
    /// Outer derivation dimensions for degrees -2 to 2 in half steps.
    H1Scan {
        #[command(flatten)]
        common: Common,
    },
    /// Check a closed-form derivation: Leibniz and its class modulo inner derivations.
    Derivation {
        /// D1, D1_weighted, D2_00, D2_01, D2_02, D3 or D3_1m1.
        #[arg(long)]
        form: String,
        #[command(flatten)]
        common: Common,
    },
    /// Center supported on the interior window.
    Center {
        /// Test against every window symbol instead of low-degree generators.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Whether brackets span the interior window.
    Perfect {
        #[command(flatten)]
        common: Common,
    },
    /// Automorphism families.
    Aut {
        #[command(subcommand)]
        action: AutAction,
    },
    /// The even shift of a between instances.
    ShiftIso {
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Algebra description files.
    Spec {
        #[command(subcommand)]
        action: SpecAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum AutAction {
    /// Window matrix of one automorphism.
    Build {
        /// key=value list, e.g. "alpha=4,mu=1,s=2".
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[command(flatten)]
        common: Common,
    },
    /// Homomorphism and ideal checks for one automorphism.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form composition law against the matrix product.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        second: String,
        #[command(flatten)]
        common: Common,
    },
    /// Commutator of two inner exponentials of Y generators.
    Commutator {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpecAction {
    /// Parse and summarize.
    Parse {
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Canonical text.
    Print {
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

/// A finished command: the JSON payload plus a short text rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub window: Value,
    pub margin: Value,
    pub config: Value,
    pub result: Value,
    pub passed: bool,
    pub text: String,
}

impl Report {
    /// The digested part of the report.
    pub fn payload(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "params": self.params,
            "window": self.window,
            "margin": self.margin,
            "config": self.config,
            "result": self.result,
        })
    }

    pub fn to_json(&self, timing_ms: Option<u128>) -> Value {
        let payload = self.payload();
        let digest = digest(&payload);
        let mut doc = match payload {
            Value::Object(m) => m,
            _ => unreachable!("payload is an object"),
        };
        doc.insert("digest".into(), Value::String(digest));
        doc.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
        if let Some(t) = timing_ms {
            doc.insert("timing_ms".into(), json!(t));
        }
        Value::Object(doc)
    }
}

/// SHA-256 of the compact serialization; object keys are already sorted.
pub fn digest(payload: &Value) -> String {
    let bytes = serde_json::to_vec(payload).expect("json values serialize");
    hex::encode(Sha256::digest(bytes))
}

/// Keys that may differ between otherwise identical reports.
const UNCOMPARED: [&str; 2] = ["version", "timing_ms"];

/// Field-level differences between two reports, as `path: expected -> actual`.
pub fn golden_diff(actual: &Value, expected: &Value) -> Vec<String> {
    let mut out = Vec::new();
    diff_into("", actual, expected, &mut out);
    out
}

fn diff_into(path: &str, actual: &Value, expected: &Value, out: &mut Vec<String>) {
    match (actual, expected) {
        (Value::Object(a), Value::Object(e)) => {
            let keys: std::collections::BTreeSet<&String> = a.keys().chain(e.keys()).collect();
            for k in keys {
                if path.is_empty() && UNCOMPARED.contains(&k.as_str()) {
                    continue;
                }
                let sub = format!("{path}/{k}");
                match (a.get(k), e.get(k)) {
                    (Some(x), Some(y)) => diff_into(&sub, x, y, out),
                    (Some(x), None) => out.push(format!("{sub}: unexpected {x}")),
                    (None, Some(y)) => out.push(format!("{sub}: missing, expected {y}")),
                    (None, None) => {}
                }
            }
        }
        (Value::Array(a), Value::Array(e)) if a.len() == e.len() => {
            for (i, (x, y)) in a.iter().zip(e).enumerate() {
                diff_into(&format!("{path}/{i}"), x, y, out);
            }
        }
        _ if actual == expected => {}
        _ => out.push(format!("{}: expected {expected}, got {actual}", if path.is_empty() { "/" } else { path })),
    }
}

/// Runs the tool; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let common = cli.command.common().clone();
    let started = Instant::now();
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let elapsed = common.timing.then(|| started.elapsed().as_millis());
    let doc = report.to_json(elapsed);
    let mut code = if report.passed { EXIT_PASS } else { EXIT_FAIL };

    if let Some(path) = &common.golden {
        match golden(path, &doc, common.bless) {
            Ok(diffs) if diffs.is_empty() => {}
            Ok(diffs) => {
                let _ = writeln!(err, "golden mismatch against {}:", path.display());
                for d in diffs {
                    let _ = writeln!(err, "  {d}");
                }
                code = EXIT_FAIL;
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        }
    }

    if common.json {
        let text = serde_json::to_string_pretty(&doc).expect("json values serialize");
        let _ = writeln!(out, "{text}");
    } else {
        let _ = write!(out, "{}", report.text);
        if let Some(ms) = elapsed {
            let _ = writeln!(out, "time: {ms} ms");
        }
    }
    code
}

fn golden(path: &Path, doc: &Value, bless: bool) -> Result<Vec<String>> {
    if bless {
        let text = serde_json::to_string_pretty(doc).expect("json values serialize");
        std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let expected: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(golden_diff(doc, &expected))
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Jacobi { common }
            | Command::Bracket { common, .. }
            | Command::H1 { common, .. }
            | Command::H1Scan { common }
            | Command::Derivation { common, .. }
            | Command::Center { common, .. }
            | Command::Perfect { common }
            | Command::ShiftIso { common, .. } => common,
            Command::Aut { action } => match action {
                AutAction::Build { common, .. }
                | AutAction::Verify { common, .. }
                | AutAction::Compose { common, .. }
                | AutAction::Commutator { common, .. } => common,
            },
            Command::Spec { action } => match action {
                SpecAction::Parse { common, .. } | SpecAction::Print { common, .. } => common,
            },
        }
    }
}

/// Loaded inputs shared by every command.
struct Ctx {
    spec: AlgebraSpec,
    a: Option<Rational>,
    b: Option<Rational>,
    window: Window,
    margin: u32,
}

impl Ctx {
    fn load(c: &Common, file: Option<&Path>) -> Result<Ctx> {
        let spec = match file.or(c.spec.as_deref()) {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                parse_spec(&text)?
            }
            None => preset(&c.preset)?,
        };
        Ok(Ctx {
            spec,
            a: c.a.as_deref().map(parse_rational).transpose()?,
            b: c.b.as_deref().map(parse_rational).transpose()?,
            window: c.window.parse()?,
            margin: c.margin,
        })
    }

    fn has_params(&self) -> bool {
        self.spec.parameters.iter().all(|p| match p {
            Var::A => self.a.is_some(),
            Var::B => self.b.is_some(),
            _ => false,
        })
    }

    fn instance(&self) -> Result<AlgebraInstance> {
        let mut params = BTreeMap::new();
        for p in &self.spec.parameters {
            let v = match p {
                Var::A => self.a.clone(),
                Var::B => self.b.clone(),
                _ => None,
            };
            let v = v.ok_or_else(|| Error::Parameter(format!("--{} is required", p.name())))?;
            params.insert(*p, v);
        }
        AlgebraInstance::new(self.spec.clone(), params)
    }

    fn params_json(&self) -> Value {
        let mut m = Map::new();
        for p in &self.spec.parameters {
            let v = match p {
                Var::A => &self.a,
                Var::B => &self.b,
                _ => &None,
            };
            m.insert(
                p.name().to_string(),
                v.as_ref().map_or(Value::String("symbolic".into()), |q| Value::String(fmt_rational(q))),
            );
        }
        Value::Object(m)
    }

    fn report(&self, command: &str, config: Value, result: Value, passed: bool, text: String) -> Report {
        Report {
            command: command.to_string(),
            params: self.params_json(),
            window: Value::String(self.window.to_string()),
            margin: json!(self.margin),
            config,
            result,
            passed,
            text,
        }
    }
}

fn q(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn h(x: HalfInt) -> Value {
    Value::String(x.to_string())
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn candidate_json(inst: &AlgebraInstance, c: &DerivationCandidate) -> Value {
    let images: Map<String, Value> = c
        .images
        .iter()
        .map(|(b, e)| (format_basis(inst, b), Value::String(format_element(inst, e))))
        .collect();
    json!({ "degree": h(c.degree), "images": images })
}

fn basis_list(inst: &AlgebraInstance, v: &[BasisIndex]) -> Value {
    Value::Array(v.iter().map(|b| Value::String(format_basis(inst, b))).collect())
}

fn map_json(inst: &AlgebraInstance, m: &WindowMap) -> Value {
    let images: Map<String, Value> = m
        .domain_basis()
        .elems()
        .iter()
        .map(|b| {
            let img = m.image(b).expect("domain symbol");
            (format_basis(inst, b), Value::String(format_element(inst, &img)))
        })
        .collect();
    json!({
        "domain": m.domain().to_string(),
        "codomain": m.codomain().to_string(),
        "images": images,
    })
}

/// Runs one parsed command.
pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Jacobi { common } => cmd_jacobi(&Ctx::load(common, None)?),
        Command::Bracket { expr, common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let (x, y) = parse_bracket_expr(&inst, expr)?;
            let value = format_element(&inst, &inst.bracket(&x, &y));
            Ok(ctx.report(
                "bracket",
                json!({ "expr": expr }),
                json!({ "value": value }),
                true,
                format!("{value}\n"),
            ))
        }
        Command::H1 { degree, common } => {
            let ctx = Ctx::load(common, None)?;
            let degree: HalfInt = degree.parse()?;
            cmd_h1(&ctx, degree)
        }
        Command::H1Scan { common } => cmd_h1_scan(&Ctx::load(common, None)?),
        Command::Derivation { form, common } => {
            let ctx = Ctx::load(common, None)?;
            cmd_derivation(&ctx, form.parse()?)
        }
        Command::Center { full, common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let mode = if *full { CenterMode::Full } else { CenterMode::Generators };
            let r = center(&inst, &ctx.window, ctx.margin, mode)?;
            let basis: Vec<Value> = r.basis.iter().map(|e| Value::String(format_element(&inst, e))).collect();
            let text = if basis.is_empty() {
                "center: 0\n".to_string()
            } else {
                format!(
                    "center: {}\n",
                    r.basis.iter().map(|e| format_element(&inst, e)).collect::<Vec<_>>().join(", ")
                )
            };
            Ok(ctx.report(
                "center",
                json!({ "mode": if *full { "full" } else { "generators" } }),
                json!({
                    "interior": r.interior.to_string(),
                    "generators": r.generators,
                    "dim": basis.len(),
                    "basis": basis,
                }),
                true,
                text,
            ))
        }
        Command::Perfect { common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let r = perfectness_check(&inst, &ctx.window, ctx.margin)?;
            let mut text = format!("perfect on {}: {}\n", r.interior, verdict(r.passed));
            for b in &r.uncovered {
                text.push_str(&format!("  not a sum of brackets: {}\n", format_basis(&inst, b)));
            }
            Ok(ctx.report(
                "perfect",
                json!({}),
                json!({
                    "passed": r.passed,
                    "interior": r.interior.to_string(),
                    "span_rank": r.span_rank,
                    "uncovered": basis_list(&inst, &r.uncovered),
                }),
                r.passed,
                text,
            ))
        }
        Command::ShiftIso { k, common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let r = shift_isomorphism(&inst, *k, ctx.window)?;
            let target = json!({
                "a": q(&r.target.param(Var::A)),
                "b": q(&r.target.param(Var::B)),
            });
            let violations: Vec<Value> = r
                .check
                .violations
                .iter()
                .map(|(x, y)| json!([format_basis(&inst, x), format_basis(&inst, y)]))
                .collect();
            let text = format!(
                "shift by {k} to (a, b) = ({}, {}): {} ({} pairs, {} violations)\n",
                fmt_rational(&r.target.param(Var::A)),
                fmt_rational(&r.target.param(Var::B)),
                verdict(r.passed()),
                r.check.pairs_checked,
                violations.len()
            );
            Ok(ctx.report(
                "shift-iso",
                json!({ "k": k }),
                json!({
                    "passed": r.passed(),
                    "target": target,
                    "pairs_checked": r.check.pairs_checked,
                    "injective": r.check.injective,
                    "violations": violations,
                }),
                r.passed(),
                text,
            ))
        }
        Command::Aut { action } => cmd_aut(action),
        Command::Spec { action } => cmd_spec(action),
    }
}

fn cmd_jacobi(ctx: &Ctx) -> Result<Report> {
    let sym = jacobi_symbolic(&ctx.spec);
    let mut passed = sym.passed;
    let mut text = format!(
        "symbolic Jacobi over {} family triples: {}\n",
        sym.triples_checked,
        verdict(sym.passed)
    );
    for f in &sym.failures {
        text.push_str(&format!(
            "  [{}, {}, {}] -> {}: {}\n",
            f.triple[0], f.triple[1], f.triple[2], f.target, f.residual
        ));
    }
    let window = if ctx.has_params() {
        let inst = ctx.instance()?;
        let w = jacobi_window(&inst, &ctx.window);
        passed &= w.passed;
        text.push_str(&format!(
            "window Jacobi on {} over {} triples: {}\n",
            ctx.window,
            w.triples_checked,
            verdict(w.passed)
        ));
        serde_json::to_value(&w).expect("serializable")
    } else {
        Value::Null
    };
    Ok(ctx.report(
        "jacobi",
        json!({}),
        json!({
            "passed": passed,
            "symbolic": serde_json::to_value(&sym).expect("serializable"),
            "window": window,
        }),
        passed,
        text,
    ))
}

fn h1_json(inst: &AlgebraInstance, r: &crate::derivations::H1Report) -> Value {
    json!({
        "degree": h(r.degree),
        "interior": r.interior_window.to_string(),
        "equations": r.equations,
        "solution_dim": r.solution_dim,
        "restricted_dim": r.restricted_dim,
        "inner_dim": r.inner_dim,
        "outer_dim": r.outer_dim,
        "inner_contained": r.inner_contained,
        "outer_basis": r.outer_basis.iter().map(|c| candidate_json(inst, c)).collect::<Vec<_>>(),
    })
}

fn cmd_h1(ctx: &Ctx, degree: HalfInt) -> Result<Report> {
    let inst = ctx.instance()?;
    let r = h1_component(&inst, degree, ctx.window, ctx.margin)?;
    let text = format!(
        "degree {}: outer {} (solutions {}, inner {}){}\n",
        degree,
        r.outer_dim,
        r.restricted_dim,
        r.inner_dim,
        if r.inner_contained { "" } else { ", inner derivations NOT in the solution span" }
    );
    Ok(ctx.report(
        "h1",
        json!({ "degree": h(degree) }),
        h1_json(&inst, &r),
        r.inner_contained,
        text,
    ))
}

/// Degrees scanned by `h1-scan`.
pub fn scan_degrees() -> Vec<HalfInt> {
    (-4..=4).map(HalfInt::from_doubled).collect()
}

fn cmd_h1_scan(ctx: &Ctx) -> Result<Report> {
    let inst = ctx.instance()?;
    let reports = scan_degrees()
        .into_par_iter()
        .map(|d| h1_component(&inst, d, ctx.window, ctx.margin))
        .collect::<Result<Vec<_>>>()?;
    let consistent = reports.iter().all(|r| r.inner_contained);
    let total: usize = reports.iter().map(|r| r.outer_dim).sum();
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("degree {:>4}: {}\n", r.degree.to_string(), r.outer_dim));
    }
    text.push_str(&format!("total: {total}\n"));
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "degree": h(r.degree),
                "outer_dim": r.outer_dim,
                "restricted_dim": r.restricted_dim,
                "inner_dim": r.inner_dim,
                "inner_contained": r.inner_contained,
            })
        })
        .collect();
    Ok(ctx.report(
        "h1-scan",
        json!({ "degrees": scan_degrees().into_iter().map(h).collect::<Vec<_>>() }),
        json!({ "rows": rows, "total_outer_dim": total }),
        consistent,
        text,
    ))
}

fn cmd_derivation(ctx: &Ctx, form: ClosedForm) -> Result<Report> {
    let inst = ctx.instance()?;
    let cand = closed_form_derivation(form, &inst, ctx.window)?;
    let an = analyze_candidate(&inst, &cand, ctx.window, ctx.margin)?;
    let passed = an.leibniz_violations == 0 && an.outer;
    let text = format!(
        "{form}: {} Leibniz violations, {}\n",
        an.leibniz_violations,
        if an.outer { "outer" } else { "inner or zero" }
    );
    Ok(ctx.report(
        "derivation",
        json!({ "form": form.name() }),
        json!({
            "passed": passed,
            "leibniz_violations": an.leibniz_violations,
            "in_solution_space": an.in_solution_space,
            "outer": an.outer,
            "proportional_to_representative": an.proportional_to_representative,
            "outer_dim": an.report.outer_dim,
        }),
        passed,
        text,
    ))
}

fn cmd_aut(action: &AutAction) -> Result<Report> {
    match action {
        AutAction::Build { params, common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let spec = AutomorphismSpec::parse(params, &inst)?;
            let m = build_automorphism(&inst, &spec, ctx.window)?;
            let text = format!("{spec}: {} -> {}\n", m.domain(), m.codomain());
            Ok(ctx.report(
                "aut build",
                json!({ "automorphism": spec.to_text() }),
                map_json(&inst, &m),
                true,
                text,
            ))
        }
        AutAction::Verify { params, common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let spec = AutomorphismSpec::parse(params, &inst)?;
            let m = build_automorphism(&inst, &spec, ctx.window)?;
            let interior = ctx.window.shrink(ctx.margin)?;
            let hom = check_homomorphism(&inst, &m, &interior);
            let ideal = ideal_preservation_check(&inst, &m, &interior)?;
            let passed = hom.passed() && ideal.passed;
            let violations: Vec<Value> = hom
                .violations
                .iter()
                .map(|(x, y)| json!([format_basis(&inst, x), format_basis(&inst, y)]))
                .collect();
            let text = format!(
                "{spec}: homomorphism {} ({} pairs, {} violations), ideal {}\n",
                verdict(hom.passed()),
                hom.pairs_checked,
                violations.len(),
                verdict(ideal.passed)
            );
            Ok(ctx.report(
                "aut verify",
                json!({ "automorphism": spec.to_text() }),
                json!({
                    "passed": passed,
                    "homomorphism": {
                        "passed": hom.passed(),
                        "pairs_checked": hom.pairs_checked,
                        "injective": hom.injective,
                        "violations": violations,
                    },
                    "ideal": {
                        "passed": ideal.passed,
                        "columns_checked": ideal.columns_checked,
                        "offending": basis_list(&inst, &ideal.offending),
                    },
                }),
                passed,
                text,
            ))
        }
        AutAction::Compose { first, second, common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let p1 = AutomorphismSpec::parse(first, &inst)?;
            let p2 = AutomorphismSpec::parse(second, &inst)?;
            let interior = ctx.window.shrink(ctx.margin)?;
            let r = composition_law_check(&inst, &p1, &p2, ctx.window, interior)?;
            let text = format!("composed: {}\nmatrix product agrees: {}\n", r.composed, verdict(r.passed));
            Ok(ctx.report(
                "aut compose",
                json!({ "first": p1.to_text(), "second": p2.to_text() }),
                json!({
                    "passed": r.passed,
                    "composed": r.composed.to_text(),
                    "compared": r.comparison.compared,
                    "skipped": r.comparison.skipped,
                    "mismatches": basis_list(&inst, &r.comparison.mismatches),
                }),
                r.passed,
                text,
            ))
        }
        AutAction::Commutator { alpha, beta, i, j, common } => {
            let ctx = Ctx::load(common, None)?;
            let inst = ctx.instance()?;
            let (alpha, beta) = (parse_rational(alpha)?, parse_rational(beta)?);
            let interior = ctx.window.shrink(ctx.margin)?;
            let r = commutator_relation_check(&inst, &alpha, &beta, *i, *j, ctx.window, interior)?;
            let text = format!(
                "gamma = {}: {} ({} columns compared)\n",
                fmt_rational(&r.gamma),
                verdict(r.passed),
                r.comparison.compared
            );
            Ok(ctx.report(
                "aut commutator",
                json!({ "alpha": q(&alpha), "beta": q(&beta), "i": i, "j": j }),
                json!({
                    "passed": r.passed,
                    "gamma": q(&r.gamma),
                    "expected_gamma": q(&(&alpha * &beta * int(j - i))),
                    "compared": r.comparison.compared,
                    "skipped": r.comparison.skipped,
                    "mismatches": basis_list(&inst, &r.comparison.mismatches),
                }),
                r.passed,
                text,
            ))
        }
    }
}

fn cmd_spec(action: &SpecAction) -> Result<Report> {
    match action {
        SpecAction::Parse { file, common } => {
            let ctx = Ctx::load(common, file.as_deref())?;
            let cov = ctx.spec.coverage();
            let families: Vec<Value> = ctx
                .spec
                .families
                .iter()
                .map(|f| json!({ "name": f.name, "offset": h(f.offset) }))
                .collect();
            let text = format!(
                "{}: {} families, {} rules ({} zero), {} pairs without a rule\n",
                ctx.spec.name,
                families.len(),
                cov.declared,
                cov.declared_zero,
                cov.missing.len()
            );
            Ok(ctx.report(
                "spec parse",
                json!({}),
                json!({
                    "name": ctx.spec.name,
                    "parameters": ctx.spec.parameters.iter().map(|p| p.name()).collect::<Vec<_>>(),
                    "families": families,
                    "rules": cov.declared,
                    "zero_rules": cov.declared_zero,
                    "missing": cov.missing,
                }),
                true,
                text,
            ))
        }
        SpecAction::Print { file, common } => {
            let ctx = Ctx::load(common, file.as_deref())?;
            let text = print_spec(&ctx.spec);
            Ok(ctx.report("spec print", json!({}), json!({ "text": text }), true, text.clone()))
        }
    }
}
