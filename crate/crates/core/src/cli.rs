//! Command-line front end. Every subcommand produces one report, printed as
//! text or as a JSON document.
//!
//! Exit codes: 0 when every check passed, 1 when a check failed, 2 for usage
//! or input errors, 3 when fuel or a size cap ran out.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{builtin, lemma_replay, verify_entry, CatalogEntry, KEYS};
use crate::constructions::{
    build_char2_example, build_unipotent_group, build_v, build_vstar, commutator_type,
    matrix_left_engel_check, multi_weight, nonnilpotence_witness, relation4_filter, CommutatorTree,
};
use crate::engel::{is_left_n_engel, is_right_n_engel, is_sandwich_set, is_strong_sandwich_set};
use crate::error::{Error, Result};
use crate::expr::evaluate;
use crate::lie::{parse_lie, LieAlgebra};
use crate::pc::DEFAULT_FUEL;
use crate::report::{
    Mode, SamplingPolicy, Verdict, VerdictReport, DEFAULT_SAMPLES, DEFAULT_SEED,
    DEFAULT_WORD_LENGTH,
};
use crate::subgroup::DEFAULT_MAX_CLASS;

pub const FUEL_ENV: &str = "SANDWICHLAB_FUEL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "sandwichlab",
    version,
    about = "Engel and sandwich checks for pc groups and Lie algebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_LENGTH)]
    pub max_word_length: usize,
    /// Collection steps per product; overrides SANDWICHLAB_FUEL.
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CLASS)]
    pub max_class: usize,
    /// Enumerate quantified domains instead of sampling them.
    #[arg(long, global = true)]
    pub exhaustive: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in groups.
    CatalogList,
    /// Recompute and compare the recorded invariants of a built-in group.
    Verify {
        key: String,
    },
    Order {
        key: String,
    },
    Class {
        key: String,
    },
    /// Normal form of a word or expression.
    Collect {
        key: String,
        word: String,
    },
    Commutator {
        key: String,
        left: String,
        right: String,
    },
    /// Whether the named generators form a sandwich set.
    SandwichCheck {
        key: String,
    },
    StrongSandwichCheck {
        key: String,
    },
    EngelCheck {
        key: String,
        element: String,
        #[arg(long)]
        n: usize,
        /// Check the right Engel condition instead of the left one.
        #[arg(long)]
        right: bool,
    },
    /// Replay commutator identities: r_inv, beta, gamma or all.
    LemmaReplay {
        suite: String,
    },
    /// Check the axioms of a Lie algebra file or of `v`, `vstar:<n>`, `char2:<n>`.
    LieCheck {
        target: String,
    },
    /// The truncated algebra V* and its unipotent group.
    Vstar {
        #[arg(long)]
        n: usize,
        /// Sample the left 3-Engel condition for a = 1 + ad(x).
        #[arg(long, conflicts_with = "witness")]
        engel: bool,
        /// Search for a nontrivial commutator of this many conjugates of a.
        #[arg(long)]
        witness: Option<usize>,
        /// Include the algebra source and the generator matrices.
        #[arg(long)]
        dump: bool,
    },
    /// Multi-weight and type of a commutator such as `[x,a1,a2]`.
    Type {
        expression: String,
    },
}

impl RunConfig {
    fn policy(&self) -> SamplingPolicy {
        SamplingPolicy {
            mode: if self.exhaustive {
                Mode::Exhaustive
            } else {
                Mode::Sampled
            },
            samples: self.samples,
            seed: self.seed,
            max_word_length: self.max_word_length,
            ..SamplingPolicy::default()
        }
    }

    /// Flag, then environment, then the default.
    fn fuel(&self) -> Result<u64> {
        if let Some(f) = self.fuel {
            return Ok(f);
        }
        match std::env::var(FUEL_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Error::Precondition(format!("{FUEL_ENV} must be a natural number, got `{v}`"))
            }),
            Err(_) => Ok(DEFAULT_FUEL),
        }
    }

    fn entry(&self, key: &str) -> Result<CatalogEntry> {
        let mut entry = builtin(key)?;
        entry.presentation = entry.presentation.with_fuel(self.fuel()?);
        Ok(entry)
    }
}

/// What a subcommand produced.
struct Outcome {
    verdict: Verdict,
    fields: Value,
    counterexamples: Vec<BTreeMap<String, String>>,
    text: String,
}

impl Outcome {
    fn computed(fields: Value, text: String) -> Self {
        Self {
            verdict: Verdict::Pass,
            fields,
            counterexamples: Vec::new(),
            text,
        }
    }

    fn from_report(r: VerdictReport, text_prefix: &str) -> Self {
        let mut text = format!("{text_prefix}{}: {}\n", r.check, verdict_name(r.verdict));
        let _ = writeln!(
            text,
            "instances: {} ({:?}, seed {})",
            r.samples, r.mode, r.seed
        );
        if let Some(w) = &r.counterexample {
            let _ = writeln!(text, "counterexample: {}", format_witness(w));
        }
        for n in &r.notes {
            let _ = writeln!(text, "note: {n}");
        }
        Self {
            verdict: r.verdict,
            counterexamples: r.counterexample.iter().cloned().collect(),
            fields: to_value(&r),
            text,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn verdict_name(v: Verdict) -> String {
    to_value(&v).as_str().expect("unit variant").to_string()
}

fn format_witness(w: &BTreeMap<String, String>) -> String {
    w.iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn pass_or_fail(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn command_name(c: &Command) -> (&'static str, String) {
    match c {
        Command::CatalogList => ("catalog-list", String::new()),
        Command::Verify { key } => ("verify", key.clone()),
        Command::Order { key } => ("order", key.clone()),
        Command::Class { key } => ("class", key.clone()),
        Command::Collect { key, .. } => ("collect", key.clone()),
        Command::Commutator { key, .. } => ("commutator", key.clone()),
        Command::SandwichCheck { key } => ("sandwich-check", key.clone()),
        Command::StrongSandwichCheck { key } => ("strong-sandwich-check", key.clone()),
        Command::EngelCheck { key, .. } => ("engel-check", key.clone()),
        Command::LemmaReplay { suite } => ("lemma-replay", suite.clone()),
        Command::LieCheck { target } => ("lie-check", target.clone()),
        Command::Vstar { n, .. } => ("vstar", n.to_string()),
        Command::Type { expression } => ("type", expression.clone()),
    }
}

fn load_lie(target: &str) -> Result<LieAlgebra> {
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Precondition(format!("`{s}` is not a size in `{target}`")))
    };
    match target.split_once(':') {
        None if target.eq_ignore_ascii_case("v") => Ok(build_v()),
        Some(("vstar", n)) => build_vstar(number(n)?),
        Some(("char2", n)) => build_char2_example(number(n)?),
        _ => {
            let text =
                std::fs::read_to_string(target).map_err(|e| Error::Io(format!("{target}: {e}")))?;
            parse_lie(&text)
        }
    }
}

fn sandwich_elements(l: &LieAlgebra) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for i in 0..l.dim() {
        if l.is_sandwich_element(&l.basis(i))? {
            out.push(l.names()[i].clone());
        }
    }
    Ok(out)
}

fn execute(cfg: &RunConfig, cmd: &Command) -> Result<Outcome> {
    let pol = cfg.policy();
    Ok(match cmd {
        Command::CatalogList => {
            let mut rows = Vec::new();
            let mut text = String::new();
            for key in KEYS {
                let e = builtin(key)?;
                let roles: BTreeMap<&str, &str> = e.roles.iter().copied().collect();
                let _ = writeln!(
                    text,
                    "{key:<10} {:>3} gens  {}",
                    e.presentation.len(),
                    e.description
                );
                rows.push(json!({
                    "key": key,
                    "description": e.description,
                    "generators": e.presentation.len(),
                    "roles": roles,
                }));
            }
            Outcome::computed(json!({ "entries": rows }), text)
        }
        Command::Verify { key } => {
            let r = verify_entry(&cfg.entry(key)?, &pol, cfg.max_class)?;
            let mut text = format!("{key}: {}\n", if r.passed { "pass" } else { "fail" });
            let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
            let _ = writeln!(
                text,
                "consistency: {} tests, {} failed, {} inconclusive",
                r.consistency.tests, r.consistency.failed, r.consistency.inconclusive
            );
            let _ = writeln!(
                text,
                "order: {} (expected {}){}",
                show(&r.order.computed.as_ref().map(ToString::to_string)),
                show(&r.order.expected.as_ref().map(ToString::to_string)),
                if r.order.ok { "" } else { " MISMATCH" }
            );
            let _ = writeln!(
                text,
                "class: {} (expected {}){}",
                show(&r.class.computed.map(|c| c.to_string())),
                show(&r.class.expected.map(|c| c.to_string())),
                if r.class.ok { "" } else { " MISMATCH" }
            );
            if let Some(g) = &r.graph {
                let _ = writeln!(
                    text,
                    "graph: {} (expected {}){}",
                    show(&g.computed.as_ref().map(ToString::to_string)),
                    show(&g.expected.as_ref().map(ToString::to_string)),
                    if g.ok { "" } else { " MISMATCH" }
                );
            }
            let sandwich = r.sandwich.report.as_ref().map(|s| verdict_name(s.verdict));
            let _ = writeln!(
                text,
                "sandwich: {} (expected {}){}",
                show(&sandwich),
                r.sandwich.expected,
                if r.sandwich.ok { "" } else { " MISMATCH" }
            );
            if let Some(e) = r
                .order
                .error
                .iter()
                .chain(&r.class.error)
                .chain(&r.sandwich.error)
                .next()
            {
                let _ = writeln!(text, "error: {e}");
            }
            Outcome {
                verdict: pass_or_fail(r.passed),
                counterexamples: r
                    .sandwich
                    .report
                    .iter()
                    .filter_map(|s| s.counterexample.clone())
                    .collect(),
                fields: to_value(&r),
                text,
            }
        }
        Command::Order { key } => {
            let e = cfg.entry(key)?;
            let order = e.presentation.group_order();
            Outcome::computed(json!({ "order": order }), format!("{order}\n"))
        }
        Command::Class { key } => {
            let p = cfg.entry(key)?.presentation;
            let class = p.nilpotency_class(&p.full_sequence()?, cfg.max_class)?;
            Outcome::computed(json!({ "class": class }), format!("{class}\n"))
        }
        Command::Collect { key, word } => {
            let p = cfg.entry(key)?.presentation;
            let nf = p.format_element(&evaluate(&p, word)?);
            Outcome::computed(
                json!({ "input": word, "normal_form": nf }),
                format!("{nf}\n"),
            )
        }
        Command::Commutator { key, left, right } => {
            let p = cfg.entry(key)?.presentation;
            let c = p.commutator(&evaluate(&p, left)?, &evaluate(&p, right)?)?;
            let nf = p.format_element(&c);
            Outcome::computed(
                json!({ "left": left, "right": right, "commutator": nf }),
                format!("{nf}\n"),
            )
        }
        Command::SandwichCheck { key } => {
            let e = cfg.entry(key)?;
            Outcome::from_report(
                is_sandwich_set(&e.presentation, &e.generator_set()?, &pol)?,
                "",
            )
        }
        Command::StrongSandwichCheck { key } => {
            let e = cfg.entry(key)?;
            Outcome::from_report(
                is_strong_sandwich_set(&e.presentation, &e.generator_set()?, &pol)?,
                "",
            )
        }
        Command::EngelCheck {
            key,
            element,
            n,
            right,
        } => {
            let e = cfg.entry(key)?;
            let p = &e.presentation;
            let a = match e.role(element) {
                Ok(a) => a,
                Err(_) => evaluate(p, element)?,
            };
            let r = if *right {
                is_right_n_engel(p, &a, *n, &pol)?
            } else {
                is_left_n_engel(p, &a, *n, &pol)?
            };
            Outcome::from_report(r, &format!("{} ", p.format_element(&a)))
        }
        Command::LemmaReplay { suite } => {
            let r = lemma_replay(suite)?;
            let mut text = String::new();
            for o in &r.items {
                let _ = writeln!(
                    text,
                    "{} {:<7} {} = {}{}",
                    if o.matches { "ok  " } else { "FAIL" },
                    o.group,
                    o.input,
                    o.computed.as_deref().unwrap_or("?"),
                    if o.matches {
                        String::new()
                    } else {
                        format!(" (expected {})", o.expected)
                    }
                );
            }
            let _ = writeln!(text, "{} items, {} mismatches", r.items.len(), r.mismatches);
            let counterexamples = r
                .items
                .iter()
                .filter(|o| !o.matches)
                .map(|o| {
                    let mut w = BTreeMap::new();
                    w.insert("input".to_string(), format!("{}: {}", o.group, o.input));
                    w.insert("expected".to_string(), o.expected.clone());
                    w.insert(
                        "computed".to_string(),
                        o.computed
                            .clone()
                            .or_else(|| o.error.clone())
                            .unwrap_or_default(),
                    );
                    w
                })
                .collect();
            Outcome {
                verdict: pass_or_fail(r.passed()),
                counterexamples,
                fields: to_value(&r),
                text,
            }
        }
        Command::LieCheck { target } => {
            let l = load_lie(target)?;
            let axioms = l.check_axioms();
            let center = l.center().len();
            let sandwich = sandwich_elements(&l)?;
            let series: Vec<usize> = l
                .lower_central_series_upto(cfg.max_class + 1)
                .iter()
                .map(Vec::len)
                .collect();
            let mut text = format!(
                "dim {} over GF({}): axioms {}\n",
                l.dim(),
                l.characteristic(),
                if axioms.passed() { "pass" } else { "FAIL" }
            );
            let _ = writeln!(text, "triples checked: {}", axioms.triples_checked);
            for f in axioms.failures.iter().take(5) {
                let _ = writeln!(text, "failure: {f:?}");
            }
            let _ = writeln!(text, "center dimension: {center}");
            let _ = writeln!(text, "lower central series dimensions: {series:?}");
            let _ = writeln!(text, "sandwich basis elements: {}", sandwich.join(" "));
            let counterexamples = axioms
                .failures
                .iter()
                .take(1)
                .map(|f| BTreeMap::from([("triple".to_string(), format!("{f:?}"))]))
                .collect();
            Outcome {
                verdict: pass_or_fail(axioms.passed()),
                fields: json!({
                    "dim": l.dim(),
                    "characteristic": l.characteristic(),
                    "axioms": axioms,
                    "center_dim": center,
                    "lower_central_series_dims": series,
                    "sandwich_basis_elements": sandwich,
                }),
                counterexamples,
                text,
            }
        }
        Command::Vstar {
            n,
            engel,
            witness,
            dump,
        } => {
            let ctx = build_unipotent_group(*n)?;
            let l = ctx.algebra();
            let axioms = l.check_axioms();
            let mut fields = json!({
                "n": n,
                "dim": l.dim(),
                "generators": ctx.generators().len(),
                "axioms_pass": axioms.passed(),
            });
            let mut text = format!(
                "V*({n}): dim {}, {} group generators, axioms {}\n",
                l.dim(),
                ctx.generators().len(),
                if axioms.passed() { "pass" } else { "FAIL" }
            );
            let mut out = Outcome::computed(Value::Null, String::new());
            out.verdict = pass_or_fail(axioms.passed());
            if *engel {
                let r = matrix_left_engel_check(&ctx, 3, &pol)?;
                let sub = Outcome::from_report(r, "");
                text.push_str(&sub.text);
                fields["engel"] = sub.fields;
                out.counterexamples = sub.counterexamples;
                if out.verdict == Verdict::Pass {
                    out.verdict = sub.verdict;
                }
            }
            if let Some(k) = witness {
                let w = nonnilpotence_witness(&ctx, *k, &pol)?;
                if w.found {
                    let _ = writeln!(text, "depth {k} witness after {} attempts:", w.attempts);
                    for (i, c) in w.conjugators.iter().enumerate() {
                        let _ = writeln!(text, "  g{} = {c}", i + 1);
                    }
                } else {
                    let _ = writeln!(text, "no depth {k} witness in {} attempts", w.attempts);
                    out.verdict = Verdict::Fail;
                }
                fields["witness"] = to_value(&w);
            }
            if *dump {
                text.push_str(&ctx.export_lie());
                text.push_str(&ctx.matrix_dump());
                fields["lie_source"] = Value::String(ctx.export_lie());
                fields["matrices"] = Value::String(ctx.matrix_dump());
            }
            out.fields = fields;
            out.text = text;
            out
        }
        Command::Type { expression } => {
            let t: CommutatorTree = expression.parse()?;
            let w = multi_weight(&t);
            let ty = commutator_type(&t);
            let killed = relation4_filter(&t);
            let e: Vec<String> = w.e.iter().map(|(i, c)| format!("e{i}={c}")).collect();
            let text = format!(
                "{t}\nm = {}, {}\ntype {ty}, {}\n",
                w.m,
                if e.is_empty() {
                    "no letters".to_string()
                } else {
                    e.join(", ")
                },
                if killed { "killed" } else { "kept" }
            );
            Outcome::computed(
                json!({ "tree": t.to_string(), "multi_weight": w, "type": ty, "killed": killed }),
                text,
            )
        }
    })
}

fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass | Verdict::SampledPass | Verdict::Vacuous => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its report to `out`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let cfg = &cli.config;
    let (command, target) = command_name(&cli.command);
    let result = execute(cfg, &cli.command);
    let code = match &result {
        Ok(o) => exit_code(o.verdict),
        Err(e) if e.is_exhaustion() => 3,
        Err(_) => 2,
    };
    match (cfg.format, result) {
        (Format::Json, result) => {
            let (verdict, fields, counterexamples) = match result {
                Ok(o) => (
                    Value::String(verdict_name(o.verdict)),
                    o.fields,
                    o.counterexamples,
                ),
                Err(e) => (
                    Value::String("error".into()),
                    json!({ "error": e.to_string() }),
                    Vec::new(),
                ),
            };
            let doc = json!({
                "tool_version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "target": target,
                "seed": cfg.seed,
                "verdict": verdict,
                "fields": fields,
                "counterexamples": counterexamples,
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        (Format::Text, Ok(o)) => {
            let _ = out.write_all(o.text.as_bytes());
        }
        (Format::Text, Err(e)) => {
            let _ = writeln!(err, "error: {e}");
        }
    }
    code
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
