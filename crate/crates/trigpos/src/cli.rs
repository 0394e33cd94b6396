//! Command-line surface: `prove`, `check`, `roots` and `corpus`.
//!
//! Exit codes: 0 success, 1 proof or check failure, 2 usage or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::expr::parse_constant;
use crate::mixedtrig::{degrees_to_text, parse_degrees, MixedTrigPoly};
use crate::positivity::{isolate_first_positive_root, isolate_first_root_above, isolate_real_roots, IntervalSpec};
use crate::prover::{
    check_certificate, corpus, parse_poly_file, prove, read_bundle, write_bundle, BundleError, Clearing,
    CorpusEntry, ProofCertificate, ProofGoal, ProveError, ProverConfig, SplitSource,
};
use crate::sample::find_nonpositive_point;
use crate::scalar::{
    interval_decimal_prefix, scalar_to_decimal, NumericValue, Rational, RationalInterval, Sign, DEFAULT_PRECISION_CEILING,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

// ---------------------------------------------------------------------------
// Goal files

/// A goal file: `key: value` lines with `#` comments.
///
/// Keys: `name`, `expr`, `lo`, `hi` (required); `lo_open`, `hi_open`
/// (default `true`); `clearing`, `clearing_factor`, `split`, `degrees`,
/// `right_degrees`, `expect_root` (optional); `expect` is `proof` (default)
/// or `refutation` for a goal that is known to be false.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoalFile {
    pub name: String,
    pub expr: String,
    pub lo: String,
    pub hi: String,
    pub lo_open: bool,
    pub hi_open: bool,
    pub clearing: Option<String>,
    pub clearing_factor: Option<String>,
    pub split: Option<String>,
    pub degrees: Option<String>,
    pub right_degrees: Option<String>,
    pub expect_root: Option<String>,
    pub expect_refutation: bool,
    lines: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct GoalFileError {
    /// 1-based; 0 when the problem is not tied to one line.
    pub line: usize,
    pub message: String,
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "yes" => Some(true),
        "false" | "no" => Some(false),
        _ => None,
    }
}

impl GoalFile {
    pub fn parse(text: &str) -> Result<GoalFile, GoalFileError> {
        let mut g = GoalFile {
            lo_open: true,
            hi_open: true,
            ..GoalFile::default()
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| GoalFileError { line, message };
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| err(format!("expected `key: value`, found `{}`", content)))?;
            let key = key.trim();
            let value = value.trim().to_string();
            if g.lines.iter().any(|(k, _)| k == key) {
                return Err(err(format!("duplicate key `{}`", key)));
            }
            match key {
                "name" => g.name = value,
                "expr" => g.expr = value,
                "lo" => g.lo = value,
                "hi" => g.hi = value,
                "lo_open" | "hi_open" => {
                    let b = parse_bool(&value).ok_or_else(|| err(format!("`{}` must be true or false", key)))?;
                    if key == "lo_open" {
                        g.lo_open = b;
                    } else {
                        g.hi_open = b;
                    }
                }
                "clearing" => g.clearing = Some(value),
                "clearing_factor" => g.clearing_factor = Some(value),
                "split" => g.split = Some(value),
                "degrees" => g.degrees = Some(value),
                "right_degrees" => g.right_degrees = Some(value),
                "expect_root" => g.expect_root = Some(value),
                "expect" => {
                    g.expect_refutation = match value.as_str() {
                        "proof" => false,
                        "refutation" => true,
                        _ => return Err(err("`expect` must be proof or refutation".into())),
                    }
                }
                _ => return Err(err(format!("unknown key `{}`", key))),
            }
            g.lines.push((key.to_string(), line));
        }
        for key in ["name", "expr", "lo", "hi"] {
            if !g.lines.iter().any(|(k, _)| k == key) {
                return Err(GoalFileError {
                    line: 0,
                    message: format!("missing required key `{}`", key),
                });
            }
        }
        Ok(g)
    }

    fn line_of(&self, key: &str) -> usize {
        self.lines.iter().find(|(k, _)| k == key).map_or(0, |(_, l)| *l)
    }

    fn err(&self, key: &str, message: impl std::fmt::Display) -> GoalFileError {
        GoalFileError {
            line: self.line_of(key),
            message: format!("{}: {}", key, message),
        }
    }

    fn constant(&self, key: &str, text: &str) -> Result<NumericValue, GoalFileError> {
        parse_constant(text).map_err(|e| self.err(key, e))
    }

    pub fn to_goal_and_config(&self) -> Result<(ProofGoal, ProverConfig), GoalFileError> {
        let f = MixedTrigPoly::parse(&self.expr).map_err(|e| self.err("expr", e))?;
        let lo = self.constant("lo", &self.lo)?;
        let hi = self.constant("hi", &self.hi)?;
        let interval = IntervalSpec::new(lo, hi, self.lo_open, self.hi_open).map_err(|e| self.err("hi", e))?;
        let clearing = match (&self.clearing, &self.clearing_factor) {
            (note, Some(factor)) => Some(Clearing {
                note: note.clone().unwrap_or_default(),
                factor: MixedTrigPoly::parse(factor).map_err(|e| self.err("clearing_factor", e))?,
            }),
            (Some(_), None) => {
                return Err(self.err("clearing", "a clearing note needs a clearing_factor"));
            }
            (None, None) => None,
        };
        let mut config = ProverConfig::default();
        if let Some(s) = &self.split {
            config.split_hint = Some(self.constant("split", s)?);
        }
        if let Some(d) = &self.degrees {
            config.left_degrees = Some(parse_degrees(d).map_err(|e| self.err("degrees", e))?);
        }
        if let Some(d) = &self.right_degrees {
            config.right_degrees = Some(parse_degrees(d).map_err(|e| self.err("right_degrees", e))?);
        }
        let goal = ProofGoal {
            name: self.name.clone(),
            f,
            interval,
            clearing,
        };
        Ok((goal, config))
    }
}

// ---------------------------------------------------------------------------
// Arguments

#[derive(Debug, Parser)]
#[command(name = "trigpos", version, about = "Exact positivity proofs for mixed trigonometric polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prove the goal of a goal file and optionally write a certificate bundle.
    Prove {
        goal: PathBuf,
        #[command(flatten)]
        knobs: Knobs,
        /// Directory for the certificate bundle.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Replay a certificate bundle.
    Check {
        bundle: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Isolate real roots of a polynomial file.
    Roots {
        poly: PathBuf,
        /// Only the smallest positive root.
        #[arg(long)]
        first_positive: bool,
        /// Enclosure width, as a rational or decimal (e.g. 1/1000000, 1e-6).
        #[arg(long, default_value = "1/1000000")]
        width: String,
        /// Upper end of the search for the first positive root.
        #[arg(long, default_value = "10")]
        search_hi: String,
        #[arg(long, default_value_t = crate::scalar::DEFAULT_PRECISION_CEILING)]
        precision_ceiling: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run or list the built-in corpus.
    Corpus {
        #[arg(long)]
        run: bool,
        #[arg(long)]
        table: bool,
        /// Restrict to the named entries.
        #[arg(long)]
        only: Vec<String>,
        /// Write one bundle per entry below this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct Knobs {
    /// Cut point, e.g. 157/100.
    #[arg(long)]
    split: Option<String>,
    /// Left-piece degrees, e.g. cos:4=20,cos:2=16,sin:2=11.
    #[arg(long)]
    degrees: Option<String>,
    /// Right-piece degrees in the same form.
    #[arg(long)]
    right_degrees: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    root_width: Option<String>,
    #[arg(long)]
    precision_ceiling: Option<u32>,
    #[arg(long)]
    max_chain_depth: Option<u32>,
}

impl Knobs {
    fn apply(&self, config: &mut ProverConfig) -> Result<(), String> {
        if let Some(s) = &self.split {
            config.split_hint = Some(parse_constant(s).map_err(|e| format!("--split: {}", e))?);
        }
        if let Some(d) = &self.degrees {
            config.left_degrees = Some(parse_degrees(d).map_err(|e| format!("--degrees: {}", e))?);
        }
        if let Some(d) = &self.right_degrees {
            config.right_degrees = Some(parse_degrees(d).map_err(|e| format!("--right-degrees: {}", e))?);
        }
        if let Some(n) = self.max_degree {
            config.max_taylor_degree = n;
        }
        if let Some(w) = &self.root_width {
            config.root_width = parse_rational(w).map_err(|e| format!("--root-width: {}", e))?;
        }
        if let Some(c) = self.precision_ceiling {
            config.precision_ceiling = c;
        }
        if let Some(d) = self.max_chain_depth {
            config.max_chain_depth = d;
        }
        Ok(())
    }
}

/// `a/b`, an integer, a decimal `0.001`, or scientific `1e-7`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    let bad = || format!("`{}` is not a rational number", t);
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        let e: i32 = e.parse().map_err(|_| bad())?;
        let ten = Rational::from_integer(BigInt::from(10));
        let scale = if e >= 0 { ten.pow(e) } else { Rational::one() / ten.pow(-e) };
        return Ok(parse_rational(m)? * scale);
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let q = Rational::new(n, BigInt::from(10).pow(frac.len() as u32));
        return Ok(if negative { -q } else { q });
    }
    parse_constant(t).ok().and_then(|v| v.as_rational()).ok_or_else(bad)
}

// ---------------------------------------------------------------------------
// Running

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{}", text) } else { write!(err, "{}", text) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Prove {
            goal,
            knobs,
            out: dir,
            format,
        } => cmd_prove(&goal, &knobs, dir.as_deref(), format, out),
        Command::Check { bundle, format } => cmd_check(&bundle, format, out),
        Command::Roots {
            poly,
            first_positive,
            width,
            search_hi,
            precision_ceiling,
            format,
        } => cmd_roots(&poly, first_positive, &width, &search_hi, precision_ceiling, format, out),
        Command::Corpus {
            run,
            table,
            only,
            out: dir,
            format,
        } => cmd_corpus(run, table, &only, dir.as_deref(), format, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(message)) => {
            let _ = writeln!(err, "error: {}", message);
            EXIT_USAGE
        }
    }
}

/// Malformed input; maps to exit status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Usage>;

fn print(out: &mut dyn Write, text: &str) {
    let _ = out.write_all(text.as_bytes());
}

fn load_goal(path: &Path) -> Result<(ProofGoal, ProverConfig), Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {}", path.display(), e)))?;
    let file = GoalFile::parse(&text).map_err(|e| Usage(format!("{}: {}", path.display(), e)))?;
    file.to_goal_and_config()
        .map_err(|e| Usage(format!("{}: {}", path.display(), e)))
}

fn cmd_prove(path: &Path, knobs: &Knobs, dir: Option<&Path>, format: Format, out: &mut dyn Write) -> CmdResult {
    let (goal, mut config) = load_goal(path)?;
    knobs.apply(&mut config).map_err(Usage)?;
    match prove(&goal, &config) {
        Ok(cert) => {
            let report = check_certificate(&cert);
            if let Some(dir) = dir {
                write_bundle(&cert, &report, dir)?;
            }
            match format {
                Format::Text => print(out, &certificate_summary(&cert, &report)),
                Format::Structured => print(out, &json_line(&certificate_json(&cert, &report))),
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Err(e) if e.is_input_error() => Err(Usage(e.to_string())),
        Err(e) => {
            let refuted = counterexample(&goal);
            match format {
                Format::Text => {
                    let mut s = failure_text(&goal.name, &e);
                    if let Some((x, sign)) = &refuted {
                        let _ = writeln!(s, "counterexample: f(x) {} 0 at x = {} (certified)", sign_relation(*sign), x);
                    }
                    print(out, &s)
                }
                Format::Structured => print(
                    out,
                    &json_line(&json!({
                        "name": goal.name,
                        "status": if refuted.is_some() { "refuted" } else { "failed" },
                        "error": e.to_string(),
                        "attempts": e.attempts(),
                        "counterexample": refuted.as_ref().map(|(x, _)| x.to_string()),
                    })),
                ),
            }
            Ok(EXIT_FAILURE)
        }
    }
}

fn json_line(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize"))
}

fn split_label(cert: &ProofCertificate) -> String {
    match &cert.split {
        Some(s) => format!(
            "{} ({}{})",
            s.point,
            if s.source == SplitSource::Hint { "hint" } else { "auto" },
            if s.retried { ", lowered once" } else { "" }
        ),
        None => "none".into(),
    }
}

fn certificate_summary(cert: &ProofCertificate, report: &crate::prover::CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "goal {}: f > 0 on {}", cert.goal.name, cert.goal.interval);
    let _ = writeln!(s, "split: {}", split_label(cert));
    for (side, b) in [("left", Some(&cert.left)), ("right", cert.right.as_ref())] {
        let Some(b) = b else { continue };
        let _ = writeln!(
            s,
            "{} piece {}: degrees {}, reduced polynomial of degree {}",
            side,
            b.interval(),
            degrees_to_text(&b.degrees()),
            b.reduced().degree().unwrap_or(0)
        );
        for line in b.sign.outline().lines() {
            let _ = writeln!(s, "  {}", line);
        }
    }
    let _ = writeln!(s, "{}", report);
    s
}

fn certificate_json(cert: &ProofCertificate, report: &crate::prover::CheckReport) -> serde_json::Value {
    json!({
        "name": cert.goal.name,
        "status": if report.passed() { "certified" } else { "invalid" },
        "interval": cert.goal.interval.to_string(),
        "split": cert.split.as_ref().map(|s| s.point.to_string()),
        "left_degrees": degrees_to_text(&cert.left.degrees()),
        "right_degrees": cert.right.as_ref().map(|b| degrees_to_text(&b.degrees())),
        "report": report,
    })
}

fn failure_text(name: &str, e: &ProveError) -> String {
    let mut s = format!("goal {}: not certified\n{}\n", name, e);
    for a in e.attempts() {
        let _ = writeln!(s, "  tried {}", a);
    }
    s
}

fn cmd_check(dir: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let cert = read_bundle(dir).map_err(|e: BundleError| Usage(e.to_string()))?;
    let report = check_certificate(&cert);
    match format {
        Format::Text => print(out, &format!("{}\n", report)),
        Format::Structured => print(out, &json_line(&serde_json::to_value(&report).expect("report serializes"))),
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

/// `[l, u]` with its certified decimal prefix, e.g. `2.464993…`.
pub fn describe_root(iv: &RationalInterval) -> String {
    let prefix = interval_decimal_prefix(iv, 30).map_or_else(|| "?".into(), |p| format!("{}…", p));
    format!("[{}, {}] prefix {}", iv.lo, iv.hi, prefix)
}

fn cmd_roots(
    path: &Path,
    first_positive: bool,
    width: &str,
    search_hi: &str,
    ceiling: u32,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {}", path.display(), e)))?;
    let p = parse_poly_file(&text).map_err(|e| Usage(format!("{}: {}", path.display(), e)))?;
    let width = parse_rational(width).map_err(Usage)?;
    if width <= Rational::zero() {
        return Err(Usage("--width must be positive".into()));
    }
    if p.is_zero() {
        return Err(Usage("the zero polynomial has no isolated roots".into()));
    }
    let roots = if first_positive {
        let hi = parse_constant(search_hi)?;
        isolate_first_positive_root(&p, &hi, &width, ceiling)?.into_iter().collect()
    } else {
        isolate_real_roots(&p, &width, ceiling)?
    };
    match format {
        Format::Text => {
            if roots.is_empty() {
                print(out, "NoRoot\n");
            }
            for r in &roots {
                print(out, &format!("{}\n", describe_root(r)));
            }
        }
        Format::Structured => {
            let items: Vec<_> = roots
                .iter()
                .map(|r| {
                    json!({
                        "lo": r.lo.to_string(),
                        "hi": r.hi.to_string(),
                        "prefix": interval_decimal_prefix(r, 30),
                    })
                })
                .collect();
            print(out, &json_line(&json!({ "roots": items })));
        }
    }
    Ok(EXIT_OK)
}

/// Outcome of one corpus run.
#[derive(Debug, Clone)]
pub struct CorpusOutcome {
    pub name: String,
    pub certified: bool,
    /// A certified point where the goal's difference is not positive.
    pub counterexample: Option<(Rational, Sign)>,
    /// Certified decimal prefix of the first root of the left reduction
    /// beyond the goal's start, when the entry names an expected prefix.
    pub root: Option<String>,
    /// Certified (with the expected root prefix, if any) when a proof is
    /// expected, refuted when a refutation is.
    pub as_expected: bool,
    pub detail: String,
    pub split: String,
    pub left_degrees: String,
    pub right_degrees: String,
    pub seconds: f64,
    pub certificate: Option<ProofCertificate>,
}

pub fn run_entry(entry: &CorpusEntry) -> CorpusOutcome {
    let start = Instant::now();
    let result = prove(&entry.goal, &entry.config);
    let mut outcome = match result {
        Ok(cert) => {
            let report = check_certificate(&cert);
            CorpusOutcome {
                name: entry.name.clone(),
                certified: report.passed(),
                counterexample: None,
                root: None,
                as_expected: false,
                detail: report.to_string().lines().last().unwrap_or("").to_string(),
                split: cert.split.as_ref().map_or("none".into(), |s| point_text(&s.point)),
                left_degrees: degrees_to_text(&cert.left.degrees()),
                right_degrees: cert.right.as_ref().map_or("-".into(), |b| degrees_to_text(&b.degrees())),
                seconds: 0.0,
                certificate: Some(cert),
            }
        }
        Err(e) => CorpusOutcome {
            name: entry.name.clone(),
            certified: false,
            counterexample: None,
            root: None,
            as_expected: false,
            detail: e.to_string(),
            split: "-".into(),
            left_degrees: "-".into(),
            right_degrees: "-".into(),
            seconds: 0.0,
            certificate: None,
        },
    };
    if !outcome.certified {
        outcome.counterexample = counterexample(&entry.goal);
        if let Some((x, sign)) = &outcome.counterexample {
            outcome.detail = format!("{}; f(x) {} 0 at x = {}", outcome.detail, sign_relation(*sign), x);
        }
    }
    let mut root_ok = true;
    if let (Some(want), Some(cert)) = (&entry.expected.root_prefix, &outcome.certificate) {
        outcome.root = left_root_prefix(cert);
        root_ok = outcome.root.as_deref().is_some_and(|p| p.starts_with(want.as_str()));
        if !root_ok {
            outcome.detail = format!(
                "{}; expected root prefix {} but found {}",
                outcome.detail,
                want,
                outcome.root.as_deref().unwrap_or("no root")
            );
        }
    }
    outcome.as_expected = if entry.expected.refutation {
        outcome.counterexample.is_some()
    } else {
        outcome.certified && root_ok
    };
    outcome.seconds = start.elapsed().as_secs_f64();
    outcome
}

/// Decimal prefix of the first root of the left reduction in `(lo, hi]` of
/// the whole goal interval, isolated to width 10⁻⁸.
fn left_root_prefix(cert: &ProofCertificate) -> Option<String> {
    let g = &cert.goal.interval;
    let width = Rational::new(BigInt::one(), BigInt::from(100_000_000));
    let enc = isolate_first_root_above(cert.left.reduced(), &g.lo, &g.hi, &width, DEFAULT_PRECISION_CEILING)
        .ok()??;
    interval_decimal_prefix(&enc, 30)
}

fn sign_relation(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "<",
        Sign::Zero => "=",
        Sign::Positive => ">",
    }
}

/// Certified sample point in the goal interval where `f` is not positive.
pub fn counterexample(goal: &ProofGoal) -> Option<(Rational, Sign)> {
    let lo = goal.interval.lo.enclose(64).hi;
    let hi = goal.interval.hi.enclose(64).lo;
    if lo >= hi {
        return None;
    }
    find_nonpositive_point(&goal.f, &lo, &hi, 63)
}

/// A split point as a decimal when it has a short terminating expansion
/// (`157/100` as `1.57`), otherwise in its exact form.
fn point_text(v: &NumericValue) -> String {
    if let Some(q) = v.as_rational() {
        for digits in 0..=6u32 {
            let scaled = &q * Rational::from_integer(BigInt::from(10u32).pow(digits));
            if scaled.is_integer() {
                return scalar_to_decimal(v, digits).map_or_else(|_| v.to_string(), |d| d.to_string());
            }
        }
    }
    v.to_string()
}

fn entry_kind(e: &CorpusEntry) -> &'static str {
    match (e.primary, e.expected.refutation) {
        (_, true) => "refute",
        (true, false) => "primary",
        (false, false) => "sanity",
    }
}

fn hint_text(c: &ProverConfig) -> (String, String, String) {
    (
        c.split_hint.as_ref().map_or("auto".into(), point_text),
        c.left_degrees.as_ref().map_or("search".into(), degrees_to_text),
        c.right_degrees.as_ref().map_or("search".into(), degrees_to_text),
    )
}

fn cmd_corpus(
    run: bool,
    table: bool,
    only: &[String],
    dir: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let all = corpus();
    for name in only {
        if !all.iter().any(|e| &e.name == name) {
            return Err(Usage(format!("no corpus entry named `{}`", name)));
        }
    }
    let mut entries: Vec<&CorpusEntry> = all.iter().filter(|e| only.is_empty() || only.contains(&e.name)).collect();
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    if !run {
        let rows: Vec<_> = entries
            .iter()
            .map(|e| {
                let (split, l, r) = hint_text(&e.config);
                (e, split, l, r)
            })
            .collect();
        match format {
            Format::Text => {
                let mut s = format!(
                    "{:<13} {:<8} {:<24} {:<10} {:<32} {:<32} {}\n",
                    "entry", "kind", "interval", "split", "left degrees", "right degrees", "root"
                );
                for (e, split, l, r) in rows {
                    let _ = writeln!(
                        s,
                        "{:<13} {:<8} {:<24} {:<10} {:<32} {:<32} {}",
                        e.name,
                        entry_kind(e),
                        e.goal.interval.to_string(),
                        split,
                        l,
                        r,
                        e.expected.root_prefix.as_deref().unwrap_or("-")
                    );
                }
                print(out, &s);
            }
            Format::Structured => {
                let items: Vec<_> = rows
                    .iter()
                    .map(|(e, split, l, r)| {
                        json!({
                            "name": e.name,
                            "primary": e.primary,
                            "kind": entry_kind(e),
                            "interval": e.goal.interval.to_string(),
                            "split": split,
                            "left_degrees": l,
                            "right_degrees": r,
                            "root_prefix": e.expected.root_prefix,
                        })
                    })
                    .collect();
                print(out, &json_line(&json!({ "entries": items })));
            }
        }
        return Ok(EXIT_OK);
    }
    let mut outcomes = Vec::new();
    for e in entries {
        let o = run_entry(e);
        if let (Some(dir), Some(cert)) = (dir, &o.certificate) {
            write_bundle(cert, &check_certificate(cert), &dir.join(&o.name))?;
        }
        outcomes.push(o);
    }
    let certified = outcomes.iter().filter(|o| o.certified).count();
    let expected = outcomes.iter().filter(|o| o.as_expected).count();
    match format {
        Format::Text => {
            let mut s = String::new();
            if table {
                let _ = writeln!(
                    s,
                    "{:<13} {:<6} {:<10} {:<32} {:<32} {:<12} {:>9}",
                    "entry", "status", "split", "left degrees", "right degrees", "root", "time [s]"
                );
            }
            for o in &outcomes {
                let status = match (o.certified, o.as_expected) {
                    (true, true) => "PASS",
                    (false, true) => "XFAIL",
                    (true, false) => "XPASS",
                    (false, false) => "FAIL",
                };
                if table {
                    let _ = writeln!(
                        s,
                        "{:<13} {:<6} {:<10} {:<32} {:<32} {:<12} {:>9.2}",
                        o.name,
                        status,
                        o.split,
                        o.left_degrees,
                        o.right_degrees,
                        o.root.as_deref().map_or("-".to_string(), |r| format!("{:.10}…", r)),
                        o.seconds
                    );
                } else {
                    let _ = writeln!(s, "{} {} ({:.2} s): {}", status, o.name, o.seconds, o.detail);
                }
            }
            let _ = writeln!(
                s,
                "{}/{} entries certified, {}/{} as expected (times are wall-clock, not part of any certificate)",
                certified,
                outcomes.len(),
                expected,
                outcomes.len()
            );
            print(out, &s);
        }
        Format::Structured => {
            let items: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "certified": o.certified,
                        "as_expected": o.as_expected,
                        "root_prefix": o.root,
                        "counterexample": o.counterexample.as_ref().map(|(x, _)| x.to_string()),
                        "detail": o.detail,
                        "split": o.split,
                        "left_degrees": o.left_degrees,
                        "right_degrees": o.right_degrees,
                        "seconds": o.seconds,
                    })
                })
                .collect();
            print(out, &json_line(&json!({ "entries": items, "certified": certified, "as_expected": expected })));
        }
    }
    Ok(if expected == outcomes.len() { EXIT_OK } else { EXIT_FAILURE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goal_file_round_trip() {
        let text = "# comment\nname: t\nexpr: x*sin(x)  # trailing\nlo: 0\nhi: pi/2\nsplit: 1/2\ndegrees: sin:1=3\n";
        let g = GoalFile::parse(text).unwrap();
        assert_eq!(g.name, "t");
        assert_eq!(g.expr, "x*sin(x)");
        assert!(g.lo_open && g.hi_open);
        let (goal, config) = g.to_goal_and_config().unwrap();
        assert_eq!(goal.interval.hi, NumericValue::half_pi());
        assert_eq!(config.split_hint, Some(NumericValue::from_ratio(1, 2)));
        assert_eq!(degrees_to_text(config.left_degrees.as_ref().unwrap()), "sin:1=3");
    }

    #[test]
    fn goal_file_errors_carry_lines() {
        let e = GoalFile::parse("name: t\nbogus: 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = GoalFile::parse("name: t\nexpr: x\nlo: 0\n").unwrap_err();
        assert!(e.message.contains("hi"), "{e}");
        let g = GoalFile::parse("name: t\nexpr: x +* 2\nlo: 0\nhi: 1\n").unwrap();
        assert_eq!(g.to_goal_and_config().unwrap_err().line, 2);
        let e = GoalFile::parse("name: t\nname: u\n").unwrap_err();
        assert!(e.message.contains("duplicate"));
    }

    #[test]
    fn rational_arguments() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/1000000").unwrap(), r(1, 1_000_000));
        assert_eq!(parse_rational("1e-7").unwrap(), r(1, 10_000_000));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), r(-3, 2));
        assert_eq!(parse_rational("3").unwrap(), r(3, 1));
        assert!(parse_rational("pi").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["trigpos", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["trigpos", "prove", "/nonexistent/missing.goal"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["trigpos", "corpus", "--only", "nope"], &mut out, &mut err), EXIT_USAGE);
    }
}
