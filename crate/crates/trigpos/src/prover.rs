//! Whole-inequality proofs: one cut point `c`, a direct reduction on the
//! left piece `(lo, c]`, a reduction of the reflected form `f(π/2 − x)` on the
//! right piece, a Taylor degree search per piece, and independent replay.

use std::cmp::Ordering;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cli::GoalFile;
use crate::mixedtrig::{
    degrees_to_text, direction_for, reduce_lower_bound, DegreeChoice, MixedTrigPoly, MultiAngleForm,
    ReductionError, ReductionTrace,
};
use crate::poly::Poly;
use crate::positivity::{
    check_sign_certificate, isolate_first_root_above, prove_sign, prove_strict_sign, IntervalSpec,
    SignCertificate, Strategy,
};
use crate::scalar::{
    rational_text, scalar_sign_with, NumericValue, Rational, Sign, DEFAULT_PRECISION_CEILING,
};
use crate::taylor::{self, Direction, TrigFunc};

// ---------------------------------------------------------------------------
// Goals and configuration

/// The positive multiplier that turned the original inequality into `f > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clearing {
    pub note: String,
    pub factor: MixedTrigPoly,
}

/// `f(x) > 0` on `interval ⊆ (0, π/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofGoal {
    pub name: String,
    pub f: MixedTrigPoly,
    pub interval: IntervalSpec,
    pub clearing: Option<Clearing>,
}

impl ProofGoal {
    pub fn validate(&self) -> Result<(), String> {
        let iv = &self.interval;
        iv.validate().map_err(|e| e.to_string())?;
        if self.f.is_empty() {
            return Err("the expression is identically zero".into());
        }
        let zero = NumericValue::zero();
        let half_pi = NumericValue::half_pi();
        let lo = cmp(&iv.lo, &zero)?;
        if lo == Ordering::Less || (lo == Ordering::Equal && !iv.lo_open) {
            return Err(format!("{} is not inside (0, π/2)", iv));
        }
        let hi = cmp(&iv.hi, &half_pi)?;
        if hi == Ordering::Greater || (hi == Ordering::Equal && !iv.hi_open) {
            return Err(format!("{} is not inside (0, π/2)", iv));
        }
        if let Some(c) = &self.clearing {
            clearing_is_positive(&c.factor)?;
        }
        Ok(())
    }
}

/// On `(0, π/2)` every `x^p cos^q x sin^r x` is positive, so a nonempty sum
/// of such monomials with positive coefficients is positive.
fn clearing_is_positive(factor: &MixedTrigPoly) -> Result<(), String> {
    if factor.is_empty() {
        return Err("clearing factor is zero".into());
    }
    for (alpha, p, q, r) in factor.terms() {
        if scalar_sign_with(alpha, DEFAULT_PRECISION_CEILING).map_err(|e| e.to_string())? != Sign::Positive {
            return Err(format!(
                "clearing factor term {}*x^{}*cos(x)^{}*sin(x)^{} has a coefficient that is not positive",
                alpha, p, q, r
            ));
        }
    }
    Ok(())
}

fn cmp(a: &NumericValue, b: &NumericValue) -> Result<Ordering, String> {
    a.cmp_value(b).map_err(|e| e.to_string())
}

/// Serde adapter: an optional [`DegreeChoice`] as `cos:4=20,sin:2=11` text.
mod degree_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::mixedtrig::{degrees_to_text, parse_degrees, DegreeChoice};

    pub fn serialize<S: Serializer>(d: &Option<DegreeChoice>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_some(&degrees_to_text(d)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<DegreeChoice>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_degrees(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Prover knobs; a snapshot travels with every certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProverConfig {
    pub split_hint: Option<NumericValue>,
    #[serde(with = "degree_text")]
    pub left_degrees: Option<DegreeChoice>,
    #[serde(with = "degree_text")]
    pub right_degrees: Option<DegreeChoice>,
    pub max_taylor_degree: u32,
    #[serde(with = "rational_text")]
    pub root_width: Rational,
    pub precision_ceiling: u32,
    pub max_chain_depth: u32,
}

impl Default for ProverConfig {
    fn default() -> Self {
        let s = Strategy::default();
        ProverConfig {
            split_hint: None,
            left_degrees: None,
            right_degrees: None,
            max_taylor_degree: 24,
            root_width: s.root_width,
            precision_ceiling: s.precision_ceiling,
            max_chain_depth: s.max_chain_depth,
        }
    }
}

impl ProverConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_taylor_degree < 1 {
            return Err("max_taylor_degree must be at least 1".into());
        }
        if self.root_width <= Rational::zero() {
            return Err("root_width must be positive".into());
        }
        if self.precision_ceiling < 4 {
            return Err("precision_ceiling must be at least 4 bits".into());
        }
        Ok(())
    }

    pub fn strategy(&self) -> Strategy {
        Strategy {
            max_chain_depth: self.max_chain_depth,
            root_width: self.root_width.clone(),
            precision_ceiling: self.precision_ceiling,
            ..Strategy::default()
        }
    }
}

// ---------------------------------------------------------------------------
// Certificates

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitSource {
    Hint,
    Auto,
}

/// Enclosure `[lo, hi]` of the first root above the goal's start of the
/// trial reduction that fixed an automatic split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEnclosure {
    #[serde(with = "rational_text")]
    pub lo: Rational,
    #[serde(with = "rational_text")]
    pub hi: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub point: NumericValue,
    pub source: SplitSource,
    #[serde(with = "degree_text")]
    pub trial_degrees: Option<DegreeChoice>,
    pub trial_root: Option<RootEnclosure>,
    /// The automatic point was lowered by 1/100 after the right piece failed.
    pub retried: bool,
}

/// One piece: the reduction `L ≤ f` and the certificate `L > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub reduction: ReductionTrace,
    pub sign: SignCertificate,
}

impl Branch {
    pub fn interval(&self) -> &IntervalSpec {
        &self.reduction.interval
    }

    pub fn reduced(&self) -> &Poly {
        &self.reduction.result
    }

    pub fn degrees(&self) -> DegreeChoice {
        self.reduction.terms.iter().map(|t| ((t.func, t.k), t.degree)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub goal: ProofGoal,
    pub config: ProverConfig,
    pub split: Option<SplitRecord>,
    pub left: Branch,
    pub right: Option<Branch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("invalid goal: {0}")]
    InvalidGoal(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("split selection failed: {0}")]
    Split(String),
    #[error("{side} piece {interval}: {reason}")]
    Branch {
        side: Side,
        interval: String,
        reason: String,
        attempts: Vec<String>,
    },
}

impl ProveError {
    /// Malformed input rather than a failed proof.
    pub fn is_input_error(&self) -> bool {
        matches!(self, ProveError::InvalidGoal(_) | ProveError::InvalidConfig(_))
    }

    pub fn attempts(&self) -> &[String] {
        match self {
            ProveError::Branch { attempts, .. } => attempts,
            _ => &[],
        }
    }
}

// ---------------------------------------------------------------------------
// Proving

pub fn prove(goal: &ProofGoal, config: &ProverConfig) -> Result<ProofCertificate, ProveError> {
    goal.validate().map_err(ProveError::InvalidGoal)?;
    config.validate().map_err(ProveError::InvalidConfig)?;
    let form = goal.f.to_multiple_angle();
    let run = |split: Option<SplitRecord>| prove_with_split(goal, config, &form, split);
    if let Some(c) = &config.split_hint {
        let inside = cmp(&goal.interval.lo, c).map_err(ProveError::InvalidConfig)? == Ordering::Less
            && cmp(c, &goal.interval.hi).map_err(ProveError::InvalidConfig)? == Ordering::Less;
        if !inside {
            return Err(ProveError::InvalidConfig(format!(
                "split point {} is not inside {}",
                c, goal.interval
            )));
        }
        return run(Some(SplitRecord {
            point: c.clone(),
            source: SplitSource::Hint,
            trial_degrees: None,
            trial_root: None,
            retried: false,
        }));
    }
    let Some(split) = auto_split(goal, config, &form)? else {
        return run(None);
    };
    match run(Some(split.clone())) {
        Err(ProveError::Branch {
            side: Side::Right, ..
        }) => {
            let lowered = &split.point - &NumericValue::from_ratio(1, 100);
            if cmp(&goal.interval.lo, &lowered).map_err(ProveError::Split)? != Ordering::Less {
                return run(Some(split));
            }
            run(Some(SplitRecord {
                point: lowered,
                retried: true,
                ..split
            }))
        }
        other => other,
    }
}

fn prove_with_split(
    goal: &ProofGoal,
    config: &ProverConfig,
    form: &MultiAngleForm,
    split: Option<SplitRecord>,
) -> Result<ProofCertificate, ProveError> {
    let g = &goal.interval;
    let left_iv = match &split {
        Some(s) => IntervalSpec::new(g.lo.clone(), s.point.clone(), g.lo_open, false),
        None => Ok(g.clone()),
    }
    .map_err(|e| ProveError::InvalidConfig(e.to_string()))?;
    let left = prove_branch(Side::Left, form, &left_iv, config.left_degrees.as_ref(), config)?;
    let right = match &split {
        Some(s) => {
            let iv = right_interval(g, &s.point).map_err(|e| ProveError::InvalidConfig(e))?;
            Some(prove_branch(Side::Right, &form.reflect(), &iv, config.right_degrees.as_ref(), config)?)
        }
        None => None,
    };
    Ok(ProofCertificate {
        goal: goal.clone(),
        config: config.clone(),
        split,
        left,
        right,
    })
}

/// `(c, hi⟩` reflected by `x ↦ π/2 − x`: `⟨π/2 − hi, π/2 − c)`.
pub fn right_interval(goal: &IntervalSpec, c: &NumericValue) -> Result<IntervalSpec, String> {
    let half_pi = NumericValue::half_pi();
    IntervalSpec::new(&half_pi - &goal.hi, &half_pi - c, goal.hi_open, true).map_err(|e| e.to_string())
}

/// Certified strict sign of every coefficient `g` on one piece, computed
/// once and reused by every degree attempt.
struct CoefficientSigns {
    certs: Vec<SignCertificate>,
}

impl CoefficientSigns {
    fn new(form: &MultiAngleForm, iv: &IntervalSpec, strategy: &Strategy) -> Result<Self, ReductionError> {
        let mut certs = Vec::new();
        for t in &form.terms {
            let c = prove_strict_sign(&t.g, iv, strategy).map_err(|e| ReductionError::Indefinite {
                func: t.func,
                k: t.k,
                interval: iv.to_string(),
                reason: e.reason,
            })?;
            certs.push(c);
        }
        Ok(CoefficientSigns { certs })
    }

    fn lookup(&self, g: &Poly, iv: &IntervalSpec) -> Result<SignCertificate, String> {
        self.certs
            .iter()
            .find(|c| c.goal.poly == *g && c.goal.interval == *iv)
            .cloned()
            .ok_or_else(|| format!("no sign certificate for {}", g))
    }

    fn direction(&self, i: usize) -> Direction {
        direction_for(self.certs[i].goal.claimed)
    }
}

/// Smallest and largest admissible degree of each term under the cap.
fn degree_ranges(
    form: &MultiAngleForm,
    signs: &CoefficientSigns,
    cap: u32,
) -> Result<Vec<(u32, u32)>, String> {
    form.terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let dir = signs.direction(i);
            let lo = taylor::min_degree(t.func, dir);
            match taylor::max_degree_at_most(t.func, dir, cap) {
                Some(hi) => Ok((lo, hi)),
                None => Err(format!(
                    "no {} bound for {}({}x) has degree at most {} (the smallest is {})",
                    dir, t.func, t.k, cap, lo
                )),
            }
        })
        .collect()
}

fn choice(form: &MultiAngleForm, degrees: &[u32]) -> DegreeChoice {
    form.terms.iter().zip(degrees).map(|(t, &n)| ((t.func, t.k), n)).collect()
}

/// Cheap necessary condition before a Sturm proof: `L > 0` at sample points.
fn samples_positive(l: &Poly, iv: &IntervalSpec, ceiling: u32) -> Result<(), String> {
    for x in iv.sample_points(16) {
        let x = NumericValue::from_rational(x);
        let s = scalar_sign_with(&l.eval(&x), ceiling).map_err(|e| e.to_string())?;
        if s != Sign::Positive {
            return Err(format!("reduced polynomial is {} at x = {}", s, x));
        }
    }
    Ok(())
}

struct BranchSearch<'a> {
    form: &'a MultiAngleForm,
    iv: &'a IntervalSpec,
    signs: CoefficientSigns,
    strategy: Strategy,
    attempts: Vec<String>,
}

enum AttemptError {
    /// Retrying other degrees cannot help.
    Fatal(String),
    Failed(String),
}

impl BranchSearch<'_> {
    fn attempt(&mut self, degrees: &DegreeChoice) -> Result<Branch, AttemptError> {
        let signs = &self.signs;
        let mut lookup = |g: &Poly, iv: &IntervalSpec| signs.lookup(g, iv);
        let outcome = reduce_lower_bound(self.form, self.iv, degrees, &mut lookup)
            .map_err(|e| match e {
                ReductionError::Inapplicable { .. } => AttemptError::Failed(e.to_string()),
                _ => AttemptError::Fatal(e.to_string()),
            })
            .and_then(|(l, trace)| {
                samples_positive(&l, self.iv, self.strategy.precision_ceiling).map_err(AttemptError::Failed)?;
                let sign = prove_sign(&l, self.iv, Sign::Positive, &self.strategy)
                    .map_err(|f| AttemptError::Failed(f.to_string()))?;
                Ok(Branch { reduction: trace, sign })
            });
        let note = match &outcome {
            Ok(_) => "certified".to_string(),
            Err(AttemptError::Fatal(r)) | Err(AttemptError::Failed(r)) => r.clone(),
        };
        self.attempts.push(format!("degrees {}: {}", degrees_to_text(degrees), note));
        outcome
    }
}

fn prove_branch(
    side: Side,
    form: &MultiAngleForm,
    iv: &IntervalSpec,
    hint: Option<&DegreeChoice>,
    config: &ProverConfig,
) -> Result<Branch, ProveError> {
    let fail = |reason: String, attempts: Vec<String>| ProveError::Branch {
        side,
        interval: iv.to_string(),
        reason,
        attempts,
    };
    let strategy = config.strategy();
    if form.terms.is_empty() {
        let l = form.poly_part.clone();
        let sign = prove_sign(&l, iv, Sign::Positive, &strategy).map_err(|f| fail(f.to_string(), f.trace))?;
        let reduction = ReductionTrace {
            interval: iv.clone(),
            form: form.clone(),
            terms: Vec::new(),
            result: l,
        };
        return Ok(Branch { reduction, sign });
    }
    let signs = CoefficientSigns::new(form, iv, &strategy).map_err(|e| fail(e.to_string(), Vec::new()))?;
    let cap = config.max_taylor_degree;
    let mut search = BranchSearch {
        form,
        iv,
        signs,
        strategy,
        attempts: Vec::new(),
    };

    if let Some(h) = hint {
        let usable: DegreeChoice = h.iter().filter(|(_, &n)| n <= cap).map(|(k, &n)| (*k, n)).collect();
        if form.terms.iter().all(|t| usable.contains_key(&(t.func, t.k))) {
            match search.attempt(&usable) {
                Ok(b) => return Ok(b),
                Err(AttemptError::Fatal(r)) => return Err(fail(r, search.attempts)),
                Err(AttemptError::Failed(_)) => {}
            }
        } else {
            search
                .attempts
                .push(format!("hint {} dropped: degrees above the cap {}", degrees_to_text(h), cap));
        }
    }

    let ranges = degree_ranges(form, &search.signs, cap).map_err(|r| fail(r, search.attempts.clone()))?;
    // Joint ascent: every term one class step (4) higher per level.
    let mut found = None;
    let mut level = 0;
    loop {
        let degrees: Vec<u32> = ranges.iter().map(|&(lo, hi)| (lo + 4 * level).min(hi)).collect();
        match search.attempt(&choice(form, &degrees)) {
            Ok(b) => {
                found = Some((degrees, b));
                break;
            }
            Err(AttemptError::Fatal(r)) => return Err(fail(r, search.attempts)),
            Err(AttemptError::Failed(_)) => {}
        }
        if degrees.iter().zip(&ranges).all(|(&d, &(_, hi))| d == hi) {
            break;
        }
        level += 1;
    }
    let Some((mut degrees, mut best)) = found else {
        let reason = search
            .attempts
            .last()
            .cloned()
            .unwrap_or_else(|| "no degree attempted".into());
        return Err(fail(format!("no degree choice up to {} certifies: {}", cap, reason), search.attempts));
    };
    // Greedy descent: sin terms first, then cos terms, each by ascending k.
    let mut order: Vec<usize> = (0..form.terms.len()).collect();
    order.sort_by_key(|&i| (form.terms[i].func != TrigFunc::Sin, form.terms[i].k));
    for i in order {
        while degrees[i] >= ranges[i].0 + 4 {
            let mut trial = degrees.clone();
            trial[i] -= 4;
            match search.attempt(&choice(form, &trial)) {
                Ok(b) => {
                    degrees = trial;
                    best = b;
                }
                Err(_) => break,
            }
        }
    }
    Ok(best)
}

/// `c = ⌈100·l⌉/100 − 1/100 < l`, where `l` is the start of the first-root
/// enclosure of the reduction at the largest admissible degrees; `None` when
/// that reduction has no root on the goal interval.
fn auto_split(
    goal: &ProofGoal,
    config: &ProverConfig,
    form: &MultiAngleForm,
) -> Result<Option<SplitRecord>, ProveError> {
    let g = &goal.interval;
    if form.terms.is_empty() {
        return Ok(None);
    }
    let strategy = config.strategy();
    let signs = CoefficientSigns::new(form, g, &strategy).map_err(|e| ProveError::Split(e.to_string()))?;
    let ranges = degree_ranges(form, &signs, config.max_taylor_degree).map_err(ProveError::Split)?;
    let degrees = choice(form, &ranges.iter().map(|r| r.1).collect::<Vec<_>>());
    let mut lookup = |p: &Poly, iv: &IntervalSpec| signs.lookup(p, iv);
    let (l, _) = reduce_lower_bound(form, g, &degrees, &mut lookup)
        .map_err(|e| ProveError::Split(format!("trial reduction: {}", e)))?;
    let enc = isolate_first_root_above(&l, &g.lo, &g.hi, &config.root_width, config.precision_ceiling)
        .map_err(|e| ProveError::Split(e.to_string()))?;
    let Some(root) = enc else {
        return Ok(None);
    };
    let root = RootEnclosure {
        lo: root.lo,
        hi: root.hi,
    };
    let hundred = BigInt::from(100);
    let scaled = &root.lo * Rational::from_integer(hundred.clone());
    let c = Rational::new(scaled.ceil().to_integer() - BigInt::one(), hundred);
    let point = NumericValue::from_rational(c);
    if cmp(&g.lo, &point).map_err(ProveError::Split)? != Ordering::Less {
        return Err(ProveError::Split(format!(
            "the trial reduction has a root in [{}, {}], too close to the start of {}",
            root.lo, root.hi, g
        )));
    }
    Ok(Some(SplitRecord {
        point,
        source: SplitSource::Auto,
        trial_degrees: Some(degrees),
        trial_root: Some(root),
        retried: false,
    }))
}

// ---------------------------------------------------------------------------
// Replay

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub obligations: Vec<Obligation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.obligations.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Obligation> {
        self.obligations.iter().filter(|o| !o.passed)
    }

    fn record(&mut self, name: &str, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.obligations.push(Obligation {
            name: name.into(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.obligations {
            writeln!(f, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail)?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} of {} obligations passed",
            if failed == 0 { "VALID" } else { "INVALID" },
            self.obligations.len() - failed,
            self.obligations.len()
        )
    }
}

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

/// Re-derives every stored claim of `cert` from its data alone.
pub fn check_certificate(cert: &ProofCertificate) -> CheckReport {
    let mut report = CheckReport {
        obligations: Vec::new(),
    };
    report.record("goal", cert.goal.validate().map(|_| format!("{} inside (0, π/2)", cert.goal.interval)));
    report.record(
        "clearing",
        Ok(match &cert.goal.clearing {
            Some(c) => format!("factor {} has positive terms only ({})", c.factor, c.note),
            None => "no clearing factor".into(),
        }),
    );
    report.record("config", check_config(cert));
    report.record("coverage", check_coverage(cert));
    let form = cert.goal.f.to_multiple_angle();
    check_branch(&mut report, "left", &cert.left, &form);
    match &cert.right {
        Some(b) => check_branch(&mut report, "right", b, &form.reflect()),
        None => report.record("right", Ok("no right piece".into())),
    }
    report
}

fn check_config(cert: &ProofCertificate) -> Result<String, String> {
    let c = &cert.config;
    c.validate()?;
    for b in std::iter::once(&cert.left).chain(&cert.right) {
        for t in &b.reduction.terms {
            ensure(t.degree <= c.max_taylor_degree, || {
                format!("degree {} for {}({}x) exceeds the cap {}", t.degree, t.func, t.k, c.max_taylor_degree)
            })?;
        }
    }
    match (&c.split_hint, &cert.split) {
        (Some(h), Some(s)) => ensure(s.point == *h && s.source == SplitSource::Hint, || {
            format!("split {} does not follow the hint {}", s.point, h)
        })?,
        (Some(h), None) => return Err(format!("split hint {} was not used", h)),
        (None, Some(s)) => ensure(s.source == SplitSource::Auto, || "split claims a hint that is not configured".into())?,
        (None, None) => {}
    }
    Ok(format!("degree cap {}, split {}", c.max_taylor_degree, split_text(&cert.split)))
}

fn split_text(s: &Option<SplitRecord>) -> String {
    match s {
        Some(s) => format!("{} ({})", s.point, if s.source == SplitSource::Hint { "hint" } else { "auto" }),
        None => "none".into(),
    }
}

fn check_coverage(cert: &ProofCertificate) -> Result<String, String> {
    let g = &cert.goal.interval;
    let left = cert.left.interval();
    ensure(left.lo == g.lo && left.lo_open == g.lo_open, || {
        format!("left piece {} does not start where {} does", left, g)
    })?;
    match (&cert.split, &cert.right) {
        (None, None) => {
            ensure(left == g, || format!("single piece {} is not the goal interval {}", left, g))?;
            Ok(format!("{} = {}", g, left))
        }
        (Some(s), Some(right)) => {
            ensure(cmp(&g.lo, &s.point)? == Ordering::Less && cmp(&s.point, &g.hi)? == Ordering::Less, || {
                format!("split {} is not inside {}", s.point, g)
            })?;
            ensure(left.hi == s.point && !left.hi_open, || {
                format!("left piece {} does not end at the split {} inclusively", left, s.point)
            })?;
            let expected = right_interval(g, &s.point)?;
            ensure(*right.interval() == expected, || {
                format!("right piece {} is not the reflection {} of ({}, {}⟩", right.interval(), expected, s.point, g.hi)
            })?;
            Ok(format!("{} = {} ∪ reflection of {}", g, left, expected))
        }
        (Some(_), None) => Err("split recorded without a right piece".into()),
        (None, Some(_)) => Err("right piece present without a split".into()),
    }
}

fn check_branch(report: &mut CheckReport, side: &str, b: &Branch, expected_form: &MultiAngleForm) {
    let iv = b.interval();
    report.record(
        &format!("{}.form", side),
        ensure(b.reduction.form == *expected_form, || {
            format!("stored multiple-angle form differs from the goal's {}", if side == "left" { "form" } else { "reflected form" })
        })
        .map(|_| format!("{} trig term(s)", expected_form.terms.len())),
    );
    report.record(&format!("{}.reduction", side), replay_reduction(&b.reduction));
    report.record(
        &format!("{}.sign", side),
        (|| {
            let goal = &b.sign.goal;
            ensure(goal.poly == b.reduction.result, || "sign certificate is about another polynomial".into())?;
            ensure(goal.interval == *iv, || format!("sign certificate interval {} is not {}", goal.interval, iv))?;
            ensure(goal.claimed == Sign::Positive, || format!("claimed sign {} is not positive", goal.claimed))?;
            check_sign_certificate(&b.sign).map_err(|e| e.to_string())?;
            Ok(format!("reduced polynomial > 0 on {}", iv))
        })(),
    );
}

/// Replays the substitution of every term and compares the sum with the
/// stored reduced polynomial coefficient by coefficient.
pub fn replay_reduction(trace: &ReductionTrace) -> Result<String, String> {
    let iv = &trace.interval;
    let form = &trace.form;
    iv.validate().map_err(|e| e.to_string())?;
    ensure(iv.lo.sign().map_err(|e| e.to_string())? != Sign::Negative, || {
        format!("{} reaches below 0", iv)
    })?;
    ensure(trace.terms.len() == form.terms.len(), || {
        format!("{} substitutions for {} trig terms", trace.terms.len(), form.terms.len())
    })?;
    let mut l = form.poly_part.clone();
    for (t, r) in form.terms.iter().zip(&trace.terms) {
        let name = format!("{}({}x)", t.func, t.k);
        ensure(r.func == t.func && r.k == t.k && r.g == t.g, || format!("substitution for {} does not match the form", name))?;
        let gc = &r.g_certificate;
        ensure(gc.goal.poly == r.g && gc.goal.interval == *iv && gc.goal.claimed == r.g_sign, || {
            format!("coefficient certificate of {} is about another goal", name)
        })?;
        check_sign_certificate(gc).map_err(|e| format!("coefficient of {}: {}", name, e))?;
        ensure(r.direction == direction_for(r.g_sign), || {
            format!("coefficient of {} is {} but a {} bound is used", name, r.g_sign, r.direction)
        })?;
        let bound = taylor::bound(r.func, r.degree, r.direction).map_err(|e| format!("{}: {}", name, e))?;
        ensure(bound.radius_sq.to_string() == r.radius_sq, || {
            format!("{} radius² recorded {}, actual {}", name, r.radius_sq, bound.radius_sq)
        })?;
        let arg = iv.hi.scale(&Rational::from_integer(BigInt::from(r.k)));
        ensure(r.argument_sup_sq == &arg * &arg, || format!("{} argument bound is not ({}·{})²", name, r.k, iv.hi))?;
        let ok = taylor::bound_applicable(&bound, r.k, &iv.hi).map_err(|e| e.to_string())?;
        ensure(ok, || {
            format!("degree {} bound for {} is not valid up to x = {}", r.degree, name, iv.hi)
        })?;
        l = &l + &(&r.g * &bound.at_multiple(r.k));
    }
    ensure(l == trace.result, || "replayed reduced polynomial differs from the stored one".into())?;
    Ok(format!(
        "degrees {} reproduce the degree-{} reduced polynomial",
        degrees_to_text(&trace.terms.iter().map(|t| ((t.func, t.k), t.degree)).collect()),
        l.degree().unwrap_or(0)
    ))
}

// ---------------------------------------------------------------------------
// Bundles

pub const BUNDLE_FILES: [&str; 7] = [
    "goal.txt",
    "config.txt",
    "left.reduction.txt",
    "left.sign.txt",
    "right.reduction.txt",
    "right.sign.txt",
    "report.txt",
];

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed contents: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("{0}: not a certificate bundle (goal.txt missing)")]
    NotABundle(PathBuf),
}

#[derive(Serialize, Deserialize)]
struct BundleConfig {
    config: ProverConfig,
    split: Option<SplitRecord>,
}

fn to_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("certificate values serialize");
    s.push('\n');
    s
}

/// The files of a bundle as `(name, contents)`, in [`BUNDLE_FILES`] order.
pub fn bundle_contents(cert: &ProofCertificate, report: &CheckReport) -> Vec<(&'static str, String)> {
    let mut out = vec![
        ("goal.txt", to_text(&cert.goal)),
        (
            "config.txt",
            to_text(&BundleConfig {
                config: cert.config.clone(),
                split: cert.split.clone(),
            }),
        ),
        ("left.reduction.txt", to_text(&cert.left.reduction)),
        ("left.sign.txt", to_text(&cert.left.sign)),
    ];
    if let Some(r) = &cert.right {
        out.push(("right.reduction.txt", to_text(&r.reduction)));
        out.push(("right.sign.txt", to_text(&r.sign)));
    }
    out.push(("report.txt", format!("{}\n", report)));
    out
}

pub fn write_bundle(cert: &ProofCertificate, report: &CheckReport, dir: &Path) -> Result<(), BundleError> {
    let io = |path: PathBuf| move |source| BundleError::Io { path, source };
    fs::create_dir_all(dir).map_err(io(dir.to_path_buf()))?;
    for name in ["right.reduction.txt", "right.sign.txt"] {
        let p = dir.join(name);
        if p.exists() {
            fs::remove_file(&p).map_err(io(p.clone()))?;
        }
    }
    for (name, text) in bundle_contents(cert, report) {
        let p = dir.join(name);
        fs::write(&p, text).map_err(io(p.clone()))?;
    }
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, BundleError> {
    let text = fs::read_to_string(path).map_err(|source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| BundleError::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_bundle(dir: &Path) -> Result<ProofCertificate, BundleError> {
    if !dir.join("goal.txt").is_file() {
        return Err(BundleError::NotABundle(dir.to_path_buf()));
    }
    let goal = read_json(&dir.join("goal.txt"))?;
    let BundleConfig { config, split } = read_json(&dir.join("config.txt"))?;
    let left = Branch {
        reduction: read_json(&dir.join("left.reduction.txt"))?,
        sign: read_json(&dir.join("left.sign.txt"))?,
    };
    let right = if dir.join("right.reduction.txt").exists() || dir.join("right.sign.txt").exists() {
        Some(Branch {
            reduction: read_json(&dir.join("right.reduction.txt"))?,
            sign: read_json(&dir.join("right.sign.txt"))?,
        })
    } else {
        None
    };
    Ok(ProofCertificate {
        goal,
        config,
        split,
        left,
        right,
    })
}

// ---------------------------------------------------------------------------
// Corpus

/// What a corpus entry is expected to reproduce beyond a valid certificate.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expected {
    /// The reduced polynomial of the left piece.
    pub left_reduction: Option<Poly>,
    /// The reduced polynomial of the reflected right piece.
    pub right_reduction: Option<Poly>,
    /// Decimal prefix of the first positive root of the left reduction.
    pub root_prefix: Option<String>,
    /// The goal is false as stated; the runner must find a certified
    /// counterexample instead of a proof.
    pub refutation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// Both sides of the two main theorems on (0, π/2).
    pub primary: bool,
    pub goal: ProofGoal,
    pub config: ProverConfig,
    pub expected: Expected,
}

const GOALS: [(&str, bool, &str); 9] = [
    ("thm1.1-left", false, include_str!("../../../corpus/thm1.1-left.goal")),
    ("thm1.1-right", false, include_str!("../../../corpus/thm1.1-right.goal")),
    ("thm1.2-left", false, include_str!("../../../corpus/thm1.2-left.goal")),
    ("thm1.2-right", false, include_str!("../../../corpus/thm1.2-right.goal")),
    ("thm2.1-left", true, include_str!("../../../corpus/thm2.1-left.goal")),
    ("thm2.1-right", true, include_str!("../../../corpus/thm2.1-right.goal")),
    ("thm2.2-left", true, include_str!("../../../corpus/thm2.2-left.goal")),
    ("thm2.2-right", true, include_str!("../../../corpus/thm2.2-right.goal")),
    ("wilker-left", false, include_str!("../../../corpus/wilker-left.goal")),
];

/// Fixture polynomials keyed by `<entry>.<side>`.
pub const FIXTURES: [(&str, &str); 8] = [
    ("thm2.1-left.left", include_str!("../../../corpus/fixtures/thm2.1-left.left.poly")),
    ("thm2.1-left.right", include_str!("../../../corpus/fixtures/thm2.1-left.right.poly")),
    ("thm2.1-right.left", include_str!("../../../corpus/fixtures/thm2.1-right.left.poly")),
    ("thm2.1-right.right", include_str!("../../../corpus/fixtures/thm2.1-right.right.poly")),
    ("thm2.2-left.left", include_str!("../../../corpus/fixtures/thm2.2-left.left.poly")),
    ("thm2.2-left.right", include_str!("../../../corpus/fixtures/thm2.2-left.right.poly")),
    ("thm2.2-right.right", include_str!("../../../corpus/fixtures/thm2.2-right.right.poly")),
    ("printed-q12", include_str!("../../../corpus/fixtures/printed-q12.poly")),
];

/// Parses a polynomial file: `#` comment lines, then one fixture record or
/// expression in `x` (possibly spread over several lines).
pub fn parse_poly_file(text: &str) -> Result<Poly, String> {
    let body: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if body.is_empty() {
        return Err("no polynomial in file".into());
    }
    Poly::parse_any(&body.join(" ")).map_err(|e| e.to_string())
}

pub fn fixture(key: &str) -> Option<Poly> {
    FIXTURES
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, text)| parse_poly_file(text).expect("corpus fixtures parse"))
}

pub fn corpus() -> Vec<CorpusEntry> {
    GOALS
        .iter()
        .map(|(name, primary, text)| {
            let file = GoalFile::parse(text).expect("corpus goal files parse");
            let (goal, config) = file.to_goal_and_config().expect("corpus goal files are well formed");
            debug_assert_eq!(goal.name, *name);
            CorpusEntry {
                name: name.to_string(),
                primary: *primary,
                goal,
                config,
                expected: Expected {
                    left_reduction: fixture(&format!("{}.left", name)),
                    right_reduction: fixture(&format!("{}.right", name)),
                    root_prefix: file.expect_root.clone(),
                    refutation: file.expect_refutation,
                },
            }
        })
        .collect()
}
