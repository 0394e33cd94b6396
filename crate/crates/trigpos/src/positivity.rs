//! Certified signs of polynomials on intervals.
//!
//! [`prove_sign`] builds a [`SignCertificate`], a tree of steps whose side
//! conditions can each be re-checked from stored data by
//! [`check_sign_certificate`].

mod check;
pub mod sturm;
pub mod zpi;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Poly, PolyError};
use crate::scalar::{
    enclose, NumericValue, Rational, RationalInterval, ScalarError, Sign, DEFAULT_PRECISION_CEILING,
};

pub use check::{check_sign_certificate, CheckFailure};
pub use sturm::{isolate_real_roots, SturmSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositivityError {
    #[error("the zero polynomial has no sign or roots to count")]
    ZeroPolynomial,
    #[error("polynomial vanishes at the endpoint {0}")]
    EndpointRoot(String),
    #[error("interval is empty: {0}")]
    EmptyInterval(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An interval with exact endpoints and per-end openness; `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalSpec {
    pub lo: NumericValue,
    pub hi: NumericValue,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl IntervalSpec {
    pub fn new(
        lo: NumericValue,
        hi: NumericValue,
        lo_open: bool,
        hi_open: bool,
    ) -> Result<Self, PositivityError> {
        let iv = IntervalSpec {
            lo,
            hi,
            lo_open,
            hi_open,
        };
        iv.validate()?;
        Ok(iv)
    }

    pub fn validate(&self) -> Result<(), PositivityError> {
        if (&self.hi - &self.lo).sign()? != Sign::Positive {
            return Err(PositivityError::EmptyInterval(self.to_string()));
        }
        Ok(())
    }

    /// `(lo, hi]`.
    pub fn left_open(lo: NumericValue, hi: NumericValue) -> Result<Self, PositivityError> {
        Self::new(lo, hi, true, false)
    }

    /// `(lo, hi)`.
    pub fn open(lo: NumericValue, hi: NumericValue) -> Result<Self, PositivityError> {
        Self::new(lo, hi, true, true)
    }

    /// `[lo, hi]`.
    pub fn closed(lo: NumericValue, hi: NumericValue) -> Result<Self, PositivityError> {
        Self::new(lo, hi, false, false)
    }

    pub fn contains(&self, v: &NumericValue) -> Result<bool, ScalarError> {
        let a = (v - &self.lo).sign()?;
        let b = (&self.hi - v).sign()?;
        let ok_lo = a == Sign::Positive || (a == Sign::Zero && !self.lo_open);
        let ok_hi = b == Sign::Positive || (b == Sign::Zero && !self.hi_open);
        Ok(ok_lo && ok_hi)
    }

    /// Whether every point of the interval is strictly positive.
    pub fn is_positive(&self) -> Result<bool, ScalarError> {
        let s = self.lo.sign()?;
        Ok(s == Sign::Positive || (s == Sign::Zero && self.lo_open))
    }

    /// Image under `x ↦ x²`; needs `lo ≥ 0`.
    pub fn squared(&self) -> IntervalSpec {
        IntervalSpec {
            lo: &self.lo * &self.lo,
            hi: &self.hi * &self.hi,
            lo_open: self.lo_open,
            hi_open: self.hi_open,
        }
    }

    /// A rational strictly inside, near the midpoint.
    pub fn interior_point(&self) -> Rational {
        let mut bits = 64;
        loop {
            let a = enclose(&self.lo, bits);
            let b = enclose(&self.hi, bits);
            if a.hi < b.lo {
                return (a.hi + b.lo) / Rational::from_integer(BigInt::from(2));
            }
            bits *= 2;
        }
    }

    /// Rational enclosure of the closed hull, widened outward by rounding.
    pub fn hull(&self, bits: u32) -> RationalInterval {
        RationalInterval::new(enclose(&self.lo, bits).lo, enclose(&self.hi, bits).hi)
    }

    /// `n` rationals strictly inside, evenly spread.
    pub fn sample_points(&self, n: usize) -> Vec<Rational> {
        let mut bits = 64;
        let (a, b) = loop {
            let a = enclose(&self.lo, bits).hi;
            let b = enclose(&self.hi, bits).lo;
            if a < b {
                break (a, b);
            }
            bits *= 2;
        };
        let w = &b - &a;
        (1..=n)
            .map(|i| &a + &w * Rational::new(BigInt::from(i), BigInt::from(n + 1)))
            .collect()
    }
}

impl fmt::Display for IntervalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { "(" } else { "[" },
            self.lo,
            self.hi,
            if self.hi_open { ")" } else { "]" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
        })
    }
}

/// The claim `sign(poly(x)) = claimed` for every `x` in `interval`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignGoal {
    pub poly: Poly,
    pub interval: IntervalSpec,
    pub claimed: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub goal: SignGoal,
    pub step: Step,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// `poly = x^m · quotient` with `x > 0` on the interval.
    FactorOutX {
        m: usize,
        quotient: Box<SignCertificate>,
    },
    /// `poly = factor · quotient`, both with certified strict signs.
    PeelFactor {
        factor: Poly,
        factor_certificate: Box<SignCertificate>,
        quotient: Box<SignCertificate>,
    },
    /// `poly(x) = q(x²)` with `q` certified on the squared interval.
    EvenSubstitute { substituted: Box<SignCertificate> },
    /// No root on the closed hull, and the sign at one interior point.
    SturmSeparation {
        root_count: usize,
        witness: NumericValue,
        witness_sign: Sign,
    },
    /// The derivative has a strict sign, so `poly` is monotone and its sign
    /// on the interval is decided at one endpoint.
    DerivativeChain {
        derivative: Box<SignCertificate>,
        monotonicity: Monotonicity,
        endpoint: NumericValue,
        endpoint_open: bool,
        endpoint_sign: Sign,
    },
    /// The interval starts at 0 and ends below the enclosure `[root_lo,
    /// root_hi]` of the first positive root: no root in `(0, root_lo]`, at
    /// least one in `(0, root_hi]`.
    RootFreePrefix {
        root_lo: NumericValue,
        root_hi: NumericValue,
        witness: NumericValue,
        witness_sign: Sign,
    },
}

impl Step {
    pub fn name(&self) -> &'static str {
        match self {
            Step::FactorOutX { .. } => "factor_out_x",
            Step::PeelFactor { .. } => "peel_factor",
            Step::EvenSubstitute { .. } => "even_substitute",
            Step::SturmSeparation { .. } => "sturm_separation",
            Step::DerivativeChain { .. } => "derivative_chain",
            Step::RootFreePrefix { .. } => "root_free_prefix",
        }
    }
}

impl SignCertificate {
    pub fn claimed(&self) -> Sign {
        self.goal.claimed
    }

    pub fn children(&self) -> Vec<&SignCertificate> {
        match &self.step {
            Step::FactorOutX { quotient, .. } => vec![quotient],
            Step::PeelFactor {
                factor_certificate,
                quotient,
                ..
            } => vec![factor_certificate, quotient],
            Step::EvenSubstitute { substituted } => vec![substituted],
            Step::DerivativeChain { derivative, .. } => vec![derivative],
            Step::SturmSeparation { .. } | Step::RootFreePrefix { .. } => Vec::new(),
        }
    }

    /// One line per step, indented by depth.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        self.outline_into(0, &mut out);
        out
    }

    fn outline_into(&self, depth: usize, out: &mut String) {
        let detail = match &self.step {
            Step::FactorOutX { m, .. } => format!("x^{}", m),
            Step::PeelFactor { factor, .. } => format!("factor {}", factor),
            Step::EvenSubstitute { .. } => "s = x^2".to_string(),
            Step::SturmSeparation { witness, witness_sign, .. } => {
                format!("no roots; {} at x = {}", witness_sign, witness)
            }
            Step::DerivativeChain {
                monotonicity,
                endpoint,
                endpoint_sign,
                ..
            } => format!("{}; {} at x = {}", monotonicity, endpoint_sign, endpoint),
            Step::RootFreePrefix { root_lo, root_hi, .. } => {
                format!("first positive root in [{}, {}]", root_lo, root_hi)
            }
        };
        out.push_str(&format!(
            "{}degree {} {} on {}: {} ({})\n",
            "  ".repeat(depth),
            self.goal.poly.degree().unwrap_or(0),
            self.goal.claimed,
            self.goal.interval,
            self.step.name(),
            detail
        ));
        for c in self.children() {
            c.outline_into(depth + 1, out);
        }
    }
}

/// Knobs of [`prove_sign`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    /// Linear factors tried by exact division before root counting.
    pub peel_factors: Vec<Poly>,
    pub max_chain_depth: u32,
    /// Try a first-positive-root certificate before plain Sturm separation
    /// on intervals starting at 0.
    pub root_free_prefix: bool,
    #[serde(with = "crate::scalar::rational_text")]
    pub root_width: Rational,
    pub precision_ceiling: u32,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy {
            peel_factors: ["pi - 2*x", "pi + 2*x", "pi - x"]
                .iter()
                .map(|s| Poly::parse_any(s).expect("valid factor"))
                .collect(),
            max_chain_depth: 5,
            root_free_prefix: false,
            root_width: Rational::new(BigInt::from(1), BigInt::from(1_000_000)),
            precision_ceiling: DEFAULT_PRECISION_CEILING,
        }
    }
}

/// A sign proof that could not be completed, with the attempts made.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot certify: {reason}")]
pub struct SignFailure {
    pub reason: String,
    pub trace: Vec<String>,
}

pub fn sturm_root_count(p: &Poly, iv: &IntervalSpec, ceiling: u32) -> Result<usize, PositivityError> {
    if p.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    for e in [&iv.lo, &iv.hi] {
        if p.eval(e).is_zero() {
            return Err(PositivityError::EndpointRoot(e.to_string()));
        }
    }
    Ok(SturmSequence::new(p, ceiling)?.count_between(&iv.lo, &iv.hi)?)
}

pub fn isolate_first_positive_root(
    p: &Poly,
    search_hi: &NumericValue,
    width: &Rational,
    ceiling: u32,
) -> Result<Option<RationalInterval>, PositivityError> {
    sturm::isolate_first_positive_root(p, search_hi, width, ceiling)
}

pub fn isolate_first_root_above(
    p: &Poly,
    lo: &NumericValue,
    hi: &NumericValue,
    width: &Rational,
    ceiling: u32,
) -> Result<Option<RationalInterval>, PositivityError> {
    sturm::isolate_first_root_above(p, lo, hi, width, ceiling)
}

fn nv(q: &Rational) -> NumericValue {
    NumericValue::from_rational(q.clone())
}

struct Prover<'a> {
    strategy: &'a Strategy,
    trace: Vec<String>,
}

type Attempt = Result<SignCertificate, String>;

impl Prover<'_> {
    fn sign(&self, v: &NumericValue) -> Result<Sign, String> {
        crate::scalar::scalar_sign_with(v, self.strategy.precision_ceiling).map_err(|e| e.to_string())
    }

    fn cert(p: &Poly, iv: &IntervalSpec, claimed: Sign, step: Step) -> SignCertificate {
        SignCertificate {
            goal: SignGoal {
                poly: p.clone(),
                interval: iv.clone(),
                claimed,
            },
            step,
        }
    }

    fn fail(&mut self, msg: String) -> String {
        self.trace.push(msg.clone());
        msg
    }

    fn prove(&mut self, p: &Poly, iv: &IntervalSpec, claimed: Sign) -> Attempt {
        if p.is_zero() {
            return Err(self.fail("the zero polynomial has no strict sign".into()));
        }
        if !claimed.is_strict() {
            return Err(self.fail(format!("claimed sign {} is not strict", claimed)));
        }
        let w = nv(&iv.interior_point());
        let sw = self.sign(&p.eval(&w))?;
        if sw != claimed {
            return Err(self.fail(format!(
                "{} is {} at x = {} inside {}, not {}",
                p, sw, w, iv, claimed
            )));
        }
        let pos = iv.is_positive().map_err(|e| e.to_string())?;
        let nonneg = self.sign(&iv.lo)? != Sign::Negative;

        if p.coeff(0).is_zero() && pos {
            let (m, q) = p.factor_out_x().map_err(|e| e.to_string())?;
            let sub = self.prove(&q, iv, claimed)?;
            return Ok(Self::cert(p, iv, claimed, Step::FactorOutX { m, quotient: Box::new(sub) }));
        }

        let deg = p.degree().unwrap_or(0);
        for f in &self.strategy.peel_factors {
            if f.degree().unwrap_or(0) >= deg {
                continue;
            }
            let Ok(q) = p.div_exact(f) else { continue };
            let Ok(fc) = self.strict(f, iv) else { continue };
            let sub = self.prove(&q, iv, claimed.times(fc.goal.claimed))?;
            return Ok(Self::cert(
                p,
                iv,
                claimed,
                Step::PeelFactor {
                    factor: f.clone(),
                    factor_certificate: Box::new(fc),
                    quotient: Box::new(sub),
                },
            ));
        }

        if deg >= 1 {
            let (c, prim) = p.primitive_part().map_err(|e| e.to_string())?;
            if c != NumericValue::one() && c != -NumericValue::one() {
                let factor = Poly::constant(c.clone());
                let fc = self.strict(&factor, iv)?;
                let sub = self.prove(&prim, iv, claimed.times(fc.goal.claimed))?;
                return Ok(Self::cert(
                    p,
                    iv,
                    claimed,
                    Step::PeelFactor {
                        factor,
                        factor_certificate: Box::new(fc),
                        quotient: Box::new(sub),
                    },
                ));
            }
        }

        if deg >= 2 && p.is_even() && nonneg {
            let q = p.even_decimate().map_err(|e| e.to_string())?;
            let sub = self.prove(&q, &iv.squared(), claimed)?;
            return Ok(Self::cert(
                p,
                iv,
                claimed,
                Step::EvenSubstitute {
                    substituted: Box::new(sub),
                },
            ));
        }

        if self.strategy.root_free_prefix && iv.lo.is_zero() {
            match self.root_free_prefix(p, iv, claimed, &w, sw) {
                Ok(c) => return Ok(c),
                Err(e) => self.trace.push(e),
            }
        }

        self.separate_or_chain(p, iv, claimed, self.strategy.max_chain_depth)
    }

    /// Sturm separation, falling back to a derivative chain when the only
    /// roots on the closed hull sit at open endpoints.
    fn separate_or_chain(&mut self, p: &Poly, iv: &IntervalSpec, claimed: Sign, depth: u32) -> Attempt {
        match self.sturm(p, iv, claimed) {
            Ok(c) => Ok(c),
            Err(SturmOutcome::Fatal(e)) => Err(self.fail(e)),
            Err(SturmOutcome::EndpointRoots) if depth > 0 => self.chain(p, iv, claimed, depth),
            Err(SturmOutcome::EndpointRoots) => Err(self.fail(format!(
                "{} vanishes at an open endpoint of {} and the derivative chain depth is exhausted",
                p, iv
            ))),
        }
    }

    fn sturm(&mut self, p: &Poly, iv: &IntervalSpec, claimed: Sign) -> Result<SignCertificate, SturmOutcome> {
        let fatal = |e: String| SturmOutcome::Fatal(e);
        let ceiling = self.strategy.precision_ceiling;
        let (all, inner) =
            sturm::count_closed(p, &iv.lo, &iv.hi, ceiling).map_err(|e| fatal(e.to_string()))?;
        if inner > 0 {
            return Err(fatal(format!("{} has {} distinct root(s) inside {}", p, inner, iv)));
        }
        if all > 0 {
            for (e, open) in [(&iv.lo, iv.lo_open), (&iv.hi, iv.hi_open)] {
                if !open && p.eval(e).is_zero() {
                    return Err(fatal(format!("{} vanishes at the closed endpoint {}", p, e)));
                }
            }
            return Err(SturmOutcome::EndpointRoots);
        }
        let w = nv(&iv.interior_point());
        let sw = self.sign(&p.eval(&w)).map_err(fatal)?;
        if sw != claimed {
            return Err(fatal(format!("{} is {} at x = {}, not {}", p, sw, w, claimed)));
        }
        Ok(Self::cert(
            p,
            iv,
            claimed,
            Step::SturmSeparation {
                root_count: 0,
                witness: w,
                witness_sign: sw,
            },
        ))
    }

    /// A certificate of whichever strict sign `p` has on `iv`.
    fn strict(&mut self, p: &Poly, iv: &IntervalSpec) -> Attempt {
        let w = nv(&iv.interior_point());
        let s = self.sign(&p.eval(&w))?;
        if !s.is_strict() {
            return Err(format!("{} vanishes at x = {}", p, w));
        }
        let depth = self.strategy.max_chain_depth;
        self.separate_or_chain(p, iv, s, depth)
    }

    fn chain(&mut self, p: &Poly, iv: &IntervalSpec, claimed: Sign, depth: u32) -> Attempt {
        if depth == 0 {
            return self.separate_or_chain(p, iv, claimed, 0);
        }
        let d = p.derivative();
        if d.is_zero() {
            return self.separate_or_chain(p, iv, claimed, 0);
        }
        let w = nv(&iv.interior_point());
        let ds = self.sign(&d.eval(&w))?;
        if !ds.is_strict() {
            return Err(self.fail(format!("derivative {} vanishes at x = {}", d, w)));
        }
        let dcert = match self.chain(&d, iv, ds, depth - 1) {
            Ok(c) => c,
            Err(_) => self.sturm(&d, iv, ds).map_err(|e| match e {
                SturmOutcome::Fatal(e) => e,
                SturmOutcome::EndpointRoots => format!("derivative {} vanishes at an endpoint", d),
            })?,
        };
        let monotonicity = if ds == Sign::Positive {
            Monotonicity::Increasing
        } else {
            Monotonicity::Decreasing
        };
        let (endpoint, endpoint_open) = chain_endpoint(iv, monotonicity, claimed);
        let endpoint_sign = self.sign(&p.eval(endpoint))?;
        if !endpoint_closes(endpoint_sign, endpoint_open, claimed) {
            return Err(self.fail(format!(
                "{} is {} but equals {} at the endpoint {}; the sign is not constant on {}",
                p, monotonicity, endpoint_sign, endpoint, iv
            )));
        }
        Ok(Self::cert(
            p,
            iv,
            claimed,
            Step::DerivativeChain {
                derivative: Box::new(dcert),
                monotonicity,
                endpoint: endpoint.clone(),
                endpoint_open,
                endpoint_sign,
            },
        ))
    }

    fn root_free_prefix(
        &mut self,
        p: &Poly,
        iv: &IntervalSpec,
        claimed: Sign,
        w: &NumericValue,
        sw: Sign,
    ) -> Attempt {
        let ceiling = self.strategy.precision_ceiling;
        if p.coeff(0).is_zero() {
            return Err("root-free prefix needs p(0) != 0".into());
        }
        let bound = nv(&sturm::cauchy_bound(p));
        let root = sturm::isolate_first_positive_root(p, &bound, &self.strategy.root_width, ceiling)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{} has no positive root; root-free prefix not applicable", p))?;
        let root_lo = nv(&root.lo);
        if (&root_lo - &iv.hi).sign().map_err(|e| e.to_string())? == Sign::Negative {
            return Err(format!(
                "first positive root of {} lies at or below {} (enclosure starts at {})",
                p, iv.hi, root.lo
            ));
        }
        Ok(Self::cert(
            p,
            iv,
            claimed,
            Step::RootFreePrefix {
                root_lo,
                root_hi: nv(&root.hi),
                witness: w.clone(),
                witness_sign: sw,
            },
        ))
    }
}

enum SturmOutcome {
    Fatal(String),
    /// The only roots on the closed hull are at open endpoints.
    EndpointRoots,
}

/// Endpoint that decides the sign of a monotone function: the lower end for
/// increasing-positive and decreasing-negative, the upper end otherwise.
pub fn chain_endpoint(iv: &IntervalSpec, m: Monotonicity, claimed: Sign) -> (&NumericValue, bool) {
    match (m, claimed) {
        (Monotonicity::Increasing, Sign::Positive) | (Monotonicity::Decreasing, Sign::Negative) => {
            (&iv.lo, iv.lo_open)
        }
        _ => (&iv.hi, iv.hi_open),
    }
}

/// Whether the endpoint value settles the claim: it must have the claimed
/// sign, or be zero at an open endpoint.
pub fn endpoint_closes(endpoint_sign: Sign, open: bool, claimed: Sign) -> bool {
    endpoint_sign == claimed || (open && endpoint_sign == Sign::Zero)
}

/// A certificate that `p` has sign `claimed` on `iv`.
pub fn prove_sign(
    p: &Poly,
    iv: &IntervalSpec,
    claimed: Sign,
    strategy: &Strategy,
) -> Result<SignCertificate, SignFailure> {
    let mut prover = Prover {
        strategy,
        trace: Vec::new(),
    };
    prover.prove(p, iv, claimed).map_err(|reason| SignFailure {
        reason,
        trace: prover.trace,
    })
}

/// A certificate of whichever strict sign `p` has on `iv`.
pub fn prove_strict_sign(
    p: &Poly,
    iv: &IntervalSpec,
    strategy: &Strategy,
) -> Result<SignCertificate, SignFailure> {
    let w = nv(&iv.interior_point());
    let s = crate::scalar::scalar_sign_with(&p.eval(&w), strategy.precision_ceiling).map_err(|e| {
        SignFailure {
            reason: e.to_string(),
            trace: Vec::new(),
        }
    })?;
    if !s.is_strict() {
        return Err(SignFailure {
            reason: format!("{} vanishes at x = {} inside {}", p, w, iv),
            trace: Vec::new(),
        });
    }
    prove_sign(p, iv, s, strategy)
}

/// A sign certificate whose root step is a derivative chain of at most
/// `max_depth` levels, ending in Sturm separation.
pub fn derivative_chain(
    p: &Poly,
    iv: &IntervalSpec,
    max_depth: u32,
    strategy: &Strategy,
) -> Result<SignCertificate, SignFailure> {
    let mut prover = Prover {
        strategy,
        trace: Vec::new(),
    };
    let run = |prover: &mut Prover| -> Attempt {
        if p.is_zero() {
            return Err("the zero polynomial has no strict sign".into());
        }
        let w = nv(&iv.interior_point());
        let s = prover.sign(&p.eval(&w))?;
        if !s.is_strict() {
            return Err(format!("{} vanishes at x = {}", p, w));
        }
        prover.chain(p, iv, s, max_depth.max(1))
    };
    run(&mut prover).map_err(|reason| SignFailure {
        reason,
        trace: prover.trace,
    })
}

#[cfg(test)]
mod tests;
