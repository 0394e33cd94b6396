//! Mixed trigonometric polynomials `Σ α·x^p·cos^q(x)·sin^r(x)`, their
//! multiple-angle form `P(x) + Σ g(x)·trig(kx)`, reflection `x ↦ π/2 − x`,
//! and the reduction to a polynomial lower bound by Taylor substitution.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{self, Algebra, ParseError};
use crate::poly::Poly;
use crate::positivity::{IntervalSpec, SignCertificate};
use crate::scalar::{NumericValue, Rational, ScalarError, Sign};
use crate::taylor::{self, Direction, TaylorError, TrigFunc};

/// Exponents `(p, q, r)` of `x^p·cos^q(x)·sin^r(x)`.
pub type Monomial = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedTrigPoly {
    terms: BTreeMap<Monomial, NumericValue>,
}

impl MixedTrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(alpha: NumericValue, p: u32, q: u32, r: u32) -> Self {
        let mut out = Self::zero();
        out.add_term((p, q, r), alpha);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (NumericValue, u32, u32, u32)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (a, p, q, r) in terms {
            out.add_term((p, q, r), a);
        }
        out
    }

    fn add_term(&mut self, key: Monomial, alpha: NumericValue) {
        let sum = match self.terms.get(&key) {
            Some(old) => old + &alpha,
            None => alpha,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    /// Terms `(α, p, q, r)` in canonical `(p, q, r)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&NumericValue, u32, u32, u32)> {
        self.terms.iter().map(|(&(p, q, r), a)| (a, p, q, r))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        expr::eval(&expr::parse(text)?)
    }

    /// Value at a point where sin and cos are given exactly.
    pub fn eval_with(&self, x: &NumericValue, cos: &NumericValue, sin: &NumericValue) -> NumericValue {
        self.terms.iter().fold(NumericValue::zero(), |acc, (&(p, q, r), a)| {
            &acc + &(&(a * &x.pow(p)) * &(&cos.pow(q) * &sin.pow(r)))
        })
    }

    pub fn to_multiple_angle(&self) -> MultiAngleForm {
        let mut poly_part = Poly::zero();
        let mut trig: BTreeMap<(TrigFunc, u32), Poly> = BTreeMap::new();
        for (&(p, q, r), alpha) in &self.terms {
            for ((func, k), c) in linearize(q, r) {
                let g = Poly::monomial(alpha.scale(&c), p as usize);
                if func == TrigFunc::Cos && k == 0 {
                    poly_part = &poly_part + &g;
                } else {
                    let e = trig.entry((func, k)).or_insert_with(Poly::zero);
                    *e = &*e + &g;
                }
            }
        }
        MultiAngleForm::new(poly_part, trig)
    }
}

/// `cos^q(x)·sin^r(x)` as `Σ c·trig(kx)` with `(Cos, 0)` standing for 1.
fn linearize(q: u32, r: u32) -> BTreeMap<(TrigFunc, u32), Rational> {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut acc: BTreeMap<(TrigFunc, u32), Rational> = BTreeMap::new();
    acc.insert((TrigFunc::Cos, 0), Rational::from_integer(1.into()));
    let push = |m: &mut BTreeMap<(TrigFunc, u32), Rational>, key: (TrigFunc, u32), c: Rational| {
        if key.0 == TrigFunc::Sin && key.1 == 0 {
            return;
        }
        let v = m.entry(key).or_insert_with(|| Rational::from_integer(0.into()));
        *v += c;
    };
    let factors = std::iter::repeat(TrigFunc::Cos)
        .take(q as usize)
        .chain(std::iter::repeat(TrigFunc::Sin).take(r as usize));
    for factor in factors {
        let mut next = BTreeMap::new();
        for ((func, k), c) in acc {
            let h = &c * &half;
            // trig(kx)·factor(x) by the product-to-sum identities.
            let down = k.saturating_sub(1);
            match (func, factor) {
                (TrigFunc::Cos, _) if k == 0 => push(&mut next, (factor, 1), c.clone()),
                (TrigFunc::Cos, TrigFunc::Cos) => {
                    push(&mut next, (TrigFunc::Cos, k + 1), h.clone());
                    push(&mut next, (TrigFunc::Cos, down), h);
                }
                (TrigFunc::Sin, TrigFunc::Cos) => {
                    push(&mut next, (TrigFunc::Sin, k + 1), h.clone());
                    push(&mut next, (TrigFunc::Sin, down), h);
                }
                (TrigFunc::Cos, TrigFunc::Sin) => {
                    push(&mut next, (TrigFunc::Sin, k + 1), h.clone());
                    push(&mut next, (TrigFunc::Sin, down), -h);
                }
                (TrigFunc::Sin, TrigFunc::Sin) => {
                    push(&mut next, (TrigFunc::Cos, down), h.clone());
                    push(&mut next, (TrigFunc::Cos, k + 1), -h);
                }
            }
        }
        next.retain(|_, c| !num_traits::Zero::is_zero(c));
        acc = next;
    }
    acc
}

impl Algebra for MixedTrigPoly {
    fn constant(v: NumericValue) -> Self {
        if v.is_zero() {
            Self::zero()
        } else {
            Self::term(v, 0, 0, 0)
        }
    }
    fn x(_: usize) -> Result<Self, ParseError> {
        Ok(Self::term(NumericValue::one(), 1, 0, 0))
    }
    fn sin(_: usize) -> Result<Self, ParseError> {
        Ok(Self::term(NumericValue::one(), 0, 0, 1))
    }
    fn cos(_: usize) -> Result<Self, ParseError> {
        Ok(Self::term(NumericValue::one(), 0, 1, 0))
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, a) in &other.terms {
            out.add_term(k, a.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(p1, q1, r1), a) in &self.terms {
            for (&(p2, q2, r2), b) in &other.terms {
                out.add_term((p1 + p2, q1 + q2, r1 + r2), a * b);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        MixedTrigPoly {
            terms: self.terms.iter().map(|(&k, a)| (k, -a)).collect(),
        }
    }
    fn as_constant(&self) -> Option<NumericValue> {
        match self.terms.len() {
            0 => Some(NumericValue::zero()),
            1 => self.terms.get(&(0, 0, 0)).cloned(),
            _ => None,
        }
    }
}

fn factor_text(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{}^{}", name, e)),
    }
}

/// Writes `c*body` as a signed summand, with `first` controlling the joiner.
fn write_signed(f: &mut fmt::Formatter<'_>, first: bool, c: &NumericValue, body: &str) -> fmt::Result {
    let text = c.to_string();
    let simple = c.as_monomial().is_some();
    let (neg, coef) = match text.strip_prefix('-') {
        Some(rest) if simple => (true, rest.to_string()),
        _ => (false, text.clone()),
    };
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let coef = if simple { coef } else { format!("({})", coef) };
    match (coef.as_str(), body.is_empty()) {
        (_, true) => f.write_str(&coef),
        ("1", false) => f.write_str(body),
        _ => write!(f, "{}*{}", coef, body),
    }
}

impl fmt::Display for MixedTrigPoly {
    /// Terms in canonical order: `2*x*sin(x) - pi*x^3*cos(x)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(p, q, r), a)) in self.terms.iter().enumerate() {
            let body: Vec<String> = [factor_text("x", p), factor_text("cos(x)", q), factor_text("sin(x)", r)]
                .into_iter()
                .flatten()
                .collect();
            write_signed(f, i == 0, a, &body.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MixedTrigPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for MixedTrigPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MixedTrigPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Multiple-angle form

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub func: TrigFunc,
    pub k: u32,
    pub g: Poly,
}

/// `poly_part(x) + Σ g(x)·func(kx)`, at most one term per `(func, k)`,
/// ordered by `(func, k)`, with `k ≥ 1` and every `g` nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiAngleForm {
    pub poly_part: Poly,
    pub terms: Vec<TrigTerm>,
}

impl MultiAngleForm {
    pub fn new(poly_part: Poly, trig: BTreeMap<(TrigFunc, u32), Poly>) -> Self {
        let terms = trig
            .into_iter()
            .filter(|(_, g)| !g.is_zero())
            .map(|((func, k), g)| {
                assert!(k >= 1, "multiple-angle terms need k >= 1");
                TrigTerm { func, k, g }
            })
            .collect();
        MultiAngleForm { poly_part, terms }
    }

    pub fn term(&self, func: TrigFunc, k: u32) -> Option<&Poly> {
        self.terms.iter().find(|t| t.func == func && t.k == k).map(|t| &t.g)
    }

    pub fn max_multiple(&self) -> u32 {
        self.terms.iter().map(|t| t.k).max().unwrap_or(0)
    }

    /// Value at `x` given exact values of `cos(kx)` and `sin(kx)`.
    pub fn eval_with(
        &self,
        x: &NumericValue,
        mut trig: impl FnMut(TrigFunc, u32) -> NumericValue,
    ) -> NumericValue {
        self.terms.iter().fold(self.poly_part.eval(x), |acc, t| {
            &acc + &(&t.g.eval(x) * &trig(t.func, t.k))
        })
    }

    /// The form of `f(π/2 − x)`.
    pub fn reflect(&self) -> MultiAngleForm {
        let mut trig = BTreeMap::new();
        for t in &self.terms {
            // func(kπ/2 − kx) = sign · func'(kx), by k mod 4.
            let (func, negate) = match (t.func, t.k % 4) {
                (TrigFunc::Cos, 0) => (TrigFunc::Cos, false),
                (TrigFunc::Cos, 1) => (TrigFunc::Sin, false),
                (TrigFunc::Cos, 2) => (TrigFunc::Cos, true),
                (TrigFunc::Cos, _) => (TrigFunc::Sin, true),
                (TrigFunc::Sin, 0) => (TrigFunc::Sin, true),
                (TrigFunc::Sin, 1) => (TrigFunc::Cos, false),
                (TrigFunc::Sin, 2) => (TrigFunc::Sin, false),
                (TrigFunc::Sin, _) => (TrigFunc::Cos, true),
            };
            let g = t.g.reflect_half_pi();
            let g = if negate { -&g } else { g };
            let e = trig.entry((func, t.k)).or_insert_with(Poly::zero);
            *e = &*e + &g;
        }
        MultiAngleForm::new(self.poly_part.reflect_half_pi(), trig)
    }
}

pub fn reflect_mixed(m: &MultiAngleForm) -> MultiAngleForm {
    m.reflect()
}

impl fmt::Display for MultiAngleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly_part)?;
        for t in &self.terms {
            write!(f, " + ({})*{}({}*x)", t.g, t.func, t.k)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Reduction

/// Taylor degree per multiple-angle term `(func, k)`.
pub type DegreeChoice = BTreeMap<(TrigFunc, u32), u32>;

/// Renders degrees as `cos:4=20,cos:2=16,sin:2=11` style text in canonical order.
pub fn degrees_to_text(d: &DegreeChoice) -> String {
    d.iter()
        .map(|((func, k), n)| format!("{}:{}={}", func, k, n))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_degrees(text: &str) -> Result<DegreeChoice, String> {
    let mut out = DegreeChoice::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || format!("malformed degree entry `{}` (expected func:k=degree)", item);
        let (lhs, n) = item.split_once('=').ok_or_else(bad)?;
        let (func, k) = lhs.split_once(':').ok_or_else(bad)?;
        let func = match func.trim() {
            "sin" => TrigFunc::Sin,
            "cos" => TrigFunc::Cos,
            _ => return Err(bad()),
        };
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        out.insert((func, k), n);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{func}({k}x) bound of degree {degree} is not valid on this interval: ({k}·sup x)² exceeds the radius² {radius_sq}")]
    Inapplicable {
        func: TrigFunc,
        k: u32,
        degree: u32,
        radius_sq: BigInt,
    },
    #[error("coefficient of {func}({k}x) has no certified strict sign on {interval}: {reason}")]
    Indefinite {
        func: TrigFunc,
        k: u32,
        interval: String,
        reason: String,
    },
    #[error("no Taylor degree given for {func}({k}x)")]
    MissingDegree { func: TrigFunc, k: u32 },
    #[error("{func}({k}x): {source}")]
    DegreeClass {
        func: TrigFunc,
        k: u32,
        source: TaylorError,
    },
    #[error("reduction interval must lie in [0, ∞): {0}")]
    BadInterval(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// One substituted term of a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReduction {
    pub func: TrigFunc,
    pub k: u32,
    pub g: Poly,
    pub g_sign: Sign,
    pub g_certificate: SignCertificate,
    pub degree: u32,
    pub direction: Direction,
    /// `(k·hi)²`, compared exactly against `radius_sq`.
    pub argument_sup_sq: NumericValue,
    pub radius_sq: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub interval: IntervalSpec,
    pub form: MultiAngleForm,
    pub terms: Vec<TermReduction>,
    pub result: Poly,
}

/// Direction of the bound that keeps `g·trig(kx)` from above or below as
/// needed for a lower bound of the whole form.
pub fn direction_for(g_sign: Sign) -> Direction {
    if g_sign == Sign::Negative {
        Direction::Upper
    } else {
        Direction::Lower
    }
}

/// `L(x) ≤ f(x)` on `iv`: every `g·trig(kx)` is replaced by the Taylor segment
/// of the requested degree bounding `trig` from the side fixed by `sign(g)`.
/// `sign_prover` must return a certificate of a strict sign of `g` on `iv`.
pub fn reduce_lower_bound(
    m: &MultiAngleForm,
    iv: &IntervalSpec,
    degrees: &DegreeChoice,
    sign_prover: &mut dyn FnMut(&Poly, &IntervalSpec) -> Result<SignCertificate, String>,
) -> Result<(Poly, ReductionTrace), ReductionError> {
    if iv.lo.sign()? == Sign::Negative {
        return Err(ReductionError::BadInterval(iv.to_string()));
    }
    let mut result = m.poly_part.clone();
    let mut terms = Vec::new();
    for t in &m.terms {
        let degree = *degrees
            .get(&(t.func, t.k))
            .ok_or(ReductionError::MissingDegree { func: t.func, k: t.k })?;
        let cert = sign_prover(&t.g, iv).map_err(|reason| ReductionError::Indefinite {
            func: t.func,
            k: t.k,
            interval: iv.to_string(),
            reason,
        })?;
        let direction = direction_for(cert.goal.claimed);
        let bound = taylor::bound(t.func, degree, direction).map_err(|source| ReductionError::DegreeClass {
            func: t.func,
            k: t.k,
            source,
        })?;
        if !taylor::bound_applicable(&bound, t.k, &iv.hi)? {
            return Err(ReductionError::Inapplicable {
                func: t.func,
                k: t.k,
                degree,
                radius_sq: bound.radius_sq,
            });
        }
        result = &result + &(&t.g * &bound.at_multiple(t.k));
        let arg = iv.hi.scale(&Rational::from_integer(BigInt::from(t.k)));
        terms.push(TermReduction {
            func: t.func,
            k: t.k,
            g: t.g.clone(),
            g_sign: cert.goal.claimed,
            g_certificate: cert,
            degree,
            direction,
            argument_sup_sq: &arg * &arg,
            radius_sq: bound.radius_sq.to_string(),
        });
    }
    let trace = ReductionTrace {
        interval: iv.clone(),
        form: m.clone(),
        terms,
        result: result.clone(),
    };
    Ok((result, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mt(s: &str) -> MixedTrigPoly {
        MixedTrigPoly::parse(s).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse_any(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f = mt("2*x^3*sin(x)");
        assert_eq!(f.terms().collect::<Vec<_>>(), vec![(&NumericValue::from_int(2), 3, 0, 1)]);
        let f = mt("(8/45)*x^5*sin(x)^2 - pi*x*cos(x)");
        let t: Vec<_> = f.terms().collect();
        assert_eq!(t[0], (&-NumericValue::pi(), 1, 1, 0));
        assert_eq!(t[1], (&NumericValue::from_ratio(8, 45), 5, 0, 2));
        assert_eq!(mt("1").to_string(), "1");
        assert_eq!(mt("2*x*sin(x)").to_string(), "2*x*sin(x)");
        assert_eq!(mt("x*sin(x) - x*sin(x)").to_string(), "0");
        for s in ["(8/45)*x^5*sin(x)^2 - pi*x*cos(x)", "(1+pi)/pi^2*x - 3*cos(x)^2*sin(x)/7"] {
            let f = mt(s);
            assert_eq!(mt(&f.to_string()), f);
        }
    }

    #[test]
    fn multiple_angle_arguments_are_rejected() {
        let err = MixedTrigPoly::parse("1 - 8*x^2 - cos(4*x) - 8*x^2*cos(2*x)").unwrap_err();
        assert!(matches!(err, ParseError::TrigArgument { .. }), "{err}");
        assert!(matches!(
            MixedTrigPoly::parse("x + y").unwrap_err(),
            ParseError::UnknownIdentifier { .. }
        ));
    }

    #[test]
    fn linearization_identities() {
        let m = mt("sin(x)^2").to_multiple_angle();
        assert_eq!(m.poly_part, p("1/2"));
        assert_eq!(m.terms, vec![TrigTerm { func: TrigFunc::Cos, k: 2, g: p("-1/2") }]);
        let m = mt("cos(x)^2").to_multiple_angle();
        assert_eq!(m.poly_part, p("1/2"));
        assert_eq!(m.term(TrigFunc::Cos, 2), Some(&p("1/2")));
        let m = mt("sin(x)*cos(x)").to_multiple_angle();
        assert!(m.poly_part.is_zero());
        assert_eq!(m.terms, vec![TrigTerm { func: TrigFunc::Sin, k: 2, g: p("1/2") }]);
        // sin³x = (3 sin x − sin 3x)/4
        let m = mt("sin(x)^3").to_multiple_angle();
        assert_eq!(m.term(TrigFunc::Sin, 1), Some(&p("3/4")));
        assert_eq!(m.term(TrigFunc::Sin, 3), Some(&p("-1/4")));
        // cos³x = (3 cos x + cos 3x)/4
        let m = mt("cos(x)^3").to_multiple_angle();
        assert_eq!(m.term(TrigFunc::Cos, 1), Some(&p("3/4")));
        assert_eq!(m.term(TrigFunc::Cos, 3), Some(&p("1/4")));
        // sin²x cos x = (cos x − cos 3x)/4
        let m = mt("cos(x)*sin(x)^2").to_multiple_angle();
        assert_eq!(m.term(TrigFunc::Cos, 1), Some(&p("1/4")));
        assert_eq!(m.term(TrigFunc::Cos, 3), Some(&p("-1/4")));
        assert_eq!(m.max_multiple(), 3);
    }

    #[test]
    fn cleared_wilker_difference() {
        let f = mt("8*sin(x)^2*cos(x)^2 + 8*x*sin(x)*cos(x) - 16*x^2*cos(x)^2 - 8*(8/45 - 8/945*x^2)*x^5*sin(x)*cos(x)");
        let m = f.to_multiple_angle();
        assert_eq!(m.poly_part, p("1 - 8*x^2"));
        assert_eq!(m.term(TrigFunc::Cos, 4), Some(&p("-1")));
        assert_eq!(m.term(TrigFunc::Cos, 2), Some(&p("-8*x^2")));
        assert_eq!(
            m.term(TrigFunc::Sin, 2),
            Some(&p("4*x - 32/45*x^5 + 32/945*x^7"))
        );
        assert_eq!(m.terms.len(), 3);
    }

    #[test]
    fn reflection() {
        let one = Poly::constant(NumericValue::one());
        let m = MultiAngleForm::new(Poly::zero(), [((TrigFunc::Cos, 2), one.clone())].into());
        assert_eq!(m.reflect().terms, vec![TrigTerm { func: TrigFunc::Cos, k: 2, g: p("-1") }]);
        let m = MultiAngleForm::new(Poly::zero(), [((TrigFunc::Sin, 2), one.clone())].into());
        assert_eq!(m.reflect().terms, vec![TrigTerm { func: TrigFunc::Sin, k: 2, g: p("1") }]);
        let m = MultiAngleForm::new(Poly::zero(), [((TrigFunc::Sin, 1), one.clone())].into());
        assert_eq!(m.reflect().terms, vec![TrigTerm { func: TrigFunc::Cos, k: 1, g: p("1") }]);
        let m = MultiAngleForm::new(
            p("1 - 8*x^2"),
            [
                ((TrigFunc::Cos, 4), p("-1")),
                ((TrigFunc::Cos, 2), p("-8*x^2")),
                ((TrigFunc::Sin, 2), p("4*x")),
                ((TrigFunc::Cos, 3), p("x^2 + pi")),
            ]
            .into(),
        );
        let r = m.reflect();
        assert_eq!(r.poly_part, p("1 - 8*(pi/2 - x)^2"));
        assert_eq!(r.term(TrigFunc::Cos, 4), Some(&p("-1")));
        assert_eq!(r.term(TrigFunc::Cos, 2), Some(&p("8*(pi/2 - x)^2")));
        assert_eq!(r.term(TrigFunc::Sin, 2), Some(&p("4*(pi/2 - x)")));
        assert_eq!(r.term(TrigFunc::Sin, 3), Some(&p("-(pi/2 - x)^2 - pi")));
        assert_eq!(r.reflect(), m);
    }

    #[test]
    fn degree_text() {
        let d = parse_degrees("cos:4=20, cos:2=16,sin:2=11").unwrap();
        assert_eq!(d[&(TrigFunc::Cos, 4)], 20);
        assert_eq!(degrees_to_text(&d), "cos:2=16,cos:4=20,sin:2=11");
        assert!(parse_degrees("tan:2=3").is_err());
    }
}
