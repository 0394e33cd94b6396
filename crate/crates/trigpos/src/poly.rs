//! Dense univariate polynomials in x over [`NumericValue`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::expr::{self, Algebra, ParseError};
use crate::scalar::{
    enclose, owned_ops, NumericValue, PiScalar, Rational, RationalInterval, ScalarError, Sign,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("divisor must be nonzero with a leading coefficient of the form c*pi^k")]
    BadDivisor,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("coefficient of x^{0} is nonzero, so the polynomial is not a function of x^2")]
    OddTerm(usize),
    #[error("malformed polynomial record: {0}")]
    Format(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `coeffs[i]` multiplies x^i; the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<NumericValue>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<NumericValue>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: NumericValue) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::monomial(NumericValue::one(), 1)
    }

    pub fn monomial(c: NumericValue, k: usize) -> Self {
        let mut coeffs = vec![NumericValue::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// Polynomial with rational coefficients given as (numerator, denominator).
    pub fn from_ratios(c: &[(i64, i64)]) -> Self {
        Poly::new(c.iter().map(|&(n, d)| NumericValue::from_ratio(n, d)).collect())
    }

    pub fn coeffs(&self) -> &[NumericValue] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> NumericValue {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&NumericValue> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<NumericValue> {
        match self.coeffs.len() {
            0 => Some(NumericValue::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &NumericValue) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(NumericValue::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, at: &NumericValue) -> NumericValue {
        let mut acc = NumericValue::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self(π/2 − x)`.
    pub fn reflect_half_pi(&self) -> Poly {
        self.compose(&Poly::new(vec![NumericValue::half_pi(), NumericValue::from_int(-1)]))
    }

    /// `self(k·x)`.
    pub fn scale_arg(&self, k: &NumericValue) -> Poly {
        let mut p = NumericValue::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &p);
            p = &p * k;
        }
        Poly::new(out)
    }

    /// `(m, q)` with `self = x^m · q` and `q(0) ≠ 0`.
    pub fn factor_out_x(&self) -> Result<(usize, Poly), PolyError> {
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(PolyError::ZeroPolynomial)?;
        Ok((m, Poly::new(self.coeffs[m..].to_vec())))
    }

    /// Multiply by x^m.
    pub fn shift(&self, m: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![NumericValue::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a
    /// monomial `c·π^k` so the division stays inside ℚ[π, 1/π].
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dl = d.leading().ok_or(PolyError::BadDivisor)?;
        let inv = NumericValue::one()
            .checked_div(dl)
            .ok_or(PolyError::BadDivisor)?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![NumericValue::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dj);
            }
            quot[i] = c;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// `q` with `self = d·q`, or an error when the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// `q` with `q(x²) = self(x)`.
    pub fn even_decimate(&self) -> Result<Poly, PolyError> {
        if let Some(i) = (1..self.coeffs.len())
            .step_by(2)
            .find(|&i| !self.coeffs[i].is_zero())
        {
            return Err(PolyError::OddTerm(i));
        }
        Ok(Poly::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// `self(x²)`.
    pub fn substitute_square(&self) -> Poly {
        let mut out = vec![NumericValue::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        Poly::new(out)
    }

    /// Common π-denominator power `D` and positive integer `L` such that
    /// every `coeff · π^D · L` has integer coefficients in π.
    pub fn to_integer_pi(&self) -> (Vec<Vec<BigInt>>, u32, BigInt) {
        let d = self.coeffs.iter().map(|c| c.pi_den()).max().unwrap_or(0);
        let lifted: Vec<PiScalar> = self
            .coeffs
            .iter()
            .map(|c| c.num().mul_pi_pow((d - c.pi_den()) as usize))
            .collect();
        let mut l = BigInt::one();
        for s in &lifted {
            for q in s.coeffs() {
                l = l.lcm(q.denom());
            }
        }
        let ints = lifted
            .iter()
            .map(|s| s.coeffs().iter().map(|q| q.numer() * &l / q.denom()).collect())
            .collect();
        (ints, d, l)
    }

    /// `(content, primitive)` with `self = content · primitive`, where the
    /// primitive part has coprime integer coefficients in ℤ[π], no common
    /// factor of π, and a positive leading coefficient.
    pub fn primitive_part(&self) -> Result<(NumericValue, Poly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (ints, d, l) = self.to_integer_pi();
        let mut g = BigInt::zero();
        let mut shift = usize::MAX;
        for s in &ints {
            for (i, c) in s.iter().enumerate() {
                if !c.is_zero() {
                    g = g.gcd(c);
                    shift = shift.min(i);
                }
            }
        }
        let prim: Vec<NumericValue> = ints
            .iter()
            .map(|s| {
                let v: Vec<Rational> = s
                    .iter()
                    .skip(shift.min(s.len()))
                    .map(|c| Rational::from_integer(c / &g))
                    .collect();
                NumericValue::new(PiScalar::new(v), 0)
            })
            .collect();
        let mut prim = Poly::new(prim);
        // self = prim · g/l · π^(shift − d)
        let mut content = NumericValue::from_rational(Rational::new(g, l))
            .mul_pi_pow(shift as i32 - d as i32);
        if prim.leading().expect("nonzero").sign()? == Sign::Negative {
            prim = -prim;
            content = -content;
        }
        Ok((content, prim))
    }

    /// Enclosure of `{self(x) : x ∈ over}` by interval Horner with outward
    /// dyadic rounding at `precision_bits`.
    pub fn eval_interval(&self, over: &RationalInterval, precision_bits: u32) -> RationalInterval {
        let bits = precision_bits.max(8);
        let mut acc = RationalInterval::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            let ci = enclose(c, bits + 8);
            acc = interval_add(&interval_mul(&acc, over), &ci);
            acc = RationalInterval::new(round_down(&acc.lo, bits), round_up(&acc.hi, bits));
        }
        acc
    }

    /// One polynomial per record: `degree; c0; c1; …`.
    pub fn to_fixture_text(&self) -> String {
        if self.is_zero() {
            return "0; 0".into();
        }
        let mut s = format!("{}", self.coeffs.len() - 1);
        for c in &self.coeffs {
            s.push_str("; ");
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn parse_fixture(text: &str) -> Result<Poly, PolyError> {
        let mut parts = text.trim().split(';').map(str::trim);
        let deg: usize = parts
            .next()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| PolyError::Format("missing degree".into()))?
            .parse()
            .map_err(|_| PolyError::Format("degree must be a natural number".into()))?;
        let coeffs = parts
            .map(expr::parse_constant)
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != deg + 1 {
            return Err(PolyError::Format(format!(
                "degree {} needs {} coefficients, found {}",
                deg,
                deg + 1,
                coeffs.len()
            )));
        }
        if deg > 0 && coeffs[deg].is_zero() {
            return Err(PolyError::Format("leading coefficient is zero".into()));
        }
        Ok(Poly::new(coeffs))
    }

    /// Parse either a fixture record or an expression in x.
    pub fn parse_any(text: &str) -> Result<Poly, PolyError> {
        let t = text.trim();
        if t.contains(';') {
            Poly::parse_fixture(t)
        } else {
            Ok(expr::eval(&expr::parse(t)?)?)
        }
    }
}

pub(crate) fn interval_add(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    RationalInterval::new(&a.lo + &b.lo, &a.hi + &b.hi)
}

pub(crate) fn interval_mul(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    let p = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = p.iter().min().expect("nonempty").clone();
    let hi = p.iter().max().expect("nonempty").clone();
    RationalInterval::new(lo, hi)
}

pub(crate) fn round_down(q: &Rational, bits: u32) -> Rational {
    let s = BigInt::one() << bits as usize;
    Rational::new((q * Rational::from_integer(s.clone())).floor().to_integer(), s)
}

pub(crate) fn round_up(q: &Rational, bits: u32) -> Rational {
    let s = BigInt::one() << bits as usize;
    Rational::new((q * Rational::from_integer(s.clone())).ceil().to_integer(), s)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![NumericValue::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

owned_ops!(Poly);

impl fmt::Display for Poly {
    /// Expression form, highest power first: `2*x^3 + (1 - pi)*x - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let simple = c.as_monomial().is_some();
            let (neg, body) = match text.strip_prefix('-') {
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
            first = false;
            let body = if simple { body } else { format!("({})", body) };
            match i {
                0 => f.write_str(&body)?,
                _ => {
                    if body != "1" {
                        write!(f, "{}*", body)?;
                    }
                    if i == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Algebra for Poly {
    fn constant(v: NumericValue) -> Self {
        Poly::constant(v)
    }
    fn x(_: usize) -> Result<Self, ParseError> {
        Ok(Poly::x())
    }
    fn sin(column: usize) -> Result<Self, ParseError> {
        Err(ParseError::NotAllowed {
            column,
            what: "sin(x) in a polynomial".into(),
        })
    }
    fn cos(column: usize) -> Result<Self, ParseError> {
        Err(ParseError::NotAllowed {
            column,
            what: "cos(x) in a polynomial".into(),
        })
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_constant(&self) -> Option<NumericValue> {
        Poly::as_constant(self)
    }
}

impl std::str::FromStr for Poly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly::parse_any(s)
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_fixture_text())
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Poly::parse_fixture(&s).map_err(serde::de::Error::custom)
    }
}
