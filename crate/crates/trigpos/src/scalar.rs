//! Exact arithmetic over ℚ and ℚ[π], with rigorous sign decisions.
//!
//! Every coefficient the prover touches is a [`NumericValue`]: an element of
//! ℚ[π] divided by a power of π. Equality is syntactic on the normalized
//! representation; sign questions go through [`scalar_sign`], which refines an
//! enclosure of π until the value separates from zero.

mod pi;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use pi::{floor_pi_scaled, pi_enclosure};

pub type Rational = BigRational;

/// Default ceiling for the precision schedule of [`scalar_sign`].
pub const DEFAULT_PRECISION_CEILING: u32 = 1 << 16;

const START_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// A nonzero value never separated from zero below the ceiling. With a
    /// canonical representation this means the ceiling is too low.
    #[error("precision ceiling of {ceiling} bits exceeded while separating a value from zero")]
    PrecisionExhausted { ceiling: u32 },
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(v: &T) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn pow(self, e: u32) -> Sign {
        if e == 0 {
            Sign::Positive
        } else if e % 2 == 0 && self != Sign::Zero {
            Sign::Positive
        } else {
            self
        }
    }

    pub fn is_strict(self) -> bool {
        self != Sign::Zero
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RationalInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Sign of every point, if the interval excludes zero.
    pub fn strict_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// PiScalar

/// Element of ℚ[π]; `coeffs[i]` multiplies π^i. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiScalar {
    coeffs: Vec<Rational>,
}

impl PiScalar {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiScalar { coeffs }
    }

    pub fn zero() -> Self {
        PiScalar { coeffs: Vec::new() }
    }

    pub fn from_rational(q: Rational) -> Self {
        PiScalar::new(vec![q])
    }

    /// The monomial q·π^k.
    pub fn monomial(q: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = q;
        PiScalar::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// π-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Rational value when no π term is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn mul_pi_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PiScalar { coeffs }
    }

    /// Drop the lowest `k` coefficients, which the caller knows are zero.
    fn div_pi_pow(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        PiScalar::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return PiScalar::zero();
        }
        PiScalar {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Positive integer `l` and integer coefficients `c` with `self = c / l`.
    pub fn to_integer_coeffs(&self) -> (Vec<BigInt>, BigInt) {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c.numer() * &l) / c.denom())
            .collect();
        (ints, l)
    }
}

impl<'a> Add<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: &PiScalar) -> PiScalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiScalar::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: &PiScalar) -> PiScalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiScalar::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        if self.is_zero() || rhs.is_zero() {
            return PiScalar::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiScalar::new(out)
    }
}

impl Neg for &PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for PiScalar {
    /// `q0 + q1*pi + q2*pi^2`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        f.write_str("pi")?;
                    } else {
                        write!(f, "pi^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// NumericValue

/// `num / π^pi_den`, normalized so that `pi_den` is minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NumericValue {
    num: PiScalar,
    pi_den: u32,
}

impl NumericValue {
    pub fn new(num: PiScalar, pi_den: u32) -> Self {
        if num.is_zero() {
            return NumericValue::zero();
        }
        let v = num.valuation().unwrap_or(0).min(pi_den as usize);
        NumericValue {
            num: num.div_pi_pow(v),
            pi_den: pi_den - v as u32,
        }
    }

    pub fn zero() -> Self {
        NumericValue {
            num: PiScalar::zero(),
            pi_den: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(q: Rational) -> Self {
        NumericValue::new(PiScalar::from_rational(q), 0)
    }

    pub fn pi() -> Self {
        Self::pi_pow(1)
    }

    /// π^k for any integer k.
    pub fn pi_pow(k: i32) -> Self {
        if k >= 0 {
            NumericValue::new(PiScalar::monomial(Rational::one(), k as usize), 0)
        } else {
            NumericValue::new(PiScalar::from_rational(Rational::one()), (-k) as u32)
        }
    }

    /// π/2, the right end of every goal interval.
    pub fn half_pi() -> Self {
        NumericValue::new(PiScalar::monomial(rat(1, 2), 1), 0)
    }

    pub fn num(&self) -> &PiScalar {
        &self.num
    }

    pub fn pi_den(&self) -> u32 {
        self.pi_den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.pi_den == 0 {
            self.num.as_rational()
        } else {
            None
        }
    }

    /// `c·π^k` form, if the value is a single π-monomial.
    pub fn as_monomial(&self) -> Option<(Rational, i32)> {
        let nonzero: Vec<_> = self
            .num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        match nonzero.as_slice() {
            [(i, c)] => Some(((*c).clone(), *i as i32 - self.pi_den as i32)),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        NumericValue::new(self.num.scale(q), self.pi_den)
    }

    pub fn mul_pi_pow(&self, k: i32) -> Self {
        if k >= 0 {
            NumericValue::new(self.num.mul_pi_pow(k as usize), self.pi_den)
        } else {
            NumericValue::new(self.num.clone(), self.pi_den + (-k) as u32)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = NumericValue::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient when the divisor is a nonzero monomial c·π^k.
    pub fn checked_div(&self, d: &NumericValue) -> Option<NumericValue> {
        let (c, k) = d.as_monomial()?;
        Some(self.scale(&c.recip()).mul_pi_pow(-k))
    }

    fn lift(&self, den: u32) -> PiScalar {
        self.num.mul_pi_pow((den - self.pi_den) as usize)
    }

    /// Sign with the default precision ceiling.
    pub fn sign(&self) -> Result<Sign, ScalarError> {
        scalar_sign(self)
    }

    /// Rational enclosure at `bits` of π precision.
    pub fn enclose(&self, bits: u32) -> RationalInterval {
        enclose(self, bits)
    }

    pub fn cmp_value(&self, other: &NumericValue) -> Result<Ordering, ScalarError> {
        Ok(match scalar_sign(&(self - other))? {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }
}

impl<'a> Add<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn add(self, rhs: &NumericValue) -> NumericValue {
        let den = self.pi_den.max(rhs.pi_den);
        NumericValue::new(&self.lift(den) + &rhs.lift(den), den)
    }
}

impl<'a> Sub<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn sub(self, rhs: &NumericValue) -> NumericValue {
        let den = self.pi_den.max(rhs.pi_den);
        NumericValue::new(&self.lift(den) - &rhs.lift(den), den)
    }
}

impl<'a> Mul<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn mul(self, rhs: &NumericValue) -> NumericValue {
        NumericValue::new(&self.num * &rhs.num, self.pi_den + rhs.pi_den)
    }
}

impl Neg for &NumericValue {
    type Output = NumericValue;
    fn neg(self) -> NumericValue {
        NumericValue {
            num: -&self.num,
            pi_den: self.pi_den,
        }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(PiScalar);
owned_ops!(NumericValue);

impl From<Rational> for NumericValue {
    fn from(q: Rational) -> Self {
        NumericValue::from_rational(q)
    }
}

impl From<i64> for NumericValue {
    fn from(n: i64) -> Self {
        NumericValue::from_int(n)
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_den == 0 {
            return write!(f, "{}", self.num);
        }
        let multi = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if multi {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.pi_den == 1 {
            f.write_str("/pi")
        } else {
            write!(f, "/pi^{}", self.pi_den)
        }
    }
}

impl std::str::FromStr for NumericValue {
    type Err = crate::expr::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::expr::parse_constant(s)
    }
}

impl serde::Serialize for NumericValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for NumericValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a [`Rational`] as `a/b` text.
pub mod rational_text {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Sign determination

/// Bounds `(lower, upper)` on `Σ c_i π^i · 2^(q·d)` where `d` is the degree,
/// using `π ∈ [a, a+1]/2^q`. The coefficients are split by sign so each part
/// is monotone in π.
fn int_pi_poly_bounds(c: &[BigInt], a: &BigInt, q: u32) -> (BigInt, BigInt) {
    let d = c.len() - 1;
    let a_hi = a + 1u32;
    let horner = |point: &BigInt, pick_positive: bool| -> BigInt {
        let mut acc = BigInt::zero();
        for (step, ci) in c.iter().rev().enumerate() {
            let take = if pick_positive {
                ci.is_positive()
            } else {
                ci.is_negative()
            };
            let term = if take { ci.abs() } else { BigInt::zero() };
            if step == 0 {
                acc = term;
            } else {
                acc = acc * point + (term << (q as usize * step));
            }
        }
        acc
    };
    let _ = d;
    let pos_lo = horner(a, true);
    let pos_hi = horner(&a_hi, true);
    let neg_lo = horner(a, false);
    let neg_hi = horner(&a_hi, false);
    (pos_lo - neg_hi, pos_hi - neg_lo)
}

/// Sign of `Σ c_i π^i` for integer coefficients.
pub fn int_pi_poly_sign(c: &[BigInt], ceiling: u32) -> Result<Sign, ScalarError> {
    let c = {
        let mut end = c.len();
        while end > 0 && c[end - 1].is_zero() {
            end -= 1;
        }
        &c[..end]
    };
    match c.len() {
        0 => return Ok(Sign::Zero),
        1 => return Ok(Sign::of(&c[0])),
        _ => {}
    }
    if c.iter().all(|x| !x.is_negative()) {
        return Ok(Sign::Positive);
    }
    if c.iter().all(|x| !x.is_positive()) {
        return Ok(Sign::Negative);
    }
    let mut q = START_BITS.min(ceiling.max(4));
    loop {
        let a = floor_pi_scaled(q);
        let (lo, hi) = int_pi_poly_bounds(c, &a, q);
        if lo.is_positive() {
            return Ok(Sign::Positive);
        }
        if hi.is_negative() {
            return Ok(Sign::Negative);
        }
        if q >= ceiling {
            return Err(ScalarError::PrecisionExhausted { ceiling });
        }
        q = (q * 2).min(ceiling);
    }
}

/// Exact sign of `v`, with the default precision ceiling.
pub fn scalar_sign(v: &NumericValue) -> Result<Sign, ScalarError> {
    scalar_sign_with(v, DEFAULT_PRECISION_CEILING)
}

pub fn scalar_sign_with(v: &NumericValue, ceiling: u32) -> Result<Sign, ScalarError> {
    if v.is_zero() {
        return Ok(Sign::Zero);
    }
    let (ints, _) = v.num.to_integer_coeffs();
    int_pi_poly_sign(&ints, ceiling)
}

/// Rational enclosure of `v` using the `bits`-bit π enclosure.
pub fn enclose(v: &NumericValue, bits: u32) -> RationalInterval {
    if let Some(q) = v.as_rational() {
        return RationalInterval::point(q);
    }
    let q = bits + 1;
    let a = floor_pi_scaled(q);
    let (ints, l) = v.num.to_integer_coeffs();
    let d = ints.len() - 1;
    let (lo, hi) = int_pi_poly_bounds(&ints, &a, q);
    let scale = BigInt::one() << (q as usize * d);
    let den = &scale * &l;
    let num_lo = Rational::new(lo, den.clone());
    let num_hi = Rational::new(hi, den);
    if v.pi_den == 0 {
        return RationalInterval::new(num_lo, num_hi);
    }
    let two_q = Rational::from_integer(BigInt::one() << q as usize);
    let pi_lo = Rational::from_integer(a.clone()) / &two_q;
    let pi_hi = Rational::from_integer(a + 1u32) / &two_q;
    let k = v.pi_den as i32;
    let p_lo = num_traits::pow::Pow::pow(&pi_lo, k);
    let p_hi = num_traits::pow::Pow::pow(&pi_hi, k);
    let div = |x: &Rational, lower: bool| -> Rational {
        // x / π^k is decreasing in π for x ≥ 0, increasing for x < 0.
        let use_hi = (x >= &Rational::zero()) == lower;
        if use_hi {
            x / &p_hi
        } else {
            x / &p_lo
        }
    };
    RationalInterval::new(div(&num_lo, true), div(&num_hi, false))
}

// ---------------------------------------------------------------------------
// Decimal rendering

/// A certified decimal rendering; `truncated` means digits beyond the last
/// shown one were dropped (shown with a trailing `…`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    pub text: String,
    pub truncated: bool,
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Decimal {
    /// The digits without the truncation marker.
    pub fn digits(&self) -> &str {
        self.text.trim_end_matches('…')
    }
}

/// Integer part of `q·10^digits`, truncated toward zero.
fn trunc_scaled(q: &Rational, digits: u32) -> BigInt {
    let s = q * Rational::from_integer(BigInt::from(10u32).pow(digits));
    s.to_integer()
}

/// Render `±t / 10^digits` (t already truncated) with `digits` decimals.
pub(crate) fn format_fixed(t: &BigInt, negative: bool, digits: u32) -> String {
    let mut s = t.abs().to_string();
    let d = digits as usize;
    if s.len() <= d {
        s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
    }
    let (int_part, frac) = s.split_at(s.len() - d);
    let sign = if negative { "-" } else { "" };
    if d == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!("{}{}.{}", sign, int_part, frac)
    }
}

/// Decimal expansion of `v` truncated toward zero after `digits` places.
pub fn scalar_to_decimal(v: &NumericValue, digits: u32) -> Result<Decimal, ScalarError> {
    scalar_to_decimal_with(v, digits, DEFAULT_PRECISION_CEILING)
}

pub fn scalar_to_decimal_with(
    v: &NumericValue,
    digits: u32,
    ceiling: u32,
) -> Result<Decimal, ScalarError> {
    if let Some(q) = v.as_rational() {
        let t = trunc_scaled(&q, digits);
        let exact = Rational::from_integer(t.clone())
            == &q * Rational::from_integer(BigInt::from(10u32).pow(digits));
        let mut text = format_fixed(&t, q.is_negative(), digits);
        if !exact {
            text.push('…');
        }
        return Ok(Decimal {
            text,
            truncated: !exact,
        });
    }
    let sign = scalar_sign_with(v, ceiling)?;
    let mut bits = START_BITS;
    loop {
        let iv = enclose(v, bits);
        let same_side = iv.strict_sign() == Some(sign);
        if same_side {
            let a = trunc_scaled(&iv.lo, digits);
            let b = trunc_scaled(&iv.hi, digits);
            if a == b {
                let mut text = format_fixed(&a, sign == Sign::Negative, digits);
                text.push('…');
                return Ok(Decimal {
                    text,
                    truncated: true,
                });
            }
        }
        if bits >= ceiling {
            return Err(ScalarError::PrecisionExhausted { ceiling });
        }
        bits = (bits * 2).min(ceiling);
    }
}

/// Longest common decimal prefix of all reals in `iv`, up to `max_digits`.
pub fn interval_decimal_prefix(iv: &RationalInterval, max_digits: u32) -> Option<String> {
    if iv.lo.is_negative() != iv.hi.is_negative() && !iv.hi.is_zero() && !iv.lo.is_zero() {
        return None;
    }
    let negative = iv.hi.is_negative() || (iv.hi.is_zero() && iv.lo.is_negative());
    let mut best = None;
    for d in 0..=max_digits {
        let a = trunc_scaled(&iv.lo, d);
        let b = trunc_scaled(&iv.hi, d);
        if a != b {
            break;
        }
        best = Some(format_fixed(&a, negative, d));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wilker_constant() -> NumericValue {
        // (480π⁶ − 40320π⁴ + 3628800)/π⁸
        let mut c = vec![Rational::zero(); 7];
        c[0] = rat(3628800, 1);
        c[4] = rat(-40320, 1);
        c[6] = rat(480, 1);
        NumericValue::new(PiScalar::new(c), 8)
    }

    #[test]
    fn normalization_is_minimal() {
        let v = NumericValue::new(PiScalar::monomial(rat(3, 1), 2), 5);
        assert_eq!(v.pi_den(), 3);
        assert_eq!(v.num(), &PiScalar::from_rational(rat(3, 1)));
        let w = NumericValue::new(PiScalar::monomial(rat(3, 1), 5), 2);
        assert_eq!(w.pi_den(), 0);
        assert_eq!(NumericValue::new(PiScalar::zero(), 4), NumericValue::zero());
    }

    #[test]
    fn arithmetic_cancels_syntactically() {
        let a = NumericValue::pi_pow(-3).scale(&rat(16, 1));
        let b = NumericValue::pi_pow(-5).scale(&rat(160, 1));
        let s = &(&a + &b) - &b;
        assert_eq!(s, a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn signs() {
        assert_eq!(scalar_sign(&NumericValue::zero()).unwrap(), Sign::Zero);
        assert_eq!(scalar_sign(&wilker_constant()).unwrap(), Sign::Positive);
        let v = &NumericValue::pi() - &NumericValue::from_ratio(22, 7);
        assert_eq!(scalar_sign(&v).unwrap(), Sign::Negative);
        assert_eq!(scalar_sign(&-v).unwrap(), Sign::Positive);
    }

    #[test]
    fn ceiling_is_reported() {
        // π − 355/113 ≈ −2.7e-7 needs more than 8 bits.
        let v = &NumericValue::pi() - &NumericValue::from_ratio(355, 113);
        assert!(matches!(
            scalar_sign_with(&v, 8),
            Err(ScalarError::PrecisionExhausted { .. })
        ));
        assert_eq!(scalar_sign(&v).unwrap(), Sign::Negative);
    }

    #[test]
    fn decimals() {
        let q = NumericValue::from_ratio(1, 4);
        assert_eq!(scalar_to_decimal(&q, 3).unwrap().text, "0.250");
        assert!(!scalar_to_decimal(&q, 3).unwrap().truncated);
        let a = scalar_to_decimal(&wilker_constant(), 5).unwrap();
        assert_eq!(a.text, "17.15041…");
        assert!(a.truncated);
        let c1 = &NumericValue::half_pi() - &NumericValue::from_ratio(157, 100);
        assert_eq!(scalar_to_decimal(&c1, 4).unwrap().text, "0.0007…");
        let neg = -&c1;
        assert_eq!(scalar_to_decimal(&neg, 4).unwrap().text, "-0.0007…");
        assert_eq!(
            scalar_to_decimal(&NumericValue::from_ratio(-1, 3), 2).unwrap().text,
            "-0.33…"
        );
    }

    #[test]
    fn enclosure_contains_value() {
        let v = wilker_constant();
        let iv = enclose(&v, 40);
        assert!(iv.lo < rat(1715042, 100000) && iv.hi > rat(1715041, 100000));
        let pi_inv = NumericValue::pi_pow(-1).scale(&rat(-1, 1));
        let iv = enclose(&pi_inv, 40);
        assert!(iv.lo < rat(-318309, 1000000) && iv.hi > rat(-318310, 1000000));
        assert!(iv.lo <= iv.hi);
    }

    #[test]
    fn display_forms() {
        assert_eq!(wilker_constant().to_string(), "(3628800 - 40320*pi^4 + 480*pi^6)/pi^8");
        assert_eq!(NumericValue::pi_pow(-2).scale(&rat(-3, 4)).to_string(), "-3/4/pi^2");
        assert_eq!(NumericValue::half_pi().to_string(), "1/2*pi");
        assert_eq!(NumericValue::zero().to_string(), "0");
    }

    #[test]
    fn prefix_of_interval() {
        let iv = RationalInterval::new(rat(-22538, 10000), rat(-22537, 10000));
        assert_eq!(interval_decimal_prefix(&iv, 6).unwrap(), "-2.253");
        let iv = RationalInterval::new(rat(2464993, 1000000), rat(24649933, 10000000));
        assert_eq!(interval_decimal_prefix(&iv, 8).unwrap(), "2.464993");
    }
}
