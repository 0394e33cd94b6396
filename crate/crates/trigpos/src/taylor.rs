//! Directional Taylor segments of sin and cos at 0.
//!
//! For degree `n` the segment lies above or below the function on
//! `[0, √((n+3)(n+4))]`, the direction being fixed by `n mod 4`:
//! sin is bounded above for `n ≡ 1`, below for `n ≡ 3`; cos above for
//! `n ≡ 0`, below for `n ≡ 2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Poly;
use crate::scalar::{scalar_sign, NumericValue, Rational, ScalarError, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigFunc {
    Cos,
    Sin,
}

impl fmt::Display for TrigFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrigFunc::Cos => "cos",
            TrigFunc::Sin => "sin",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorError {
    #[error("{func} bound of degree {degree} must have {expected} parity")]
    Parity {
        func: TrigFunc,
        degree: u32,
        expected: &'static str,
    },
    #[error("degree {degree} gives a {actual} bound for {func}, not a {requested} bound")]
    DirectionMismatch {
        func: TrigFunc,
        degree: u32,
        requested: Direction,
        actual: Direction,
    },
}

/// The direction a degree-`n` segment of `func` bounds from, if `n` has the
/// right parity.
pub fn direction_of(func: TrigFunc, n: u32) -> Option<Direction> {
    match (func, n % 4) {
        (TrigFunc::Sin, 1) | (TrigFunc::Cos, 0) => Some(Direction::Upper),
        (TrigFunc::Sin, 3) | (TrigFunc::Cos, 2) => Some(Direction::Lower),
        _ => None,
    }
}

/// Smallest degree giving a `dir` bound for `func`.
pub fn min_degree(func: TrigFunc, dir: Direction) -> u32 {
    match (func, dir) {
        (TrigFunc::Cos, Direction::Upper) => 0,
        (TrigFunc::Sin, Direction::Upper) => 1,
        (TrigFunc::Cos, Direction::Lower) => 2,
        (TrigFunc::Sin, Direction::Lower) => 3,
    }
}

/// Largest degree not above `cap` giving a `dir` bound, if any.
pub fn max_degree_at_most(func: TrigFunc, dir: Direction, cap: u32) -> Option<u32> {
    let m = min_degree(func, dir);
    (cap >= m).then(|| m + (cap - m) / 4 * 4)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorBound {
    pub func: TrigFunc,
    pub direction: Direction,
    pub degree: u32,
    /// Polynomial in the bound's own variable t.
    pub poly: Poly,
    /// `(n+3)(n+4)`.
    pub radius_sq: BigInt,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn taylor_poly(func: TrigFunc, n: u32) -> Poly {
    let mut coeffs = vec![NumericValue::zero(); n as usize + 1];
    let start = match func {
        TrigFunc::Sin => 1,
        TrigFunc::Cos => 0,
    };
    for (i, k) in (start..=n).step_by(2).enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        coeffs[k as usize] =
            NumericValue::from_rational(Rational::new(BigInt::from(sign), factorial(k)));
    }
    Poly::new(coeffs)
}

pub fn bound(func: TrigFunc, n: u32, direction: Direction) -> Result<TaylorBound, TaylorError> {
    let actual = direction_of(func, n).ok_or(TaylorError::Parity {
        func,
        degree: n,
        expected: match func {
            TrigFunc::Sin => "odd",
            TrigFunc::Cos => "even",
        },
    })?;
    if actual != direction {
        return Err(TaylorError::DirectionMismatch {
            func,
            degree: n,
            requested: direction,
            actual,
        });
    }
    Ok(TaylorBound {
        func,
        direction,
        degree: n,
        poly: taylor_poly(func, n),
        radius_sq: BigInt::from(n + 3) * BigInt::from(n + 4),
    })
}

pub fn sin_bound(n: u32, direction: Direction) -> Result<TaylorBound, TaylorError> {
    bound(TrigFunc::Sin, n, direction)
}

pub fn cos_bound(n: u32, direction: Direction) -> Result<TaylorBound, TaylorError> {
    bound(TrigFunc::Cos, n, direction)
}

/// Whether `(k·sup_x)² ≤ (n+3)(n+4)`, decided exactly.
pub fn bound_applicable(b: &TaylorBound, k: u32, sup_x: &NumericValue) -> Result<bool, ScalarError> {
    let arg = sup_x.scale(&Rational::from_integer(BigInt::from(k)));
    let slack = &NumericValue::from_rational(Rational::from_integer(b.radius_sq.clone()))
        - &(&arg * &arg);
    Ok(scalar_sign(&slack)? != Sign::Negative)
}

impl TaylorBound {
    /// The segment evaluated at `k·x`, as a polynomial in x.
    pub fn at_multiple(&self, k: u32) -> Poly {
        self.poly.scale_arg(&NumericValue::from_int(k as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse_any(s).unwrap()
    }

    #[test]
    fn generators() {
        let b = sin_bound(1, Direction::Upper).unwrap();
        assert_eq!(b.poly, p("x"));
        assert_eq!(b.radius_sq, BigInt::from(20));
        let b = sin_bound(3, Direction::Lower).unwrap();
        assert_eq!(b.poly, p("x - x^3/6"));
        assert_eq!(b.radius_sq, BigInt::from(42));
        let b = sin_bound(11, Direction::Lower).unwrap();
        assert_eq!(b.poly.degree(), Some(11));
        assert_eq!(b.radius_sq, BigInt::from(210));
        assert_eq!(cos_bound(0, Direction::Upper).unwrap().poly, p("1"));
        assert_eq!(cos_bound(0, Direction::Upper).unwrap().radius_sq, BigInt::from(12));
        assert_eq!(cos_bound(2, Direction::Lower).unwrap().poly, p("1 - x^2/2"));
        assert_eq!(cos_bound(20, Direction::Upper).unwrap().radius_sq, BigInt::from(552));
    }

    #[test]
    fn mismatches_are_errors() {
        assert!(matches!(
            sin_bound(3, Direction::Upper),
            Err(TaylorError::DirectionMismatch { .. })
        ));
        assert!(matches!(sin_bound(4, Direction::Upper), Err(TaylorError::Parity { .. })));
        assert!(matches!(
            cos_bound(2, Direction::Upper),
            Err(TaylorError::DirectionMismatch { .. })
        ));
    }

    #[test]
    fn applicability() {
        let c0 = cos_bound(0, Direction::Upper).unwrap();
        assert!(!bound_applicable(&c0, 4, &NumericValue::from_ratio(157, 100)).unwrap());
        let s11 = sin_bound(11, Direction::Lower).unwrap();
        assert!(bound_applicable(&s11, 2, &NumericValue::from_ratio(157, 100)).unwrap());
        let c2 = cos_bound(2, Direction::Lower).unwrap();
        assert!(bound_applicable(&c2, 2, &NumericValue::half_pi()).unwrap());
    }

    #[test]
    fn degree_helpers() {
        assert_eq!(max_degree_at_most(TrigFunc::Cos, Direction::Upper, 24), Some(24));
        assert_eq!(max_degree_at_most(TrigFunc::Cos, Direction::Lower, 24), Some(22));
        assert_eq!(max_degree_at_most(TrigFunc::Sin, Direction::Lower, 24), Some(23));
        assert_eq!(max_degree_at_most(TrigFunc::Sin, Direction::Upper, 24), Some(21));
        assert_eq!(max_degree_at_most(TrigFunc::Sin, Direction::Lower, 2), None);
    }
}
