//! Shared helpers for the integration tests and the acceptance target.
#![allow(dead_code)]

pub mod checks;
pub mod props;
pub mod tamper;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use trigpos::mixedtrig::{parse_degrees, reduce_lower_bound, DegreeChoice, ReductionTrace};
use trigpos::positivity::{prove_strict_sign, Strategy};
use trigpos::prover::{corpus, right_interval, CorpusEntry};
use trigpos::{IntervalSpec, NumericValue, Poly, Rational};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn entry(name: &str) -> CorpusEntry {
    corpus()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("no corpus entry {name}"))
}

/// The reduction of one piece of a corpus goal at the given split and
/// degrees, with coefficient signs certified by the default strategy.
pub fn reduce_piece(name: &str, right: bool, split: &NumericValue, degrees: &str) -> Result<ReductionTrace, String> {
    reduce_piece_with(name, right, split, &parse_degrees(degrees)?)
}

pub fn reduce_piece_with(
    name: &str,
    right: bool,
    split: &NumericValue,
    degrees: &DegreeChoice,
) -> Result<ReductionTrace, String> {
    let e = entry(name);
    let g = &e.goal.interval;
    let form = e.goal.f.to_multiple_angle();
    let (form, iv) = if right {
        (form.reflect(), right_interval(g, split)?)
    } else {
        (form, IntervalSpec::new(g.lo.clone(), split.clone(), g.lo_open, false).map_err(|e| e.to_string())?)
    };
    let strategy = Strategy::default();
    let mut signs = |p: &Poly, iv: &IntervalSpec| prove_strict_sign(p, iv, &strategy).map_err(|e| e.to_string());
    reduce_lower_bound(&form, &iv, degrees, &mut signs)
        .map(|(_, trace)| trace)
        .map_err(|e| e.to_string())
}

/// `p / x^m` for the largest such `m`.
pub fn strip_x(p: &Poly) -> Poly {
    p.factor_out_x().expect("nonzero polynomial").1
}

/// `p` scaled so that its coefficients are coprime integers with a positive
/// leading coefficient. Panics if a coefficient involves π.
pub fn integer_normalized(p: &Poly) -> Vec<BigInt> {
    let (_, prim) = p.primitive_part().expect("nonzero polynomial");
    let mut c: Vec<Rational> = prim
        .coeffs()
        .iter()
        .map(|v| v.as_rational().expect("rational coefficients"))
        .collect();
    let lcm = c.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    for q in c.iter_mut() {
        *q = &*q * Rational::from_integer(lcm.clone());
    }
    let g = c.iter().fold(BigInt::zero(), |acc, q| num_integer::gcd(acc, q.numer().clone()));
    let sign = if c.last().expect("nonzero").numer() < &BigInt::zero() { -1 } else { 1 };
    c.iter().map(|q| q.numer() / &g * sign).collect()
}
