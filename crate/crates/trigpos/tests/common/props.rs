//! Property suites run with a deterministic proptest runner, so the same
//! cases back both the `properties` tests and the acceptance report.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use trigpos::positivity::{isolate_real_roots, sturm_root_count};
use trigpos::sample::trig_enclosure;
use trigpos::scalar::scalar_sign;
use trigpos::taylor::{self, Direction, TrigFunc};
use trigpos::{IntervalSpec, MixedTrigPoly, NumericValue, PiScalar, Poly, Rational, Sign};

use super::r;

/// π to 100 decimals, typed in independently of the crate's enclosure code.
const PI_100: &str = "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn outcome<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| r(n, d))
}

fn pi_scalar(max_len: usize) -> impl Strategy<Value = PiScalar> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(PiScalar::new)
}

/// Coefficient-wise product, the brute-force oracle for `PiScalar` products.
fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trimmed(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Ring laws of ℚ[π] against coefficient-wise oracles.
pub fn ring_laws(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&(pi_scalar(6), pi_scalar(6), pi_scalar(6)), |(a, b, c)| {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!((&a * &b).coeffs().to_vec(), trimmed(convolve(a.coeffs(), b.coeffs())));
        let sum: Vec<Rational> = (0..a.coeffs().len().max(b.coeffs().len()))
            .map(|i| a.coeff(i) + b.coeff(i))
            .collect();
        prop_assert_eq!((&a + &b).coeffs().to_vec(), trimmed(sum));
        Ok(())
    }))
}

/// `[lo, hi]` around π with width 10⁻¹⁰⁰.
fn pi_bounds() -> (Rational, Rational) {
    let scale = BigInt::from(10u32).pow(100);
    let lo = Rational::new(PI_100.parse::<BigInt>().expect("digits"), scale.clone());
    let hi = &lo + Rational::new(BigInt::one(), scale);
    (lo, hi)
}

/// Sign of `Σ c_i π^i` by interval evaluation with the typed-in π, if decided.
fn oracle_sign(c: &[BigInt]) -> Option<Sign> {
    let (plo, phi) = pi_bounds();
    let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
    let (mut pl, mut ph) = (Rational::one(), Rational::one());
    for ci in c {
        let q = Rational::from_integer(ci.clone());
        if ci.is_negative() {
            lo += &q * &ph;
            hi += &q * &pl;
        } else {
            lo += &q * &pl;
            hi += &q * &ph;
        }
        pl = &pl * &plo;
        ph = &ph * &phi;
    }
    if lo.is_positive() {
        Some(Sign::Positive)
    } else if hi.is_negative() {
        Some(Sign::Negative)
    } else if c.iter().all(|x| x.is_zero()) {
        Some(Sign::Zero)
    } else {
        None
    }
}

/// `scalar_sign` against the independent π oracle on values of π-degree ≤ 14
/// with integer coefficients of height ≤ 10⁶ and π-denominators up to π⁴.
pub fn sign_agreement(cases: u32) -> Result<(), String> {
    let value = (prop::collection::vec(-1_000_000i64..=1_000_000, 0..=15), 0u32..=4);
    outcome(runner(cases).run(&value, |(c, den)| {
        let ints: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        let Some(expected) = oracle_sign(&ints) else {
            return Err(TestCaseError::reject("oracle undecided"));
        };
        let v = NumericValue::new(PiScalar::new(c.iter().map(|&x| r(x, 1)).collect()), den);
        prop_assert_eq!(scalar_sign(&v).map_err(|e| TestCaseError::fail(e.to_string()))?, expected);
        Ok(())
    }))
}

fn segment(func: TrigFunc, n: u32) -> Poly {
    let dir = taylor::direction_of(func, n).expect("parity");
    taylor::bound(func, n, dir).expect("valid degree").poly
}

fn value(p: &Poly, t: &Rational) -> Rational {
    p.eval(&NumericValue::from_rational(t.clone())).as_rational().expect("rational segment")
}

/// Every segment of a class bounds its function from the documented side
/// (checked against alternating-series enclosures of sin and cos), lower
/// segments increase and upper segments decrease with the degree, and every
/// lower segment stays below every upper one. `points` per class.
pub fn taylor_interleaving(points: u32) -> Result<(), String> {
    let classes = [
        (TrigFunc::Sin, Direction::Upper),
        (TrigFunc::Sin, Direction::Lower),
        (TrigFunc::Cos, Direction::Upper),
        (TrigFunc::Cos, Direction::Lower),
    ];
    for (func, dir) in classes {
        let first = taylor::min_degree(func, dir);
        let degrees: Vec<u32> = (first..=24).step_by(4).collect();
        // The smallest validity radius of the class bounds the sample range.
        let radius_sq = (first + 3) * (first + 4);
        let t_max = (1..).take_while(|k: &u32| k * k <= radius_sq).last().unwrap_or(1).min(6);
        let strategy = (0i64..=1_000_000).prop_map(move |k| r(k * t_max as i64, 1_000_000));
        let degrees = degrees.clone();
        outcome(runner(points).run(&strategy, |t| {
            let exact = trig_enclosure(func, &t, 200);
            let vals: Vec<Rational> = degrees.iter().map(|&n| value(&segment(func, n), &t)).collect();
            for (n, v) in degrees.iter().zip(&vals) {
                match dir {
                    Direction::Lower => prop_assert!(*v <= exact.hi, "{func} degree {n} exceeds {func} at {t}"),
                    Direction::Upper => prop_assert!(*v >= exact.lo, "{func} degree {n} is below {func} at {t}"),
                }
            }
            for w in vals.windows(2) {
                match dir {
                    Direction::Lower => prop_assert!(w[0] <= w[1], "lower segments not increasing at {t}"),
                    Direction::Upper => prop_assert!(w[0] >= w[1], "upper segments not decreasing at {t}"),
                }
            }
            let other = match dir {
                Direction::Lower => Direction::Upper,
                Direction::Upper => Direction::Lower,
            };
            let m = taylor::min_degree(func, other);
            let opposite = value(&segment(func, m), &t);
            for v in &vals {
                match dir {
                    Direction::Lower => prop_assert!(*v <= opposite),
                    Direction::Upper => prop_assert!(*v >= opposite),
                }
            }
            Ok(())
        }))
        .map_err(|e| format!("{func} {dir}: {e}"))?;
    }
    Ok(())
}

/// A random polynomial of degree ≤ 8 with known distinct real roots: linear
/// factors with multiplicity 1 or 2, an optional `x² + c` factor, and a
/// leading coefficient that may involve π.
#[derive(Debug, Clone)]
pub struct KnownRoots {
    pub poly: Poly,
    pub roots: Vec<Rational>,
}

fn known_roots() -> impl Strategy<Value = KnownRoots> {
    let root = (-20i64..=20, 1i64..=5).prop_map(|(n, d)| r(n, d));
    (
        prop::collection::vec((root, 1u32..=2), 0..=4),
        prop::option::of(1i64..=9),
        (-5i64..=5).prop_filter("nonzero", |v| *v != 0),
        any::<bool>(),
    )
        .prop_filter_map("degree at most 8", |(factors, quad, lead, with_pi)| {
            let mut roots: Vec<Rational> = Vec::new();
            let mut p = Poly::constant(NumericValue::from_int(lead));
            if with_pi {
                p = &p * &Poly::constant(&NumericValue::one() + &NumericValue::pi());
            }
            for (root, m) in factors {
                if roots.contains(&root) {
                    continue;
                }
                let lin = &Poly::x() - &Poly::constant(NumericValue::from_rational(root.clone()));
                p = &p * &lin.pow(m);
                roots.push(root);
            }
            if let Some(c) = quad {
                p = &p * &(&Poly::x().pow(2) + &Poly::constant(NumericValue::from_int(c)));
            }
            roots.sort();
            (p.degree().unwrap_or(0) <= 8 && p.degree().unwrap_or(0) >= 1).then_some(KnownRoots { poly: p, roots })
        })
}

/// Sturm counts and isolation against polynomials with known roots.
/// Endpoints have denominator 77, so no root lands on them.
pub fn sturm_vs_oracle(cases: u32) -> Result<(), String> {
    let endpoints = (-1700i64..=1700, -1700i64..=1700).prop_filter("coprime to 77 and ordered", |(a, b)| {
        a < b && a % 7 != 0 && a % 11 != 0 && b % 7 != 0 && b % 11 != 0
    });
    outcome(runner(cases).run(&(known_roots(), endpoints), |(k, (a, b))| {
        let (a, b) = (r(a, 77), r(b, 77));
        let iv = IntervalSpec::open(NumericValue::from_rational(a.clone()), NumericValue::from_rational(b.clone()))
            .expect("ordered");
        let expected = k.roots.iter().filter(|x| **x > a && **x < b).count();
        let count = sturm_root_count(&k.poly, &iv, 1 << 16).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(count, expected, "count on ({}, {}) of {}", a, b, k.poly);
        let width = r(1, 1000);
        let isolated = isolate_real_roots(&k.poly, &width, 1 << 16).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(isolated.len(), k.roots.len());
        for (enc, x) in isolated.iter().zip(&k.roots) {
            prop_assert!(enc.lo < *x && *x <= enc.hi, "root {} outside [{}, {}]", x, enc.lo, enc.hi);
            prop_assert!(enc.width() <= width);
        }
        Ok(())
    }))
}

fn coefficient() -> impl Strategy<Value = NumericValue> {
    ((-50i64..=50).prop_filter("nonzero", |v| *v != 0), 1i64..=12, -2i32..=2)
        .prop_map(|(n, d, k)| NumericValue::from_rational(r(n, d)).mul_pi_pow(k))
}

pub fn mixed_poly() -> impl Strategy<Value = MixedTrigPoly> {
    prop::collection::vec((coefficient(), 0u32..=6, 0u32..=4, 0u32..=4), 1..=6).prop_map(MixedTrigPoly::from_terms)
}

/// Printing then parsing a mixed polynomial gives it back.
pub fn parser_round_trip(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&mixed_poly(), |f| {
        let text = f.to_string();
        let back = MixedTrigPoly::parse(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, f);
        Ok(())
    }))
}

/// Reflecting the multiple-angle form twice is the identity, and the
/// reflection agrees with substituting `π/2 − x` into the mixed polynomial.
pub fn reflection_involution(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&mixed_poly(), |f| {
        let m = f.to_multiple_angle();
        prop_assert_eq!(m.reflect().reflect(), m.clone());
        // cos(π/2 − x) = sin x and sin(π/2 − x) = cos x.
        let swapped = MixedTrigPoly::from_terms(f.terms().map(|(a, p, q, r)| (a.clone(), p, r, q)));
        let x_reflected = reflect_x_powers(&swapped);
        prop_assert_eq!(m.reflect(), x_reflected.to_multiple_angle());
        Ok(())
    }))
}

/// Replaces every `x^p` by `(π/2 − x)^p`.
fn reflect_x_powers(f: &MixedTrigPoly) -> MixedTrigPoly {
    let mut terms = Vec::new();
    let y = &Poly::constant(NumericValue::half_pi()) - &Poly::x();
    for (a, p, q, r) in f.terms() {
        for (i, c) in y.pow(p).coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push((a * c, i as u32, q, r));
            }
        }
    }
    MixedTrigPoly::from_terms(terms)
}
