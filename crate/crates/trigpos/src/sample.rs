//! Certified point evaluation of trigonometric expressions at rational
//! arguments, used for sampling checks. Not part of any certificate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::mixedtrig::{MixedTrigPoly, MultiAngleForm};
use crate::poly::{interval_add, interval_mul, round_down, round_up};
use crate::scalar::{enclose, Rational, RationalInterval, Sign};
use crate::taylor::TrigFunc;

/// `[lo, hi] ∋ sin(x)` or `cos(x)` of width about `2^-bits`, from the
/// alternating Taylor series once its terms decrease.
pub fn trig_enclosure(func: TrigFunc, x: &Rational, bits: u32) -> RationalInterval {
    let tol = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
    let x2 = x * x;
    let (mut term, mut k) = match func {
        TrigFunc::Sin => (x.clone(), 1u64),
        TrigFunc::Cos => (Rational::one(), 0u64),
    };
    let mut sum = Rational::zero();
    loop {
        sum += &term;
        let next = -(&term * &x2) / Rational::from_integer(BigInt::from((k + 1) * (k + 2)));
        k += 2;
        // Once |x| < k the terms decrease, so the tail is bounded by the next term.
        if Rational::from_integer(BigInt::from(k)) > x.abs() && next.abs() <= tol {
            let e = next.abs();
            return RationalInterval::new(
                round_down(&(&sum - &e), bits + 4),
                round_up(&(&sum + &e), bits + 4),
            );
        }
        term = next;
    }
}

fn pow_iv(a: &RationalInterval, e: u32) -> RationalInterval {
    (0..e).fold(RationalInterval::point(Rational::one()), |acc, _| interval_mul(&acc, a))
}

/// Enclosure of `f(x)`.
pub fn mixed_enclosure(f: &MixedTrigPoly, x: &Rational, bits: u32) -> RationalInterval {
    let s = trig_enclosure(TrigFunc::Sin, x, bits);
    let c = trig_enclosure(TrigFunc::Cos, x, bits);
    let xi = RationalInterval::point(x.clone());
    f.terms().fold(RationalInterval::point(Rational::zero()), |acc, (a, p, q, r)| {
        let t = interval_mul(
            &interval_mul(&enclose(a, bits + 8), &pow_iv(&xi, p)),
            &interval_mul(&pow_iv(&c, q), &pow_iv(&s, r)),
        );
        interval_add(&acc, &t)
    })
}

/// Enclosure of the multiple-angle form at `x`.
pub fn form_enclosure(m: &MultiAngleForm, x: &Rational, bits: u32) -> RationalInterval {
    let xi = RationalInterval::point(x.clone());
    let mut acc = m.poly_part.eval_interval(&xi, bits + 8);
    for t in &m.terms {
        let kx = x * Rational::from_integer(BigInt::from(t.k));
        let g = t.g.eval_interval(&xi, bits + 8);
        acc = interval_add(&acc, &interval_mul(&g, &trig_enclosure(t.func, &kx, bits + 8)));
    }
    acc
}

/// Sign of `f(x)` by refining enclosures, or `None` if it does not separate
/// from zero by `max_bits`.
pub fn certified_sign(
    mut enclosure: impl FnMut(u32) -> RationalInterval,
    max_bits: u32,
) -> Option<Sign> {
    let mut bits = 32;
    while bits <= max_bits {
        if let Some(s) = enclosure(bits).strict_sign() {
            return Some(s);
        }
        bits *= 2;
    }
    None
}

/// A rational point of `[lo, hi]` where `f` is certified negative or zero,
/// scanning `samples` evenly spaced interior points. `None` if every sampled
/// value is positive or undecided.
pub fn find_nonpositive_point(
    f: &MixedTrigPoly,
    lo: &Rational,
    hi: &Rational,
    samples: u32,
) -> Option<(Rational, Sign)> {
    let n = Rational::from_integer(BigInt::from(samples + 1));
    (1..=samples).find_map(|i| {
        let x = lo + (hi - lo) * Rational::from_integer(BigInt::from(i)) / &n;
        match certified_sign(|b| mixed_enclosure(f, &x, b), 1024) {
            Some(Sign::Positive) | None => None,
            Some(s) => Some((x, s)),
        }
    })
}
