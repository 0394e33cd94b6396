//! Rigorous enclosures of π from Machin's formula.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{RationalInterval, Rational};

/// Highest precision computed so far: `(n, floor(π·2^n))`.
static CACHE: RwLock<Option<(u32, BigInt)>> = RwLock::new(None);

/// `atan(1/m)·2^w` truncated term by term, with the number of terms used.
/// Each term is off by less than 2 units and the neglected tail is below one
/// unit, so the total error is below `2·terms + 1`.
fn atan_inv_scaled(m: u32, w: u32) -> (BigInt, u64) {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut power = (BigInt::one() << w as usize) / BigInt::from(m);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    (sum, k)
}

/// `floor(π·2^n)` computed from scratch.
fn machin_floor(n: u32) -> BigInt {
    let mut guard = 32u32;
    loop {
        let w = n + guard;
        let (a5, t5) = atan_inv_scaled(5, w);
        let (a239, t239) = atan_inv_scaled(239, w);
        let approx = a5 * 16 - a239 * 4;
        let err = BigInt::from(16 * (2 * t5 + 2) + 4 * (2 * t239 + 2));
        let lo = (&approx - &err) >> guard as usize;
        let hi = (&approx + &err) >> guard as usize;
        if lo == hi {
            return lo;
        }
        guard += 32;
    }
}

/// `floor(π·2^q)`, served from a shared cache of the best precision so far.
pub fn floor_pi_scaled(q: u32) -> BigInt {
    if let Some((n, f)) = CACHE.read().expect("pi cache poisoned").as_ref() {
        if *n >= q {
            return f >> (n - q) as usize;
        }
    }
    let target = q.max(256);
    let f = machin_floor(target);
    let mut guard = CACHE.write().expect("pi cache poisoned");
    match guard.as_ref() {
        Some((n, _)) if *n >= target => {}
        _ => *guard = Some((target, f.clone())),
    }
    f >> (target - q) as usize
}

/// `[F, F+1]/2^(p+1)` with `F = floor(π·2^(p+1))`: width `2^-(p+1)`, strictly
/// containing π, and nested as `p` grows.
pub fn pi_enclosure(precision_bits: u32) -> RationalInterval {
    let q = precision_bits + 1;
    let f = floor_pi_scaled(q);
    let den = BigInt::one() << q as usize;
    RationalInterval::new(
        Rational::new(f.clone(), den.clone()),
        Rational::new(f + 1u32, den),
    )
}
