//! Sturm sequences over ℤ[π] and root isolation by bisection.
//!
//! The sequence comes from the subresultant remainder sequence of `(P, P')`,
//! with signs adjusted so that each member is a negative multiple of the
//! previous remainder. Its last member is a multiple of `gcd(P, P')`, so the
//! variation count gives distinct roots without first taking the
//! square-free part.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::zpi::{self, ZPi, ZPoly};
use super::PositivityError;
use crate::poly::Poly;
use crate::scalar::{enclose, NumericValue, Rational, RationalInterval, ScalarError, Sign};

#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<ZPoly>,
    ceiling: u32,
}

fn sign_int(a: &ZPi, ceiling: u32) -> Result<i32, ScalarError> {
    Ok(match zpi::sign(a, ceiling)? {
        Sign::Positive => 1,
        Sign::Negative => -1,
        Sign::Zero => 0,
    })
}

fn ipow(s: i32, e: usize) -> i32 {
    if s < 0 && e % 2 == 1 {
        -1
    } else if s == 0 && e > 0 {
        0
    } else {
        1
    }
}

impl SturmSequence {
    pub fn new(p: &Poly, ceiling: u32) -> Result<Self, PositivityError> {
        if p.is_zero() {
            return Err(PositivityError::ZeroPolynomial);
        }
        let r0 = zpi::from_poly(p);
        let r1 = zpi::derivative(&r0);
        let mut seq = vec![r0];
        if r1.is_empty() {
            return Ok(SturmSequence { seq, ceiling });
        }
        let mut prev = seq[0].clone();
        let mut cur = r1;
        let mut eps_prev = 1i32;
        let mut eps_cur = 1i32;
        seq.push(cur.clone());
        let mut delta = prev.len() - cur.len();
        let mut beta: ZPi = if (delta + 1) % 2 == 0 {
            vec![BigInt::one()]
        } else {
            vec![-BigInt::one()]
        };
        let mut psi: ZPi = vec![-BigInt::one()];
        loop {
            let rem = zpi::prem(&prev, &cur);
            if rem.is_empty() {
                break;
            }
            let next: ZPoly = rem
                .iter()
                .map(|c| zpi::div_exact(c, &beta).expect("subresultant division is exact"))
                .collect();
            let lc_sign = sign_int(cur.last().expect("nonzero"), ceiling)?;
            let beta_sign = sign_int(&beta, ceiling)?;
            let eps_next = -ipow(lc_sign, delta + 1) * beta_sign * eps_prev;
            let next = zpi::trim_poly(next);
            seq.push(if eps_next > 0 {
                next.clone()
            } else {
                next.iter().map(zpi::neg).collect()
            });
            // Advance the subresultant parameters.
            let lc_cur = cur.last().expect("nonzero").clone();
            let new_delta = cur.len() - next.len();
            let neg_lc = zpi::neg(&lc_cur);
            let num = zpi::pow(&neg_lc, delta);
            let den = zpi::pow(&psi, delta.saturating_sub(1));
            psi = zpi::div_exact(&num, &den).expect("subresultant division is exact");
            beta = zpi::mul(&neg_lc, &zpi::pow(&psi, new_delta));
            delta = new_delta;
            eps_prev = eps_cur;
            eps_cur = eps_next;
            prev = cur;
            cur = next;
        }
        Ok(SturmSequence { seq, ceiling })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn count_changes(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = None;
        let mut n = 0;
        for s in signs.filter(|s| *s != Sign::Zero) {
            if last.is_some_and(|l| l != s) {
                n += 1;
            }
            last = Some(s);
        }
        n
    }

    /// Sign of the first member `P` at `at`.
    pub fn sign_at(&self, at: &NumericValue) -> Result<Sign, ScalarError> {
        zpi::sign_at(&self.seq[0], &zpi::point(at), self.ceiling)
    }

    pub fn variations(&self, at: &NumericValue) -> Result<usize, ScalarError> {
        let pt = zpi::point(at);
        let signs = self
            .seq
            .iter()
            .map(|s| zpi::sign_at(s, &pt, self.ceiling))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::count_changes(signs.into_iter()))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> Result<usize, ScalarError> {
        let signs = self
            .seq
            .iter()
            .map(|s| {
                let lc = zpi::sign(s.last().expect("nonzero"), self.ceiling)?;
                Ok(if !positive && s.len() % 2 == 0 { lc.negate() } else { lc })
            })
            .collect::<Result<Vec<_>, ScalarError>>()?;
        Ok(Self::count_changes(signs.into_iter()))
    }

    /// Distinct roots in `(a, b]`; `a` must not be a root.
    pub fn count_between(&self, a: &NumericValue, b: &NumericValue) -> Result<usize, ScalarError> {
        let va = self.variations(a)?;
        let vb = self.variations(b)?;
        Ok(va.saturating_sub(vb))
    }

    pub fn count_real(&self) -> Result<usize, ScalarError> {
        Ok(self
            .variations_at_infinity(false)?
            .saturating_sub(self.variations_at_infinity(true)?))
    }
}

fn nv(q: &Rational) -> NumericValue {
    NumericValue::from_rational(q.clone())
}

/// Roots of `p` in the closed interval `[lo, hi]`, distinct, counting roots
/// at the endpoints. Endpoint roots are divided out before the Sturm count.
pub fn count_closed(
    p: &Poly,
    lo: &NumericValue,
    hi: &NumericValue,
    ceiling: u32,
) -> Result<(usize, usize), PositivityError> {
    let (q, at_ends) = deflate_endpoints(p, &[lo, hi])?;
    let inner = SturmSequence::new(&q, ceiling)?.count_between(lo, hi)?;
    // count_between includes hi, which is not a root of q.
    Ok((inner + at_ends, inner))
}

/// Divides out every factor `(x − e)` for the given points; returns the
/// quotient and how many of the points were roots.
pub fn deflate_endpoints(p: &Poly, points: &[&NumericValue]) -> Result<(Poly, usize), PositivityError> {
    let mut q = p.clone();
    let mut hits = 0;
    for e in points {
        if q.eval(e).is_zero() {
            hits += 1;
            let lin = &Poly::x() - &Poly::constant((*e).clone());
            while !q.is_zero() && q.eval(e).is_zero() {
                q = q.div_exact(&lin)?;
            }
        }
    }
    Ok((q, hits))
}

/// A rational strictly between `lo` and `hi` where `p` does not vanish,
/// preferring the midpoint.
fn split_point(seq: &SturmSequence, lo: &Rational, hi: &Rational) -> Result<Rational, ScalarError> {
    let w = hi - lo;
    for (n, d) in [(1, 2), (3, 7), (4, 7), (2, 5), (3, 5), (5, 11), (6, 11), (7, 17), (10, 17)] {
        let m = lo + &w * Rational::new(BigInt::from(n), BigInt::from(d));
        if seq.sign_at(&nv(&m))? != Sign::Zero {
            return Ok(m);
        }
    }
    let mut k = 13i64;
    loop {
        let m = lo + &w * Rational::new(BigInt::from(k / 2), BigInt::from(k));
        if seq.sign_at(&nv(&m))? != Sign::Zero {
            return Ok(m);
        }
        k += 2;
    }
}

/// Enclosure `[l, u]` of the smallest positive root of `p` up to
/// `search_hi`: no root in `(0, l]`, at least one in `(0, u]`, and
/// `u − l ≤ width`. `None` when `(0, search_hi]` holds no root.
pub fn isolate_first_positive_root(
    p: &Poly,
    search_hi: &NumericValue,
    width: &Rational,
    ceiling: u32,
) -> Result<Option<RationalInterval>, PositivityError> {
    if p.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    let (_, q) = p.factor_out_x()?;
    let seq = SturmSequence::new(&q, ceiling)?;
    let zero = NumericValue::zero();
    if seq.count_between(&zero, search_hi)? == 0 {
        return Ok(None);
    }
    let mut lo = Rational::zero();
    let mut hi = match search_hi.as_rational() {
        Some(h) => h,
        None => enclose(search_hi, 64).hi,
    };
    while &hi - &lo > *width {
        let m = split_point(&seq, &lo, &hi)?;
        if seq.count_between(&zero, &nv(&m))? == 0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(Some(RationalInterval::new(lo, hi)))
}

/// Enclosure `[l, u]` of the smallest root of `p` in `(lo, hi]`: no root in
/// `(lo, l]`, at least one in `(lo, u]`, and `u − l ≤ width`. A root at `lo`
/// itself is ignored. `None` when `(lo, hi]` holds no root.
pub fn isolate_first_root_above(
    p: &Poly,
    lo: &NumericValue,
    hi: &NumericValue,
    width: &Rational,
    ceiling: u32,
) -> Result<Option<RationalInterval>, PositivityError> {
    if p.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    let (q, _) = deflate_endpoints(p, &[lo])?;
    let seq = SturmSequence::new(&q, ceiling)?;
    if seq.count_between(lo, hi)? == 0 {
        return Ok(None);
    }
    let mut l = match lo.as_rational() {
        Some(r) => r,
        None => enclose(lo, 64).lo,
    };
    let mut u = match hi.as_rational() {
        Some(r) => r,
        None => enclose(hi, 64).hi,
    };
    while &u - &l > *width {
        let m = split_point(&seq, &l, &u)?;
        let mv = nv(&m);
        if mv.cmp_value(lo)? != std::cmp::Ordering::Greater || seq.count_between(lo, &mv)? == 0 {
            l = m;
        } else {
            u = m;
        }
    }
    Ok(Some(RationalInterval::new(l, u)))
}

/// A rational bound strictly above the modulus of every root.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let n = p.degree().expect("nonzero polynomial");
    let lead = p.coeff(n);
    let mut bits = 64;
    let lead_abs_lo = loop {
        let e = enclose(&lead, bits);
        if e.lo.is_positive() {
            break e.lo;
        }
        if e.hi.is_negative() {
            break -e.hi;
        }
        bits *= 2;
    };
    let mut max = Rational::zero();
    for i in 0..n {
        let e = enclose(&p.coeff(i), 64);
        let a = e.lo.abs().max(e.hi.abs());
        if a > max {
            max = a;
        }
    }
    (Rational::one() + max / lead_abs_lo).ceil()
}

/// Enclosures of all distinct real roots in increasing order: each `[l, u]`
/// holds exactly one root, lying in `(l, u]`, with `u − l ≤ width`.
pub fn isolate_real_roots(
    p: &Poly,
    width: &Rational,
    ceiling: u32,
) -> Result<Vec<RationalInterval>, PositivityError> {
    if p.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let seq = SturmSequence::new(p, ceiling)?;
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b, None::<usize>)];
    while let Some((lo, hi, known)) = stack.pop() {
        let c = match known {
            Some(c) => c,
            None => seq.count_between(&nv(&lo), &nv(&hi))?,
        };
        if c == 0 {
            continue;
        }
        if c == 1 && &hi - &lo <= *width {
            out.push(RationalInterval::new(lo, hi));
            continue;
        }
        let m = split_point(&seq, &lo, &hi)?;
        let left = seq.count_between(&nv(&lo), &nv(&m))?;
        // Push the right half first so roots come out in increasing order.
        stack.push((m.clone(), hi, Some(c - left)));
        stack.push((lo, m, Some(left)));
    }
    Ok(out)
}
