//! Polynomials in x with coefficients in ℤ[π], the working ring of the
//! Sturm machinery. Keeping coefficients integral lets the remainder
//! sequence use exact division instead of rational arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::poly::Poly;
use crate::scalar::{int_pi_poly_sign, NumericValue, ScalarError, Sign};

/// Element of ℤ[π]; index = power of π; trailing zeros trimmed.
pub type ZPi = Vec<BigInt>;

/// Polynomial in x over ℤ[π]; leading coefficient nonzero.
pub type ZPoly = Vec<ZPi>;

pub fn trim(mut a: ZPi) -> ZPi {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn trim_poly(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

pub fn add(a: &ZPi, b: &ZPi) -> ZPi {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                let y = b.get(i).cloned().unwrap_or_default();
                x + y
            })
            .collect(),
    )
}

pub fn neg(a: &ZPi) -> ZPi {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &ZPi, b: &ZPi) -> ZPi {
    add(a, &neg(b))
}

pub fn mul(a: &ZPi, b: &ZPi) -> ZPi {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &ZPi, e: usize) -> ZPi {
    let mut acc = vec![BigInt::from(1)];
    for _ in 0..e {
        acc = mul(&acc, a);
    }
    acc
}

/// Exact quotient `a / b` in ℤ[π]; `None` if the division is not exact.
pub fn div_exact(a: &ZPi, b: &ZPi) -> Option<ZPi> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        if !(top % lb).is_zero() {
            return None;
        }
        let c = top / lb;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

pub fn sign(a: &ZPi, ceiling: u32) -> Result<Sign, ScalarError> {
    int_pi_poly_sign(a, ceiling)
}

pub fn scale(p: &ZPoly, c: &ZPi) -> ZPoly {
    trim_poly(p.iter().map(|a| mul(a, c)).collect())
}

pub fn poly_sub(p: &ZPoly, q: &ZPoly) -> ZPoly {
    let n = p.len().max(q.len());
    let empty = Vec::new();
    trim_poly(
        (0..n)
            .map(|i| sub(p.get(i).unwrap_or(&empty), q.get(i).unwrap_or(&empty)))
            .collect(),
    )
}

pub fn derivative(p: &ZPoly) -> ZPoly {
    trim_poly(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.iter().map(|x| x * BigInt::from(i)).collect())
            .collect(),
    )
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`.
pub fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = a.clone();
    if r.len() < b.len() {
        return r;
    }
    let mut e = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() > n {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let mut next: ZPoly = r.iter().map(|c| mul(c, lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            let k = dr - n + j;
            next[k] = sub(&next[k], &mul(&lr, bj));
        }
        r = trim_poly(next);
        e -= 1;
    }
    let f = pow(lb, e);
    scale(&r, &f)
}

/// Integral form of `p`: a positive multiple `L·π^D·p` with coefficients in ℤ[π].
pub fn from_poly(p: &Poly) -> ZPoly {
    let (ints, _, _) = p.to_integer_pi();
    trim_poly(ints.into_iter().map(trim).collect())
}

/// A point `M(π) / (L·π^k)` in homogeneous form `(M, L·π^k)`.
pub fn point(v: &NumericValue) -> (ZPi, ZPi) {
    let (m, l) = v.num().to_integer_coeffs();
    let mut den = vec![BigInt::zero(); v.pi_den() as usize + 1];
    den[v.pi_den() as usize] = l;
    (trim(m), den)
}

/// Sign of `p` at the point `num/den` (with `den > 0`).
pub fn sign_at(p: &ZPoly, at: &(ZPi, ZPi), ceiling: u32) -> Result<Sign, ScalarError> {
    if p.is_empty() {
        return Ok(Sign::Zero);
    }
    let (num, den) = at;
    let n = p.len() - 1;
    let mut den_pow = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let next = mul(&den_pow[i - 1], den);
        den_pow.push(next);
    }
    let mut acc = p[n].clone();
    for i in (0..n).rev() {
        acc = add(&mul(&acc, num), &mul(&p[i], &den_pow[n - i]));
    }
    sign(&acc, ceiling)
}

pub fn is_positive_int(a: &BigInt) -> bool {
    a.is_positive()
}
