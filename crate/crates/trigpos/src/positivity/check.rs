//! Independent replay of sign certificates: every side condition is
//! recomputed from the stored data, with no search.

use thiserror::Error;

use super::sturm::{self, SturmSequence};
use super::{chain_endpoint, endpoint_closes, Monotonicity, SignCertificate, Step};
use crate::scalar::{scalar_sign, NumericValue, ScalarError, Sign, DEFAULT_PRECISION_CEILING};

/// A rejected certificate: the path to the offending step and the reason.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {reason}")]
pub struct CheckFailure {
    pub path: String,
    pub reason: String,
}

type Check = Result<(), String>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn sign(v: &NumericValue) -> Result<Sign, String> {
    scalar_sign(v).map_err(|e: ScalarError| e.to_string())
}

pub fn check_sign_certificate(c: &SignCertificate) -> Result<(), CheckFailure> {
    check_at(c, "root")
}

fn check_at(c: &SignCertificate, path: &str) -> Result<(), CheckFailure> {
    check_local(c).map_err(|reason| CheckFailure {
        path: format!("{}/{}", path, c.step.name()),
        reason,
    })?;
    let here = format!("{}/{}", path, c.step.name());
    for child in c.children() {
        check_at(child, &here)?;
    }
    Ok(())
}

fn check_local(c: &SignCertificate) -> Check {
    let goal = &c.goal;
    let p = &goal.poly;
    let iv = &goal.interval;
    let claimed = goal.claimed;
    iv.validate().map_err(|e| e.to_string())?;
    ensure(claimed.is_strict(), || format!("claimed sign {} is not strict", claimed))?;
    ensure(!p.is_zero(), || "zero polynomial".into())?;
    match &c.step {
        Step::FactorOutX { m, quotient } => {
            ensure(*m >= 1, || "factor_out_x with m = 0".into())?;
            ensure(iv.is_positive().map_err(|e| e.to_string())?, || {
                format!("x is not positive on {}", iv)
            })?;
            ensure(quotient.goal.poly.shift(*m) == *p, || {
                format!("x^{} times the quotient does not reproduce {}", m, p)
            })?;
            ensure(quotient.goal.interval == *iv, || "quotient interval differs".into())?;
            ensure(quotient.goal.claimed == claimed, || "quotient sign differs".into())
        }
        Step::PeelFactor {
            factor,
            factor_certificate,
            quotient,
        } => {
            ensure(factor_certificate.goal.poly == *factor, || {
                "factor certificate is about a different polynomial".into()
            })?;
            ensure(factor_certificate.goal.interval == *iv && quotient.goal.interval == *iv, || {
                "sub-certificate interval differs".into()
            })?;
            ensure(factor * &quotient.goal.poly == *p, || {
                format!("factor times quotient does not reproduce {}", p)
            })?;
            let product = factor_certificate.goal.claimed.times(quotient.goal.claimed);
            ensure(product == claimed, || {
                format!("signs {} and {} multiply to {}, not {}", factor_certificate.goal.claimed, quotient.goal.claimed, product, claimed)
            })
        }
        Step::EvenSubstitute { substituted } => {
            ensure(sign(&iv.lo)? != Sign::Negative, || {
                "even substitution needs a nonnegative interval".into()
            })?;
            ensure(substituted.goal.poly.substitute_square() == *p, || {
                format!("q(x^2) does not reproduce {}", p)
            })?;
            ensure(substituted.goal.interval == iv.squared(), || {
                format!("substituted interval is not the square of {}", iv)
            })?;
            ensure(substituted.goal.claimed == claimed, || "substituted sign differs".into())
        }
        Step::SturmSeparation {
            root_count,
            witness,
            witness_sign,
        } => {
            ensure(*root_count == 0, || format!("recorded root count {} is not 0", root_count))?;
            check_witness(c, witness, *witness_sign)?;
            let (all, _) = sturm::count_closed(p, &iv.lo, &iv.hi, DEFAULT_PRECISION_CEILING)
                .map_err(|e| e.to_string())?;
            ensure(all == 0, || format!("{} has {} root(s) on the closed hull of {}", p, all, iv))
        }
        Step::DerivativeChain {
            derivative,
            monotonicity,
            endpoint,
            endpoint_open,
            endpoint_sign,
        } => {
            ensure(derivative.goal.poly == p.derivative(), || {
                "derivative certificate is not about the derivative".into()
            })?;
            ensure(derivative.goal.interval == *iv, || "derivative interval differs".into())?;
            let expected = match monotonicity {
                Monotonicity::Increasing => Sign::Positive,
                Monotonicity::Decreasing => Sign::Negative,
            };
            ensure(derivative.goal.claimed == expected, || {
                format!("derivative sign {} does not make the polynomial {}", derivative.goal.claimed, monotonicity)
            })?;
            let (e, open) = chain_endpoint(iv, *monotonicity, claimed);
            ensure(e == endpoint && open == *endpoint_open, || {
                format!("a {} {} claim is decided at {}, not {}", monotonicity, claimed, e, endpoint)
            })?;
            let actual = sign(&p.eval(endpoint))?;
            ensure(actual == *endpoint_sign, || {
                format!("value at {} is {}, recorded {}", endpoint, actual, endpoint_sign)
            })?;
            ensure(endpoint_closes(actual, open, claimed), || {
                format!("endpoint value {} does not settle the claim {}", actual, claimed)
            })
        }
        Step::RootFreePrefix {
            root_lo,
            root_hi,
            witness,
            witness_sign,
        } => {
            ensure(iv.lo.is_zero(), || "root-free prefix needs an interval starting at 0".into())?;
            ensure(!p.coeff(0).is_zero(), || "polynomial vanishes at 0".into())?;
            ensure(sign(root_lo)? == Sign::Positive, || "root enclosure must be positive".into())?;
            ensure(sign(&(root_hi - root_lo))? != Sign::Negative, || "root enclosure is reversed".into())?;
            ensure(sign(&(root_lo - &iv.hi))? != Sign::Negative, || {
                format!("interval end {} exceeds the root enclosure start {}", iv.hi, root_lo)
            })?;
            let seq = SturmSequence::new(p, DEFAULT_PRECISION_CEILING).map_err(|e| e.to_string())?;
            let zero = NumericValue::zero();
            let below = seq.count_between(&zero, root_lo).map_err(|e| e.to_string())?;
            ensure(below == 0, || format!("{} root(s) in (0, {}]", below, root_lo))?;
            let upto = seq.count_between(&zero, root_hi).map_err(|e| e.to_string())?;
            ensure(upto >= 1, || format!("no root in (0, {}]", root_hi))?;
            check_witness(c, witness, *witness_sign)
        }
    }
}

fn check_witness(c: &SignCertificate, witness: &NumericValue, witness_sign: Sign) -> Check {
    let iv = &c.goal.interval;
    ensure(iv.contains(witness).map_err(|e| e.to_string())?, || {
        format!("witness {} is outside {}", witness, iv)
    })?;
    let actual = sign(&c.goal.poly.eval(witness))?;
    ensure(actual == witness_sign, || {
        format!("value at witness {} is {}, recorded {}", witness, actual, witness_sign)
    })?;
    ensure(witness_sign == c.goal.claimed, || {
        format!("witness sign {} contradicts the claim {}", witness_sign, c.goal.claimed)
    })
}
