//! A catalog of certificate mutations, each of which the checker must reject.

use trigpos::mixedtrig::MixedTrigPoly;
use trigpos::positivity::Step;
use trigpos::prover::{check_certificate, CheckReport, Clearing};
use trigpos::{NumericValue, Poly, ProofCertificate};

pub type Mutation = (&'static str, fn(&mut ProofCertificate));

fn bump_coefficient(p: &mut Poly) {
    let mut c = p.coeffs().to_vec();
    c[0] = &c[0] + &NumericValue::one();
    *p = Poly::new(c);
}

pub const MUTATIONS: [Mutation; 10] = [
    ("reduced polynomial coefficient + 1", |c| bump_coefficient(&mut c.left.reduction.result)),
    ("Taylor degree raised by 4", |c| c.left.reduction.terms[0].degree += 4),
    ("coefficient sign flipped", |c| {
        let t = &mut c.left.reduction.terms[0];
        t.g_sign = t.g_sign.negate();
    }),
    ("split point moved", |c| {
        let s = c.split.as_mut().expect("split");
        s.point = &s.point - &NumericValue::from_ratio(1, 100);
        c.config.split_hint = Some(s.point.clone());
    }),
    ("goal expression edited", |c| {
        let terms: Vec<_> = c.goal.f.terms().map(|(a, p, q, r)| (a.clone(), p, q, r)).collect();
        c.goal.f = MixedTrigPoly::from_terms(terms.into_iter().chain([(NumericValue::one(), 0, 0, 0)]));
    }),
    ("goal interval widened", |c| c.goal.interval.lo = NumericValue::from_ratio(-1, 10)),
    ("right piece dropped", |c| c.right = None),
    ("sign certificates swapped between pieces", |c| {
        let right = c.right.as_mut().expect("right piece");
        std::mem::swap(&mut c.left.sign, &mut right.sign);
    }),
    ("clearing factor with a negative term", |c| {
        c.goal.clearing = Some(Clearing {
            note: "edited".into(),
            factor: MixedTrigPoly::parse("x - x^2").expect("valid"),
        })
    }),
    ("Sturm witness sign flipped", |c| flip_witness(&mut c.left.sign)),
];

fn flip_witness(cert: &mut trigpos::SignCertificate) {
    match &mut cert.step {
        Step::SturmSeparation { witness_sign, .. } | Step::RootFreePrefix { witness_sign, .. } => {
            *witness_sign = witness_sign.negate();
        }
        Step::DerivativeChain { endpoint_sign, .. } => *endpoint_sign = endpoint_sign.negate(),
        Step::FactorOutX { quotient, .. } => flip_witness(quotient),
        Step::PeelFactor { quotient, .. } => flip_witness(quotient),
        Step::EvenSubstitute { substituted } => flip_witness(substituted),
    }
}

/// Applies every mutation to `cert` and returns, per mutation, the report
/// of the checker. `cert` itself must check.
pub fn run_catalog(cert: &ProofCertificate) -> Vec<(&'static str, CheckReport)> {
    assert!(check_certificate(cert).passed(), "the unmutated certificate must check");
    MUTATIONS
        .iter()
        .map(|(name, mutate)| {
            let mut c = cert.clone();
            mutate(&mut c);
            assert_ne!(&c, cert, "mutation `{name}` changed nothing");
            (*name, check_certificate(&c))
        })
        .collect()
}
