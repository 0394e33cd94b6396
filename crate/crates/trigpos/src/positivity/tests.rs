use super::*;

fn p(s: &str) -> Poly {
    Poly::parse_any(s).unwrap()
}

fn v(s: &str) -> NumericValue {
    s.parse().unwrap()
}

fn iv(lo: &str, hi: &str, lo_open: bool, hi_open: bool) -> IntervalSpec {
    IntervalSpec::new(v(lo), v(hi), lo_open, hi_open).unwrap()
}

#[test]
fn interval_basics() {
    let i = iv("0", "157/100", true, false);
    assert_eq!(i.to_string(), "(0, 157/100]");
    assert!(!i.contains(&v("0")).unwrap());
    assert!(i.contains(&v("157/100")).unwrap());
    assert!(i.contains(&v("1")).unwrap());
    assert!(IntervalSpec::new(v("1"), v("1"), false, false).is_err());
    assert!(IntervalSpec::new(v("pi/2"), v("157/100"), false, false).is_err());
    let w = nv(&i.interior_point());
    assert!(i.contains(&w).unwrap());
}

#[test]
fn root_counts() {
    let s = Strategy::default().precision_ceiling;
    assert_eq!(sturm_root_count(&p("x^2 - 1"), &iv("0", "2", true, true), s).unwrap(), 1);
    assert!(matches!(
        sturm_root_count(&p("x^2 - 1"), &iv("0", "1", true, true), s),
        Err(PositivityError::EndpointRoot(_))
    ));
}

#[test]
fn simple_proofs_replay() {
    let st = Strategy::default();
    let c = prove_sign(&p("x^2 + 1"), &iv("0", "1", true, true), Sign::Positive, &st).unwrap();
    check_sign_certificate(&c).unwrap();
    let c = prove_sign(&p("x^3 - x^2"), &iv("0", "1", true, true), Sign::Negative, &st).unwrap();
    assert_eq!(c.step.name(), "factor_out_x");
    check_sign_certificate(&c).unwrap();
    // Root at the open right end: only a derivative chain works.
    let c = prove_sign(&p("1 - x"), &iv("0", "1", false, true), Sign::Positive, &st).unwrap();
    assert_eq!(c.step.name(), "derivative_chain");
    check_sign_certificate(&c).unwrap();
    let c = prove_sign(&p("(pi - 2*x)*(x + 3)"), &iv("0", "pi/2", true, true), Sign::Positive, &st)
        .unwrap();
    assert_eq!(c.step.name(), "peel_factor");
    check_sign_certificate(&c).unwrap();
}

#[test]
fn failures_are_truthful() {
    let st = Strategy::default();
    assert!(prove_sign(&Poly::zero(), &iv("0", "1", true, true), Sign::Positive, &st).is_err());
    assert!(prove_sign(&p("x - 1/2"), &iv("0", "1", true, true), Sign::Positive, &st).is_err());
    assert!(prove_sign(&p("(x - 1/2)^2"), &iv("0", "1", true, true), Sign::Positive, &st).is_err());
    assert!(prove_sign(&p("1 - x"), &iv("0", "1", false, false), Sign::Positive, &st).is_err());
}

#[test]
fn derivative_chain_of_shifted_square() {
    let st = Strategy::default();
    let c = derivative_chain(&p("x^2 + 1"), &iv("0", "1", true, true), 3, &st).unwrap();
    match &c.step {
        Step::DerivativeChain {
            monotonicity,
            endpoint,
            endpoint_sign,
            ..
        } => {
            assert_eq!(*monotonicity, Monotonicity::Increasing);
            assert_eq!(*endpoint, v("0"));
            assert_eq!(*endpoint_sign, Sign::Positive);
        }
        other => panic!("unexpected step {:?}", other),
    }
    check_sign_certificate(&c).unwrap();
}

#[test]
fn root_free_prefix_certificates() {
    let st = Strategy {
        root_free_prefix: true,
        ..Strategy::default()
    };
    let c = prove_sign(&p("2 - x"), &iv("0", "3/2", true, false), Sign::Positive, &st).unwrap();
    assert_eq!(c.step.name(), "root_free_prefix");
    check_sign_certificate(&c).unwrap();
}

#[test]
fn constant_factors_scale_signs() {
    let st = Strategy::default();
    let i = iv("0", "1", true, true);
    let c = prove_sign(&p("-3/pi*(x^2 + 1)"), &i, Sign::Negative, &st).unwrap();
    match &c.step {
        Step::PeelFactor {
            factor_certificate, ..
        } => assert_eq!(factor_certificate.goal.claimed, Sign::Negative),
        other => panic!("unexpected step {:?}", other),
    }
    check_sign_certificate(&c).unwrap();
    assert!(prove_sign(&p("-3/pi*(x^2 + 1)"), &i, Sign::Positive, &st).is_err());
}
