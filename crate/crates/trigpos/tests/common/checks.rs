//! Reproduction checks shared by the fixture tests and the acceptance
//! report. Each returns a one-line description on success.

use num_bigint::BigInt;

use trigpos::expr::parse_constant;
use trigpos::positivity::{isolate_first_positive_root, isolate_real_roots};
use trigpos::prover::fixture;
use trigpos::scalar::{interval_decimal_prefix, scalar_to_decimal, DEFAULT_PRECISION_CEILING};
use trigpos::{NumericValue, Poly, Rational};

use super::{entry, integer_normalized, r, reduce_piece, reduce_piece_with, strip_x};

/// Isolation width for the root checks.
pub fn root_width() -> Rational {
    r(1, 10_000_000)
}

pub fn wilker_constant_prefix() -> Result<String, String> {
    let a = parse_constant("(480*pi^6 - 40320*pi^4 + 3628800)/pi^8").map_err(|e| e.to_string())?;
    let d = scalar_to_decimal(&a, 12).map_err(|e| e.to_string())?;
    if d.digits().starts_with("17.15041") {
        Ok(format!("{} has prefix 17.15041", d))
    } else {
        Err(format!("{} lacks prefix 17.15041", d))
    }
}

/// Reduction of one piece of a corpus entry with the entry's own split and
/// degree hints.
pub fn hinted_reduction(name: &str, right: bool) -> Result<Poly, String> {
    let e = entry(name);
    let split = e.config.split_hint.clone().ok_or("entry has no split hint")?;
    let degrees = if right { &e.config.right_degrees } else { &e.config.left_degrees };
    let degrees = degrees.clone().ok_or("entry has no degree hint")?;
    reduce_piece_with(name, right, &split, &degrees).map(|t| t.result)
}

/// The hinted reduction of a piece equals the stored fixture exactly.
pub fn fixture_matches(name: &str, right: bool) -> Result<String, String> {
    let key = format!("{}.{}", name, if right { "right" } else { "left" });
    let want = fixture(&key).ok_or(format!("no fixture {key}"))?;
    let got = hinted_reduction(name, right)?;
    if got == want {
        Ok(format!("{key}: degree {} reduction matches coefficient for coefficient", got.degree().unwrap_or(0)))
    } else {
        Err(format!("{key}: reduction differs from the fixture\n  got  {got}\n  want {want}"))
    }
}

/// The left reduction of the lower Wilker-type bound on (0, 157/100] is
/// `−16/9280784638125 · x^10 · Q(x)` with the listed integer coefficients.
pub fn twentieth_degree_coefficients() -> Result<String, String> {
    let got = hinted_reduction("thm2.1-left", false)?;
    let ints = [-5237832600i64, 0, 3412527300, 0, -665557650, 0, 69322260, 0, -5203625, 0, 262144];
    let q = Poly::new(ints.iter().map(|&c| NumericValue::from_int(c)).collect());
    let scale = NumericValue::from_rational(Rational::new(BigInt::from(-16), "9280784638125".parse().unwrap()));
    let want = &Poly::monomial(scale, 10) * &q;
    if got == want {
        Ok("scalar −16/9280784638125 and integer coefficients 262144 … 5237832600 reproduced".into())
    } else {
        Err(format!("got {got}"))
    }
}

/// The printed twelfth-degree reduction for the upper bound with 16/π⁴ + d(x)
/// against the reduction with the printed degrees.
pub fn printed_twelfth_degree() -> Result<String, String> {
    let want = fixture("printed-q12").ok_or("no printed-q12 fixture")?;
    let split = NumericValue::from_ratio(143, 100);
    match reduce_piece("thm2.2-right", false, &split, "cos:4=10,cos:2=10,sin:2=1") {
        Ok(t) if t.result == want => Ok("printed reduction reproduced".into()),
        Ok(t) => Err(format!("the printed degrees give {} instead", t.result)),
        Err(e) => Err(format!("the printed degrees do not reduce: {e}")),
    }
}

fn prefix_of_first_root(p: &Poly, search_hi: i64) -> Result<String, String> {
    let enc = isolate_first_positive_root(p, &NumericValue::from_int(search_hi), &root_width(), DEFAULT_PRECISION_CEILING)
        .map_err(|e| e.to_string())?
        .ok_or("no positive root")?;
    interval_decimal_prefix(&enc, 30).ok_or("enclosure straddles zero".into())
}

fn expect_prefix(label: &str, got: String, want: &str) -> Result<String, String> {
    if got.starts_with(want) {
        Ok(format!("{label}: {got}… has prefix {want}"))
    } else {
        Err(format!("{label}: {got}… lacks prefix {want}"))
    }
}

/// First positive root checks: `(label, polynomial source, expected prefix)`.
pub fn root_prefix(label: &str) -> Result<String, String> {
    let (p, want) = match label {
        "a1" => (strip_x(&hinted_reduction("thm2.1-left", false)?).even_decimate().map_err(|e| e.to_string())?, "2.464993"),
        "x*" => (strip_x(&hinted_reduction("thm2.1-left", false)?), "1.570029"),
        "b" => (strip_x(&hinted_reduction("thm2.1-right", false)?).even_decimate().map_err(|e| e.to_string())?, "2.358"),
        "sqrt b" => (strip_x(&hinted_reduction("thm2.1-right", false)?), "1.53579"),
        "Q7" => (strip_x(&hinted_reduction("thm2.2-left", false)?), "0.98609"),
        "Q12" => (strip_x(&fixture("printed-q12").ok_or("no printed-q12 fixture")?), "1.43649"),
        other => return Err(format!("unknown root label {other}")),
    };
    let got = prefix_of_first_root(&p, 10)?;
    expect_prefix(label, got, want)
}

pub const ROOT_LABELS: [&str; 6] = ["a1", "x*", "b", "sqrt b", "Q7", "Q12"];

/// All real roots of `8s³ − 168s² + 945`.
pub fn cubic_roots() -> Result<String, String> {
    let p = Poly::parse_any("8*x^3 - 168*x^2 + 945").map_err(|e| e.to_string())?;
    let roots = isolate_real_roots(&p, &root_width(), DEFAULT_PRECISION_CEILING).map_err(|e| e.to_string())?;
    let got: Vec<String> = roots.iter().filter_map(|iv| interval_decimal_prefix(iv, 30)).collect();
    let want = ["-2.253", "2.528", "20.724"];
    let ok = got.len() == 3 && got.iter().zip(want).all(|(g, w)| g.starts_with(w));
    let line = format!("roots {}", got.join(", "));
    if ok {
        Ok(line)
    } else {
        Err(line)
    }
}

/// Leading coefficient of the derivative of the quintic in `t = x²`.
pub fn quintic_derivative_leading() -> Result<String, String> {
    let q5 = strip_x(&hinted_reduction("thm2.1-left", false)?).even_decimate().map_err(|e| e.to_string())?;
    let ints = integer_normalized(&q5);
    let q5 = Poly::new(ints.iter().map(|c| NumericValue::from_rational(Rational::from_integer(c.clone()))).collect());
    let d = q5.derivative();
    let lead = d.leading().ok_or("zero derivative")?.clone();
    if ints.last() == Some(&BigInt::from(262144)) && lead == NumericValue::from_int(1310720) {
        Ok("leading coefficient 5·262144 = 1310720".into())
    } else {
        Err(format!("leading coefficient {lead} (quintic leads with {:?})", ints.last()))
    }
}
