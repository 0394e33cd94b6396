//! Expression front end shared by constants, polynomials and mixed
//! trigonometric polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("-" | "+") unary | power
//! power := atom ("^" natural)?
//! atom  := integer | "pi" | "x" | ("sin" | "cos") "(" "x" ")" | "(" expr ")"
//! ```
//!
//! Rationals are written as integer division (`8/45`). Division is only
//! allowed by a constant monomial `c*pi^k`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::NumericValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: found {found}, expected {expected}")]
    Syntax {
        column: usize,
        found: String,
        expected: String,
    },
    #[error("unknown identifier `{name}` at column {column}")]
    UnknownIdentifier { column: usize, name: String },
    #[error("exponent at column {column} must be a natural number literal")]
    NonNaturalExponent { column: usize },
    #[error("argument of {func} at column {column} must be the bare variable x")]
    TrigArgument { column: usize, func: String },
    #[error("divisor at column {column} must be a constant of the form c*pi^k")]
    NonMonomialDivisor { column: usize },
    #[error("{what} at column {column} is not allowed here")]
    NotAllowed { column: usize, what: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{}`", n),
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Tokens with 1-based character columns.
fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => {
                return Err(ParseError::Syntax {
                    column: col,
                    found: "`.`".into(),
                    expected: "an integer or a fraction a/b (decimals are not exact)".into(),
                })
            }
            other => {
                return Err(ParseError::Syntax {
                    column: col,
                    found: format!("character `{}`", other),
                    expected: "a number, identifier, operator or parenthesis".into(),
                })
            }
        };
        out.push((t, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Parsed expression tree; every node keeps its source column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Pi,
    X(usize),
    Sin(usize),
    Cos(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            column: self.col(),
            found: self.peek().describe(),
            expected: expected.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let col = self.bump().1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        match self.bump().0 {
            Tok::Int(n) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| ParseError::NonNaturalExponent { column: col })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(ParseError::NonNaturalExponent { column: col }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.fail("`)` or an operator"));
                }
                self.bump();
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "pi" | "π" => Ok(Expr::Pi),
                    "x" => Ok(Expr::X(col)),
                    "sin" | "cos" => {
                        if *self.peek() != Tok::LParen {
                            return Err(self.fail("`(` after the function name"));
                        }
                        self.bump();
                        let arg_col = self.col();
                        let bare = matches!(self.peek(), Tok::Ident(s) if s == "x")
                            && self.toks[self.pos + 1].0 == Tok::RParen;
                        if !bare {
                            return Err(ParseError::TrigArgument {
                                column: arg_col,
                                func: name,
                            });
                        }
                        self.bump();
                        self.bump();
                        Ok(if name == "sin" {
                            Expr::Sin(col)
                        } else {
                            Expr::Cos(col)
                        })
                    }
                    _ => Err(ParseError::UnknownIdentifier { column: col, name }),
                }
            }
            _ => Err(self.fail("a number, `pi`, `x`, `sin(x)`, `cos(x)` or `(`")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.fail("an operator or end of input"));
    }
    Ok(e)
}

/// Target of expression evaluation.
pub trait Algebra: Sized + Clone {
    fn constant(v: NumericValue) -> Self;
    fn x(column: usize) -> Result<Self, ParseError>;
    fn sin(column: usize) -> Result<Self, ParseError>;
    fn cos(column: usize) -> Result<Self, ParseError>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The value as a constant, if it is one.
    fn as_constant(&self) -> Option<NumericValue>;
}

pub fn eval<A: Algebra>(e: &Expr) -> Result<A, ParseError> {
    Ok(match e {
        Expr::Int(n) => A::constant(NumericValue::from_rational(n.clone().into())),
        Expr::Pi => A::constant(NumericValue::pi()),
        Expr::X(c) => A::x(*c)?,
        Expr::Sin(c) => A::sin(*c)?,
        Expr::Cos(c) => A::cos(*c)?,
        Expr::Neg(a) => eval::<A>(a)?.neg(),
        Expr::Add(a, b) => eval::<A>(a)?.add(&eval::<A>(b)?),
        Expr::Sub(a, b) => eval::<A>(a)?.sub(&eval::<A>(b)?),
        Expr::Mul(a, b) => eval::<A>(a)?.mul(&eval::<A>(b)?),
        Expr::Div(a, b, col) => {
            let num = eval::<A>(a)?;
            let den = eval::<A>(b)?;
            let inv = den
                .as_constant()
                .and_then(|d| NumericValue::one().checked_div(&d))
                .ok_or(ParseError::NonMonomialDivisor { column: *col })?;
            num.mul(&A::constant(inv))
        }
        Expr::Pow(a, k) => {
            let base = eval::<A>(a)?;
            let mut acc = A::constant(NumericValue::one());
            for _ in 0..*k {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

impl Algebra for NumericValue {
    fn constant(v: NumericValue) -> Self {
        v
    }
    fn x(column: usize) -> Result<Self, ParseError> {
        Err(ParseError::NotAllowed {
            column,
            what: "variable x in a constant".into(),
        })
    }
    fn sin(column: usize) -> Result<Self, ParseError> {
        Err(ParseError::NotAllowed {
            column,
            what: "sin(x) in a constant".into(),
        })
    }
    fn cos(column: usize) -> Result<Self, ParseError> {
        Err(ParseError::NotAllowed {
            column,
            what: "cos(x) in a constant".into(),
        })
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_constant(&self) -> Option<NumericValue> {
        Some(self.clone())
    }
}

/// Parse a constant such as `pi/2 - 157/100`.
pub fn parse_constant(text: &str) -> Result<NumericValue, ParseError> {
    eval(&parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let v = parse_constant("(480*pi^6 - 40320*pi^4 + 3628800)/pi^8").unwrap();
        assert_eq!(v.pi_den(), 8);
        assert_eq!(parse_constant("pi/2").unwrap(), NumericValue::half_pi());
        assert_eq!(
            parse_constant("-3/4/pi^2").unwrap(),
            NumericValue::pi_pow(-2).scale(&NumericValue::from_ratio(-3, 4).as_rational().unwrap())
        );
        assert_eq!(parse_constant("2^10").unwrap(), NumericValue::from_int(1024));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_constant("1 + tan"),
            Err(ParseError::UnknownIdentifier {
                column: 5,
                name: "tan".into()
            })
        );
        assert_eq!(
            parse_constant("pi^x"),
            Err(ParseError::NonNaturalExponent { column: 4 })
        );
        assert_eq!(
            parse_constant("1/(pi+1)"),
            Err(ParseError::NonMonomialDivisor { column: 2 })
        );
        assert!(matches!(
            parse_constant("(1 + 2"),
            Err(ParseError::Syntax { column: 7, .. })
        ));
        assert!(matches!(parse_constant("1/0"), Err(ParseError::NonMonomialDivisor { .. })));
        assert!(matches!(parse_constant("x"), Err(ParseError::NotAllowed { .. })));
        assert!(matches!(parse_constant("1.5"), Err(ParseError::Syntax { column: 2, .. })));
    }
}
