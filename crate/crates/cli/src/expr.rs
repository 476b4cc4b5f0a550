//! Expressions over `ℚ(t)[x, y]`: integer literals, `+ - * / ^` and
//! parentheses.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | 'x' | 'y' | 't' | '(' sum ')'
//! ```

use std::fmt;

use algint_core::curve::BiPoly;
use algint_core::{AlgElem, Curve, Field, Poly, Qt, Rat};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { offset: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownVariable { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    /// With its offset in the source.
    Var(Var, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// The offset of the `/` is kept for division-by-zero reports.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn mentions(&self, v: Var) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var(w, _) => *w == v,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions(v),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => a.mentions(v) || b.mentions(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tok::Int => "integer",
            Tok::Ident => "identifier",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::End => "end of input",
        })
    }
}

const MAX_EXPONENT: u32 = 4096;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    tok: Tok,
    start: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut p = Parser { src, pos: 0, tok: Tok::End, start: 0 };
        p.bump()?;
        Ok(p)
    }

    fn text(&self) -> &'a str {
        &self.src[self.start..self.pos]
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            self.tok = Tok::End;
            return Ok(());
        };
        self.pos += 1;
        self.tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                Tok::Int
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while bytes.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                    self.pos += 1;
                }
                Tok::Ident
            }
            _ => {
                let ch = self.src[self.start..].chars().next().unwrap();
                return Err(self.error(format!("unexpected character {ch:?}")));
            }
        };
        Ok(())
    }

    fn error(&self, message: String) -> ParseError {
        ParseError::Syntax { offset: self.start, message }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.tok != tok {
            return Err(self.error(format!("expected {tok}, found {}", self.tok)));
        }
        self.bump()
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let at = self.start;
                    self.bump()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.tok {
            Tok::Minus => {
                self.bump()?;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.start;
        self.bump()?;
        if self.tok != Tok::Int {
            return Err(ParseError::Syntax { offset: caret, message: "'^' must be followed by a nonnegative integer".into() });
        }
        let e: u32 = match self.text().parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(self.error(format!("exponent exceeds {MAX_EXPONENT}"))),
        };
        self.bump()?;
        if self.tok == Tok::Caret {
            return Err(self.error("chained exponents need parentheses".into()));
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.tok {
            Tok::Int => {
                let n: BigInt = self.text().parse().expect("digits");
                self.bump()?;
                Ok(Expr::Int(n))
            }
            Tok::Ident => {
                let at = self.start;
                let v = match self.text() {
                    "x" => Var::X,
                    "y" => Var::Y,
                    "t" => Var::T,
                    other => return Err(ParseError::UnknownVariable { offset: self.start, name: other.into() }),
                };
                self.bump()?;
                Ok(Expr::Var(v, at))
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(self.error(format!("expected an operand, found {other}"))),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.sum()?;
    if p.tok != Tok::End {
        return Err(p.error(format!("unexpected {} after expression", p.tok)));
    }
    Ok(e)
}

/// A coefficient field the parser can build constants in.
pub trait Coeffs: Field {
    const NAME: &'static str;
    fn param() -> Option<Self>;
}

impl Coeffs for Rat {
    const NAME: &'static str = "Q";
    fn param() -> Option<Self> {
        None
    }
}

impl Coeffs for Qt {
    const NAME: &'static str = "Q(t)";
    fn param() -> Option<Self> {
        Some(Qt::t())
    }
}

/// `num/den` with both parts in `K[x][y]`, not reduced.
#[derive(Clone, Debug)]
pub struct Fraction<K: Field> {
    pub num: BiPoly<K>,
    pub den: BiPoly<K>,
}

fn bi_trim<K: Field>(mut p: BiPoly<K>) -> BiPoly<K> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn bi_add<K: Field>(a: &[Poly<K>], b: &[Poly<K>]) -> BiPoly<K> {
    let n = a.len().max(b.len());
    let zero = Poly::zero();
    bi_trim((0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect())
}

fn bi_neg<K: Field>(a: &[Poly<K>]) -> BiPoly<K> {
    a.iter().map(|c| -c.clone()).collect()
}

fn bi_mul<K: Field>(a: &[Poly<K>], b: &[Poly<K>]) -> BiPoly<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    bi_trim(out)
}

fn bi_const<K: Field>(c: K) -> BiPoly<K> {
    bi_trim(vec![Poly::constant(c)])
}

impl<K: Coeffs> Fraction<K> {
    fn from_poly(num: BiPoly<K>) -> Self {
        Fraction { num, den: bi_const(K::one()) }
    }

    pub fn y_degree(&self) -> usize {
        self.num.len().saturating_sub(1).max(self.den.len().saturating_sub(1))
    }

    /// The value as an element of `K`, if it does not involve `x` or `y`.
    pub fn as_constant(&self) -> Option<K> {
        let c = |p: &BiPoly<K>| match p.as_slice() {
            [] => Some(K::zero()),
            [c] if c.is_constant() => Some(c.coeff(0)),
            _ => None,
        };
        Some(c(&self.num)?.div_ref(&c(&self.den)?))
    }
}

/// Evaluate in `K[x, y]` fractions. `t` requires a field with a parameter.
pub fn evaluate<K: Coeffs>(e: &Expr) -> Result<Fraction<K>, ParseError> {
    Ok(match e {
        Expr::Int(n) => Fraction::from_poly(bi_const(K::from_rational(BigRational::from_integer(n.clone())))),
        Expr::Var(Var::X, _) => Fraction::from_poly(vec![Poly::x()]),
        Expr::Var(Var::Y, _) => Fraction::from_poly(vec![Poly::zero(), Poly::one()]),
        Expr::Var(Var::T, at) => match K::param() {
            Some(t) => Fraction::from_poly(bi_const(t)),
            None => return Err(ParseError::UnknownVariable { offset: *at, name: "t".into() }),
        },
        Expr::Neg(a) => {
            let a = evaluate::<K>(a)?;
            Fraction { num: bi_neg(&a.num), den: a.den }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (a, mut b) = (evaluate::<K>(a)?, evaluate::<K>(b)?);
            if matches!(e, Expr::Sub(..)) {
                b.num = bi_neg(&b.num);
            }
            if a.den == b.den {
                Fraction { num: bi_add(&a.num, &b.num), den: a.den }
            } else {
                Fraction {
                    num: bi_add(&bi_mul(&a.num, &b.den), &bi_mul(&b.num, &a.den)),
                    den: bi_mul(&a.den, &b.den),
                }
            }
        }
        Expr::Mul(a, b) => {
            let (a, b) = (evaluate::<K>(a)?, evaluate::<K>(b)?);
            Fraction { num: bi_mul(&a.num, &b.num), den: bi_mul(&a.den, &b.den) }
        }
        Expr::Div(a, b, at) => {
            let (a, b) = (evaluate::<K>(a)?, evaluate::<K>(b)?);
            if b.num.is_empty() {
                return Err(ParseError::Syntax { offset: *at, message: "division by zero".into() });
            }
            Fraction { num: bi_mul(&a.num, &b.den), den: bi_mul(&a.den, &b.num) }
        }
        Expr::Pow(a, k) => {
            let a = evaluate::<K>(a)?;
            let mut out = Fraction::from_poly(bi_const(K::one()));
            for _ in 0..*k {
                out = Fraction { num: bi_mul(&out.num, &a.num), den: bi_mul(&out.den, &a.den) };
            }
            out
        }
    })
}

/// Why an expression cannot play the role it was given.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Engine(#[from] algint_core::Error),
}

/// Parse a defining polynomial. A denominator free of `y` is discarded.
pub fn parse_curve<K: Coeffs>(text: &str) -> Result<Curve<K>, ShapeError> {
    let f = evaluate::<K>(&parse_expression(text)?)?;
    if f.den.len() > 1 {
        return Err(ShapeError::Shape("the defining polynomial must not have y in a denominator".into()));
    }
    if f.num.len() < 2 {
        return Err(ShapeError::Shape("the defining polynomial must involve y".into()));
    }
    Ok(Curve::new(f.num)?)
}

/// Parse an element of the function field of `curve`.
pub fn parse_element<K: Coeffs>(curve: &Curve<K>, text: &str) -> Result<AlgElem<K>, ShapeError> {
    let f = evaluate::<K>(&parse_expression(text)?)?;
    let den = curve.bipoly_elem(&f.den);
    if den.is_zero() {
        return Err(ShapeError::Shape("the denominator vanishes on the curve".into()));
    }
    Ok(curve.div(&curve.bipoly_elem(&f.num), &den)?)
}

/// Parse an element of `K`.
pub fn parse_constant<K: Coeffs>(text: &str) -> Result<K, ShapeError> {
    let f = evaluate::<K>(&parse_expression(text)?)?;
    f.as_constant().ok_or_else(|| ShapeError::Shape(format!("`{text}` is not free of x and y")))
}
