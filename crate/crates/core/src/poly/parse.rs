//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr       := term (("+"|"-") term)*        leading "-" binds to the first term
//! term       := factor ("*" factor)*
//! factor     := base ("^" natural)?
//! base       := rational | identifier | "(" expr ")"
//! rational   := ("-")? digits ("/" nonzero-digits)?
//! identifier := letter (letter|digit|"_")*
//! ```
//!
//! There is no implicit multiplication: `2s` is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, Polynomial, Ring, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Digits(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Scalar),
    Var(String),
    Neg(Box<Expr>),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

fn syntax(position: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Digits(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), PolyError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<Expr, PolyError> {
        let mut parts = Vec::new();
        let leading_neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        parts.push((leading_neg, self.term()?));
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            parts.push((neg, self.term()?));
        }
        if parts.len() == 1 && !parts[0].0 {
            return Ok(parts.pop().expect("one part").1);
        }
        Ok(Expr::Sum(parts))
    }

    fn term(&mut self) -> Result<Expr, PolyError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(Expr::Product(factors))
    }

    fn factor(&mut self) -> Result<Expr, PolyError> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::Digits(d) => {
                    let n: u32 = d
                        .parse()
                        .map_err(|_| syntax(at, format!("exponent `{d}` too large")))?;
                    return Ok(Expr::Pow(Box::new(base), n));
                }
                other => {
                    return Err(syntax(
                        at,
                        format!("expected natural exponent, found {}", describe(&other)),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, PolyError> {
        let at = self.offset();
        match self.bump() {
            Tok::Minus => {
                let at = self.offset();
                match self.bump() {
                    Tok::Digits(d) => Ok(Expr::Neg(Box::new(self.rational_tail(d)?))),
                    other => Err(syntax(
                        at,
                        format!("expected digits after `-`, found {}", describe(&other)),
                    )),
                }
            }
            Tok::Digits(d) => self.rational_tail(d),
            Tok::Ident(name) => Ok(Expr::Var(name)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            other => Err(syntax(
                at,
                format!("expected number, variable or `(`, found {}", describe(&other)),
            )),
        }
    }

    fn rational_tail(&mut self, numer: String) -> Result<Expr, PolyError> {
        let n: BigInt = numer.parse().expect("digits");
        if *self.peek() != Tok::Slash {
            return Ok(Expr::Num(Scalar::from_integer(n)));
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Digits(d) => {
                let den: BigInt = d.parse().expect("digits");
                if den.is_zero() {
                    return Err(syntax(at, "zero denominator"));
                }
                Ok(Expr::Num(Scalar::new(n, den)))
            }
            other => Err(syntax(
                at,
                format!("expected denominator digits, found {}", describe(&other)),
            )),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Digits(d) => format!("number `{d}`"),
        Tok::Ident(n) => format!("identifier `{n}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn parse_expr(text: &str) -> Result<Expr, PolyError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.offset(),
            format!("unexpected {} (multiplication must be written with `*`)", describe(p.peek())),
        ));
    }
    Ok(e)
}

fn eval(e: &Expr, ring: &Ring) -> Result<Polynomial, PolyError> {
    Ok(match e {
        Expr::Num(c) => Polynomial::constant(ring, c.clone()),
        Expr::Var(name) => Polynomial::var(ring, name)?,
        Expr::Neg(inner) => -eval(inner, ring)?,
        Expr::Sum(parts) => {
            let mut acc = Polynomial::zero(ring);
            for (neg, part) in parts {
                let v = eval(part, ring)?;
                acc = if *neg { &acc - &v } else { &acc + &v };
            }
            acc
        }
        Expr::Product(factors) => {
            let mut acc = Polynomial::one(ring);
            for f in factors {
                acc = &acc * &eval(f, ring)?;
            }
            acc
        }
        Expr::Pow(base, n) => eval(base, ring)?.pow(*n),
    })
}

fn collect_identifiers(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Num(_) => {}
        Expr::Var(name) => {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        Expr::Neg(inner) | Expr::Pow(inner, _) => collect_identifiers(inner, out),
        Expr::Sum(parts) => parts.iter().for_each(|(_, p)| collect_identifiers(p, out)),
        Expr::Product(fs) => fs.iter().for_each(|f| collect_identifiers(f, out)),
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial, PolyError> {
    eval(&parse_expr(text)?, ring)
}

/// Identifiers of a well-formed expression, in order of first appearance.
pub fn identifiers_in(text: &str) -> Result<Vec<String>, PolyError> {
    let e = parse_expr(text)?;
    let mut out = Vec::new();
    collect_identifiers(&e, &mut out);
    Ok(out)
}
