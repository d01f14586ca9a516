//! Text form of polynomials.
//!
//! Input grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' uint]
//! atom   := uint ['/' uint] | name | '(' expr ')'
//! ```
//!
//! Output is flat expanded form, terms descending under the active order and
//! variables inside a monomial ascending in precedence, e.g.
//! `2*l*y - 2*l*x - x + 1`.

use std::borrow::Cow;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::order::MonomialOrder;
use super::polynomial::{Coeff, Polynomial};
use super::PolyError;

/// Maps between variable names and ids.
pub trait VarNames {
    fn name_of(&self, v: Var) -> Cow<'_, str>;
    fn var_named(&self, name: &str) -> Option<Var>;
}

/// A plain list of names; `names[i]` is the name of `Var(i)`.
#[derive(Clone, Debug, Default)]
pub struct NameTable(pub Vec<String>);

impl NameTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self(names.into_iter().map(Into::into).collect())
    }
}

impl VarNames for NameTable {
    fn name_of(&self, v: Var) -> Cow<'_, str> {
        match self.0.get(v.index()) {
            Some(n) => Cow::Borrowed(n),
            None => Cow::Owned(format!("v{}", v.0)),
        }
    }

    fn var_named(&self, name: &str) -> Option<Var> {
        self.0.iter().position(|n| n == name).map(|i| Var(i as u32))
    }
}

pub fn parse(text: &str, names: &dyn VarNames) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, names, end: text.len() };
    let p = parser.expr()?;
    match parser.peek() {
        None => Ok(p),
        Some((at, tok)) => Err(PolyError::Syntax { position: at, message: format!("unexpected {tok}") }),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(n) => write!(f, "number `{n}`"),
            Token::Ident(s) => write!(f, "name `{s}`"),
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Star => f.write_str("`*`"),
            Token::Slash => f.write_str("`/`"),
            Token::Caret => f.write_str("`^`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<BigInt>().expect("digits");
                out.push((start, Token::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(PolyError::Syntax { position: start, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    names: &'a dyn VarNames,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, &Token)> {
        self.tokens.get(self.pos).map(|(at, t)| (*at, t))
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |(at, _)| at)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek().is_some_and(|(_, t)| t == tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { position: self.here(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = if self.eat(&Token::Minus) {
            -self.term()?
        } else {
            self.eat(&Token::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Token::Plus) {
                acc = acc + self.term()?;
            } else if self.eat(&Token::Minus) {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some((_, Token::Star)) => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some((_, Token::Num(_) | Token::Ident(_) | Token::LParen)) => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.eat(&Token::Caret) {
            match self.peek() {
                Some((at, Token::Num(n))) => {
                    let Ok(e) = u32::try_from(n.clone()) else {
                        return Err(PolyError::Syntax { position: at, message: "exponent too large".into() });
                    };
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.error("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        let Some((at, tok)) = self.peek() else {
            return self.error("unexpected end of input");
        };
        let tok = tok.clone();
        self.pos += 1;
        match tok {
            Token::Num(n) => {
                if self.eat(&Token::Slash) {
                    match self.peek() {
                        Some((dat, Token::Num(d))) => {
                            if d.is_zero() {
                                return Err(PolyError::Syntax { position: dat, message: "zero denominator".into() });
                            }
                            let d = d.clone();
                            self.pos += 1;
                            Ok(Polynomial::constant(Coeff::new(n, d)))
                        }
                        _ => self.error("expected an integer denominator"),
                    }
                } else {
                    Ok(Polynomial::constant(Coeff::from_integer(n)))
                }
            }
            Token::Ident(name) => match self.names.var_named(&name) {
                Some(v) => Ok(Polynomial::var(v)),
                None => Err(PolyError::UnknownVariable { name, position: at }),
            },
            Token::LParen => {
                let inner = self.expr()?;
                if self.eat(&Token::RParen) {
                    Ok(inner)
                } else {
                    self.error("expected `)`")
                }
            }
            other => Err(PolyError::Syntax { position: at, message: format!("unexpected {other}") }),
        }
    }
}

/// Display adapter returned by [`display`].
pub struct DisplayPoly<'a> {
    poly: &'a Polynomial,
    names: &'a dyn VarNames,
    order: &'a MonomialOrder,
}

pub fn display<'a>(poly: &'a Polynomial, names: &'a dyn VarNames, order: &'a MonomialOrder) -> DisplayPoly<'a> {
    DisplayPoly { poly, names, order }
}

/// Renders `p` in the canonical text form.
pub fn format(p: &Polynomial, names: &dyn VarNames, order: &MonomialOrder) -> String {
    display(p, names, order).to_string()
}

fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, names: &dyn VarNames, order: &MonomialOrder) -> fmt::Result {
    let mut powers = m.powers().to_vec();
    powers.sort_by(|a, b| order.var_cmp(a.0, b.0));
    for (i, (v, e)) in powers.into_iter().enumerate() {
        if i > 0 {
            f.write_char('*')?;
        }
        f.write_str(&names.name_of(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.order);
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m, self.names, self.order)?;
            }
        }
        Ok(())
    }
}
