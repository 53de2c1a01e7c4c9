//! Parser and printer for algebra expressions such as `e* e - 1/2 v`.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := [rational ['*']] factor+
//! factor   := ident ['*'] | '(' expr ')'
//! rational := int ['/' int]
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{AlgebraContext, AlgebraElement, AlgebraError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("division by zero in coefficient")]
    ZeroDenominator,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(Sign, Term)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficient {
    pub numer: BigInt,
    pub denom: Option<BigInt>,
    /// Whether an explicit `*` separates the coefficient from the factors.
    pub times: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Option<Coefficient>,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Ident { name: String, star: bool },
    Group(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '/' => Tok::Slash,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((col, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ExprError::Parse {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            column: self.column(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let first = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            Sign::Minus
        } else {
            Sign::Plus
        };
        terms.push((first, self.term()?));
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => Sign::Plus,
                Some(Tok::Minus) => Sign::Minus,
                _ => break,
            };
            self.bump();
            terms.push((sign, self.term()?));
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Term, ExprError> {
        let mut coeff = None;
        if let Some(Tok::Int(n)) = self.peek().cloned() {
            self.bump();
            let denom = if self.peek() == Some(&Tok::Slash) {
                self.bump();
                match self.bump() {
                    Some(Tok::Int(d)) => Some(d),
                    _ => {
                        self.pos -= 1;
                        return self.error("expected denominator");
                    }
                }
            } else {
                None
            };
            let times = if self.peek() == Some(&Tok::Star) {
                self.bump();
                true
            } else {
                false
            };
            coeff = Some(Coefficient {
                numer: n,
                denom,
                times,
            });
        }
        let mut factors = Vec::new();
        while let Some(t) = self.peek() {
            match t {
                Tok::Ident(_) | Tok::LParen => factors.push(self.factor()?),
                _ => break,
            }
        }
        if factors.is_empty() {
            return self.error("expected a generator or `(`");
        }
        Ok(Term { coeff, factors })
    }

    fn factor(&mut self) -> Result<Factor, ExprError> {
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let star = self.peek() == Some(&Tok::Star);
                if star {
                    self.bump();
                }
                Ok(Factor::Ident { name, star })
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(Factor::Group(e))
            }
            _ => {
                self.pos -= 1;
                self.error("expected a generator or `(`")
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sign, term)) in self.terms.iter().enumerate() {
            match (i, sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => f.write_str("-")?,
                (_, Sign::Plus) => f.write_str(" + ")?,
                (_, Sign::Minus) => f.write_str(" - ")?,
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.coeff {
            write!(f, "{}", c.numer)?;
            if let Some(d) = &c.denom {
                write!(f, "/{d}")?;
            }
            f.write_str(if c.times { " * " } else { " " })?;
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match factor {
                Factor::Ident { name, star } => {
                    f.write_str(name)?;
                    if *star {
                        f.write_str("*")?;
                    }
                }
                Factor::Group(e) => write!(f, "({e})")?,
            }
        }
        Ok(())
    }
}

impl Expr {
    pub fn eval(&self, ctx: &Arc<AlgebraContext>) -> Result<AlgebraElement, ExprError> {
        let mut acc = ctx.zero();
        for (sign, term) in &self.terms {
            let t = term.eval(ctx)?;
            acc = match sign {
                Sign::Plus => acc.add(&t)?,
                Sign::Minus => acc.sub(&t)?,
            };
        }
        Ok(acc)
    }
}

impl Term {
    fn eval(&self, ctx: &Arc<AlgebraContext>) -> Result<AlgebraElement, ExprError> {
        let mut acc: Option<AlgebraElement> = None;
        for factor in &self.factors {
            let x = match factor {
                Factor::Ident { name, star } => ident(ctx, name, *star)?,
                Factor::Group(e) => e.eval(ctx)?,
            };
            acc = Some(match acc {
                None => x,
                Some(a) => a.mul(&x)?,
            });
        }
        let acc = acc.expect("terms have at least one factor");
        match &self.coeff {
            None => Ok(acc),
            Some(c) => {
                let d = c.denom.clone().unwrap_or_else(BigInt::one);
                if d.is_zero() {
                    return Err(ExprError::ZeroDenominator);
                }
                Ok(acc.scale(&Scalar::new(c.numer.clone(), d)))
            }
        }
    }
}

fn ident(ctx: &Arc<AlgebraContext>, name: &str, star: bool) -> Result<AlgebraElement, ExprError> {
    let g = ctx.graph();
    if let Some(v) = g.vertex_by_name(name) {
        let p = ctx.vertex(v);
        return Ok(if star { p.star()? } else { p });
    }
    if let Some(e) = g.edge_by_name(name) {
        return Ok(if star { ctx.ghost(e)? } else { ctx.edge(e) });
    }
    Err(ExprError::UnknownIdentifier(name.to_string()))
}

/// Parses and evaluates `src` in `ctx`.
pub fn evaluate(ctx: &Arc<AlgebraContext>, src: &str) -> Result<AlgebraElement, ExprError> {
    parse(src)?.eval(ctx)
}
