//! Text syntax for *-polynomials, scalar literals and presentation files.
//!
//! Polynomial grammar (recursive descent):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor (factor | '*' factor)*      product by juxtaposition
//! factor  := primary postfix*
//! postfix := '*'   adjoint; only when written directly after the operand
//!          | '^' INT
//! primary := INT ['/' INT]                      rational scalar
//!          | 'z' '(' INT ',' INT ')'            root of unity zeta_N^k
//!          | IDENT
//!          | '(' expr ')'
//! ```
//!
//! A `*` glued to its operand (`A*`, `(A B)*`) is the adjoint; a free-standing
//! `*` between factors is an ordinary product sign.  Adjoint binds tighter
//! than `^`, so `A*^2` is `(A*)^2`.  Scalar literals are the subset of the
//! grammar with no identifiers: rationals `p/q`, roots of unity `z(N,k)`, and
//! sums and products of these.

use std::fmt;

use crate::cyclotomic::{ArithError, CyclotomicScalar};
use crate::poly::{Atom, StarPolynomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    /// `*`; `glued` when no whitespace separates it from the previous token.
    Star { glued: bool },
    Caret,
    Plus,
    Minus,
    Slash,
    Comma,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    let mut prev_was_space = true;
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let advance = |chars: &mut std::iter::Peekable<std::str::Chars>, col: &mut usize| {
            chars.next();
            *col += 1;
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                prev_was_space = true;
                continue;
            }
            c if c.is_whitespace() => {
                advance(&mut chars, &mut col);
                prev_was_space = true;
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                    s.push(chars.next().unwrap());
                    col += 1;
                }
                out.push(Spanned { tok: Tok::Int(s), line: tline, col: tcol });
            }
            '*' => {
                advance(&mut chars, &mut col);
                out.push(Spanned {
                    tok: Tok::Star { glued: !prev_was_space },
                    line: tline,
                    col: tcol,
                });
            }
            '^' => {
                advance(&mut chars, &mut col);
                out.push(Spanned { tok: Tok::Caret, line: tline, col: tcol });
            }
            '+' => {
                advance(&mut chars, &mut col);
                out.push(Spanned { tok: Tok::Plus, line: tline, col: tcol });
            }
            '-' => {
                advance(&mut chars, &mut col);
                out.push(Spanned { tok: Tok::Minus, line: tline, col: tcol });
            }
            '/' => {
                advance(&mut chars, &mut col);
                out.push(Spanned { tok: Tok::Slash, line: tline, col: tcol });
            }
            ',' => {
                advance(&mut chars, &mut col);
                out.push(Spanned { tok: Tok::Comma, line: tline, col: tcol });
            }
            '(' => {
                advance(&mut chars, &mut col);
                out.push(Spanned { tok: Tok::LParen, line: tline, col: tcol });
            }
            ')' => {
                advance(&mut chars, &mut col);
                out.push(Spanned { tok: Tok::RParen, line: tline, col: tcol });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|d| d.is_alphanumeric() || *d == '_' || *d == '\'')
                {
                    s.push(chars.next().unwrap());
                    col += 1;
                }
                out.push(Spanned { tok: Tok::Ident(s), line: tline, col: tcol });
            }
            other => {
                return Err(ParseError::new(tline, tcol, format!("unexpected character `{other}`")));
            }
        }
        prev_was_space = false;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, message)
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn arith(&self, e: ArithError) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, e.to_string())
    }

    fn parse_uint(&mut self) -> Result<u64, ParseError> {
        match self.bump() {
            Some(Tok::Int(s)) => s
                .parse::<u64>()
                .map_err(|_| self.err(format!("integer `{s}` out of range"))),
            _ => {
                self.pos -= 1;
                Err(self.err("expected an integer"))
            }
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.parse_uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    /// primary := rational | z(N,k) | ident | '(' expr ')'
    fn parse_primary(&mut self) -> Result<StarPolynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let num = self.parse_uint()? as i64;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let den = self.parse_uint()? as i64;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(StarPolynomial::constant(CyclotomicScalar::from_rational(
                        Rational::new(num, den),
                    )))
                } else {
                    Ok(StarPolynomial::constant(CyclotomicScalar::from_int(num)))
                }
            }
            Some(Tok::Ident(name)) if name == "z" && self.toks.get(self.pos + 1).map(|s| &s.tok) == Some(&Tok::LParen) => {
                self.pos += 1; // z
                self.expect(&Tok::LParen, "`(`")?;
                let n = self.parse_uint()?;
                self.expect(&Tok::Comma, "`,`")?;
                let k = self.parse_int()?;
                self.expect(&Tok::RParen, "`)`")?;
                let s = CyclotomicScalar::root_of_unity(n as u32, k).map_err(|e| self.arith(e))?;
                Ok(StarPolynomial::constant(s))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(StarPolynomial::atom(Atom::plain(name)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err("expected a scalar, identifier or `(`")),
        }
    }

    /// factor := primary postfix*; postfix := glued '*' | '^' INT
    fn parse_factor(&mut self) -> Result<StarPolynomial, ParseError> {
        let mut p = self.parse_primary()?;
        loop {
            match self.peek() {
                Some(Tok::Star { glued: true }) => {
                    self.pos += 1;
                    p = p.adjoint();
                }
                Some(Tok::Caret) => {
                    self.pos += 1;
                    let e = self.parse_uint()?;
                    if e > 64 {
                        return Err(self.err("exponent too large"));
                    }
                    p = p.pow(e as u32);
                }
                _ => break,
            }
        }
        Ok(p)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
        )
    }

    /// term := factor (factor | '*' factor)*
    fn parse_term(&mut self) -> Result<StarPolynomial, ParseError> {
        let mut p = self.parse_factor()?;
        loop {
            if self.starts_factor() {
                let q = self.parse_factor()?;
                p = p.mul(&q);
            } else if matches!(self.peek(), Some(Tok::Star { glued: false })) {
                self.pos += 1;
                let q = self.parse_factor()?;
                p = p.mul(&q);
            } else {
                break;
            }
        }
        Ok(p)
    }

    fn parse_expr(&mut self) -> Result<StarPolynomial, ParseError> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            self.parse_term()?.neg()
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

/// Parses a *-polynomial from text.
pub fn parse_polynomial(text: &str) -> Result<StarPolynomial, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(1, 1, "empty input"));
    }
    let mut p = Parser { toks, pos: 0 };
    let poly = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses a scalar literal: a polynomial with no generator atoms.
pub fn parse_scalar(text: &str) -> Result<CyclotomicScalar, ParseError> {
    let poly = parse_polynomial(text)?;
    if poly.is_zero() {
        return Ok(CyclotomicScalar::zero());
    }
    match poly.terms() {
        [(c, w)] if w.is_empty() => Ok(c.clone()),
        _ => Err(ParseError::new(
            1,
            1,
            format!("`{text}` is not a scalar literal (contains generators)"),
        )),
    }
}
