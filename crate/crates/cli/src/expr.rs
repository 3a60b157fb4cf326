//! Surface syntax for polynomials. Rational literals (`2`, `-3/4`), the
//! parameter letters `L M N H T W` (lambda family), `D` and `D1 D2 D3 ...`
//! (module and leg operators), free scalars `c0 c1 ...`, operators `+ - *`,
//! integer `^`, parentheses. The Unicode spellings of the letters are
//! accepted on input; output always uses the ASCII names.

use std::fmt;

use homconf_core::poly::{rat, Poly, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl SynError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        SynError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for SynError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for SynError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Spanned>, SynError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = col0 + i;
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Spanned { tok: Tok::Plus, col });
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Spanned { tok: Tok::Minus, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, col });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, col });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, col });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, col });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, col });
                i += 1;
            }
            '\u{3bb}' => {
                out.push(Spanned { tok: Tok::Ident("L".into()), col });
                i += 1;
            }
            '\u{3bc}' => {
                out.push(Spanned { tok: Tok::Ident("M".into()), col });
                i += 1;
            }
            '\u{3bd}' => {
                out.push(Spanned { tok: Tok::Ident("N".into()), col });
                i += 1;
            }
            '\u{2202}' => {
                out.push(Spanned { tok: Tok::Ident("D".into()), col });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<i64>()
                    .map_err(|_| SynError::new(line, col, format!("integer `{text}` is too large")))?;
                out.push(Spanned { tok: Tok::Int(value), col });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Ident(text), col });
            }
            other => {
                return Err(SynError::new(line, col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

fn resolve_var(name: &str) -> Option<Var> {
    match name {
        "L" => return Some(Var::Lam(0)),
        "M" => return Some(Var::Lam(1)),
        "N" => return Some(Var::Lam(2)),
        "H" => return Some(Var::Lam(3)),
        "T" => return Some(Var::Lam(4)),
        "W" => return Some(Var::Lam(5)),
        "D" => return Some(Var::Del(0)),
        _ => {}
    }
    let (head, digits) = name.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let k: u32 = digits.parse().ok()?;
    if k > 200 {
        return None;
    }
    match head {
        "L" => Some(Var::Lam(k as u8)),
        "D" if k >= 1 => Some(Var::Del(k as u8)),
        "c" => Some(Var::Param(k as u8)),
        _ => None,
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.col)
            .unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> SynError {
        SynError::new(self.line, self.col(), msg)
    }

    fn expr(&mut self) -> Result<Poly, SynError> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, SynError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, SynError> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(e)) if (0..=64).contains(&e) => Ok(base.pow(e as u32)),
                Some(Tok::Int(_)) => {
                    self.pos -= 1;
                    Err(self.err("exponent out of range (0..=64)"))
                }
                _ => {
                    self.pos -= 1;
                    Err(self.err("expected integer exponent after `^`"))
                }
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly, SynError> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.primary()?.neg())
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.err("expected `)`"))
                    }
                }
            }
            Some(Tok::Int(n)) => {
                self.bump();
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if d != 0 => Ok(Poly::constant(rat(n, d))),
                        Some(Tok::Int(_)) => {
                            self.pos -= 1;
                            Err(self.err("zero denominator"))
                        }
                        _ => {
                            self.pos -= 1;
                            Err(self.err("expected integer denominator after `/`"))
                        }
                    }
                } else {
                    Ok(Poly::int(n))
                }
            }
            Some(Tok::Ident(name)) => {
                let col = self.col();
                self.bump();
                match resolve_var(&name) {
                    Some(v) => Ok(Poly::var(v)),
                    None => Err(SynError::new(
                        self.line,
                        col,
                        format!("unknown variable `{name}`"),
                    )),
                }
            }
            Some(Tok::RParen) => Err(self.err("unexpected `)`")),
            Some(t) => Err(self.err(format!("unexpected token `{t:?}`"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses an expression occupying (part of) one source line. `line` and
/// `col0` locate the first character for error messages.
pub fn parse_poly_at(src: &str, line: usize, col0: usize) -> Result<Poly, SynError> {
    let trimmed = src.trim_end();
    if trimmed.trim().is_empty() {
        return Err(SynError::new(line, col0, "empty expression"));
    }
    let toks = lex(trimmed, line, col0)?;
    let end_col = col0 + trimmed.chars().count();
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col,
    };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(poly)
}

pub fn parse_poly(src: &str) -> Result<Poly, SynError> {
    parse_poly_at(src, 1, 1)
}

/// Canonical surface form; `parse_poly` returns the same polynomial back.
pub fn print_poly(p: &Poly) -> String {
    p.to_string()
}
