//! Polynomial text grammar:
//!
//! ```text
//! poly := ('+'|'-')? term (('+'|'-') term)*
//! term := coeff? ('*'? var ('^' int)?)*
//! ```
//!
//! Whitespace is ignored between tokens; juxtaposed factors multiply.

use std::sync::Arc;

use super::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            c if c.is_ascii_digit() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(bytes[start..=i].iter().collect())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(bytes[start..=i].iter().collect())));
            }
            other => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                let v = s.parse::<u64>().or_else(|_| self.err(format!("{what} `{s}` is too large")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn term(&mut self) -> Result<(Monomial, u64)> {
        let n = self.ring.nvars();
        let mut exps = vec![0u32; n];
        let mut seen_any = false;
        let mut coeff = 1u64;
        let field = self.ring.field();
        if let Some(Tok::Int(_)) = self.peek() {
            coeff = self.int("coefficient")? % field.characteristic() as u64;
            seen_any = true;
        }
        loop {
            let star = matches!(self.peek(), Some(Tok::Star));
            if star {
                if !seen_any {
                    return self.err("`*` without a left factor");
                }
                self.pos += 1;
            }
            match self.peek().cloned() {
                Some(Tok::Ident(name)) => {
                    let idx = self.ring.variable_index(&name).ok_or(Error::UnknownVariable(name))?;
                    self.pos += 1;
                    let mut e = 1u64;
                    if let Some(Tok::Caret) = self.peek() {
                        self.pos += 1;
                        e = self.int("exponent")?;
                    }
                    let total = exps[idx] as u64 + e;
                    if total > u16::MAX as u64 {
                        return self.err("exponent exceeds 16 bits");
                    }
                    exps[idx] = total as u32;
                    seen_any = true;
                }
                Some(Tok::Int(_)) if star => {
                    let c = self.int("coefficient")?;
                    coeff = coeff * (c % field.characteristic() as u64) % field.characteristic() as u64;
                }
                _ if star => return self.err("expected a variable after `*`"),
                _ => break,
            }
        }
        if !seen_any {
            return self.err("expected a term");
        }
        Ok((Monomial::from_exponents(exps.into_iter().map(|e| e as u16).collect()), coeff))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut sign_neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                sign_neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            let c = field.from_u64(c);
            terms.push((m, if sign_neg { field.neg(c) } else { c }));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => sign_neg = false,
                Some(Tok::Minus) => sign_neg = true,
                Some(_) => return self.err("expected `+` or `-`"),
            }
            self.pos += 1;
        }
        Ok(self.ring.from_terms(terms))
    }
}

pub(super) fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let mut parser = Parser { ring, toks, pos: 0, end: text.chars().count() };
    parser.poly()
}
