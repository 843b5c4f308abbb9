//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := '(' expr ')' | '-' factor | number | ident
//! number := uint ['/' uint]
//! ident  := [A-Za-z_][A-Za-z0-9_']*
//! ```
//! Identifiers must name variables of the target set; `/` only forms
//! rational literals, never general division.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{MultiPoly, VarSet};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Int(String),
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let mut s: String = chars[start..i].iter().collect();
                if i < chars.len() && chars[i] == '/' {
                    // Rational literal: digits '/' digits.
                    let mut j = i + 1;
                    let dstart = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(Error::Parse("expected digits after '/'".into()));
                    }
                    s.push('/');
                    s.extend(&chars[dstart..j]);
                    i = j;
                }
                toks.push(Tok::Int(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    field: FieldSpec,
    vars: &'a VarSet,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.bump() {
            Some(found) if found == t => Ok(()),
            found => Err(Error::Parse(format!("expected {t:?}, found {found:?}"))),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(s)) if !s.contains('/') => {
                    let e: u32 = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
                    return Ok(base.pow(e));
                }
                t => return Err(Error::Parse(format!("expected exponent, found {t:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.bump() {
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::Int(s)) => {
                let c = match s.split_once('/') {
                    None => {
                        let n: i64 = s
                            .parse()
                            .map_err(|_| Error::Parse(format!("integer out of range: {s}")))?;
                        self.field.from_i64(n)
                    }
                    Some((a, b)) => {
                        let a: i64 = a
                            .parse()
                            .map_err(|_| Error::Parse(format!("integer out of range: {a}")))?;
                        let b: i64 = b
                            .parse()
                            .map_err(|_| Error::Parse(format!("integer out of range: {b}")))?;
                        self.field.fraction(a, b)?
                    }
                };
                Ok(MultiPoly::constant(self.field, self.vars, c))
            }
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => Ok(MultiPoly::var(self.field, self.vars, i)),
                None => Err(Error::UnknownLabel(name)),
            },
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_poly(field: FieldSpec, vars: &VarSet, text: &str) -> Result<MultiPoly> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { field, vars, toks, pos: 0 };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing tokens starting at {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> VarSet {
        VarSet::new(vec!["x1", "x2", "x3"]).unwrap()
    }

    fn q(text: &str) -> MultiPoly {
        parse_poly(FieldSpec::Q, &vars(), text).unwrap()
    }

    #[test]
    fn parses_standard_forms() {
        assert_eq!(q("5*x1^2*x3 - x2").to_string(), "5*x1^2*x3 - x2");
        assert_eq!(q("(x1 + x2)*(x1 - x2)").to_string(), "x1^2 - x2^2");
        assert_eq!(q("-(x1 - x2)").to_string(), "-x1 + x2");
        assert_eq!(q("1/2*x1 + 1/2*x1").to_string(), "x1");
        assert_eq!(q("2^3").to_string(), "8");
        assert_eq!(q("x1 - - x2").to_string(), "x1 + x2");
    }

    #[test]
    fn display_parse_roundtrip() {
        for text in [
            "x1*x2 + x1*x3 + x2*x3",
            "3*x1^4 - 2/7*x2 + 1",
            "-x1 - x2 - 1",
            "0",
        ] {
            let p = q(text);
            assert_eq!(parse_poly(FieldSpec::Q, &vars(), &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly(FieldSpec::Q, &vars(), "x9").is_err());
        assert!(parse_poly(FieldSpec::Q, &vars(), "x1 +").is_err());
        assert!(parse_poly(FieldSpec::Q, &vars(), "x1/x2").is_err());
        assert!(parse_poly(FieldSpec::Q, &vars(), "(x1").is_err());
        assert!(parse_poly(FieldSpec::Q, &vars(), "").is_err());
        assert!(parse_poly(FieldSpec::Q, &vars(), "x1^x2").is_err());
        assert!(parse_poly(FieldSpec::Q, &vars(), "#t").is_err());
    }

    #[test]
    fn prime_field_literals() {
        let p = parse_poly(FieldSpec::Fp(7), &vars(), "10*x1 + 1/2").unwrap();
        assert_eq!(p.to_string(), "3*x1 + 4");
    }
}
