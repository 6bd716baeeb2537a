//! Reader for the ASCII polynomial grammar
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff? ('*'? factor)*
//! factor := var ('^' nat)?
//! coeff  := nat
//! ```
//!
//! Whitespace is insignificant. The printer in [`crate::poly`] emits exactly this grammar.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::{PolyRing, Polynomial, Term};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn nat(&mut self) -> Result<(u64, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default().to_string();
        if text.is_empty() {
            return Err(self.err("expected a number"));
        }
        let v = text.parse::<u64>().map_err(|_| Error::CoefficientOverflow(text.clone()))?;
        Ok((v, text))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_') {
            self.pos += 1;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            core::str::from_utf8(&self.src[start..self.pos]).ok()
        } else {
            None
        }
    }
}

fn parse_term(cur: &mut Cursor<'_>, ring: &PolyRing) -> Result<Term> {
    let fp = ring.field();
    let mut coeff = 1u32;
    let mut exps = [0u32; MAX_VARS];
    let mut any = false;
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let (v, _) = cur.nat()?;
        coeff = fp.reduce(v);
        any = true;
    }
    loop {
        let save = cur.pos;
        let had_star = cur.peek() == Some(b'*');
        if had_star {
            if !any {
                return Err(cur.err("`*` without a left operand"));
            }
            cur.pos += 1;
        }
        let at = cur.pos;
        match cur.ident() {
            Some(name) => {
                let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                let mut e = 1u64;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    e = cur.nat()?.0;
                }
                let total = exps[i] as u64 + e;
                if total > u16::MAX as u64 {
                    return Err(Error::ExponentOverflow);
                }
                exps[i] = total as u32;
                any = true;
            }
            None if had_star => {
                cur.pos = at;
                return Err(cur.err("expected a variable after `*`"));
            }
            None => {
                cur.pos = save;
                break;
            }
        }
    }
    if !any {
        return Err(cur.err("expected a term"));
    }
    Ok((Monomial::from_exponents(&exps[..ring.nvars()])?, coeff))
}

/// Parses `text` as a polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let fp = *ring.field();
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms: Vec<Term> = Vec::new();
    let mut sign_neg = false;
    match cur.peek() {
        Some(b'-') => {
            sign_neg = true;
            cur.pos += 1;
        }
        Some(b'+') => cur.pos += 1,
        None => return Err(cur.err("empty expression")),
        _ => {}
    }
    loop {
        let (m, c) = parse_term(&mut cur, ring)?;
        terms.push((m, if sign_neg { fp.neg(c) } else { c }));
        match cur.peek() {
            None => break,
            Some(b'+') => sign_neg = false,
            Some(b'-') => sign_neg = true,
            Some(_) => return Err(cur.err("expected `+`, `-` or end of input")),
        }
        cur.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(text: &str, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_poly(piece, ring).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
            other => other,
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use alloc::format;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], PrimeField::default()).unwrap()
    }

    #[test]
    fn simple_terms() {
        let r = ring();
        let f = parse_poly("x^2 + y*z", &r).unwrap();
        assert_eq!(f.len(), 2);
        let g = parse_poly("x*z + x*y", &r).unwrap();
        assert_eq!(g, parse_poly("x*y + x*z", &r).unwrap());
        assert!(parse_poly("0", &r).unwrap().is_zero());
        assert_eq!(parse_poly("3 x y", &r).unwrap(), parse_poly("3*x*y", &r).unwrap());
        assert_eq!(parse_poly("32004*x", &r).unwrap(), parse_poly("x", &r).unwrap());
    }

    #[test]
    fn errors() {
        let r = ring();
        assert_eq!(parse_poly("x + w", &r), Err(Error::UnknownVariable("w".into())));
        assert!(matches!(parse_poly("x + ", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x ^ ", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x y )", &r), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("99999999999999999999999 x", &r), Err(Error::CoefficientOverflow(_))));
        assert_eq!(parse_poly("x^70000", &r), Err(Error::ExponentOverflow));
    }

    #[test]
    fn print_round_trip() {
        let r = ring();
        let f = parse_poly("x^2 - 3*y*z + 7 - z^3", &r).unwrap();
        let printed = format!("{}", f);
        assert_eq!(parse_poly(&printed, &r).unwrap(), f);
    }
}
