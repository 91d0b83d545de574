//! Text grammar for polynomials in `z1..zn` and their conjugates.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary  := '-' unary | '~' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | 'i' | 'z'INT | 't' | 'Re' '(' expr ')' | 'Im' '(' expr ')'
//!         | '(' expr ')' | '|' expr '|' '^' EVEN
//! ```
//!
//! `Re(e)` is `(e + conj e)/2` and `|e|^2m` is `(e·conj e)^m`. Division is
//! only by nonzero constants, so `a/b` literals are ordinary division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly::{HermPoly, HoloPoly, MixedPoly};
use super::scalar::GaussianRational as GQ;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Imag,
    Re,
    Im,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Tilde,
    LParen,
    RParen,
    Bar,
}

#[derive(Clone, Copy)]
enum Vars {
    /// `z1..zn`
    Z(usize),
    /// the single curve parameter `t`
    T,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(src: &str, vars: Vars) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().map_err(|_| err(start, "bad integer"))?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &src[start..i];
                let tok = match word {
                    "i" => Tok::Imag,
                    "Re" => Tok::Re,
                    "Im" => Tok::Im,
                    "t" if matches!(vars, Vars::T) => Tok::Var(0),
                    w if w.starts_with('z') && matches!(vars, Vars::Z(_)) => {
                        let Vars::Z(n) = vars else { unreachable!() };
                        let k: usize = w[1..]
                            .parse()
                            .map_err(|_| err(start, format!("unknown identifier {w:?}")))?;
                        if k == 0 || k > n {
                            return Err(err(start, format!("variable {w} out of range 1..={n}")));
                        }
                        Tok::Var(k - 1)
                    }
                    w => return Err(err(start, format!("unknown identifier {w:?}"))),
                };
                out.push((start, tok));
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '~' => Tok::Tilde,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '|' => Tok::Bar,
            _ => return Err(err(start, format!("unexpected character {c:?}"))),
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(at, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<MixedPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            Some(Tok::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
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

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::Var(_) | Tok::Imag | Tok::Re | Tok::Im | Tok::LParen | Tok::Tilde)
        )
    }

    fn term(&mut self) -> Result<MixedPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.here();
                    let d = self.unary()?;
                    let c = constant_of(&d).ok_or_else(|| err(at, "division by a non-constant"))?;
                    let inv = c.inv().ok_or_else(|| err(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_atom() => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MixedPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Tilde) => {
                self.bump();
                Ok(self.unary()?.conj())
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(v)) => v.to_u32().ok_or_else(|| err(at, "exponent too large")),
            _ => Err(err(at, "expected integer exponent")),
        }
    }

    fn power(&mut self) -> Result<MixedPoly> {
        if self.peek() == Some(&Tok::Bar) {
            let open = self.here();
            self.bump();
            let inner = self.expr()?;
            self.expect(Tok::Bar, "closing '|'")?;
            let at = self.here();
            if self.peek() != Some(&Tok::Caret) {
                return Err(err(at, "|expr| must be raised to an even power"));
            }
            self.bump();
            let at = self.here();
            let e = self.exponent()?;
            if e == 0 || e % 2 != 0 {
                return Err(err(at, format!("|expr|^{e} is not polynomial (need an even power); opened at byte {open}")));
            }
            return Ok(inner.mul(&inner.conj()).pow(e / 2));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MixedPoly> {
        let at = self.here();
        let n = self.n;
        match self.bump() {
            Some(Tok::Int(v)) => Ok(MixedPoly::constant(n, GQ::real(BigRational::from_integer(v)))),
            Some(Tok::Imag) => Ok(MixedPoly::constant(n, GQ::i())),
            Some(Tok::Var(k)) => Ok(MixedPoly::var(n, k)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Re) => {
                self.expect(Tok::LParen, "'(' after Re")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e.add(&e.conj()).scale(&GQ::half()))
            }
            Some(Tok::Im) => {
                self.expect(Tok::LParen, "'(' after Im")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                // (e - conj e) / (2i)
                let k = GQ::new(BigRational::zero(), BigRational::new((-1).into(), 2.into()));
                Ok(e.sub(&e.conj()).scale(&k))
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

fn constant_of(p: &MixedPoly) -> Option<GQ> {
    match p.terms().len() {
        0 => Some(GQ::zero()),
        1 => {
            let (e, c) = p.terms().iter().next().unwrap();
            (e.alpha.is_zero() && e.beta.is_zero()).then(|| c.clone())
        }
        _ => None,
    }
}

fn parse_with(src: &str, vars: Vars, n: usize) -> Result<MixedPoly> {
    let toks = tokenize(src, vars)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        n,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.here(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses an arbitrary polynomial in `z1..zn`, `~z1..~zn`.
pub fn mixed_from_text(src: &str, n: usize) -> Result<MixedPoly> {
    parse_with(src, Vars::Z(n), n)
}

/// Parses a real-valued polynomial; rejects input violating conjugate symmetry.
pub fn herm_from_text(src: &str, n: usize) -> Result<HermPoly> {
    HermPoly::from_mixed(mixed_from_text(src, n)?)
}

/// Parses a holomorphic polynomial; any conjugate variable is an error.
pub fn holo_from_text(src: &str, n: usize) -> Result<HoloPoly> {
    mixed_from_text(src, n)?
        .to_holo()
        .ok_or_else(|| err(0, "expected a holomorphic polynomial (no ~z)"))
}

/// Parses a polynomial in the single variable `t` (holomorphic).
pub fn univariate_from_text(src: &str) -> Result<HoloPoly> {
    parse_with(src, Vars::T, 1)?
        .to_holo()
        .ok_or_else(|| err(0, "expected a holomorphic polynomial in t"))
}

/// Parses a constant expression such as `1/2`, `-3i` or `(1+i)/2`.
pub fn scalar_from_text(src: &str) -> Result<GQ> {
    let p = parse_with(src, Vars::Z(0), 0)?;
    constant_of(&p).ok_or_else(|| err(0, "expected a constant"))
}

/// Splits on commas that are not nested inside parentheses or bars.
pub fn split_top_level(src: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut bars = 0usize;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' => bars ^= 1,
            ',' if depth == 0 && bars == 0 => {
                out.push((start, &src[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &src[start..]));
    out
}

/// Parses a comma-separated point such as `0,0,1,0` or `1/2, i`.
pub fn point_from_text(src: &str) -> Result<Vec<GQ>> {
    split_top_level(src)
        .into_iter()
        .map(|(off, s)| {
            scalar_from_text(s).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + off, msg },
                other => other,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{BiExponent, Exponent};

    fn be(a: &[u32], b: &[u32]) -> BiExponent {
        BiExponent::new(Exponent(a.to_vec()), Exponent(b.to_vec()))
    }

    #[test]
    fn single_square() {
        let r = herm_from_text("|z1|^2", 1).unwrap();
        assert_eq!(r.terms().len(), 1);
        assert_eq!(r.coeff(&be(&[1], &[1])), GQ::from_int(1));
    }

    #[test]
    fn zero_polynomial() {
        let r = herm_from_text("0", 2).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.nvars(), 2);
    }

    #[test]
    fn example_hypersurface() {
        let r = herm_from_text("Re(z4) + |z1^2 - z2*z3|^2 + |z2|^4", 4).unwrap();
        assert_eq!(r.coeff(&be(&[0, 0, 0, 1], &[0, 0, 0, 0])), GQ::half());
        assert_eq!(r.coeff(&be(&[0, 0, 0, 0], &[0, 0, 0, 1])), GQ::half());
        assert_eq!(r.coeff(&be(&[2, 0, 0, 0], &[2, 0, 0, 0])), GQ::from_int(1));
        assert_eq!(r.coeff(&be(&[2, 0, 0, 0], &[0, 1, 1, 0])), GQ::from_int(-1));
        assert_eq!(r.coeff(&be(&[0, 1, 1, 0], &[0, 1, 1, 0])), GQ::from_int(1));
        assert_eq!(r.coeff(&be(&[0, 2, 0, 0], &[0, 2, 0, 0])), GQ::from_int(1));
        assert_eq!(r.terms().len(), 7);
    }

    #[test]
    fn rationals_imaginary_and_implicit_products() {
        let p = mixed_from_text("1/2 z1 + 3i*~z2 - (1+i)/2", 2).unwrap();
        assert_eq!(p.coeff(&be(&[1, 0], &[0, 0])), GQ::half());
        assert_eq!(p.coeff(&be(&[0, 0], &[0, 1])), GQ::from_parts(0, 3));
        assert_eq!(p.coeff(&be(&[0, 0], &[0, 0])), GQ::new(BigRational::new((-1).into(), 2.into()), BigRational::new((-1).into(), 2.into())));
    }

    #[test]
    fn symmetry_violation_lists_pairs() {
        match herm_from_text("z1*~z2", 2) {
            Err(Error::SymmetryViolation { pairs }) => {
                assert_eq!(pairs, vec![(vec![1, 0], vec![0, 1])]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = herm_from_text("z1 + z5", 2).unwrap_err();
        assert_eq!(e, Error::Parse { pos: 5, msg: "variable z5 out of range 1..=2".into() });
        assert!(matches!(herm_from_text("|z1|^3", 1), Err(Error::Parse { .. })));
        assert!(matches!(herm_from_text("z1 +", 1), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(herm_from_text("z1 / z1", 1), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(herm_from_text("(z1", 1), Err(Error::Parse { .. })));
        assert!(matches!(herm_from_text("z1 $", 1), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn points_and_curves() {
        let p = point_from_text("0, 1/2, -i, (1+2i)/3").unwrap();
        assert_eq!(p[1], GQ::half());
        assert_eq!(p[2], -GQ::i());
        assert_eq!(p[3], GQ::new(BigRational::new(1.into(), 3.into()), BigRational::new(2.into(), 3.into())));
        let c = univariate_from_text("t^2 - 3t").unwrap();
        assert_eq!(c.order(), Some(1));
        assert!(point_from_text("0, z1").is_err());
    }

    #[test]
    fn re_and_im_are_real() {
        let r = herm_from_text("Re(i*z1^2) + Im(z1*z2)", 2).unwrap();
        assert_eq!(r.terms().len(), 4);
    }
}
