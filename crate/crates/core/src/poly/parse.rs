//! Parser for the polynomial text format.
//!
//! Accepts everything the renderer emits plus the looser notation found in
//! hand transcriptions: implicit multiplication (`2p^3`, `(p+1)(q+1)`,
//! `pq^3X^8`), braced exponents (`X^{10}`) and subscripted variables
//! (`X_1`, `X_{2}`). Variables are `p`, `q`, `X` (rank 1) and `X1..Xr`.
//! Lines starting with `#` are comments.

use num_bigint::BigInt;

use super::pq::PolyPQ;
use super::xpoly::PolyX;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    P,
    Q,
    X(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn strip_comments(src: &str) -> String {
    src.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().map_err(|_| err(start, "bad number"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            b'p' => out.push((start, Tok::P)),
            b'q' => out.push((start, Tok::Q)),
            b'X' => {
                i += 1;
                let mut j = i;
                if j < bytes.len() && bytes[j] == b'_' {
                    j += 1;
                }
                let braced = j < bytes.len() && bytes[j] == b'{' && i != j;
                if braced {
                    j += 1;
                }
                let ds = j;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if ds == j {
                    if i != ds {
                        return Err(err(start, "expected index after X_"));
                    }
                    out.push((start, Tok::X(0)));
                    continue;
                }
                let k: usize = src[ds..j].parse().map_err(|_| err(ds, "bad index"))?;
                if k == 0 {
                    return Err(err(ds, "variable indices start at 1"));
                }
                if braced {
                    if j >= bytes.len() || bytes[j] != b'}' {
                        return Err(err(j, "expected }"));
                    }
                    j += 1;
                }
                out.push((start, Tok::X(k)));
                i = j;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'{' => out.push((start, Tok::LBrace)),
            b'}' => out.push((start, Tok::RBrace)),
            _ => return Err(err(start, &format!("unexpected character {:?}", ch as char))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    rank: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.here(),
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyX> {
        let mut acc = PolyX::zero(self.rank);
        let mut negate = false;
        if self.eat(&Tok::Minus) {
            negate = true;
        } else {
            self.eat(&Tok::Plus);
        }
        loop {
            let t = self.term()?;
            if negate {
                acc.add_assign(&t.map_coeffs(|c| -c));
            } else {
                acc.add_assign(&t);
            }
            if self.eat(&Tok::Plus) {
                negate = false;
            } else if self.eat(&Tok::Minus) {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::P | Tok::Q | Tok::X(_) | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<PolyX> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let braced = self.eat(&Tok::LBrace);
        let neg = self.eat(&Tok::Minus);
        let n = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n
            }
            _ => return Err(self.err("expected exponent")),
        };
        if braced && !self.eat(&Tok::RBrace) {
            return Err(self.err("expected }"));
        }
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -n } else { n })
    }

    fn factor(&mut self) -> Result<PolyX> {
        let (base, is_p) = self.primary()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = self.exponent()?;
        if e < 0 {
            if !is_p {
                return Err(self.err("negative exponents are only allowed on p"));
            }
            let e = i32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(PolyX::constant(self.rank, PolyPQ::monomial(1, e, 0)));
        }
        let mut acc = PolyX::one(self.rank);
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<(PolyX, bool)> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        let r = self.rank;
        Ok(match tok {
            Tok::Num(n) => (PolyX::constant(r, PolyPQ::constant(n)), false),
            Tok::P => (PolyX::constant(r, PolyPQ::p()), true),
            Tok::Q => (PolyX::constant(r, PolyPQ::q()), false),
            Tok::X(k) => {
                let idx = match k {
                    0 if r == 1 => 0,
                    0 => {
                        self.pos -= 1;
                        return Err(self.err("bare X requires rank 1"));
                    }
                    k if k <= r => k - 1,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err("variable index exceeds rank"));
                    }
                };
                let mut e = vec![0; r];
                e[idx] = 1;
                let mut x = PolyX::zero(r);
                x.add_term(e, PolyPQ::one());
                (x, false)
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected )"));
                }
                (inner, false)
            }
            _ => {
                self.pos -= 1;
                return Err(self.err("expected a number, variable or ("));
            }
        })
    }
}

/// Parses a polynomial in `X_1..X_rank` (or `X` when `rank == 1`).
pub fn parse_polyx(src: &str, rank: usize) -> Result<PolyX> {
    let cleaned = strip_comments(src);
    let toks = lex(&cleaned)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        rank,
        end: cleaned.len(),
    };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial in `p` and `q` only.
pub fn parse_pq(src: &str) -> Result<PolyPQ> {
    let x = parse_polyx(src, 0)?;
    Ok(x.coeff(&[]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::text::{render_polyx, XNames};

    #[test]
    fn parses_rendered_forms() {
        let a = parse_polyx("1 + q*X1 - q*(q+1)*X1*X2", 2).unwrap();
        assert_eq!(render_polyx(&a, XNames::Indexed), "1 + q*X1 - q*(q+1)*X1*X2");
        let s = parse_pq("q^3 + (p+1)*q^2 + (p+1)*q + 1").unwrap();
        assert_eq!(s.to_string(), "q^3 + (p+1)*q^2 + (p+1)*q + 1");
        assert_eq!(parse_pq("-3*p^-2*q").unwrap(), PolyPQ::monomial(-3, -2, 1));
    }

    #[test]
    fn implicit_multiplication() {
        let a = parse_polyx("(7p^3 + 4)p^6X^{26} - 2(p+1)(q+1)pq^3X^8", 1).unwrap();
        let b = parse_polyx("(7*p^3+4)*p^6*X^26 - 2*(p+1)*(q+1)*p*q^3*X^8", 1).unwrap();
        assert_eq!(a, b);
        let c = parse_polyx("1+qX_1-q(q+1)X_1X_{2}", 2).unwrap();
        assert_eq!(c, parse_polyx("1 + q*X1 - q*(q+1)*X1*X2", 2).unwrap());
    }

    #[test]
    fn errors() {
        assert!(parse_pq("q^-1").is_err());
        assert!(parse_polyx("X3", 2).is_err());
        assert!(parse_polyx("X", 2).is_err());
        assert!(parse_pq("(p+1").is_err());
        assert!(parse_pq("p $ q").is_err());
        assert!(parse_pq("p q )").is_err());
    }

    #[test]
    fn comments_are_ignored() {
        let a = parse_pq("# header\nq + 1\n# trailer").unwrap();
        assert_eq!(a, &PolyPQ::q() + &PolyPQ::one());
    }
}
