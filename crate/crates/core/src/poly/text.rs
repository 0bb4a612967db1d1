//! Human-readable rendering.
//!
//! `PolyPQ` values are grouped by descending power of `q`, e.g.
//! `q^3 + (p+1)*q^2 + (p+1)*q + 1`. Polynomials in `X` list monomials by
//! ascending total degree and pull the sign, integer content and monomial
//! content out of each coefficient, e.g. `1 + q*X1 - q*(q+1)*X1*X2`.
//! Output is deterministic: it only depends on the canonical term order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::pq::{Monomial, PolyPQ};
use super::rat::RatPQ;
use super::xpoly::{PolyX, XPoly};

/// How `X` variables are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XNames {
    /// `X1`, `X2`, ...
    Indexed,
    /// A single variable `X` (rank 1 only).
    Single,
}

impl XNames {
    pub fn name(self, k: usize) -> String {
        match self {
            XNames::Indexed => format!("X{}", k),
            XNames::Single => "X".to_string(),
        }
    }
}

fn pow_str(var: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{}^{}", var, e)),
    }
}

/// `|c| * p^u * q^v` with unit factors elided; `"1"` when nothing is left.
fn mono_body(abs_c: &BigInt, m: Monomial) -> String {
    let mut parts = Vec::new();
    if !abs_c.is_one() {
        parts.push(abs_c.to_string());
    }
    parts.extend(pow_str("p", m.p as i64));
    parts.extend(pow_str("q", m.q as i64));
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn join_signed(items: Vec<(bool, String)>, spaced: bool) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in items.into_iter().enumerate() {
        match (i, neg, spaced) {
            (0, false, _) => {}
            (0, true, _) => out.push('-'),
            (_, false, true) => out.push_str(" + "),
            (_, true, true) => out.push_str(" - "),
            (_, false, false) => out.push('+'),
            (_, true, false) => out.push('-'),
        }
        out.push_str(&body);
    }
    out
}

/// Renders a polynomial grouped by descending `q` power. `spaced` puts
/// spaces around the top-level `+`/`-`.
pub fn render_pq(poly: &PolyPQ, spaced: bool) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut groups: Vec<(u32, Vec<(i32, BigInt)>)> = Vec::new();
    for (m, c) in poly.terms().rev() {
        match groups.last_mut() {
            Some((v, items)) if *v == m.q => items.push((m.p, c.clone())),
            _ => groups.push((m.q, vec![(m.p, c.clone())])),
        }
    }
    let items = groups
        .into_iter()
        .map(|(v, ps)| {
            if ps.len() == 1 {
                let (u, c) = &ps[0];
                (c.is_negative(), mono_body(&c.abs(), Monomial::new(*u, v)))
            } else {
                let neg = ps[0].1.is_negative();
                let inner = join_signed(
                    ps.iter()
                        .map(|(u, c)| {
                            let c = if neg { -c } else { c.clone() };
                            (c.is_negative(), mono_body(&c.abs(), Monomial::new(*u, 0)))
                        })
                        .collect(),
                    false,
                );
                let body = match pow_str("q", v as i64) {
                    Some(qs) => format!("({})*{}", inner, qs),
                    None => format!("({})", inner),
                };
                (neg, body)
            }
        })
        .collect();
    join_signed(items, spaced)
}

/// Splits a coefficient into sign and a factored body `g*p^u*q^v*(rest)`.
fn factored_coeff(c: &PolyPQ) -> (bool, String) {
    let (lead_m, lead_c) = c.leading().expect("nonzero coefficient");
    let neg = lead_c.is_negative();
    if c.len() == 1 {
        return (neg, mono_body(&lead_c.abs(), *lead_m));
    }
    let content = c.content();
    let shift = Monomial::new(c.min_p().unwrap(), c.min_q().unwrap());
    let signed = if neg { -content.clone() } else { content.clone() };
    let rest = c
        .div_integer(&signed)
        .expect("content divides")
        .mul_monomial(-shift.p, 0)
        .div_q_power(shift.q);
    let mut parts = Vec::new();
    let head = mono_body(&content, shift);
    if head != "1" {
        parts.push(head);
    }
    let inner = render_pq(&rest, false);
    // a rest without q is already rendered as one parenthesised group
    if rest.q_degree() == Some(0) {
        parts.push(inner);
    } else {
        parts.push(format!("({})", inner));
    }
    (neg, parts.join("*"))
}

fn x_part(exps: &[u32], names: XNames) -> Option<String> {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter_map(|(i, &g)| pow_str(&names.name(i + 1), g as i64))
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

fn term(neg: bool, coeff: String, exps: &[u32], names: XNames) -> (bool, String) {
    let body = match x_part(exps, names) {
        None => coeff,
        Some(x) if coeff == "1" => x,
        Some(x) => format!("{}*{}", coeff, x),
    };
    (neg, body)
}

fn sorted_keys<'a, I, T>(it: I) -> Vec<(&'a Vec<u32>, &'a T)>
where
    I: Iterator<Item = (&'a Vec<u32>, &'a T)>,
    T: 'a,
{
    let mut v: Vec<_> = it.collect();
    v.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    v
}

pub fn render_polyx(poly: &PolyX, names: XNames) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let items = sorted_keys(poly.terms())
        .into_iter()
        .map(|(e, c)| {
            let (neg, body) = factored_coeff(c);
            term(neg, body, e, names)
        })
        .collect();
    join_signed(items, true)
}

pub fn render_rat(r: &RatPQ, spaced: bool) -> String {
    if r.is_polynomial() {
        render_pq(r.num(), spaced)
    } else {
        format!("({})/({})", render_pq(r.num(), false), render_pq(r.den(), false))
    }
}

pub fn render_xpoly(poly: &XPoly, names: XNames) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let items = sorted_keys(poly.terms())
        .into_iter()
        .map(|(e, c)| {
            if c.is_polynomial() {
                let (neg, body) = factored_coeff(c.num());
                term(neg, body, e, names)
            } else {
                term(false, format!("({})", render_rat(c, false)), e, names)
            }
        })
        .collect();
    join_signed(items, true)
}

/// `(1 - p^u*q^v*X)` style factor.
pub fn render_one_minus(u: i32, v: u32, x: &str) -> String {
    let m = mono_body(&BigInt::one(), Monomial::new(u, v));
    if m == "1" {
        format!("(1 - {})", x)
    } else {
        format!("(1 - {}*{})", m, x)
    }
}

impl fmt::Display for PolyPQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_pq(self, true))
    }
}

impl fmt::Display for RatPQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rat(self, true))
    }
}
