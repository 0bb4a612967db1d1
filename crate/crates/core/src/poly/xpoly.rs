//! Polynomials in `X_1..X_r` over `Z[p, 1/p, q]` ([`PolyX`]) and over the
//! fractions of that ring ([`XPoly`]).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::pq::PolyPQ;
use super::rat::RatPQ;
use crate::error::Result;

pub type Exps = Vec<u32>;

/// Polynomial in `X_1..X_rank` with [`PolyPQ`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyX {
    rank: usize,
    terms: BTreeMap<Exps, PolyPQ>,
}

impl PolyX {
    pub fn zero(rank: usize) -> Self {
        PolyX {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: PolyPQ) -> Self {
        let mut out = PolyX::zero(rank);
        out.add_term(vec![0; rank], c);
        out
    }

    pub fn one(rank: usize) -> Self {
        PolyX::constant(rank, PolyPQ::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &PolyPQ)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exps, PolyPQ)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> PolyPQ {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Exps, c: PolyPQ) {
        assert_eq!(exps.len(), self.rank, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &PolyX) {
        assert_eq!(self.rank, other.rank);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, k: &PolyPQ) -> PolyX {
        let mut out = PolyX::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &PolyX) -> PolyX {
        assert_eq!(self.rank, other.rank);
        let mut out = PolyX::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies by `(1 - p^u q^v X_k)`, `k` 1-based.
    pub fn mul_one_minus(&self, u: i32, v: u32, k: usize) -> PolyX {
        let mut out = self.clone();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k - 1] += 1;
            out.add_term(e2, -c.mul_monomial(u, v));
        }
        out
    }

    pub fn map_coeffs<F: Fn(&PolyPQ) -> PolyPQ>(&self, f: F) -> PolyX {
        let mut out = PolyX::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<F: Fn(&PolyPQ) -> Result<PolyPQ>>(&self, f: F) -> Result<PolyX> {
        let mut out = PolyX::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Appends zero exponents up to `rank`.
    pub fn extend_rank(&self, rank: usize) -> PolyX {
        assert!(rank >= self.rank);
        let mut out = PolyX::zero(rank);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.resize(rank, 0);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Substitutes `X_t -> X^{weights[t]}`, giving a rank-1 polynomial.
    pub fn collapse(&self, weights: &[u32]) -> PolyX {
        assert_eq!(weights.len(), self.rank);
        let mut out = PolyX::zero(1);
        for (e, c) in &self.terms {
            let d: u32 = e.iter().zip(weights).map(|(g, w)| g * w).sum();
            out.add_term(vec![d], c.clone());
        }
        out
    }

    /// Degree in the collapsed sense: largest total degree.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent of `p` over all coefficients.
    pub fn p_degree(&self) -> Option<i32> {
        self.terms.values().filter_map(|c| c.max_p()).max()
    }

    pub fn at_q_one(&self) -> PolyX {
        self.map_coeffs(PolyPQ::at_q_one)
    }

    /// True when every coefficient lies in `Z[p, q]` (no negative `p` powers).
    pub fn has_polynomial_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.min_p().map_or(true, |m| m >= 0))
    }
}

/// Polynomial in `X_1..X_rank` with [`RatPQ`] coefficients.
#[derive(Clone, Debug)]
pub struct XPoly {
    rank: usize,
    terms: BTreeMap<Exps, RatPQ>,
}

impl XPoly {
    pub fn zero(rank: usize) -> Self {
        XPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &RatPQ)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> RatPQ {
        self.terms.get(exps).cloned().unwrap_or_else(RatPQ::zero)
    }

    pub fn add_term(&mut self, exps: Exps, c: RatPQ) {
        assert_eq!(exps.len(), self.rank, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&exps) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(exps, merged);
        }
    }

    /// `num / den` coefficientwise.
    pub fn from_polyx(num: &PolyX, den: &PolyPQ) -> Result<XPoly> {
        let mut out = XPoly::zero(num.rank());
        for (e, c) in num.terms() {
            out.add_term(e.clone(), RatPQ::new(c.clone(), den.clone())?);
        }
        Ok(out)
    }

    /// Multiplies by `(1 - p^u q^v X_k)`, `k` 1-based.
    pub fn mul_one_minus(&self, u: i32, v: u32, k: usize) -> XPoly {
        let mono = PolyPQ::monomial(-BigInt::one(), u, v);
        let mut out = self.clone();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k - 1] += 1;
            out.add_term(e2, c.scale_poly(&mono));
        }
        out
    }

    /// Certifies every coefficient is in `Z[p, 1/p, q]`.
    pub fn to_polyx(&self) -> Result<PolyX> {
        let mut out = PolyX::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.to_poly()?);
        }
        Ok(out)
    }

    /// Coefficientwise semantic equality.
    pub fn equals(&self, other: &XPoly) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let keys: std::collections::BTreeSet<&Exps> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|e| {
            let a = self.terms.get(e);
            let b = other.terms.get(e);
            match (a, b) {
                (Some(a), Some(b)) => a == b,
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (None, None) => true,
            }
        })
    }
}

impl From<PolyX> for XPoly {
    fn from(p: PolyX) -> Self {
        let mut out = XPoly::zero(p.rank());
        for (e, c) in p.into_terms() {
            out.add_term(e, RatPQ::from_poly(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_factor_product() {
        // (1 - X1)(1 - q X1) = 1 - (1+q) X1 + q X1^2
        let a = PolyX::one(1).mul_one_minus(0, 0, 1).mul_one_minus(0, 1, 1);
        assert_eq!(a.coeff(&[0]), PolyPQ::one());
        assert_eq!(a.coeff(&[1]), -(&PolyPQ::one() + &PolyPQ::q()));
        assert_eq!(a.coeff(&[2]), PolyPQ::q());
        let b = XPoly::from(PolyX::one(1)).mul_one_minus(0, 0, 1).mul_one_minus(0, 1, 1);
        assert!(b.equals(&a.clone().into()));
    }

    #[test]
    fn collapse_weights() {
        let mut a = PolyX::zero(2);
        a.add_term(vec![1, 0], PolyPQ::q());
        a.add_term(vec![0, 2], PolyPQ::p());
        let c = a.collapse(&[2, 1]);
        assert_eq!(c.coeff(&[2]), &PolyPQ::q() + &PolyPQ::p());
        assert_eq!(c.len(), 1);
    }
}
