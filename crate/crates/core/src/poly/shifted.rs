//! Denominators built from factors `q p^c - 1`.
//!
//! Every scalar denominator produced by the sign-vector formulas is a
//! product of such factors with distinct irreducible shapes for distinct
//! `c`, so a least common multiple is just the largest multiplicity per
//! shift. This keeps summed fractions from blowing up without a general
//! multivariate gcd.

use std::collections::BTreeMap;

use super::pq::PolyPQ;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftedDen {
    mult: BTreeMap<i32, usize>,
}

impl ShiftedDen {
    pub fn from_shifts(shifts: &[i32]) -> Self {
        let mut mult = BTreeMap::new();
        for &c in shifts {
            *mult.entry(c).or_insert(0) += 1;
        }
        ShiftedDen { mult }
    }

    /// Raises multiplicities so that `other` divides `self`.
    pub fn absorb(&mut self, other: &ShiftedDen) {
        for (&c, &m) in &other.mult {
            let e = self.mult.entry(c).or_insert(0);
            *e = (*e).max(m);
        }
    }

    /// Expanded product of `self / other`; `other` must divide `self`.
    pub fn cofactor(&self, other: &ShiftedDen) -> PolyPQ {
        let mut out = PolyPQ::one();
        for (&c, &m) in &self.mult {
            let have = other.mult.get(&c).copied().unwrap_or(0);
            assert!(have <= m, "cofactor of a non-divisor");
            for _ in have..m {
                out = &out * &PolyPQ::shifted_q_minus_one(c);
            }
        }
        out
    }

    pub fn expand(&self) -> PolyPQ {
        self.cofactor(&ShiftedDen::default())
    }

    pub fn degree(&self) -> usize {
        self.mult.values().sum()
    }
}
