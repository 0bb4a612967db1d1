//! The generating series `Q_r = sum_f sigma_a([p; f]) X^f` as an exact
//! rational function `numerator / prod (1 - p^u q^v X_k^pow)`.
//!
//! Two constructions are provided and checked against each other:
//! [`q_series_recursive`] adds one rank at a time, [`q_series_direct`] sums
//! the `2^r` sign-vector products. Denominators are kept as factor lists and
//! never expanded.

mod build;
mod json;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{render_one_minus, render_polyx, render_xpoly, PolyPQ, PolyX, XNames, XPoly};

pub use build::{build_b, q_series_direct, q_series_recursive, w_factor};
pub use json::{series_from_json, series_to_json};
pub use ops::{
    coeff_extract, coeff_extract_bounded, dirichlet_p_factor, eval_poly_series, eval_polyx,
    normalize_to_b, numerator_over_b, specialize_det,
    QSpec, DEFAULT_EXPANSION_BOUND,
};

/// `(1 - p^u q^v X_k^pow)`, `k` 1-based. `pow` is 1 except after the
/// determinant substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenFactor {
    pub k: usize,
    pub pow: u32,
    pub v: u32,
    pub u: i32,
}

impl DenFactor {
    pub fn new(u: i32, v: u32, k: usize) -> Self {
        DenFactor { k, pow: 1, v, u }
    }

    pub fn with_pow(u: i32, v: u32, k: usize, pow: u32) -> Self {
        DenFactor { k, pow, v, u }
    }

    fn x_name(&self, names: XNames) -> String {
        let x = names.name(self.k);
        if self.pow == 1 {
            x
        } else {
            format!("{}^{}", x, self.pow)
        }
    }

    pub fn render(&self, names: XNames) -> String {
        render_one_minus(self.u, self.v, &self.x_name(names))
    }
}

/// Multiset of factors, kept as counts.
pub type FactorSet = BTreeMap<DenFactor, usize>;

pub fn factor_set(factors: &[DenFactor]) -> FactorSet {
    let mut m = FactorSet::new();
    for f in factors {
        *m.entry(*f).or_insert(0) += 1;
    }
    m
}

fn factor_list(set: &FactorSet) -> Vec<DenFactor> {
    set.iter().flat_map(|(f, &n)| std::iter::repeat(*f).take(n)).collect()
}

/// Largest multiplicity per factor. Distinct triples are distinct
/// irreducibles, so this is the least common multiple.
pub fn factor_lcm(a: &FactorSet, b: &FactorSet) -> FactorSet {
    let mut out = a.clone();
    for (f, &n) in b {
        let e = out.entry(*f).or_insert(0);
        *e = (*e).max(n);
    }
    out
}

/// Factors of `whole` not accounted for by `part`; `None` if `part` does not
/// divide `whole`.
pub fn factor_cofactor(whole: &FactorSet, part: &FactorSet) -> Option<Vec<DenFactor>> {
    let mut out = Vec::new();
    for (f, &n) in part {
        if whole.get(f).copied().unwrap_or(0) < n {
            return None;
        }
    }
    for (f, &n) in whole {
        let have = part.get(f).copied().unwrap_or(0);
        out.extend(std::iter::repeat(*f).take(n - have));
    }
    Some(out)
}

/// Multiplies by `(1 - p^u q^v X_k^pow)`.
pub(crate) fn polyx_mul_factor(x: &PolyX, f: &DenFactor) -> PolyX {
    if f.pow == 1 {
        return x.mul_one_minus(f.u, f.v, f.k);
    }
    let mut out = x.clone();
    for (e, c) in x.terms() {
        let mut e2 = e.clone();
        e2[f.k - 1] += f.pow;
        out.add_term(e2, -c.mul_monomial(f.u, f.v));
    }
    out
}

pub(crate) fn xpoly_mul_factor(x: &XPoly, f: &DenFactor) -> XPoly {
    if f.pow == 1 {
        return x.mul_one_minus(f.u, f.v, f.k);
    }
    let mono = PolyPQ::monomial(-BigInt::one(), f.u, f.v);
    let mut out = x.clone();
    for (e, c) in x.terms() {
        let mut e2 = e.clone();
        e2[f.k - 1] += f.pow;
        out.add_term(e2, c.scale_poly(&mono));
    }
    out
}

/// Numerator over a multiset of [`DenFactor`]s.
#[derive(Clone, Debug)]
pub struct SeriesRat {
    rank: usize,
    num: XPoly,
    den: FactorSet,
}

impl SeriesRat {
    pub fn new(num: XPoly, den: &[DenFactor]) -> Self {
        SeriesRat {
            rank: num.rank(),
            num,
            den: factor_set(den),
        }
    }

    pub fn from_parts(num: XPoly, den: FactorSet) -> Self {
        SeriesRat {
            rank: num.rank(),
            num,
            den,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &FactorSet {
        &self.den
    }

    pub fn den_factors(&self) -> Vec<DenFactor> {
        factor_list(&self.den)
    }

    /// Numerator rewritten over `target`, which must be a multiple of the
    /// current denominator.
    pub fn num_over(&self, target: &FactorSet) -> Option<XPoly> {
        let extra = factor_cofactor(target, &self.den)?;
        Some(extra.iter().fold(self.num.clone(), |acc, f| xpoly_mul_factor(&acc, f)))
    }

    /// Equality by cross-multiplication over the common denominator.
    pub fn equals(&self, other: &SeriesRat) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let common = factor_lcm(&self.den, &other.den);
        let a = self.num_over(&common).expect("lcm is a multiple");
        let b = other.num_over(&common).expect("lcm is a multiple");
        a.equals(&b)
    }

    pub fn render(&self, names: XNames) -> String {
        let den: Vec<String> = self.den_factors().iter().map(|f| f.render(names)).collect();
        format!("({}) / ({})", render_xpoly(&self.num, names), den.join("*"))
    }
}

impl PartialEq for SeriesRat {
    fn eq(&self, other: &SeriesRat) -> bool {
        self.equals(other)
    }
}

/// A polynomial numerator over a denominator factor list, e.g. `A_r / B_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySeries {
    pub num: PolyX,
    pub den: Vec<DenFactor>,
}

impl PolySeries {
    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn to_series(&self) -> SeriesRat {
        SeriesRat::new(XPoly::from(self.num.clone()), &self.den)
    }

    pub fn render_factors(&self, names: XNames) -> String {
        self.den.iter().map(|f| f.render(names)).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = if self.rank() == 1 { XNames::Single } else { XNames::Indexed };
        write!(f, "{}", render_polyx(&self.num, names))
    }
}
