//! Sparse Laurent polynomials in `p` with polynomial dependence on `q`.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exponent pair of a monomial `p^p * q^q`.
///
/// Field order fixes the canonical term order: lexicographic in `(q, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: u32,
    pub p: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, p: 0 };

    pub fn new(p: i32, q: u32) -> Self {
        Monomial { q, p }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            q: self.q + other.q,
            p: self.p + other.p,
        }
    }
}

/// Element of `Z[p, 1/p, q]`.
///
/// No stored coefficient is zero, so the zero polynomial is the empty map
/// and structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyPQ {
    terms: BTreeMap<Monomial, BigInt>,
}

impl PolyPQ {
    pub fn zero() -> Self {
        PolyPQ::default()
    }

    pub fn one() -> Self {
        PolyPQ::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        PolyPQ::monomial(c, 0, 0)
    }

    /// `c * p^p_exp * q^q_exp`
    pub fn monomial(c: impl Into<BigInt>, p_exp: i32, q_exp: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(p_exp, q_exp), c);
        }
        PolyPQ { terms }
    }

    pub fn p() -> Self {
        PolyPQ::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        PolyPQ::monomial(1, 0, 1)
    }

    /// `q * p^c - 1`
    pub fn shifted_q_minus_one(c: i32) -> Self {
        PolyPQ::from_terms([(Monomial::new(c, 1), BigInt::one()), (Monomial::ONE, -BigInt::one())])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut out = PolyPQ::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending `(q, p)`) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, p_exp: i32, q_exp: u32) -> BigInt {
        self.terms
            .get(&Monomial::new(p_exp, q_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Highest term in canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn q_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.q)
    }

    pub fn min_q(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.q).min()
    }

    pub fn min_p(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.p).min()
    }

    pub fn max_p(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.p).max()
    }

    /// gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The coefficient of `q^v`, a Laurent polynomial in `p` alone.
    pub fn q_coefficient(&self, v: u32) -> PolyPQ {
        PolyPQ {
            terms: self
                .terms
                .range(Monomial::new(i32::MIN, v)..=Monomial::new(i32::MAX, v))
                .map(|(m, c)| (Monomial::new(m.p, 0), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> PolyPQ {
        if c.is_zero() {
            return PolyPQ::zero();
        }
        PolyPQ {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Exact division of every coefficient by an integer; `None` if some
    /// coefficient is not a multiple of `c`.
    pub fn div_integer(&self, c: &BigInt) -> Option<PolyPQ> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            let (d, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(*m, d);
        }
        Some(PolyPQ { terms })
    }

    /// Multiplies by `p^p_exp * q^q_exp`.
    pub fn mul_monomial(&self, p_exp: i32, q_exp: u32) -> PolyPQ {
        let shift = Monomial::new(p_exp, q_exp);
        PolyPQ {
            terms: self.terms.iter().map(|(m, c)| (m.times(shift), c.clone())).collect(),
        }
    }

    /// Divides by `q^k`; every term must carry at least `q^k`.
    pub fn div_q_power(&self, k: u32) -> PolyPQ {
        PolyPQ {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!(m.q >= k);
                    (Monomial::new(m.p, m.q - k), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `q -> q * p^d`, realising the parameter shift `a -> a + d`
    /// when `q = p^a`.
    pub fn shift_q(&self, d: i32) -> PolyPQ {
        PolyPQ {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.p + d * m.q as i32, m.q), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `q -> 1`.
    pub fn at_q_one(&self) -> PolyPQ {
        let mut out = PolyPQ::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(m.p, 0), c.clone());
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> PolyPQ {
        let mut base = self.clone();
        let mut acc = PolyPQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, treating both as polynomials in `q`
    /// whose coefficients are Laurent polynomials in `p`.
    pub fn divide_exact(&self, divisor: &PolyPQ) -> Result<PolyPQ> {
        let (lead_m, _) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dq = lead_m.q;
        let d_lead = divisor.q_coefficient(dq);

        // Fast path: divisor is a single monomial.
        if divisor.len() == 1 {
            let (m, c) = divisor.leading().unwrap();
            if self.terms.keys().any(|t| t.q < m.q) {
                return Err(self.not_divisible(divisor));
            }
            let mut terms = BTreeMap::new();
            for (t, x) in &self.terms {
                let (qt, r) = x.div_rem(c);
                if !r.is_zero() {
                    return Err(self.not_divisible(divisor));
                }
                terms.insert(Monomial::new(t.p - m.p, t.q - m.q), qt);
            }
            return Ok(PolyPQ { terms });
        }

        let mut rem = self.clone();
        let mut quotient = PolyPQ::zero();
        while let Some(rq) = rem.q_degree() {
            if rq < dq {
                return Err(self.not_divisible(divisor));
            }
            let r_lead = rem.q_coefficient(rq);
            let t = laurent_div_exact(&r_lead, &d_lead)
                .ok_or_else(|| self.not_divisible(divisor))?
                .mul_monomial(0, rq - dq);
            rem -= &(&t * divisor);
            quotient += &t;
        }
        Ok(quotient)
    }

    fn not_divisible(&self, divisor: &PolyPQ) -> Error {
        Error::NotDivisible(format!("({}) / ({})", self, divisor))
    }

    /// Exact evaluation at rational `p`, `q`.
    pub fn eval(&self, p: &BigRational, q: &BigRational) -> Result<BigRational> {
        if p.is_zero() && self.min_p().is_some_and(|m| m < 0) {
            return Err(Error::InvalidInput("negative power of p = 0".into()));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let term = rational_pow(p, m.p as i64) * rational_pow(q, m.q as i64);
            acc += term * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }
}

/// `x^e` for a nonzero rational when `e < 0`.
pub fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Exact division of the `p`-parts of two single-`q`-power polynomials; the
/// quotient carries `q^0`. Returns `None` when it is not in `Z[p, 1/p]`.
fn laurent_div_exact(a: &PolyPQ, b: &PolyPQ) -> Option<PolyPQ> {
    let to_p = |x: &PolyPQ| -> BTreeMap<i32, BigInt> {
        x.terms.iter().map(|(m, c)| (m.p, c.clone())).collect()
    };
    let q_exp = 0;
    let mut rem = to_p(a);
    let den = to_p(b);
    let (&b_hi, b_lead) = den.iter().next_back()?;
    let (&b_lo, _) = den.iter().next()?;
    let a_lo = *rem.keys().next()?;
    let lowest_allowed = a_lo - b_lo;

    if den.len() == 1 {
        let mut out = PolyPQ::zero();
        for (e, c) in rem {
            let (d, r) = c.div_rem(b_lead);
            if !r.is_zero() {
                return None;
            }
            out.add_term(Monomial::new(e - b_hi, q_exp), d);
        }
        return Some(out);
    }

    let mut out = PolyPQ::zero();
    while let Some((&r_hi, r_lead)) = rem.iter().next_back() {
        let shift = r_hi - b_hi;
        if shift < lowest_allowed {
            return None;
        }
        let (c, r) = r_lead.div_rem(b_lead);
        if !r.is_zero() {
            return None;
        }
        for (e, bc) in &den {
            let key = e + shift;
            let entry = rem.entry(key).or_insert_with(BigInt::zero);
            *entry -= &c * bc;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
        out.add_term(Monomial::new(shift, q_exp), c);
    }
    Some(out)
}

impl Neg for &PolyPQ {
    type Output = PolyPQ;
    fn neg(self) -> PolyPQ {
        PolyPQ {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for PolyPQ {
    type Output = PolyPQ;
    fn neg(mut self) -> PolyPQ {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&PolyPQ> for PolyPQ {
    fn add_assign(&mut self, rhs: &PolyPQ) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&PolyPQ> for PolyPQ {
    fn sub_assign(&mut self, rhs: &PolyPQ) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &PolyPQ {
    type Output = PolyPQ;
    fn add(self, rhs: &PolyPQ) -> PolyPQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PolyPQ {
    type Output = PolyPQ;
    fn sub(self, rhs: &PolyPQ) -> PolyPQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &PolyPQ {
    type Output = PolyPQ;
    fn mul(self, rhs: &PolyPQ) -> PolyPQ {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                *acc.entry(ma.times(*mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        PolyPQ { terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for PolyPQ {
            type Output = PolyPQ;
            fn $f(self, rhs: PolyPQ) -> PolyPQ {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&PolyPQ> for PolyPQ {
            type Output = PolyPQ;
            fn $f(self, rhs: &PolyPQ) -> PolyPQ {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for PolyPQ {
    fn from(c: i64) -> Self {
        PolyPQ::constant(c)
    }
}
