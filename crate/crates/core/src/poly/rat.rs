//! Fractions of [`PolyPQ`] values.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::pq::PolyPQ;
use crate::error::{Error, Result};

/// `num / den` with content normalisation only.
///
/// Normal form: the integer contents of `num` and `den` are coprime, `den`
/// has no negative power of `p` and its lowest `p` power is `p^0`, common
/// powers of `q` are removed, and the leading term of `den` is positive.
/// Two fractions may be equal without being structurally identical, so
/// `PartialEq` compares by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatPQ {
    num: PolyPQ,
    den: PolyPQ,
}

impl RatPQ {
    pub fn new(num: PolyPQ, den: PolyPQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatPQ { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn zero() -> Self {
        RatPQ::from_poly(PolyPQ::zero())
    }

    pub fn one() -> Self {
        RatPQ::from_poly(PolyPQ::one())
    }

    pub fn from_poly(num: PolyPQ) -> Self {
        RatPQ {
            num,
            den: PolyPQ::one(),
        }
    }

    pub fn num(&self) -> &PolyPQ {
        &self.num
    }

    pub fn den(&self) -> &PolyPQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolyPQ::one();
            return;
        }
        // p is a unit: move the lowest p power of den onto num.
        let shift = self.den.min_p().unwrap_or(0);
        if shift != 0 {
            self.num = self.num.mul_monomial(-shift, 0);
            self.den = self.den.mul_monomial(-shift, 0);
        }
        let common_q = self.num.min_q().unwrap_or(0).min(self.den.min_q().unwrap_or(0));
        if common_q > 0 {
            self.num = self.num.div_q_power(common_q);
            self.den = self.den.div_q_power(common_q);
        }
        let mut g = self.num.content().gcd(&self.den.content());
        if self.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_one() {
            self.num = self.num.div_integer(&g).expect("content divides");
            self.den = self.den.div_integer(&g).expect("content divides");
        }
    }

    /// Certifies that the fraction is a polynomial with integer coefficients
    /// and returns it.
    pub fn to_poly(&self) -> Result<PolyPQ> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        let content = self.den.content();
        let primitive = self.den.div_integer(&content).expect("content divides");
        let quotient = self.num.divide_exact(&primitive)?;
        quotient.div_integer(&content).ok_or_else(|| {
            Error::NonIntegerCoefficient(format!("({}) / {}", quotient, content))
        })
    }

    pub fn eval(&self, p: &BigRational, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(p, q)?;
        if d.is_zero() {
            return Err(Error::PoleHit(format!("{}", self.den)));
        }
        Ok(self.num.eval(p, q)? / d)
    }

    pub fn scale_poly(&self, k: &PolyPQ) -> RatPQ {
        let mut r = RatPQ {
            num: &self.num * k,
            den: self.den.clone(),
        };
        r.normalize();
        r
    }

    pub fn shift_q(&self, d: i32) -> RatPQ {
        let mut r = RatPQ {
            num: self.num.shift_q(d),
            den: self.den.shift_q(d),
        };
        r.normalize();
        r
    }

    pub fn at_q_one(&self) -> Result<RatPQ> {
        RatPQ::new(self.num.at_q_one(), self.den.at_q_one())
    }

    pub fn recip(&self) -> Result<RatPQ> {
        RatPQ::new(self.den.clone(), self.num.clone())
    }

    pub fn scale_integer(&self, c: &BigInt) -> RatPQ {
        let mut r = RatPQ {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        r.normalize();
        r
    }
}

impl PartialEq for RatPQ {
    fn eq(&self, other: &RatPQ) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatPQ {
    type Output = RatPQ;
    fn add(self, rhs: &RatPQ) -> RatPQ {
        if self.den == rhs.den {
            let mut r = RatPQ {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
            r.normalize();
            return r;
        }
        // Keep the larger denominator when one divides the other.
        if let Ok(k) = self.den.divide_exact(&rhs.den) {
            let mut r = RatPQ {
                num: &self.num + &(&rhs.num * &k),
                den: self.den.clone(),
            };
            r.normalize();
            return r;
        }
        if let Ok(k) = rhs.den.divide_exact(&self.den) {
            let mut r = RatPQ {
                num: &(&self.num * &k) + &rhs.num,
                den: rhs.den.clone(),
            };
            r.normalize();
            return r;
        }
        let mut r = RatPQ {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        };
        r.normalize();
        r
    }
}

impl Neg for &RatPQ {
    type Output = RatPQ;
    fn neg(self) -> RatPQ {
        RatPQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatPQ {
    type Output = RatPQ;
    fn sub(self, rhs: &RatPQ) -> RatPQ {
        self + &(-rhs)
    }
}

impl Mul for &RatPQ {
    type Output = RatPQ;
    fn mul(self, rhs: &RatPQ) -> RatPQ {
        let mut r = RatPQ {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        };
        r.normalize();
        r
    }
}

impl Zero for RatPQ {
    fn zero() -> Self {
        RatPQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatPQ {
    type Output = RatPQ;
    fn add(self, rhs: RatPQ) -> RatPQ {
        &self + &rhs
    }
}

impl From<PolyPQ> for RatPQ {
    fn from(p: PolyPQ) -> Self {
        RatPQ::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> PolyPQ {
        PolyPQ::q()
    }
    fn c(x: i64) -> PolyPQ {
        PolyPQ::constant(x)
    }

    #[test]
    fn additive_inverse() {
        let a = RatPQ::new(&q() + &PolyPQ::p(), &q() - &c(3)).unwrap();
        let z = &a + &(-&a);
        assert!(z.is_zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn opposite_sign_denominators_cancel() {
        let a = RatPQ::new(c(1), &q() - &c(1)).unwrap();
        let b = RatPQ::new(c(1), &c(1) - &q()).unwrap();
        // 1/(1-q) normalises to -1/(q-1)
        assert_eq!(b.den(), &(&q() - &c(1)));
        assert_eq!(b.num(), &c(-1));
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn normal_form() {
        // (2 p^-1 q^2) / (4 p^-2 q - 2 p^-2 q^2)
        let num = PolyPQ::monomial(2, -1, 2);
        let den = &PolyPQ::monomial(4, -2, 1) - &PolyPQ::monomial(2, -2, 2);
        let r = RatPQ::new(num, den).unwrap();
        assert_eq!(r.den(), &(&q() - &c(2)));
        assert_eq!(r.num(), &PolyPQ::monomial(-1, 1, 1));
        assert!(RatPQ::new(c(1), PolyPQ::zero()).is_err());
    }

    #[test]
    fn equality_is_semantic() {
        let a = RatPQ::new(&q() + &c(1), &q().pow(2) - &c(1)).unwrap();
        let b = RatPQ::new(c(1), &q() - &c(1)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, RatPQ::one());
    }

    #[test]
    fn to_poly_checks_integrality() {
        let a = RatPQ::new(&q().pow(2) - &c(1), &q() - &c(1)).unwrap();
        assert_eq!(a.to_poly().unwrap(), &q() + &c(1));
        let half = RatPQ::new(&q() - &c(1), &q().scale(&2.into()) - &c(2)).unwrap();
        assert!(matches!(half.to_poly(), Err(Error::NonIntegerCoefficient(_))));
        let non_int = RatPQ::new(&q() + &c(1), c(2)).unwrap();
        assert!(matches!(non_int.to_poly(), Err(Error::NonIntegerCoefficient(_))));
        let not_div = RatPQ::new(c(1), &q() + &c(1)).unwrap();
        assert!(matches!(not_div.to_poly(), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn mul_and_eval() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let a = RatPQ::new(q(), &q() - &c(1)).unwrap();
        let b = RatPQ::new(&q() - &c(1), &q() + &c(1)).unwrap();
        let ab = &a * &b;
        assert_eq!(ab, RatPQ::new(q(), &q() + &c(1)).unwrap());
        assert_eq!(ab.eval(&r(2, 1), &r(3, 1)).unwrap(), r(3, 4));
        assert!(matches!(a.eval(&r(2, 1), &r(1, 1)), Err(Error::PoleHit(_))));
    }
}
