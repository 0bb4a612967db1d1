//! Normalisation, coefficient extraction, specialisation and evaluation.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{build_b, factor_set, PolySeries, SeriesRat};
use super::{q_series_direct, q_series_recursive, DenFactor};
use crate::error::{Error, Result};
use crate::group::is_probable_prime;
use crate::poly::{rational_pow, Exps, PolyPQ, PolyX, RatPQ};

/// Default bound on `sum_t (r - t + 1) f_t` for [`coeff_extract`].
pub const DEFAULT_EXPANSION_BOUND: u32 = 24;

/// Value of `q` in [`specialize_det`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QSpec {
    Formal,
    One,
}

/// `A_r = B_r * Q_r`, certified to have coefficients in `Z[p, q]`.
pub fn normalize_to_b(s: &SeriesRat) -> Result<PolySeries> {
    let b = build_b(s.rank());
    let over_b = s.num_over(&factor_set(&b)).ok_or_else(|| {
        Error::NotDivisible(format!("denominator of rank {} series does not divide B", s.rank()))
    })?;
    let num = over_b.to_polyx()?;
    if !num.has_polynomial_coefficients() {
        return Err(Error::NonIntegerCoefficient(
            "negative power of p in the numerator".to_string(),
        ));
    }
    Ok(PolySeries { num, den: b })
}

/// `B_r * Q_r` through the rank recursion.
pub fn numerator_over_b(r: usize) -> Result<PolySeries> {
    normalize_to_b(&q_series_recursive(r)?)
}

/// Substitutes `X_t -> X^{r-t+1}`, and `q -> 1` for [`QSpec::One`]. The
/// numerator must have polynomial coefficients.
pub fn specialize_det(s: &SeriesRat, q: QSpec) -> Result<PolySeries> {
    let r = s.rank();
    let weights: Vec<u32> = (1..=r).map(|t| (r - t + 1) as u32).collect();
    let mut num = s.num().to_polyx()?.collapse(&weights);
    if q == QSpec::One {
        num = num.at_q_one();
    }
    let den = s
        .den_factors()
        .into_iter()
        .map(|f| {
            let v = if q == QSpec::One { 0 } else { f.v };
            DenFactor::with_pow(f.u, v, 1, f.pow * weights[f.k - 1])
        })
        .collect();
    Ok(PolySeries { num, den })
}

/// Coefficient of `X^f` with the default expansion bound.
pub fn coeff_extract(s: &SeriesRat, f: &[u32]) -> Result<PolyPQ> {
    coeff_extract_bounded(s, f, DEFAULT_EXPANSION_BOUND)
}

/// Coefficient of `X^f`, expanding each denominator factor as a geometric
/// series.
pub fn coeff_extract_bounded(s: &SeriesRat, f: &[u32], bound: u32) -> Result<PolyPQ> {
    let r = s.rank();
    if f.len() != r {
        return Err(Error::InvalidInput(format!("expected {} exponents, got {}", r, f.len())));
    }
    let weight: u32 = f.iter().enumerate().map(|(i, &g)| (r - i) as u32 * g).sum();
    if weight > bound {
        return Err(Error::BudgetExceeded(format!(
            "expansion weight {} exceeds bound {}",
            weight, bound
        )));
    }
    // every exponent vector in the box [0, f], in lexicographic order
    let mut cells: Vec<Exps> = vec![Vec::new()];
    for &g in f {
        cells = cells
            .into_iter()
            .flat_map(|pre| {
                (0..=g).map(move |x| {
                    let mut e = pre.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    let mut vals: std::collections::BTreeMap<Exps, RatPQ> =
        cells.iter().map(|e| (e.clone(), s.num().coeff(e))).collect();
    for d in s.den_factors() {
        let alpha = PolyPQ::monomial(1, d.u, d.v);
        for e in &cells {
            let step = d.pow;
            if e[d.k - 1] < step {
                continue;
            }
            let mut prev = e.clone();
            prev[d.k - 1] -= step;
            let add = vals[&prev].scale_poly(&alpha);
            if add.is_zero() {
                continue;
            }
            let cur = vals.get_mut(e).unwrap();
            *cur = &*cur + &add;
        }
    }
    vals[f].to_poly()
}

fn positive_prime(p: &BigUint) -> Result<BigRational> {
    if !is_probable_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(BigRational::from_integer(BigInt::from(p.clone())))
}

/// `Q_r` at `X_t = p^{-s (r - t + 1)}`, `q = p^a`, exactly.
pub fn dirichlet_p_factor(r: usize, a: i64, p: &BigUint, s: &BigRational) -> Result<BigRational> {
    let pr = positive_prime(p)?;
    let mut xs = Vec::with_capacity(r);
    for t in 1..=r {
        let e = s * BigRational::from_integer(BigInt::from(r - t + 1));
        if !e.is_integer() {
            return Err(Error::NonIntegralPower(format!("{}^(-{}*{})", p, s, r - t + 1)));
        }
        let e = e
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("exponent too large".into()))?;
        xs.push(rational_pow(&pr, -e));
    }
    let q = rational_pow(&pr, a);
    let a_r = if r <= 4 {
        numerator_over_b(r)?
    } else {
        normalize_to_b(&q_series_direct(r)?)?
    };
    eval_poly_series(&a_r, &pr, &q, &xs)
}

/// Exact value of `num / prod factors` at the given point.
pub fn eval_poly_series(
    s: &PolySeries,
    p: &BigRational,
    q: &BigRational,
    xs: &[BigRational],
) -> Result<BigRational> {
    let mut den = BigRational::one();
    for f in &s.den {
        let x = num_traits::pow(xs[f.k - 1].clone(), f.pow as usize);
        let v = BigRational::one() - rational_pow(p, f.u as i64) * rational_pow(q, f.v as i64) * x;
        if v.is_zero() {
            return Err(Error::PoleHit(f.render(crate::poly::XNames::Indexed)));
        }
        den *= v;
    }
    Ok(eval_polyx(&s.num, p, q, xs)? / den)
}

pub fn eval_polyx(n: &PolyX, p: &BigRational, q: &BigRational, xs: &[BigRational]) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (e, c) in n.terms() {
        let mut term = c.eval(p, q)?;
        for (x, &g) in xs.iter().zip(e) {
            term *= num_traits::pow(x.clone(), g as usize);
        }
        acc += term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_pq;
    use crate::sigma::sigma_fast;

    #[test]
    fn rank_one_and_two_numerators() {
        assert_eq!(numerator_over_b(1).unwrap().num, PolyX::one(1));
        let a2 = numerator_over_b(2).unwrap().num;
        let want = crate::poly::parse_polyx("1 + q*X1 - q*(q+1)*X1*X2", 2).unwrap();
        assert_eq!(a2, want);
    }

    #[test]
    fn extraction() {
        let q2 = q_series_recursive(2).unwrap();
        assert_eq!(coeff_extract(&q2, &[1, 0]).unwrap(), parse_pq("q^2+(p+1)*q+1").unwrap());
        let q1 = q_series_recursive(1).unwrap();
        for n in 0..7 {
            assert_eq!(coeff_extract(&q1, &[n]).unwrap(), sigma_fast(&[n]).unwrap());
        }
        assert!(matches!(
            coeff_extract_bounded(&q2, &[5, 5], 12),
            Err(Error::BudgetExceeded(_))
        ));
        let d2 = q_series_direct(2).unwrap();
        assert_eq!(coeff_extract(&d2, &[2, 1]).unwrap(), sigma_fast(&[2, 1]).unwrap());
    }

    #[test]
    fn det_extraction_matches_order_sum() {
        // coefficient of X^n after X_t -> X^{r-t+1} sums sigma over shapes of order p^n
        let s = q_series_recursive(2).unwrap();
        let det = specialize_det(&s, QSpec::Formal).unwrap().to_series();
        let mut want = PolyPQ::zero();
        for f1 in 0..=2u32 {
            let f2 = 5 - 2 * f1;
            want += &sigma_fast(&[f1, f2]).unwrap();
        }
        assert_eq!(coeff_extract(&det, &[5]).unwrap(), want);
    }

    #[test]
    fn dirichlet_rank_one() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let two = BigUint::from(2u32);
        assert_eq!(dirichlet_p_factor(1, 0, &two, &r(2, 1)).unwrap(), r(16, 9));
        assert_eq!(dirichlet_p_factor(1, 1, &two, &r(3, 1)).unwrap(), r(32, 21));
        assert!(matches!(dirichlet_p_factor(1, 0, &two, &r(0, 1)), Err(Error::PoleHit(_))));
        assert!(matches!(dirichlet_p_factor(2, 0, &two, &r(1, 3)), Err(Error::NonIntegralPower(_))));
        assert!(matches!(dirichlet_p_factor(1, 0, &BigUint::from(6u32), &r(2, 1)), Err(Error::NotPrime(_))));
    }
}
