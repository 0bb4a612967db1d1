//! The two constructions of `Q_r`.

use rayon::prelude::*;

use super::{factor_cofactor, factor_lcm, factor_set, polyx_mul_factor, DenFactor, FactorSet, SeriesRat};
use crate::error::Result;
use crate::poly::{PolyPQ, PolyX, ShiftedDen, XPoly};

/// Scalar and `X`-factor of one sign at parameter shift `c` (so `p^a`
/// reads `q p^c`):
/// `+1 -> -1 / (q p^c - 1)` with `(1 - X)`,
/// `-1 -> q p^c / (q p^c - 1)` with `(1 - q p^c X)`.
///
/// Returns `(scalar numerator, shift of the denominator, (u, v))` where the
/// `X`-factor is `(1 - p^u q^v X)`.
pub fn w_factor(eps: i32, c: i32) -> (PolyPQ, i32, (i32, u32)) {
    assert!(eps == 1 || eps == -1, "sign must be +1 or -1");
    if eps == 1 {
        (PolyPQ::constant(-1), c, (0, 0))
    } else {
        (PolyPQ::monomial(1, c, 1), c, (c, 1))
    }
}

/// `B_r = prod_t prod_{j=0}^{r-t+1} (1 - q^j p^{(r-t+1) j - j^2} X_t)`.
pub fn build_b(r: usize) -> Vec<DenFactor> {
    let mut out = Vec::new();
    for t in 1..=r {
        let w = (r - t + 1) as i32;
        for j in 0..=w {
            out.push(DenFactor::new(w * j - j * j, j as u32, t));
        }
    }
    out
}

/// Adds one rank at a time, starting from `Q_0 = 1`:
///
/// `(q - 1) Q_r = q Q^-_{r-1} / (1 - q X_r) - Q^+_{r-1} / (1 - X_r)`
///
/// where `Q^+` substitutes `q -> qp` and `Q^-` substitutes `q -> q/p`
/// followed by `X_i -> q p^{r-i} X_i`. The numerator stays polynomial: each
/// step divides every coefficient exactly by `q - 1`.
pub fn q_series_recursive(r: usize) -> Result<SeriesRat> {
    let mut num = PolyX::one(0);
    let mut den: Vec<DenFactor> = Vec::new();
    let q_minus_one = PolyPQ::shifted_q_minus_one(0);
    for rank in 1..=r {
        let rk = rank as i32;

        let plus_num = num.map_coeffs(|c| c.shift_q(1)).extend_rank(rank);
        let mut plus_den: Vec<DenFactor> =
            den.iter().map(|f| DenFactor::new(f.u + f.v as i32, f.v, f.k)).collect();
        plus_den.push(DenFactor::new(0, 0, rank));

        let mut minus_num = PolyX::zero(rank);
        for (e, c) in num.terms() {
            let deg: u32 = e.iter().sum();
            let weight: i32 = e.iter().enumerate().map(|(i, &g)| g as i32 * (rk - 1 - i as i32)).sum();
            let mut e2 = e.clone();
            e2.push(0);
            minus_num.add_term(e2, c.shift_q(-1).mul_monomial(weight, deg + 1));
        }
        let mut minus_den: Vec<DenFactor> = den
            .iter()
            .map(|f| DenFactor::new(f.u - f.v as i32 + rk - f.k as i32, f.v + 1, f.k))
            .collect();
        minus_den.push(DenFactor::new(0, 1, rank));

        let plus_set = factor_set(&plus_den);
        let minus_set = factor_set(&minus_den);
        let union = factor_lcm(&plus_set, &minus_set);
        let lift = |n: &PolyX, s: &FactorSet| {
            factor_cofactor(&union, s)
                .expect("lcm is a multiple")
                .iter()
                .fold(n.clone(), |acc, f| polyx_mul_factor(&acc, f))
        };
        let mut combined = lift(&minus_num, &minus_set);
        let plus_lifted = lift(&plus_num, &plus_set);
        for (e, c) in plus_lifted.terms() {
            combined.add_term(e.clone(), -c);
        }
        num = combined.try_map_coeffs(|c| c.divide_exact(&q_minus_one))?;
        den = super::factor_list(&union);
    }
    Ok(SeriesRat::new(XPoly::from(num), &den))
}

struct SignTerm {
    scalar: PolyPQ,
    shifts: ShiftedDen,
    factors: Vec<DenFactor>,
}

fn sign_term(r: usize, signs: u32) -> SignTerm {
    let star = |t: usize| (signs >> t) & 1;
    let eps = |t: usize| 1 - 2 * star(t) as i32;
    let mut scalar = PolyPQ::one();
    let mut shifts = Vec::with_capacity(r);
    let mut factors = Vec::with_capacity(r);
    let mut tail_eps = 0i32;
    let mut tail_star = 0i32;
    for t in (0..r).rev() {
        let (s_num, s_shift, _) = w_factor(eps(t), tail_eps);
        scalar = &scalar * &s_num;
        shifts.push(s_shift);
        tail_star += star(t) as i32;
        let w = (r - t) as i32;
        factors.push(DenFactor::new(w * tail_star - tail_star * tail_star, tail_star as u32, t + 1));
        tail_eps += eps(t);
    }
    SignTerm {
        scalar,
        shifts: ShiftedDen::from_shifts(&shifts),
        factors,
    }
}

/// Sum of the `2^r` sign-vector products, each
/// `prod_t [-eps_t q^{eps*_t} p^{eps*_t c_t} / (q p^{c_t} - 1)] / (1 - q^{s_t} p^{(r-t+1) s_t - s_t^2} X_t)`
/// with `c_t = sum_{h>t} eps_h`, `s_t = sum_{h>=t} eps*_h`.
///
/// The result's coefficients are fractions over the product of the scalar
/// denominators; they are not reduced here.
pub fn q_series_direct(r: usize) -> Result<SeriesRat> {
    let terms: Vec<SignTerm> = (0..1u32 << r).into_par_iter().map(|s| sign_term(r, s)).collect();
    let mut shifts = ShiftedDen::default();
    let mut union = FactorSet::new();
    for t in &terms {
        shifts.absorb(&t.shifts);
        union = factor_lcm(&union, &factor_set(&t.factors));
    }
    let num = terms
        .par_iter()
        .map(|t| {
            let scalar = &t.scalar * &shifts.cofactor(&t.shifts);
            factor_cofactor(&union, &factor_set(&t.factors))
                .expect("lcm is a multiple")
                .iter()
                .fold(PolyX::constant(r, scalar), |acc, f| polyx_mul_factor(&acc, f))
        })
        .reduce(
            || PolyX::zero(r),
            |mut a, b| {
                a.add_assign(&b);
                a
            },
        );
    let num = XPoly::from_polyx(&num, &shifts.expand())?;
    Ok(SeriesRat::from_parts(num, union))
}
