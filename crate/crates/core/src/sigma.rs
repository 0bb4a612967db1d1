//! The sigma polynomial `S(p, q)` with `S(p, p^a) = sigma_a(F)`, by three
//! formulas of different cost.
//!
//! - [`sigma_slow`]: two-branch recursion on the sorted exponent vector,
//!   exponential in `log_p |F|`.
//! - [`sigma_fast`]: rank recursion, one exact division by `q - 1` per rank.
//! - [`sigma_closed`]: sum over the `2^r` sign vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::Result;
use crate::group::GroupShape;
use crate::poly::{PolyPQ, ShiftedDen};

/// Two-branch recursion on exponents `e_1 <= ... <= e_r`:
/// `S(e) = q S(e with e_r lowered by one) + S(e without e_r)(q -> qp)`.
///
/// No memoisation, so the call tree has about `2^{sum e}` leaves.
pub fn sigma_slow(exponents: &[u32]) -> PolyPQ {
    let mut e = exponents.to_vec();
    e.sort_unstable();
    slow_rec(&e)
}

fn slow_rec(e: &[u32]) -> PolyPQ {
    let Some((&top, rest)) = e.split_last() else {
        return PolyPQ::one();
    };
    if top == 0 {
        return PolyPQ::one();
    }
    let mut lowered = e.to_vec();
    *lowered.last_mut().unwrap() -= 1;
    // keep sorted: move the lowered entry left past larger neighbours
    let mut i = lowered.len() - 1;
    while i > 0 && lowered[i - 1] > lowered[i] {
        lowered.swap(i - 1, i);
        i -= 1;
    }
    let mut s = slow_rec(&lowered).mul_monomial(0, 1);
    s += &slow_rec(rest).shift_q(1);
    s
}

/// Number of calls [`sigma_slow`] makes on `exponents`, counted without
/// running the recursion.
pub fn slow_call_count(exponents: &[u32]) -> u64 {
    let mut e = exponents.to_vec();
    e.sort_unstable();
    let mut memo = std::collections::HashMap::new();
    count_calls(&e, &mut memo)
}

fn count_calls(e: &[u32], memo: &mut std::collections::HashMap<Vec<u32>, u64>) -> u64 {
    let Some((&top, rest)) = e.split_last() else {
        return 1;
    };
    if top == 0 {
        return 1;
    }
    if let Some(&n) = memo.get(e) {
        return n;
    }
    let mut lowered = e.to_vec();
    *lowered.last_mut().unwrap() -= 1;
    lowered.sort_unstable();
    let n = 1 + count_calls(&lowered, memo) + count_calls(rest, memo);
    memo.insert(e.to_vec(), n);
    n
}

/// Rank recursion on the increments `f`:
/// `(q - 1) S_r = q^{l+1} p^{e_1+...+e_{r-1}} S_{r-1}(q/p) - S_{r-1}(qp)`,
/// `l = f_1 + ... + f_r`.
pub fn sigma_fast(f: &[u32]) -> Result<PolyPQ> {
    let q_minus_one = PolyPQ::shifted_q_minus_one(0);
    let mut s = PolyPQ::one();
    let mut exponent = 0u32;
    let mut order_below = 0i64;
    for &fi in f {
        exponent += fi;
        let lifted = s.shift_q(-1).mul_monomial(order_below as i32, exponent + 1);
        let num = &lifted - &s.shift_q(1);
        s = num.divide_exact(&q_minus_one)?;
        order_below += exponent as i64;
    }
    Ok(s)
}

/// One sign vector's contribution as `num / prod (q p^{c_t} - 1)`.
fn closed_term(f: &[u32], signs: u32) -> (PolyPQ, ShiftedDen) {
    let r = f.len();
    // eps_t = -1 iff bit t is set; star_t = (1 - eps_t) / 2
    let star = |t: usize| (signs >> t) & 1;
    let eps = |t: usize| 1 - 2 * star(t) as i32;
    let mut num = PolyPQ::one();
    let mut shifts = Vec::with_capacity(r);
    let mut q_exp = 0u32;
    let mut p_exp = 0i64;
    let mut tail_eps = 0i32; // sum_{h > t} eps_h
    let mut tail_star = 0u32; // sum_{h >= t} star_h
    for t in (0..r).rev() {
        let st = star(t);
        tail_star += st;
        num = num.mul_monomial(st as i32 * tail_eps, st).scale(&BigInt::from(-eps(t)));
        shifts.push(tail_eps);
        let width = (r - t) as i64; // r - t + 1 with 1-based t
        let s = tail_star as i64;
        q_exp += tail_star * f[t];
        p_exp += (width * s - s * s) * f[t] as i64;
        tail_eps += eps(t);
    }
    (
        num.mul_monomial(p_exp as i32, q_exp),
        ShiftedDen::from_shifts(&shifts),
    )
}

/// Sum over all sign vectors, brought to the least common denominator and
/// certified polynomial by exact division.
pub fn sigma_closed(f: &[u32]) -> Result<PolyPQ> {
    let r = f.len();
    let terms: Vec<(PolyPQ, ShiftedDen)> =
        (0..1u32 << r).into_par_iter().map(|s| closed_term(f, s)).collect();
    let mut lcm = ShiftedDen::default();
    for (_, d) in &terms {
        lcm.absorb(d);
    }
    let num = terms
        .par_iter()
        .map(|(n, d)| n * &lcm.cofactor(d))
        .reduce(PolyPQ::zero, |a, b| &a + &b);
    num.divide_exact(&lcm.expand())
}

/// `sigma_a(F)` for integer `a`, via [`sigma_fast`].
pub fn sigma_value(shape: &GroupShape, a: i64) -> Result<BigRational> {
    let s = sigma_fast(shape.increments())?;
    let p = BigRational::from_integer(BigInt::from(shape.p().clone()));
    let q = crate::poly::rational_pow(&p, a);
    s.eval(&p, &q)
}
