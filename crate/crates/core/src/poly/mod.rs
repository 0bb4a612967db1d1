//! Exact arithmetic in `Z[p, 1/p, q]`, its fractions, and polynomials in
//! `X_1..X_r` over both.

mod parse;
mod pq;
mod rat;
mod shifted;
mod text;
mod xpoly;

pub use parse::{parse_polyx, parse_pq};
pub use pq::{rational_pow, Monomial, PolyPQ};
pub use rat::RatPQ;
pub use shifted::ShiftedDen;
pub use text::{render_one_minus, render_polyx, render_pq, render_rat, render_xpoly, XNames};
pub use xpoly::{Exps, PolyX, XPoly};

#[cfg(test)]
mod proptests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = PolyPQ> {
        prop::collection::vec((-3i32..4, 0u32..4, -5i64..6), 0..6).prop_map(|ts| {
            PolyPQ::from_terms(ts.into_iter().map(|(u, v, c)| (Monomial::new(u, v), c.into())))
        })
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-6i64..7, 1i64..5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn divide_inverts_multiply(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
        }

        #[test]
        fn shift_round_trip(a in arb_poly(), d in -4i32..5) {
            prop_assert_eq!(a.shift_q(d).shift_q(-d), a);
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), q in arb_rational(), pn in 1i64..6) {
            let p = BigRational::from_integer(pn.into());
            let ea = a.eval(&p, &q).unwrap();
            let eb = b.eval(&p, &q).unwrap();
            prop_assert_eq!((&a * &b).eval(&p, &q).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&p, &q).unwrap(), ea + eb);
        }

        #[test]
        fn render_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(parse_pq(&a.to_string()).unwrap(), a.clone());
            let x = PolyX::constant(2, a.clone()).mul_one_minus(1, 2, 2);
            prop_assert_eq!(parse_polyx(&render_polyx(&x, XNames::Indexed), 2).unwrap(), x);
        }
    }
}
