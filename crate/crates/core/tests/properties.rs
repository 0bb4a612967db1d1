use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use abzeta::group::{order_profile, sigma_oracle, GroupShape, OrderProfile};
use abzeta::poly::{parse_pq, rational_pow, render_pq, PolyPQ};
use abzeta::series::{coeff_extract, q_series_recursive, series_from_json, series_to_json};
use abzeta::sigma::{sigma_closed, sigma_fast, sigma_slow, sigma_value};

const BUDGET: u64 = 1 << 22;

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn shapes() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (prop::sample::select(vec![2u32, 3, 5]), prop::collection::vec(0u32..=2, 0..=3)).prop_filter(
        "group too large to enumerate",
        |(p, f)| {
            let log: u32 = f.iter().enumerate().map(|(i, x)| x * (f.len() - i) as u32).sum();
            (*p as u64).pow(log) <= BUDGET
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formulas_agree_with_enumeration((p, f) in shapes(), a in -3i64..=3) {
        let shape = GroupShape::new(p, f.clone()).unwrap();
        let fast = sigma_fast(&f).unwrap();
        prop_assert_eq!(&sigma_slow(&shape.exponents()), &fast);
        prop_assert_eq!(&sigma_closed(&f).unwrap(), &fast);
        let oracle = sigma_oracle(&shape, &int(a), BUDGET).unwrap();
        prop_assert_eq!(sigma_value(&shape, a).unwrap(), oracle);
    }

    #[test]
    fn duality((p, f) in shapes(), a in -3i64..=3) {
        let shape = GroupShape::new(p, f).unwrap();
        let order = int(p as i64);
        let scale = rational_pow(&order, a * shape.order_log() as i64);
        prop_assert_eq!(sigma_value(&shape, a).unwrap(), scale * sigma_value(&shape, -a).unwrap());
    }

    #[test]
    fn coefficients_are_nonnegative(f in prop::collection::vec(0u32..=3, 0..=4)) {
        let s = sigma_fast(&f).unwrap();
        prop_assert!(s.terms().all(|(m, c)| c.sign() != num_bigint::Sign::Minus && m.p >= 0));
    }

    #[test]
    fn profile_is_palindromic((p, f) in shapes()) {
        let shape = GroupShape::new(p, f).unwrap();
        let prof = order_profile(&shape, BUDGET).unwrap();
        prop_assert!(prof.is_palindromic());
        prop_assert_eq!(prof.counts().len() as u32, shape.order_log() + 1);
        let back = OrderProfile::from_json(&prof.to_json()).unwrap();
        prop_assert_eq!(back, prof);
    }

    #[test]
    fn rank_one_is_a_divisor_sum(n in 0u32..=12, p in prop::sample::select(vec![2u32, 3, 7]), a in -2i64..=3) {
        let shape = GroupShape::new(p, vec![n]).unwrap();
        let q = rational_pow(&int(p as i64), a);
        let want: BigRational = (0..=n).map(|k| rational_pow(&q, k as i64)).sum();
        prop_assert_eq!(sigma_value(&shape, a).unwrap(), want);
    }

    #[test]
    fn rendering_round_trips(f in prop::collection::vec(0u32..=3, 0..=3)) {
        let s = sigma_fast(&f).unwrap();
        prop_assert_eq!(parse_pq(&render_pq(&s, false)).unwrap(), s.clone());
        prop_assert_eq!(parse_pq(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn series_coefficients_match_sigma(f in prop::collection::vec(0u32..=4, 1..=3)) {
        let s = q_series_recursive(f.len()).unwrap();
        prop_assert_eq!(coeff_extract(&s, &f).unwrap(), sigma_fast(&f).unwrap());
    }
}

#[test]
fn series_json_round_trips() {
    for r in 0..=3 {
        let s = q_series_recursive(r).unwrap();
        let v = series_to_json(&s);
        let back = series_from_json(&v).unwrap();
        assert!(back.equals(&s));
        assert_eq!(series_to_json(&back), v);
    }
}

#[test]
fn large_prime_shapes() {
    let p = BigUint::parse_bytes(b"1000000007", 10).unwrap();
    let shape = GroupShape::new(p.clone(), vec![1, 1]).unwrap();
    let pr = BigRational::from_integer(BigInt::from(p));
    let s: PolyPQ = sigma_fast(&[1, 1]).unwrap();
    // sigma_0 of Z_p x Z_p^2: 1 + (p+1) + (p+1) + 1
    let want = int(4) + int(2) * &pr;
    assert_eq!(s.eval(&pr, &int(1)).unwrap(), want);
    assert_eq!(sigma_value(&shape, 0).unwrap(), want);
}
