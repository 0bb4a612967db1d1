//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Two criteria are known not to hold as stated. The reference r = 4
//! polynomial has three misprinted coefficients, and the slow recursion is
//! polynomial in the exponent sum at fixed rank. For those two the line is
//! printed as FAIL and the run only aborts if the failure changes shape.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use abzeta::bench;
use abzeta::golden::{self, GoldenSet};
use abzeta::group::{order_profile, sigma_oracle, GroupShape};
use abzeta::poly::{parse_polyx, parse_pq, PolyX};
use abzeta::series::{
    build_b, dirichlet_p_factor, normalize_to_b, q_series_recursive, specialize_det, QSpec, SeriesRat,
};
use abzeta::verify::{self, check_routes, check_shape, check_structure, increment_grid};

const BUDGET: u64 = 1 << 24;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn within(t: Duration, limit: Duration) -> Option<String> {
    (t > limit).then(|| format!("took {:.2?}, limit {:?}", t, limit))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let el = t.elapsed();
    if let Some(msg) = within(el, limit) {
        o.pass = false;
        o.detail = format!("{}; {}", o.detail, msg);
    } else {
        o.detail = format!("{} ({:.2?})", o.detail, el);
    }
    o
}

fn rank2() -> Outcome {
    let got = verify::rank2_numerator().unwrap();
    let want = parse_polyx("1 + q*X1 - q*(q+1)*X1*X2", 2).unwrap();
    match verify::first_difference(&got, &want) {
        None => Outcome::new(true, "A_2 = 1 + qX1 - q(q+1)X1X2"),
        Some(d) => Outcome::new(false, d),
    }
}

/// Specialise the series itself, then clear the specialised B_3.
fn rank3() -> Outcome {
    let q3 = q_series_recursive(3).unwrap();
    let spec = specialize_det(&q3, QSpec::Formal).unwrap().to_series();
    let b3 = SeriesRat::new(PolyX::one(3).into(), &build_b(3));
    let b3_det = specialize_det(&b3, QSpec::Formal).unwrap().to_series();
    let Some(num) = spec.num_over(b3_det.den()) else {
        return Outcome::new(false, "specialised B_3 does not clear the denominator");
    };
    let num = num.to_polyx().unwrap();
    let want = GoldenSet::embedded().poly(golden::R3_DET, 1).unwrap();
    if num.total_degree() != Some(11) {
        return Outcome::new(false, format!("degree {:?}, expected 11", num.total_degree()));
    }
    match verify::first_difference(&num, &want) {
        None => Outcome::new(true, "X^0..X^11 coefficients match"),
        Some(d) => Outcome::new(false, d),
    }
}

/// Returns the outcome and whether the failure is the known one.
fn rank4() -> (Outcome, bool) {
    let got = verify::rank4_det_q1_numerator().unwrap();
    let g = GoldenSet::embedded();
    let printed = g.poly(golden::R4_DET_Q1, 1).unwrap();
    let checked = g.poly(golden::R4_DET_Q1_CHECKED, 1).unwrap();

    let (deg, _, top) = verify::det_claims(&got);
    let lead_ok = deg == 26 && top == parse_pq("(7*p^3 + 5*p^2 + 8*p + 4)*p^6").unwrap();
    let tail_ok = (0..=3).all(|k| got.coeff(&[k]) == printed.coeff(&[k]))
        && got.coeff(&[3]) == parse_pq("2*p").unwrap()
        && got.coeff(&[2]).is_one()
        && got.coeff(&[1]).is_zero()
        && got.coeff(&[0]).is_one();
    let mixed = verify::has_mixed_signs(&got.coeff(&[10]));
    let diffs = verify::differences(&got, &printed);
    let against_checked = verify::differences(&got, &checked);

    let mut detail = format!(
        "leading {} trailing {} X^10 mixed signs {}",
        if lead_ok { "ok" } else { "WRONG" },
        if tail_ok { "ok" } else { "WRONG" },
        mixed
    );
    let pass = lead_ok && tail_ok && mixed && diffs.is_empty();
    if !diffs.is_empty() {
        detail.push_str(&format!(
            "; differs from the printed polynomial at X^{:?}, equals the enumeration-checked polynomial: {}",
            diffs.iter().map(|e| e[0]).collect::<Vec<_>>(),
            against_checked.is_empty()
        ));
    }
    let known = lead_ok
        && tail_ok
        && mixed
        && against_checked.is_empty()
        && diffs == vec![vec![11], vec![18], vec![19]];
    (Outcome::new(pass, detail), pass || known)
}

fn rank5() -> Outcome {
    let a5 = match normalize_to_b(&q_series_recursive(5).unwrap()) {
        Ok(a) => a,
        Err(e) => return Outcome::new(false, format!("B_5 does not clear: {}", e)),
    };
    let num = specialize_det(&a5.to_series(), QSpec::One).unwrap().num;
    let (deg, pdeg, top) = verify::det_claims(&num);
    let lead = top.terms().next_back().map(|(m, c)| (m.p, m.q, c.clone()));
    let ok = deg == 50 && pdeg == 25 && lead == Some((25, 0, BigInt::from(11)));
    Outcome::new(ok, format!("degree {} in X, {} in p, leading {:?}; B_5 divides", deg, pdeg, lead))
}

fn grid(check: impl Fn(u32, &[u32]) -> Option<String>) -> Outcome {
    let mut n = 0;
    for p in [2u32, 3] {
        for r in 0..=3 {
            for f in increment_grid(r, 4) {
                n += 1;
                if let Some(msg) = check(p, &f) {
                    return Outcome::new(false, format!("[{}; {:?}]: {}", p, f, msg));
                }
            }
        }
    }
    Outcome::new(true, format!("{} shapes", n))
}

fn oracle_grid() -> Outcome {
    let a: Vec<i64> = (-2..=3).collect();
    grid(|p, f| check_shape(p, f, &a, BUDGET).unwrap())
}

fn structure_grid() -> Outcome {
    grid(|p, f| check_structure(p, f, BUDGET).unwrap())
}

fn routes() -> Outcome {
    for r in 0..=4 {
        if let Some(msg) = check_routes(r).unwrap() {
            return Outcome::new(false, msg);
        }
    }
    Outcome::new(true, "ranks 0..4")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Upper bound on the subgroup count of `Z_{p^a} x Z_{p^b}`, `a <= b`.
fn count_bound(p: u32, a: u32, b: u32) -> BigRational {
    let pa = BigInt::from(p).pow(a);
    BigRational::from_integer(pa * BigInt::from((a + 1) * (b + 1)))
}

fn dirichlet() -> Outcome {
    let two = BigUint::from(2u32);
    let d1 = dirichlet_p_factor(1, 0, &two, &rat(2, 1)).unwrap();
    let d2 = dirichlet_p_factor(1, 1, &two, &rat(3, 1)).unwrap();
    if d1 != rat(16, 9) || d2 != rat(32, 21) {
        return Outcome::new(false, format!("rank 1 values {} and {}", d1, d2));
    }

    // sum over f of sigma_0([2; f1, f2]) 2^(-3(2 f1 + f2)), truncated to a box
    let exact = dirichlet_p_factor(2, 0, &two, &rat(3, 1)).unwrap();
    let (m1, m2) = (6u32, 10u32);
    let weight = |f1: u32, f2: u32| rat(1, 2).pow((3 * (2 * f1 + f2)) as i32);
    let mut partial = BigRational::zero();
    for f1 in 0..=m1 {
        for f2 in 0..=m2 {
            let shape = GroupShape::new(2u32, vec![f1, f2]).unwrap();
            let count = order_profile(&shape, BUDGET).unwrap().total();
            let count = BigRational::from_integer(BigInt::from(count));
            if count > count_bound(2, f1, f1 + f2) {
                return Outcome::new(false, format!("count bound violated at {:?}", (f1, f2)));
            }
            let s0 = sigma_oracle(&shape, &BigRational::zero(), BUDGET).unwrap();
            if s0 != count {
                return Outcome::new(false, "sigma_0 differs from the subgroup count");
            }
            partial += s0 * weight(f1, f2);
        }
    }
    let mut tail = BigRational::zero();
    for f1 in 0..=m1 + 40 {
        for f2 in 0..=m2 + 40 {
            if f1 > m1 || f2 > m2 {
                tail += count_bound(2, f1, f1 + f2) * weight(f1, f2);
            }
        }
    }
    let gap = &exact - &partial;
    let gap_f = gap.to_f64().unwrap();
    let ok = !gap.is_negative() && gap <= tail && gap_f < 1e-6;
    Outcome::new(
        ok,
        format!(
            "16/9, 32/21 exact; rank 2 value {:.12}, truncated sum differs by {:.3e} (tail bound {:.3e})",
            exact.to_f64().unwrap(),
            gap_f,
            tail.to_f64().unwrap()
        ),
    )
}

fn negative_control() -> Outcome {
    let dir = std::env::temp_dir().join(format!("abzeta-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join(golden::R2), "1 + qX_1 - q(q+2)X_1X_2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_abzeta"))
        .args(["verify", "--golden-only", "--rank-max", "2", "--golden-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let code = out.status.code();
    let named = stdout.contains("rank-2 numerator") && stdout.contains("[1, 1]");
    let line = stdout.lines().find(|l| l.starts_with("FAIL")).unwrap_or("").to_string();
    Outcome::new(code == Some(2) && named, format!("exit {:?}: {}", code, line))
}

/// Returns the outcome and whether the fast half holds.
fn benchmark() -> (Outcome, bool) {
    let rows = bench::sweep_fsum(2, 8..=14, Duration::from_millis(100)).unwrap();
    let slow: Vec<f64> = rows.iter().map(|r| r.slow_secs).collect();
    let fast: Vec<f64> = rows.iter().map(|r| r.fast_secs).collect();
    let growth = bench::mean_growth(&slow);
    let spread = bench::spread(&fast);
    let calls: Vec<u64> = rows.iter().map(|r| r.slow_calls).collect();
    let fast_ok = spread <= 10.0;
    (
        Outcome::new(
            growth >= 1.5 && fast_ok,
            format!(
                "slow mean growth {:.3}x per unit (need >= 1.5), slow calls {:?}; fast max/first {:.2} (need <= 10)",
                growth, calls, spread
            ),
        ),
        fast_ok,
    )
}

fn main() {
    // cargo test passes harness flags such as --nocapture; none apply here
    let secs = Duration::from_secs;
    let mut fatal = Vec::new();
    let mut report = |n: usize, name: &str, o: &Outcome, must_pass: bool| {
        println!("criterion {:>2} {}: {} - {}", n, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        if must_pass && !o.pass {
            fatal.push(n);
        }
    };

    report(1, "rank-2 numerator", &timed(secs(1), rank2), true);
    report(2, "rank-3 determinant numerator", &timed(secs(5), rank3), true);
    let mut known4 = false;
    let o = timed(secs(60), || {
        let (o, k) = rank4();
        known4 = k;
        o
    });
    report(3, "rank-4 determinant numerator at q=1", &o, !known4);
    report(4, "rank-5 determinant claims", &timed(secs(600), rank5), true);
    report(5, "oracle equivalence grid", &timed(secs(120), oracle_grid), true);
    report(6, "sigma polynomial structure", &structure_grid(), true);
    report(7, "route equality", &timed(secs(120), routes), true);
    report(8, "Dirichlet values", &dirichlet(), true);
    report(9, "negative control", &negative_control(), true);
    let (o, fast_ok) = benchmark();
    report(10, "complexity separation", &o, !fast_ok);

    if !fatal.is_empty() {
        eprintln!("unexpected failures: {:?}", fatal);
        std::process::exit(1);
    }
}
