//! Cross-check suite behind `abzeta verify`.
//!
//! Every check is independent and reports a named [`Check`]. The grid checks
//! compare the three sigma formulas with each other and with subgroup
//! enumeration; the golden checks compare the series engine with the
//! reference files.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::golden::{self, GoldenSet};
use crate::group::{order_profile, GroupShape};
use crate::poly::{rational_pow, render_pq, PolyPQ, PolyX};
use crate::series::{
    coeff_extract, normalize_to_b, q_series_direct, q_series_recursive, specialize_det, QSpec,
};
use crate::sigma::{sigma_closed, sigma_fast, sigma_slow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A mathematical disagreement.
    Fail,
    /// Budget, pole or domain error.
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            detail: String::new(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<Option<String>>) -> Self {
        let name = name.into();
        match r {
            Ok(None) => Check::pass(name),
            Ok(Some(d)) => Check::fail(name, d),
            Err(e @ (Error::NotDivisible(_) | Error::NonIntegerCoefficient(_))) => {
                Check::fail(name, e.to_string())
            }
            Err(e) => Check {
                name,
                status: Status::Error,
                detail: e.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub rank_max: usize,
    pub fsum_max: u32,
    pub primes: Vec<u32>,
    pub a_values: Vec<i64>,
    pub golden_only: bool,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            rank_max: 4,
            fsum_max: 4,
            primes: vec![2, 3],
            a_values: (-2..=3).collect(),
            golden_only: false,
            budget: crate::group::DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Error) {
            Status::Error
        } else {
            Status::Pass
        }
    }

    /// 0 all pass, 2 disagreement, 3 budget/pole/domain error.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 2,
            Status::Error => 3,
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| c.status == Status::Fail)
            .or_else(|| self.checks.iter().find(|c| c.status == Status::Error))
    }
}

/// All `f` of length `r` with `sum f <= fsum_max`.
pub fn increment_grid(r: usize, fsum_max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=fsum_max - used).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Three formulas agree as polynomials, and their values at `q = p^a` match
/// enumeration.
pub fn check_shape(p: u32, f: &[u32], a_values: &[i64], budget: u64) -> Result<Option<String>> {
    let shape = GroupShape::new(p, f.to_vec())?;
    let fast = sigma_fast(f)?;
    let slow = sigma_slow(&shape.exponents());
    if slow != fast {
        return Ok(Some(format!("slow {} != fast {}", slow, fast)));
    }
    let closed = sigma_closed(f)?;
    if closed != fast {
        return Ok(Some(format!("closed {} != fast {}", closed, fast)));
    }
    let profile = order_profile(&shape, budget)?;
    let pr = int(p as i64);
    for &a in a_values {
        let q = rational_pow(&pr, a);
        let formula = fast.eval(&pr, &q)?;
        let oracle = profile.eval(&q);
        if formula != oracle {
            return Ok(Some(format!("a = {}: formula {} != enumeration {}", a, formula, oracle)));
        }
    }
    Ok(None)
}

/// Nonnegative integer coefficients, q-palindromy, value 1 at `q = 0` and
/// the subgroup count at `q = 1`.
pub fn check_structure(p: u32, f: &[u32], budget: u64) -> Result<Option<String>> {
    let shape = GroupShape::new(p, f.to_vec())?;
    let s = sigma_fast(f)?;
    if let Some((m, c)) = s.terms().find(|(m, c)| c.is_negative() || m.p < 0) {
        return Ok(Some(format!("coefficient {} at p^{} q^{}", c, m.p, m.q)));
    }
    let k = shape.order_log();
    if s.q_degree() != Some(k) {
        return Ok(Some(format!("q-degree {:?}, expected {}", s.q_degree(), k)));
    }
    for v in 0..=k {
        if s.q_coefficient(v) != s.q_coefficient(k - v) {
            return Ok(Some(format!("q^{} and q^{} coefficients differ", v, k - v)));
        }
    }
    let pr = int(p as i64);
    if s.eval(&pr, &BigRational::zero())? != BigRational::one() {
        return Ok(Some("value at q = 0 is not 1".into()));
    }
    let count = order_profile(&shape, budget)?.total();
    if s.eval(&pr, &BigRational::one())? != BigRational::from_integer(BigInt::from(count.clone())) {
        return Ok(Some(format!("value at q = 1 differs from subgroup count {}", count)));
    }
    Ok(None)
}

/// Series coefficients against [`sigma_fast`] over the grid.
pub fn check_extraction(r: usize, fsum_max: u32) -> Result<Option<String>> {
    let s = q_series_recursive(r)?;
    for f in increment_grid(r, fsum_max) {
        let got = coeff_extract(&s, &f)?;
        let want = sigma_fast(&f)?;
        if got != want {
            return Ok(Some(format!("X^{:?}: series {} != sigma {}", f, got, want)));
        }
    }
    Ok(None)
}

pub fn check_routes(r: usize) -> Result<Option<String>> {
    let rec = q_series_recursive(r)?;
    let dir = q_series_direct(r)?;
    if rec.equals(&dir) {
        Ok(None)
    } else {
        Ok(Some(format!("rank {} series differ after cross-multiplication", r)))
    }
}

/// First coefficient where `got` and `want` differ, rendered.
pub fn first_difference(got: &PolyX, want: &PolyX) -> Option<String> {
    let mut keys: Vec<&Vec<u32>> = got.terms().map(|(e, _)| e).chain(want.terms().map(|(e, _)| e)).collect();
    keys.sort();
    keys.dedup();
    for e in keys {
        let (g, w) = (got.coeff(e), want.coeff(e));
        if g != w {
            return Some(format!(
                "coefficient of X^{:?}: expected {}, computed {}",
                e,
                render_pq(&w, false),
                render_pq(&g, false)
            ));
        }
    }
    None
}

/// Every differing exponent vector.
pub fn differences(got: &PolyX, want: &PolyX) -> Vec<Vec<u32>> {
    let mut keys: Vec<Vec<u32>> = got.terms().map(|(e, _)| e.clone()).chain(want.terms().map(|(e, _)| e.clone())).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().filter(|e| got.coeff(e) != want.coeff(e)).collect()
}

pub fn rank2_numerator() -> Result<PolyX> {
    Ok(normalize_to_b(&q_series_recursive(2)?)?.num)
}

pub fn rank3_det_numerator() -> Result<PolyX> {
    let a = normalize_to_b(&q_series_recursive(3)?)?;
    Ok(specialize_det(&a.to_series(), QSpec::Formal)?.num)
}

pub fn rank4_det_q1_numerator() -> Result<PolyX> {
    let a = normalize_to_b(&q_series_recursive(4)?)?;
    Ok(specialize_det(&a.to_series(), QSpec::One)?.num)
}

pub fn rank5_det_q1_numerator() -> Result<PolyX> {
    let a = normalize_to_b(&q_series_recursive(5)?)?;
    Ok(specialize_det(&a.to_series(), QSpec::One)?.num)
}

fn compare_golden(got: Result<PolyX>, want: Result<PolyX>) -> Result<Option<String>> {
    let got = got?;
    let want = want?;
    Ok(first_difference(&got, &want))
}

/// `(degree in X, degree in p, coefficient of the top X power)`.
pub fn det_claims(num: &PolyX) -> (u32, i32, PolyPQ) {
    let deg = num.total_degree().unwrap_or(0);
    let pdeg = num.p_degree().unwrap_or(0);
    (deg, pdeg, num.coeff(&[deg]))
}

/// True when the `p`-monomials of `c` carry both signs.
pub fn has_mixed_signs(c: &PolyPQ) -> bool {
    c.terms().any(|(_, x)| x.is_positive()) && c.terms().any(|(_, x)| x.is_negative())
}

fn rank5_claims(num: &PolyX) -> Option<String> {
    let (deg, pdeg, top) = det_claims(num);
    if deg != 50 || pdeg != 25 {
        return Some(format!("degree {} in X and {} in p, expected 50 and 25", deg, pdeg));
    }
    let lead = top.terms().next_back().map(|(m, c)| (m.p, m.q, c.clone()));
    if lead != Some((25, 0, BigInt::from(11))) {
        return Some(format!("leading coefficient {}, expected top monomial 11*p^25", top));
    }
    None
}

fn rank4_structure(num: &PolyX) -> Option<String> {
    let lead = num.coeff(&[26]);
    let want_lead = PolyPQ::from_terms(
        [(9, 7), (8, 5), (7, 8), (6, 4)].map(|(u, c)| (crate::poly::Monomial::new(u, 0), BigInt::from(c))),
    );
    if num.total_degree() != Some(26) || lead != want_lead {
        return Some(format!("leading term {}*X^26", lead));
    }
    let tail = [
        (3u32, PolyPQ::monomial(2, 1, 0)),
        (2, PolyPQ::one()),
        (1, PolyPQ::zero()),
        (0, PolyPQ::one()),
    ];
    for (k, want) in tail {
        if num.coeff(&[k]) != want {
            return Some(format!("X^{} coefficient {}, expected {}", k, num.coeff(&[k]), want));
        }
    }
    if !has_mixed_signs(&num.coeff(&[10])) {
        return Some("X^10 coefficient has constant sign".into());
    }
    None
}

/// Compares the engine against `golden` up to `rank_max`.
pub fn golden_checks(golden: &GoldenSet, rank_max: usize) -> Vec<Check> {
    let mut jobs: Vec<(String, Box<dyn Fn() -> Result<Option<String>> + Send + Sync + '_>)> = Vec::new();
    if rank_max >= 2 {
        jobs.push((
            "rank-2 numerator".into(),
            Box::new(|| compare_golden(rank2_numerator(), golden.poly(golden::R2, 2))),
        ));
        jobs.push((
            "rank-2 numerator (json)".into(),
            Box::new(|| compare_golden(rank2_numerator(), golden.series(golden::R2_JSON)?.num().to_polyx())),
        ));
    }
    if rank_max >= 3 {
        jobs.push((
            "rank-3 determinant numerator".into(),
            Box::new(|| compare_golden(rank3_det_numerator(), golden.poly(golden::R3_DET, 1))),
        ));
        jobs.push((
            "rank-3 determinant numerator (json)".into(),
            Box::new(|| compare_golden(rank3_det_numerator(), golden.series(golden::R3_DET_JSON)?.num().to_polyx())),
        ));
    }
    if rank_max >= 4 {
        jobs.push((
            "rank-4 determinant numerator at q=1".into(),
            Box::new(|| compare_golden(rank4_det_q1_numerator(), golden.poly(golden::R4_DET_Q1_CHECKED, 1))),
        ));
        jobs.push((
            "rank-4 determinant numerator at q=1 (json)".into(),
            Box::new(|| {
                compare_golden(rank4_det_q1_numerator(), golden.series(golden::R4_DET_Q1_JSON)?.num().to_polyx())
            }),
        ));
        jobs.push((
            "rank-4 leading, trailing and mixed-sign terms".into(),
            Box::new(|| Ok(rank4_structure(&rank4_det_q1_numerator()?))),
        ));
    }
    if rank_max >= 5 {
        jobs.push((
            "rank-5 determinant degree and leading monomial".into(),
            Box::new(|| Ok(rank5_claims(&rank5_det_q1_numerator()?))),
        ));
        jobs.push((
            "rank-5 determinant numerator (json)".into(),
            Box::new(|| compare_golden(rank5_det_q1_numerator(), golden.series(golden::R5_DET_Q1_JSON)?.num().to_polyx())),
        ));
    }
    jobs.par_iter().map(|(name, job)| Check::from_result(name.clone(), job())).collect()
}

/// Runs the whole suite. Output order does not depend on scheduling.
pub fn run(opts: &VerifyOptions, golden: &GoldenSet) -> Report {
    let mut checks = Vec::new();
    if !opts.golden_only {
        let grid_rank = opts.rank_max.min(3);
        let cells: Vec<(u32, Vec<u32>)> = opts
            .primes
            .iter()
            .flat_map(|&p| {
                (0..=grid_rank).flat_map(move |r| increment_grid(r, opts.fsum_max).into_iter().map(move |f| (p, f)))
            })
            .collect();
        let grid: Vec<Check> = cells
            .par_iter()
            .flat_map_iter(|(p, f)| {
                let label = GroupShape::new(*p, f.clone()).map(|s| s.to_string()).unwrap_or_else(|_| format!("{:?}", f));
                [
                    Check::from_result(
                        format!("sigma agreement {}", label),
                        check_shape(*p, f, &opts.a_values, opts.budget),
                    ),
                    Check::from_result(format!("sigma structure {}", label), check_structure(*p, f, opts.budget)),
                ]
            })
            .collect();
        checks.extend(grid);
        let ranks: Vec<usize> = (1..=opts.rank_max.min(4)).collect();
        checks.extend(
            ranks
                .par_iter()
                .map(|&r| Check::from_result(format!("route equality rank {}", r), check_routes(r)))
                .collect::<Vec<_>>(),
        );
        checks.extend(
            (1..=grid_rank)
                .into_par_iter()
                .map(|r| {
                    Check::from_result(
                        format!("series coefficients rank {}", r),
                        check_extraction(r, opts.fsum_max),
                    )
                })
                .collect::<Vec<_>>(),
        );
    }
    checks.extend(golden_checks(golden, opts.rank_max));
    Report { checks }
}

/// Parses a comma list such as `2,3` or a range `-2..3`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: i64 = a.trim().parse().map_err(|_| Error::InvalidInput(format!("bad range {:?}", s)))?;
        let hi: i64 = b.trim().parse().map_err(|_| Error::InvalidInput(format!("bad range {:?}", s)))?;
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| Error::InvalidInput(format!("bad integer {:?}", x))))
        .collect()
}

pub fn primes_fit(primes: &[u32]) -> Result<()> {
    for &p in primes {
        if !crate::group::is_probable_prime(&BigUint::from(p)) {
            return Err(Error::NotPrime(p.to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        assert_eq!(increment_grid(0, 4), vec![Vec::<u32>::new()]);
        assert_eq!(increment_grid(1, 4).len(), 5);
        assert_eq!(increment_grid(2, 4).len(), 15);
        assert_eq!(increment_grid(3, 4).len(), 35);
    }

    #[test]
    fn lists() {
        assert_eq!(parse_int_list("-2..3").unwrap(), vec![-2, -1, 0, 1, 2, 3]);
        assert_eq!(parse_int_list("2, 3").unwrap(), vec![2, 3]);
        assert!(parse_int_list("x").is_err());
    }

    #[test]
    fn small_run_passes() {
        let opts = VerifyOptions {
            rank_max: 2,
            fsum_max: 2,
            ..Default::default()
        };
        let rep = run(&opts, &GoldenSet::embedded());
        assert_eq!(rep.exit_code(), 0, "{:?}", rep.first_failure());
    }

    #[test]
    fn perturbed_golden_fails() {
        let dir = std::env::temp_dir().join(format!("abzeta-verify-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join(golden::R2), "1 + qX_1 - q(q+2)X_1X_2").unwrap();
        let g = GoldenSet::from_dir(&dir).unwrap();
        let rep = run(&VerifyOptions { rank_max: 2, golden_only: true, ..Default::default() }, &g);
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(rep.exit_code(), 2);
        let bad = rep.first_failure().unwrap();
        assert_eq!(bad.name, "rank-2 numerator");
        assert!(bad.detail.contains("[1, 1]"), "{}", bad.detail);
    }

    #[test]
    fn domain_errors_exit_three() {
        let opts = VerifyOptions {
            rank_max: 1,
            fsum_max: 3,
            budget: 4,
            ..Default::default()
        };
        let rep = run(&opts, &GoldenSet::embedded());
        assert_eq!(rep.exit_code(), 3);
    }
}
