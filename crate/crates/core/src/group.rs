//! Ground-truth subgroup enumeration.
//!
//! `F = Z^r / M Z^r` with `M = diag(p^{e_1}, ..., p^{e_r})`. Subgroups of `F`
//! correspond to lattices `M Z^r <= L <= Z^r`, each with a unique basis
//! matrix `H` in Hermite normal form: upper triangular, diagonal
//! `p^{a_i}`, and every entry right of the diagonal reduced modulo the
//! diagonal entry of its row. `L` contains `M Z^r` exactly when `H^{-1} M`
//! is integral, and the subgroup has order `|F| / det H`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::rational_pow;

/// Default bound on `|F|` for enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "ABZETA_BUDGET";

/// Budget from `ABZETA_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{}={:?} is not an integer", BUDGET_ENV, v))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Miller-Rabin with the first twelve prime bases; deterministic below
/// 3.3 * 10^24 and probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `F = [p; f_1, ..., f_r] = Z/p^{e_1} x ... x Z/p^{e_r}`, `e_i = f_1 + ... + f_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupShape {
    p: BigUint,
    f: Vec<u32>,
}

impl GroupShape {
    pub fn new(p: impl Into<BigUint>, f: Vec<u32>) -> Result<Self> {
        let p = p.into();
        if !is_probable_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(GroupShape { p, f })
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn rank(&self) -> usize {
        self.f.len()
    }

    pub fn increments(&self) -> &[u32] {
        &self.f
    }

    /// Cyclic exponents `e_1 <= ... <= e_r`.
    pub fn exponents(&self) -> Vec<u32> {
        self.f
            .iter()
            .scan(0u32, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// `log_p |F| = sum_i e_i`.
    pub fn order_log(&self) -> u32 {
        self.exponents().iter().sum()
    }

    /// `log_p` of the exponent of `F`, `f_1 + ... + f_r`.
    pub fn exponent_log(&self) -> u32 {
        self.f.iter().sum()
    }

    /// The type partition: exponents in descending order.
    pub fn type_partition(&self) -> Vec<u32> {
        let mut e = self.exponents();
        e.reverse();
        e
    }

    pub fn order(&self) -> BigUint {
        num_traits::pow(self.p.clone(), self.order_log() as usize)
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<String> = self.f.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}; {}]", self.p, fs.join(","))
    }
}

/// Upper-triangular Hermite normal form of a subgroup lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupHnf {
    rows: Vec<Vec<u64>>,
}

impl SubgroupHnf {
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn det(&self) -> u128 {
        (0..self.rank()).map(|i| self.rows[i][i] as u128).product()
    }

    /// `log_p det H`.
    pub fn det_log(&self, p: u64) -> u32 {
        (0..self.rank())
            .map(|i| {
                let mut d = self.rows[i][i];
                let mut k = 0;
                while d > 1 {
                    d /= p;
                    k += 1;
                }
                k
            })
            .sum()
    }

    /// True when `H^{-1} diag(p^{e})` is an integer matrix.
    pub fn left_divides(&self, p: u64, exponents: &[u32]) -> bool {
        let r = self.rank();
        for (j, &e) in exponents.iter().enumerate() {
            // solve H x = p^{e_j} * unit_j by back substitution
            let mut x = vec![0i128; r];
            for i in (0..r).rev() {
                let rhs: i128 = if i == j { (p as i128).pow(e) } else { 0 };
                let s: i128 = (i + 1..r).map(|k| self.rows[i][k] as i128 * x[k]).sum();
                let num = rhs - s;
                let d = self.rows[i][i] as i128;
                if num % d != 0 {
                    return false;
                }
                x[i] = num / d;
            }
        }
        true
    }
}

fn small_prime(shape: &GroupShape, budget: u64) -> Result<u64> {
    let order = shape.order();
    if order > BigUint::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "|F| = {}^{} for {} exceeds budget {}",
            shape.p,
            shape.order_log(),
            shape,
            budget
        )));
    }
    shape
        .p
        .to_u64()
        .ok_or_else(|| Error::BudgetExceeded(format!("p = {} too large", shape.p)))
}

struct Search<'a, F: FnMut(&SubgroupHnf)> {
    p: u64,
    r: usize,
    exps: &'a [u32],
    diag_pow: Vec<i128>,
    h: Vec<Vec<i128>>,
    // x[j] solves H x = p^{e_j} u_j; one vector per column since deeper
    // columns must not clobber the rows still being chosen in this one
    x: Vec<Vec<i128>>,
    visit: F,
}

impl<F: FnMut(&SubgroupHnf)> Search<'_, F> {
    fn run(&mut self) {
        let mut a = vec![0u32; self.r];
        self.diagonals(0, &mut a);
    }

    fn diagonals(&mut self, i: usize, a: &mut Vec<u32>) {
        if i == self.r {
            for (k, &ak) in a.iter().enumerate() {
                self.diag_pow[k] = (self.p as i128).pow(ak);
                self.h[k][k] = self.diag_pow[k];
            }
            self.column(0);
            return;
        }
        for ai in 0..=self.exps[i] {
            a[i] = ai;
            self.diagonals(i + 1, a);
        }
    }

    /// Starts column `j`: `x_j = p^{e_j - a_j}`, then rows `j-1` down to 0.
    fn column(&mut self, j: usize) {
        if j == self.r {
            let rows = self
                .h
                .iter()
                .map(|row| row.iter().map(|&v| v as u64).collect())
                .collect();
            (self.visit)(&SubgroupHnf { rows });
            return;
        }
        self.x[j][j] = (self.p as i128).pow(self.exps[j]) / self.diag_pow[j];
        self.entry(j, j);
    }

    /// Chooses `h[i-1][j]` (for `i > 0`), keeping `x_{i-1}` integral.
    fn entry(&mut self, j: usize, i: usize) {
        if i == 0 {
            self.column(j + 1);
            return;
        }
        let row = i - 1;
        let d = self.diag_pow[row];
        let fixed: i128 = (row + 1..j).map(|k| self.h[row][k] * self.x[j][k]).sum();
        let xj = self.x[j][j];
        for v in 0..d {
            let s = fixed + v * xj;
            if s % d == 0 {
                self.h[row][j] = v;
                self.x[j][row] = -s / d;
                self.entry(j, i - 1);
            }
        }
        self.h[row][j] = 0;
    }
}

/// Calls `visit` once per subgroup of `shape`.
pub fn for_each_subgroup<F: FnMut(&SubgroupHnf)>(
    shape: &GroupShape,
    budget: u64,
    visit: F,
) -> Result<()> {
    let p = small_prime(shape, budget)?;
    let r = shape.rank();
    let exps = shape.exponents();
    let mut search = Search {
        p,
        r,
        exps: &exps,
        diag_pow: vec![1; r],
        h: vec![vec![0; r]; r],
        x: vec![vec![0; r]; r],
        visit,
    };
    search.run();
    Ok(())
}

/// Every subgroup of `shape`, one HNF each.
pub fn enumerate_subgroups(shape: &GroupShape, budget: u64) -> Result<Vec<SubgroupHnf>> {
    let mut out = Vec::new();
    for_each_subgroup(shape, budget, |h| out.push(h.clone()))?;
    Ok(out)
}

/// `c_k` = number of subgroups of order `p^k`, `k = 0..=log_p |F|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderProfile {
    counts: Vec<BigUint>,
}

impl OrderProfile {
    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        OrderProfile { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Total number of subgroups.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }

    /// `sum_k c_k x^k`.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.counts.iter().rev() {
            acc = acc * x + BigRational::from_integer(BigInt::from(c.clone()));
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ProfileJson(
            self.counts.iter().map(|c| c.to_string()).collect(),
        ))
        .expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let ProfileJson(items) = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidInput(format!("profile json: {}", e)))?;
        let counts = items
            .iter()
            .map(|s| {
                s.parse::<BigUint>()
                    .map_err(|_| Error::InvalidInput(format!("profile entry {:?}", s)))
            })
            .collect::<Result<_>>()?;
        Ok(OrderProfile { counts })
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileJson(Vec<String>);

pub fn order_profile(shape: &GroupShape, budget: u64) -> Result<OrderProfile> {
    let k_max = shape.order_log();
    let mut counts = vec![0u64; k_max as usize + 1];
    let p = small_prime(shape, budget)?;
    for_each_subgroup(shape, budget, |h| {
        let k = k_max - h.det_log(p);
        counts[k as usize] += 1;
    })?;
    Ok(OrderProfile {
        counts: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// `sigma_a(F) = sum_H |H|^a` by enumeration. `p^{a k}` must be rational
/// for every occurring `k`.
pub fn sigma_oracle(shape: &GroupShape, a: &BigRational, budget: u64) -> Result<BigRational> {
    let profile = order_profile(shape, budget)?;
    let p = BigRational::from_integer(BigInt::from(shape.p.clone()));
    let mut acc = BigRational::zero();
    for (k, c) in profile.counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let ak = a * BigRational::from_integer(BigInt::from(k));
        if !ak.is_integer() {
            return Err(Error::NonIntegralPower(format!("{}^({}*{})", shape.p, a, k)));
        }
        let e = ak
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("exponent too large".into()))?;
        acc += rational_pow(&p, e) * BigRational::from_integer(BigInt::from(c.clone()));
    }
    Ok(acc)
}
