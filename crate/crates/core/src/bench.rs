//! Timing harness for the sigma formulas and the series constructions.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Result;
use crate::series::{q_series_direct, q_series_recursive};
use crate::sigma::{sigma_closed, sigma_fast, sigma_slow, slow_call_count};

/// Median wall time of `f` over enough runs to fill about `target`.
pub fn time_median<T>(mut f: impl FnMut() -> T, target: Duration) -> Duration {
    let t0 = Instant::now();
    std::hint::black_box(f());
    let first = t0.elapsed();
    let runs = if first.is_zero() {
        101
    } else {
        ((target.as_secs_f64() / first.as_secs_f64()) as usize).clamp(5, 1001)
    };
    let mut samples: Vec<Duration> = (0..runs)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(f());
            t.elapsed()
        })
        .collect();
    samples.sort();
    samples[samples.len() / 2]
}

/// Increments of the family used at fixed rank: the whole sum on `f_1`,
/// which maximises `log_p |F|` for a given exponent.
pub fn family(rank: usize, fsum: u32) -> Vec<u32> {
    let mut f = vec![0; rank];
    if rank > 0 {
        f[0] = fsum;
    }
    f
}

fn exponents(f: &[u32]) -> Vec<u32> {
    f.iter()
        .scan(0, |a, &x| {
            *a += x;
            Some(*a)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaRow {
    pub rank: usize,
    pub fsum: u32,
    pub f: Vec<u32>,
    pub slow_calls: u64,
    pub slow_secs: f64,
    pub fast_secs: f64,
    pub closed_secs: f64,
}

pub fn sigma_row(f: &[u32], target: Duration) -> Result<SigmaRow> {
    let e = exponents(f);
    sigma_fast(f)?;
    sigma_closed(f)?;
    Ok(SigmaRow {
        rank: f.len(),
        fsum: f.iter().sum(),
        f: f.to_vec(),
        slow_calls: slow_call_count(&e),
        slow_secs: time_median(|| sigma_slow(&e), target).as_secs_f64(),
        fast_secs: time_median(|| sigma_fast(f), target).as_secs_f64(),
        closed_secs: time_median(|| sigma_closed(f), target).as_secs_f64(),
    })
}

/// Rows for `fsum` in `range` at fixed `rank`.
pub fn sweep_fsum(rank: usize, range: std::ops::RangeInclusive<u32>, target: Duration) -> Result<Vec<SigmaRow>> {
    range.map(|n| sigma_row(&family(rank, n), target)).collect()
}

/// Rows for `rank` in `range` at fixed `fsum`.
pub fn sweep_rank(fsum: u32, range: std::ops::RangeInclusive<usize>, target: Duration) -> Result<Vec<SigmaRow>> {
    range.map(|r| sigma_row(&family(r, fsum), target)).collect()
}

/// Geometric mean of consecutive ratios.
pub fn mean_growth(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 1.0;
    }
    let n = (values.len() - 1) as f64;
    (values[values.len() - 1] / values[0]).powf(1.0 / n)
}

/// Largest value relative to the first.
pub fn spread(values: &[f64]) -> f64 {
    let first = values[0];
    values.iter().cloned().fold(0.0, f64::max) / first
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesRow {
    pub rank: usize,
    pub recursive_secs: f64,
    pub direct_secs: f64,
}

pub fn series_rows(rank_max: usize) -> Result<Vec<SeriesRow>> {
    (1..=rank_max)
        .map(|r| {
            let t = Instant::now();
            q_series_recursive(r)?;
            let rec = t.elapsed().as_secs_f64();
            let t = Instant::now();
            q_series_direct(r)?;
            Ok(SeriesRow {
                rank: r,
                recursive_secs: rec,
                direct_secs: t.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

pub fn render_sigma_table(rows: &[SigmaRow]) -> String {
    let mut out = format!(
        "{:>4} {:>4} {:>12} {:>12} {:>12} {:>12}\n",
        "r", "sumf", "slow calls", "slow ms", "fast ms", "closed ms"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>4} {:>4} {:>12} {:>12.4} {:>12.4} {:>12.4}\n",
            r.rank,
            r.fsum,
            r.slow_calls,
            r.slow_secs * 1e3,
            r.fast_secs * 1e3,
            r.closed_secs * 1e3
        ));
    }
    out
}

pub fn render_series_table(rows: &[SeriesRow]) -> String {
    let mut out = format!("{:>4} {:>14} {:>14}\n", "r", "recursive ms", "direct ms");
    for r in rows {
        out.push_str(&format!(
            "{:>4} {:>14.3} {:>14.3}\n",
            r.rank,
            r.recursive_secs * 1e3,
            r.direct_secs * 1e3
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_helpers() {
        assert!((mean_growth(&[1.0, 2.0, 4.0, 8.0]) - 2.0).abs() < 1e-12);
        assert_eq!(mean_growth(&[3.0]), 1.0);
        assert_eq!(spread(&[2.0, 1.0, 6.0]), 3.0);
        assert_eq!(family(3, 5), vec![5, 0, 0]);
    }

    #[test]
    fn small_table() {
        let rows = sweep_fsum(2, 1..=3, Duration::from_millis(1)).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.windows(2).all(|w| w[1].slow_calls > w[0].slow_calls));
        assert!(render_sigma_table(&rows).lines().count() == 4);
    }
}
