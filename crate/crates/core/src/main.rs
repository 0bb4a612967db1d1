use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::json;

use abzeta::bench;
use abzeta::golden::GoldenSet;
use abzeta::group::{budget_from_env, order_profile, sigma_oracle, GroupShape};
use abzeta::poly::{PolyPQ, XNames};
use abzeta::series::{
    dirichlet_p_factor, normalize_to_b, q_series_direct, q_series_recursive, series_to_json,
    specialize_det, PolySeries, QSpec,
};
use abzeta::sigma::{sigma_closed, sigma_fast, sigma_slow};
use abzeta::verify::{self, Status, VerifyOptions};
use abzeta::Error;

const RANK_CAP: usize = 5;

#[derive(Parser)]
#[command(name = "abzeta", version, about = "Subgroup sums of finite abelian p-groups and their generating series")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Slow,
    Fast,
    Closed,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Recursive,
    Direct,
}

#[derive(Subcommand)]
enum Cmd {
    /// sigma_a of [p; f_1,...,f_r]
    Sigma {
        #[arg(long)]
        p: BigUint,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Increments f_1,...,f_r (empty for the trivial group)
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        f: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
        /// Also print the polynomial in p and q
        #[arg(long)]
        poly: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Numerator A_r = B_r * Q_r and the factors of B_r
    Series {
        #[arg(long)]
        rank: usize,
        /// Substitute X_t -> X^(r-t+1)
        #[arg(long)]
        det: bool,
        /// Set q = 1
        #[arg(long)]
        q1: bool,
        #[arg(long, value_enum, default_value_t = Route::Recursive)]
        route: Route,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check formulas, enumeration and reference polynomials
    Verify {
        #[arg(long, default_value_t = 4)]
        rank_max: usize,
        #[arg(long, default_value_t = 4)]
        fsum_max: u32,
        /// Primes, e.g. 2,3
        #[arg(long, default_value = "2,3")]
        pset: String,
        /// Values of a, e.g. -2..3 or 0,1
        #[arg(long, default_value = "-2..3", allow_hyphen_values = true)]
        aset: String,
        /// Skip the grid; only compare reference polynomials
        #[arg(long)]
        golden_only: bool,
        /// Directory overriding the built-in reference files
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Q_r at X_t = p^(-s(r-t+1)), q = p^a
    Dirichlet {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        p: BigUint,
        /// Rational, e.g. 3 or 5/2
        #[arg(long)]
        s: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Timing tables for the three sigma formulas and the series routes
    Bench {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Largest exponent sum f_1 + ... + f_r
        #[arg(long, default_value_t = 14)]
        fsum: u32,
        #[arg(long, default_value_t = 8)]
        fsum_min: u32,
        /// Largest rank for the rank sweep and the series timings
        #[arg(long, default_value_t = 4)]
        rank_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Exit 2 for a mathematical disagreement, 3 for budget, pole and domain
/// errors.
fn exit_for(e: &Error) -> u8 {
    match e {
        Error::NotDivisible(_) | Error::NonIntegerCoefficient(_) => 2,
        _ => 3,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {}", e);
    ExitCode::from(exit_for(&e))
}

fn print_json(v: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("serialisable"));
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::InvalidInput(format!("not a rational: {:?}", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn cmd_sigma(p: BigUint, a: i64, f: Vec<u32>, method: Method, poly: bool, format: Format) -> Result<ExitCode, Error> {
    let shape = GroupShape::new(p.clone(), f.clone())?;
    let pr = BigRational::from_integer(BigInt::from(p));
    let q = abzeta::poly::rational_pow(&pr, a);
    let a_rat = BigRational::from_integer(BigInt::from(a));

    let formula = |m: Method| -> Result<PolyPQ, Error> {
        match m {
            Method::Slow => Ok(sigma_slow(&shape.exponents())),
            Method::Fast => sigma_fast(&f),
            Method::Closed => sigma_closed(&f),
            _ => unreachable!(),
        }
    };
    let methods: Vec<Method> = match method {
        Method::All => vec![Method::Oracle, Method::Slow, Method::Fast, Method::Closed],
        m => vec![m],
    };
    let mut rows = Vec::new();
    for m in &methods {
        let name = match m {
            Method::Oracle => "oracle",
            Method::Slow => "slow",
            Method::Fast => "fast",
            Method::Closed => "closed",
            Method::All => unreachable!(),
        };
        if *m == Method::Oracle {
            let budget = budget_from_env()?;
            let value = sigma_oracle(&shape, &a_rat, budget)?;
            let profile = order_profile(&shape, budget)?;
            rows.push((name, value, None, Some(profile)));
        } else {
            let s = formula(*m)?;
            rows.push((name, s.eval(&pr, &q)?, Some(s), None));
        }
    }
    let agree = rows.windows(2).all(|w| w[0].1 == w[1].1)
        && rows.iter().filter_map(|r| r.2.as_ref()).collect::<Vec<_>>().windows(2).all(|w| w[0] == w[1]);

    match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(name, v, s, prof)| {
                    let mut o = json!({"method": name, "value": v.to_string()});
                    if poly {
                        if let Some(s) = s {
                            o["poly"] = json!(s.to_string());
                        }
                    }
                    if let Some(pr) = prof {
                        o["profile"] = pr.to_json();
                    }
                    o
                })
                .collect();
            print_json(json!({"group": shape.to_string(), "a": a.to_string(), "results": items, "agree": agree}));
        }
        Format::Text => {
            if methods.len() == 1 {
                let (_, v, s, _) = &rows[0];
                if poly {
                    match s {
                        Some(s) => println!("{}", s),
                        None => {
                            let prof = rows[0].3.as_ref().unwrap();
                            let counts = PolyPQ::from_terms(prof.counts().iter().enumerate().map(|(k, c)| {
                                (abzeta::poly::Monomial::new(0, k as u32), BigInt::from(c.clone()))
                            }));
                            println!("{}", counts);
                        }
                    }
                }
                println!("{}", v);
            } else {
                for (name, v, s, _) in &rows {
                    match (poly, s) {
                        (true, Some(s)) => println!("{:<7} {}    {}", name, v, s),
                        _ => println!("{:<7} {}", name, v),
                    }
                }
                println!("{}", if agree { "agree" } else { "DISAGREE" });
            }
        }
    }
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_series(rank: usize, det: bool, q1: bool, route: Route, format: Format) -> Result<ExitCode, Error> {
    if rank == 0 || rank > RANK_CAP {
        return Err(Error::BudgetExceeded(format!("rank {} outside 1..={}", rank, RANK_CAP)));
    }
    let s = match route {
        Route::Recursive => q_series_recursive(rank)?,
        Route::Direct => q_series_direct(rank)?,
    };
    let a = normalize_to_b(&s)?;
    let out: PolySeries = if det {
        specialize_det(&a.to_series(), if q1 { QSpec::One } else { QSpec::Formal })?
    } else if q1 {
        PolySeries {
            num: a.num.at_q_one(),
            den: a.den.iter().map(|f| abzeta::series::DenFactor::with_pow(f.u, 0, f.k, f.pow)).collect(),
        }
    } else {
        a
    };
    match format {
        Format::Json => print_json(series_to_json(&out.to_series())),
        Format::Text => {
            let names = if out.rank() == 1 && det { XNames::Single } else { XNames::Indexed };
            println!("numerator: {}", abzeta::poly::render_polyx(&out.num, names));
            println!("denominator: {}", out.render_factors(names));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    rank_max: usize,
    fsum_max: u32,
    pset: String,
    aset: String,
    golden_only: bool,
    golden_dir: Option<PathBuf>,
    jobs: Option<usize>,
    format: Format,
) -> Result<ExitCode, Error> {
    if rank_max > RANK_CAP {
        return Err(Error::BudgetExceeded(format!("rank {} above {}", rank_max, RANK_CAP)));
    }
    let primes: Vec<u32> = verify::parse_int_list(&pset)?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| Error::InvalidInput(format!("bad prime {}", x))))
        .collect::<Result<_, _>>()?;
    verify::primes_fit(&primes)?;
    let opts = VerifyOptions {
        rank_max,
        fsum_max,
        primes,
        a_values: verify::parse_int_list(&aset)?,
        golden_only,
        budget: budget_from_env()?,
    };
    let golden = match golden_dir {
        Some(d) => GoldenSet::from_dir(&d)?,
        None => GoldenSet::embedded(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let report = pool.install(|| verify::run(&opts, &golden));
    match format {
        Format::Json => print_json(json!({"status": report.status(), "checks": report.checks})),
        Format::Text => {
            let passed = report.checks.iter().filter(|c| c.status == Status::Pass).count();
            for c in report.checks.iter().filter(|c| c.status != Status::Pass) {
                let tag = if c.status == Status::Fail { "FAIL" } else { "ERROR" };
                println!("{} {}: {}", tag, c.name, c.detail);
            }
            println!(
                "{} of {} checks passed: {}",
                passed,
                report.checks.len(),
                match report.status() {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Error => "ERROR",
                }
            );
        }
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn cmd_dirichlet(rank: usize, a: i64, p: BigUint, s: String, format: Format) -> Result<ExitCode, Error> {
    if rank > RANK_CAP {
        return Err(Error::BudgetExceeded(format!("rank {} above {}", rank, RANK_CAP)));
    }
    let s = parse_rational(&s)?;
    let v = dirichlet_p_factor(rank, a, &p, &s)?;
    match format {
        Format::Json => print_json(json!({"value": v.to_string()})),
        Format::Text => println!("{}", v),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(rank: usize, fsum: u32, fsum_min: u32, rank_max: usize, format: Format) -> Result<ExitCode, Error> {
    let target = Duration::from_millis(50);
    let by_fsum = bench::sweep_fsum(rank, fsum_min..=fsum, target)?;
    let by_rank = bench::sweep_rank(fsum_min, 1..=rank_max, target)?;
    let series = bench::series_rows(rank_max.min(RANK_CAP))?;
    let slow: Vec<f64> = by_fsum.iter().map(|r| r.slow_secs).collect();
    let fast: Vec<f64> = by_fsum.iter().map(|r| r.fast_secs).collect();
    let growth = bench::mean_growth(&slow);
    let fast_spread = bench::spread(&fast);
    match format {
        Format::Json => print_json(json!({
            "by_fsum": by_fsum,
            "by_rank": by_rank,
            "series": series,
            "slow_mean_growth": growth,
            "fast_spread": fast_spread,
        })),
        Format::Text => {
            println!("fixed r = {}, f = (sumf, 0, ...):", rank);
            print!("{}", bench::render_sigma_table(&by_fsum));
            println!("slow mean growth per unit sumf: {:.3}", growth);
            println!("fast max/first: {:.3}", fast_spread);
            println!();
            println!("fixed sumf = {}:", fsum_min);
            print!("{}", bench::render_sigma_table(&by_rank));
            println!();
            println!("series construction:");
            print!("{}", bench::render_series_table(&series));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Sigma { p, a, f, method, poly, format } => cmd_sigma(p, a, f, method, poly, format),
        Cmd::Series { rank, det, q1, route, format } => cmd_series(rank, det, q1, route, format),
        Cmd::Verify {
            rank_max,
            fsum_max,
            pset,
            aset,
            golden_only,
            golden_dir,
            jobs,
            format,
        } => cmd_verify(rank_max, fsum_max, pset, aset, golden_only, golden_dir, jobs, format),
        Cmd::Dirichlet { rank, a, p, s, format } => cmd_dirichlet(rank, a, p, s, format),
        Cmd::Bench { rank, fsum, fsum_min, rank_max, format } => cmd_bench(rank, fsum, fsum_min, rank_max, format),
    };
    result.unwrap_or_else(fail)
}
