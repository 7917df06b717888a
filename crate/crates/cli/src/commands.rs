use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use stopset::asymptotics::{
    beta_scan, critical_exponent_bounds, growth_rate_bipartite, growth_rate_const_row, growth_rate_random,
    max_const_row_exponent, sigma_bounds, BetaScan, ConstRowScan, ExponentResult,
};
use stopset::becsim::{block_error_exact, block_error_monte_carlo};
use stopset::bigmath::{format_sig, log2_rational};
use stopset::exactdist::{bounds_redundant_random, redundant_random_exact_entry, EnsembleSpec};
use stopset::gf2core::{default_w_max, enumerate_stopping_sets, redundant_extend, stopping_distance};
use stopset::qlwsearch::{count_dmin_ge2, count_dmin_ge2_parallel, QTable};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{exact_fields, float, json, read_matrix, write_matrix, Csv, DECIMAL_SIG};

fn need(v: Option<usize>, flag: &str, family: &str) -> CliResult<usize> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {family}")))
}

pub fn dist(a: &DistArgs) -> CliResult<Vec<u8>> {
    let n = a.n;
    let spec = match a.family {
        Family::Random => EnsembleSpec::Random {
            m: need(a.m, "m", "random")?,
            n,
        },
        Family::ConstRow => EnsembleSpec::ConstRow {
            m: need(a.m, "m", "const-row")?,
            n,
            r: need(a.r, "r", "const-row")?,
        },
        Family::Bipartite => EnsembleSpec::Bipartite {
            n,
            c: need(a.c, "c", "bipartite")?,
            d: need(a.d, "d", "bipartite")?,
        },
        Family::RedundantRandom => EnsembleSpec::RedundantRandom {
            m: need(a.m, "m", "redundant-random")?,
            n,
            l: need(a.l, "l", "redundant-random")?,
        },
        Family::RedundantConstRow => EnsembleSpec::RedundantConstRow {
            m: need(a.m, "m", "redundant-const-row")?,
            n,
            r: need(a.r, "r", "redundant-const-row")?,
            l: a.l.unwrap_or(2),
        },
    };
    let dist = spec.distribution_prefix(a.w_max.unwrap_or(n))?;
    let mut csv = Csv::new(&["w", "numerator", "denominator", "decimal", "log2"])?;
    for (w, v) in dist.values().iter().enumerate() {
        let [num, den, dec] = exact_fields(v);
        csv.row([w.to_string(), num, den, dec, float(log2_rational(v))])?;
    }
    csv.finish()
}

pub fn bounds(a: &BoundsArgs) -> CliResult<Vec<u8>> {
    let w_max = a.w_max.unwrap_or(a.n.min(16)).min(a.n);
    if a.l == 0 {
        return Err(CliError::Usage("--l must be positive".into()));
    }
    let q = QTable::by_rank([a.l], 1..=w_max)?;
    let mut csv = Csv::new(&[
        "w",
        "lower_numerator",
        "lower_denominator",
        "lower",
        "exact_numerator",
        "exact_denominator",
        "exact",
        "upper_numerator",
        "upper_denominator",
        "upper",
    ])?;
    for w in 1..=w_max {
        let exact = redundant_random_exact_entry(a.m, a.n, a.l, w, &q)?;
        let b = bounds_redundant_random(a.m, a.n, a.l, w)?;
        let mut fields = vec![w.to_string()];
        for v in [&b.lower, &exact, &b.upper] {
            fields.extend(exact_fields(v));
        }
        csv.row(fields)?;
    }
    csv.finish()
}

pub fn qlw(a: &QlwArgs) -> CliResult<Vec<u8>> {
    if a.l_max == 0 || a.w_max == 0 {
        return Err(CliError::Usage("--l-max and --w-max must be positive".into()));
    }
    let table = match a.method {
        QMethod::Rank => QTable::by_rank(1..=a.l_max, 1..=a.w_max)?,
        method => {
            let mut t = QTable::new();
            for l in 1..=a.l_max {
                for w in 1..=a.w_max {
                    let q = match method {
                        QMethod::Gray => count_dmin_ge2(l, w)?,
                        _ => count_dmin_ge2_parallel(l, w, rayon::current_num_threads() * 4)?,
                    };
                    t.insert(l, w, q.into())?;
                }
            }
            t
        }
    };
    let mut out = table.to_json().into_bytes();
    out.push(b'\n');
    Ok(out)
}

pub fn growth(a: &GrowthArgs) -> CliResult<Vec<u8>> {
    if a.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let grid = (0..=a.points).map(|k| k as f64 / a.points as f64);
    match a.curve {
        Curve::Random => {
            let mut csv = Csv::new(&["ell", "rate_bits"])?;
            for ell in grid {
                csv.row([float(ell), float(growth_rate_random(ell)?)])?;
            }
            csv.finish()
        }
        Curve::ConstRow => {
            let r = need(a.r, "r", "const-row")?;
            let mut csv = Csv::new(&["ell", "rate_bits"])?;
            for ell in grid {
                csv.row([float(ell), float(growth_rate_const_row(ell, a.rate, r)?)])?;
            }
            csv.finish()
        }
        Curve::Bipartite => {
            let c = need(a.c, "c", "bipartite")?;
            let d = need(a.d, "d", "bipartite")?;
            let mut csv = Csv::new(&["ell", "rate_nats", "rate_bits", "x0"])?;
            // x0 only exists strictly inside (0, 1).
            for ell in grid.filter(|&l| l > 0.0 && l < 1.0) {
                let g = growth_rate_bipartite(ell, c, d)?;
                csv.row([float(ell), float(g.nats), float(g.bits), float(g.x0)])?;
            }
            csv.finish()
        }
        Curve::Sigma => {
            let mu = a.mu.unwrap_or(1.0 - a.rate);
            let mut csv = Csv::new(&["ell", "lower_bits", "upper_bits"])?;
            for ell in grid {
                let s = sigma_bounds(ell, a.rate, mu)?;
                csv.row([float(ell), float(s.lower), float(s.upper)])?;
            }
            csv.finish()
        }
    }
}

#[derive(Serialize)]
struct ExponentReport {
    rate: f64,
    mu: f64,
    alpha_lower: ExponentResult,
    alpha_upper: ExponentResult,
    beta: Vec<BetaScan>,
    beta_max: Option<BetaScan>,
    const_row_max: ConstRowScan,
}

pub fn exponent(a: &ExponentArgs) -> CliResult<Vec<u8>> {
    let mu = a.mu.unwrap_or(1.0 - a.rate);
    let (alpha_lower, alpha_upper) = critical_exponent_bounds(a.rate, mu)?;
    let beta = beta_scan(a.rate, a.c_min, a.c_max)?;
    let beta_max = beta
        .iter()
        .copied()
        .reduce(|best, p| if p.beta.value > best.beta.value { p } else { best });
    let const_row_max = max_const_row_exponent(a.rate, a.r_min, a.r_max)?;
    json(&ExponentReport {
        rate: a.rate,
        mu,
        alpha_lower,
        alpha_upper,
        beta,
        beta_max,
        const_row_max,
    })
}

pub fn extend(a: &ExtendArgs, out: Option<&std::path::Path>) -> CliResult<Vec<u8>> {
    let h = read_matrix(&a.matrix)?;
    let ext = redundant_extend(&h, a.l)?;
    eprintln!("extended {} x {} to {} rows with L={}", h.m(), h.n(), ext.m(), a.l);
    Ok(write_matrix(&ext, a.output_format, out))
}

#[derive(Serialize)]
struct StopdistReport {
    m: usize,
    n: usize,
    w_max: usize,
    distance: Option<usize>,
    multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sets: Option<Vec<Vec<usize>>>,
}

pub fn stopdist(a: &StopdistArgs) -> CliResult<Vec<u8>> {
    let h = read_matrix(&a.matrix)?;
    let w_max = a.w_max.unwrap_or_else(|| default_w_max(&h));
    let report = stopping_distance(&h, w_max)?;
    let sets = match (a.list, report.distance) {
        (true, Some(d)) => Some(
            enumerate_stopping_sets(&h, d)?
                .into_iter()
                .filter(|s| s.len() == d)
                .map(|s| s.indices().to_vec())
                .collect(),
        ),
        (true, None) => Some(Vec::new()),
        (false, _) => None,
    };
    json(&StopdistReport {
        m: h.m(),
        n: h.n(),
        w_max,
        distance: report.distance,
        multiplicity: report.multiplicity,
        sets,
    })
}

pub fn simulate(a: &SimulateArgs, seed: u64) -> CliResult<Vec<u8>> {
    let h = read_matrix(&a.matrix)?;
    let mut csv = Csv::new(&["epsilon", "estimate", "ci_low", "ci_high", "trials", "failures"])?;
    // Every point reuses the master seed, so the curve is drawn with common random numbers.
    for &eps in &a.eps {
        let r = block_error_monte_carlo(&h, eps, a.trials, seed)?;
        csv.row([
            float(eps),
            float(r.estimate),
            float(r.ci95.0),
            float(r.ci95.1),
            r.trials.to_string(),
            r.failures.to_string(),
        ])?;
    }
    csv.finish()
}

/// `"1/2"`, `"3"`, `"0.125"` or `"1e-3"` as an exact rational.
pub fn parse_rational(s: &str) -> CliResult<BigRational> {
    let bad = || CliError::Usage(format!("not a number: {s:?}"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * ten.pow(scale as u32))
    } else {
        BigRational::new(num, ten.pow((-scale) as u32))
    })
}

pub fn exact_fer(a: &ExactFerArgs) -> CliResult<Vec<u8>> {
    let h = read_matrix(&a.matrix)?;
    let eps = a.eps.iter().map(|s| parse_rational(s)).collect::<CliResult<Vec<_>>>()?;
    let mut csv = Csv::new(&["epsilon", "numerator", "denominator", "value"])?;
    for e in &eps {
        let fer = block_error_exact(&h, e)?;
        csv.row([
            e.to_string(),
            fer.numer().to_string(),
            fer.denom().to_string(),
            format_sig(&fer, DECIMAL_SIG),
        ])?;
    }
    csv.finish()
}
