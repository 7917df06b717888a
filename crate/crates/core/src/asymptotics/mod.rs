//! Asymptotic growth rates of average stopping-set distributions and the
//! critical exponents where they change sign.
//!
//! Rates are in bits per symbol except where noted; the bipartite rate is
//! natively in nats and [`BipartiteRate`] carries both.

mod roots;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
pub use roots::{bisect, first_sign_change, Root, BISECTION_TOL, SCAN_STEP};

/// Binary entropy in bits, `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(format!("entropy argument {x} outside [0, 1]")));
    }
    Ok(entropy_nats(x) / std::f64::consts::LN_2)
}

fn entropy_nats(x: f64) -> f64 {
    let xlogx = |p: f64| if p <= 0.0 { 0.0 } else { p * p.ln() };
    -xlogx(x) - xlogx(1.0 - x)
}

fn h2(x: f64) -> f64 {
    entropy_nats(x) / std::f64::consts::LN_2
}

fn check_ell(ell: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&ell) {
        return Err(invalid(format!("normalized weight {ell} outside [0, 1]")));
    }
    Ok(())
}

fn check_rate(rate: f64) -> Result<()> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(invalid(format!("design rate {rate} outside (0, 1)")));
    }
    Ok(())
}

/// Growth rate of the random ensemble: `H(ell)` for every design rate.
pub fn growth_rate_random(ell: f64) -> Result<f64> {
    binary_entropy(ell)
}

/// `H(ell) + (1 - R) log2(1 - r ell (1 - ell)^{r-1})`; `-inf` where the log
/// argument vanishes.
pub fn growth_rate_const_row(ell: f64, rate: f64, r: usize) -> Result<f64> {
    check_ell(ell)?;
    check_rate(rate)?;
    if r == 0 {
        return Err(invalid("row weight must be positive"));
    }
    let arg = 1.0 - r as f64 * ell * (1.0 - ell).powi(r as i32 - 1);
    if arg <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(h2(ell) + (1.0 - rate) * arg.log2())
}

/// `x ((1+x)^{d-1} - 1) / ((1+x)^d - d x)` rewritten with `(1+x)^{-d}` so it
/// stays finite for large `x` and `d`.
fn x0_lhs(x: f64, d: usize) -> f64 {
    let inv = (-(d as f64) * x.ln_1p()).exp();
    x * (1.0 / (1.0 + x) - inv) / (1.0 - d as f64 * x * inv)
}

/// Positive root of `x ((1+x)^{d-1} - 1) / ((1+x)^d - d x) = ell`.
pub fn solve_x0(ell: f64, d: usize) -> Result<Root> {
    if !(ell > 0.0 && ell < 1.0) {
        return Err(invalid(format!("normalized weight {ell} outside (0, 1)")));
    }
    if d < 2 {
        return Err(invalid(format!("check degree {d} < 2")));
    }
    let g = |x: f64| x0_lhs(x, d) - ell;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::RootFinding(format!("cannot bracket x0 for ell={ell}, d={d}")));
        }
    }
    // Bisection in log(x) keeps relative precision near zero, where x0 ~ sqrt(ell / (d-1)).
    let lo = f64::MIN_POSITIVE.sqrt();
    let root = bisect(|t: f64| g(t.exp()), lo.ln(), hi.ln(), 1e-15)?;
    let x = root.x.exp();
    Ok(Root {
        x,
        residual: g(x).abs(),
        iterations: root.iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BipartiteRate {
    pub nats: f64,
    pub bits: f64,
    pub x0: f64,
}

/// `(c/d) ln(((1+x0)^d - d x0) / x0^{ell d}) - (c-1) H_e(ell)`.
pub fn growth_rate_bipartite(ell: f64, c: usize, d: usize) -> Result<BipartiteRate> {
    if c < 2 || d < 2 {
        return Err(invalid(format!("degrees must be at least 2 (c={c}, d={d})")));
    }
    let x0 = solve_x0(ell, d)?.x;
    let df = d as f64;
    // ln((1+x)^d - d x) = d ln(1+x) + ln(1 - d x (1+x)^{-d})
    let inv = (-df * x0.ln_1p()).exp();
    let log_poly = df * x0.ln_1p() + (-df * x0 * inv).ln_1p();
    let nats = c as f64 / df * (log_poly - ell * df * x0.ln()) - (c as f64 - 1.0) * entropy_nats(ell);
    Ok(BipartiteRate {
        nats,
        bits: nats / std::f64::consts::LN_2,
        x0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaBounds {
    pub lower: f64,
    pub upper: f64,
    /// `(1 - R) / mu` is not an integer, so the extension degree is not
    /// realizable; the bounds are still evaluated.
    pub non_integral_blocks: bool,
}

fn non_integral(rate: f64, mu: f64) -> bool {
    let k = (1.0 - rate) / mu;
    (k - k.round()).abs() > 1e-9
}

fn check_mu(rate: f64, mu: f64) -> Result<()> {
    check_rate(rate)?;
    if !(mu > 0.0 && mu <= 1.0 - rate + 1e-12) {
        return Err(invalid(format!("normalized extension degree {mu} outside (0, 1 - R]")));
    }
    Ok(())
}

/// Bounds on the growth rate of the redundant random ensemble with design
/// rate `R` and normalized extension degree `mu`.
pub fn sigma_bounds(ell: f64, rate: f64, mu: f64) -> Result<SigmaBounds> {
    check_ell(ell)?;
    check_mu(rate, mu)?;
    let h = h2(ell);
    let (lower, upper) = if ell <= mu {
        (h - (1.0 - rate), h - (1.0 - rate) * (1.0 - ell / mu))
    } else {
        (h, h)
    };
    Ok(SigmaBounds {
        lower,
        upper,
        non_integral_blocks: non_integral(rate, mu),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExponentFlag {
    /// The curve is nonnegative throughout the scan; the exponent is reported as 0.
    NoSignChange,
    /// `(1 - R) / mu` is not an integer.
    NonIntegralBlocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentResult {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
    pub flag: Option<ExponentFlag>,
}

impl ExponentResult {
    fn from_root(root: Option<Root>, flag: Option<ExponentFlag>) -> Self {
        match root {
            Some(r) => Self {
                value: r.x,
                residual: r.residual,
                iterations: r.iterations,
                flag,
            },
            None => Self {
                value: 0.0,
                residual: 0.0,
                iterations: 0,
                flag: Some(ExponentFlag::NoSignChange),
            },
        }
    }
}

const EXPONENT_SCAN_END: f64 = 0.5;

/// `(alpha_L, alpha_U)`: least positive roots of `H(ell) - (1-R)(1 - ell/mu)`
/// and `H(ell) - (1-R)` on `(0, 1/2]`.
pub fn critical_exponent_bounds(rate: f64, mu: f64) -> Result<(ExponentResult, ExponentResult)> {
    check_mu(rate, mu)?;
    let flag = non_integral(rate, mu).then_some(ExponentFlag::NonIntegralBlocks);
    let lower_curve = |ell: f64| h2(ell) - (1.0 - rate) * (1.0 - ell / mu);
    let upper_curve = |ell: f64| h2(ell) - (1.0 - rate);
    let a_l = first_sign_change(lower_curve, 0.0, EXPONENT_SCAN_END, SCAN_STEP)?;
    let a_u = first_sign_change(upper_curve, 0.0, EXPONENT_SCAN_END, SCAN_STEP)?;
    if a_l.is_none() || a_u.is_none() {
        return Err(Error::RootFinding(format!("no sign change for R={rate}, mu={mu}")));
    }
    Ok((ExponentResult::from_root(a_l, flag), ExponentResult::from_root(a_u, flag)))
}

fn gamma_or_nan(ell: f64, c: usize, d: usize) -> f64 {
    growth_rate_bipartite(ell, c, d).map_or(f64::NAN, |g| g.nats)
}

/// Least positive `ell` where the bipartite growth rate turns nonnegative.
pub fn critical_exponent_bipartite(c: usize, d: usize) -> Result<ExponentResult> {
    if c < 3 || d < 2 {
        return Err(invalid(format!("need c >= 3 and d >= 2 (c={c}, d={d})")));
    }
    if gamma_or_nan(SCAN_STEP, c, d) >= 0.0 {
        return Ok(ExponentResult::from_root(None, None));
    }
    let root = first_sign_change(|ell| gamma_or_nan(ell, c, d), SCAN_STEP, EXPONENT_SCAN_END, SCAN_STEP)?;
    Ok(ExponentResult::from_root(root, None))
}

/// Same exponent located on the curve in bits.
pub fn critical_exponent_bipartite_bits(c: usize, d: usize) -> Result<ExponentResult> {
    let bits = |ell: f64| growth_rate_bipartite(ell, c, d).map_or(f64::NAN, |g| g.bits);
    let root = first_sign_change(bits, SCAN_STEP, EXPONENT_SCAN_END, SCAN_STEP)?;
    Ok(ExponentResult::from_root(root, None))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaScan {
    pub c: usize,
    pub d: usize,
    pub beta: ExponentResult,
}

/// Scan `c` in `c_min..=c_max` with `d = c / (1 - R)` (non-integral `d` is
/// skipped) and return every point plus the best, ties to smaller `c`.
pub fn beta_scan(rate: f64, c_min: usize, c_max: usize) -> Result<Vec<BetaScan>> {
    use rayon::prelude::*;
    check_rate(rate)?;
    if c_min < 3 || c_min > c_max {
        return Err(invalid(format!("empty or invalid scan range [{c_min}, {c_max}]")));
    }
    let points: Vec<(usize, usize)> = (c_min..=c_max)
        .filter_map(|c| {
            let d = c as f64 / (1.0 - rate);
            ((d - d.round()).abs() < 1e-9).then_some((c, d.round() as usize))
        })
        .collect();
    if points.is_empty() {
        return Err(invalid("no degree pair in range meets the rate constraint"));
    }
    points
        .into_par_iter()
        .map(|(c, d)| critical_exponent_bipartite(c, d).map(|beta| BetaScan { c, d, beta }))
        .collect()
}

pub fn max_beta_over_c(rate: f64, c_min: usize, c_max: usize) -> Result<BetaScan> {
    let scan = beta_scan(rate, c_min, c_max)?;
    Ok(scan
        .into_iter()
        .reduce(|best, p| if p.beta.value > best.beta.value { p } else { best })
        .expect("nonempty scan"))
}

/// Least `ell` where the constant-row growth rate climbs back to zero after
/// dipping below it. The curve is positive just above 0 for every `r`, since
/// `H` has infinite slope there, so that first stretch is skipped.
pub fn critical_exponent_const_row(rate: f64, r: usize) -> Result<ExponentResult> {
    check_rate(rate)?;
    if r < 2 {
        return Err(invalid(format!("row weight {r} < 2")));
    }
    let f = |ell: f64| growth_rate_const_row(ell, rate, r).unwrap_or(f64::NAN);
    let steps = (EXPONENT_SCAN_END / SCAN_STEP).round() as usize;
    let Some(dip) = (1..=steps).map(|k| k as f64 * SCAN_STEP).find(|&ell| f(ell) < 0.0) else {
        return Ok(ExponentResult::from_root(None, None));
    };
    let root = first_sign_change(f, dip, EXPONENT_SCAN_END, SCAN_STEP)?;
    Ok(ExponentResult::from_root(root, None))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstRowScan {
    pub r: usize,
    pub exponent: ExponentResult,
}

/// Best row weight in `r_min..=r_max` for the constant-row exponent, ties to smaller `r`.
pub fn max_const_row_exponent(rate: f64, r_min: usize, r_max: usize) -> Result<ConstRowScan> {
    use rayon::prelude::*;
    if r_min < 2 || r_min > r_max {
        return Err(invalid(format!("empty or invalid scan range [{r_min}, {r_max}]")));
    }
    let scan = (r_min..=r_max)
        .into_par_iter()
        .map(|r| critical_exponent_const_row(rate, r).map(|exponent| ConstRowScan { r, exponent }))
        .collect::<Result<Vec<_>>>()?;
    Ok(scan
        .into_iter()
        .reduce(|best, p| if p.exponent.value > best.exponent.value { p } else { best })
        .expect("nonempty scan"))
}

/// `ln C(n, k)` by summing logs.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum()
}

/// `(1/n) log2` of the exact random-ensemble entry, evaluated in the log domain.
pub fn finite_rate_random(m: usize, n: usize, w: usize) -> f64 {
    let wf = w as f64;
    let tail = (-wf * (-wf * std::f64::consts::LN_2).exp()).ln_1p();
    (ln_binomial(n, w) + m as f64 * tail) / std::f64::consts::LN_2 / n as f64
}

/// `(1/n) log2` of the exact constant-row entry, evaluated in the log domain.
pub fn finite_rate_const_row(m: usize, n: usize, r: usize, w: usize) -> f64 {
    let ratio = if r >= 1 && r - 1 <= n - w {
        (ln_binomial(n - w, r - 1) - ln_binomial(n, r)).exp() * w as f64
    } else {
        0.0
    };
    let tail = (-ratio).ln_1p();
    (ln_binomial(n, w) + m as f64 * tail) / std::f64::consts::LN_2 / n as f64
}
