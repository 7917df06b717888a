//! Derivative-free bracketing and bisection.

use crate::error::{Error, Result};

pub const SCAN_STEP: f64 = 1e-3;
pub const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Bisection on a bracket where `f(lo)` and `f(hi)` have opposite signs
/// (a zero endpoint is returned immediately).
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<Root> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(Root { x: lo, residual: 0.0, iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(Root { x: hi, residual: 0.0, iterations: 0 });
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::RootFinding(format!("no sign change on [{lo}, {hi}]")));
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        iterations += 1;
        if fm == 0.0 {
            return Ok(Root { x: mid, residual: 0.0, iterations });
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(Root { x, residual: f(x).abs(), iterations })
}

/// First sign change of `f` scanning `(start, end]` in steps of `step`,
/// refined by bisection. `None` when `f` keeps one sign throughout.
pub fn first_sign_change(f: impl Fn(f64) -> f64, start: f64, end: f64, step: f64) -> Result<Option<Root>> {
    let mut prev_x = start;
    let mut prev = f(start);
    let steps = ((end - start) / step).ceil() as usize;
    for k in 1..=steps {
        let x = (start + k as f64 * step).min(end);
        let v = f(x);
        if prev == 0.0 {
            return Ok(Some(Root { x: prev_x, residual: 0.0, iterations: 0 }));
        }
        if v.signum() != prev.signum() {
            return bisect(&f, prev_x, x, BISECTION_TOL).map(Some);
        }
        prev_x = x;
        prev = v;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisects_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-13);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn scan_finds_first_crossing() {
        let r = first_sign_change(|x| (x - 0.2) * (x - 0.4), 0.0, 0.5, 1e-3).unwrap().unwrap();
        assert!((r.x - 0.2).abs() < 1e-10);
        assert!(first_sign_change(|x| x + 1.0, 0.0, 0.5, 1e-3).unwrap().is_none());
    }
}
