//! Exact big-number helpers shared by the closed-form and counting modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Binomial coefficient with the convention `C(a, b) = 0` for `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_int(a: i64, b: i64) -> BigInt {
    BigInt::from(binomial(a, b))
}

pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

pub fn pow2_int(e: u64) -> BigInt {
    BigInt::one() << e
}

pub fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

pub fn rational_from_uint(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `log2` of a positive big integer, accurate to double precision for any size.
pub fn log2_uint(v: &BigUint) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().map(f64::log2).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(0.0);
    top.log2() + shift as f64
}

/// `log2` of a nonnegative rational; `-inf` at zero, NaN for negative input.
pub fn log2_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    if r.is_negative() {
        return f64::NAN;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    log2_uint(num) - log2_uint(den)
}

/// Converts through the log domain so that huge numerators and denominators
/// do not overflow; values outside the f64 range saturate to 0 or infinity.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 && n.abs() < 1e300 && d < 1e300 {
            return n / d;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * log2_rational(&r.abs()).exp2()
}

/// Scientific notation with `sig` significant digits from a log2 value,
/// e.g. `8.88e-14`. Works far outside the f64 range.
pub fn sci_from_log2(log2v: f64, sig: usize) -> String {
    if log2v == f64::NEG_INFINITY {
        return "0".to_string();
    }
    if !log2v.is_finite() {
        return format!("{log2v}");
    }
    let log10v = log2v * std::f64::consts::LOG10_2;
    let mut exp = log10v.floor();
    let mut mant = 10f64.powf(log10v - exp);
    let scale = 10f64.powi(sig as i32 - 1);
    mant = (mant * scale).round() / scale;
    if mant >= 10.0 {
        mant /= 10.0;
        exp += 1.0;
    }
    format!("{:.*}e{}", sig - 1, mant, exp as i64)
}

/// Rounds a positive rational to `sig` significant digits, as `(mantissa, exponent)`
/// with the mantissa an integer in `[10^(sig-1), 10^sig)`.
pub fn round_sig(r: &BigRational, sig: u32) -> Option<(u64, i64)> {
    if !r.is_positive() {
        return None;
    }
    let log10v = log2_rational(r) * std::f64::consts::LOG10_2;
    let mut exp = log10v.floor() as i64 - (sig as i64 - 1);
    // Correct the floating estimate with exact comparisons.
    loop {
        let scaled = scale_pow10(r, -exp);
        let m = round_half_up(&scaled);
        let lo = BigInt::from(10u64.pow(sig - 1));
        let hi = BigInt::from(10u64.pow(sig));
        if m < lo {
            exp -= 1;
        } else if m >= hi {
            exp += 1;
        } else {
            return m.to_u64().map(|m| (m, exp + sig as i64 - 1));
        }
    }
}

fn scale_pow10(r: &BigRational, e: i64) -> BigRational {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        r * BigRational::from_integer(p)
    } else {
        r / BigRational::from_integer(p)
    }
}

fn round_half_up(r: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (r + half).floor().to_integer()
}

/// `"8.88e-14"`-style string from [`round_sig`].
pub fn format_sig(r: &BigRational, sig: u32) -> String {
    match round_sig(r, sig) {
        None => "0".into(),
        Some((m, e)) => {
            let digits = m.to_string();
            let (head, tail) = digits.split_at(1);
            if tail.is_empty() {
                format!("{head}e{e}")
            } else {
                format!("{head}.{tail}e{e}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn log2_of_huge_values() {
        let v = pow2(5000) * 3u32;
        assert!((log2_uint(&v) - (5000.0 + 3f64.log2())).abs() < 1e-9);
        let r = BigRational::new(BigInt::one(), pow2_int(4000));
        assert!((log2_rational(&r) + 4000.0).abs() < 1e-12);
        assert_eq!(rational_to_f64(&r), 0.0);
    }

    #[test]
    fn significant_figures() {
        let r = BigRational::new(BigInt::from(25), BigInt::from(16));
        assert_eq!(format_sig(&r, 3), "1.56e0");
        let tiny = BigRational::new(BigInt::one(), pow2_int(100)) * BigRational::from_integer(BigInt::from(7));
        assert_eq!(format_sig(&tiny, 3), "5.52e-30");
        assert_eq!(sci_from_log2((0.515f64).log2(), 3), "5.15e-1");
        assert_eq!(format_sig(&BigRational::from_integer(BigInt::from(9_996)), 3), "1.00e4");
    }
}
