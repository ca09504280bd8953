//! Exact evaluation of `Q` over rationals.
//!
//! Used for golden values whose inputs are dyadic (for instance the
//! seven/six-dimensional positivity witness), so that no rounding is involved.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact quotient and its factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactQuotient {
    /// `s1 * s2 / s3`.
    pub value: BigRational,
    /// `M1(x) - M1(y)`.
    pub s1: BigRational,
    /// `M2(y) - M2(x)`.
    pub s2: BigRational,
    /// `M3(x) + M3(y)`.
    pub s3: BigRational,
}

impl ExactQuotient {
    /// Nearest `f64` to the exact value.
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

/// `p / q` as a [`BigRational`].
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn validate(entries: &[BigRational]) -> Result<()> {
    if entries.is_empty() {
        return Err(Error::EmptyVector);
    }
    for (index, v) in entries.iter().enumerate() {
        if !v.is_positive() {
            return Err(Error::NonPositiveEntry {
                index,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

fn sums(v: &[BigRational]) -> [BigRational; 3] {
    let mut out = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for t in v {
        let sq = t * t;
        out[0] += t;
        out[2] += &sq * t;
        out[1] += sq;
    }
    out
}

/// `Q(x, y)` in exact arithmetic.
pub fn quotient_q_exact(x: &[BigRational], y: &[BigRational]) -> Result<ExactQuotient> {
    validate(x)?;
    validate(y)?;
    let [x1, x2, x3] = sums(x);
    let [y1, y2, y3] = sums(y);
    let s1 = x1 - y1;
    let s2 = y2 - x2;
    let s3 = x3 + y3;
    let value = &s1 * &s2 / &s3;
    Ok(ExactQuotient { value, s1, s2, s3 })
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Converts finite doubles to exact rationals (every finite double is dyadic).
pub fn from_f64_slice(values: &[f64]) -> Option<Vec<BigRational>> {
    values.iter().map(|&v| BigRational::from_float(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn dyadic_power_sums() {
        let x = vec![ratio(1, 1), ratio(1, 2), ratio(1, 4)];
        let [m1, m2, m3] = sums(&x);
        assert_eq!(m1, ratio(7, 4));
        assert_eq!(m2, ratio(21, 16));
        assert_eq!(m3, ratio(73, 64));
    }

    #[test]
    fn one_dimensional_case_is_exact() {
        let q = quotient_q_exact(&[ratio(1, 1)], &[ratio(2, 1)]).unwrap();
        assert_eq!(q.value, ratio(-1, 3));
    }

    #[test]
    fn rejects_non_positive() {
        assert!(quotient_q_exact(&[ratio(0, 1)], &[ratio(1, 1)]).is_err());
        assert_eq!(quotient_q_exact(&[], &[ratio(1, 1)]), Err(Error::EmptyVector));
    }

    #[test]
    fn parses_ratios() {
        assert_eq!(parse_ratio("3/2"), Some(ratio(3, 2)));
        assert_eq!(parse_ratio(" 7 "), Some(ratio(7, 1)));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("x"), None);
    }
}
