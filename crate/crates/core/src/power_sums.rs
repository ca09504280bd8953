//! Positive vectors, their first three power sums, and the quotient `Q`.

use alloc::vec::Vec;
use core::ops::Deref;

use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// A non-empty sequence of finite, strictly positive reals.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveVector(Vec<f64>);

impl PositiveVector {
    /// Validates `entries`. Subnormal values are accepted.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        validate(&entries)?;
        Ok(Self(entries))
    }

    /// Copies and validates a slice.
    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    /// `n` copies of `value`.
    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::new(alloc::vec![value; n])
    }

    /// Entries as a slice.
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Consumes the vector, returning its entries.
    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `lambda * self`, for `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument("scale factor must be finite and positive"));
        }
        Self::new(self.0.iter().map(|v| v * lambda).collect())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &PositiveVector) -> PositiveVector {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        PositiveVector(out)
    }
}

impl Deref for PositiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for PositiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for PositiveVector {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Self::new(value)
    }
}

pub(crate) fn validate(entries: &[f64]) -> Result<()> {
    if entries.is_empty() {
        return Err(Error::EmptyVector);
    }
    for (index, &value) in entries.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveEntry { index, value });
        }
    }
    Ok(())
}

/// `(M1, M2, M3)`: the sums of first, second and third powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSumTriple {
    /// Sum of entries.
    pub m1: f64,
    /// Sum of squares.
    pub m2: f64,
    /// Sum of cubes.
    pub m3: f64,
}

/// Power sums of a validated vector.
pub fn power_sums(x: &PositiveVector) -> PowerSumTriple {
    power_sums_unchecked(x)
}

/// Power sums of a raw slice. Entries are validated first.
pub fn power_sums_of(entries: &[f64]) -> Result<PowerSumTriple> {
    validate(entries)?;
    Ok(power_sums_unchecked(entries))
}

pub(crate) fn power_sums_unchecked(entries: &[f64]) -> PowerSumTriple {
    let mut m1 = CompensatedSum::new();
    let mut m2 = CompensatedSum::new();
    let mut m3 = CompensatedSum::new();
    for &v in entries {
        let sq = v * v;
        m1.add(v);
        m2.add(sq);
        m3.add(sq * v);
    }
    PowerSumTriple {
        m1: m1.value(),
        m2: m2.value(),
        m3: m3.value(),
    }
}

/// The quotient together with its three factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientValue {
    /// `s1 * s2 / s3`.
    pub value: f64,
    /// `M1(x) - M1(y)`.
    pub s1: f64,
    /// `M2(y) - M2(x)`.
    pub s2: f64,
    /// `M3(x) + M3(y)`, always positive.
    pub s3: f64,
}

impl QuotientValue {
    pub(crate) fn from_sums(px: PowerSumTriple, py: PowerSumTriple) -> Self {
        let s1 = px.m1 - py.m1;
        let s2 = py.m2 - px.m2;
        let s3 = px.m3 + py.m3;
        QuotientValue {
            value: s1 * s2 / s3,
            s1,
            s2,
            s3,
        }
    }
}

/// `Q(x, y)`. The lengths of `x` and `y` are independent.
pub fn quotient_q(x: &PositiveVector, y: &PositiveVector) -> QuotientValue {
    quotient_unchecked(x, y)
}

/// [`quotient_q`] on raw slices, validating both.
pub fn quotient_q_of(x: &[f64], y: &[f64]) -> Result<QuotientValue> {
    validate(x)?;
    validate(y)?;
    Ok(quotient_unchecked(x, y))
}

pub(crate) fn quotient_unchecked(x: &[f64], y: &[f64]) -> QuotientValue {
    QuotientValue::from_sums(power_sums_unchecked(x), power_sums_unchecked(y))
}

/// Outcome of [`q_on_ordered_vectors_is_nonpositive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedCheck {
    /// `Q(x, y)`.
    pub value: f64,
    /// Whether `value <= 0`.
    pub holds: bool,
}

/// Evaluates `Q` on a component-wise ordered pair and reports whether it is
/// non-positive.
///
/// Fails with [`Error::NotComparable`] when the lengths differ or neither
/// `x >= y` nor `x <= y` holds entry by entry.
pub fn q_on_ordered_vectors_is_nonpositive(
    x: &PositiveVector,
    y: &PositiveVector,
) -> Result<OrderedCheck> {
    if x.len() != y.len() {
        return Err(Error::NotComparable);
    }
    let dominates = x.iter().zip(y.iter()).all(|(a, b)| a >= b);
    let dominated = x.iter().zip(y.iter()).all(|(a, b)| a <= b);
    if !(dominates || dominated) {
        return Err(Error::NotComparable);
    }
    let value = quotient_q(x, y).value;
    Ok(OrderedCheck {
        value,
        holds: value <= 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pv(v: &[f64]) -> PositiveVector {
        PositiveVector::from_slice(v).unwrap()
    }

    #[test]
    fn power_sums_small_cases() {
        assert_eq!(
            power_sums(&pv(&[1.0, 1.0])),
            PowerSumTriple { m1: 2.0, m2: 2.0, m3: 2.0 }
        );
        assert_eq!(
            power_sums(&pv(&[2.0])),
            PowerSumTriple { m1: 2.0, m2: 4.0, m3: 8.0 }
        );
        // dyadic entries: every partial sum is exact
        assert_eq!(
            power_sums(&pv(&[1.0, 0.5, 0.25])),
            PowerSumTriple { m1: 7.0 / 4.0, m2: 21.0 / 16.0, m3: 73.0 / 64.0 }
        );
    }

    #[test]
    fn rejects_bad_entries() {
        assert_eq!(PositiveVector::new(vec![]), Err(Error::EmptyVector));
        assert_eq!(
            PositiveVector::new(vec![1.0, 0.0]),
            Err(Error::NonPositiveEntry { index: 1, value: 0.0 })
        );
        assert!(matches!(
            PositiveVector::new(vec![-1.0]),
            Err(Error::NonPositiveEntry { index: 0, .. })
        ));
        assert!(PositiveVector::new(vec![f64::NAN]).is_err());
        assert!(PositiveVector::new(vec![f64::INFINITY]).is_err());
        assert!(quotient_q_of(&[1.0], &[1.0, -2.0]).is_err());
    }

    #[test]
    fn subnormals_are_accepted() {
        let tiny = f64::MIN_POSITIVE / 4.0;
        assert!(tiny > 0.0 && !tiny.is_normal());
        assert!(PositiveVector::new(vec![tiny, 1.0]).is_ok());
    }

    #[test]
    fn equal_vectors_give_zero() {
        let q = quotient_q(&pv(&[1.0, 1.0]), &pv(&[1.0, 1.0]));
        assert_eq!(q.value, 0.0);
        assert_eq!(q.s3, 4.0);
    }

    #[test]
    fn one_dimensional_closed_form() {
        for &(a, b) in &[(1.0, 2.0), (0.3, 0.7), (5.0, 0.01), (2.0, 2.0)] {
            let q = quotient_q(&pv(&[a]), &pv(&[b])).value;
            let closed = -(a - b) * (a - b) * (a + b) / (a * a * a + b * b * b);
            assert!((q - closed).abs() <= 1e-12 * closed.abs().max(1e-300));
            assert!(q <= 0.0);
        }
        // x=1, y=2: -(1)^2 * 3 / 9
        let q = quotient_q(&pv(&[1.0]), &pv(&[2.0])).value;
        assert!((q + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ones_against_gamma_star_is_negative() {
        let g = crate::structured::Constants::get().gamma_star;
        let q = quotient_q(&pv(&[1.0, 1.0]), &pv(&[g, g]));
        assert!(q.s1 > 0.0 && q.s2 < 0.0 && q.value < 0.0);
    }

    #[test]
    fn ordered_pairs() {
        let c = q_on_ordered_vectors_is_nonpositive(&pv(&[2.0, 3.0]), &pv(&[1.0, 1.0])).unwrap();
        assert!(c.holds);
        let c = q_on_ordered_vectors_is_nonpositive(&pv(&[1.0, 1.0]), &pv(&[1.0, 1.0])).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.holds);
        assert_eq!(
            q_on_ordered_vectors_is_nonpositive(&pv(&[2.0, 1.0]), &pv(&[1.0, 2.0])),
            Err(Error::NotComparable)
        );
        assert_eq!(
            q_on_ordered_vectors_is_nonpositive(&pv(&[2.0, 1.0]), &pv(&[1.0])),
            Err(Error::NotComparable)
        );
    }

    #[test]
    fn symmetry_is_exact() {
        let x = pv(&[0.3, 1.7, 0.01]);
        let y = pv(&[0.9, 0.2]);
        assert_eq!(quotient_q(&x, &y).value, quotient_q(&y, &x).value);
    }
}
