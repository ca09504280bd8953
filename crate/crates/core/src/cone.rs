//! Membership in the cone `M_d` of `d x d` matrices `M` with
//!
//! ```text
//! Psi_M(z, s) = sum_l ( m_ll z_l^3 + s_l z_l sum_{k != l} m_lk s_k z_k^2 ) > 0
//! ```
//!
//! for all `z > 0` and `s in {-1, +1}^d`.
//!
//! For the family `M_d(b)` (unit diagonal, constant off-diagonal `b > 0`),
//! splitting `z` into the part `x` under minus signs and the part `y` under
//! plus signs gives `Psi = S3 (1 - b (1 + Q(x, y)))` for every sign pattern.
//! Membership therefore holds exactly for `b < b_d = 1 / (1 + sup Q)`, the
//! supremum running over all splits `(k, d - k)`. For `d >= 4` the worst
//! split is unbalanced: `M_4(0.95)` fails at `s = (+, -, -, -)` with
//! `z = (1, 0.452, 0.452, 0.452)`. The balanced split
//! `(ceil(d/2), floor(d/2))` is still available through [`split_sup`] and
//! the `split_*` fields of [`BdReport`].

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::power_sums::PositiveVector;
use crate::structured::{sup_q, sup_q_any_split, witness_vectors, Constants, SupQResult, SHARED_BRACKET};
use crate::sum::CompensatedSum;
use crate::{quotient_q, Error, Result};

/// Largest `d` for which all sign patterns are enumerated.
pub const ENUMERATION_CAP: usize = 24;

/// A `d x d` real matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSpec {
    /// Arbitrary entries, row-major.
    General {
        /// Dimension.
        d: usize,
        /// `d * d` entries, row-major.
        entries: Vec<f64>,
    },
    /// `M_d(b)`: ones on the diagonal, `b` everywhere else.
    EqualOffDiagonal {
        /// Dimension.
        d: usize,
        /// Off-diagonal value.
        b: f64,
    },
}

impl MatrixSpec {
    /// A general matrix; `entries` is row-major with `d * d` finite values.
    pub fn general(d: usize, entries: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument("matrix dimension must be at least 2"));
        }
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: entries.len(),
            });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite"));
        }
        Ok(MatrixSpec::General { d, entries })
    }

    /// `M_d(b)` for `d >= 2`, `b > 0`.
    pub fn equal_off_diagonal(d: usize, b: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument("matrix dimension must be at least 2"));
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidArgument("b must be finite and positive"));
        }
        Ok(MatrixSpec::EqualOffDiagonal { d, b })
    }

    /// Dimension.
    pub fn d(&self) -> usize {
        match self {
            MatrixSpec::General { d, .. } | MatrixSpec::EqualOffDiagonal { d, .. } => *d,
        }
    }

    /// Entry `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        match self {
            MatrixSpec::General { d, entries } => entries[row * d + col],
            MatrixSpec::EqualOffDiagonal { b, .. } => {
                if row == col {
                    1.0
                } else {
                    *b
                }
            }
        }
    }

    /// Row-major dense entries.
    pub fn to_dense(&self) -> Vec<f64> {
        let d = self.d();
        (0..d * d).map(|k| self.entry(k / d, k % d)).collect()
    }

    /// `a * self + c * other` as a general matrix.
    pub fn combine(&self, a: f64, other: &MatrixSpec, c: f64) -> Result<MatrixSpec> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch {
                expected: self.d(),
                found: other.d(),
            });
        }
        let entries = self
            .to_dense()
            .iter()
            .zip(other.to_dense())
            .map(|(u, v)| a * u + c * v)
            .collect();
        MatrixSpec::general(self.d(), entries)
    }

    /// If the matrix is `a * M_d(b)` with `a, b > 0`, returns `b`.
    pub fn as_scaled_equal_off_diagonal(&self) -> Option<f64> {
        match self {
            MatrixSpec::EqualOffDiagonal { b, .. } => Some(*b),
            MatrixSpec::General { d, .. } => {
                let diag = self.entry(0, 0);
                let off = self.entry(0, 1);
                if !(diag > 0.0 && off > 0.0) {
                    return None;
                }
                let uniform = (0..*d).all(|r| {
                    (0..*d).all(|c| self.entry(r, c) == if r == c { diag } else { off })
                });
                uniform.then_some(off / diag)
            }
        }
    }
}

/// A vector of signs `+1` / `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    /// Validates that every entry is `+1` or `-1`.
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::EmptyVector);
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1"));
        }
        Ok(SignPattern(signs))
    }

    /// `(+1, ..., +1)`.
    pub fn all_plus(d: usize) -> Self {
        SignPattern(alloc::vec![1; d])
    }

    /// Signs as a slice.
    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    /// Length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Never true for a validated pattern.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `-1` entries.
    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }

    /// Representative of `{s, -s}` with a leading `-1`.
    pub fn canonical(&self) -> SignPattern {
        if self.0[0] < 0 {
            self.clone()
        } else {
            SignPattern(self.0.iter().map(|s| -s).collect())
        }
    }

    /// Whether all signs agree.
    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&s| s == self.0[0])
    }
}

/// `Psi_M(z, s)`.
pub fn psi(m: &MatrixSpec, z: &PositiveVector, s: &SignPattern) -> Result<f64> {
    let d = m.d();
    if z.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: z.len(),
        });
    }
    if s.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: s.len(),
        });
    }
    Ok(psi_unchecked(m, z, s.as_slice()))
}

fn psi_unchecked(m: &MatrixSpec, z: &[f64], s: &[i8]) -> f64 {
    match m {
        MatrixSpec::EqualOffDiagonal { b, .. } => {
            let mut linear = CompensatedSum::new();
            let mut square = CompensatedSum::new();
            let mut cubic = CompensatedSum::new();
            for (&v, &sign) in z.iter().zip(s) {
                let sign = f64::from(sign);
                linear.add(sign * v);
                square.add(sign * v * v);
                cubic.add(v * v * v);
            }
            let c = cubic.value();
            (1.0 - b) * c + b * linear.value() * square.value()
        }
        MatrixSpec::General { d, entries } => {
            let mut total = CompensatedSum::new();
            for l in 0..*d {
                let zl = z[l];
                total.add(entries[l * d + l] * zl * zl * zl);
                let mut inner = CompensatedSum::new();
                for k in (0..*d).filter(|&k| k != l) {
                    inner.add(entries[l * d + k] * f64::from(s[k]) * z[k] * z[k]);
                }
                total.add(f64::from(s[l]) * zl * inner.value());
            }
            total.value()
        }
    }
}

/// The `2^{d-1} - 1` sign patterns with a leading `-1`, excluding
/// `(-1, ..., -1)`; one representative per pair `{s, -s}`.
pub fn enumerate_sign_patterns(d: usize) -> Result<Vec<SignPattern>> {
    enumerate_sign_patterns_capped(d, ENUMERATION_CAP)
}

/// [`enumerate_sign_patterns`] with an explicit cap on `d`.
pub fn enumerate_sign_patterns_capped(d: usize, cap: usize) -> Result<Vec<SignPattern>> {
    if d < 2 {
        return Err(Error::InvalidArgument("sign patterns need d >= 2"));
    }
    if d > cap {
        return Err(Error::EnumerationCap { d, cap });
    }
    let count = 1usize << (d - 1);
    Ok((1..count)
        .map(|mask| {
            let mut signs = Vec::with_capacity(d);
            signs.push(-1);
            signs.extend((0..d - 1).map(|k| if mask >> k & 1 == 1 { 1 } else { -1 }));
            SignPattern(signs)
        })
        .collect())
}

/// `ceil(d/2)` minus signs followed by `floor(d/2)` plus signs. This is the
/// worst pattern of `M_d(b)` only for `d <= 3`; see [`worst_sign_pattern`].
pub fn reduced_sign_pattern(d: usize) -> Result<SignPattern> {
    if d < 2 {
        return Err(Error::InvalidArgument("sign patterns need d >= 2"));
    }
    let minus = d.div_ceil(2);
    let mut signs = alloc::vec![-1i8; minus];
    signs.resize(d, 1);
    Ok(SignPattern(signs))
}

/// Splits `z` into its entries under `-1` and under `+1`.
pub fn split_by_pattern(z: &[f64], s: &SignPattern) -> (Vec<f64>, Vec<f64>) {
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for (&v, &sign) in z.iter().zip(s.as_slice()) {
        if sign < 0 {
            minus.push(v);
        } else {
            plus.push(v);
        }
    }
    (minus, plus)
}

/// Every diagonal entry strictly exceeds the sum of absolute values of all
/// off-diagonal entries of the whole matrix. Sufficient for membership.
pub fn check_diagonal_dominance(m: &MatrixSpec) -> bool {
    let d = m.d();
    let mut off = CompensatedSum::new();
    for r in 0..d {
        for c in (0..d).filter(|&c| c != r) {
            off.add(m.entry(r, c).abs());
        }
    }
    let off = off.value();
    (0..d).all(|i| m.entry(i, i) > off)
}

/// A point where `Psi_M(z, s) <= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonmemberWitness {
    /// The positive vector.
    pub z: PositiveVector,
    /// The sign pattern.
    pub s: SignPattern,
    /// `Psi_M(z, s)`, non-positive.
    pub psi: f64,
}

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Membership proven.
    MemberCertified,
    /// Membership refuted by an explicit witness.
    NonmemberWithWitness(NonmemberWitness),
    /// Neither proven nor refuted.
    Inconclusive,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// [`check_diagonal_dominance`].
    DiagonalDominance,
    /// Comparison with the threshold `b_d`.
    ExactBd,
    /// Random and structured probing of `Psi`.
    Sampling,
}

/// A verdict together with its method.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeCertificate {
    /// Result.
    pub verdict: Verdict,
    /// Procedure that produced it.
    pub method: Method,
}

/// Verdicts need a clearance of `MARGIN_FACTOR * tol` from `b_d`.
pub const MARGIN_FACTOR: f64 = 10.0;

const WITNESS_EPS: [f64; 4] = [1e-6, 1e-9, 1e-12, 1e-15];

/// `sup Q` over the balanced split `(ceil(d/2), floor(d/2))`.
pub fn split_sup(d: usize, tol: f64) -> Result<SupQResult> {
    sup_q(d.div_ceil(2), d / 2, tol)
}

/// `sup Q` over all splits `(k, d - k)`; `n_x` of the result is the number
/// of minus signs in the worst pattern.
pub fn worst_split_sup(d: usize, tol: f64) -> Result<SupQResult> {
    check_tol(tol)?;
    sup_q_any_split(d, tol)
}

/// `n_x` minus signs followed by `d - n_x` plus signs, with `n_x` from
/// [`worst_split_sup`].
pub fn worst_sign_pattern(d: usize, tol: f64) -> Result<SignPattern> {
    let sup = worst_split_sup(d, tol)?;
    Ok(minus_first(sup.n_x, d))
}

fn minus_first(minus: usize, d: usize) -> SignPattern {
    let mut signs = alloc::vec![-1i8; minus];
    signs.resize(d, 1);
    SignPattern(signs)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("tol must be finite and positive"))
    }
}

/// Certifies or refutes `M_d(b) in M_d` by comparing `b` with
/// `1 / (1 + sup Q)` over all splits.
pub fn membership_equal_offdiag(d: usize, b: f64, tol: f64) -> Result<ConeCertificate> {
    let matrix = MatrixSpec::equal_off_diagonal(d, b)?;
    let sup = worst_split_sup(d, tol)?;
    let threshold = 1.0 / (1.0 + sup.sup_value.max(0.0));
    let margin = MARGIN_FACTOR * tol;
    let verdict = if b < threshold - margin {
        Verdict::MemberCertified
    } else if b > threshold + margin {
        match threshold_witness(&matrix, &sup)? {
            Some(w) => Verdict::NonmemberWithWitness(w),
            None => Verdict::Inconclusive,
        }
    } else {
        Verdict::Inconclusive
    };
    Ok(ConeCertificate {
        verdict,
        method: Method::ExactBd,
    })
}

/// Assembles `z` from the maximizing configuration (minus part first) and
/// checks `Psi <= 0`, tightening the zero substitute if needed.
fn threshold_witness(matrix: &MatrixSpec, sup: &SupQResult) -> Result<Option<NonmemberWitness>> {
    let d = matrix.d();
    let s = minus_first(sup.n_x, d);
    let candidates: Vec<PositiveVector> = match sup.maximizing_config {
        None => alloc::vec![PositiveVector::constant(d, 1.0)?],
        Some(config) => WITNESS_EPS
            .iter()
            .map(|&eps| config.vectors(eps).map(|(x, y)| x.concat(&y)))
            .collect::<Result<_>>()?,
    };
    for z in candidates {
        let value = psi_unchecked(matrix, &z, s.as_slice());
        if value <= 0.0 {
            return Ok(Some(NonmemberWitness { z, s, psi: value }));
        }
    }
    Ok(None)
}

/// Certified interval for `1 / (1 + sup Q)` on the balanced splits of
/// `d = 5, 6`.
pub fn shared_bd_bracket() -> (f64, f64) {
    (1.0 / (1.0 + SHARED_BRACKET.1), 1.0 / (1.0 + SHARED_BRACKET.0))
}

/// Threshold data for `M_d(b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BdReport {
    /// Dimension.
    pub d: usize,
    /// `M_d(b) in M_d` exactly for `b < bd`: `1 / (1 + sup Q)` over all splits.
    pub bd: f64,
    /// Minus signs in the worst pattern.
    pub worst_minus_count: usize,
    /// `sup Q` over all splits.
    pub sup_q: f64,
    /// `1 / (1 + sup Q)` over the balanced split: the closed form when known,
    /// otherwise `split_numeric_bd`. Equals `bd` for `d <= 3`.
    pub split_bd: f64,
    /// Balanced-split value from [`sup_q`].
    pub split_numeric_bd: f64,
    /// Closed form of `split_bd` (`d = 2, 3, 4`).
    pub split_exact: Option<f64>,
    /// Certified interval for `split_bd` (`d = 5, 6`).
    pub split_bracket: Option<(f64, f64)>,
    /// `sup Q` on the balanced split.
    pub split_sup_q: f64,
    /// `1 / (1 + c* floor(d/2))`. Below `split_bd` for even `d` and `d <= 6`,
    /// but above `bd` from `d = 4` on.
    pub lower_bound: f64,
    /// `1 / (1 + c* (d - 1))`, a lower bound on `bd` for every `d`.
    pub safe_lower_bound: f64,
    /// `1 / (1 + Q(x^(ceil(d/2)), y^(floor(d/2))))` when that quotient is
    /// positive; an upper bound on both `bd` and `split_bd`.
    pub witness_upper: Option<f64>,
    /// `2 / (c* d)`, the growth rate of `split_bd`.
    pub asymptotic: f64,
    /// `(9 + 6 sqrt 3) / d`, the growth rate of `bd`.
    pub asymptotic_all_splits: f64,
}

/// `(2 sqrt 3 - 3) / 9`: the maximum of `R(p, gamma) / (1 + p)`, the rate at
/// which `sup Q` over all splits of `d` entries grows in `d`.
pub fn c_all_splits() -> f64 {
    (2.0 * libm::sqrt(3.0) - 3.0) / 9.0
}

/// `20 x^4 + 60 x^3 + 9 x^2 - 54 x - 27`.
pub fn b3_quartic(x: f64) -> f64 {
    (((20.0 * x + 60.0) * x + 9.0) * x - 54.0) * x - 27.0
}

/// The positive root of [`b3_quartic`], by bisection on `[0.9, 1.0]`.
pub fn b3_from_quartic() -> f64 {
    crate::search::bisect_root(b3_quartic, 0.9, 1.0).expect("sign change on [0.9, 1]")
}

/// `(sqrt(3/5 (39 + 16 sqrt 6)) - 3) / 4`.
pub fn b3_radical() -> f64 {
    0.25 * (libm::sqrt(0.6 * (39.0 + 16.0 * libm::sqrt(6.0))) - 3.0)
}

/// Lower bound, witness upper bound and asymptotics of `b_d`.
pub fn bd_estimates(d: usize) -> Result<(f64, Option<f64>, f64)> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2"));
    }
    let c = Constants::get().c_star;
    let lower = 1.0 / (1.0 + c * (d / 2) as f64);
    let (x, _) = witness_vectors(d.div_ceil(2), false)?;
    let (_, y) = witness_vectors(d / 2, false)?;
    let q = quotient_q(&x, &y).value;
    let upper = (q > 0.0).then(|| 1.0 / (1.0 + q));
    Ok((lower, upper, 2.0 / (c * d as f64)))
}

/// Computes `b_d` and its estimates.
pub fn compute_bd(d: usize, tol: f64) -> Result<BdReport> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2"));
    }
    check_tol(tol)?;
    let worst = worst_split_sup(d, tol)?;
    let split = split_sup(d, tol)?;
    let split_numeric_bd = 1.0 / (1.0 + split.sup_value.max(0.0));
    let split_exact = match d {
        2 => Some(1.0),
        3 | 4 => Some(b3_from_quartic()),
        _ => None,
    };
    let split_bracket = matches!(d, 5 | 6).then(shared_bd_bracket);
    let bd = match d {
        2 => 1.0,
        3 => b3_from_quartic(),
        _ => 1.0 / (1.0 + worst.sup_value.max(0.0)),
    };
    let (lower_bound, witness_upper, asymptotic) = bd_estimates(d)?;
    let c = Constants::get().c_star;
    Ok(BdReport {
        d,
        bd,
        worst_minus_count: worst.n_x,
        sup_q: worst.sup_value,
        split_bd: split_exact.unwrap_or(split_numeric_bd),
        split_numeric_bd,
        split_exact,
        split_bracket,
        split_sup_q: split.sup_value,
        lower_bound,
        safe_lower_bound: 1.0 / (1.0 + c * (d - 1) as f64),
        witness_upper,
        asymptotic,
        asymptotic_all_splits: 1.0 / (c_all_splits() * d as f64),
    })
}

/// Range of the log-uniform random entries used by sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingRange {
    /// Smallest entry.
    pub lo: f64,
    /// Largest entry.
    pub hi: f64,
}

impl Default for SamplingRange {
    fn default() -> Self {
        SamplingRange { lo: 1e-3, hi: 1e3 }
    }
}

/// Searches for `(z, s)` with `Psi_M(z, s) <= 0`. Sampling alone never
/// certifies membership, so the verdict is a witness or inconclusive.
pub fn sample_membership_general(
    m: &MatrixSpec,
    n_samples: usize,
    seed: u64,
) -> Result<ConeCertificate> {
    sample_membership_with(m, n_samples, seed, SamplingRange::default())
}

/// [`sample_membership_general`] with an explicit sampling range.
pub fn sample_membership_with(
    m: &MatrixSpec,
    n_samples: usize,
    seed: u64,
    range: SamplingRange,
) -> Result<ConeCertificate> {
    let d = m.d();
    let mut patterns = enumerate_sign_patterns(d)?;
    patterns.push(SignPattern::all_plus(d));
    sample_patterns(m, &patterns, n_samples, seed, range)
}

fn sample_patterns(
    m: &MatrixSpec,
    patterns: &[SignPattern],
    n_samples: usize,
    seed: u64,
    range: SamplingRange,
) -> Result<ConeCertificate> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be at least 1"));
    }
    if !(range.lo > 0.0 && range.hi >= range.lo && range.hi.is_finite()) {
        return Err(Error::InvalidArgument("sampling range must satisfy 0 < lo <= hi"));
    }
    let d = m.d();
    let found = |z: &[f64], s: &SignPattern| -> Result<Option<ConeCertificate>> {
        let value = psi_unchecked(m, z, s.as_slice());
        if value <= 0.0 {
            return Ok(Some(ConeCertificate {
                verdict: Verdict::NonmemberWithWitness(NonmemberWitness {
                    z: PositiveVector::from_slice(z)?,
                    s: s.clone(),
                    psi: value,
                }),
                method: Method::Sampling,
            }));
        }
        Ok(None)
    };

    // unit vectors: Psi(e_l) ~ m_ll
    for l in 0..d {
        let mut z = alloc::vec![1e-4; d];
        z[l] = 1.0;
        for s in patterns {
            if let Some(c) = found(&z, s)? {
                return Ok(c);
            }
        }
    }

    // block shapes: the maximizing configuration for each minus/plus split,
    // laid out on the pattern's positions
    let mut configs: Vec<Option<Option<Vec<f64>>>> = alloc::vec![None; d + 1];
    for s in patterns {
        let k = s.minus_count();
        if k == 0 || k == d {
            continue;
        }
        if configs[k].is_none() {
            let sup = sup_q(k, d - k, 1e-9)?;
            let shape = match sup.maximizing_config {
                Some(cfg) => {
                    let (x, y) = cfg.vectors(1e-6)?;
                    Some(x.concat(&y).into_inner())
                }
                None => Some(alloc::vec![1.0; d]),
            };
            configs[k] = Some(shape);
        }
        if let Some(Some(block)) = &configs[k] {
            let (mut minus, mut plus) = (0usize, k);
            let z: Vec<f64> = s
                .as_slice()
                .iter()
                .map(|&sign| {
                    let idx = if sign < 0 {
                        minus += 1;
                        minus - 1
                    } else {
                        plus += 1;
                        plus - 1
                    };
                    block[idx]
                })
                .collect();
            if let Some(c) = found(&z, s)? {
                return Ok(c);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (log_lo, log_hi) = (libm::log(range.lo), libm::log(range.hi));
    let mut z = alloc::vec![0.0; d];
    for _ in 0..n_samples {
        for v in z.iter_mut() {
            *v = if log_hi > log_lo {
                libm::exp(rng.gen_range(log_lo..log_hi))
            } else {
                range.lo
            };
        }
        for s in patterns {
            if let Some(c) = found(&z, s)? {
                return Ok(c);
            }
        }
    }
    Ok(ConeCertificate {
        verdict: Verdict::Inconclusive,
        method: Method::Sampling,
    })
}

/// Tuning for [`certify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    /// Optimization tolerance; verdicts near `b_d` need `10 * tol` clearance.
    pub tol: f64,
    /// Random samples for general matrices.
    pub n_samples: usize,
    /// Seed for sampling.
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            tol: 1e-9,
            n_samples: 2000,
            seed: 0,
        }
    }
}

/// Picks the strongest applicable method: the exact threshold for (scaled)
/// `M_d(b)`, diagonal dominance, then sampling. Beyond [`ENUMERATION_CAP`]
/// only the all-plus pattern and one pattern per minus count (minus signs
/// first) are sampled.
pub fn certify(m: &MatrixSpec, options: &CertifyOptions) -> Result<ConeCertificate> {
    check_tol(options.tol)?;
    if check_diagonal_dominance(m) {
        return Ok(ConeCertificate {
            verdict: Verdict::MemberCertified,
            method: Method::DiagonalDominance,
        });
    }
    if let Some(b) = m.as_scaled_equal_off_diagonal() {
        let cert = membership_equal_offdiag(m.d(), b, options.tol)?;
        // a witness for M_d(b) is one for a * M_d(b); re-evaluate on the input
        return Ok(match cert.verdict {
            Verdict::NonmemberWithWitness(w) => {
                let value = psi(m, &w.z, &w.s)?;
                ConeCertificate {
                    verdict: Verdict::NonmemberWithWitness(NonmemberWitness { psi: value, ..w }),
                    method: cert.method,
                }
            }
            _ => cert,
        });
    }
    let d = m.d();
    if d <= ENUMERATION_CAP {
        sample_membership_general(m, options.n_samples, options.seed)
    } else {
        let mut patterns: Vec<SignPattern> = (1..d).map(|k| minus_first(k, d)).collect();
        patterns.push(SignPattern::all_plus(d));
        sample_patterns(m, &patterns, options.n_samples, options.seed, SamplingRange::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pv(v: &[f64]) -> PositiveVector {
        PositiveVector::from_slice(v).unwrap()
    }

    fn sp(v: &[i8]) -> SignPattern {
        SignPattern::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identity_gives_sum_of_cubes() {
        let id = MatrixSpec::general(3, vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let z = pv(&[0.5, 2.0, 1.5]);
        for s in enumerate_sign_patterns(3).unwrap() {
            let v = psi(&id, &z, &s).unwrap();
            assert!((v - (0.125 + 8.0 + 3.375)).abs() < 1e-14);
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        for &b in &[0.25, 1.0, 1.5] {
            let m = MatrixSpec::equal_off_diagonal(2, b).unwrap();
            let v = psi(&m, &pv(&[1.0, 1.0]), &sp(&[-1, 1])).unwrap();
            assert!((v - (2.0 - 2.0 * b)).abs() < 1e-15);
            let g = MatrixSpec::general(2, m.to_dense()).unwrap();
            let w = psi(&g, &pv(&[1.0, 1.0]), &sp(&[-1, 1])).unwrap();
            assert!((v - w).abs() < 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let m = MatrixSpec::equal_off_diagonal(3, 0.5).unwrap();
        assert!(matches!(
            psi(&m, &pv(&[1.0, 1.0]), &sp(&[-1, 1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            psi(&m, &pv(&[1.0, 1.0, 1.0]), &sp(&[-1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(MatrixSpec::general(2, vec![1.0; 3]).is_err());
        assert!(MatrixSpec::equal_off_diagonal(1, 0.5).is_err());
        assert!(MatrixSpec::equal_off_diagonal(3, 0.0).is_err());
    }

    #[test]
    fn sign_pattern_counts() {
        let p2 = enumerate_sign_patterns(2).unwrap();
        assert_eq!(p2, vec![sp(&[-1, 1])]);
        assert_eq!(enumerate_sign_patterns(3).unwrap().len(), 3);
        let p5 = enumerate_sign_patterns(5).unwrap();
        assert_eq!(p5.len(), 15);
        for (a, s) in p5.iter().enumerate() {
            assert!(!s.is_constant());
            assert_eq!(s.canonical(), *s);
            for t in &p5[a + 1..] {
                assert_ne!(s, t);
            }
        }
        assert_eq!(
            enumerate_sign_patterns(25),
            Err(Error::EnumerationCap { d: 25, cap: ENUMERATION_CAP })
        );
        assert!(enumerate_sign_patterns_capped(4, 3).is_err());
    }

    #[test]
    fn reduced_patterns() {
        assert_eq!(reduced_sign_pattern(4).unwrap(), sp(&[-1, -1, 1, 1]));
        assert_eq!(reduced_sign_pattern(5).unwrap(), sp(&[-1, -1, -1, 1, 1]));
        assert_eq!(reduced_sign_pattern(2).unwrap(), sp(&[-1, 1]));
        assert!(reduced_sign_pattern(1).is_err());
    }

    #[test]
    fn psi_identity_on_reduced_pattern() {
        let b = 0.3;
        let m = MatrixSpec::equal_off_diagonal(5, b).unwrap();
        let z = pv(&[0.4, 1.3, 0.2, 0.9, 0.6]);
        let s = reduced_sign_pattern(5).unwrap();
        let q = quotient_q(&pv(&z[..3]), &pv(&z[3..]));
        let expected = q.s3 * (1.0 - b * (1.0 + q.value));
        let v = psi(&m, &z, &s).unwrap();
        assert!((v - expected).abs() < 1e-13 * q.s3);
    }

    #[test]
    fn dominance() {
        let mut e = vec![0.1; 9];
        for i in 0..3 {
            e[i * 4] = 1.0;
        }
        assert!(check_diagonal_dominance(&MatrixSpec::general(3, e).unwrap()));
        let diag = MatrixSpec::general(
            4,
            (0..16).map(|k| if k % 5 == 0 { (k / 5 + 1) as f64 } else { 0.0 }).collect(),
        )
        .unwrap();
        assert!(check_diagonal_dominance(&diag));
        for d in 2..8 {
            let b = 1.0 / (d * (d - 1)) as f64;
            assert!(!check_diagonal_dominance(&MatrixSpec::equal_off_diagonal(d, b).unwrap()));
            let b = 0.99 / (d * (d - 1)) as f64;
            assert!(check_diagonal_dominance(&MatrixSpec::equal_off_diagonal(d, b).unwrap()));
        }
    }

    #[test]
    fn dominance_uses_whole_matrix_sum() {
        // row-wise dominant, but the total off-diagonal mass exceeds each diagonal
        let e = vec![1.0, 0.6, 0.0, 0.0, 1.0, 0.6, 0.6, 0.0, 1.0];
        assert!(!check_diagonal_dominance(&MatrixSpec::general(3, e).unwrap()));
    }

    #[test]
    fn quartic_and_radical_agree() {
        let a = b3_from_quartic();
        let b = b3_radical();
        assert!((a - b).abs() < 1e-12, "{a} {b}");
        assert!((a - 0.962).abs() < 5e-4);
        assert!(b3_quartic(b).abs() < 1e-12);
    }

    #[test]
    fn membership_small_dimensions() {
        let member = |d, b| membership_equal_offdiag(d, b, 1e-9).unwrap().verdict;
        assert_eq!(member(2, 0.99), Verdict::MemberCertified);
        assert!(matches!(member(2, 1.01), Verdict::NonmemberWithWitness(_)));
        assert_eq!(member(3, 0.95), Verdict::MemberCertified);
        assert!(matches!(member(3, 0.97), Verdict::NonmemberWithWitness(_)));
        assert_eq!(member(4, 0.90), Verdict::MemberCertified);
        assert!(matches!(member(4, 0.95), Verdict::NonmemberWithWitness(_)));
        assert!(matches!(member(5, 0.91), Verdict::NonmemberWithWitness(_)));
        assert!(membership_equal_offdiag(3, -0.1, 1e-9).is_err());
        assert!(membership_equal_offdiag(3, 0.5, 0.0).is_err());
    }

    #[test]
    fn unbalanced_pattern_beats_reduced_for_d4() {
        let m = MatrixSpec::equal_off_diagonal(4, 0.95).unwrap();
        let g = 0.452;
        let v = psi(&m, &pv(&[g, g, g, 1.0]), &sp(&[-1, -1, -1, 1])).unwrap();
        assert!(v < -0.06, "{v}");
        assert_eq!(worst_sign_pattern(4, 1e-9).unwrap(), sp(&[-1, -1, -1, 1]));
        let r = compute_bd(4, 1e-9).unwrap();
        assert_eq!(r.worst_minus_count, 3);
        assert!(r.bd < 0.903 && r.split_bd > 0.962);
    }

    #[test]
    fn compute_bd_small() {
        let r = compute_bd(2, 1e-9).unwrap();
        assert_eq!(r.bd, 1.0);
        assert_eq!(r.split_bd, 1.0);
        assert!((r.lower_bound - 0.9467).abs() < 1e-4);
        let r = compute_bd(3, 1e-9).unwrap();
        assert!((r.bd - b3_radical()).abs() < 1e-12);
        assert_eq!(r.bd, r.split_bd);
        assert!((r.split_numeric_bd - r.split_bd).abs() < 1e-9);
        let r = compute_bd(6, 1e-9).unwrap();
        let (lo, hi) = r.split_bracket.unwrap();
        assert!(lo <= r.split_bd && r.split_bd <= hi);
        assert!((r.lower_bound - 0.8555).abs() < 1e-4);
        assert!(r.witness_upper.is_none());
        for d in 2..=12 {
            let r = compute_bd(d, 1e-9).unwrap();
            assert!(r.safe_lower_bound <= r.bd && r.bd <= r.split_bd, "{d}");
        }
    }

    #[test]
    fn odd_dimension_below_floor_half_estimate() {
        // the balanced split (4, 3) already beats 3 c*, since the constant
        // side may be the longer vector
        let r7 = compute_bd(7, 1e-9).unwrap();
        let r8 = compute_bd(8, 1e-9).unwrap();
        assert!((r7.split_bd - r8.split_bd).abs() < 1e-12);
        assert!(r7.split_bd < r7.lower_bound);
        assert!(0.85 < r7.lower_bound);
        let c = membership_equal_offdiag(7, 0.85, 1e-9).unwrap();
        let Verdict::NonmemberWithWitness(w) = c.verdict else {
            panic!("expected witness");
        };
        let dense = MatrixSpec::general(7, MatrixSpec::equal_off_diagonal(7, 0.85).unwrap().to_dense()).unwrap();
        assert!(psi(&dense, &w.z, &w.s).unwrap() < 0.0);
    }

    #[test]
    fn all_split_rate() {
        let k = Constants::get();
        let r = |p: f64, g: f64| (p - g) * (g * g - p) / (p + g * g * g);
        // nearby points of R/(1+p) stay below the claimed maximum
        let c = c_all_splits();
        for (p, g) in [(0.0826, 0.1896), (0.08, 0.19), (0.09, 0.2), (k.p_star, k.gamma_star)] {
            assert!(r(p, g) / (1.0 + p) <= c + 1e-12);
        }
        assert!((r(0.082_551_84, 0.189_591_05) / 1.082_551_84 - c).abs() < 1e-12);
        let d = 400;
        let s = worst_split_sup(d, 1e-9).unwrap().sup_value;
        assert!((s / (c * d as f64) - 1.0).abs() < 0.02, "{}", s / (c * d as f64));
    }

    #[test]
    fn sampling_diagonal_finds_nothing() {
        let m = MatrixSpec::general(3, vec![1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.5]).unwrap();
        let c = sample_membership_general(&m, 200, 1).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.method, Method::Sampling);
    }

    #[test]
    fn sampling_negative_diagonal_hits_unit_vector() {
        let m = MatrixSpec::general(3, vec![1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let c = sample_membership_general(&m, 10, 1).unwrap();
        let Verdict::NonmemberWithWitness(w) = c.verdict else {
            panic!("expected witness");
        };
        assert_eq!(w.z[1], 1.0);
        assert!(psi(&m, &w.z, &w.s).unwrap() <= 0.0);
    }

    #[test]
    fn sampling_finds_m5_violation() {
        let m = MatrixSpec::general(5, MatrixSpec::equal_off_diagonal(5, 0.95).unwrap().to_dense())
            .unwrap();
        let c = sample_membership_general(&m, 10, 7).unwrap();
        let Verdict::NonmemberWithWitness(w) = c.verdict else {
            panic!("expected witness");
        };
        assert!(psi(&m, &w.z, &w.s).unwrap() <= 0.0);
    }

    #[test]
    fn certify_dispatch() {
        let scaled = MatrixSpec::general(
            3,
            MatrixSpec::equal_off_diagonal(3, 0.5).unwrap().to_dense().iter().map(|v| 2.0 * v).collect(),
        )
        .unwrap();
        assert_eq!(scaled.as_scaled_equal_off_diagonal(), Some(0.5));
        let c = certify(&scaled, &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::MemberCertified);
        assert_eq!(c.method, Method::ExactBd);
        let big = MatrixSpec::equal_off_diagonal(100, 0.5).unwrap();
        let c = certify(&big, &CertifyOptions::default()).unwrap();
        let Verdict::NonmemberWithWitness(w) = c.verdict else {
            panic!("expected witness");
        };
        assert!(psi(&big, &w.z, &w.s).unwrap() <= 0.0);
    }
}
