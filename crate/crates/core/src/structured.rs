//! The supremum of `Q` through block configurations.
//!
//! At a global maximizer one vector consists of `i` equal entries (normalized
//! to 1) padded with zeros and the other is constant. Substituting this shape
//! turns `Q` into
//!
//! ```text
//! g(gamma; i, m) = (i - m gamma)(m gamma^2 - i) / (i + m gamma^3),   0 < gamma < 1,
//! ```
//!
//! and with `p = i / m` into `m * R(p, gamma)`, where
//! `R(p, gamma) = (p - gamma)(gamma^2 - p) / (p + gamma^3)` is the reduced
//! objective. `R` has a single interior maximizer `(p*, gamma*)` with value
//! `c*`.
//!
//! Zero entries are limits: the supremum over the open orthant is approached
//! by replacing them with small positive numbers and is never attained.

use alloc::vec::Vec;

use crate::power_sums::{quotient_unchecked, PositiveVector};
use crate::search::{bisect_root, grid_then_golden};
use crate::{Error, Result};

/// The closed-form constants of the reduced problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// `(7 sqrt 7 - 17) / 27`, the sharp growth rate of `sup Q / n`.
    pub c_star: f64,
    /// `(16 - 5 sqrt 7) / 27`, the optimal share of unit entries.
    pub p_star: f64,
    /// `(sqrt 7 - 2) / 3`, the optimal constant entry.
    pub gamma_star: f64,
}

impl Constants {
    /// Evaluates the radicals.
    pub fn get() -> Self {
        let r7 = libm::sqrt(7.0);
        Constants {
            c_star: (7.0 * r7 - 17.0) / 27.0,
            p_star: (16.0 - 5.0 * r7) / 27.0,
            gamma_star: (r7 - 2.0) / 3.0,
        }
    }
}

/// `c* = (7 sqrt 7 - 17) / 27`.
pub fn c_star() -> f64 {
    Constants::get().c_star
}

#[inline]
fn reduced_unchecked(p: f64, gamma: f64) -> f64 {
    (p - gamma) * (gamma * gamma - p) / (p + gamma * gamma * gamma)
}

/// `R(p, gamma) = (p - gamma)(gamma^2 - p) / (p + gamma^3)` for positive
/// arguments.
pub fn reduced_objective(p: f64, gamma: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidArgument("p must be finite and positive"));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument("gamma must be finite and positive"));
    }
    Ok(reduced_unchecked(p, gamma))
}

fn reduced_gradient(p: f64, g: f64) -> [f64; 2] {
    let n = (p - g) * (g * g - p);
    let d = p + g * g * g;
    let n_p = g * g - 2.0 * p + g;
    let n_g = p + 2.0 * p * g - 3.0 * g * g;
    let d2 = d * d;
    [(n_p * d - n) / d2, (n_g * d - n * 3.0 * g * g) / d2]
}

/// Closed-form solution of the reduced problem, with an independent numeric
/// maximization for comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSolution {
    /// Radicals.
    pub closed_form: Constants,
    /// Numeric maximizer `(p, gamma)` over `(0, 1)^2`.
    pub numeric_point: (f64, f64),
    /// `R` at the numeric maximizer.
    pub numeric_value: f64,
    /// Whether the numeric and closed-form maximizers agree to `1e-9`.
    pub verified: bool,
}

/// Returns `(p*, gamma*, c*)` and checks them against a grid search over
/// `(0, 1)^2` refined by Newton iteration on the gradient of `R`.
pub fn solve_reduced() -> ReducedSolution {
    let closed_form = Constants::get();
    let (p, g) = maximize_reduced_numeric();
    let numeric_value = reduced_unchecked(p, g);
    let verified = (p - closed_form.p_star).abs() <= 1e-9
        && (g - closed_form.gamma_star).abs() <= 1e-9
        && (numeric_value - closed_form.c_star).abs() <= 1e-9;
    ReducedSolution {
        closed_form,
        numeric_point: (p, g),
        numeric_value,
        verified,
    }
}

fn maximize_reduced_numeric() -> (f64, f64) {
    const N: usize = 400;
    let mut best = (0.5, 0.5);
    let mut best_v = f64::NEG_INFINITY;
    for a in 0..N {
        let p = (a as f64 + 0.5) / N as f64;
        for b in 0..N {
            let g = (b as f64 + 0.5) / N as f64;
            let v = reduced_unchecked(p, g);
            if v > best_v {
                best_v = v;
                best = (p, g);
            }
        }
    }
    // Newton on grad R = 0 with a finite-difference Hessian of the analytic
    // gradient; a step is accepted only if it keeps the iterate inside the
    // unit square.
    let (mut p, mut g) = best;
    let h = 1e-6;
    for _ in 0..50 {
        let grad = reduced_gradient(p, g);
        let gp_plus = reduced_gradient(p + h, g);
        let gp_minus = reduced_gradient(p - h, g);
        let gg_plus = reduced_gradient(p, g + h);
        let gg_minus = reduced_gradient(p, g - h);
        let hpp = (gp_plus[0] - gp_minus[0]) / (2.0 * h);
        let hpg = 0.5 * ((gp_plus[1] - gp_minus[1]) + (gg_plus[0] - gg_minus[0])) / (2.0 * h);
        let hgg = (gg_plus[1] - gg_minus[1]) / (2.0 * h);
        let det = hpp * hgg - hpg * hpg;
        if det == 0.0 {
            break;
        }
        let dp = (hgg * grad[0] - hpg * grad[1]) / det;
        let dg = (hpp * grad[1] - hpg * grad[0]) / det;
        let (np, ng) = (p - dp, g - dg);
        if !(np > 0.0 && np < 1.0 && ng > 0.0 && ng < 1.0) {
            break;
        }
        p = np;
        g = ng;
        if dp.abs() < 1e-16 && dg.abs() < 1e-16 {
            break;
        }
    }
    (p, g)
}

/// Which vector carries the block of unit entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockSide {
    /// `x = (1, ..., 1, 0, ..., 0)`, `y = (gamma, ..., gamma, 0, ...)`.
    XIsBlock,
    /// `y = (1, ..., 1, 0, ..., 0)`, `x = (gamma, ..., gamma, 0, ...)`.
    YIsBlock,
}

/// A block candidate for the maximizer of `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructuredConfig {
    /// Number of unit entries on the block side.
    pub i: usize,
    /// Number of entries equal to `gamma` on the constant side.
    pub m: usize,
    /// Constant value, in `(0, 1)`.
    pub gamma: f64,
    /// Which side carries the unit block.
    pub side: BlockSide,
    /// Ambient length of `x`.
    pub n_x: usize,
    /// Ambient length of `y`.
    pub n_y: usize,
    /// `M1(x) - M1(y)` in the zero limit.
    pub s1: f64,
    /// `M2(y) - M2(x)` in the zero limit.
    pub s2: f64,
    /// `M3(x) + M3(y)` in the zero limit.
    pub s3: f64,
    /// `s1 * s2 / s3`.
    pub q_value: f64,
}

impl StructuredConfig {
    /// Builds a configuration, checking that it fits the ambient dimensions.
    pub fn new(
        i: usize,
        m: usize,
        gamma: f64,
        side: BlockSide,
        n_x: usize,
        n_y: usize,
    ) -> Result<Self> {
        let (block_len, const_len) = match side {
            BlockSide::XIsBlock => (n_x, n_y),
            BlockSide::YIsBlock => (n_y, n_x),
        };
        if i == 0 || i > block_len {
            return Err(Error::InvalidArgument("block size out of range"));
        }
        if m == 0 || m > const_len {
            return Err(Error::InvalidArgument("constant block size out of range"));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidArgument("gamma must be finite and positive"));
        }
        let (fi, fm) = (i as f64, m as f64);
        let a = fi - fm * gamma;
        let b = fi - fm * gamma * gamma;
        let (s1, s2) = match side {
            BlockSide::XIsBlock => (a, -b),
            BlockSide::YIsBlock => (-a, b),
        };
        let s3 = fi + fm * gamma * gamma * gamma;
        Ok(StructuredConfig {
            i,
            m,
            gamma,
            side,
            n_x,
            n_y,
            s1,
            s2,
            s3,
            q_value: s1 * s2 / s3,
        })
    }

    /// Concrete vectors in the open orthant, with every zero of the block
    /// shape replaced by `eps`.
    pub fn vectors(&self, eps: f64) -> Result<(PositiveVector, PositiveVector)> {
        let block = |len: usize| {
            let mut v = Vec::with_capacity(len);
            v.resize(self.i, 1.0);
            v.resize(len, eps);
            PositiveVector::new(v)
        };
        let constant = |len: usize| {
            let mut v = Vec::with_capacity(len);
            v.resize(self.m, self.gamma);
            v.resize(len, eps);
            PositiveVector::new(v)
        };
        match self.side {
            BlockSide::XIsBlock => Ok((block(self.n_x)?, constant(self.n_y)?)),
            BlockSide::YIsBlock => Ok((constant(self.n_x)?, block(self.n_y)?)),
        }
    }
}

/// `g(gamma; i, m)`; identical for both block sides by the symmetry of `Q`.
#[inline]
fn block_objective(i: f64, m: f64, gamma: f64) -> f64 {
    (i - m * gamma) * (m * gamma * gamma - i) / (i + m * gamma * gamma * gamma)
}

/// Numerator of `d g / d gamma`.
fn block_derivative_numerator(i: f64, m: f64, gamma: f64) -> f64 {
    let a = i - m * gamma;
    let b = m * gamma * gamma - i;
    let d = i + m * gamma * gamma * gamma;
    let dn = -m * b + a * 2.0 * m * gamma;
    let dd = 3.0 * m * gamma * gamma;
    dn * d - a * b * dd
}

const GRID_POINTS: usize = 256;
const GAMMA_LO: f64 = 1e-6;
const GAMMA_HI: f64 = 1.0 - 1e-6;

/// Maximizes `g(.; i, m)` over `(0, 1)`.
fn maximize_block(i: usize, m: usize, tol: f64) -> (f64, f64) {
    let (fi, fm) = (i as f64, m as f64);
    let f = |g: f64| block_objective(fi, fm, g);
    let line = grid_then_golden(f, GAMMA_LO, GAMMA_HI, GRID_POINTS, tol);
    // golden-section resolves the argmax only to ~sqrt(eps); polish on the
    // sign change of the analytic derivative
    let width = (8.0 * tol).max(1e-7 * line.x);
    let lo = (line.x - width).max(GAMMA_LO);
    let hi = (line.x + width).min(GAMMA_HI);
    if let Some(root) = bisect_root(|g| block_derivative_numerator(fi, fm, g), lo, hi) {
        let v = f(root);
        if v >= line.value {
            return (root, v);
        }
    }
    (line.x, line.value)
}

/// Centered finite-difference derivative of `g(.; i, m)`.
fn block_fd_derivative(i: usize, m: usize, gamma: f64) -> f64 {
    let h = 1e-5 * gamma;
    let (fi, fm) = (i as f64, m as f64);
    (block_objective(fi, fm, gamma + h) - block_objective(fi, fm, gamma - h)) / (2.0 * h)
}

/// Certified interval for `sup Q` on the `(3, 3)` and `(3, 2)` splits.
pub const SHARED_BRACKET: (f64, f64) = (0.1079, 0.1080);

/// Supremum of `Q` over `R^{n_x}_{>0} x R^{n_y}_{>0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupQResult {
    /// Length of `x`.
    pub n_x: usize,
    /// Length of `y`.
    pub n_y: usize,
    /// The supremum; `0` for `(1, 1)`.
    pub sup_value: f64,
    /// Best block configuration; `None` for `(1, 1)` where the supremum `0`
    /// is attained at `x = y`.
    pub maximizing_config: Option<StructuredConfig>,
    /// Always `false`: positive suprema are approached through zero limits.
    pub attained: bool,
    /// Externally certified interval, for the splits that have one.
    pub bracket: Option<(f64, f64)>,
}

/// `sup Q` for vector lengths `(n_x, n_y)`.
///
/// Every block configuration is tried: `i` unit entries on either side,
/// `m` entries `gamma` on the other, with `i < m` (otherwise `g < 0` on
/// `(0, 1)`). Each `g(.; i, m)` is maximized on a 256-point log grid in
/// `(1e-6, 1 - 1e-6)` followed by golden-section search to `tol`. The returned
/// maximizer is checked for stationarity with a centered difference.
pub fn sup_q(n_x: usize, n_y: usize, tol: f64) -> Result<SupQResult> {
    if n_x == 0 || n_y == 0 {
        return Err(Error::InvalidArgument("dimensions must be at least 1"));
    }
    check_tol(tol)?;
    let mut best: Option<(usize, usize, f64, BlockSide, f64)> = None;
    for side in [BlockSide::XIsBlock, BlockSide::YIsBlock] {
        let (block_len, const_len) = match side {
            BlockSide::XIsBlock => (n_x, n_y),
            BlockSide::YIsBlock => (n_y, n_x),
        };
        let pairs = (2..=const_len).flat_map(|m| (1..m.min(block_len + 1)).map(move |i| (i, m)));
        if let Some((i, m, gamma, value)) = best_block(pairs, tol) {
            if best.is_none_or(|b| value > b.4) {
                best = Some((i, m, gamma, side, value));
            }
        }
    }
    let bracket = match (n_x, n_y) {
        (3, 3) | (3, 2) | (2, 3) => Some(SHARED_BRACKET),
        _ => None,
    };
    finish(n_x, n_y, best, bracket)
}

/// `sup Q` over every split of `d` entries into lengths `(k, d - k)`,
/// `1 <= k < d`: the maximum of `g(.; i, m)` over `1 <= i < m`, `i + m <= d`.
///
/// The result reports the maximizing split with the constant side as `x`
/// (`n_x = m`, `n_y = d - m`), or `(1, 1)`-like zero data for `d = 2`.
pub fn sup_q_any_split(d: usize, tol: f64) -> Result<SupQResult> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2"));
    }
    check_tol(tol)?;
    let pairs = (2..d).flat_map(|m| (1..m.min(d - m + 1)).map(move |i| (i, m)));
    match best_block(pairs, tol) {
        Some((i, m, gamma, value)) => finish(m, d - m, Some((i, m, gamma, BlockSide::YIsBlock, value)), None),
        None => finish(d - d / 2, d / 2, None, None),
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("tol must be finite and positive"))
    }
}

fn best_block(pairs: impl Iterator<Item = (usize, usize)>, tol: f64) -> Option<(usize, usize, f64, f64)> {
    let mut best: Option<(usize, usize, f64, f64)> = None;
    for (i, m) in pairs {
        let (gamma, value) = maximize_block(i, m, tol);
        if best.is_none_or(|b| value > b.3) {
            best = Some((i, m, gamma, value));
        }
    }
    best
}

fn finish(
    n_x: usize,
    n_y: usize,
    best: Option<(usize, usize, f64, BlockSide, f64)>,
    bracket: Option<(f64, f64)>,
) -> Result<SupQResult> {
    let Some((i, m, gamma, side, value)) = best else {
        return Ok(SupQResult {
            n_x,
            n_y,
            sup_value: 0.0,
            maximizing_config: None,
            attained: false,
            bracket,
        });
    };
    let derivative = block_fd_derivative(i, m, gamma);
    if derivative.abs() > 1e-6 * value.abs().max(1.0) {
        return Err(Error::NotStationary { gamma, derivative });
    }
    let config = StructuredConfig::new(i, m, gamma, side, n_x, n_y)?;
    Ok(SupQResult {
        n_x,
        n_y,
        sup_value: config.q_value.max(0.0),
        maximizing_config: Some(config),
        attained: false,
        bracket,
    })
}

/// The asymptotic witnesses: `x` has `floor(p* n)` ones followed by entries
/// `1/n` (length `n`, or `n + 1` with `extra_component`), and `y` is constant
/// `gamma*` of length `n`.
pub fn witness_vectors(n: usize, extra_component: bool) -> Result<(PositiveVector, PositiveVector)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    let k = Constants::get();
    let ones = (libm::floor(k.p_star * n as f64) as usize).min(n);
    let len = n + usize::from(extra_component);
    let small = 1.0 / n as f64;
    let mut x = Vec::with_capacity(len);
    x.resize(ones, 1.0);
    x.resize(len, small);
    Ok((PositiveVector::new(x)?, PositiveVector::constant(n, k.gamma_star)?))
}

/// Seven-dimensional `x` of the tabulated positivity witness.
pub const TABULATED_X: [f64; 7] = [
    1.5,
    1.0 / 16_777_216.0,
    1.0 / 8_388_608.0,
    1.0 / 2_097_152.0,
    1.0 / 8192.0,
    1.0 / 4096.0,
    0.75,
];

/// Six-dimensional `y` of the tabulated positivity witness.
pub const TABULATED_Y: [f64; 6] = [1.0, 1.0 / 256.0, 1.0 / 64.0, 1.0 / 16.0, 0.5, 1.0];

/// Where a positivity witness came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    /// `ceil(n/2)` ones and `floor(n/2)` entries `1/n`, against constant `0.701`.
    Balanced,
    /// [`WitnessSource::Balanced`] with an extra entry `1/n` in `x`.
    Extended,
    /// [`TABULATED_X`], [`TABULATED_Y`].
    Tabulated,
    /// Maximizing block configuration of [`sup_q`] with zeros set to `1e-6`.
    Structured,
}

/// A pair with `Q > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityWitness {
    /// `x`.
    pub x: PositiveVector,
    /// `y`.
    pub y: PositiveVector,
    /// `Q(x, y) > 0`.
    pub q_value: f64,
    /// Construction used.
    pub source: WitnessSource,
}

fn balanced_x(n: usize, extra: bool) -> Vec<f64> {
    let ones = n.div_ceil(2);
    let mut x = Vec::with_capacity(n + 1);
    x.resize(ones, 1.0);
    x.resize(n + usize::from(extra), 1.0 / n as f64);
    x
}

/// A concrete pair with `Q > 0` for lengths `n_x in {n_y, n_y + 1}`, or
/// `None` for `(1, 1)` where `Q <= 0` everywhere.
pub fn positivity_witness(n_x: usize, n_y: usize) -> Result<Option<PositivityWitness>> {
    if n_y == 0 || !(n_x == n_y || n_x == n_y + 1) {
        return Err(Error::InvalidArgument("positivity witnesses need n_x in {n_y, n_y + 1}"));
    }
    if n_x == 1 {
        return Ok(None);
    }
    let n = n_y;
    let mut candidates: Vec<(Vec<f64>, Vec<f64>, WitnessSource)> = Vec::new();
    let y_hat = alloc::vec![0.701; n];
    if n_x == n {
        candidates.push((balanced_x(n, false), y_hat, WitnessSource::Balanced));
    } else {
        if n == 6 {
            candidates.push((TABULATED_X.to_vec(), TABULATED_Y.to_vec(), WitnessSource::Tabulated));
        }
        candidates.push((balanced_x(n, true), y_hat, WitnessSource::Extended));
    }
    for (x, y, source) in candidates {
        let q = quotient_unchecked(&x, &y).value;
        if q > 0.0 {
            return Ok(Some(PositivityWitness {
                x: PositiveVector::new(x)?,
                y: PositiveVector::new(y)?,
                q_value: q,
                source,
            }));
        }
    }
    let sup = sup_q(n_x, n_y, 1e-12)?;
    let Some(config) = sup.maximizing_config else {
        return Ok(None);
    };
    let (x, y) = config.vectors(1e-6)?;
    let q = quotient_unchecked(&x, &y).value;
    Ok((q > 0.0).then_some(PositivityWitness {
        x,
        y,
        q_value: q,
        source: WitnessSource::Structured,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power_sums::quotient_q;

    #[test]
    fn constants_lie_in_their_intervals() {
        let k = Constants::get();
        assert!(k.c_star > 0.0563 && k.c_star < 0.0564);
        assert!(k.p_star > 0.102 && k.p_star < 0.103);
        assert!(k.gamma_star > 0.215 && k.gamma_star < 0.216);
        let r = reduced_objective(k.p_star, k.gamma_star).unwrap();
        assert!((r - k.c_star).abs() < 1e-14);
    }

    #[test]
    fn reduced_objective_zeros_and_errors() {
        for &g in &[0.1, 0.5, 0.9, 2.0] {
            assert_eq!(reduced_objective(g, g).unwrap(), 0.0);
            assert_eq!(reduced_objective(g * g, g).unwrap(), 0.0);
        }
        assert!(reduced_objective(0.0, 0.5).is_err());
        assert!(reduced_objective(0.5, -1.0).is_err());
    }

    #[test]
    fn gradient_vanishes_at_closed_form() {
        let k = Constants::get();
        let g = reduced_gradient(k.p_star, k.gamma_star);
        assert!(g[0].abs() < 1e-14 && g[1].abs() < 1e-14, "{g:?}");
    }

    #[test]
    fn solve_reduced_verifies() {
        let s = solve_reduced();
        assert!(s.verified, "{s:?}");
    }

    #[test]
    fn block_objective_matches_quotient() {
        let cfg = StructuredConfig::new(2, 5, 0.37, BlockSide::XIsBlock, 4, 6).unwrap();
        let (x, y) = cfg.vectors(1e-300).unwrap();
        let q = quotient_q(&x, &y).value;
        assert!((q - cfg.q_value).abs() < 1e-14);
        assert!((cfg.q_value - block_objective(2.0, 5.0, 0.37)).abs() < 1e-15);
        let swapped = StructuredConfig::new(2, 5, 0.37, BlockSide::YIsBlock, 6, 4).unwrap();
        assert_eq!(swapped.q_value, cfg.q_value);
        assert_eq!(swapped.s1, -cfg.s1);
    }

    #[test]
    fn config_rejects_out_of_range() {
        assert!(StructuredConfig::new(0, 2, 0.5, BlockSide::XIsBlock, 2, 2).is_err());
        assert!(StructuredConfig::new(3, 2, 0.5, BlockSide::XIsBlock, 2, 2).is_err());
        assert!(StructuredConfig::new(1, 3, 0.5, BlockSide::XIsBlock, 2, 2).is_err());
        assert!(StructuredConfig::new(1, 2, 0.0, BlockSide::XIsBlock, 2, 2).is_err());
    }

    #[test]
    fn sup_q_rejects_bad_arguments() {
        assert!(sup_q(0, 1, 1e-9).is_err());
        assert!(sup_q(1, 1, 0.0).is_err());
        assert!(sup_q(1, 1, -1.0).is_err());
    }

    #[test]
    fn sup_q_one_one_is_zero() {
        let r = sup_q(1, 1, 1e-9).unwrap();
        assert_eq!(r.sup_value, 0.0);
        assert!(r.maximizing_config.is_none());
        assert!(!r.attained);
    }

    #[test]
    fn sup_q_two_one_matches_closed_form_point() {
        let r = sup_q(2, 1, 1e-12).unwrap();
        let cfg = r.maximizing_config.unwrap();
        // normalize x_1 = 1: x = (1, 1), y = 1 / gamma
        assert_eq!(cfg.side, BlockSide::YIsBlock);
        assert_eq!((cfg.i, cfg.m), (1, 2));
        let y_norm = 1.0 / cfg.gamma;
        let expected = 0.5 * (libm::sqrt(9.0 + 4.0 * libm::sqrt(6.0)) - 1.0);
        assert!((y_norm - expected).abs() < 1e-8, "{y_norm} vs {expected}");
        let direct = quotient_q(
            &PositiveVector::from_slice(&[1.0, 1.0]).unwrap(),
            &PositiveVector::from_slice(&[expected]).unwrap(),
        )
        .value;
        assert!((r.sup_value - direct).abs() < 1e-12);
        assert!(r.sup_value < 2.0 * c_star());
        assert!((r.sup_value - 0.0391).abs() < 5e-5);
    }

    #[test]
    fn sup_q_three_three_in_bracket() {
        for (a, b) in [(3, 3), (3, 2), (2, 3)] {
            let r = sup_q(a, b, 1e-9).unwrap();
            assert!(r.sup_value >= 0.1079 && r.sup_value <= 0.1080, "{r:?}");
            assert_eq!(r.bracket, Some(SHARED_BRACKET));
        }
    }

    #[test]
    fn sup_q_fifty_dominates_witness() {
        let r = sup_q(50, 50, 1e-9).unwrap();
        let (x, y) = witness_vectors(50, false).unwrap();
        assert!(r.sup_value >= quotient_q(&x, &y).value);
        assert!(r.sup_value < 50.0 * c_star());
    }

    #[test]
    fn sup_q_is_symmetric() {
        for (a, b) in [(4, 2), (5, 3), (7, 1)] {
            let l = sup_q(a, b, 1e-9).unwrap().sup_value;
            let r = sup_q(b, a, 1e-9).unwrap().sup_value;
            assert_eq!(l, r);
        }
    }

    #[test]
    fn witness_shapes() {
        let (x, y) = witness_vectors(10, false).unwrap();
        assert_eq!(x.len(), 10);
        assert_eq!(x[0], 1.0);
        assert!(x[1..].iter().all(|&v| v == 0.1));
        assert_eq!(y.len(), 10);
        assert!(y.iter().all(|&v| v == Constants::get().gamma_star));
        let (x, _) = witness_vectors(10, true).unwrap();
        assert_eq!(x.len(), 11);
        let (x, _) = witness_vectors(3, false).unwrap();
        assert!(x.iter().all(|&v| v == 1.0 / 3.0));
        assert!(witness_vectors(0, false).is_err());
    }

    #[test]
    fn witness_negative_up_to_nine() {
        for n in 1..=9 {
            let (x, y) = witness_vectors(n, false).unwrap();
            assert!(quotient_q(&x, &y).value < 0.0, "n = {n}");
        }
        let (x, y) = witness_vectors(10, false).unwrap();
        assert!(quotient_q(&x, &y).value > 0.0);
    }

    #[test]
    fn positivity_witnesses() {
        assert_eq!(positivity_witness(1, 1).unwrap(), None);
        assert!(positivity_witness(3, 1).is_err());
        let w = positivity_witness(7, 6).unwrap().unwrap();
        assert_eq!(w.source, WitnessSource::Tabulated);
        assert!((w.q_value - 0.031).abs() < 5e-4);
        let w = positivity_witness(4, 4).unwrap().unwrap();
        assert_eq!(w.source, WitnessSource::Balanced);
        for n in 1..=12 {
            for n_x in [n, n + 1] {
                if (n_x, n) == (1, 1) {
                    continue;
                }
                let w = positivity_witness(n_x, n).unwrap().unwrap();
                assert!(w.q_value > 0.0);
                assert_eq!(w.x.len(), n_x);
                assert_eq!(w.y.len(), n);
                assert_eq!(quotient_q(&w.x, &w.y).value, w.q_value);
            }
        }
    }

    #[test]
    fn witness_quotient_ranges() {
        // balanced witnesses: even n >= 4, odd n >= 5; extended: n >= 7
        for n in 4..40 {
            let q = quotient_unchecked(&balanced_x(n, false), &alloc::vec![0.701; n]).value;
            assert!(q > 0.0, "balanced n = {n}");
        }
        for n in 7..40 {
            let q = quotient_unchecked(&balanced_x(n, true), &alloc::vec![0.701; n]).value;
            assert!(q > 0.0, "extended n = {n}");
        }
    }
}
