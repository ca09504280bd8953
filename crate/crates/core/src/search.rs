//! One-dimensional maximization: grid bracketing followed by golden-section
//! refinement.

/// Result of a 1-D maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineMax {
    /// Maximizer.
    pub x: f64,
    /// Objective at `x`.
    pub value: f64,
    /// Number of objective evaluations used.
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> LineMax {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evaluations = 2;
    // the bracket cannot shrink below one ulp of its endpoints
    while b - a > tol && evaluations < 400 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
        if c >= d {
            break;
        }
    }
    let (x, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    LineMax {
        x,
        value,
        evaluations,
    }
}

/// Evaluates `f` on `n_grid` log-spaced points in `[lo, hi]` (`lo > 0`),
/// then runs golden-section search on the cell pair around the best point.
pub fn grid_then_golden<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    n_grid: usize,
    tol: f64,
) -> LineMax {
    assert!(lo > 0.0 && hi > lo && n_grid >= 3);
    let log_lo = libm::log(lo);
    let log_step = (libm::log(hi) - log_lo) / (n_grid - 1) as f64;
    let point = |k: usize| {
        if k == n_grid - 1 {
            hi
        } else {
            libm::exp(log_lo + log_step * k as f64)
        }
    };
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..n_grid {
        let v = f(point(k));
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let left = point(best_k.saturating_sub(1));
    let right = point((best_k + 1).min(n_grid - 1));
    let refined = golden_section_max(&mut f, left, right, tol);
    let grid_x = point(best_k);
    if refined.value >= best {
        LineMax {
            evaluations: refined.evaluations + n_grid,
            ..refined
        }
    } else {
        LineMax {
            x: grid_x,
            value: best,
            evaluations: refined.evaluations + n_grid,
        }
    }
}

/// Bisection for a sign change of `g` on `[lo, hi]`. Returns `None` if the
/// endpoint signs agree.
pub fn bisect_root<F: FnMut(f64) -> f64>(mut g: F, lo: f64, hi: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut ga = g(a);
    let gb = g(b);
    if ga == 0.0 {
        return Some(a);
    }
    if gb == 0.0 {
        return Some(b);
    }
    if (ga > 0.0) == (gb > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Some(mid);
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}
