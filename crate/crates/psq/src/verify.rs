//! Cross-checks of the structured supremum against the brute-force oracle.

use psq_core::oracle::{brute_force_sup, check_structured_shape, MAX_ORACLE_DIM};
use psq_core::sup_q;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::InputError;

/// Thresholds and effort.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Cells `(n_x, n_y)` with both lengths up to `max_n`.
    pub max_n: usize,
    /// Oracle seed; cell `(n_x, n_y)` uses `seed + 16 n_x + n_y`.
    pub seed: u64,
    /// Random oracle starts per cell.
    pub n_starts: usize,
    /// Tolerance for [`sup_q`].
    pub tol: f64,
    /// Allowed `|oracle - structured|`.
    pub agreement: f64,
    /// Tolerance of the shape check.
    pub shape_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 4,
            seed: 0,
            n_starts: 64,
            tol: 1e-9,
            agreement: 1e-5,
            shape_tol: 1e-3,
        }
    }
}

/// Outcome for one pair of lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyCell {
    /// Length of `x`.
    pub n_x: usize,
    /// Length of `y`.
    pub n_y: usize,
    /// [`sup_q`].
    pub structured: f64,
    /// Best oracle value.
    pub oracle: f64,
    /// `|oracle - structured|`.
    pub difference: f64,
    /// Whether the oracle maximizer has block shape.
    pub shape_ok: bool,
    /// Agreement and shape both hold.
    pub pass: bool,
}

/// All cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Largest length checked.
    pub max_n: usize,
    /// Base seed.
    pub seed: u64,
    /// Row-major by `n_x`, then `n_y`.
    pub cells: Vec<VerifyCell>,
    /// Every cell passed.
    pub all_pass: bool,
}

/// Runs every cell in parallel.
pub fn run_verify(options: &VerifyOptions) -> Result<VerifyReport, InputError> {
    let max_n = options.max_n;
    if max_n == 0 || max_n > MAX_ORACLE_DIM {
        return Err(InputError::Invalid(format!(
            "max_n = {max_n} must lie in 1..={MAX_ORACLE_DIM}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (1..=max_n).flat_map(|a| (1..=max_n).map(move |b| (a, b))).collect();
    let cells = pairs
        .par_iter()
        .map(|&(n_x, n_y)| {
            let structured = sup_q(n_x, n_y, options.tol)?.sup_value;
            let seed = options.seed.wrapping_add(16 * n_x as u64 + n_y as u64);
            let oracle = brute_force_sup(n_x, n_y, options.n_starts, seed)?;
            let difference = (oracle.best_value - structured).abs();
            let shape_ok = check_structured_shape(&oracle, options.shape_tol);
            Ok(VerifyCell {
                n_x,
                n_y,
                structured,
                oracle: oracle.best_value,
                difference,
                shape_ok,
                pass: difference <= options.agreement && shape_ok,
            })
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    let all_pass = cells.iter().all(|c| c.pass);
    Ok(VerifyReport {
        max_n,
        seed: options.seed,
        cells,
        all_pass,
    })
}

impl VerifyReport {
    /// Pass/fail matrix followed by the failing cells, if any.
    pub fn render(&self) -> String {
        let mut out = String::from("n_x\\n_y");
        for n_y in 1..=self.max_n {
            out.push_str(&format!("{n_y:>6}"));
        }
        out.push('\n');
        for row in self.cells.chunks(self.max_n) {
            out.push_str(&format!("{:>7}", row[0].n_x));
            for c in row {
                out.push_str(&format!("{:>6}", if c.pass { "pass" } else { "FAIL" }));
            }
            out.push('\n');
        }
        for c in self.cells.iter().filter(|c| !c.pass) {
            out.push_str(&format!(
                "({}, {}): structured {:.12} oracle {:.12} shape {}\n",
                c.n_x,
                c.n_y,
                c.structured,
                c.oracle,
                if c.shape_ok { "ok" } else { "not block" }
            ));
        }
        out.push_str(if self.all_pass { "all cells pass\n" } else { "verification failed\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_confirms_zero() {
        let r = run_verify(&VerifyOptions {
            max_n: 1,
            ..VerifyOptions::default()
        })
        .unwrap();
        assert_eq!(r.cells.len(), 1);
        assert_eq!(r.cells[0].structured, 0.0);
        assert!(r.all_pass);
    }

    #[test]
    fn rejects_large_max_n() {
        assert!(run_verify(&VerifyOptions {
            max_n: 9,
            ..VerifyOptions::default()
        })
        .is_err());
    }

    #[test]
    fn matrix_layout() {
        let r = run_verify(&VerifyOptions {
            max_n: 2,
            ..VerifyOptions::default()
        })
        .unwrap();
        let text = r.render();
        assert_eq!(text.lines().count(), 4, "{text}");
        assert!(text.ends_with("all cells pass\n"));
    }
}
