//! The threshold tables: the balanced-split value `1 / (1 + sup Q)` with the
//! estimate `1 / (1 + c* floor(d/2))` for small `d`, and that estimate with
//! the witness upper bound and `2 / (c* d)` for large `d`. Both tables also
//! carry the cone threshold over all sign patterns, which is smaller from
//! `d = 4` on.
//!
//! Text output truncates toward zero to three decimals;
//! JSON keeps every digit.

use psq_core::cone::{bd_estimates, compute_bd, worst_split_sup};
use psq_core::structured::SHARED_BRACKET;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::InputError;

/// Default dimensions of the large-`d` table.
pub const DEFAULT_TABLE2_DIMS: [usize; 7] = [50, 100, 150, 200, 300, 400, 500];

/// One row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    /// Dimension.
    pub d: usize,
    /// `1 / (1 + c* floor(d/2))`.
    pub lower_estimate: f64,
    /// Balanced-split `1 / (1 + sup Q)` in the small table, the witness upper
    /// bound in the large one.
    pub bd_or_upper: f64,
    /// `2 / (c* d)`, large table only.
    pub asymptotic: Option<f64>,
    /// `sup Q` on the split, small table only.
    pub sup_q: Option<f64>,
    /// Certified interval containing `sup_q`, when one is known.
    pub sup_q_bracket: Option<(f64, f64)>,
    /// `M_d(b)` lies in the cone exactly for `b` below this.
    pub threshold: f64,
}

/// Which table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// `d = 2..=6`.
    SmallD,
    /// User-chosen large `d`.
    LargeD,
}

/// A rendered-or-serialized table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table {
    /// Layout.
    pub kind: TableKind,
    /// Rows in input order.
    pub rows: Vec<TableRow>,
}

/// `d = 2..=6`; the balanced-split value uses the closed form for `d <= 4`.
pub fn table1(tol: f64) -> Result<Table, InputError> {
    let rows = (2..=6)
        .into_par_iter()
        .map(|d| {
            let r = compute_bd(d, tol)?;
            Ok(TableRow {
                d,
                lower_estimate: r.lower_bound,
                bd_or_upper: r.split_bd,
                asymptotic: None,
                sup_q: Some(r.split_sup_q),
                sup_q_bracket: (d >= 5).then_some(SHARED_BRACKET),
                threshold: r.bd,
            })
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(Table {
        kind: TableKind::SmallD,
        rows,
    })
}

/// Estimates for each `d` in `dims`. Rejects `d` whose witness quotient is
/// not positive (every `d <= 18`).
pub fn table2(dims: &[usize], tol: f64) -> Result<Table, InputError> {
    if dims.is_empty() {
        return Err(InputError::Invalid("no dimensions given".into()));
    }
    let rows = dims
        .par_iter()
        .map(|&d| {
            if d < 2 {
                return Err(InputError::Invalid(format!("d = {d}: the dimension must be at least 2")));
            }
            let (lower, upper, asymptotic) = bd_estimates(d)?;
            let upper = upper.ok_or_else(|| {
                InputError::Invalid(format!(
                    "d = {d}: the witness quotient is not positive, so there is no upper estimate"
                ))
            })?;
            let worst = worst_split_sup(d, tol)?;
            Ok(TableRow {
                d,
                lower_estimate: lower,
                bd_or_upper: upper,
                asymptotic: Some(asymptotic),
                sup_q: None,
                sup_q_bracket: None,
                threshold: 1.0 / (1.0 + worst.sup_value),
            })
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(Table {
        kind: TableKind::LargeD,
        rows,
    })
}

/// `v` truncated toward zero to three decimals.
pub fn truncate3(v: f64) -> String {
    let t = (v * 1000.0).trunc() / 1000.0;
    let t = if t == 0.0 { 0.0 } else { t };
    format!("{t:.3}")
}

impl Table {
    /// Fixed-width text.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.kind {
            TableKind::SmallD => {
                out.push_str("  d  lower    b_d  threshold\n");
                for r in &self.rows {
                    out.push_str(&format!(
                        "{:>3}  {}  {}  {}\n",
                        r.d,
                        truncate3(r.lower_estimate),
                        truncate3(r.bd_or_upper),
                        truncate3(r.threshold)
                    ));
                }
            }
            TableKind::LargeD => {
                out.push_str("    d  lower  upper  asymptotic  threshold\n");
                for r in &self.rows {
                    out.push_str(&format!(
                        "{:>5}  {}  {}       {}      {}\n",
                        r.d,
                        truncate3(r.lower_estimate),
                        truncate3(r.bd_or_upper),
                        r.asymptotic.map_or_else(|| "    -".into(), truncate3),
                        truncate3(r.threshold)
                    ));
                }
            }
        }
        out
    }

    /// Pretty JSON with shortest round-trip number formatting.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Parses [`Table::to_json`] output.
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }
}
