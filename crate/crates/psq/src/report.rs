//! Serializable views of core results, with plain-text rendering.

use num_rational::BigRational;
use psq_core::cone::BdReport;
use psq_core::exact::ExactQuotient;
use psq_core::structured::{BlockSide, PositivityWitness, StructuredConfig, SupQResult, WitnessSource};
use psq_core::{PositiveVector, QuotientValue};
use serde::Serialize;

use crate::format::join;

/// `Q` and its factors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientReport {
    /// `Q(x, y)`.
    pub value: f64,
    /// `M1(x) - M1(y)`.
    pub s1: f64,
    /// `M2(y) - M2(x)`.
    pub s2: f64,
    /// `M3(x) + M3(y)`.
    pub s3: f64,
    /// Exact fractions, when computed in rational arithmetic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactFields>,
}

/// Fractions `p/q` of an exact evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactFields {
    /// `Q`.
    pub value: String,
    /// First factor.
    pub s1: String,
    /// Second factor.
    pub s2: String,
    /// Denominator.
    pub s3: String,
}

fn fraction(r: &BigRational) -> String {
    r.to_string()
}

impl From<QuotientValue> for QuotientReport {
    fn from(q: QuotientValue) -> Self {
        QuotientReport {
            value: q.value,
            s1: q.s1,
            s2: q.s2,
            s3: q.s3,
            exact: None,
        }
    }
}

impl From<&ExactQuotient> for QuotientReport {
    fn from(q: &ExactQuotient) -> Self {
        use num_traits::ToPrimitive;
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        QuotientReport {
            value: q.to_f64(),
            s1: f(&q.s1),
            s2: f(&q.s2),
            s3: f(&q.s3),
            exact: Some(ExactFields {
                value: fraction(&q.value),
                s1: fraction(&q.s1),
                s2: fraction(&q.s2),
                s3: fraction(&q.s3),
            }),
        }
    }
}

impl QuotientReport {
    /// One `name = value` line per field.
    pub fn render(&self) -> String {
        let mut out = format!("Q = {:?}\nS1 = {:?}\nS2 = {:?}\nS3 = {:?}\n", self.value, self.s1, self.s2, self.s3);
        if let Some(e) = &self.exact {
            out.push_str(&format!("Q exact = {}\nS1 exact = {}\nS2 exact = {}\nS3 exact = {}\n", e.value, e.s1, e.s2, e.s3));
        }
        out
    }
}

/// Serializable [`StructuredConfig`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigReport {
    /// Unit entries on the block side.
    pub i: usize,
    /// Entries `gamma` on the constant side.
    pub m: usize,
    /// Constant value.
    pub gamma: f64,
    /// `"x"` or `"y"`.
    pub block_side: &'static str,
    /// `Q` at the configuration.
    pub q_value: f64,
}

impl From<&StructuredConfig> for ConfigReport {
    fn from(c: &StructuredConfig) -> Self {
        ConfigReport {
            i: c.i,
            m: c.m,
            gamma: c.gamma,
            block_side: match c.side {
                BlockSide::XIsBlock => "x",
                BlockSide::YIsBlock => "y",
            },
            q_value: c.q_value,
        }
    }
}

/// Serializable [`SupQResult`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupQReport {
    /// Length of `x`.
    pub n_x: usize,
    /// Length of `y`.
    pub n_y: usize,
    /// Supremum.
    pub sup_value: f64,
    /// Always false: the supremum is a boundary limit.
    pub attained: bool,
    /// Maximizing block configuration.
    pub config: Option<ConfigReport>,
    /// Certified interval, when known.
    pub bracket: Option<(f64, f64)>,
}

impl From<&SupQResult> for SupQReport {
    fn from(r: &SupQResult) -> Self {
        SupQReport {
            n_x: r.n_x,
            n_y: r.n_y,
            sup_value: r.sup_value,
            attained: r.attained,
            config: r.maximizing_config.as_ref().map(ConfigReport::from),
            bracket: r.bracket,
        }
    }
}

impl SupQReport {
    /// Text form.
    pub fn render(&self) -> String {
        let mut out = format!("sup Q({}, {}) = {:.12}\n", self.n_x, self.n_y, self.sup_value);
        match &self.config {
            Some(c) => out.push_str(&format!(
                "block on {}: {} ones, constant side {} x gamma = {:.12}\n",
                c.block_side, c.i, c.m, c.gamma
            )),
            None => out.push_str("approached as x and y become equal\n"),
        }
        if let Some((lo, hi)) = self.bracket {
            out.push_str(&format!("certified bracket [{lo}, {hi}]\n"));
        }
        out
    }
}

/// Serializable [`BdReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BdView {
    /// Dimension.
    pub d: usize,
    /// Cone threshold over all sign patterns.
    pub bd: f64,
    /// Minus signs in the worst pattern.
    pub worst_minus_count: usize,
    /// `sup Q` over all splits.
    pub sup_q: f64,
    /// `1 / (1 + sup Q)` over the balanced split.
    pub split_bd: f64,
    /// Numeric balanced-split value.
    pub split_numeric_bd: f64,
    /// Closed form of `split_bd`.
    pub split_exact: Option<f64>,
    /// Certified interval for `split_bd`.
    pub split_bracket: Option<(f64, f64)>,
    /// `sup Q` on the balanced split.
    pub split_sup_q: f64,
    /// `1 / (1 + c* floor(d/2))`.
    pub lower_bound: f64,
    /// `1 / (1 + c* (d - 1))`.
    pub safe_lower_bound: f64,
    /// Witness upper estimate.
    pub witness_upper: Option<f64>,
    /// `2 / (c* d)`.
    pub asymptotic: f64,
    /// `(9 + 6 sqrt 3) / d`.
    pub asymptotic_all_splits: f64,
}

impl From<&BdReport> for BdView {
    fn from(r: &BdReport) -> Self {
        BdView {
            d: r.d,
            bd: r.bd,
            worst_minus_count: r.worst_minus_count,
            sup_q: r.sup_q,
            split_bd: r.split_bd,
            split_numeric_bd: r.split_numeric_bd,
            split_exact: r.split_exact,
            split_bracket: r.split_bracket,
            split_sup_q: r.split_sup_q,
            lower_bound: r.lower_bound,
            safe_lower_bound: r.safe_lower_bound,
            witness_upper: r.witness_upper,
            asymptotic: r.asymptotic,
            asymptotic_all_splits: r.asymptotic_all_splits,
        }
    }
}

impl BdView {
    /// Text form.
    pub fn render(&self) -> String {
        let mut out = format!("b_{} = {:.12}\n", self.d, self.bd);
        out.push_str(&format!(
            "sup Q over all splits = {:.12} ({} minus, {} plus)\n",
            self.sup_q,
            self.worst_minus_count,
            self.d - self.worst_minus_count
        ));
        out.push_str(&format!(
            "balanced split ({}, {}): sup Q = {:.12}, 1/(1+sup Q) = {:.12}\n",
            self.d.div_ceil(2),
            self.d / 2,
            self.split_sup_q,
            self.split_bd
        ));
        if let Some((lo, hi)) = self.split_bracket {
            out.push_str(&format!("balanced split certified bracket [{lo:.12}, {hi:.12}]\n"));
        }
        out.push_str(&format!("lower bound 1/(1+c* (d-1)) = {:.12}\n", self.safe_lower_bound));
        out.push_str(&format!("estimate 1/(1+c* floor(d/2)) = {:.12}\n", self.lower_bound));
        match self.witness_upper {
            Some(u) => out.push_str(&format!("witness upper bound = {u:.12}\n")),
            None => out.push_str("witness upper bound: none (quotient not positive)\n"),
        }
        out.push_str(&format!("asymptotic 2/(c* d) = {:.12}\n", self.asymptotic));
        out.push_str(&format!("asymptotic (9+6 sqrt 3)/d = {:.12}\n", self.asymptotic_all_splits));
        out
    }
}

/// A witness pair with its quotient.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    /// Construction.
    pub source: &'static str,
    /// `x`.
    pub x: Vec<f64>,
    /// `y`.
    pub y: Vec<f64>,
    /// `Q(x, y)`.
    pub q_value: f64,
    /// `Q / n` for the asymptotic witnesses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_over_n: Option<f64>,
}

impl WitnessReport {
    /// The asymptotic pair of size `n`.
    pub fn asymptotic(n: usize, x: &PositiveVector, y: &PositiveVector) -> Self {
        let q = psq_core::quotient_q(x, y).value;
        WitnessReport {
            source: "asymptotic",
            x: x.as_slice().to_vec(),
            y: y.as_slice().to_vec(),
            q_value: q,
            q_over_n: Some(q / n as f64),
        }
    }

    /// A positivity witness.
    pub fn positivity(w: &PositivityWitness) -> Self {
        WitnessReport {
            source: match w.source {
                WitnessSource::Balanced => "balanced",
                WitnessSource::Extended => "extended",
                WitnessSource::Tabulated => "tabulated",
                WitnessSource::Structured => "structured",
            },
            x: w.x.as_slice().to_vec(),
            y: w.y.as_slice().to_vec(),
            q_value: w.q_value,
            q_over_n: None,
        }
    }

    /// Text form.
    pub fn render(&self) -> String {
        let mut out = format!("source: {}\nx = [{}]\ny = [{}]\nQ = {:?}\n", self.source, join(&self.x), join(&self.y), self.q_value);
        if let Some(r) = self.q_over_n {
            out.push_str(&format!("Q/n = {r:?}\n"));
        }
        out
    }
}
