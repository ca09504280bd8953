//! Parsing and serialization of vectors, matrices and certificates.
//!
//! Vectors are written inline as `1,0.5,3/4` or as JSON arrays whose
//! elements are numbers or strings (`["3/2", 0.75]`). Matrices are JSON
//! objects, either `{"d": 3, "b": 0.5}` for `M_d(b)` or
//! `{"d": 2, "entries": [[1, 0.2], [0.2, 1]]}` (a flat row-major array is
//! accepted too).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use psq_core::cone::{ConeCertificate, MatrixSpec, Method, NonmemberWitness, SignPattern, Verdict};
use psq_core::exact::parse_ratio;
use psq_core::PositiveVector;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Malformed or invalid input.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    /// No entries.
    #[error("{name} is empty")]
    Empty {
        /// Which vector.
        name: String,
    },
    /// A token that is not a number.
    #[error("entry {index} of {name} (`{text}`) is not a number")]
    NotANumber {
        /// Which vector.
        name: String,
        /// Zero-based position.
        index: usize,
        /// Offending token.
        text: String,
    },
    /// A zero, negative or non-finite entry.
    #[error("entry {index} of {name} (`{text}`) must be positive and finite")]
    NotPositive {
        /// Which vector.
        name: String,
        /// Zero-based position.
        index: usize,
        /// Offending token.
        text: String,
    },
    /// Invalid JSON or a JSON document of the wrong shape.
    #[error("invalid JSON")]
    Json(#[from] serde_json::Error),
    /// A structurally valid document with inconsistent content.
    #[error("{0}")]
    Invalid(String),
    /// Rejected by the core library.
    #[error(transparent)]
    Core(#[from] psq_core::Error),
}

fn token_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn tokens(text: &str) -> Result<Vec<String>, InputError> {
    let text = text.trim();
    if text.starts_with('[') {
        let values: Vec<Value> = serde_json::from_str(text)?;
        Ok(values.iter().map(token_text).collect())
    } else if text.is_empty() {
        Ok(Vec::new())
    } else {
        Ok(text.split(',').map(|t| t.trim().to_owned()).collect())
    }
}

fn float_token(token: &str) -> Option<f64> {
    if token.contains('/') {
        parse_ratio(token).and_then(|r| r.to_f64())
    } else {
        token.parse::<f64>().ok()
    }
}

fn positive_floats(name: &str, tokens: &[String]) -> Result<Vec<f64>, InputError> {
    if tokens.is_empty() {
        return Err(InputError::Empty { name: name.into() });
    }
    tokens
        .iter()
        .enumerate()
        .map(|(index, t)| {
            let v = float_token(t).ok_or_else(|| InputError::NotANumber {
                name: name.into(),
                index,
                text: t.clone(),
            })?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(InputError::NotPositive {
                    name: name.into(),
                    index,
                    text: t.clone(),
                })
            }
        })
        .collect()
}

/// Parses a positive vector from inline or JSON-array text; `name` appears
/// in error messages.
pub fn parse_vector(name: &str, text: &str) -> Result<PositiveVector, InputError> {
    let values = positive_floats(name, &tokens(text)?)?;
    Ok(PositiveVector::new(values)?)
}

/// Exact rational from `p/q`, an integer, or a decimal such as `0.375` or `1e-3`.
pub fn parse_exact_token(token: &str) -> Option<BigRational> {
    if let Some(r) = parse_ratio(token) {
        return Some(r);
    }
    let token = token.trim();
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(k) => (&token[..k], token[k + 1..].parse::<i32>().ok()?),
        None => (token, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.starts_with(['+', '-']) || (int_part.is_empty() && frac_part.is_empty()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = match digits.as_str() {
        "" | "+" | "-" => return None,
        d => d,
    };
    let numer: BigInt = digits.parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let power = BigInt::from(10).pow(scale.unsigned_abs());
    Some(if scale >= 0 {
        BigRational::from_integer(numer * power)
    } else {
        BigRational::new(numer, power)
    })
}

/// Parses a positive vector of exact rationals.
pub fn parse_exact_vector(name: &str, text: &str) -> Result<Vec<BigRational>, InputError> {
    exact_from_tokens(name, &tokens(text)?)
}

fn exact_from_tokens(name: &str, tokens: &[String]) -> Result<Vec<BigRational>, InputError> {
    if tokens.is_empty() {
        return Err(InputError::Empty { name: name.into() });
    }
    let zero = BigRational::from_integer(0.into());
    tokens
        .iter()
        .enumerate()
        .map(|(index, t)| {
            let v = parse_exact_token(t).ok_or_else(|| InputError::NotANumber {
                name: name.into(),
                index,
                text: t.clone(),
            })?;
            if v > zero {
                Ok(v)
            } else {
                Err(InputError::NotPositive {
                    name: name.into(),
                    index,
                    text: t.clone(),
                })
            }
        })
        .collect()
}

/// A JSON file holding `{"x": [...], "y": [...]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorPairFile {
    /// Entries of `x`, numbers or rational strings.
    pub x: Vec<Value>,
    /// Entries of `y`.
    pub y: Vec<Value>,
}

impl VectorPairFile {
    /// Parses the document.
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Both vectors in floating point.
    pub fn floats(&self) -> Result<(PositiveVector, PositiveVector), InputError> {
        let x = positive_floats("x", &self.x.iter().map(token_text).collect::<Vec<_>>())?;
        let y = positive_floats("y", &self.y.iter().map(token_text).collect::<Vec<_>>())?;
        Ok((PositiveVector::new(x)?, PositiveVector::new(y)?))
    }

    /// Both vectors as exact rationals. JSON numbers are read through their
    /// decimal text, so `0.1` means exactly one tenth.
    pub fn exact(&self) -> Result<(Vec<BigRational>, Vec<BigRational>), InputError> {
        let x = exact_from_tokens("x", &self.x.iter().map(token_text).collect::<Vec<_>>())?;
        let y = exact_from_tokens("y", &self.y.iter().map(token_text).collect::<Vec<_>>())?;
        Ok((x, y))
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum Entries {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

/// On-disk form of a [`MatrixSpec`].
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Entries>,
}

impl MatrixFile {
    /// Serializable form of `m`; general matrices are written row by row.
    pub fn from_spec(m: &MatrixSpec) -> Self {
        match m {
            MatrixSpec::EqualOffDiagonal { d, b } => MatrixFile {
                d: *d,
                b: Some(*b),
                entries: None,
            },
            MatrixSpec::General { d, entries } => MatrixFile {
                d: *d,
                b: None,
                entries: Some(Entries::Rows(entries.chunks(*d).map(<[f64]>::to_vec).collect())),
            },
        }
    }

    /// Validates and converts.
    pub fn to_spec(&self) -> Result<MatrixSpec, InputError> {
        let d = self.d;
        if d < 2 {
            return Err(InputError::Invalid(format!("d = {d}: the dimension must be at least 2")));
        }
        match (&self.b, &self.entries) {
            (Some(_), Some(_)) => Err(InputError::Invalid("give either `b` or `entries`, not both".into())),
            (None, None) => Err(InputError::Invalid("missing `b` or `entries`".into())),
            (Some(b), None) => {
                if !(*b > 0.0) {
                    return Err(InputError::Invalid(format!("b = {b} must be positive")));
                }
                Ok(MatrixSpec::equal_off_diagonal(d, *b)?)
            }
            (None, Some(Entries::Flat(v))) => {
                if v.len() != d * d {
                    return Err(InputError::Invalid(format!(
                        "entries has {} values, expected d * d = {}",
                        v.len(),
                        d * d
                    )));
                }
                Ok(MatrixSpec::general(d, v.clone())?)
            }
            (None, Some(Entries::Rows(rows))) => {
                if rows.len() != d {
                    return Err(InputError::Invalid(format!("entries has {} rows, expected {d}", rows.len())));
                }
                if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != d) {
                    return Err(InputError::Invalid(format!(
                        "row {r} of entries has {} values, expected {d}",
                        row.len()
                    )));
                }
                Ok(MatrixSpec::general(d, rows.concat())?)
            }
        }
    }
}

/// Parses a matrix document.
pub fn parse_matrix(text: &str) -> Result<MatrixSpec, InputError> {
    serde_json::from_str::<MatrixFile>(text)?.to_spec()
}

/// Serializes a matrix.
pub fn matrix_to_json(m: &MatrixSpec) -> String {
    serde_json::to_string(&MatrixFile::from_spec(m)).expect("matrix serializes")
}

/// Verdict label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictLabel {
    /// Membership proven.
    MemberCertified,
    /// Membership refuted by the attached witness.
    Nonmember,
    /// Undecided.
    Inconclusive,
}

impl VerdictLabel {
    /// Name used in JSON and text output.
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictLabel::MemberCertified => "member_certified",
            VerdictLabel::Nonmember => "nonmember",
            VerdictLabel::Inconclusive => "inconclusive",
        }
    }
}

/// Method label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodLabel {
    /// Diagonal dominance.
    DiagonalDominance,
    /// Threshold comparison for `M_d(b)`.
    ExactBd,
    /// Probing of `Psi`.
    Sampling,
}

impl MethodLabel {
    /// Name used in JSON and text output.
    pub fn as_str(self) -> &'static str {
        match self {
            MethodLabel::DiagonalDominance => "diagonal_dominance",
            MethodLabel::ExactBd => "exact_bd",
            MethodLabel::Sampling => "sampling",
        }
    }
}

/// Serialized witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    /// Positive vector.
    pub z: Vec<f64>,
    /// Signs.
    pub s: Vec<i8>,
    /// `Psi_M(z, s)`.
    pub psi: f64,
}

/// Serialized [`ConeCertificate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    /// Outcome.
    pub verdict: VerdictLabel,
    /// Procedure.
    pub method: MethodLabel,
    /// Present for nonmembers.
    pub witness: Option<WitnessFile>,
}

impl CertificateFile {
    /// Serializable form of a certificate.
    pub fn from_certificate(c: &ConeCertificate) -> Self {
        let method = match c.method {
            Method::DiagonalDominance => MethodLabel::DiagonalDominance,
            Method::ExactBd => MethodLabel::ExactBd,
            Method::Sampling => MethodLabel::Sampling,
        };
        let (verdict, witness) = match &c.verdict {
            Verdict::MemberCertified => (VerdictLabel::MemberCertified, None),
            Verdict::Inconclusive => (VerdictLabel::Inconclusive, None),
            Verdict::NonmemberWithWitness(w) => (
                VerdictLabel::Nonmember,
                Some(WitnessFile {
                    z: w.z.as_slice().to_vec(),
                    s: w.s.as_slice().to_vec(),
                    psi: w.psi,
                }),
            ),
        };
        CertificateFile { verdict, method, witness }
    }

    /// Rebuilds the witness with validation.
    pub fn witness(&self) -> Result<Option<NonmemberWitness>, InputError> {
        let Some(w) = &self.witness else {
            return Ok(None);
        };
        Ok(Some(NonmemberWitness {
            z: PositiveVector::new(w.z.clone())?,
            s: SignPattern::new(w.s.clone())?,
            psi: w.psi,
        }))
    }

    /// Pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Parses [`CertificateFile::to_json`] output.
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Plain-text rendering.
    pub fn render(&self) -> String {
        let mut out = format!("verdict: {}\nmethod: {}\n", self.verdict.as_str(), self.method.as_str());
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness z: {}\n", join(&w.z)));
            out.push_str(&format!(
                "witness s: {}\n",
                w.s.iter().map(|s| if *s < 0 { "-" } else { "+" }).collect::<String>()
            ));
            out.push_str(&format!("psi: {:e}\n", w.psi));
        }
        out
    }
}

/// Comma-separated shortest round-trip representations.
pub fn join(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(",")
}
