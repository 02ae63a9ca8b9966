//! JSON documents emitted by the CLI. Rationals appear either as
//! `{"num", "den"}` integer pairs or, inside certificates, as `"p/q"` strings.
//! Disk sequences are 1-based.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use sclkit::{
    format_rational, parse_rational, AlternatingWord, BoundKind, DiskVector, ExactDecomposition,
    ExactScl, FactorSignature, KappaDecomposition, Matrix, Rational,
};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl TryFrom<&Rational> for Fraction {
    type Error = CliError;

    fn try_from(r: &Rational) -> Result<Self, CliError> {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Ok(Self { num, den }),
            _ => Err(CliError::Overflow(format_rational(r))),
        }
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Fraction {
    pub fn to_rational(self) -> Result<Rational, CliError> {
        if self.den == 0 {
            return Err(CliError::Malformed("zero denominator".into()));
        }
        Ok(Rational::new(self.num.into(), self.den.into()))
    }
}

fn text(r: &Rational) -> String {
    format_rational(r)
}

fn parse(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Malformed(format!("not a rational: {s:?}")))
}

fn parse_all(items: &[String]) -> Result<Vec<Rational>, CliError> {
    items.iter().map(|s| parse(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub sequence: Vec<usize>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub terms: Vec<Term>,
    pub remainder: Vec<String>,
    pub objective: String,
}

impl Decomposition {
    fn from_core(d: &ExactDecomposition) -> Self {
        Self {
            terms: d
                .terms
                .iter()
                .map(|(disk, w)| Term {
                    sequence: disk.sequence().iter().map(|i| i + 1).collect(),
                    weight: text(w),
                })
                .collect(),
            remainder: d.remainder.iter().map(text).collect(),
            objective: text(&d.objective),
        }
    }

    fn to_core(&self, dim: usize) -> Result<ExactDecomposition, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let seq = t
                    .sequence
                    .iter()
                    .map(|&i| {
                        i.checked_sub(1)
                            .ok_or_else(|| CliError::Malformed("sequence index 0".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((DiskVector::from_sequence(seq, dim)?, parse(&t.weight)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(KappaDecomposition {
            terms,
            remainder: parse_all(&self.remainder)?,
            objective: parse(&self.objective)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Row-major.
    pub optimum_v: Vec<String>,
    pub opt_objective: Fraction,
    pub k_max: [usize; 2],
    pub decomp_a: Decomposition,
    pub decomp_b: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SclDocument {
    pub word: String,
    pub orders: String,
    #[serde(rename = "L")]
    pub len: usize,
    pub value: Fraction,
    pub exact: bool,
    pub bound_kind: String,
    pub certificate: Certificate,
}

impl SclDocument {
    pub fn from_result(r: &ExactScl) -> Result<Self, CliError> {
        Ok(Self {
            word: r.word.to_string(),
            orders: r.word.signature().to_string(),
            len: r.word.len(),
            value: Fraction::try_from(&r.value)?,
            exact: r.exact,
            bound_kind: r.bound_kind.to_string(),
            certificate: Certificate {
                optimum_v: r.optimum_v.entries().iter().map(text).collect(),
                opt_objective: Fraction::try_from(&r.opt_objective)?,
                k_max: [r.k_max.0, r.k_max.1],
                decomp_a: Decomposition::from_core(&r.decomp_a),
                decomp_b: Decomposition::from_core(&r.decomp_b),
            },
        })
    }

    /// Rebuilds the result so it can be re-verified.
    pub fn to_result(&self) -> Result<ExactScl, CliError> {
        let sig = FactorSignature::parse(&self.orders)?;
        let word = AlternatingWord::parse(&self.word, &sig)?;
        let dim = word.len();
        let c = &self.certificate;
        Ok(ExactScl {
            word,
            value: self.value.to_rational()?,
            exact: self.exact,
            bound_kind: BoundKind::parse(&self.bound_kind)
                .ok_or_else(|| CliError::Malformed(format!("bound kind {:?}", self.bound_kind)))?,
            optimum_v: Matrix::from_entries_unchecked(dim, parse_all(&c.optimum_v)?)?,
            decomp_a: c.decomp_a.to_core(dim)?,
            decomp_b: c.decomp_b.to_core(dim)?,
            opt_objective: c.opt_objective.to_rational()?,
            k_max: (c.k_max[0], c.k_max[1]),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDocument {
    pub word: String,
    pub orders: String,
    /// Least letter order, `"inf"` when every letter has infinite order.
    #[serde(rename = "N")]
    pub least_order: String,
    pub value: Fraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClBoundDocument {
    pub powers: Vec<i64>,
    pub scl: Fraction,
    /// Lower bound for the commutator length of the product.
    pub lower_bound: Fraction,
    /// Lower bound for `2·cl − 2`, present when the least order is known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub version_bound: Option<i64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub least_order: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskEntry {
    pub sequence: Vec<usize>,
    /// Row-major `L × L` pair counts.
    pub pair_counts: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDisks {
    pub order: String,
    pub exponents: Vec<i64>,
    pub k_max: usize,
    pub complete: bool,
    pub disks: Vec<DiskEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisksDocument {
    pub word: String,
    pub orders: String,
    #[serde(rename = "L")]
    pub len: usize,
    pub factor_a: FactorDisks,
    pub factor_b: FactorDisks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// `pass`, `fail`, or `n/a`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub factor: usize,
    pub pieces: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub contribution: Fraction,
    pub disk_estimate: Fraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatgraphDocument {
    pub word: String,
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
    pub degree: Option<usize>,
    pub euler_characteristic: i64,
    pub valence_sum: usize,
    pub descending_count: Option<usize>,
    /// `−χ/2n`, an upper bound for scl.
    pub scl_upper_bound: Option<Fraction>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub contributions: Vec<Contribution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestEntry {
    pub criterion: u8,
    pub title: String,
    pub passed: bool,
    pub millis: u64,
    pub detail: String,
}
