use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::histogram::{accumulate_joint, JointHistogram};
use super::shannon::entropy_of_masses;
use crate::error::{Error, Result};
use crate::focus::FocusMap;
use crate::imaging::{AffineTransform, BinningScheme, Image};
use crate::scalar::Real;

/// Similarity criterion maximized during registration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Criterion {
    /// Mutual information `H(u) + H(v) - H(u, v)`.
    Mi,
    /// Normalized mutual information `(H(u) + H(v)) / H(u, v)`.
    #[default]
    Nmi,
    /// Entropy correlation coefficient `2 MI / (H(u) + H(v))`.
    Ecc,
}

impl Criterion {
    pub fn select<T: Real>(&self, v: &CriterionValues<T>) -> T {
        match self {
            Criterion::Mi => v.mi,
            Criterion::Nmi => v.nmi,
            Criterion::Ecc => v.ecc,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Mi => "MI",
            Criterion::Nmi => "NMI",
            Criterion::Ecc => "ECC",
        })
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "MI" | "FMI" => Ok(Criterion::Mi),
            "NMI" | "Y" => Ok(Criterion::Nmi),
            "ECC" => Ok(Criterion::Ecc),
            _ => Err(Error::Parse(format!("unknown criterion '{s}'"))),
        }
    }
}

/// Entropies (nats) and the three criteria derived from one joint histogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionValues<T: Real = f64> {
    pub h_ref: T,
    pub h_test: T,
    pub h_joint: T,
    pub mi: T,
    pub nmi: T,
    pub ecc: T,
}

/// Entropies and criteria of a (focussed) joint histogram.
///
/// All three entropies normalize by the same histogram total, so a purely
/// diagonal table gives bit-identical `h_ref`, `h_test` and `h_joint`.
pub fn criteria_from_histogram<T: Real>(h: &JointHistogram<T>) -> Result<CriterionValues<T>> {
    let total = h.total();
    if !(total > T::zero()) {
        return Err(Error::EmptyOverlap);
    }
    let h_joint = entropy_of_masses(h.mass(), total);
    let h_ref = entropy_of_masses(h.row_marginal(), total);
    let h_test = entropy_of_masses(h.col_marginal(), total);
    let mi = h_ref + h_test - h_joint;
    if !(h_joint > T::zero()) {
        return Err(Error::DegenerateHistogram { mi: mi.as_f64() });
    }
    let marginal_sum = h_ref + h_test;
    let values = CriterionValues {
        h_ref,
        h_test,
        h_joint,
        mi,
        nmi: marginal_sum / h_joint,
        ecc: T::lit(2.0) * mi / marginal_sum,
    };
    if ![values.mi, values.nmi, values.ecc].iter().all(|v| v.is_finite()) {
        return Err(Error::Internal("non-finite criterion value".into()));
    }
    Ok(values)
}

/// All criterion values for one transform.
pub fn evaluate_all<T: Real>(
    reference: &Image<T>,
    test: &Image<T>,
    transform: &AffineTransform<T>,
    scheme: &BinningScheme,
    focus: Option<&FocusMap<T>>,
) -> Result<CriterionValues<T>> {
    criteria_from_histogram(&accumulate_joint(reference, test, transform, scheme, focus)?)
}

/// The selected criterion for one transform.
pub fn evaluate_criterion<T: Real>(
    reference: &Image<T>,
    test: &Image<T>,
    transform: &AffineTransform<T>,
    scheme: &BinningScheme,
    focus: Option<&FocusMap<T>>,
    which: Criterion,
) -> Result<T> {
    evaluate_all(reference, test, transform, scheme, focus).map(|v| which.select(&v))
}
