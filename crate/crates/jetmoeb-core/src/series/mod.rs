//! Exact truncated series: power jets, Laurent jets, and their scalars.
//!
//! All jets are centered (coordinate u = z - z_0, with z_0 kept by the
//! caller) and every operation is a pure function on immutable values, so
//! the whole module is safe to use from multiple threads. Truncation orders
//! are explicit and propagated pessimistically.

pub mod laurent;
pub mod power;
pub mod scalar;

pub use laurent::LaurentJet;
pub use power::PowerJet;
pub use scalar::{
    format_rational, parse_rational, rat, rat_int, to_c64, Coefficient, ComplexExact, Rational,
    C64, DEFAULT_TOLERANCE,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Failure modes of series arithmetic.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// A coefficient beyond the jet's valid order was requested (orders are
    /// never padded with silent zeros).
    #[error("coefficient {requested} requested from a jet valid through order {order}")]
    InsufficientOrder { requested: i64, order: i64 },
    /// Composition where the inner jet's constant term is nonzero, so the
    /// outer expansion point does not match.
    #[error("composition center mismatch: inner jet has a nonzero constant term")]
    CenterMismatch,
    /// Reciprocal of a jet with no invertible leading data.
    #[error("division by a series with zero leading coefficient")]
    DivisionByZeroSeries,
    /// Compositional inverse of a germ that is not invertible (c0 != 0 or
    /// c1 = 0).
    #[error("germ is not invertible under composition (need c0 = 0, c1 != 0)")]
    NotInvertibleGerm,
    /// Integration of a jet with a nonzero residue (coefficient at index -1).
    #[error("integration obstructed by a nonzero residue")]
    ResidueObstruction,
    /// Exponential of a jet whose constant term is nonzero (the exact
    /// backend cannot represent transcendental values).
    #[error("exp of a series with nonzero constant term is not representable exactly")]
    UnsupportedConstantTerm,
}

impl SeriesError {
    /// Stable machine-readable name of the error case.
    pub fn error_name(&self) -> &'static str {
        match self {
            SeriesError::InsufficientOrder { .. } => "InsufficientOrder",
            SeriesError::CenterMismatch => "CenterMismatch",
            SeriesError::DivisionByZeroSeries => "DivisionByZeroSeries",
            SeriesError::NotInvertibleGerm => "NotInvertibleGerm",
            SeriesError::ResidueObstruction => "ResidueObstruction",
            SeriesError::UnsupportedConstantTerm => "UnsupportedConstantTerm",
        }
    }
}

/// Shared JSON envelope for jets: {"pole": p, "order": K, "coeffs": [...]}
/// with coefficients listed from index -p upward.
#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "C: Serialize",
    deserialize = "C: serde::de::DeserializeOwned"
))]
pub(crate) struct JetRepr<C> {
    pub pole: u32,
    pub order: i64,
    pub coeffs: Vec<C>,
}
