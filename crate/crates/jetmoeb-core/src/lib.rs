//! Exact jet calculus for holomorphic map-germs under the Moebius group.
//!
//! The crate computes with truncated series over exact complex rationals:
//! Schwarzian derivatives of (possibly branched) germs, osculating Moebius
//! transformations and their derivative as an sl2-valued field, branching
//! classes of ramified germs with their affine torsor structure, the Fuchs
//! obstruction calculus for the branched Schwarzian equation, and the
//! identification between normalized sl2-connections and projective
//! structures in a single chart. A float backend with tolerance-based
//! comparison mirrors the exact interface.

pub mod branching;
pub mod connections;
pub mod fuchs;
pub mod moebius;
pub mod schwarzian;
pub mod series;
pub mod verify;

pub use branching::{
    BranchedJet, BranchingClass, BranchingError, ClassDelta, DiffMode, DivisorClassData,
    DivisorDelta, OneFormDelta, QuadDiffDelta,
};
pub use connections::{ConnectionsError, OneFormWSeries, VFieldWSeries};
pub use fuchs::{FuchsError, ObstructionPoly, QuadDiffLaurent, RiccatiSolution};
pub use moebius::{Moebius, MoebiusError, PointCP1, Sl2Field, VectorJet2};
pub use schwarzian::SchwarzianError;
pub use series::{
    Coefficient, ComplexExact, LaurentJet, PowerJet, Rational, SeriesError, C64,
};
pub use verify::SuiteReport;
