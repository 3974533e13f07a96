//! Schwarzian and pre-Schwarzian derivatives of map germs.
//!
//! For a germ f with f'(0) != 0 the pre-Schwarzian u = f''/f' and the
//! Schwarzian S(f) = u' - u^2/2 are ordinary power jets. At a branch point
//! of order n (valuation n+1 after centering) both become Laurent jets: u
//! acquires a simple pole with residue exactly n, and S(f) a double pole
//! with leading coefficient (1 - (n+1)^2)/2. All operations track how far
//! the result is valid from the order of the input jet.

use thiserror::Error;

use crate::series::{Coefficient, LaurentJet, PowerJet, SeriesError};

/// Failure modes of Schwarzian computations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SchwarzianError {
    /// The germ's vanishing order after centering does not equal the
    /// declared branch order plus one.
    #[error("germ valuation does not match the declared branch order")]
    BranchOrderMismatch,
    /// The reference coordinate of a relative Schwarzian is branched or
    /// constant, so it cannot be inverted.
    #[error("reference coordinate is not an invertible germ")]
    CoordinateNotInvertible,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl SchwarzianError {
    /// Stable machine-readable name of the variant.
    pub fn error_name(&self) -> &'static str {
        match self {
            SchwarzianError::BranchOrderMismatch => "BranchOrderMismatch",
            SchwarzianError::CoordinateNotInvertible => "CoordinateNotInvertible",
            SchwarzianError::Series(e) => e.error_name(),
        }
    }
}

/// Checks that f - f(0) vanishes to order exactly n+1.
fn check_branch_order<C: Coefficient>(
    f: &PowerJet<C>,
    n: usize,
) -> Result<(), SchwarzianError> {
    if f.order() < n + 1 {
        return Err(SeriesError::InsufficientOrder {
            requested: (n + 1) as i64,
            order: f.order() as i64,
        }
        .into());
    }
    for k in 1..=n {
        if !f.coeff(k)?.is_zero() {
            return Err(SchwarzianError::BranchOrderMismatch);
        }
    }
    if f.coeff(n + 1)?.is_zero() {
        return Err(SchwarzianError::BranchOrderMismatch);
    }
    Ok(())
}

/// Pre-Schwarzian derivative u = f''/f' of a germ with branch order n.
///
/// The input must satisfy f - f(0) = a_{n+1} z^{n+1} + ... with a_{n+1}
/// nonzero (for n = 0 this is just f'(0) != 0). For n >= 1 the result has
/// a simple pole whose residue is exactly n; for n = 0 it is pole-free.
/// An input of order K yields a jet valid through order K - n - 2.
pub fn pre_schwarzian<C: Coefficient>(
    f: &PowerJet<C>,
    n: usize,
) -> Result<LaurentJet<C>, SchwarzianError> {
    check_branch_order(f, n)?;
    let f1 = f.derivative()?;
    let f2 = f1.derivative()?;
    let num = LaurentJet::from_power(&f2);
    let den = LaurentJet::from_power(&f1);
    Ok(num.mul(&den.reciprocal()?))
}

/// Schwarzian derivative S(f) = u' - u^2/2 with u the pre-Schwarzian.
///
/// Vanishes identically on Moebius germs. At a branch point of order n
/// the result has a double pole with leading coefficient (1 - (n+1)^2)/2
/// independent of the germ. An input of order K yields a jet valid
/// through order K - n - 3.
pub fn schwarzian<C: Coefficient>(
    f: &PowerJet<C>,
    n: usize,
) -> Result<LaurentJet<C>, SchwarzianError> {
    let u = pre_schwarzian(f, n)?;
    let half = C::from_ratio(1, 2);
    Ok(u.derivative().sub(&u.mul(&u).scale(&half)))
}

/// Schwarzian of z2 read through the coordinate z1, that is S(z2 o z1^{-1})
/// expanded at the common center.
///
/// z1 must be an invertible germ (valuation exactly 1 after centering);
/// the branch order of z2 is inferred from its own valuation. The result
/// vanishes exactly when z2 and z1 differ by postcomposition with a
/// Moebius map.
pub fn relative_schwarzian<C: Coefficient>(
    z2: &PowerJet<C>,
    z1: &PowerJet<C>,
) -> Result<LaurentJet<C>, SchwarzianError> {
    let c0 = z1.coeff(0)?;
    let w = z1.sub(&PowerJet::constant(c0, z1.order()));
    if w.valuation() != Some(1) {
        return Err(SchwarzianError::CoordinateNotInvertible);
    }
    let inv = w.compositional_inverse()?;
    let composite = z2.compose(&inv)?;
    let centered = composite.sub(&PowerJet::constant(composite.coeff(0)?, composite.order()));
    let n = centered.valuation().map_or(0, |v| v - 1);
    schwarzian(&composite, n)
}
