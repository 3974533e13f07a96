//! Differences of Riccati connections attached to two disjoint sections,
//! the induced difference of affine connections, and the sign identity
//! between the two.
//!
//! Everything is computed in a single affine chart: the first section sits
//! at infinity, the base section is the diagonal s(w) = w, and the second
//! section is a series w -> lambda(w) with lambda(0) != 0 so the two stay
//! disjoint near the center. The connection difference is a z-quadratic
//! vector field with w-series coefficients; pushing the computation down
//! to the base gives a one-form in w, and the identity asserts it equals
//! minus the affine-connection difference.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{Coefficient, PowerJet, SeriesError};

/// Failure modes of the connections computations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum ConnectionsError {
    /// The section lambda meets the diagonal at the center (lambda(0) = 0),
    /// so the pair is outside the domain of the construction.
    #[error("the sections intersect at the center")]
    SectionsIntersect,
    /// The field computed inside nabla_difference failed the proportionality
    /// check against (z - lambda)^2. This cannot happen for admissible
    /// input; it signals an implementation bug rather than a domain error.
    #[error("internal field is not proportional to the squared section")]
    NonProportionalResult,
    /// The section difference and the negated affine-connection difference
    /// disagree. This cannot happen for admissible input.
    #[error("section and connection differences violate the sign identity")]
    CorrespondenceViolated,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl ConnectionsError {
    /// Stable machine-readable name of the variant.
    pub fn error_name(&self) -> &'static str {
        match self {
            ConnectionsError::SectionsIntersect => "SectionsIntersect",
            ConnectionsError::NonProportionalResult => "NonProportionalResult",
            ConnectionsError::CorrespondenceViolated => "CorrespondenceViolated",
            ConnectionsError::Series(e) => e.error_name(),
        }
    }
}

/// Vector field (q0(w) + q1(w) z + q2(w) z^2) d/dz with w-jet coefficients,
/// stored at a common w-order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct VFieldWSeries<C: Coefficient> {
    q0: PowerJet<C>,
    q1: PowerJet<C>,
    q2: PowerJet<C>,
}

impl<C: Coefficient> VFieldWSeries<C> {
    /// Builds a field from its three coefficient jets, truncating all of
    /// them to the smallest of the three orders.
    pub fn new(q0: PowerJet<C>, q1: PowerJet<C>, q2: PowerJet<C>) -> Self {
        let k = q0.order().min(q1.order()).min(q2.order());
        VFieldWSeries {
            q0: q0.truncated(k),
            q1: q1.truncated(k),
            q2: q2.truncated(k),
        }
    }

    pub fn zero(order: usize) -> Self {
        let z = PowerJet::zero(order);
        VFieldWSeries {
            q0: z.clone(),
            q1: z.clone(),
            q2: z,
        }
    }

    pub fn q0(&self) -> &PowerJet<C> {
        &self.q0
    }

    pub fn q1(&self) -> &PowerJet<C> {
        &self.q1
    }

    pub fn q2(&self) -> &PowerJet<C> {
        &self.q2
    }

    /// Common w-order of the coefficient jets.
    pub fn order(&self) -> usize {
        self.q0.order()
    }

    pub fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.q1.is_zero() && self.q2.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        VFieldWSeries::new(
            self.q0.add(&rhs.q0),
            self.q1.add(&rhs.q1),
            self.q2.add(&rhs.q2),
        )
    }

    /// Componentwise w-derivative; drops one order.
    pub fn derivative_w(&self) -> Result<Self, SeriesError> {
        Ok(VFieldWSeries::new(
            self.q0.derivative()?,
            self.q1.derivative()?,
            self.q2.derivative()?,
        ))
    }

    /// Componentwise backend equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.q0.approx_eq(&other.q0)
            && self.q1.approx_eq(&other.q1)
            && self.q2.approx_eq(&other.q2)
    }
}

/// One-form coeff(w) dw (or field coeff(w) d/dw, for connection
/// differences pushed down to the base) with a w-jet coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct OneFormWSeries<C: Coefficient> {
    coeff: PowerJet<C>,
}

impl<C: Coefficient> OneFormWSeries<C> {
    pub fn new(coeff: PowerJet<C>) -> Self {
        OneFormWSeries { coeff }
    }

    pub fn coeff(&self) -> &PowerJet<C> {
        &self.coeff
    }

    pub fn order(&self) -> usize {
        self.coeff.order()
    }

    pub fn neg(&self) -> Self {
        OneFormWSeries {
            coeff: self.coeff.neg(),
        }
    }

    /// Componentwise backend equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.coeff.approx_eq(&other.coeff)
    }
}

/// Lie bracket [p dz, q dz] = (p q' - q p') d/dz of two z-quadratic fields
/// (primes are z-derivatives). The cubic term of the product rule cancels
/// identically, so the result is again z-quadratic:
///
/// ```text
/// r0 = p0 q1 - q0 p1
/// r1 = 2 (p0 q2 - q0 p2)
/// r2 = p1 q2 - q1 p2
/// ```
pub fn vf_bracket<C: Coefficient>(
    v: &VFieldWSeries<C>,
    u: &VFieldWSeries<C>,
) -> VFieldWSeries<C> {
    let two = C::from_int(2);
    let r0 = v.q0.mul(&u.q1).sub(&u.q0.mul(&v.q1));
    let r1 = v.q0.mul(&u.q2).sub(&u.q0.mul(&v.q2)).scale(&two);
    let r2 = v.q1.mul(&u.q2).sub(&u.q1.mul(&v.q2));
    VFieldWSeries::new(r0, r1, r2)
}

/// The recentered section lambda(w) - w, rejecting sections that meet the
/// diagonal at the center.
fn recentered<C: Coefficient>(lambda: &PowerJet<C>) -> Result<PowerJet<C>, ConnectionsError> {
    if lambda.order() < 1 {
        return Err(SeriesError::InsufficientOrder {
            requested: 1,
            order: lambda.order() as i64,
        }
        .into());
    }
    let u = lambda.sub(&PowerJet::identity(lambda.order()));
    if u.coeff(0)?.is_zero() {
        return Err(ConnectionsError::SectionsIntersect);
    }
    Ok(u)
}

/// The difference of the Riccati connections attached to the section
/// lambda and the diagonal, per unit dw:
///
/// ```text
/// lambda'(w) / (lambda(w) - w)^2 * (z - w)^2 d/dz
/// ```
///
/// The result vanishes exactly when lambda is constant.
pub fn connection_difference<C: Coefficient>(
    lambda: &PowerJet<C>,
) -> Result<VFieldWSeries<C>, ConnectionsError> {
    let u = recentered(lambda)?;
    let rho = lambda.derivative()?.mul(&u.mul(&u).reciprocal()?);
    let k = rho.order();
    let w = PowerJet::identity(k + 1);
    let w2 = PowerJet::monomial(C::one(), 2, k + 2);
    Ok(VFieldWSeries::new(
        w2.mul(&rho),
        w.mul(&rho).scale(&C::from_int(-2)),
        rho,
    ))
}

/// The difference of the affine connections induced on the base, as a
/// field a(w) d/dw: the w-derivative of the identified section
/// (z - lambda)^2 / (w - lambda)^2 d/dz plus its bracket with the
/// connection difference collapses onto a multiple of (z - lambda)^2 d/dz,
/// which projects to -2 / (w - lambda(w)) d/dw.
pub fn nabla_difference<C: Coefficient>(
    lambda: &PowerJet<C>,
) -> Result<OneFormWSeries<C>, ConnectionsError> {
    let omega = connection_difference(lambda)?;
    let u = recentered(lambda)?;
    let u2 = u.mul(&u);
    let u2_inv = u2.reciprocal()?;
    let section = VFieldWSeries::new(
        lambda.mul(lambda).mul(&u2_inv),
        lambda.mul(&u2_inv).scale(&C::from_int(-2)),
        u2_inv,
    );
    let field = section.derivative_w()?.add(&vf_bracket(&omega, &section));
    let k = field.order();
    let scaled_q1 = field.q2.mul(lambda).scale(&C::from_int(-2)).truncated(k);
    let scaled_q0 = field.q2.mul(lambda).mul(lambda).truncated(k);
    if !field.q1.approx_eq(&scaled_q1) || !field.q0.approx_eq(&scaled_q0) {
        return Err(ConnectionsError::NonProportionalResult);
    }
    Ok(OneFormWSeries::new(field.q2.mul(&u2).truncated(k)))
}

/// The difference of the horizontal sections of the two connections, as a
/// one-form -2 / (lambda(w) - w) dw.
pub fn section_difference<C: Coefficient>(
    lambda: &PowerJet<C>,
) -> Result<OneFormWSeries<C>, ConnectionsError> {
    let u = recentered(lambda)?;
    Ok(OneFormWSeries::new(
        u.reciprocal()?.scale(&C::from_int(-2)),
    ))
}

/// Checks the sign identity: the section difference equals minus the
/// affine-connection difference, coefficientwise through the common valid
/// order. Returns that order. A violation would falsify the identity or
/// the implementation; it does not occur for admissible input.
pub fn verify_correspondence<C: Coefficient>(
    lambda: &PowerJet<C>,
) -> Result<usize, ConnectionsError> {
    let sigma = section_difference(lambda)?;
    let nabla = nabla_difference(lambda)?;
    let k = sigma.order().min(nabla.order());
    for i in 0..=k {
        if !sigma.coeff().coeff(i)?.approx_eq(&(-nabla.coeff().coeff(i)?)) {
            return Err(ConnectionsError::CorrespondenceViolated);
        }
    }
    Ok(k)
}
