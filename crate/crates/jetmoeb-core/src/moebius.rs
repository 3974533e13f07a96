//! The Moebius group PSL(2,C), its action on points and map-germ jets,
//! osculating Moebius transformations of 2-jets, and quadratic (sl2) vector
//! fields on CP^1.
//!
//! Matrices are never normalized to determinant 1 (that would need square
//! roots outside the exact field); equality is projective, tested through
//! the 2x2 minors of the stacked coefficient rows. Map-germs with value
//! infinity store the jet of the reciprocal map together with a chart flag,
//! so every germ stays a plain `PowerJet`.

use crate::series::{Coefficient, PowerJet, SeriesError};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Failure modes of Moebius-group operations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MoebiusError {
    /// Matrix with vanishing determinant where a group element is required.
    #[error("degenerate matrix: ad - bc = 0")]
    InvalidMoebius,
    /// Osculation data with f'(t0) = 0; branch points have no osculating
    /// Moebius transformation.
    #[error("2-jet with vanishing derivative cannot be osculated")]
    BranchedJetNotOsculable,
    /// Pushforward along a germ that is not biholomorphic at the center.
    #[error("germ is not a biholomorphism at the center (phi'(0) = 0)")]
    NotABiholomorphismGerm,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl MoebiusError {
    /// Stable machine-readable name of the error case.
    pub fn error_name(&self) -> &'static str {
        match self {
            MoebiusError::InvalidMoebius => "InvalidMoebius",
            MoebiusError::BranchedJetNotOsculable => "BranchedJetNotOsculable",
            MoebiusError::NotABiholomorphismGerm => "NotABiholomorphismGerm",
            MoebiusError::Series(e) => e.error_name(),
        }
    }
}

/// Element of PSL(2,C) as an unnormalized matrix (a, b; c, d) acting by
/// z ↦ (az + b)/(cz + d). Deserialization accepts raw entries; operations
/// that need a group element check the determinant themselves.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct Moebius<C: Coefficient> {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl<C: Coefficient> Moebius<C> {
    /// Builds a validated group element; the determinant must not vanish.
    pub fn new(a: C, b: C, c: C, d: C) -> Result<Self, MoebiusError> {
        let g = Moebius { a, b, c, d };
        if g.det().is_zero() {
            return Err(MoebiusError::InvalidMoebius);
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Moebius {
            a: C::one(),
            b: C::zero(),
            c: C::zero(),
            d: C::one(),
        }
    }

    pub fn det(&self) -> C {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Matrix product; (g.compose(h))(z) = g(h(z)).
    pub fn compose(&self, rhs: &Self) -> Self {
        Moebius {
            a: self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            b: self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            c: self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            d: self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
        }
    }

    /// Projective inverse via the adjugate (no determinant division).
    pub fn inverse(&self) -> Self {
        Moebius {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Moebius<D> {
        Moebius {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }

    fn entries(&self) -> [&C; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// Projective equality: the two coefficient rows span a rank-1 matrix,
/// i.e. every 2x2 minor vanishes.
impl<C: Coefficient> PartialEq for Moebius<C> {
    fn eq(&self, other: &Self) -> bool {
        let u = self.entries();
        let v = other.entries();
        (0..4).all(|i| {
            (i + 1..4).all(|j| (u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone()).is_zero())
        })
    }
}

/// Point of CP^1: a finite coordinate or the point at infinity.
/// Serializes finite points like the scalar itself and infinity as the
/// string "inf".
#[derive(Clone, Debug, PartialEq)]
pub enum PointCP1<C: Coefficient> {
    Finite(C),
    Infinity,
}

impl<C: Coefficient> PointCP1<C> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, PointCP1::Infinity)
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PointCP1<D> {
        match self {
            PointCP1::Finite(z) => PointCP1::Finite(f(z)),
            PointCP1::Infinity => PointCP1::Infinity,
        }
    }
}

impl<C: Coefficient> Serialize for PointCP1<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PointCP1::Finite(z) => z.serialize(serializer),
            PointCP1::Infinity => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Deserialize)]
#[serde(
    untagged,
    bound(deserialize = "C: serde::de::DeserializeOwned")
)]
enum PointRepr<C> {
    Finite(C),
    Tag(String),
}

impl<'de, C: Coefficient> Deserialize<'de> for PointCP1<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match PointRepr::<C>::deserialize(deserializer)? {
            PointRepr::Finite(z) => Ok(PointCP1::Finite(z)),
            PointRepr::Tag(s) if s == "inf" => Ok(PointCP1::Infinity),
            PointRepr::Tag(s) => Err(serde::de::Error::custom(format!(
                "expected a complex value or \"inf\", got \"{s}\""
            ))),
        }
    }
}

/// Quadratic vector field (p0 + p1·t + p2·t^2)∂t, the Lie algebra of
/// PSL(2,C) realized as global fields on CP^1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct Sl2Field<C: Coefficient> {
    pub p0: C,
    pub p1: C,
    pub p2: C,
}

impl<C: Coefficient> Sl2Field<C> {
    pub fn new(p0: C, p1: C, p2: C) -> Self {
        Sl2Field { p0, p1, p2 }
    }

    pub fn zero() -> Self {
        Sl2Field::new(C::zero(), C::zero(), C::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero() && self.p2.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Sl2Field::new(
            self.p0.clone() + rhs.p0.clone(),
            self.p1.clone() + rhs.p1.clone(),
            self.p2.clone() + rhs.p2.clone(),
        )
    }

    pub fn approx_eq(&self, rhs: &Self) -> bool {
        self.p0.approx_eq(&rhs.p0) && self.p1.approx_eq(&rhs.p1) && self.p2.approx_eq(&rhs.p2)
    }
}

/// 2-jet (f(0), f'(0), f''(0)) of a vector field coefficient at a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct VectorJet2<C: Coefficient> {
    pub a0: C,
    pub a1: C,
    pub a2: C,
}

impl<C: Coefficient> VectorJet2<C> {
    pub fn new(a0: C, a1: C, a2: C) -> Self {
        VectorJet2 { a0, a1, a2 }
    }
}

/// Fractional-linear action of g on a point of CP^1. The matrix is assumed
/// non-degenerate (a degenerate one collapses CP^1 to a point and this
/// function reports that point).
pub fn apply_point<C: Coefficient>(g: &Moebius<C>, p: &PointCP1<C>) -> PointCP1<C> {
    match p {
        PointCP1::Finite(z) => {
            let den = g.c.clone() * z.clone() + g.d.clone();
            match den.inverse() {
                None => PointCP1::Infinity,
                Some(inv) => PointCP1::Finite((g.a.clone() * z.clone() + g.b.clone()) * inv),
            }
        }
        PointCP1::Infinity => match g.c.inverse() {
            None => PointCP1::Infinity,
            Some(inv) => PointCP1::Finite(g.a.clone() * inv),
        },
    }
}

/// Postcomposition of a map-germ by g. The germ is the pair (f, value): for
/// a finite value, f is the jet of the map itself (constant term = the
/// value's coordinate); for value ∞, f is the jet of the reciprocal map
/// (constant term 0). The result follows the same two-chart convention and
/// keeps the truncation order of f.
pub fn act_on_powerjet<C: Coefficient>(
    g: &Moebius<C>,
    f: &PowerJet<C>,
    value: &PointCP1<C>,
) -> Result<(PowerJet<C>, PointCP1<C>), MoebiusError> {
    if g.det().is_zero() {
        return Err(MoebiusError::InvalidMoebius);
    }
    let order = f.order();
    // In the finite chart the composite is (a·f + b)/(c·f + d); in the
    // reciprocal chart (map = 1/f) it is (a + b·f)/(c + d·f). Whichever of
    // numerator and denominator vanishes at the center decides the output
    // chart; both cannot vanish since g is invertible.
    let (num, den) = match value {
        PointCP1::Finite(_) => (
            f.scale(&g.a).add(&PowerJet::constant(g.b.clone(), order)),
            f.scale(&g.c).add(&PowerJet::constant(g.d.clone(), order)),
        ),
        PointCP1::Infinity => (
            f.scale(&g.b).add(&PowerJet::constant(g.a.clone(), order)),
            f.scale(&g.d).add(&PowerJet::constant(g.c.clone(), order)),
        ),
    };
    let den0 = den.coeff(0)?;
    if den0.is_zero() {
        let jet = den.mul(&num.reciprocal()?);
        Ok((jet, PointCP1::Infinity))
    } else {
        let jet = num.mul(&den.reciprocal()?);
        let v = jet.coeff(0)?;
        Ok((jet, PointCP1::Finite(v)))
    }
}

/// The unique Moebius transformation sharing the 2-jet (f0, f1, f2) =
/// (f(t0), f'(t0), f''(t0)) at t0; requires f1 ≠ 0. The matrix is the
/// classical closed form with determinant 4·f1^3.
pub fn osculating_moebius<C: Coefficient>(
    f0: &C,
    f1: &C,
    f2: &C,
    t0: &C,
) -> Result<Moebius<C>, MoebiusError> {
    if f1.is_zero() {
        return Err(MoebiusError::BranchedJetNotOsculable);
    }
    let two = C::from_int(2);
    let a = f0.clone() * f2.clone() - two.clone() * f1.clone() * f1.clone();
    let b = -(two.clone() * f0.clone() * f1.clone()) - t0.clone() * a.clone();
    let c = f2.clone();
    let d = -(two * f1.clone()) - t0.clone() * f2.clone();
    Ok(Moebius { a, b, c, d })
}

/// Osculating Moebius transformation of a centered jet at base point t0
/// (so f(t0), f'(t0), f''(t0) are read off the first three coefficients).
pub fn osculating_moebius_at<C: Coefficient>(
    f: &PowerJet<C>,
    t0: &C,
) -> Result<Moebius<C>, MoebiusError> {
    let f0 = f.coeff(0)?;
    let f1 = f.coeff(1)?;
    let f2 = C::from_int(2) * f.coeff(2)?;
    osculating_moebius(&f0, &f1, &f2, t0)
}

/// Derivative of the osculating family at t0, left-trivialized to an sl2
/// field: X = d/dt|_{t0} (g_{t0}^{-1} ∘ g_t). Evaluated literally from the
/// matrix entries a, b, c, d of the osculating transformation and their
/// t-derivatives,
///
///   X = [ (a′c − ac′)·t² + (a′d − bc′ + b′c − ad′)·t + (b′d − d′b) ] / (ad − bc) ∂t,
///
/// all values taken at t0. The jet must be centered at t0 with order ≥ 3
/// and f'(t0) ≠ 0.
pub fn osculating_derivative<C: Coefficient>(
    f: &PowerJet<C>,
    t0: &C,
) -> Result<Sl2Field<C>, MoebiusError> {
    if f.order() < 3 {
        return Err(MoebiusError::Series(SeriesError::InsufficientOrder {
            requested: 3,
            order: f.order() as i64,
        }));
    }
    if f.coeff(1)?.is_zero() {
        return Err(MoebiusError::BranchedJetNotOsculable);
    }
    let two = C::from_int(2);
    let fp = f.derivative()?;
    let fpp = fp.derivative()?;
    // The varying parameter enters the entries as the jet t0 + u.
    let t_jet = PowerJet::new(vec![t0.clone(), C::one()]);
    let a_jet = f.mul(&fpp).sub(&fp.mul(&fp).scale(&two));
    let b_jet = f.mul(&fp).scale(&-two.clone()).sub(&t_jet.mul(&a_jet));
    let c_jet = fpp.clone();
    let d_jet = fp.scale(&-two).sub(&t_jet.mul(&fpp));
    let (av, ad) = (a_jet.coeff(0)?, a_jet.coeff(1)?);
    let (bv, bd) = (b_jet.coeff(0)?, b_jet.coeff(1)?);
    let (cv, cd) = (c_jet.coeff(0)?, c_jet.coeff(1)?);
    let (dv, dd) = (d_jet.coeff(0)?, d_jet.coeff(1)?);
    let det = av.clone() * dv.clone() - bv.clone() * cv.clone();
    let inv_det = det.inverse().ok_or(MoebiusError::BranchedJetNotOsculable)?;
    let p2 = (ad.clone() * cv.clone() - av.clone() * cd.clone()) * inv_det.clone();
    let p1 = (ad * dv.clone() - bv.clone() * cd + bd.clone() * cv - av * dd.clone())
        * inv_det.clone();
    let p0 = (bd * dv - dd * bv) * inv_det;
    Ok(Sl2Field::new(p0, p1, p2))
}

/// Pushforward of a 2-jet of vector fields along the germ φ (order ≥ 3,
/// φ'(0) ≠ 0):
///
///   δφ(a0, a1, a2) = (φ′a0, φ″a0 + φ′a1, φ‴a0 + 2φ″a1 + φ′a2),
///
/// derivatives of φ taken at the center.
pub fn pushforward_vectorjet<C: Coefficient>(
    phi: &PowerJet<C>,
    v: &VectorJet2<C>,
) -> Result<VectorJet2<C>, MoebiusError> {
    let p1 = phi.coeff(1)?;
    let p2 = C::from_int(2) * phi.coeff(2)?;
    let p3 = C::from_int(6) * phi.coeff(3)?;
    if p1.is_zero() {
        return Err(MoebiusError::NotABiholomorphismGerm);
    }
    Ok(VectorJet2::new(
        p1.clone() * v.a0.clone(),
        p2.clone() * v.a0.clone() + p1.clone() * v.a1.clone(),
        p3 * v.a0.clone() + C::from_int(2) * p2 * v.a1.clone() + p1 * v.a2.clone(),
    ))
}

/// Lie bracket [p∂t, q∂t] = (p·q′ − q·p′)∂t of quadratic fields; the cubic
/// terms cancel, so the result is again quadratic:
/// r0 = p0q1 − q0p1, r1 = 2(p0q2 − q0p2), r2 = p1q2 − p2q1.
pub fn sl2_bracket<C: Coefficient>(v: &Sl2Field<C>, w: &Sl2Field<C>) -> Sl2Field<C> {
    let r0 = v.p0.clone() * w.p1.clone() - w.p0.clone() * v.p1.clone();
    let r1 = C::from_int(2) * (v.p0.clone() * w.p2.clone() - w.p0.clone() * v.p2.clone());
    let r2 = v.p1.clone() * w.p2.clone() - v.p2.clone() * w.p1.clone();
    Sl2Field::new(r0, r1, r2)
}
