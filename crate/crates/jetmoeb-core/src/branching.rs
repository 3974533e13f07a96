//! Branched map-germs, their branching classes, and the affine structure
//! on classes.
//!
//! A germ with branch order n at the center is recorded by its value and
//! the jet coefficients from index n+1 upward (the intermediate ones
//! vanish). The Moebius group acts by postcomposition; the quotient is
//! coordinatized by the ratios c_k = a_{n+1+k}/a_{n+1} for k = 1..n, which
//! are invariant under the full action. Differences of classes are encoded
//! by jets of one-forms (pre-Schwarzian mode) or of quadratic differentials
//! with at most a simple pole (Schwarzian mode), giving classes the
//! structure of an affine space over either vector space.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::fuchs::{self, FuchsError};
use crate::moebius::{act_on_powerjet, Moebius, MoebiusError, PointCP1};
use crate::schwarzian::SchwarzianError;
use crate::series::{Coefficient, PowerJet, SeriesError};

/// Failure modes of branching-class computations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum BranchingError {
    /// The stabilizer action is defined only on germs with value 0.
    #[error("germ value is not 0, outside the domain of the stabilizer action")]
    NotInRZero,
    /// Branch orders of the operands disagree.
    #[error("branch orders of the operands do not match")]
    OrderMismatch,
    /// Divisor point labels or branch orders disagree.
    #[error("divisor labels or branch orders do not match")]
    DivisorMismatch,
    /// A coefficient list lacks the declared branch structure (wrong
    /// valuation or vanishing leading coefficient).
    #[error("coefficient data does not have the declared branch structure")]
    BranchOrderMismatch,
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Schwarzian(#[from] SchwarzianError),
    #[error(transparent)]
    Fuchs(#[from] FuchsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl BranchingError {
    /// Stable machine-readable name of the variant.
    pub fn error_name(&self) -> &'static str {
        match self {
            BranchingError::NotInRZero => "NotInRZero",
            BranchingError::OrderMismatch => "OrderMismatch",
            BranchingError::DivisorMismatch => "DivisorMismatch",
            BranchingError::BranchOrderMismatch => "BranchOrderMismatch",
            BranchingError::Moebius(e) => e.error_name(),
            BranchingError::Schwarzian(e) => e.error_name(),
            BranchingError::Fuchs(e) => e.error_name(),
            BranchingError::Series(e) => e.error_name(),
        }
    }
}

/// Jet of a germ with branch order n >= 1: value a_0 plus the coefficients
/// a_{n+1}..a_top with a_{n+1} != 0 and top >= 2(n+1).
///
/// When the value is infinity the stored coefficients are those of the
/// reciprocal germ (which has the same branch order and value 0 in the
/// inverted chart). The class depends only on the window through index
/// 2n+2, but longer jets are carried so that reconstructed solutions keep
/// their full valid order.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchedJet<C: Coefficient> {
    n: usize,
    value: PointCP1<C>,
    a: Vec<C>,
}

impl<C: Coefficient> BranchedJet<C> {
    /// Builds a jet from the branch order, value, and coefficient list
    /// (a[0] is the coefficient of index n+1).
    pub fn new(n: usize, value: PointCP1<C>, a: Vec<C>) -> Result<Self, BranchingError> {
        if n == 0 {
            return Err(BranchingError::BranchOrderMismatch);
        }
        if a.len() < n + 2 {
            return Err(SeriesError::InsufficientOrder {
                requested: (2 * n + 2) as i64,
                order: (n + a.len()) as i64,
            }
            .into());
        }
        if a[0].is_zero() {
            return Err(BranchingError::BranchOrderMismatch);
        }
        Ok(BranchedJet { n, value, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self) -> &PointCP1<C> {
        &self.value
    }

    /// Coefficients from index n+1 upward.
    pub fn coeffs(&self) -> &[C] {
        &self.a
    }

    /// Highest stored coefficient index.
    pub fn top_index(&self) -> usize {
        self.n + self.a.len()
    }

    /// The full power jet in the chart of the stored coefficients: the
    /// value (0 for the reciprocal chart) followed by n zeros and the
    /// stored list.
    pub fn to_power_jet(&self) -> PowerJet<C> {
        let c0 = match &self.value {
            PointCP1::Finite(v) => v.clone(),
            PointCP1::Infinity => C::zero(),
        };
        let mut coeffs = Vec::with_capacity(self.top_index() + 1);
        coeffs.push(c0);
        coeffs.extend(std::iter::repeat_with(C::zero).take(self.n));
        coeffs.extend(self.a.iter().cloned());
        PowerJet::new(coeffs)
    }

    /// Reads a branched jet off a full power jet, validating the branch
    /// structure. With `infinite` set, the jet is interpreted in the
    /// reciprocal chart and must vanish at the center.
    pub fn from_power_jet(
        n: usize,
        jet: &PowerJet<C>,
        infinite: bool,
    ) -> Result<Self, BranchingError> {
        if n == 0 {
            return Err(BranchingError::BranchOrderMismatch);
        }
        if jet.order() < 2 * n + 2 {
            return Err(SeriesError::InsufficientOrder {
                requested: (2 * n + 2) as i64,
                order: jet.order() as i64,
            }
            .into());
        }
        for k in 1..=n {
            if !jet.coeff(k)?.is_zero() {
                return Err(BranchingError::BranchOrderMismatch);
            }
        }
        if jet.coeff(n + 1)?.is_zero() {
            return Err(BranchingError::BranchOrderMismatch);
        }
        let c0 = jet.coeff(0)?;
        let value = if infinite {
            if !c0.is_zero() {
                return Err(BranchingError::BranchOrderMismatch);
            }
            PointCP1::Infinity
        } else {
            PointCP1::Finite(c0)
        };
        Ok(BranchedJet {
            n,
            value,
            a: jet.coeffs()[n + 1..].to_vec(),
        })
    }

    /// Componentwise backend equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let value_eq = match (&self.value, &other.value) {
            (PointCP1::Finite(a), PointCP1::Finite(b)) => a.approx_eq(b),
            (PointCP1::Infinity, PointCP1::Infinity) => true,
            _ => false,
        };
        self.n == other.n
            && value_eq
            && self.a.len() == other.a.len()
            && self.a.iter().zip(&other.a).all(|(a, b)| a.approx_eq(b))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
struct BranchedJetRepr<C: Coefficient> {
    n: usize,
    value: PointCP1<C>,
    a: Vec<C>,
}

impl<C: Coefficient> Serialize for BranchedJet<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BranchedJetRepr {
            n: self.n,
            value: self.value.clone(),
            a: self.a.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for BranchedJet<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = BranchedJetRepr::<C>::deserialize(deserializer)?;
        BranchedJet::new(repr.n, repr.value, repr.a)
            .map_err(|e| D::Error::custom(format!("invalid branched jet: {e}")))
    }
}

/// Point of the class space: the invariants c = (c_1..c_n) of a branch
/// order n orbit. Serializes as `{"n": n, "c": [...]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchingClass<C: Coefficient> {
    n: usize,
    c: Vec<C>,
}

impl<C: Coefficient> BranchingClass<C> {
    pub fn new(n: usize, c: Vec<C>) -> Result<Self, BranchingError> {
        if n == 0 || c.len() != n {
            return Err(BranchingError::OrderMismatch);
        }
        Ok(BranchingClass { n, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[C] {
        &self.c
    }

    /// Componentwise backend equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.c.iter().zip(&other.c).all(|(a, b)| a.approx_eq(b))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
struct ClassRepr<C: Coefficient> {
    n: usize,
    c: Vec<C>,
}

impl<C: Coefficient> Serialize for BranchingClass<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ClassRepr {
            n: self.n,
            c: self.c.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for BranchingClass<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ClassRepr::<C>::deserialize(deserializer)?;
        BranchingClass::new(repr.n, repr.c)
            .map_err(|_| D::Error::custom("class must list exactly n coefficients, n >= 1"))
    }
}

/// Jet of a holomorphic one-form at a branch point: coefficients
/// eta_0..eta_{n-1} of eta(z) dz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct OneFormDelta<C: Coefficient> {
    pub n: usize,
    pub eta: Vec<C>,
}

/// Jet of a quadratic differential with at most a simple pole at a branch
/// point: coefficients beta_{-1}..beta_{n-2} of beta(z) dz^2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct QuadDiffDelta<C: Coefficient> {
    pub n: usize,
    pub beta: Vec<C>,
}

/// Difference of two branching classes in one of the two encodings.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassDelta<C: Coefficient> {
    OneForm(OneFormDelta<C>),
    QuadDiff(QuadDiffDelta<C>),
}

impl<C: Coefficient> ClassDelta<C> {
    pub fn n(&self) -> usize {
        match self {
            ClassDelta::OneForm(d) => d.n,
            ClassDelta::QuadDiff(d) => d.n,
        }
    }

    pub fn components(&self) -> &[C] {
        match self {
            ClassDelta::OneForm(d) => &d.eta,
            ClassDelta::QuadDiff(d) => &d.beta,
        }
    }

    /// Sum of two deltas of the same kind and order.
    pub fn add(&self, rhs: &Self) -> Result<Self, BranchingError> {
        match (self, rhs) {
            (ClassDelta::OneForm(a), ClassDelta::OneForm(b)) if a.n == b.n => {
                Ok(ClassDelta::OneForm(OneFormDelta {
                    n: a.n,
                    eta: a
                        .eta
                        .iter()
                        .zip(&b.eta)
                        .map(|(x, y)| x.clone() + y.clone())
                        .collect(),
                }))
            }
            (ClassDelta::QuadDiff(a), ClassDelta::QuadDiff(b)) if a.n == b.n => {
                Ok(ClassDelta::QuadDiff(QuadDiffDelta {
                    n: a.n,
                    beta: a
                        .beta
                        .iter()
                        .zip(&b.beta)
                        .map(|(x, y)| x.clone() + y.clone())
                        .collect(),
                }))
            }
            _ => Err(BranchingError::OrderMismatch),
        }
    }

    /// Componentwise backend equality (same kind required).
    pub fn approx_eq(&self, other: &Self) -> bool {
        let same_kind = matches!(
            (self, other),
            (ClassDelta::OneForm(_), ClassDelta::OneForm(_))
                | (ClassDelta::QuadDiff(_), ClassDelta::QuadDiff(_))
        );
        same_kind
            && self.n() == other.n()
            && self
                .components()
                .iter()
                .zip(other.components())
                .all(|(a, b)| a.approx_eq(b))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
struct DeltaRepr<C: Coefficient> {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<C>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<Vec<C>>,
}

impl<C: Coefficient> Serialize for ClassDelta<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            ClassDelta::OneForm(d) => DeltaRepr {
                n: d.n,
                eta: Some(d.eta.clone()),
                beta: None,
            },
            ClassDelta::QuadDiff(d) => DeltaRepr {
                n: d.n,
                eta: None,
                beta: Some(d.beta.clone()),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for ClassDelta<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DeltaRepr::<C>::deserialize(deserializer)?;
        let delta = match (repr.eta, repr.beta) {
            (Some(eta), None) => ClassDelta::OneForm(OneFormDelta { n: repr.n, eta }),
            (None, Some(beta)) => ClassDelta::QuadDiff(QuadDiffDelta { n: repr.n, beta }),
            _ => {
                return Err(D::Error::custom(
                    "delta must carry exactly one of \"eta\" or \"beta\"",
                ))
            }
        };
        if delta.n() == 0 || delta.components().len() != delta.n() {
            return Err(D::Error::custom(
                "delta must list exactly n components, n >= 1",
            ));
        }
        Ok(delta)
    }
}

/// Which encoding of class differences to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiffMode {
    #[serde(rename = "preschwarzian")]
    PreSchwarzian,
    #[serde(rename = "schwarzian")]
    Schwarzian,
}

/// Action of the stabilizer element h = (alpha, 0; gamma, delta) on a jet
/// with value 0, in the closed form on the window through index 2(n+1):
/// indices n+1..2n+1 scale by alpha/delta and the top index picks up the
/// extra term -(alpha gamma / delta^2) a_{n+1}^2. Longer inputs are
/// truncated to that window.
pub fn h_act<C: Coefficient>(
    alpha: &C,
    gamma: &C,
    delta: &C,
    j: &BranchedJet<C>,
) -> Result<BranchedJet<C>, BranchingError> {
    let (alpha_inv_ok, delta_inv) = (alpha.inverse(), delta.inverse());
    let delta_inv = match (alpha_inv_ok, delta_inv) {
        (Some(_), Some(d)) => d,
        _ => return Err(MoebiusError::InvalidMoebius.into()),
    };
    match j.value() {
        PointCP1::Finite(v) if v.is_zero() => {}
        _ => return Err(BranchingError::NotInRZero),
    }
    let n = j.n();
    let s = alpha.clone() * delta_inv.clone();
    let t = s.clone() * gamma.clone() * delta_inv;
    let mut a: Vec<C> = j.coeffs()[..n + 1]
        .iter()
        .map(|c| s.clone() * c.clone())
        .collect();
    let lead = j.coeffs()[0].clone();
    a.push(s * j.coeffs()[n + 1].clone() - t * lead.clone() * lead);
    BranchedJet::new(n, PointCP1::Finite(C::zero()), a)
}

/// The class invariants c_k = a_{n+1+k}/a_{n+1} of a jet. Unchanged under
/// the full Moebius action and under postcomposition by biholomorphism
/// germs; for infinite values the stored reciprocal-chart coefficients
/// give the same class the inversion chart would.
pub fn class_of<C: Coefficient>(j: &BranchedJet<C>) -> BranchingClass<C> {
    let inv = j.coeffs()[0]
        .inverse()
        .expect("leading coefficient is nonzero by construction");
    let c = (1..=j.n())
        .map(|k| j.coeffs()[k].clone() * inv.clone())
        .collect();
    BranchingClass { n: j.n(), c }
}

/// The canonical orbit representative of a class: value 0, a_{n+1} = 1,
/// intermediate coefficients c, and a_{2(n+1)} = 0.
pub fn normal_form<C: Coefficient>(c: &BranchingClass<C>) -> BranchedJet<C> {
    let mut a = Vec::with_capacity(c.n() + 2);
    a.push(C::one());
    a.extend(c.coords().iter().cloned());
    a.push(C::zero());
    BranchedJet {
        n: c.n(),
        value: PointCP1::Finite(C::zero()),
        a,
    }
}

/// The class of a germ given as a plain power jet of order at least 2n+1
/// (the top coefficient a_{2(n+1)} is not needed; the value is translated
/// away and does not enter).
pub fn class_from_affine_jet<C: Coefficient>(
    f: &PowerJet<C>,
    n: usize,
) -> Result<BranchingClass<C>, BranchingError> {
    if n == 0 {
        return Err(BranchingError::BranchOrderMismatch);
    }
    if f.order() < 2 * n + 1 {
        return Err(SeriesError::InsufficientOrder {
            requested: (2 * n + 1) as i64,
            order: f.order() as i64,
        }
        .into());
    }
    for k in 1..=n {
        if !f.coeff(k)?.is_zero() {
            return Err(BranchingError::BranchOrderMismatch);
        }
    }
    let lead = f.coeff(n + 1)?;
    let inv = lead.inverse().ok_or(BranchingError::BranchOrderMismatch)?;
    let c = (1..=n)
        .map(|k| Ok(f.coeff(n + 1 + k)? * inv.clone()))
        .collect::<Result<Vec<C>, SeriesError>>()?;
    Ok(BranchingClass { n, c })
}

/// Postcomposition with an unbranched germ at the jet's value. For finite
/// values `phi` is expanded at the value; for infinity it is expanded in
/// the reciprocal chart at both ends (so a nonzero constant term moves the
/// value back into the finite chart). The branching class is unchanged.
pub fn postcompose_germ<C: Coefficient>(
    j: &BranchedJet<C>,
    phi: &PowerJet<C>,
) -> Result<BranchedJet<C>, BranchingError> {
    let n = j.n();
    if phi.order() < 2 * n + 2 {
        return Err(SeriesError::InsufficientOrder {
            requested: (2 * n + 2) as i64,
            order: phi.order() as i64,
        }
        .into());
    }
    if phi.coeff(1)?.is_zero() {
        return Err(MoebiusError::NotABiholomorphismGerm.into());
    }
    let mut inner_coeffs = vec![C::zero(); n + 1];
    inner_coeffs.extend(j.coeffs().iter().cloned());
    let inner = PowerJet::new(inner_coeffs);
    let composed = phi.compose(&inner)?;
    match j.value() {
        PointCP1::Finite(_) => BranchedJet::from_power_jet(n, &composed, false),
        PointCP1::Infinity => {
            if composed.coeff(0)?.is_zero() {
                BranchedJet::from_power_jet(n, &composed, true)
            } else {
                BranchedJet::from_power_jet(n, &composed.reciprocal()?, false)
            }
        }
    }
}

/// The Moebius action on a branched jet, tracking the chart of the value.
pub fn act_on_branched<C: Coefficient>(
    g: &Moebius<C>,
    j: &BranchedJet<C>,
) -> Result<BranchedJet<C>, BranchingError> {
    let (jet, value) = act_on_powerjet(g, &j.to_power_jet(), j.value())?;
    let infinite = matches!(value, PointCP1::Infinity);
    BranchedJet::from_power_jet(j.n(), &jet, infinite)
}

/// The difference of two classes as a one-form jet (pre-Schwarzian mode)
/// or a quadratic-differential jet (Schwarzian mode). Depends only on the
/// classes: the listed components are invariant under the gauge freedom in
/// the choice of representatives.
pub fn diff_classes<C: Coefficient>(
    to: &BranchingClass<C>,
    from: &BranchingClass<C>,
    mode: DiffMode,
) -> Result<ClassDelta<C>, BranchingError> {
    if to.n() != from.n() {
        return Err(BranchingError::OrderMismatch);
    }
    let n = to.n();
    match mode {
        DiffMode::PreSchwarzian => {
            let dt = fuchs::d_map(to);
            let df = fuchs::d_map(from);
            let eta = dt
                .into_iter()
                .zip(df)
                .map(|(a, b)| a - b)
                .collect();
            Ok(ClassDelta::OneForm(OneFormDelta { n, eta }))
        }
        DiffMode::Schwarzian => {
            let st = fuchs::s_map(to);
            let sf = fuchs::s_map(from);
            let beta = st
                .into_iter()
                .zip(sf)
                .map(|(a, b)| a - b)
                .collect();
            Ok(ClassDelta::QuadDiff(QuadDiffDelta { n, beta }))
        }
    }
}

/// The unique class c' with diff_classes(c', c) = d, computed through the
/// algebraic maps of the Fuchs module.
pub fn translate_class<C: Coefficient>(
    c: &BranchingClass<C>,
    d: &ClassDelta<C>,
) -> Result<BranchingClass<C>, BranchingError> {
    if c.n() != d.n() {
        return Err(BranchingError::OrderMismatch);
    }
    let n = c.n();
    match d {
        ClassDelta::OneForm(of) => {
            let delta: Vec<C> = fuchs::d_map(c)
                .into_iter()
                .zip(&of.eta)
                .map(|(x, e)| x + e.clone())
                .collect();
            Ok(fuchs::d_map_inverse(n, &delta))
        }
        ClassDelta::QuadDiff(qd) => {
            let alpha: Vec<C> = fuchs::s_map(c)
                .into_iter()
                .zip(&qd.beta)
                .map(|(x, b)| x + b.clone())
                .collect();
            Ok(fuchs::s_map_inverse(n, &alpha)?)
        }
    }
}

/// Branching data over a finite labeled divisor: one class per point.
/// Serializes as `{"points": [{"label", "n", "class"}...]}` with the class
/// given by its bare coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisorClassData<C: Coefficient> {
    points: Vec<(String, BranchingClass<C>)>,
}

impl<C: Coefficient> DivisorClassData<C> {
    /// Builds from labeled classes; labels must be pairwise distinct.
    pub fn new(points: Vec<(String, BranchingClass<C>)>) -> Result<Self, BranchingError> {
        for (i, (label, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(l, _)| l == label) {
                return Err(BranchingError::DivisorMismatch);
            }
        }
        Ok(DivisorClassData { points })
    }

    pub fn points(&self) -> &[(String, BranchingClass<C>)] {
        &self.points
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
struct DivisorPointRepr<C: Coefficient> {
    label: String,
    n: usize,
    class: Vec<C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
struct DivisorRepr<C: Coefficient> {
    points: Vec<DivisorPointRepr<C>>,
}

impl<C: Coefficient> Serialize for DivisorClassData<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DivisorRepr {
            points: self
                .points
                .iter()
                .map(|(label, class)| DivisorPointRepr {
                    label: label.clone(),
                    n: class.n(),
                    class: class.coords().to_vec(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for DivisorClassData<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DivisorRepr::<C>::deserialize(deserializer)?;
        let points = repr
            .points
            .into_iter()
            .map(|p| {
                BranchingClass::new(p.n, p.class)
                    .map(|class| (p.label, class))
                    .map_err(|_| {
                        D::Error::custom("divisor class must list exactly n coefficients")
                    })
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        DivisorClassData::new(points)
            .map_err(|_| D::Error::custom("divisor labels must be pairwise distinct"))
    }
}

/// Difference of two divisor class data sets: one delta per point.
/// Serializes as `{"points": [{"label", "n", "eta"|"beta"}...]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisorDelta<C: Coefficient> {
    points: Vec<(String, ClassDelta<C>)>,
}

impl<C: Coefficient> DivisorDelta<C> {
    pub fn new(points: Vec<(String, ClassDelta<C>)>) -> Result<Self, BranchingError> {
        for (i, (label, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(l, _)| l == label) {
                return Err(BranchingError::DivisorMismatch);
            }
        }
        Ok(DivisorDelta { points })
    }

    pub fn points(&self) -> &[(String, ClassDelta<C>)] {
        &self.points
    }

    /// Total dimension: the sum of the orders n_i.
    pub fn dimension(&self) -> usize {
        self.points.iter().map(|(_, d)| d.n()).sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
struct DivisorDeltaPointRepr<C: Coefficient> {
    label: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<C>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<Vec<C>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
struct DivisorDeltaRepr<C: Coefficient> {
    points: Vec<DivisorDeltaPointRepr<C>>,
}

impl<C: Coefficient> Serialize for DivisorDelta<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DivisorDeltaRepr {
            points: self
                .points
                .iter()
                .map(|(label, delta)| match delta {
                    ClassDelta::OneForm(d) => DivisorDeltaPointRepr {
                        label: label.clone(),
                        n: d.n,
                        eta: Some(d.eta.clone()),
                        beta: None,
                    },
                    ClassDelta::QuadDiff(d) => DivisorDeltaPointRepr {
                        label: label.clone(),
                        n: d.n,
                        eta: None,
                        beta: Some(d.beta.clone()),
                    },
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for DivisorDelta<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DivisorDeltaRepr::<C>::deserialize(deserializer)?;
        let points = repr
            .points
            .into_iter()
            .map(|p| {
                let delta = match (p.eta, p.beta) {
                    (Some(eta), None) => ClassDelta::OneForm(OneFormDelta { n: p.n, eta }),
                    (None, Some(beta)) => {
                        ClassDelta::QuadDiff(QuadDiffDelta { n: p.n, beta })
                    }
                    _ => {
                        return Err(D::Error::custom(
                            "delta point must carry exactly one of \"eta\" or \"beta\"",
                        ))
                    }
                };
                if delta.components().len() != delta.n() || delta.n() == 0 {
                    return Err(D::Error::custom(
                        "delta point must list exactly n components",
                    ));
                }
                Ok((p.label, delta))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        DivisorDelta::new(points)
            .map_err(|_| D::Error::custom("divisor labels must be pairwise distinct"))
    }
}

/// Componentwise difference of two divisor class data sets; labels and
/// orders must agree pointwise and in sequence.
pub fn divisor_diff<C: Coefficient>(
    to: &DivisorClassData<C>,
    from: &DivisorClassData<C>,
    mode: DiffMode,
) -> Result<DivisorDelta<C>, BranchingError> {
    if to.points.len() != from.points.len() {
        return Err(BranchingError::DivisorMismatch);
    }
    let mut points = Vec::with_capacity(to.points.len());
    for ((lt, ct), (lf, cf)) in to.points.iter().zip(&from.points) {
        if lt != lf || ct.n() != cf.n() {
            return Err(BranchingError::DivisorMismatch);
        }
        points.push((lt.clone(), diff_classes(ct, cf, mode)?));
    }
    Ok(DivisorDelta { points })
}

/// Componentwise translation of divisor class data by a divisor delta.
pub fn divisor_translate<C: Coefficient>(
    data: &DivisorClassData<C>,
    delta: &DivisorDelta<C>,
) -> Result<DivisorClassData<C>, BranchingError> {
    if data.points.len() != delta.points.len() {
        return Err(BranchingError::DivisorMismatch);
    }
    let mut points = Vec::with_capacity(data.points.len());
    for ((lc, class), (ld, d)) in data.points.iter().zip(&delta.points) {
        if lc != ld || class.n() != d.n() {
            return Err(BranchingError::DivisorMismatch);
        }
        points.push((lc.clone(), translate_class(class, d)?));
    }
    Ok(DivisorClassData { points })
}
