//! Local solution theory for the branched Schwarzian equation S(f) = phi.
//!
//! Substituting u = n/z + v with v = sum delta_k z^k into S = u' - u^2/2
//! turns the equation into the recursion
//!
//! ```text
//! (m + 1 - n) delta_{m+1} - (1/2) sum_{i+j=m} delta_i delta_j = alpha_m
//! ```
//!
//! for m >= -1. The m = -1 equation forces delta_0, the m = n - 1 equation
//! fixes nothing and instead imposes one polynomial constraint on the
//! alpha's (the obstruction P_n), and delta_n is a free parameter. The
//! module solves the recursion on numbers, runs it symbolically to produce
//! P_n, rebuilds the branched germ from a solution, and packages the
//! resulting algebraic maps between branching classes and their
//! pre-Schwarzian or Schwarzian Laurent data.

mod poly;

pub use poly::ObstructionPoly;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::branching::{class_from_affine_jet, class_of, normal_form, BranchedJet, BranchingClass};
use crate::schwarzian::{pre_schwarzian, schwarzian};
use crate::series::{Coefficient, LaurentJet, PowerJet, SeriesError};

use poly::MultiPoly;

/// Largest n for which obstruction polynomials are computed; coefficient
/// growth makes larger n impractical at desk scale.
pub const DEGREE_BOUND: usize = 8;

/// Failure modes of the Fuchs-local solver.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FuchsError {
    /// The double-pole coefficient alpha_{-2} differs from the forced
    /// indicial value (1 - (n+1)^2)/2.
    #[error("double-pole coefficient differs from (1 - (n+1)^2)/2")]
    IndicialMismatch,
    /// The obstruction P_n evaluated nonzero, so no branched solution of
    /// order n exists.
    #[error("nonzero obstruction value {0}: no branched solution exists")]
    ObstructionViolated(String),
    /// Obstruction polynomials are only computed up to [`DEGREE_BOUND`].
    #[error("branch order exceeds the obstruction-polynomial bound {DEGREE_BOUND}")]
    DegreeBoundExceeded,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl FuchsError {
    /// Stable machine-readable name of the variant.
    pub fn error_name(&self) -> &'static str {
        match self {
            FuchsError::IndicialMismatch => "IndicialMismatch",
            FuchsError::ObstructionViolated(_) => "ObstructionViolated",
            FuchsError::DegreeBoundExceeded => "DegreeBoundExceeded",
            FuchsError::Series(e) => e.error_name(),
        }
    }
}

/// Laurent data of a candidate Schwarzian at a prospective branch point of
/// order n: coefficients alpha_{-2}, alpha_{-1}, ..., alpha_K.
///
/// Serializes as `{"n": n, "order": K, "alpha": [...]}` with the list
/// running from index -2 upward.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadDiffLaurent<C: Coefficient> {
    n: usize,
    alpha: Vec<C>,
}

impl<C: Coefficient> QuadDiffLaurent<C> {
    /// Builds from the coefficient list starting at index -2. Panics on
    /// n = 0 or an empty list; parse untrusted data through serde.
    pub fn new(n: usize, alpha: Vec<C>) -> Self {
        assert!(n >= 1, "QuadDiffLaurent: branch order must be at least 1");
        assert!(!alpha.is_empty(), "QuadDiffLaurent: empty coefficient list");
        QuadDiffLaurent { n, alpha }
    }

    /// The forced double-pole coefficient (1 - (n+1)^2)/2.
    pub fn indicial_target(n: usize) -> C {
        let np1 = (n + 1) as i64;
        C::from_ratio(1 - np1 * np1, 2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest valid coefficient index K.
    pub fn order(&self) -> i64 {
        self.alpha.len() as i64 - 3
    }

    /// Coefficient alpha_k for -2 <= k <= K.
    pub fn alpha(&self, k: i64) -> Result<C, SeriesError> {
        if k < -2 || k > self.order() {
            return Err(SeriesError::InsufficientOrder {
                requested: k,
                order: self.order(),
            });
        }
        Ok(self.alpha[(k + 2) as usize].clone())
    }

    /// Coefficients from index -2 upward.
    pub fn coeffs(&self) -> &[C] {
        &self.alpha
    }

    /// Reads the data off a Laurent jet; the jet may have a pole of order
    /// at most 2 (missing low coefficients are known zeros).
    pub fn from_laurent(n: usize, phi: &LaurentJet<C>) -> Result<Self, FuchsError> {
        if phi.pole() > 2 {
            return Err(FuchsError::IndicialMismatch);
        }
        let mut alpha = Vec::with_capacity((phi.order() + 3).max(1) as usize);
        for k in -2..=phi.order() {
            alpha.push(phi.coeff(k)?);
        }
        if alpha.is_empty() {
            alpha.push(C::zero());
        }
        Ok(QuadDiffLaurent::new(n, alpha))
    }

    /// The data as a Laurent jet (canonicalized).
    pub fn to_laurent(&self) -> LaurentJet<C> {
        LaurentJet::new(2, self.alpha.clone())
    }

    /// Componentwise backend equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.alpha.len() == other.alpha.len()
            && self
                .alpha
                .iter()
                .zip(&other.alpha)
                .all(|(a, b)| a.approx_eq(b))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: serde::de::DeserializeOwned"))]
struct QuadDiffRepr<C> {
    n: usize,
    order: i64,
    alpha: Vec<C>,
}

impl<C: Coefficient> Serialize for QuadDiffLaurent<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadDiffRepr {
            n: self.n,
            order: self.order(),
            alpha: self.alpha.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for QuadDiffLaurent<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = QuadDiffRepr::<C>::deserialize(deserializer)?;
        if repr.n == 0 {
            return Err(D::Error::custom("branch order n must be at least 1"));
        }
        if repr.alpha.is_empty() {
            return Err(D::Error::custom("alpha list must contain alpha_{-2}"));
        }
        if repr.alpha.len() as i64 != repr.order + 3 {
            return Err(D::Error::custom(format!(
                "alpha list length {} does not match order {}",
                repr.alpha.len(),
                repr.order
            )));
        }
        Ok(QuadDiffLaurent {
            n: repr.n,
            alpha: repr.alpha,
        })
    }
}

/// Solution of the Riccati recursion: the coefficients delta_0..delta_{K+1}
/// of u - n/z (every equation through m = K is used, so one index past K
/// is determined) together with the chosen free parameter delta_n.
#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiSolution<C: Coefficient> {
    n: usize,
    delta: Vec<C>,
    free_param: C,
}

impl<C: Coefficient> RiccatiSolution<C> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients delta_0 upward.
    pub fn delta(&self) -> &[C] {
        &self.delta
    }

    /// The chosen delta_n.
    pub fn free_param(&self) -> &C {
        &self.free_param
    }
}

fn check_indicial<C: Coefficient>(phi: &QuadDiffLaurent<C>) -> Result<(), FuchsError> {
    let target = QuadDiffLaurent::<C>::indicial_target(phi.n());
    if phi.alpha(-2)?.approx_eq(&target) {
        Ok(())
    } else {
        Err(FuchsError::IndicialMismatch)
    }
}

/// (1/2) sum_{i+j=m, i,j >= 0} delta_i delta_j over already-known deltas.
fn half_square_sum<C: Coefficient>(delta: &[C], m: i64) -> C {
    let mut sum = C::zero();
    let mut i = 0i64;
    while i <= m {
        let j = m - i;
        sum = sum + delta[i as usize].clone() * delta[j as usize].clone();
        i += 1;
    }
    sum * C::from_ratio(1, 2)
}

/// Runs the recursion for the indices 0..count, all of which must be below
/// n so neither the obstruction nor the free parameter is encountered.
fn delta_prefix<C: Coefficient>(
    phi: &QuadDiffLaurent<C>,
    count: usize,
) -> Result<Vec<C>, FuchsError> {
    debug_assert!(count <= phi.n());
    let n = phi.n() as i64;
    let mut delta: Vec<C> = Vec::with_capacity(count);
    for idx in 0..count as i64 {
        let m = idx - 1;
        let rhs = phi.alpha(m)? + half_square_sum(&delta, m);
        let inv = C::from_int(idx - n)
            .inverse()
            .expect("idx < n, so idx - n is a nonzero integer");
        delta.push(rhs * inv);
    }
    Ok(delta)
}

/// Solves the recursion through every equation m <= K.
///
/// Requires alpha_{-2} = (1 - (n+1)^2)/2 exactly and a vanishing
/// obstruction; delta_n is taken from the caller. The input must be known
/// at least through alpha_{n-1} (K >= n - 1).
pub fn riccati_solve<C: Coefficient>(
    phi: &QuadDiffLaurent<C>,
    delta_n: C,
) -> Result<RiccatiSolution<C>, FuchsError> {
    check_indicial(phi)?;
    let n = phi.n() as i64;
    let order = phi.order();
    if order < n - 1 {
        return Err(SeriesError::InsufficientOrder {
            requested: n - 1,
            order,
        }
        .into());
    }
    let mut delta: Vec<C> = Vec::with_capacity((order + 2) as usize);
    for m in -1..=order {
        let idx = m + 1;
        let rhs = phi.alpha(m)? + half_square_sum(&delta, m);
        if idx == n {
            if !rhs.is_zero() {
                return Err(FuchsError::ObstructionViolated(rhs.to_string()));
            }
            delta.push(delta_n.clone());
        } else {
            let inv = C::from_int(idx - n)
                .inverse()
                .expect("idx != n, so idx - n is a nonzero integer");
            delta.push(rhs * inv);
        }
    }
    Ok(RiccatiSolution {
        n: phi.n(),
        delta,
        free_param: delta_n,
    })
}

/// The obstruction value P_n(alpha_{-1}, ..., alpha_{n-1}); zero exactly
/// when the branched equation is solvable. Needs the input through
/// alpha_{n-1}.
pub fn obstruction_value<C: Coefficient>(phi: &QuadDiffLaurent<C>) -> Result<C, FuchsError> {
    check_indicial(phi)?;
    let n = phi.n();
    let delta = delta_prefix(phi, n)?;
    Ok(phi.alpha(n as i64 - 1)? + half_square_sum(&delta, n as i64 - 1))
}

/// The unique alpha_{n-1} making the obstruction vanish, as a function of
/// alpha_{-1}..alpha_{n-2}.
pub fn forced_alpha<C: Coefficient>(phi: &QuadDiffLaurent<C>) -> Result<C, FuchsError> {
    check_indicial(phi)?;
    let n = phi.n();
    if phi.order() < n as i64 - 2 {
        return Err(SeriesError::InsufficientOrder {
            requested: n as i64 - 2,
            order: phi.order(),
        }
        .into());
    }
    let delta = delta_prefix(phi, n)?;
    Ok(-half_square_sum(&delta, n as i64 - 1))
}

/// The obstruction polynomial P_n, computed by running the recursion with
/// coefficients in the polynomial ring Q[X_1..X_{n+1}] (X_k standing for
/// alpha_{k-2}). The coefficient of X_{n+1} is 1.
pub fn obstruction_polynomial(n: usize) -> Result<ObstructionPoly, FuchsError> {
    if n == 0 || n > DEGREE_BOUND {
        return Err(FuchsError::DegreeBoundExceeded);
    }
    let nvars = n + 1;
    let half = crate::series::rat(1, 2);
    let mut delta: Vec<MultiPoly> = Vec::with_capacity(n);
    for idx in 0..n as i64 {
        let m = idx - 1;
        // rhs = X_{m+2} + (1/2) sum_{i+j=m} delta_i delta_j.
        let mut rhs = MultiPoly::var((m + 2) as usize, nvars);
        let mut sum = MultiPoly::zero(nvars);
        for i in 0..=m {
            sum = sum.add(&delta[i as usize].mul(&delta[(m - i) as usize]));
        }
        rhs = rhs.add(&sum.scale(&half));
        delta.push(rhs.scale(&crate::series::rat(1, idx - n as i64)));
    }
    let mut poly = MultiPoly::var(nvars, nvars);
    let mut sum = MultiPoly::zero(nvars);
    let m = n as i64 - 1;
    for i in 0..=m {
        sum = sum.add(&delta[i as usize].mul(&delta[(m - i) as usize]));
    }
    poly = poly.add(&sum.scale(&half));
    Ok(ObstructionPoly { n, poly })
}

/// The germ with f(0) = 0 and f' = (n+1) z^n exp(integral of v), where v
/// is the power jet with the given tail coefficients. Yields a_{n+1} = 1
/// and a jet of order n + len(tail) + 1.
pub(crate) fn germ_from_log_tail<C: Coefficient>(n: usize, tail: &[C]) -> PowerJet<C> {
    let v = PowerJet::new(tail.to_vec());
    let e = v
        .integrate()
        .exp()
        .expect("the integral has zero constant term");
    let zn = PowerJet::monomial(C::one(), n, n + e.order());
    zn.mul(&e).scale(&C::from_int((n + 1) as i64)).integrate()
}

/// Rebuilds the branched germ from a Riccati solution: f(0) = 0 and
/// f' = (n+1) z^n exp(integral of (u - n/z)), so a_{n+1} = 1. The jet is
/// valid through order n + K + 3 and its pre-Schwarzian reproduces u.
pub fn reconstruct_map<C: Coefficient>(sol: &RiccatiSolution<C>) -> BranchedJet<C> {
    let f = germ_from_log_tail(sol.n, &sol.delta);
    BranchedJet::from_power_jet(sol.n, &f, false)
        .expect("reconstructed germ has leading coefficient 1")
}

/// Solves S(f) = phi at a branch point of order n: riccati_solve followed
/// by reconstruct_map.
pub fn solve_schwarzian<C: Coefficient>(
    phi: &QuadDiffLaurent<C>,
    delta_n: C,
) -> Result<BranchedJet<C>, FuchsError> {
    Ok(reconstruct_map(&riccati_solve(phi, delta_n)?))
}

/// The algebraic map D_n: the pre-Schwarzian data (delta_0..delta_{n-1})
/// of the normal-form germ of a class.
pub fn d_map<C: Coefficient>(c: &BranchingClass<C>) -> Vec<C> {
    let n = c.n();
    let germ = normal_form(c).to_power_jet();
    let u = pre_schwarzian(&germ, n).expect("normal forms are valid branched germs");
    (0..n as i64)
        .map(|k| u.coeff(k).expect("normal forms determine delta through n-1"))
        .collect()
}

/// The algebraic map S_n: the Schwarzian data (alpha_{-1}..alpha_{n-2}) of
/// the normal-form germ of a class.
pub fn s_map<C: Coefficient>(c: &BranchingClass<C>) -> Vec<C> {
    let n = c.n();
    let germ = normal_form(c).to_power_jet();
    let s = schwarzian(&germ, n).expect("normal forms are valid branched germs");
    (-1..=n as i64 - 2)
        .map(|k| s.coeff(k).expect("normal forms determine alpha through n-2"))
        .collect()
}

/// Inverse of [`d_map`]: the class whose normal form has the given
/// pre-Schwarzian data. `delta` must have length n.
pub fn d_map_inverse<C: Coefficient>(n: usize, delta: &[C]) -> BranchingClass<C> {
    assert_eq!(delta.len(), n, "d_map data has n components");
    let f = germ_from_log_tail(n, delta);
    class_from_affine_jet(&f, n).expect("reconstructed germ has leading coefficient 1")
}

/// Inverse of [`s_map`]: the class whose normal form has the given
/// Schwarzian data. `alpha` lists alpha_{-1}..alpha_{n-2} and must have
/// length n; alpha_{n-1} is forced and the equation then solved.
pub fn s_map_inverse<C: Coefficient>(n: usize, alpha: &[C]) -> Result<BranchingClass<C>, FuchsError> {
    assert_eq!(alpha.len(), n, "s_map data has n components");
    let mut coeffs = Vec::with_capacity(n + 2);
    coeffs.push(QuadDiffLaurent::<C>::indicial_target(n));
    coeffs.extend_from_slice(alpha);
    let prefix = QuadDiffLaurent::new(n, coeffs.clone());
    coeffs.push(forced_alpha(&prefix)?);
    let phi = QuadDiffLaurent::new(n, coeffs);
    let jet = solve_schwarzian(&phi, C::zero())?;
    Ok(class_of(&jet))
}
