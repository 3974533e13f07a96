//! Truncated power series (jets of holomorphic germs) with explicit order
//! bookkeeping.
//!
//! A `PowerJet` of order K stores the coefficients c_0..c_K of a germ
//! c_0 + c_1 u + ... + c_K u^K + O(u^{K+1}) in the centered coordinate
//! u = z - z_0; the base point z_0 lives in the caller's bookkeeping. Every
//! operation propagates the valid order pessimistically and requesting a
//! coefficient beyond it is an error, never a silent zero.

use super::scalar::Coefficient;
use super::{JetRepr, SeriesError};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Jet of a holomorphic germ: coefficients from index 0 through `order()`.
/// Always non-empty.
#[derive(Clone, PartialEq, Debug)]
pub struct PowerJet<C: Coefficient> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> PowerJet<C> {
    /// Builds a jet from coefficients c_0..c_K. Panics on an empty vector
    /// (jets carry at least the constant term); parse untrusted data through
    /// serde, which reports the same condition as an error.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "PowerJet: empty coefficient vector");
        PowerJet { coeffs }
    }

    /// The zero jet 0 + O(u^{K+1}).
    pub fn zero(order: usize) -> Self {
        PowerJet {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    /// The constant jet c + O(u^{K+1}).
    pub fn constant(c: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = c;
        PowerJet { coeffs }
    }

    /// The identity germ u + O(u^{K+1}). Requires order >= 1.
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1, "identity jet needs order >= 1");
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[1] = C::one();
        PowerJet { coeffs }
    }

    /// The monomial c·u^k + O(u^{K+1}). Requires k <= order.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        assert!(k <= order, "monomial exponent beyond order");
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[k] = c;
        PowerJet { coeffs }
    }

    /// Highest valid coefficient index K.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient c_k; `InsufficientOrder` when k exceeds the valid order.
    pub fn coeff(&self, k: usize) -> Result<C, SeriesError> {
        self.coeffs.get(k).cloned().ok_or(SeriesError::InsufficientOrder {
            requested: k as i64,
            order: self.order() as i64,
        })
    }

    /// Index of the first nonzero coefficient; `None` for the zero jet.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when every stored coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Valuation, or K+1 for the zero jet (the tightest provable lower
    /// bound on where a nonzero coefficient could hide).
    pub fn effective_valuation(&self) -> usize {
        self.valuation().unwrap_or(self.coeffs.len())
    }

    /// Forgets coefficients above `order`. Panics when asked to extend.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncated: cannot extend a jet");
        PowerJet {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Applies a scalar conversion coefficientwise (e.g. exact to float).
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PowerJet<D> {
        PowerJet {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        PowerJet {
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        PowerJet {
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| s.clone() * c.clone())
    }

    /// Product jet. Valid order is min(K_a + v_b, K_b + v_a) with v the
    /// effective valuation: factors of high valuation push the other
    /// factor's truncation error past more coefficients.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (ka, kb) = (self.order(), rhs.order());
        let k = (ka + rhs.effective_valuation()).min(kb + self.effective_valuation());
        let mut out = vec![C::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerJet { coeffs: out }
    }

    /// Composition self ∘ inner. The outer jet must already be expanded
    /// about inner(0), which in centered coordinates means the inner
    /// constant term is exactly zero.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CenterMismatch);
        }
        let k = (self.order() * inner.effective_valuation()).min(inner.order());
        let f = &inner.coeffs[..=k.min(inner.order())];
        let mut acc = vec![self.coeffs[self.order()].clone()];
        for a in self.coeffs.iter().rev().skip(1) {
            acc = mul_mod(&acc, f, k);
            acc[0] = acc[0].clone() + a.clone();
        }
        acc.resize(k + 1, C::zero());
        Ok(PowerJet { coeffs: acc })
    }

    /// Multiplicative inverse jet, same order; requires c_0 ≠ 0.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .inverse()
            .ok_or(SeriesError::DivisionByZeroSeries)?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for m in 1..self.coeffs.len() {
            let mut s = C::zero();
            for i in 1..=m {
                s = s + self.coeffs[i].clone() * out[m - i].clone();
            }
            out.push(-(inv0.clone() * s));
        }
        Ok(PowerJet { coeffs: out })
    }

    /// Termwise derivative; drops one order, so order-0 jets have nothing
    /// left to report.
    pub fn derivative(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::InsufficientOrder {
                requested: 0,
                order: -1,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| C::from_int(k as i64) * c.clone())
            .collect();
        Ok(PowerJet { coeffs })
    }

    /// Antiderivative with integration constant 0; gains one order.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            let inv = C::from_int(k as i64 + 1).inverse().expect("nonzero integer");
            coeffs.push(inv * c.clone());
        }
        PowerJet { coeffs }
    }

    /// Exponential of a jet with zero constant term (a nonzero constant
    /// would exponentiate to a transcendental value, which the exact
    /// backend cannot represent). Same order; uses the first-order
    /// recurrence driven by exp(j)′ = j′·exp(j).
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::UnsupportedConstantTerm);
        }
        let k = self.order();
        let mut e = Vec::with_capacity(k + 1);
        e.push(C::one());
        for m in 0..k {
            let mut s = C::zero();
            for i in 0..=m {
                s = s + C::from_int(i as i64 + 1) * self.coeffs[i + 1].clone() * e[m - i].clone();
            }
            let inv = C::from_int(m as i64 + 1).inverse().expect("nonzero integer");
            e.push(inv * s);
        }
        Ok(PowerJet { coeffs: e })
    }

    /// Inverse germ g with self ∘ g = g ∘ self = identity to the valid
    /// order. Requires c_0 = 0 and c_1 ≠ 0; computed by the fixed-point
    /// iteration g ← (u − F(g))/c_1 with F = self − c_1·u, which gains one
    /// valid order per round.
    pub fn compositional_inverse(&self) -> Result<Self, SeriesError> {
        let k = self.order();
        if k < 1 || !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertibleGerm);
        }
        let inv1 = self.coeffs[1]
            .inverse()
            .ok_or(SeriesError::NotInvertibleGerm)?;
        let mut tail = self.clone();
        tail.coeffs[1] = C::zero();
        let mut g = PowerJet::identity(k).scale(&inv1);
        for _ in 0..k {
            let fg = tail.compose(&g).expect("iterate has zero constant term");
            g = PowerJet::identity(k).sub(&fg).scale(&inv1);
        }
        Ok(g)
    }

    /// Backend comparison: same order and coefficientwise `approx_eq`
    /// (exact equality on exact scalars).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.approx_eq(b))
    }

    /// Exact agreement of coefficients 0..=k; false when either jet is too
    /// short to compare that far.
    pub fn agrees_through(&self, other: &Self, k: usize) -> bool {
        self.order() >= k
            && other.order() >= k
            && (0..=k).all(|i| self.coeffs[i] == other.coeffs[i])
    }
}

/// Polynomial product of coefficient slices truncated at `order`.
fn mul_mod<C: Coefficient>(a: &[C], b: &[C], order: usize) -> Vec<C> {
    let len = (a.len() + b.len() - 1).min(order + 1);
    let mut out = vec![C::zero(); len];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if i + j < len {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    out
}

impl<C: Coefficient> Serialize for PowerJet<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        JetRepr {
            pole: 0,
            order: self.order() as i64,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for PowerJet<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = JetRepr::<C>::deserialize(deserializer)?;
        if repr.pole != 0 {
            return Err(serde::de::Error::custom(
                "power jet requires \"pole\": 0 (use a Laurent jet for poles)",
            ));
        }
        if repr.coeffs.is_empty() {
            return Err(serde::de::Error::custom("jet needs at least one coefficient"));
        }
        if repr.order != repr.coeffs.len() as i64 - 1 {
            return Err(serde::de::Error::custom(
                "jet order inconsistent with coefficient count",
            ));
        }
        Ok(PowerJet { coeffs: repr.coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::ComplexExact;

    type J = PowerJet<ComplexExact>;

    fn q(n: i64, d: i64) -> ComplexExact {
        ComplexExact::from_ratio(n, d)
    }

    fn jet(vals: &[(i64, i64)]) -> J {
        J::new(vals.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn ints(vals: &[i64]) -> J {
        J::new(vals.iter().map(|&n| ComplexExact::from_int(n)).collect())
    }

    #[test]
    fn ring_ops_match_schoolbook_expansion() {
        let a = ints(&[1, 1, 0]);
        let b = ints(&[1, -1, 0]);
        assert_eq!(a.add(&b), ints(&[2, 0, 0]));
        assert_eq!(a.mul(&b), ints(&[1, 0, -1]));
    }

    #[test]
    fn mul_order_respects_valuations() {
        // (order 3) * (exact z^2): only the z^2 coefficient of the product
        // is certain, since the z^3 term of the second factor is unknown.
        let a = ints(&[1, 2, 3, 4]);
        let b = ints(&[0, 0, 5]);
        let p = a.mul(&b);
        assert_eq!(p.order(), 2);
        assert_eq!(p, ints(&[0, 0, 5]));
        // Padding the monomial factor with known zeros restores the range.
        let b5 = ints(&[0, 0, 5, 0, 0, 0]);
        assert_eq!(a.mul(&b5), ints(&[0, 0, 5, 10, 15, 20]));
        // Zero jet times anything stays a zero jet of the bounded order.
        let z = J::zero(3);
        let p = z.mul(&a);
        assert_eq!(p, J::zero(3));
    }

    #[test]
    fn compose_matches_schoolbook_expansion() {
        // u^2 ∘ (z + z^2) = z^2 + 2z^3 + z^4.
        let outer = ints(&[0, 0, 1, 0, 0]);
        let inner = ints(&[0, 1, 1, 0, 0]);
        let got = outer.compose(&inner).unwrap();
        assert_eq!(got, ints(&[0, 0, 1, 2, 1]));
        // An outer jet known only to order 2 certifies less of the result.
        let short = ints(&[0, 0, 1]);
        assert_eq!(short.compose(&inner).unwrap(), ints(&[0, 0, 1]));
    }

    #[test]
    fn compose_identity_laws() {
        let f = ints(&[0, 2, -1, 3]);
        let id = J::identity(3);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn compose_rejects_off_center_inner() {
        let outer = ints(&[1, 1]);
        let inner = ints(&[1, 1]);
        assert!(matches!(
            outer.compose(&inner),
            Err(SeriesError::CenterMismatch)
        ));
    }

    #[test]
    fn reciprocal_of_geometric_series() {
        let f = ints(&[1, -1, 0, 0, 0]);
        assert_eq!(f.reciprocal().unwrap(), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(ints(&[2]).reciprocal().unwrap(), jet(&[(1, 2)]));
        assert!(matches!(
            ints(&[0, 1]).reciprocal(),
            Err(SeriesError::DivisionByZeroSeries)
        ));
    }

    #[test]
    fn derivative_and_integrate() {
        let f = ints(&[0, 0, 0, 1]);
        assert_eq!(f.derivative().unwrap(), ints(&[0, 0, 3]));
        assert_eq!(ints(&[0, 0, 3]).integrate(), ints(&[0, 0, 0, 1]));
        assert!(matches!(
            ints(&[5]).derivative(),
            Err(SeriesError::InsufficientOrder { .. })
        ));
        let g = jet(&[(1, 1), (2, 1), (-3, 5), (7, 2)]);
        assert_eq!(g.integrate().derivative().unwrap(), g);
    }

    #[test]
    fn exp_matches_series_and_rejects_constants() {
        let e = ints(&[0, 1, 0]).exp().unwrap();
        assert_eq!(e, J::new(vec![q(1, 1), q(1, 1), q(1, 2)]));
        assert!(matches!(
            ints(&[1, 1]).exp(),
            Err(SeriesError::UnsupportedConstantTerm)
        ));
        // d/dz exp(j) = j' exp(j) at a nontrivial jet.
        let j = jet(&[(0, 1), (2, 3), (-1, 2), (5, 1), (1, 7)]);
        let ej = j.exp().unwrap();
        let lhs = ej.derivative().unwrap();
        let rhs = j.derivative().unwrap().mul(&ej);
        assert_eq!(lhs, rhs.truncated(lhs.order()));
    }

    #[test]
    fn compositional_inverse_matches_lagrange_data() {
        let f = ints(&[0, 1, 1, 0, 0]);
        assert_eq!(
            f.compositional_inverse().unwrap(),
            ints(&[0, 1, -1, 2, -5])
        );
        assert_eq!(J::identity(4).compositional_inverse().unwrap(), J::identity(4));
        assert_eq!(
            ints(&[0, 2]).compositional_inverse().unwrap(),
            jet(&[(0, 1), (1, 2)])
        );
        assert!(matches!(
            ints(&[1, 1]).compositional_inverse(),
            Err(SeriesError::NotInvertibleGerm)
        ));
        assert!(matches!(
            ints(&[0, 0, 1]).compositional_inverse(),
            Err(SeriesError::NotInvertibleGerm)
        ));
    }

    #[test]
    fn coefficient_requests_beyond_order_fail() {
        let f = ints(&[1, 2]);
        assert!(f.coeff(1).is_ok());
        assert!(matches!(
            f.coeff(2),
            Err(SeriesError::InsufficientOrder { requested: 2, order: 1 })
        ));
    }

    #[test]
    fn serialization_round_trips_bit_exactly() {
        let f = jet(&[(1, 2), (-3, 4), (0, 1)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "{\"pole\":0,\"order\":2,\"coeffs\":[\"1/2\",\"-3/4\",\"0\"]}");
        let back: J = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<J>("{\"pole\":1,\"order\":0,\"coeffs\":[\"1\",\"1\"]}").is_err());
        assert!(serde_json::from_str::<J>("{\"pole\":0,\"order\":3,\"coeffs\":[\"1\"]}").is_err());
    }
}
