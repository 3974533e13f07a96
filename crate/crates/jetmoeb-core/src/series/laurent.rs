//! Truncated Laurent series: jets of meromorphic germs with a finite pole.
//!
//! A `LaurentJet` stores coefficients c_{-p}..c_K of
//! c_{-p} u^{-p} + ... + c_K u^K + O(u^{K+1}); indices below -p are known
//! to vanish. The representation is canonical: a positive pole order means
//! the leading coefficient is nonzero, and the identically zero jet carries
//! pole order 0. The order K may be negative (all information inside the
//! pole part); the zero jet clamps to order >= 0, the smallest canonical
//! window that can hold it.

use super::power::PowerJet;
use super::scalar::Coefficient;
use super::{JetRepr, SeriesError};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Jet of a meromorphic germ. `coeffs[i]` is the coefficient of
/// u^(i - pole); always non-empty.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentJet<C: Coefficient> {
    pole: usize,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentJet<C> {
    /// Builds a jet from the pole order and coefficients listed from index
    /// -pole upward, normalizing to canonical form. Panics on an empty
    /// vector; parse untrusted data through serde.
    pub fn new(pole: usize, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "LaurentJet: empty coefficient vector");
        Self::canonical(pole, coeffs)
    }

    fn canonical(mut pole: usize, mut coeffs: Vec<C>) -> Self {
        if coeffs.iter().all(|c| c.is_zero()) {
            let order = coeffs.len() as i64 - 1 - pole as i64;
            return LaurentJet {
                pole: 0,
                coeffs: vec![C::zero(); (order.max(0) + 1) as usize],
            };
        }
        while pole > 0 && coeffs[0].is_zero() {
            coeffs.remove(0);
            pole -= 1;
        }
        LaurentJet { pole, coeffs }
    }

    /// The zero jet 0 + O(u^{K+1}) (order clamps to at least 0).
    pub fn zero(order: i64) -> Self {
        LaurentJet {
            pole: 0,
            coeffs: vec![C::zero(); (order.max(0) + 1) as usize],
        }
    }

    /// The monomial c·u^k, valid exactly through index k.
    pub fn monomial(c: C, k: i64) -> Self {
        let pole = (-k).max(0) as usize;
        let mut coeffs = vec![C::zero(); (k + pole as i64) as usize + 1];
        let last = coeffs.len() - 1;
        coeffs[last] = c;
        Self::canonical(pole, coeffs)
    }

    /// Reinterprets a power jet as a pole-free Laurent jet.
    pub fn from_power(p: &PowerJet<C>) -> Self {
        LaurentJet {
            pole: 0,
            coeffs: p.coeffs().to_vec(),
        }
    }

    /// The holomorphic part as a power jet; `None` when a pole is present.
    pub fn try_into_power(&self) -> Option<PowerJet<C>> {
        if self.pole == 0 {
            Some(PowerJet::new(self.coeffs.clone()))
        } else {
            None
        }
    }

    pub fn pole(&self) -> usize {
        self.pole
    }

    /// Highest valid coefficient index K; negative when only pole-part
    /// coefficients are known.
    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1 - self.pole as i64
    }

    /// Coefficients listed from index -pole upward.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient c_k: stored inside the window, known-zero below the
    /// pole, `InsufficientOrder` above the valid order.
    pub fn coeff(&self, k: i64) -> Result<C, SeriesError> {
        if k > self.order() {
            return Err(SeriesError::InsufficientOrder {
                requested: k,
                order: self.order(),
            });
        }
        let idx = k + self.pole as i64;
        if idx < 0 {
            Ok(C::zero())
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    /// Index of the first nonzero coefficient; `None` for the zero jet.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| i as i64 - self.pole as i64)
    }

    /// True when every stored coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.order() + 1)
    }

    /// Applies a scalar conversion coefficientwise.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentJet<D> {
        LaurentJet::canonical(self.pole, self.coeffs.iter().map(f).collect())
    }

    /// Builds a jet from coefficients attached to indices low..=high; when
    /// low is positive, the slots 0..low are filled with (known) zeros so
    /// the pole-0 representation stays aligned.
    fn from_window(low: i64, coeffs: Vec<C>) -> Self {
        if low >= 0 {
            let mut full = vec![C::zero(); low as usize];
            full.extend(coeffs);
            Self::canonical(0, full)
        } else {
            Self::canonical((-low) as usize, coeffs)
        }
    }

    fn window(low: i64, high: i64, value: impl Fn(i64) -> C) -> Self {
        debug_assert!(low <= high);
        let coeffs: Vec<C> = (low..=high).map(value).collect();
        Self::from_window(low, coeffs)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let low = (-(self.pole as i64)).min(-(rhs.pole as i64));
        let high = self.order().min(rhs.order());
        Self::window(low, high, |k| {
            self.coeff(k).expect("inside window") + rhs.coeff(k).expect("inside window")
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let low = (-(self.pole as i64)).min(-(rhs.pole as i64));
        let high = self.order().min(rhs.order());
        Self::window(low, high, |k| {
            self.coeff(k).expect("inside window") - rhs.coeff(k).expect("inside window")
        })
    }

    pub fn neg(&self) -> Self {
        LaurentJet {
            pole: self.pole,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::canonical(
            self.pole,
            self.coeffs.iter().map(|c| s.clone() * c.clone()).collect(),
        )
    }

    /// Product jet with the valuation-aware order min(K_a + v_b, K_b + v_a).
    pub fn mul(&self, rhs: &Self) -> Self {
        let high = (self.order() + rhs.effective_valuation())
            .min(rhs.order() + self.effective_valuation());
        let (va, vb) = (self.valuation(), rhs.valuation());
        let (va, vb) = match (va, vb) {
            (Some(va), Some(vb)) => (va, vb),
            _ => return LaurentJet::zero(high),
        };
        let low = va + vb;
        let mut out = vec![C::zero(); (high - low + 1) as usize];
        for (ia, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (ib, b) in rhs.coeffs.iter().enumerate() {
                let k = ia as i64 - self.pole as i64 + ib as i64 - rhs.pole as i64;
                if k >= low && k <= high {
                    let slot = (k - low) as usize;
                    out[slot] = out[slot].clone() + a.clone() * b.clone();
                }
            }
        }
        Self::from_window(low, out)
    }

    /// Termwise derivative c_k u^k ↦ k·c_k u^{k-1}; total, one order lower.
    /// A pole-free order-0 jet keeps no certified coefficient; the result
    /// degrades to the order-0 zero jet.
    pub fn derivative(&self) -> Self {
        let scaled: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| C::from_int(i as i64 - self.pole as i64) * c.clone())
            .collect();
        Self::canonical(self.pole + 1, scaled)
    }

    /// Antiderivative with integration constant 0; gains one order. The
    /// residue (index -1 coefficient) must vanish whenever the window
    /// certifies it.
    pub fn integrate(&self) -> Result<Self, SeriesError> {
        if -1 >= -(self.pole as i64) && -1 <= self.order() {
            let res = self.coeff(-1).expect("inside window");
            if !res.is_zero() {
                return Err(SeriesError::ResidueObstruction);
            }
        }
        let low = (1 - self.pole as i64).min(0);
        let high = self.order() + 1;
        Ok(Self::window(low, high, |k| {
            if k == 0 {
                C::zero()
            } else {
                let c = self.coeff(k - 1).expect("inside window");
                C::from_int(k).inverse().expect("nonzero integer") * c
            }
        }))
    }

    /// Multiplicative inverse. Writing the jet as u^v·(unit), the result is
    /// u^{-v}·(unit)^{-1}, valid through index K - 2v.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let v = match self.valuation() {
            Some(v) => v,
            None => return Err(SeriesError::DivisionByZeroSeries),
        };
        let start = (v + self.pole as i64) as usize;
        let unit = PowerJet::new(self.coeffs[start..].to_vec());
        let inv = unit.reciprocal()?;
        let low = -v;
        Self::from_shifted_power(&inv, low)
    }

    fn from_shifted_power(p: &PowerJet<C>, low: i64) -> Result<Self, SeriesError> {
        if low >= 0 {
            let mut coeffs = vec![C::zero(); low as usize];
            coeffs.extend_from_slice(p.coeffs());
            Ok(Self::canonical(0, coeffs))
        } else {
            Ok(Self::canonical((-low) as usize, p.coeffs().to_vec()))
        }
    }

    /// Substitutes a power jet of valuation >= 1 into this Laurent jet:
    /// with self = Σ c_k u^k the result is Σ c_k f(z)^k. The inner constant
    /// term must be exactly zero (centering), and an inner jet that could
    /// be identically zero cannot enter a genuine pole.
    pub fn compose_power(&self, inner: &PowerJet<C>) -> Result<Self, SeriesError> {
        if !inner.coeff(0)?.is_zero() {
            return Err(SeriesError::CenterMismatch);
        }
        let p = self.pole;
        // Shift into holomorphic territory: self = u^{-p}·P(u) with P a
        // power jet of order K + p, then self∘f = f^{-p}·(P∘f).
        let shifted = PowerJet::new(self.coeffs.clone());
        let composed = shifted.compose(inner)?;
        if p == 0 {
            return Ok(Self::from_power(&composed));
        }
        let inner_l = Self::from_power(inner);
        let inv = inner_l.reciprocal()?;
        let mut result = Self::from_power(&composed);
        for _ in 0..p {
            result = result.mul(&inv);
        }
        Ok(result)
    }

    /// Backend comparison over the common certified window; exact equality
    /// on exact scalars.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let low = (-(self.pole as i64)).min(-(other.pole as i64));
        (low..=self.order()).all(|k| {
            self.coeff(k)
                .expect("inside window")
                .approx_eq(&other.coeff(k).expect("inside window"))
        })
    }

    /// Exact agreement of coefficients from the deeper pole through index
    /// `k`; false when either jet is too short to compare that far.
    pub fn agrees_through(&self, other: &Self, k: i64) -> bool {
        if self.order() < k || other.order() < k {
            return false;
        }
        let low = (-(self.pole as i64)).min(-(other.pole as i64));
        (low..=k).all(|i| self.coeff(i).expect("inside window") == other.coeff(i).expect("inside window"))
    }
}

impl<C: Coefficient> Serialize for LaurentJet<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        JetRepr {
            pole: self.pole as u32,
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for LaurentJet<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = JetRepr::<C>::deserialize(deserializer)?;
        if repr.coeffs.is_empty() {
            return Err(serde::de::Error::custom("jet needs at least one coefficient"));
        }
        if repr.order != repr.coeffs.len() as i64 - 1 - repr.pole as i64 {
            return Err(serde::de::Error::custom(
                "jet order inconsistent with pole and coefficient count",
            ));
        }
        let jet = LaurentJet::canonical(repr.pole as usize, repr.coeffs);
        if jet.pole as u32 != repr.pole {
            return Err(serde::de::Error::custom(
                "non-canonical Laurent data: leading pole coefficient is zero",
            ));
        }
        Ok(jet)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::scalar::ComplexExact;

    type L = LaurentJet<ComplexExact>;

    fn lj(pole: usize, vals: &[i64]) -> L {
        L::new(
            pole,
            vals.iter().map(|&n| ComplexExact::from_int(n)).collect(),
        )
    }

    #[test]
    fn canonical_form_strips_dead_pole_slots() {
        let j = lj(2, &[0, 1, 3]);
        assert_eq!(j.pole(), 1);
        assert_eq!(j.order(), 0);
        assert_eq!(j, lj(1, &[1, 3]));
        let z = lj(3, &[0, 0, 0, 0, 0]);
        assert_eq!(z.pole(), 0);
        assert_eq!(z.order(), 1);
    }

    #[test]
    fn pole_times_zero_index_cancels() {
        // z^{-1} · z = 1 with pole order 0.
        let a = L::monomial(ComplexExact::one(), -1);
        let b = lj(0, &[0, 1]);
        let p = a.mul(&b);
        assert_eq!(p.pole(), 0);
        assert_eq!(p, lj(0, &[1]));
    }

    #[test]
    fn coefficients_below_pole_are_known_zero() {
        let j = lj(1, &[2, 5]);
        assert_eq!(j.coeff(-3).unwrap(), ComplexExact::zero());
        assert_eq!(j.coeff(-1).unwrap(), ComplexExact::from_int(2));
        assert!(matches!(
            j.coeff(1),
            Err(SeriesError::InsufficientOrder { requested: 1, order: 0 })
        ));
    }

    #[test]
    fn derivative_shifts_and_scales() {
        // z^{-1} → -z^{-2}.
        let j = L::monomial(ComplexExact::one(), -1);
        let d = j.derivative();
        assert_eq!(d, L::monomial(ComplexExact::from_int(-1), -2));
        // Constant 5 (as a Laurent jet) → 0.
        let c = lj(0, &[5]);
        assert_eq!(c.derivative(), L::zero(0));
        // Mixed window keeps exact bookkeeping.
        let m = lj(2, &[3, 0, 7, 1]);
        assert_eq!(m.derivative(), lj(3, &[-6, 0, 0, 1]));
    }

    #[test]
    fn integrate_requires_zero_residue() {
        let bad = L::monomial(ComplexExact::one(), -1);
        assert!(matches!(bad.integrate(), Err(SeriesError::ResidueObstruction)));
        let j = lj(2, &[2, 0, 0, 3]);
        let int = j.integrate().unwrap();
        assert_eq!(int.pole(), 1);
        assert_eq!(int.order(), 2);
        assert_eq!(int.coeff(-1).unwrap(), ComplexExact::from_int(-2));
        assert_eq!(int.coeff(0).unwrap(), ComplexExact::zero());
        assert_eq!(int.coeff(2).unwrap(), ComplexExact::from_ratio(3, 2));
        assert_eq!(int.derivative(), j);
        // Pole-free integration matches the power-jet rule.
        let p = lj(0, &[0, 0, 3]);
        assert_eq!(p.integrate().unwrap(), lj(0, &[0, 0, 0, 1]));
    }

    #[test]
    fn reciprocal_of_shifted_geometric() {
        // z(1+z) known to order 4 inverts to z^{-1}(1 - z + z^2 - z^3).
        let j = lj(0, &[0, 1, 1, 0, 0]);
        let r = j.reciprocal().unwrap();
        assert_eq!(r, lj(1, &[1, -1, 1, -1]));
        assert_eq!(r.order(), 4 - 2);
        // Multiply-back: j·r = 1 through the contract order.
        let back = j.mul(&r);
        assert_eq!(back.coeff(0).unwrap(), ComplexExact::one());
        for k in 1..=back.order() {
            assert!(back.coeff(k).unwrap().is_zero());
        }
        assert!(matches!(
            L::zero(3).reciprocal(),
            Err(SeriesError::DivisionByZeroSeries)
        ));
    }

    #[test]
    fn compose_power_substitutes_into_poles() {
        // (z^{-1} + 1) ∘ (w + w^2) = w^{-1}(1+w)^{-1} + 1
        //                          = w^{-1} - 1 + w - w^2 + ... + 1.
        let outer = lj(1, &[1, 1, 0, 0, 0]);
        let inner = PowerJet::new(
            [0, 1, 1, 0, 0]
                .iter()
                .map(|&n| ComplexExact::from_int(n))
                .collect::<Vec<_>>(),
        );
        let got = outer.compose_power(&inner).unwrap();
        assert_eq!(got.coeff(-1).unwrap(), ComplexExact::one());
        assert_eq!(got.coeff(0).unwrap(), ComplexExact::zero());
        assert_eq!(got.coeff(1).unwrap(), ComplexExact::one());
        assert_eq!(got.coeff(2).unwrap(), ComplexExact::from_int(-1));
    }

    #[test]
    fn add_aligns_windows() {
        let a = lj(2, &[1, 0, 3]);
        let b = lj(1, &[4, -3]);
        let s = a.add(&b);
        assert_eq!(s, lj(2, &[1, 4, 0]));
        assert_eq!(s.order(), 0);
    }

    #[test]
    fn serialization_round_trips_and_rejects_non_canonical() {
        let j = lj(2, &[1, -2, 3]);
        let json = serde_json::to_string(&j).unwrap();
        assert_eq!(json, "{\"pole\":2,\"order\":0,\"coeffs\":[\"1\",\"-2\",\"3\"]}");
        let back: L = serde_json::from_str(&json).unwrap();
        assert_eq!(back, j);
        assert!(serde_json::from_str::<L>(
            "{\"pole\":2,\"order\":0,\"coeffs\":[\"0\",\"-2\",\"3\"]}"
        )
        .is_err());
        assert!(serde_json::from_str::<L>(
            "{\"pole\":1,\"order\":1,\"coeffs\":[\"1\"]}"
        )
        .is_err());
    }
}
