//! Deterministic random generators for the property suites.
//!
//! All values are small rationals embedded through the coefficient trait,
//! so a fixed seed produces the same stream in every backend. Generators
//! take the concrete ChaCha stream cipher generator to keep runs
//! reproducible across platforms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::branching::{BranchedJet, BranchingClass, ClassDelta, DiffMode, OneFormDelta, QuadDiffDelta};
use crate::fuchs::{forced_alpha, QuadDiffLaurent};
use crate::moebius::{Moebius, PointCP1};
use crate::series::{Coefficient, PowerJet};

/// A fresh deterministic generator for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational scalar: numerator in -9..=9, denominator in 1..=4.
pub fn coeff<C: Coefficient>(r: &mut ChaCha8Rng) -> C {
    C::from_ratio(r.gen_range(-9..=9), r.gen_range(1..=4))
}

/// Small nonzero rational scalar.
pub fn nonzero_coeff<C: Coefficient>(r: &mut ChaCha8Rng) -> C {
    let mag = r.gen_range(1..=9);
    let num = if r.gen::<bool>() { mag } else { -mag };
    C::from_ratio(num, r.gen_range(1..=4))
}

/// Tiny rational scalar for numerically delicate constructions (series
/// reversion amplifies coefficient growth, so the float backend needs
/// tame inputs to stay within tolerance).
pub fn tame_coeff<C: Coefficient>(r: &mut ChaCha8Rng) -> C {
    C::from_ratio(r.gen_range(-2..=2), r.gen_range(1..=2))
}

/// Unbranched coordinate germ in normalized scale: z plus a tame tail.
pub fn tame_coordinate<C: Coefficient>(r: &mut ChaCha8Rng, order: usize) -> PowerJet<C> {
    let mut coeffs = vec![C::zero(), C::one()];
    coeffs.extend((2..=order).map(|_| tame_coeff::<C>(r)));
    PowerJet::new(coeffs)
}

/// Jet of the given order with random coefficients.
pub fn power_jet<C: Coefficient>(r: &mut ChaCha8Rng, order: usize) -> PowerJet<C> {
    PowerJet::new((0..=order).map(|_| coeff(r)).collect())
}

/// Unbranched germ fixing the center: f(0) = 0, f'(0) != 0.
pub fn unbranched_germ<C: Coefficient>(r: &mut ChaCha8Rng, order: usize) -> PowerJet<C> {
    let mut coeffs = vec![C::zero(), nonzero_coeff(r)];
    coeffs.extend((2..=order).map(|_| coeff::<C>(r)));
    PowerJet::new(coeffs)
}

/// Biholomorphism germ with free constant term: f'(0) != 0.
pub fn biholo_jet<C: Coefficient>(r: &mut ChaCha8Rng, order: usize) -> PowerJet<C> {
    let mut coeffs = vec![coeff(r), nonzero_coeff(r)];
    coeffs.extend((2..=order).map(|_| coeff::<C>(r)));
    PowerJet::new(coeffs)
}

/// Power jet with branch order n: coefficients 1..n vanish and the
/// coefficient at n+1 does not. The constant term is free.
pub fn branched_power_jet<C: Coefficient>(
    r: &mut ChaCha8Rng,
    n: usize,
    order: usize,
) -> PowerJet<C> {
    assert!(order > n, "branched jet needs order beyond the branch");
    let mut coeffs = vec![coeff(r)];
    coeffs.extend(std::iter::repeat_with(C::zero).take(n));
    coeffs.push(nonzero_coeff(r));
    coeffs.extend((n + 2..=order).map(|_| coeff::<C>(r)));
    PowerJet::new(coeffs)
}

/// Branched jet with `extra` coefficients beyond the minimal window; the
/// value is infinite in about a quarter of the draws.
pub fn branched_jet<C: Coefficient>(
    r: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
) -> BranchedJet<C> {
    let value = if r.gen_bool(0.25) {
        PointCP1::Infinity
    } else {
        PointCP1::Finite(coeff(r))
    };
    let mut a = vec![nonzero_coeff::<C>(r)];
    a.extend((1..n + 2 + extra).map(|_| coeff::<C>(r)));
    BranchedJet::new(n, value, a).expect("generated data satisfies the invariants")
}

/// Random invertible Moebius transformation with small integer entries.
pub fn moebius<C: Coefficient>(r: &mut ChaCha8Rng) -> Moebius<C> {
    loop {
        let entries: Vec<C> = (0..4).map(|_| C::from_int(r.gen_range(-5..=5))).collect();
        if let Ok(g) = Moebius::new(
            entries[0].clone(),
            entries[1].clone(),
            entries[2].clone(),
            entries[3].clone(),
        ) {
            return g;
        }
    }
}

/// Random point of the projective line; infinite in about a fifth of the
/// draws.
pub fn point<C: Coefficient>(r: &mut ChaCha8Rng) -> PointCP1<C> {
    if r.gen_bool(0.2) {
        PointCP1::Infinity
    } else {
        PointCP1::Finite(coeff(r))
    }
}

/// Random branching class of order n.
pub fn branching_class<C: Coefficient>(r: &mut ChaCha8Rng, n: usize) -> BranchingClass<C> {
    BranchingClass::new(n, (0..n).map(|_| coeff(r)).collect())
        .expect("generated class has n coordinates")
}

/// Random class difference of order n in the requested mode.
pub fn class_delta<C: Coefficient>(
    r: &mut ChaCha8Rng,
    n: usize,
    mode: DiffMode,
) -> ClassDelta<C> {
    let comps: Vec<C> = (0..n).map(|_| coeff(r)).collect();
    match mode {
        DiffMode::PreSchwarzian => ClassDelta::OneForm(OneFormDelta { n, eta: comps }),
        DiffMode::Schwarzian => ClassDelta::QuadDiff(QuadDiffDelta { n, beta: comps }),
    }
}

/// Admissible right-hand side for the branched equation at order n: the
/// indicial coefficient is pinned, alpha_{n-1} is forced so the
/// obstruction vanishes, and every other coefficient through alpha_K is
/// random. Requires K >= n - 1.
pub fn admissible_phi<C: Coefficient>(
    r: &mut ChaCha8Rng,
    n: usize,
    order: i64,
) -> QuadDiffLaurent<C> {
    assert!(order >= n as i64 - 1, "admissible phi needs order >= n - 1");
    let mut alpha = vec![QuadDiffLaurent::<C>::indicial_target(n)];
    alpha.extend((0..n).map(|_| coeff::<C>(r)));
    let prefix = QuadDiffLaurent::new(n, alpha.clone());
    alpha.push(forced_alpha(&prefix).expect("prefix reaches alpha_{n-2}"));
    alpha.extend((n as i64..=order).map(|_| coeff::<C>(r)));
    QuadDiffLaurent::new(n, alpha)
}

/// Random section w -> lambda(w) staying off the diagonal at the center:
/// a polynomial jet with lambda(0) != 0.
pub fn section_lambda<C: Coefficient>(r: &mut ChaCha8Rng, order: usize) -> PowerJet<C> {
    let mut coeffs = vec![nonzero_coeff::<C>(r)];
    coeffs.extend((1..=order).map(|_| coeff::<C>(r)));
    PowerJet::new(coeffs)
}
