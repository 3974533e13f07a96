//! Property tests for the pre-Schwarzian and Schwarzian derivatives: the
//! cocycle rules, Moebius invariance, and the universal pole data at a
//! branch point.

use proptest::prelude::*;

use jetmoeb_core::moebius::{act_on_powerjet, Moebius, PointCP1};
use jetmoeb_core::schwarzian::{pre_schwarzian, relative_schwarzian, schwarzian};
use jetmoeb_core::series::{rat, rat_int, LaurentJet, PowerJet, Rational};

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_coeff() -> impl Strategy<Value = Rational> {
    (prop_oneof![1i64..=9, -9i64..=-1], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Unbranched germ of order 8 with free constant term.
fn unbranched(centered: bool) -> impl Strategy<Value = PowerJet<Rational>> {
    (
        coeff(),
        nonzero_coeff(),
        proptest::collection::vec(coeff(), 7),
    )
        .prop_map(move |(c0, c1, tail)| {
            let mut coeffs = vec![if centered { rat_int(0) } else { c0 }, c1];
            coeffs.extend(tail);
            PowerJet::new(coeffs)
        })
}

/// Germ with branch order exactly n and truncation order n + 6.
fn branched() -> impl Strategy<Value = (usize, PowerJet<Rational>)> {
    (1usize..=5).prop_flat_map(|n| {
        (
            coeff(),
            nonzero_coeff(),
            proptest::collection::vec(coeff(), 5),
        )
            .prop_map(move |(c0, top, tail)| {
                let mut coeffs = vec![c0];
                coeffs.extend(std::iter::repeat_n(rat_int(0), n));
                coeffs.push(top);
                coeffs.extend(tail);
                (n, PowerJet::new(coeffs))
            })
    })
}

fn moebius() -> impl Strategy<Value = Moebius<Rational>> {
    (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5)
        .prop_filter_map("degenerate matrix", |(a, b, c, d)| {
            Moebius::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d)).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schwarzian_satisfies_the_cocycle_rule(f in unbranched(true), g in unbranched(false)) {
        let composite = g.compose(&f).unwrap();
        let lhs = schwarzian(&composite, 0).unwrap();
        let fp = LaurentJet::from_power(&f.derivative().unwrap());
        let pulled = schwarzian(&g, 0).unwrap().compose_power(&f).unwrap();
        let rhs = pulled.mul(&fp).mul(&fp).add(&schwarzian(&f, 0).unwrap());
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn pre_schwarzian_satisfies_the_affine_cocycle_rule(
        f in unbranched(true),
        g in unbranched(false),
    ) {
        let composite = g.compose(&f).unwrap();
        let lhs = pre_schwarzian(&composite, 0).unwrap();
        let fp = LaurentJet::from_power(&f.derivative().unwrap());
        let pulled = pre_schwarzian(&g, 0).unwrap().compose_power(&f).unwrap();
        let rhs = pulled.mul(&fp).add(&pre_schwarzian(&f, 0).unwrap());
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn schwarzian_vanishes_exactly_on_moebius_germs(g in moebius()) {
        let identity = PowerJet::<Rational>::identity(8);
        let (germ, value) = act_on_powerjet(&g, &identity, &PointCP1::Finite(rat_int(0))).unwrap();
        if let PointCP1::Finite(_) = value {
            let s = schwarzian(&germ, 0).unwrap();
            prop_assert!(s.is_zero());
        }
    }

    #[test]
    fn pole_data_at_a_branch_point_is_universal(nf in branched()) {
        let (n, f) = nf;
        let u = pre_schwarzian(&f, n).unwrap();
        prop_assert_eq!(u.coeff(-1).unwrap(), rat_int(n as i64));
        let s = schwarzian(&f, n).unwrap();
        let m = (n + 1) as i64;
        prop_assert_eq!(s.coeff(-2).unwrap(), rat(1 - m * m, 2));
    }

    #[test]
    fn schwarzian_is_moebius_invariant(nf in branched(), g in moebius()) {
        let (n, f) = nf;
        let value = PointCP1::Finite(f.coeff(0).unwrap());
        let (jet, _) = act_on_powerjet(&g, &f, &value).unwrap();
        let lhs = schwarzian(&jet, n).unwrap();
        let rhs = schwarzian(&f, n).unwrap();
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn relative_schwarzian_agrees_with_the_absolute_one(
        nf in branched(),
        c1 in nonzero_coeff(),
        tail in proptest::collection::vec(coeff(), 9),
    ) {
        let (n, f) = nf;
        let mut coeffs = vec![rat_int(0), c1];
        coeffs.extend(tail);
        let w = PowerJet::new(coeffs);
        let z2 = f.compose(&w).unwrap();
        let relative = relative_schwarzian(&z2, &w).unwrap();
        let direct = schwarzian(&f, n).unwrap();
        let k = relative.order().min(direct.order());
        prop_assert!(relative.agrees_through(&direct, k));
    }

    #[test]
    fn relative_schwarzian_to_itself_vanishes(f in unbranched(false)) {
        let s = relative_schwarzian(&f, &f).unwrap();
        prop_assert!(s.is_zero());
    }
}
