//! Property tests for the exact series kernel: ring axioms, composition
//! laws, and inversion round trips on power and Laurent jets.

use proptest::prelude::*;

use jetmoeb_core::series::{rat, rat_int, LaurentJet, PowerJet, Rational};

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_coeff() -> impl Strategy<Value = Rational> {
    (prop_oneof![(-9i64..=-1), (1i64..=9)], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn jet(order: usize) -> impl Strategy<Value = PowerJet<Rational>> {
    proptest::collection::vec(coeff(), order + 1).prop_map(PowerJet::new)
}

/// Jet with nonzero constant term (a unit for multiplication).
fn unit_jet(order: usize) -> impl Strategy<Value = PowerJet<Rational>> {
    (nonzero_coeff(), proptest::collection::vec(coeff(), order)).prop_map(|(c0, mut rest)| {
        rest.insert(0, c0);
        PowerJet::new(rest)
    })
}

/// Germ fixing the center with invertible linear part.
fn germ(order: usize) -> impl Strategy<Value = PowerJet<Rational>> {
    (nonzero_coeff(), proptest::collection::vec(coeff(), order - 1)).prop_map(
        |(c1, mut rest)| {
            rest.insert(0, c1);
            rest.insert(0, rat_int(0));
            PowerJet::new(rest)
        },
    )
}

fn laurent(pole: usize, len: usize) -> impl Strategy<Value = LaurentJet<Rational>> {
    proptest::collection::vec(coeff(), len).prop_map(move |coeffs| LaurentJet::new(pole, coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_add_commutes(a in jet(8), b in jet(8)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn power_mul_commutes_and_associates(a in jet(6), b in jet(6), c in jet(6)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        let lhs = a.mul(&b).mul(&c);
        let rhs = a.mul(&b.mul(&c));
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn power_mul_distributes(a in jet(6), b in jet(6), c in jet(6)) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn power_reciprocal_is_a_unit_inverse(a in unit_jet(8)) {
        let inv = a.reciprocal().unwrap();
        let one = PowerJet::constant(rat_int(1), 8);
        prop_assert_eq!(a.mul(&inv), one);
    }

    #[test]
    fn derivative_undoes_integrate(a in jet(8)) {
        prop_assert_eq!(a.integrate().derivative().unwrap(), a);
    }

    #[test]
    fn integrate_recovers_up_to_the_constant(a in jet(8)) {
        let restored = a.derivative().unwrap().integrate();
        prop_assert_eq!(restored.order(), a.order());
        prop_assert_eq!(restored.coeff(0).unwrap(), rat_int(0));
        for k in 1..=a.order() {
            prop_assert_eq!(restored.coeff(k).unwrap(), a.coeff(k).unwrap());
        }
    }

    #[test]
    fn compose_associates(f in jet(8), g in germ(8), h in germ(8)) {
        let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn compose_unit_laws(f in jet(8), g in germ(8)) {
        let id = PowerJet::identity(8);
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
        prop_assert_eq!(id.compose(&g).unwrap(), g);
    }

    #[test]
    fn compositional_inverse_round_trips(g in germ(8)) {
        let inv = g.compositional_inverse().unwrap();
        let id = PowerJet::identity(8);
        let fwd = g.compose(&inv).unwrap();
        prop_assert!(fwd.agrees_through(&id, fwd.order().min(8)));
        let bwd = inv.compose(&g).unwrap();
        prop_assert!(bwd.agrees_through(&id, bwd.order().min(8)));
    }

    #[test]
    fn exp_turns_sums_into_products(mut a in jet(7), mut b in jet(7)) {
        a = a.sub(&PowerJet::constant(a.coeff(0).unwrap(), 7));
        b = b.sub(&PowerJet::constant(b.coeff(0).unwrap(), 7));
        let lhs = a.add(&b).exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap());
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn exp_solves_its_defining_equation(mut a in jet(7)) {
        a = a.sub(&PowerJet::constant(a.coeff(0).unwrap(), 7));
        let e = a.exp().unwrap();
        let lhs = e.derivative().unwrap();
        let rhs = a.derivative().unwrap().mul(&e);
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn laurent_mul_commutes(a in laurent(2, 7), b in laurent(1, 7)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn laurent_embeds_power_multiplicatively(a in jet(6), b in jet(6)) {
        let lhs = LaurentJet::from_power(&a.mul(&b));
        let rhs = LaurentJet::from_power(&a).mul(&LaurentJet::from_power(&b));
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn laurent_derivative_is_a_derivation(a in laurent(2, 7), b in laurent(1, 7)) {
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        let k = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_through(&rhs, k));
    }

    #[test]
    fn laurent_reciprocal_inverts(c0 in nonzero_coeff(), rest in proptest::collection::vec(coeff(), 6)) {
        let mut coeffs = rest;
        coeffs.insert(0, c0);
        let a = LaurentJet::new(3, coeffs);
        let prod = a.mul(&a.reciprocal().unwrap());
        for i in -3..=prod.order() {
            let expected = if i == 0 { rat_int(1) } else { rat_int(0) };
            prop_assert_eq!(prod.coeff(i).unwrap(), expected);
        }
    }

    #[test]
    fn laurent_round_trips_through_power(a in jet(7)) {
        let l = LaurentJet::from_power(&a);
        prop_assert_eq!(l.try_into_power().unwrap(), a);
    }

    #[test]
    fn serde_round_trips_bit_exactly(a in jet(6), b in laurent(2, 6)) {
        let ja = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<PowerJet<Rational>>(&ja).unwrap(), a);
        let jb = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentJet<Rational>>(&jb).unwrap(), b);
    }
}
