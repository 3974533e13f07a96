//! Property tests for the connection correspondence: admissibility gates,
//! flatness, the bracket algebra, and the sign identity between the
//! section difference and the induced affine connection.

use proptest::prelude::*;

use jetmoeb_core::connections::{
    connection_difference, nabla_difference, section_difference, verify_correspondence,
    vf_bracket, ConnectionsError, VFieldWSeries,
};
use jetmoeb_core::series::{rat, PowerJet, Rational};

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_coeff() -> impl Strategy<Value = Rational> {
    (prop_oneof![1i64..=9, -9i64..=-1], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Section jet with lambda(0) != 0, order 3..=8.
fn admissible_lambda() -> impl Strategy<Value = PowerJet<Rational>> {
    (3usize..=8).prop_flat_map(|order| {
        (nonzero_coeff(), proptest::collection::vec(coeff(), order)).prop_map(
            move |(c0, tail)| {
                let mut coeffs = vec![c0];
                coeffs.extend(tail);
                PowerJet::new(coeffs)
            },
        )
    })
}

fn field(order: usize) -> impl Strategy<Value = VFieldWSeries<Rational>> {
    (
        proptest::collection::vec(coeff(), order + 1),
        proptest::collection::vec(coeff(), order + 1),
        proptest::collection::vec(coeff(), order + 1),
    )
        .prop_map(|(q0, q1, q2)| {
            VFieldWSeries::new(PowerJet::new(q0), PowerJet::new(q1), PowerJet::new(q2))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn correspondence_holds_for_admissible_sections(lambda in admissible_lambda()) {
        prop_assert_eq!(verify_correspondence(&lambda).unwrap(), lambda.order() - 1);
    }

    #[test]
    fn flat_exactly_when_the_section_is_constant(lambda in admissible_lambda()) {
        let nabla = nabla_difference(&lambda).unwrap();
        let constant = lambda.derivative().unwrap().is_zero();
        prop_assert_eq!(nabla.coeff().is_zero(), constant);
        prop_assert_eq!(connection_difference(&lambda).unwrap().is_zero(), constant);
    }

    #[test]
    fn sections_meeting_the_diagonal_are_rejected(tail in proptest::collection::vec(coeff(), 5)) {
        let mut coeffs = vec![rat(0, 1)];
        coeffs.extend(tail);
        let lambda = PowerJet::new(coeffs);
        for err in [
            connection_difference(&lambda).map(|_| ()).unwrap_err(),
            nabla_difference(&lambda).map(|_| ()).unwrap_err(),
            section_difference(&lambda).map(|_| ()).unwrap_err(),
            verify_correspondence(&lambda).map(|_| ()).unwrap_err(),
        ] {
            prop_assert_eq!(err, ConnectionsError::SectionsIntersect);
        }
    }

    #[test]
    fn connection_difference_is_a_multiple_of_the_squared_offset(lambda in admissible_lambda()) {
        let omega = connection_difference(&lambda).unwrap();
        let k = omega.order();
        let w = PowerJet::identity(k + 1);
        prop_assert_eq!(
            omega.q1().clone(),
            w.mul(omega.q2()).scale(&rat(-2, 1)).truncated(k)
        );
        prop_assert_eq!(
            omega.q0().clone(),
            w.mul(&w).mul(omega.q2()).truncated(k)
        );
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(
        u in field(4), v in field(4), w in field(4),
    ) {
        prop_assert!(vf_bracket(&u, &v).add(&vf_bracket(&v, &u)).is_zero());
        let jacobi = vf_bracket(&u, &vf_bracket(&v, &w))
            .add(&vf_bracket(&v, &vf_bracket(&w, &u)))
            .add(&vf_bracket(&w, &vf_bracket(&u, &v)));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn bracket_is_additive_in_each_slot(u in field(4), v in field(4), w in field(4)) {
        let lhs = vf_bracket(&u.add(&v), &w);
        let rhs = vf_bracket(&u, &w).add(&vf_bracket(&v, &w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn serde_round_trips(v in field(3)) {
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<VFieldWSeries<Rational>>(&json).unwrap(), v);
    }
}
