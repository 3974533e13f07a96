//! Property tests for branched jets, their classes, the stabilizer action,
//! and the affine structure on classes.

use proptest::prelude::*;

use jetmoeb_core::branching::{
    act_on_branched, class_from_affine_jet, class_of, diff_classes, divisor_diff,
    divisor_translate, h_act, normal_form, postcompose_germ, translate_class, BranchedJet,
    BranchingClass, ClassDelta, DiffMode, DivisorClassData, OneFormDelta, QuadDiffDelta,
};
use jetmoeb_core::fuchs::{d_map, d_map_inverse, s_map, s_map_inverse};
use jetmoeb_core::moebius::{Moebius, PointCP1};
use jetmoeb_core::series::{rat, rat_int, ComplexExact, PowerJet, Rational};

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_coeff() -> impl Strategy<Value = Rational> {
    (prop_oneof![1i64..=9, -9i64..=-1], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn point() -> impl Strategy<Value = PointCP1<Rational>> {
    prop_oneof![
        3 => coeff().prop_map(PointCP1::Finite),
        1 => Just(PointCP1::Infinity),
    ]
}

/// Branched jet with minimal window (length n + 2), any chart.
fn branched_jet() -> impl Strategy<Value = BranchedJet<Rational>> {
    (1usize..=4).prop_flat_map(|n| {
        (
            point(),
            nonzero_coeff(),
            proptest::collection::vec(coeff(), n + 1),
        )
            .prop_map(move |(value, lead, rest)| {
                let mut a = vec![lead];
                a.extend(rest);
                BranchedJet::new(n, value, a).unwrap()
            })
    })
}

/// Branched jet with value 0, the domain of the stabilizer action.
fn jet_at_zero() -> impl Strategy<Value = BranchedJet<Rational>> {
    (1usize..=4).prop_flat_map(|n| {
        (nonzero_coeff(), proptest::collection::vec(coeff(), n + 1)).prop_map(
            move |(lead, rest)| {
                let mut a = vec![lead];
                a.extend(rest);
                BranchedJet::new(n, PointCP1::Finite(rat_int(0)), a).unwrap()
            },
        )
    })
}

fn class(n: usize) -> impl Strategy<Value = BranchingClass<Rational>> {
    proptest::collection::vec(coeff(), n)
        .prop_map(move |c| BranchingClass::new(n, c).unwrap())
}

fn any_class() -> impl Strategy<Value = (usize, BranchingClass<Rational>)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), class(n)))
}

fn moebius() -> impl Strategy<Value = Moebius<Rational>> {
    (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5)
        .prop_filter_map("degenerate matrix", |(a, b, c, d)| {
            Moebius::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d)).ok()
        })
}

fn delta(n: usize) -> impl Strategy<Value = ClassDelta<Rational>> {
    (proptest::collection::vec(coeff(), n), proptest::bool::ANY).prop_map(move |(v, one_form)| {
        if one_form {
            ClassDelta::OneForm(OneFormDelta { n, eta: v })
        } else {
            ClassDelta::QuadDiff(QuadDiffDelta { n, beta: v })
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h_act_is_a_group_action(
        j in jet_at_zero(),
        a1 in nonzero_coeff(), g1 in coeff(), d1 in nonzero_coeff(),
        a2 in nonzero_coeff(), g2 in coeff(), d2 in nonzero_coeff(),
    ) {
        let stepwise = h_act(&a2, &g2, &d2, &h_act(&a1, &g1, &d1, &j).unwrap()).unwrap();
        let product = h_act(
            &(a2.clone() * a1.clone()),
            &(g2 * a1 + d2.clone() * g1),
            &(d2 * d1),
            &j,
        )
        .unwrap();
        prop_assert_eq!(stepwise, product);
        prop_assert_eq!(h_act(&rat_int(1), &rat_int(0), &rat_int(1), &j).unwrap(), j);
    }

    #[test]
    fn h_act_inverts(j in jet_at_zero(), a in nonzero_coeff(), g in coeff(), d in nonzero_coeff()) {
        let moved = h_act(&a, &g, &d, &j).unwrap();
        let back = h_act(&d, &(-g), &a, &moved).unwrap();
        prop_assert_eq!(back, j);
    }

    #[test]
    fn class_is_invariant_under_the_stabilizer(
        j in jet_at_zero(),
        a in nonzero_coeff(), g in coeff(), d in nonzero_coeff(),
    ) {
        prop_assert_eq!(class_of(&h_act(&a, &g, &d, &j).unwrap()), class_of(&j));
    }

    #[test]
    fn class_is_moebius_invariant(j in branched_jet(), g in moebius()) {
        let moved = act_on_branched(&g, &j).unwrap();
        prop_assert_eq!(class_of(&moved), class_of(&j));
        let back = act_on_branched(&g.inverse(), &moved).unwrap();
        prop_assert_eq!(back, j);
    }

    #[test]
    fn class_is_invariant_under_biholo_postcomposition(
        j in branched_jet(),
        c0 in coeff(),
        c1 in nonzero_coeff(),
        tail in proptest::collection::vec(coeff(), 9),
    ) {
        let mut coeffs = vec![c0, c1];
        coeffs.extend(tail);
        let phi = PowerJet::new(coeffs);
        let moved = postcompose_germ(&j, &phi).unwrap();
        prop_assert_eq!(class_of(&moved), class_of(&j));
    }

    #[test]
    fn normal_form_represents_its_class(nc in any_class()) {
        let (_, c) = nc;
        let nf = normal_form(&c);
        prop_assert_eq!(class_of(&nf), c);
        prop_assert_eq!(&nf.coeffs()[0], &rat_int(1));
        prop_assert_eq!(nf.coeffs().last().unwrap(), &rat_int(0));
    }

    #[test]
    fn class_from_affine_jet_matches_the_windowed_reading(j in jet_at_zero()) {
        let f = j.to_power_jet();
        prop_assert_eq!(class_from_affine_jet(&f, j.n()).unwrap(), class_of(&j));
    }

    #[test]
    fn diff_and_translate_form_a_torsor(
        nced in (1usize..=4).prop_flat_map(|n| (Just(n), class(n), class(n), class(n))),
        mode in prop_oneof![Just(DiffMode::PreSchwarzian), Just(DiffMode::Schwarzian)],
    ) {
        let (_, c, d, e) = nced;
        let dc = diff_classes(&d, &c, mode).unwrap();
        prop_assert_eq!(translate_class(&c, &dc).unwrap(), d.clone());
        let zero = diff_classes(&c, &c, mode).unwrap();
        prop_assert!(zero.components().iter().all(|x| x == &rat_int(0)));
        let ed = diff_classes(&e, &d, mode).unwrap();
        let ec = diff_classes(&e, &c, mode).unwrap();
        prop_assert_eq!(ed.add(&dc).unwrap(), ec);
    }

    #[test]
    fn translation_is_additive(
        ncd in (1usize..=4).prop_flat_map(|n| (Just(n), class(n), delta(n))),
        v in proptest::collection::vec(coeff(), 4),
    ) {
        let (n, c, d1) = ncd;
        let d2 = match &d1 {
            ClassDelta::OneForm(_) => ClassDelta::OneForm(OneFormDelta {
                n,
                eta: v[..n].to_vec(),
            }),
            ClassDelta::QuadDiff(_) => ClassDelta::QuadDiff(QuadDiffDelta {
                n,
                beta: v[..n].to_vec(),
            }),
        };
        let stepwise = translate_class(&translate_class(&c, &d1).unwrap(), &d2).unwrap();
        let joint = translate_class(&c, &d1.add(&d2).unwrap()).unwrap();
        prop_assert_eq!(stepwise, joint);
    }

    #[test]
    fn d_and_s_maps_are_bijections(nc in any_class(), v in proptest::collection::vec(coeff(), 4)) {
        let (n, c) = nc;
        prop_assert_eq!(d_map_inverse(n, &d_map(&c)), c.clone());
        prop_assert_eq!(s_map_inverse(n, &s_map(&c)).unwrap(), c);
        let data = &v[..n];
        prop_assert_eq!(d_map(&d_map_inverse(n, data)), data.to_vec());
        prop_assert_eq!(s_map(&s_map_inverse(n, data).unwrap()), data.to_vec());
    }

    #[test]
    fn divisor_operations_work_pointwise(
        classes in proptest::collection::vec(any_class(), 1..=3),
        other in proptest::collection::vec(any_class(), 3),
        mode in prop_oneof![Just(DiffMode::PreSchwarzian), Just(DiffMode::Schwarzian)],
    ) {
        let from = DivisorClassData::new(
            classes
                .iter()
                .enumerate()
                .map(|(i, (_, c))| (format!("p{i}"), c.clone()))
                .collect(),
        )
        .unwrap();
        // Rebuild the target over the same labels and orders.
        let to = DivisorClassData::new(
            classes
                .iter()
                .enumerate()
                .map(|(i, (n, _))| {
                    let coords = other[i].1.coords()[..(*n).min(other[i].0)].to_vec();
                    let mut padded = coords;
                    padded.resize(*n, rat_int(0));
                    (format!("p{i}"), BranchingClass::new(*n, padded).unwrap())
                })
                .collect(),
        )
        .unwrap();
        let d = divisor_diff(&to, &from, mode).unwrap();
        prop_assert_eq!(d.dimension(), classes.iter().map(|(n, _)| n).sum::<usize>());
        prop_assert_eq!(divisor_translate(&from, &d).unwrap(), to);
    }

    #[test]
    fn serde_round_trips(j in branched_jet(), nc in any_class(), d in (1usize..=4).prop_flat_map(delta)) {
        let json = serde_json::to_string(&j).unwrap();
        prop_assert_eq!(serde_json::from_str::<BranchedJet<Rational>>(&json).unwrap(), j);
        let (_, c) = nc;
        let json = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<BranchingClass<Rational>>(&json).unwrap(), c);
        let json = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClassDelta<Rational>>(&json).unwrap(), d);
    }
}

#[test]
fn complex_serde_round_trips() {
    let to_complex = |r: &Rational| ComplexExact::new(r.clone(), rat(1, 3));
    let j = BranchedJet::new(
        2,
        PointCP1::Finite(to_complex(&rat(5, 2))),
        vec![
            to_complex(&rat_int(2)),
            to_complex(&rat(-1, 4)),
            to_complex(&rat_int(0)),
            to_complex(&rat(7, 3)),
        ],
    )
    .unwrap();
    let json = serde_json::to_string(&j).unwrap();
    let back: BranchedJet<ComplexExact> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, j);

    let c = BranchingClass::new(2, vec![to_complex(&rat(3, 2)), to_complex(&rat_int(-1))]).unwrap();
    let json = serde_json::to_string(&c).unwrap();
    let back: BranchingClass<ComplexExact> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, c);

    let d: ClassDelta<ComplexExact> = ClassDelta::QuadDiff(QuadDiffDelta {
        n: 2,
        beta: vec![to_complex(&rat(1, 2)), to_complex(&rat_int(4))],
    });
    let json = serde_json::to_string(&d).unwrap();
    let back: ClassDelta<ComplexExact> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, d);
}
