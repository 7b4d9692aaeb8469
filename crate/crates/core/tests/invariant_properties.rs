use proptest::prelude::*;
use satcalc::diagrams::BraidWord;
use satcalc::groups::wirtinger;
use satcalc::invariants::{alexander_fox, seifert_matrix};
use satcalc::linalg::determinant;

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let letter = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
            prop::collection::vec(letter, 0..=14).prop_map(move |w| BraidWord::new(n, w).unwrap())
        })
        .prop_filter("knot closure", |b| b.closure_components() == 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn seifert_and_fox_alexander_agree(b in knot_braid()) {
        let v = seifert_matrix(&b).unwrap();
        let fox = alexander_fox(&wirtinger(&b.closure())).unwrap();
        prop_assert_eq!(v.alexander(), fox);
        let n = v.size();
        let skew: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| v.entries[i][j] - v.entries[j][i]).collect()).collect();
        prop_assert_eq!(determinant(&skew), 1.into());
    }

    #[test]
    fn braid_reduction_keeps_the_knot(b in knot_braid()) {
        let r = b.reduced();
        prop_assert!(r.letters.len() <= b.letters.len());
        prop_assert_eq!(seifert_matrix(&r).unwrap().alexander(), seifert_matrix(&b).unwrap().alexander());
        let w = satcalc::invariants::Angle::minus_one();
        prop_assert_eq!(
            satcalc::invariants::lt_signature(&seifert_matrix(&r).unwrap(), w).value,
            satcalc::invariants::lt_signature(&seifert_matrix(&b).unwrap(), w).value
        );
    }
}

mod signatures {
    use super::*;
    use satcalc::invariants::{knot_signature, lt_signature, Angle};

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

        #[test]
        fn diagram_route_matches_braid_route(b in knot_braid()) {
            let direct = lt_signature(&seifert_matrix(&b).unwrap(), Angle::minus_one());
            let d = b.closure();
            prop_assert_eq!(knot_signature(&d, Angle::minus_one()).unwrap().value, direct.value);
            let m = knot_signature(&d.mirror(), Angle::minus_one()).unwrap();
            prop_assert_eq!(m.value, -direct.value);
        }

        #[test]
        fn additive_under_connected_sum(a in knot_braid(), b in knot_braid()) {
            let (da, db) = (a.closure(), b.closure());
            let sum = da.connected_sum(&db).unwrap();
            let w = Angle::minus_one();
            let s = knot_signature(&sum, w).unwrap().value;
            prop_assert_eq!(s, knot_signature(&da, w).unwrap().value + knot_signature(&db, w).unwrap().value);
        }

        #[test]
        fn generic_angle_mirror_negates(b in knot_braid(), k in 1i64..12) {
            let w = Angle::new(k, 12).unwrap();
            let s = knot_signature(&b.closure(), w).unwrap();
            let m = knot_signature(&b.closure().mirror(), w).unwrap();
            prop_assert_eq!(s.on_jump, m.on_jump);
            if !s.on_jump {
                prop_assert_eq!(m.value, -s.value);
                prop_assert_eq!(s.value % 2, 0);
            }
        }
    }
}
