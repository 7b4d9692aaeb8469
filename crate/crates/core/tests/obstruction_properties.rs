use proptest::prelude::*;
use satcalc::diagrams::{BraidWord, Closure, MorseWord, Slice};
use satcalc::invariants::{fox_milnor_check, knot_alexander, knot_signature, Angle, FoxMilnor};
use satcalc::obstructions::{
    default_samples, distinguish_from_connected_sum, surjectivity_obstruction,
    unknot_image_reduction, ObstructionReport, ObstructionVerdict,
};
use satcalc::patterns::{apply, core, p_pattern, q_pattern, AnnularPattern};

fn knot_braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..=max_strands)
        .prop_flat_map(move |n| {
            let letter = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
            prop::collection::vec(letter, 0..=max_len)
                .prop_map(move |w| BraidWord::new(n, w).unwrap())
        })
        .prop_filter("knot closure", |b| b.closure_components() == 1)
}

fn unknot() -> MorseWord {
    MorseWord::new(1, Closure::Plane, vec![]).unwrap()
}

fn cable(twists: i64) -> AnnularPattern {
    let e = twists.signum() as i8;
    let slices = vec![Slice::Cross(1, e); twists.unsigned_abs() as usize];
    AnnularPattern::from_slices(2, slices, None).unwrap()
}

fn sig(k: &MorseWord) -> i64 {
    knot_signature(&k.to_pd(), Angle::minus_one())
        .unwrap()
        .value
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn connected_sum_operators_stay_unknown(j in knot_braid(3, 6)) {
        let q = q_pattern(&j.closure(), None).unwrap();
        let r = distinguish_from_connected_sum(&q).unwrap();
        prop_assert_eq!(r.verdict, ObstructionVerdict::Unknown);
    }

    #[test]
    fn reduction_adds_the_reversed_mirror(j in knot_braid(3, 5), k in knot_braid(2, 3)) {
        let p = p_pattern(0).unwrap();
        let r = unknot_image_reduction(&p, &j.to_morse()).unwrap();
        let k = k.to_morse();
        let pk = apply(&p, &k).unwrap();
        let image = apply(&r, &k).unwrap();
        let dj = knot_alexander(&j.closure()).unwrap();
        let expected = &dj * &knot_alexander(&pk.to_pd()).unwrap();
        prop_assert!(knot_alexander(&image.to_pd()).unwrap().eq_up_to_units(&expected));
        prop_assert_eq!(sig(&image), sig(&pk) - sig(&j.to_morse()));
    }

    #[test]
    fn reports_replay_after_serialization(j in knot_braid(3, 6), t in prop_oneof![Just(-3i64), Just(-1), Just(1), Just(3)]) {
        let r = surjectivity_obstruction(&cable(t), &j.to_morse(), &default_samples(12).unwrap()).unwrap();
        prop_assert_ne!(r.verdict, ObstructionVerdict::NotApplicable);
        let back: ObstructionReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert!(back.replay().is_ok());
    }
}

#[test]
fn reduction_of_the_image_of_the_unknot_is_slice_on_the_unknot() {
    for p in [p_pattern(0).unwrap(), cable(3), core()] {
        let j = apply(&p, &unknot()).unwrap();
        let r = unknot_image_reduction(&p, &j).unwrap();
        let d = knot_alexander(&apply(&r, &unknot()).unwrap().to_pd()).unwrap();
        assert!(
            matches!(fox_milnor_check(&d).unwrap(), FoxMilnor::Pass { .. }),
            "{p}: {d}"
        );
        assert_eq!(sig(&apply(&r, &unknot()).unwrap()), 0);
    }
}
