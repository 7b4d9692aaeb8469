use proptest::prelude::*;
use satcalc::diagrams::{BraidWord, Closure, MorseWord};
use satcalc::groups::normal_closure_member;
use satcalc::groups::tietze::DEFAULT_BUDGET;
use satcalc::invariants::{fox_milnor_pair, knot_alexander, FoxMilnor};
use satcalc::patterns::{apply, core, p_pattern, q_pattern};
use satcalc::surgery::{
    alexander_surgered, apply_surgered, apply_to_surgered, compose_surgered, cylinder_boundary_map,
    cylinder_h1, insert_twists, invert_pattern, linking_matrix, twisted_matrix,
    word_linking_matrix, SurgeredKnot,
};

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(letter, 0..=max_len).prop_map(move |w| BraidWord::new(n, w).unwrap())
    })
}

fn small_knot() -> impl Strategy<Value = MorseWord> {
    braid(3, 5)
        .prop_filter("knot", |b| b.closure_components() == 1)
        .prop_map(|b| b.to_morse())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn twist_insertion_rule(
        b in braid(4, 8),
        frames in prop::collection::vec(-3i64..=3, 4),
        pick in (0usize..100, 0usize..100, 0usize..100),
        t in prop_oneof![-2i64..=-1, 1i64..=2],
    ) {
        let w = b.to_morse();
        let tr = w.trace();
        let seeds: Vec<_> = tr.components.iter().map(|c| (c.start, c.start_up)).collect();
        let k = seeds.len();
        let framings = frames[..k].to_vec();
        let n = w.strands();
        let at = pick.0 % (w.len() + 1);
        let count = 2 + pick.1 % (n - 1);
        let first = 1 + pick.2 % (n - count + 1);

        let mut a = vec![0i64; k];
        let mut geometric = vec![0i64; k];
        for q in first..first + count {
            let c = tr.component_of((at, q)).unwrap();
            a[c] += if tr.is_up((at, q)).unwrap() { 1 } else { -1 };
            geometric[c] += 1;
        }
        let (w2, seeds2, framings2) = insert_twists(&w, &seeds, &framings, at, first, count, t).unwrap();
        let before = word_linking_matrix(&w, &seeds, &framings);
        let after = word_linking_matrix(&w2, &seeds2, &framings2);
        prop_assert_eq!(&after, &twisted_matrix(&before, &a, t));

        // the framing carried along is the blackboard one plus the old
        // offset plus one full turn per twisted strand
        let pd = w.to_pd_with(&tr);
        let pd2 = w2.to_pd_with(&w2.trace_with(&seeds2));
        for c in 0..k {
            let carried = pd2.self_writhe(c) + (framings[c] - pd.self_writhe(c)) + t * geometric[c];
            prop_assert_eq!(carried, framings2[c]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn inverse_of_core_acts_trivially(k in small_knot()) {
        let c = core();
        let inv = invert_pattern(&c, &normal_closure_member(&c, DEFAULT_BUDGET).unwrap()).unwrap();
        let sk = apply_surgered(&inv, &k).unwrap();
        prop_assert!(sk.ambient().is_homology_sphere());
        let d = alexander_surgered(&sk).unwrap();
        prop_assert_eq!(d, knot_alexander(&k.to_pd()).unwrap());
    }

    #[test]
    fn satellite_in_s3_agrees(k in small_knot()) {
        let q = q_pattern(&BraidWord::new(2, vec![1, 1, 1]).unwrap().closure(), None).unwrap();
        let sk = apply_to_surgered(&q, &SurgeredKnot::from_knot(&k).unwrap()).unwrap();
        let direct = knot_alexander(&apply(&q, &k).unwrap().to_pd()).unwrap();
        prop_assert_eq!(alexander_surgered(&sk).unwrap(), direct);
    }
}

#[test]
fn inverse_of_p1() {
    let p = p_pattern(1).unwrap();
    let inv = invert_pattern(&p, &normal_closure_member(&p, DEFAULT_BUDGET).unwrap()).unwrap();
    let m = linking_matrix(&inv.ambient());
    assert_eq!(m[0][0], 0);
    assert_eq!(m[1][1], 0);
    assert_eq!(m[0][1].abs(), 1);
    assert!(inv.ambient().is_homology_sphere());
    let both = compose_surgered(&p, &inv).unwrap();
    assert!(cylinder_boundary_map(&both).unwrap().is_identity());
    assert_eq!(cylinder_h1(&both).unwrap().to_string(), "Z^2");
    let u = MorseWord::new(1, Closure::Plane, vec![]).unwrap();
    let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap().to_morse();
    for k in [u, trefoil] {
        let back = apply_to_surgered(&p, &apply_surgered(&inv, &k).unwrap()).unwrap();
        let d = alexander_surgered(&back).unwrap();
        let dk = knot_alexander(&k.to_pd()).unwrap();
        assert!(
            matches!(fox_milnor_pair(&d, &dk).unwrap(), FoxMilnor::Pass { .. }),
            "{d}"
        );
    }
}
