use proptest::prelude::*;
use satcalc::diagrams::{simplify_reidemeister, BraidWord, Closure, MorseWord, Slice};
use satcalc::groups::wirtinger;
use satcalc::invariants::alexander_fox;

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| {
        let letter = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(letter, 0..=12).prop_map(move |w| BraidWord::new(n, w).unwrap())
    })
}

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    braid().prop_filter("knot closure", |b| b.closure_components() == 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn writhe_is_signed_crossing_count(b in braid()) {
        let m = b.to_morse();
        let signed: i64 = m.writhe();
        prop_assert_eq!(m.to_pd().writhe(), signed);
        let raw: i64 = m.slices().iter().filter_map(|s| match s {
            Slice::Cross(_, e) => Some(*e as i64),
            _ => None,
        }).sum();
        // braid closures have all strands oriented upwards
        prop_assert_eq!(raw, signed);
    }

    #[test]
    fn linking_symmetric_and_mirror_negates(b in braid()) {
        let d = b.closure();
        let n = d.component_count();
        let mr = d.mirror_reverse();
        for i in 0..n {
            for j in 0..n {
                if i == j { continue; }
                let l = d.linking_number(i, j).unwrap();
                prop_assert_eq!(l, d.linking_number(j, i).unwrap());
                prop_assert_eq!(mr.linking_number(i, j).unwrap(), -l);
            }
        }
    }

    #[test]
    fn simplification_preserves_alexander(b in knot_braid()) {
        let d = b.closure();
        let s = simplify_reidemeister(&d, 10_000);
        prop_assert!(s.crossing_count() <= d.crossing_count());
        prop_assert_eq!(s.component_count(), 1);
        let a = alexander_fox(&wirtinger(&d)).unwrap();
        let a2 = alexander_fox(&wirtinger(&s)).unwrap();
        prop_assert_eq!(a.eval_at_minus_one(), a2.eval_at_minus_one());
        prop_assert_eq!(a, a2);
    }

    #[test]
    fn simplification_preserves_link_homology(b in braid()) {
        let d = b.closure();
        let s = simplify_reidemeister(&d, 10_000);
        prop_assert_eq!(s.component_count(), d.component_count());
        prop_assert_eq!(wirtinger(&s).abelianization(), wirtinger(&d).abelianization());
        for i in 0..d.component_count() {
            for j in i + 1..d.component_count() {
                prop_assert_eq!(s.linking_number(i, j).unwrap(), d.linking_number(i, j).unwrap());
            }
        }
    }
}

#[test]
fn morse_word_with_caps_matches_braid_invariants() {
    // trefoil drawn with a cap/cup pair on the side
    let w: Vec<Slice> = ["cup 2", "x+ 1", "x+ 1", "x+ 1", "cap 2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let m = MorseWord::new(1, Closure::Plane, w).unwrap();
    let d = m.to_pd();
    assert_eq!(d.component_count(), 1);
    let a = alexander_fox(&wirtinger(&d)).unwrap();
    let t = alexander_fox(&wirtinger(
        &BraidWord::new(2, vec![1, 1, 1]).unwrap().closure(),
    ))
    .unwrap();
    assert_eq!(a, t);
}

fn morse_word() -> impl Strategy<Value = MorseWord> {
    (
        1usize..=3,
        prop::collection::vec((0u8..6, 0usize..8, any::<bool>()), 0..16),
    )
        .prop_map(|(n, ops)| {
            let mut m = n;
            let mut slices = Vec::new();
            for (op, p, sign) in ops {
                match op {
                    0..=2 if m >= 2 => {
                        slices.push(Slice::Cross(1 + p % (m - 1), if sign { 1 } else { -1 }))
                    }
                    3 if m >= 2 && m > n => {
                        slices.push(Slice::Cap(1 + p % (m - 1)));
                        m -= 2;
                    }
                    4 | 5 if m < 6 => {
                        slices.push(Slice::Cup(1 + p % (m + 1)));
                        m += 2;
                    }
                    _ => {}
                }
            }
            while m > n {
                slices.push(Slice::Cap(m - 1));
                m -= 2;
            }
            MorseWord::new(n, Closure::Plane, slices).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn vogel_preserves_link_invariants(w in morse_word()) {
        let d = w.to_pd();
        let b = satcalc::diagrams::vogel_to_braid(&d);
        let c = b.closure();
        prop_assert_eq!(c.component_count(), d.component_count());
        prop_assert_eq!(c.writhe(), d.writhe());
        let (gd, gc) = (wirtinger(&d), wirtinger(&c));
        prop_assert_eq!(gd.abelianization(), gc.abelianization());
        if d.component_count() == 1 {
            prop_assert_eq!(alexander_fox(&gd).unwrap(), alexander_fox(&gc).unwrap());
        }
    }
}
