//! Wirtinger presentations and peripheral words.
//!
//! One generator per over-arc (maximal arc between undercrossings), ordered by
//! smallest PD label; a crossingless circle is its own generator. At a crossing
//! of sign `e` with over generator `o`, incoming under `a` and outgoing under
//! `b` the relation is `b = o^e a o^-e`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::diagrams::PDCode;
use crate::error::{Error, Result};
use crate::groups::presentation::{free_reduce, GroupPresentation, Word};

/// Presentation together with the generator of each PD arc.
#[derive(Clone, Debug)]
pub struct Wirtinger {
    pub group: GroupPresentation,
    pub arc_generator: HashMap<usize, usize>,
}

impl Wirtinger {
    /// Signed letter for the meridian around arc `a`.
    pub fn letter(&self, a: usize) -> i32 {
        self.arc_generator[&a] as i32 + 1
    }
}

fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
    let mut r = x;
    while p[&r] != r {
        r = p[&r];
    }
    let mut y = x;
    while p[&y] != r {
        let n = p[&y];
        p.insert(y, r);
        y = n;
    }
    r
}

pub fn wirtinger_data(d: &PDCode) -> Wirtinger {
    let mut parent: HashMap<usize, usize> = HashMap::new();
    for &a in d.components().iter().flatten() {
        parent.insert(a, a);
    }
    for c in d.crossings() {
        let (x, y) = (find(&mut parent, c[1]), find(&mut parent, c[3]));
        if x != y {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            parent.insert(hi, lo);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut arcs: Vec<usize> = parent.keys().copied().collect();
    arcs.sort();
    for a in arcs {
        let r = find(&mut parent, a);
        classes.entry(r).or_default().push(a);
    }
    let mut arc_generator = HashMap::new();
    for (g, members) in classes.values().enumerate() {
        for &a in members {
            arc_generator.insert(a, g);
        }
    }
    let n = classes.len();
    let (pieces, _) = d.pieces();
    let mut dropped = vec![false; d.crossing_count()];
    for piece in &pieces {
        if let Some(&k) = piece.iter().max() {
            dropped[k] = true;
        }
    }
    let l = |a: usize| arc_generator[&a] as i32 + 1;
    let mut relators = Vec::new();
    for (k, c) in d.crossings().iter().enumerate() {
        if dropped[k] {
            continue;
        }
        let e = d.signs()[k] as i32;
        let (a, b, o) = (l(c[0]), l(c[2]), l(c[1]) * e);
        relators.push(free_reduce(&[o, a, -o, -b]));
    }
    Wirtinger {
        group: GroupPresentation::with_count(n, relators),
        arc_generator,
    }
}

pub fn wirtinger(d: &PDCode) -> GroupPresentation {
    wirtinger_data(d).group
}

/// Meridian generator of component `c`, at its first arc.
pub fn meridian_word(d: &PDCode, c: usize) -> Result<Word> {
    let comp = d.components().get(c).ok_or(Error::UnknownComponent(c))?;
    let w = wirtinger_data(d);
    Ok(vec![w.letter(comp[0])])
}

/// 0-framed longitude of component `c`, based at its first arc. Commutes with
/// `meridian_word(d, c)`.
pub fn longitude_word(d: &PDCode, c: usize) -> Result<Word> {
    let w = wirtinger_data(d);
    longitude_in(d, &w, c)
}

pub(crate) fn longitude_in(d: &PDCode, w: &Wirtinger, c: usize) -> Result<Word> {
    let comp = d.components().get(c).ok_or(Error::UnknownComponent(c))?;
    let ends = d.arc_ends();
    let mut rev: Vec<i32> = Vec::new();
    for a in comp {
        if let Some(e) = ends.get(a) {
            let (k, s) = e.head;
            if s == 0 {
                rev.push(w.letter(d.crossings()[k][1]) * d.signs()[k] as i32);
            }
        }
    }
    rev.reverse();
    let m = w.letter(comp[0]);
    let sw = d.self_writhe(c);
    rev.extend(std::iter::repeat_n(if sw > 0 { -m } else { m }, sw.unsigned_abs() as usize));
    Ok(free_reduce(&rev))
}

/// The four peripheral curves of a pattern, as words in the Wirtinger group of
/// its two-component link (pattern knot, then the axis circle).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveWords {
    pub m_p: Word,
    pub l_p: Word,
    pub m_v: Word,
    pub l_v: Word,
}

impl CurveWords {
    /// `knot` and `axis` are component indices of `d`.
    pub fn from_link(d: &PDCode, knot: usize, axis: usize) -> Result<(GroupPresentation, Self)> {
        let w = wirtinger_data(d);
        let kc = d
            .components()
            .get(knot)
            .ok_or(Error::UnknownComponent(knot))?;
        let ac = d
            .components()
            .get(axis)
            .ok_or(Error::UnknownComponent(axis))?;
        let words = CurveWords {
            m_p: vec![w.letter(kc[0])],
            l_p: longitude_in(d, &w, knot)?,
            l_v: vec![w.letter(ac[0])],
            m_v: longitude_in(d, &w, axis)?,
        };
        Ok((w.group, words))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BraidWord;
    use crate::groups::presentation::exponent_sums;

    #[test]
    fn unknot_and_hopf() {
        let g = wirtinger(&PDCode::unknot());
        assert_eq!(g.generator_count(), 1);
        assert!(g.relators.is_empty());
        let hopf = BraidWord::new(2, vec![1, 1]).unwrap().closure();
        assert_eq!(wirtinger(&hopf).abelianization().to_string(), "Z^2");
        assert_eq!(
            longitude_word(&PDCode::unknot(), 0).unwrap(),
            Vec::<i32>::new()
        );
    }

    #[test]
    fn trefoil_abelianization() {
        let t = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        let g = wirtinger(&t);
        assert_eq!(g.generator_count(), 3);
        assert_eq!(g.relators.len(), 2);
        assert_eq!(g.abelianization().to_string(), "Z");
        let l = longitude_word(&t, 0).unwrap();
        assert_eq!(exponent_sums(&l, 3).iter().sum::<i64>(), 0);
    }

    #[test]
    fn longitude_counts_linking() {
        let d = BraidWord::new(3, vec![1, 1, 2, -1, 2, 2, 2])
            .unwrap()
            .closure();
        let w = wirtinger_data(&d);
        for c in 0..d.component_count() {
            let l = longitude_in(&d, &w, c).unwrap();
            let sums = exponent_sums(&l, w.group.generator_count());
            for o in 0..d.component_count() {
                let total: i64 = d.components()[o]
                    .iter()
                    .map(|a| w.arc_generator[a])
                    .collect::<std::collections::BTreeSet<_>>()
                    .iter()
                    .map(|&g| sums[g])
                    .sum();
                let expect = if o == c {
                    0
                } else {
                    d.linking_number(c, o).unwrap()
                };
                assert_eq!(total, expect, "component {c} vs {o}");
            }
        }
    }
}
