//! Best-effort diagram simplification by Reidemeister moves.

use std::collections::{HashMap, HashSet};

use super::pd::PDCode;

pub const DEFAULT_BUDGET: usize = 10_000;

/// Deepest chain of R3 moves tried while looking for a reducing move.
const R3_DEPTH: usize = 3;

/// Greedy R1/R2 reduction interleaved with a bounded breadth-first search over
/// R3 moves. Never increases the crossing count; deterministic.
pub fn simplify_reidemeister(d: &PDCode, budget: usize) -> PDCode {
    let mut cur = d.relabeled();
    let mut moves = 0usize;
    loop {
        while moves < budget {
            if let Some(next) = reduce_once(&cur) {
                cur = next;
                moves += 1;
            } else {
                break;
            }
        }
        if moves >= budget || cur.crossing_count() < 3 {
            return cur;
        }
        match search_r3(&cur, budget, &mut moves) {
            Some(next) => cur = next,
            None => return cur,
        }
    }
}

fn reduce_once(d: &PDCode) -> Option<PDCode> {
    if let Some(k) = find_r1(d) {
        return Some(remove_crossings(d, &[k]));
    }
    find_r2(d).map(|(a, b)| remove_crossings(d, &[a, b]))
}

fn search_r3(start: &PDCode, budget: usize, moves: &mut usize) -> Option<PDCode> {
    let mut seen: HashSet<(Vec<[usize; 4]>, Vec<i8>)> = HashSet::new();
    seen.insert(key(start));
    let mut frontier = vec![start.clone()];
    for _ in 0..R3_DEPTH {
        let mut next = Vec::new();
        for state in &frontier {
            for tri in r3_sites(state) {
                if *moves >= budget {
                    return None;
                }
                *moves += 1;
                let Some(moved) = apply_r3(state, &tri) else {
                    continue;
                };
                if find_r1(&moved).is_some() || find_r2(&moved).is_some() {
                    return Some(moved);
                }
                if seen.insert(key(&moved)) {
                    next.push(moved);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

fn key(d: &PDCode) -> (Vec<[usize; 4]>, Vec<i8>) {
    let r = d.relabeled();
    let mut pairs: Vec<([usize; 4], i8)> = r
        .crossings()
        .iter()
        .copied()
        .zip(r.signs().iter().copied())
        .collect();
    pairs.sort();
    pairs.into_iter().unzip()
}

/// A crossing with an arc joining two adjacent slots (a kink).
fn find_r1(d: &PDCode) -> Option<usize> {
    d.crossings()
        .iter()
        .position(|c| (0..4).any(|s| c[s] == c[(s + 1) % 4]))
}

/// Two crossings bounding a bigon face with the same strand over at both.
fn find_r2(d: &PDCode) -> Option<(usize, usize)> {
    let oe = d.other_end_map();
    for face in d.faces() {
        if face.len() != 2 {
            continue;
        }
        let (k1, s1) = face[0];
        let (k2, s2) = oe[&(k1, s1)];
        if k1 != k2 && s1 % 2 == s2 % 2 {
            return Some((k1.min(k2), k1.max(k2)));
        }
    }
    None
}

/// Deletes crossings whose strands can be pulled apart, merging arcs through
/// them. Components left without crossings become crossingless circles.
fn remove_crossings(d: &PDCode, ks: &[usize]) -> PDCode {
    let mut parent: HashMap<usize, usize> = HashMap::new();
    fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        r
    }
    fn union(p: &mut HashMap<usize, usize>, a: usize, b: usize) {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p.insert(ra.max(rb), ra.min(rb));
        }
    }
    for &k in ks {
        let c = d.crossings()[k];
        union(&mut parent, c[0], c[2]);
        union(&mut parent, c[1], c[3]);
    }
    let mut crossings = Vec::new();
    let mut signs = Vec::new();
    for (k, c) in d.crossings().iter().enumerate() {
        if !ks.contains(&k) {
            crossings.push(c.map(|a| find(&mut parent, a)));
            signs.push(d.signs()[k]);
        }
    }
    let components = d
        .components()
        .iter()
        .map(|comp| {
            let mut out: Vec<usize> = Vec::new();
            for &a in comp {
                let r = find(&mut parent, a);
                if out.last() != Some(&r) {
                    out.push(r);
                }
            }
            while out.len() > 1 && out.first() == out.last() {
                out.pop();
            }
            out
        })
        .collect();
    PDCode::from_parts_unchecked(crossings, signs, components).relabeled()
}

/// Triangle faces (as dart triples) admitting an R3 move.
fn r3_sites(d: &PDCode) -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for face in d.faces() {
        if face.len() != 3 {
            continue;
        }
        let ks: Vec<usize> = face.iter().map(|e| e.0).collect();
        if ks[0] == ks[1] || ks[1] == ks[2] || ks[0] == ks[2] {
            continue;
        }
        // edge i runs from face[i] to the crossing of face[i+1] at slot s+1
        let over_both = (0..3).any(|i| face[i].1 % 2 == 1 && (face[(i + 1) % 3].1 + 1) % 2 == 1);
        if over_both {
            out.push([face[0], face[1], face[2]]);
        }
    }
    out
}

/// Slides one strand of a triangle across the opposite crossing. Returns
/// `None` if the rebuilt diagram fails validation or planarity.
fn apply_r3(d: &PDCode, tri: &[(usize, usize); 3]) -> Option<PDCode> {
    let ends = d.arc_ends();
    struct Strand {
        input: usize,
        mid: usize,
        output: usize,
        first: usize,
        second: usize,
        over_at_first: bool,
        over_at_second: bool,
    }
    let strands: Vec<Strand> = tri
        .iter()
        .map(|&(k, s)| {
            let mid = d.crossings()[k][s];
            let e = ends[&mid];
            let (kt, st) = e.tail;
            let (kh, sh) = e.head;
            Strand {
                input: d.crossings()[kt][(st + 2) % 4],
                mid,
                output: d.crossings()[kh][(sh + 2) % 4],
                first: kt,
                second: kh,
                over_at_first: st % 2 == 1,
                over_at_second: sh % 2 == 1,
            }
        })
        .collect();
    let mut crossings = d.crossings().to_vec();
    for &(k, _) in tri {
        // (in, out, over) for each strand through k after the move
        let mut ends_here: Vec<(usize, usize, bool)> = Vec::new();
        for st in &strands {
            if st.first == k {
                ends_here.push((st.mid, st.output, st.over_at_first));
            } else if st.second == k {
                ends_here.push((st.input, st.mid, st.over_at_second));
            }
        }
        if ends_here.len() != 2 || ends_here[0].2 == ends_here[1].2 {
            return None;
        }
        let (o, u) = if ends_here[0].2 {
            (ends_here[0], ends_here[1])
        } else {
            (ends_here[1], ends_here[0])
        };
        crossings[k] = if d.signs()[k] > 0 {
            [u.0, o.1, u.1, o.0]
        } else {
            [u.0, o.0, u.1, o.1]
        };
    }
    let moved = PDCode::from_parts(crossings, d.signs().to_vec(), d.components().to_vec()).ok()?;
    let (pieces, _) = moved.pieces();
    if moved.faces().len() != moved.crossing_count() + 2 * pieces.len() {
        return None;
    }
    Some(moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BraidWord;

    fn closure(n: usize, w: Vec<i32>) -> PDCode {
        BraidWord::new(n, w).unwrap().closure()
    }

    #[test]
    fn kink_and_clasp_vanish() {
        let kink = closure(2, vec![1]);
        assert_eq!(
            simplify_reidemeister(&kink, DEFAULT_BUDGET).crossing_count(),
            0
        );
        let clasp = closure(2, vec![1, -1]);
        let s = simplify_reidemeister(&clasp, DEFAULT_BUDGET);
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn knots_keep_crossings() {
        let t = closure(2, vec![1, 1, 1]);
        assert_eq!(
            simplify_reidemeister(&t, DEFAULT_BUDGET).crossing_count(),
            3
        );
        let f = closure(3, vec![1, -2, 1, -2]);
        assert_eq!(
            simplify_reidemeister(&f, DEFAULT_BUDGET).crossing_count(),
            4
        );
    }

    #[test]
    fn r3_unlocks_reduction() {
        // s1 s2 s1 s2^-1 s1^-1 s2^-1 is trivial but has no R1/R2 site
        let d = closure(3, vec![1, 2, 1, -2, -1, -2]);
        assert!(reduce_once(&d).is_none());
        assert!(!r3_sites(&d).is_empty());
        let s = simplify_reidemeister(&d, DEFAULT_BUDGET);
        assert!(s.crossing_count() < 6, "{}", s.crossing_count());
        assert_eq!(s.component_count(), d.component_count());
    }

    #[test]
    fn budget_zero_is_identity() {
        let d = closure(2, vec![1, -1, 1]);
        assert_eq!(simplify_reidemeister(&d, 0).crossing_count(), 3);
    }
}
