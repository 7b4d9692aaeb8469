//! Planar diagram codes.
//!
//! Each crossing is a 4-tuple of arc labels listed counterclockwise starting
//! at the incoming under-arc, so slot 0 is incoming and slot 2 outgoing on the
//! under-strand. The direction of the over-strand is stored explicitly as the
//! crossing sign: for a positive crossing the over-strand enters at slot 3 and
//! leaves at slot 1, for a negative crossing the reverse.
//!
//! Components are ordered lists of arcs in the direction of travel. An arc
//! that meets no crossing is a crossingless circle (it occurs in no tuple).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A crossing end: `(crossing index, slot)`.
pub type Endpoint = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PDCode {
    crossings: Vec<[usize; 4]>,
    signs: Vec<i8>,
    components: Vec<Vec<usize>>,
}

/// Tail and head crossing ends of an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcEnds {
    pub tail: Endpoint,
    pub head: Endpoint,
}

impl PDCode {
    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self {
            crossings: vec![],
            signs: vec![],
            components: vec![vec![1]],
        }
    }

    pub fn from_parts(
        crossings: Vec<[usize; 4]>,
        signs: Vec<i8>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let pd = Self {
            crossings,
            signs,
            components,
        };
        pd.validate()?;
        Ok(pd)
    }

    pub(crate) fn from_parts_unchecked(
        crossings: Vec<[usize; 4]>,
        signs: Vec<i8>,
        components: Vec<Vec<usize>>,
    ) -> Self {
        let pd = Self {
            crossings,
            signs,
            components,
        };
        debug_assert!(pd.validate().is_ok(), "{:?}", pd.validate());
        pd
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPd(m));
        if self.signs.len() != self.crossings.len() {
            return bad(format!(
                "{} signs for {} crossings",
                self.signs.len(),
                self.crossings.len()
            ));
        }
        if let Some(s) = self.signs.iter().find(|&&s| s != 1 && s != -1) {
            return bad(format!("crossing sign {s}"));
        }
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for c in &self.crossings {
            for &a in c {
                *count.entry(a).or_default() += 1;
            }
        }
        if let Some((a, n)) = count.iter().find(|(_, &n)| n != 2) {
            return bad(format!("arc {a} occurs {n} times"));
        }
        let mut listed = BTreeSet::new();
        for comp in &self.components {
            if comp.is_empty() {
                return bad("empty component".into());
            }
            for &a in comp {
                if !listed.insert(a) {
                    return bad(format!("arc {a} listed in two components"));
                }
                if !count.contains_key(&a) && comp.len() != 1 {
                    return bad(format!(
                        "crossingless arc {a} in a component with crossings"
                    ));
                }
            }
        }
        if let Some(a) = count.keys().find(|a| !listed.contains(a)) {
            return bad(format!("arc {a} belongs to no component"));
        }
        let ends = self.arc_ends_checked()?;
        for comp in &self.components {
            if comp.len() == 1 && !count.contains_key(&comp[0]) {
                continue;
            }
            for (i, &a) in comp.iter().enumerate() {
                let next = comp[(i + 1) % comp.len()];
                let (k, s) = ends[&a].head;
                if self.crossings[k][(s + 2) % 4] != next {
                    return bad(format!("arc {a} is not followed by arc {next}"));
                }
            }
        }
        Ok(())
    }

    /// Whether slot `s` of crossing `k` is an incoming end.
    pub fn is_incoming(&self, k: usize, s: usize) -> bool {
        match s {
            0 => true,
            2 => false,
            3 => self.signs[k] > 0,
            _ => self.signs[k] < 0,
        }
    }

    fn arc_ends_checked(&self) -> Result<HashMap<usize, ArcEnds>> {
        let mut tails: HashMap<usize, Endpoint> = HashMap::new();
        let mut heads: HashMap<usize, Endpoint> = HashMap::new();
        for (k, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.iter().enumerate() {
                let slot = if self.is_incoming(k, s) {
                    &mut heads
                } else {
                    &mut tails
                };
                if slot.insert(a, (k, s)).is_some() {
                    return Err(Error::InvalidPd(format!(
                        "arc {a} has inconsistent orientation"
                    )));
                }
            }
        }
        let mut out = HashMap::new();
        for (a, tail) in tails {
            let head = *heads
                .get(&a)
                .ok_or_else(|| Error::InvalidPd(format!("arc {a} has no head")))?;
            out.insert(a, ArcEnds { tail, head });
        }
        if out.len() != heads.len() {
            return Err(Error::InvalidPd("arc with two heads".into()));
        }
        Ok(out)
    }

    /// Tail and head ends of every arc meeting a crossing.
    pub fn arc_ends(&self) -> HashMap<usize, ArcEnds> {
        self.arc_ends_checked().expect("validated PD")
    }

    /// Arc label -> component index.
    pub fn arc_components(&self) -> HashMap<usize, usize> {
        let mut m = HashMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for &a in c {
                m.insert(a, i);
            }
        }
        m
    }

    /// Components of the under- and over-strands at each crossing.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let ac = self.arc_components();
        self.crossings
            .iter()
            .map(|c| (ac[&c[0]], ac[&c[1]]))
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Sum of the signs of crossings of component `c` with itself.
    pub fn self_writhe(&self, c: usize) -> i64 {
        self.crossing_components()
            .iter()
            .zip(&self.signs)
            .filter(|((u, o), _)| *u == c && *o == c)
            .map(|(_, &s)| s as i64)
            .sum()
    }

    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64> {
        let n = self.components.len();
        for c in [a, b] {
            if c >= n {
                return Err(Error::UnknownComponent(c));
            }
        }
        if a == b {
            return Err(Error::InvalidParameter(
                "linking number of a component with itself".into(),
            ));
        }
        let total: i64 = self
            .crossing_components()
            .iter()
            .zip(&self.signs)
            .filter(|((u, o), _)| (*u == a && *o == b) || (*u == b && *o == a))
            .map(|(_, &s)| s as i64)
            .sum();
        Ok(total / 2)
    }

    /// Mirror image: every crossing switched, orientations kept.
    pub fn mirror(&self) -> Self {
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (c, &s) in self.crossings.iter().zip(&self.signs) {
            // the old over-strand's incoming end becomes slot 0
            let r = if s > 0 { 3 } else { 1 };
            crossings.push([c[r], c[(r + 1) % 4], c[(r + 2) % 4], c[(r + 3) % 4]]);
        }
        let signs = self.signs.iter().map(|s| -s).collect();
        Self::from_parts_unchecked(crossings, signs, self.components.clone())
    }

    /// All orientations reversed.
    pub fn reverse(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| [c[2], c[3], c[0], c[1]])
            .collect();
        let components = self.components.iter().map(|c| reversed_cycle(c)).collect();
        Self::from_parts_unchecked(crossings, self.signs.clone(), components)
    }

    pub fn mirror_reverse(&self) -> Self {
        self.reverse().mirror()
    }

    /// Orientation of component `c` reversed.
    pub fn reverse_component(&self, c: usize) -> Result<Self> {
        if c >= self.components.len() {
            return Err(Error::UnknownComponent(c));
        }
        let cc = self.crossing_components();
        let mut crossings = self.crossings.clone();
        let mut signs = self.signs.clone();
        for (k, &(u, o)) in cc.iter().enumerate() {
            if u == c {
                let x = crossings[k];
                crossings[k] = [x[2], x[3], x[0], x[1]];
                signs[k] = -signs[k];
            }
            if o == c {
                signs[k] = -signs[k];
            }
        }
        let mut components = self.components.clone();
        components[c] = reversed_cycle(&components[c]);
        Ok(Self::from_parts_unchecked(crossings, signs, components))
    }

    /// Arc labels renumbered `1..` in component order.
    pub fn relabeled(&self) -> Self {
        let mut map = HashMap::new();
        let mut next = 1usize;
        for c in &self.components {
            for &a in c {
                map.insert(a, next);
                next += 1;
            }
        }
        self.map_labels(|a| map[&a])
    }

    fn map_labels(&self, f: impl Fn(usize) -> usize) -> Self {
        Self {
            crossings: self.crossings.iter().map(|c| c.map(&f)).collect(),
            signs: self.signs.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&a| f(a)).collect())
                .collect(),
        }
    }

    pub fn max_label(&self) -> usize {
        self.components.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Disjoint union; components of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.max_label();
        let o = other.map_labels(|a| a + off);
        let mut crossings = self.crossings.clone();
        crossings.extend(o.crossings);
        let mut signs = self.signs.clone();
        signs.extend(o.signs);
        let mut components = self.components.clone();
        components.extend(o.components);
        Self::from_parts_unchecked(crossings, signs, components)
    }

    /// Connected sum of two oriented knot diagrams, banded along the first
    /// arc of each.
    pub fn connected_sum(&self, other: &Self) -> Result<Self> {
        for k in [self, other] {
            if !k.is_knot() {
                return Err(Error::NotAKnot(k.component_count()));
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.relabeled());
        }
        if other.crossings.is_empty() {
            return Ok(self.relabeled());
        }
        let off = self.max_label();
        let o = other.map_labels(|a| a + off);
        let x = self.components[0][0];
        let y = o.components[0][0];
        let hx = self.arc_ends()[&x].head;
        let hy = o.arc_ends()[&y].head;
        let mut crossings = self.crossings.clone();
        let mut oc = o.crossings.clone();
        // x now runs into y's head crossing and y into x's head crossing
        crossings[hx.0][hx.1] = y;
        oc[hy.0][hy.1] = x;
        crossings.extend(oc);
        let mut signs = self.signs.clone();
        signs.extend(o.signs.iter());
        let mut comp = vec![x];
        comp.extend(o.components[0].iter().skip(1));
        comp.push(y);
        comp.extend(self.components[0].iter().skip(1));
        Ok(Self::from_parts(crossings, signs, vec![comp])?.relabeled())
    }

    /// Faces of the planar diagram as cycles of darts. A dart `(k, s)` runs
    /// along the arc at slot `s` of crossing `k`, away from `k`, with the face
    /// on its left. Crossingless circles contribute no darts.
    pub fn faces(&self) -> Vec<Vec<Endpoint>> {
        let n = self.crossings.len();
        let other_end = self.other_end_map();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for k in 0..n {
            for s in 0..4 {
                if seen[k][s] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut ck, mut cs) = (k, s);
                while !seen[ck][cs] {
                    seen[ck][cs] = true;
                    face.push((ck, cs));
                    let (nk, ns) = other_end[&(ck, cs)];
                    ck = nk;
                    cs = (ns + 3) % 4;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// For each crossing end, the end at the other side of the same arc.
    pub fn other_end_map(&self) -> HashMap<Endpoint, Endpoint> {
        let mut by_arc: HashMap<usize, Vec<Endpoint>> = HashMap::new();
        for (k, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.iter().enumerate() {
                by_arc.entry(a).or_default().push((k, s));
            }
        }
        let mut m = HashMap::new();
        for ends in by_arc.values() {
            m.insert(ends[0], ends[1]);
            m.insert(ends[1], ends[0]);
        }
        m
    }

    /// Connected pieces of the diagram as sets of crossings; crossingless
    /// circles are reported separately by component index.
    pub fn pieces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let oe = self.other_end_map();
        for (&(k1, _), &(k2, _)) in &oe {
            let (a, b) = (find(&mut parent, k1), find(&mut parent, k2));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..n {
            let r = find(&mut parent, k);
            groups.entry(r).or_default().push(k);
        }
        let mut pieces: Vec<Vec<usize>> = groups.into_values().collect();
        pieces.sort();
        let loops = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() == 1 && !self.crossings.iter().any(|x| x.contains(&c[0])))
            .map(|(i, _)| i)
            .collect();
        (pieces, loops)
    }

    /// Seifert circles: cycles of arcs obtained by smoothing every crossing
    /// along the orientation. Returns the circles and the circle of each arc.
    pub fn seifert_circles(&self) -> (Vec<Vec<usize>>, HashMap<usize, usize>) {
        let ends = self.arc_ends();
        let mut circle_of: HashMap<usize, usize> = HashMap::new();
        let mut circles = Vec::new();
        let mut arcs: Vec<usize> = self.components.iter().flatten().copied().collect();
        arcs.sort();
        for start in arcs {
            if circle_of.contains_key(&start) {
                continue;
            }
            let id = circles.len();
            let mut circle = Vec::new();
            let mut a = start;
            loop {
                circle_of.insert(a, id);
                circle.push(a);
                let Some(e) = ends.get(&a) else { break };
                let (k, s) = e.head;
                let out = self.smoothing_exit(k, s);
                a = self.crossings[k][out];
                if a == start {
                    break;
                }
            }
            circles.push(circle);
        }
        (circles, circle_of)
    }

    /// Outgoing slot joined to incoming slot `s` by the oriented smoothing.
    pub fn smoothing_exit(&self, k: usize, s: usize) -> usize {
        if self.signs[k] > 0 {
            // in {0, 3}, out {1, 2}
            if s == 0 {
                1
            } else {
                2
            }
        } else if s == 0 {
            // in {0, 1}, out {2, 3}
            3
        } else {
            2
        }
    }
}

fn reversed_cycle(c: &[usize]) -> Vec<usize> {
    let mut v = c.to_vec();
    v.reverse();
    v
}

#[derive(Serialize, Deserialize)]
struct PdJson {
    crossings: Vec<[usize; 4]>,
    orientations: Vec<i8>,
    components: Vec<Vec<usize>>,
}

impl Serialize for PDCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PdJson {
            crossings: self.crossings.clone(),
            orientations: self.signs.clone(),
            components: self.components.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PDCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PdJson::deserialize(d)?;
        PDCode::from_parts(raw.crossings, raw.orientations, raw.components)
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::morse::{Closure, MorseWord};

    fn braid(n: usize, w: &[i32]) -> PDCode {
        MorseWord::from_braid(n, w, Closure::Plane).unwrap().to_pd()
    }

    #[test]
    fn trefoil_basics() {
        let t = braid(2, &[1, 1, 1]);
        assert_eq!(t.writhe(), 3);
        assert_eq!(t.mirror().writhe(), -3);
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(t.mirror_reverse().mirror_reverse(), t);
        assert_eq!(t.reverse().writhe(), 3);
        // C + 2 faces for a connected diagram
        assert_eq!(t.faces().len(), 5);
    }

    #[test]
    fn hopf_linking() {
        let h = braid(2, &[1, 1]);
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.linking_number(0, 1), Ok(1));
        assert_eq!(h.linking_number(1, 0), Ok(1));
        assert_eq!(h.mirror_reverse().linking_number(0, 1), Ok(-1));
        assert_eq!(h.reverse_component(1).unwrap().linking_number(0, 1), Ok(-1));
        assert_eq!(h.linking_number(0, 2), Err(Error::UnknownComponent(2)));
        let split = braid(2, &[]);
        assert_eq!(split.linking_number(0, 1), Ok(0));
    }

    #[test]
    fn validation_rejects() {
        assert!(PDCode::from_parts(vec![[1, 2, 2, 3]], vec![1], vec![vec![1, 2, 3]]).is_err());
        assert!(PDCode::from_parts(vec![], vec![], vec![vec![1], vec![1]]).is_err());
        let t = braid(2, &[1, 1, 1]);
        let json = serde_json::to_string(&t).unwrap();
        let back: PDCode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<PDCode>(
            r#"{"crossings":[[1,1,2,2]],"orientations":[1],"components":[[2,1]]}"#
        )
        .is_ok());
        assert!(serde_json::from_str::<PDCode>(
            r#"{"crossings":[[1,1,2,2]],"orientations":[-1],"components":[[1,2]]}"#
        )
        .is_err());
    }

    #[test]
    fn connected_sum_counts() {
        let t = braid(2, &[1, 1, 1]);
        let f = braid(3, &[1, -2, 1, -2]);
        let s = t.connected_sum(&f).unwrap();
        assert_eq!(s.crossing_count(), 7);
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.faces().len(), 9);
        assert_eq!(s.writhe(), 3);
        assert!(t.connected_sum(&braid(2, &[1, 1])).is_err());
    }

    #[test]
    fn seifert_circles_of_braid_closure() {
        let t = braid(3, &[1, -2, 1, -2]);
        assert_eq!(t.seifert_circles().0.len(), 3);
        let u = PDCode::unknot();
        assert_eq!(u.seifert_circles().0.len(), 1);
    }
}
