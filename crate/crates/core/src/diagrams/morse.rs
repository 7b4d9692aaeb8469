//! Morse words: diagrams as a bottom-to-top sequence of elementary slices.
//!
//! Positions are 1-based from the left. A word with `strands` boundary points
//! at the bottom and top is closed by joining top position `p` to bottom
//! position `p` around the right-hand side, like a braid closure. Under
//! [`Closure::Annulus`] the closing strands pass through the seam of the
//! annulus `S^1 x I` instead.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::pd::PDCode;
use crate::error::{Error, Result};

/// One elementary slice.
///
/// `Cross(i, s)` crosses the strands at positions `i` and `i + 1`. For
/// `s = +1` the strand entering at the bottom-left (position `i`) passes over
/// and exits top-right; for `s = -1` it passes under. With both strands
/// oriented upward `+1` is a positive crossing, as for the braid generator
/// `sigma_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slice {
    Cross(usize, i8),
    Cap(usize),
    Cup(usize),
}

impl Slice {
    pub fn position(&self) -> usize {
        match *self {
            Slice::Cross(p, _) | Slice::Cap(p) | Slice::Cup(p) => p,
        }
    }

    pub fn shifted(&self, by: usize) -> Slice {
        match *self {
            Slice::Cross(p, s) => Slice::Cross(p + by, s),
            Slice::Cap(p) => Slice::Cap(p + by),
            Slice::Cup(p) => Slice::Cup(p + by),
        }
    }

    /// Mirror image: crossing types switched.
    pub fn mirrored(&self) -> Slice {
        match *self {
            Slice::Cross(p, s) => Slice::Cross(p, -s),
            other => other,
        }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Slice::Cross(p, s) => write!(f, "x{} {p}", if s > 0 { '+' } else { '-' }),
            Slice::Cap(p) => write!(f, "cap {p}"),
            Slice::Cup(p) => write!(f, "cup {p}"),
        }
    }
}

impl FromStr for Slice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::SliceSyntax(s.to_string());
        let mut it = s.split_whitespace();
        let head = it.next().ok_or_else(bad)?;
        let pos: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if it.next().is_some() || pos == 0 {
            return Err(bad());
        }
        match head {
            "x+" => Ok(Slice::Cross(pos, 1)),
            "x-" => Ok(Slice::Cross(pos, -1)),
            "cap" => Ok(Slice::Cap(pos)),
            "cup" => Ok(Slice::Cup(pos)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    Plane,
    Annulus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorseWord {
    strands: usize,
    closure: Closure,
    slices: Vec<Slice>,
}

/// A point on the diagram: the strand at `pos` (1-based) on the horizontal
/// line between slice `level - 1` and slice `level`.
pub type Node = (usize, usize);

/// One passage of a strand through a crossing slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub slice: usize,
    pub in_slot: u8,
    pub out_slot: u8,
}

#[derive(Clone, Debug)]
pub struct TracedComponent {
    /// Starting node and whether the strand leaves it upward.
    pub start: Node,
    pub start_up: bool,
    pub passes: Vec<Pass>,
}

/// Orientation and connectivity data of a word.
#[derive(Clone, Debug)]
pub struct Trace {
    pub components: Vec<TracedComponent>,
    /// node -> (component, local arc index, strand goes up)
    nodes: HashMap<Node, (usize, usize, bool)>,
    /// crossing slice -> (direction of strand through bottom-left, direction
    /// through bottom-right), `true` meaning upward
    cross_dirs: HashMap<usize, (bool, bool)>,
}

impl Trace {
    pub fn component_of(&self, node: Node) -> Option<usize> {
        self.nodes.get(&node).map(|x| x.0)
    }

    pub fn is_up(&self, node: Node) -> Option<bool> {
        self.nodes.get(&node).map(|x| x.2)
    }

    /// Oriented sign of the crossing in slice `slice`.
    pub fn crossing_sign(&self, word: &MorseWord, slice: usize) -> i8 {
        let Slice::Cross(_, t) = word.slices[slice] else {
            panic!("slice {slice} is not a crossing")
        };
        let (a, b) = self.cross_dirs[&slice];
        let da = if a { 1 } else { -1 };
        let db = if b { 1 } else { -1 };
        t * da * db
    }
}

impl MorseWord {
    pub fn new(strands: usize, closure: Closure, slices: Vec<Slice>) -> Result<Self> {
        let w = Self {
            strands,
            closure,
            slices,
        };
        w.validate()?;
        Ok(w)
    }

    /// Braid closure of a braid word given as signed generator indices.
    pub fn from_braid(strands: usize, letters: &[i32], closure: Closure) -> Result<Self> {
        let slices = letters
            .iter()
            .map(|&l| {
                if l == 0 {
                    Err(Error::InvalidBraid("generator index 0".into()))
                } else {
                    Ok(Slice::Cross(l.unsigned_abs() as usize, l.signum() as i8))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, closure, slices)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn with_closure(&self, closure: Closure) -> Self {
        Self {
            closure,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.slices
            .iter()
            .filter(|s| matches!(s, Slice::Cross(..)))
            .count()
    }

    fn validate(&self) -> Result<()> {
        let mut n = self.strands;
        for (index, s) in self.slices.iter().enumerate() {
            let bad = |reason: String| Err(Error::MalformedWord { index, reason });
            match *s {
                Slice::Cross(p, sign) => {
                    if sign != 1 && sign != -1 {
                        return bad(format!("crossing sign {sign}"));
                    }
                    if p == 0 || p + 1 > n {
                        return bad(format!("crossing at {p} with {n} strands"));
                    }
                }
                Slice::Cap(p) => {
                    if p == 0 || p + 1 > n {
                        return bad(format!("cap at {p} with {n} strands"));
                    }
                    n -= 2;
                }
                Slice::Cup(p) => {
                    if p == 0 || p > n + 1 {
                        return bad(format!("cup at {p} with {n} strands"));
                    }
                    n += 2;
                }
            }
        }
        if n != self.strands {
            return Err(Error::MalformedWord {
                index: self.slices.len(),
                reason: format!("ends with {n} strands, starts with {}", self.strands),
            });
        }
        Ok(())
    }

    /// Strand count on each level, `len() + 1` entries.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut n = self.strands;
        out.push(n);
        for s in &self.slices {
            match s {
                Slice::Cap(_) => n -= 2,
                Slice::Cup(_) => n += 2,
                Slice::Cross(..) => {}
            }
            out.push(n);
        }
        out
    }

    /// Mirror image (all crossing types switched).
    pub fn mirror(&self) -> Self {
        Self {
            slices: self.slices.iter().map(Slice::mirrored).collect(),
            ..self.clone()
        }
    }

    /// Concatenation `self` then `other` (stacked on top). Strand counts must
    /// agree.
    pub fn then(&self, other: &MorseWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::MalformedWord {
                index: self.slices.len(),
                reason: format!("stacking {} strands on {}", other.strands, self.strands),
            });
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&other.slices);
        Self::new(self.strands, self.closure, slices)
    }

    /// Inserts `block` (a tangle from `k` to `k` strands) with its leftmost
    /// strand at `offset + 1`, immediately before slice `at`.
    pub fn insert_block(&self, at: usize, offset: usize, block: &[Slice]) -> Result<Self> {
        let mut slices = Vec::with_capacity(self.slices.len() + block.len());
        slices.extend_from_slice(&self.slices[..at]);
        slices.extend(block.iter().map(|s| s.shifted(offset)));
        slices.extend_from_slice(&self.slices[at..]);
        Self::new(self.strands, self.closure, slices)
    }

    /// Orientation tracing with default seeds: every not yet visited node is
    /// taken in level-then-position order and leaves upward.
    pub fn trace(&self) -> Trace {
        self.trace_with(&[])
    }

    /// Tracing where the listed seeds fix the orientation of the components
    /// through them (processed first, in order).
    pub fn trace_with(&self, seeds: &[(Node, bool)]) -> Trace {
        let counts = self.level_counts();
        let top = self.slices.len();
        let mut nodes: HashMap<Node, (usize, usize, bool)> = HashMap::new();
        let mut cross_dirs: HashMap<usize, (bool, bool)> = HashMap::new();
        let mut components = Vec::new();

        let mut starts: Vec<(Node, bool)> = seeds.to_vec();
        for (level, &n) in counts.iter().enumerate() {
            for pos in 1..=n {
                starts.push(((level, pos), true));
            }
        }

        for (start, up0) in starts {
            if nodes.contains_key(&start) {
                continue;
            }
            let comp = components.len();
            let mut passes = Vec::new();
            let (mut level, mut pos, mut up) = (start.0, start.1, up0);
            let mut arc = 0usize;
            loop {
                nodes.insert((level, pos), (comp, arc, up));
                let (nl, np, nu, pass) = self.step(level, pos, up, top);
                if let Some(p) = pass {
                    // entering at bottom slots means moving up
                    let e = cross_dirs.entry(p.slice).or_insert((false, false));
                    match p.in_slot {
                        0 => e.0 = true,
                        2 => e.0 = false,
                        1 => e.1 = true,
                        _ => e.1 = false,
                    }
                    passes.push(p);
                    arc += 1;
                }
                level = nl;
                pos = np;
                up = nu;
                if (level, pos) == start {
                    break;
                }
            }
            components.push(TracedComponent {
                start,
                start_up: up0,
                passes,
            });
        }
        // local arc indices wrap: the last arc is the first one
        for v in nodes.values_mut() {
            let p = components[v.0].passes.len();
            if p > 0 {
                v.1 %= p;
            } else {
                v.1 = 0;
            }
        }
        Trace {
            components,
            nodes,
            cross_dirs,
        }
    }

    /// Next node when moving from `(level, pos)` in direction `up`.
    fn step(
        &self,
        level: usize,
        pos: usize,
        up: bool,
        top: usize,
    ) -> (usize, usize, bool, Option<Pass>) {
        if up {
            if level == top {
                return (0, pos, true, None);
            }
            match self.slices[level] {
                Slice::Cross(i, _) if pos == i => (
                    level + 1,
                    i + 1,
                    true,
                    Some(Pass {
                        slice: level,
                        in_slot: 0,
                        out_slot: 2,
                    }),
                ),
                Slice::Cross(i, _) if pos == i + 1 => (
                    level + 1,
                    i,
                    true,
                    Some(Pass {
                        slice: level,
                        in_slot: 1,
                        out_slot: 3,
                    }),
                ),
                Slice::Cross(..) => (level + 1, pos, true, None),
                Slice::Cap(i) if pos == i => (level, i + 1, false, None),
                Slice::Cap(i) if pos == i + 1 => (level, i, false, None),
                Slice::Cap(i) if pos > i + 1 => (level + 1, pos - 2, true, None),
                Slice::Cap(_) => (level + 1, pos, true, None),
                Slice::Cup(i) if pos >= i => (level + 1, pos + 2, true, None),
                Slice::Cup(_) => (level + 1, pos, true, None),
            }
        } else {
            if level == 0 {
                return (top, pos, false, None);
            }
            match self.slices[level - 1] {
                Slice::Cross(i, _) if pos == i => (
                    level - 1,
                    i + 1,
                    false,
                    Some(Pass {
                        slice: level - 1,
                        in_slot: 3,
                        out_slot: 1,
                    }),
                ),
                Slice::Cross(i, _) if pos == i + 1 => (
                    level - 1,
                    i,
                    false,
                    Some(Pass {
                        slice: level - 1,
                        in_slot: 2,
                        out_slot: 0,
                    }),
                ),
                Slice::Cross(..) => (level - 1, pos, false, None),
                Slice::Cap(i) if pos >= i => (level - 1, pos + 2, false, None),
                Slice::Cap(_) => (level - 1, pos, false, None),
                Slice::Cup(i) if pos == i => (level, i + 1, true, None),
                Slice::Cup(i) if pos == i + 1 => (level, i, true, None),
                Slice::Cup(i) if pos > i + 1 => (level - 1, pos - 2, false, None),
                Slice::Cup(_) => (level - 1, pos, false, None),
            }
        }
    }

    /// Sum of oriented crossing signs.
    pub fn writhe(&self) -> i64 {
        let tr = self.trace();
        self.writhe_with(&tr)
    }

    pub fn writhe_with(&self, tr: &Trace) -> i64 {
        (0..self.slices.len())
            .filter(|&i| matches!(self.slices[i], Slice::Cross(..)))
            .map(|i| tr.crossing_sign(self, i) as i64)
            .sum()
    }

    pub fn component_count(&self) -> usize {
        self.trace().components.len()
    }

    /// The components `keep` of `tr` alone, with seeds that trace them in the
    /// listed order and orientation.
    pub fn sublink(&self, tr: &Trace, keep: &[usize]) -> (MorseWord, Vec<(Node, bool)>) {
        let kept = |node: Node| tr.component_of(node).is_some_and(|c| keep.contains(&c));
        let counts = self.level_counts();
        // new position of each kept node, per level
        let new_pos = |level: usize, pos: usize| (1..pos).filter(|&q| kept((level, q))).count() + 1;
        let mut slices = Vec::new();
        let mut new_level = vec![0; counts.len()];
        for (l, s) in self.slices.iter().enumerate() {
            new_level[l] = slices.len();
            match *s {
                Slice::Cross(i, e) if kept((l, i)) && kept((l, i + 1)) => {
                    slices.push(Slice::Cross(new_pos(l, i), e))
                }
                Slice::Cap(i) if kept((l, i)) => slices.push(Slice::Cap(new_pos(l, i))),
                Slice::Cup(i) if kept((l + 1, i)) => slices.push(Slice::Cup(new_pos(l + 1, i))),
                _ => {}
            }
        }
        new_level[counts.len() - 1] = slices.len();
        let strands = (1..=counts[0]).filter(|&q| kept((0, q))).count();
        let seeds = keep
            .iter()
            .map(|&c| {
                let t = &tr.components[c];
                let (l, q) = t.start;
                ((new_level[l], new_pos(l, q)), t.start_up)
            })
            .collect();
        let word = Self::new(strands, self.closure, slices).expect("sublink of a valid word");
        (word, seeds)
    }

    /// Planar diagram code of the closure, components and orientations as
    /// given by `trace()`.
    pub fn to_pd(&self) -> PDCode {
        self.to_pd_with(&self.trace())
    }

    pub fn to_pd_with(&self, tr: &Trace) -> PDCode {
        let cross_index: HashMap<usize, usize> = self
            .slices
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Slice::Cross(..)))
            .enumerate()
            .map(|(k, (i, _))| (i, k))
            .collect();
        let ncross = cross_index.len();
        let mut slot_arcs = vec![[0usize; 4]; ncross];
        let mut slot_in = vec![[false; 4]; ncross];
        let mut components = Vec::new();
        let mut next_label = 1usize;
        for c in &tr.components {
            let p = c.passes.len();
            if p == 0 {
                components.push(vec![next_label]);
                next_label += 1;
                continue;
            }
            let base = next_label;
            for (j, pass) in c.passes.iter().enumerate() {
                let k = cross_index[&pass.slice];
                slot_arcs[k][pass.in_slot as usize] = base + j;
                slot_in[k][pass.in_slot as usize] = true;
                slot_arcs[k][pass.out_slot as usize] = base + (j + 1) % p;
            }
            components.push((base..base + p).collect());
            next_label += p;
        }
        let mut crossings = Vec::with_capacity(ncross);
        let mut signs = Vec::with_capacity(ncross);
        for (slice, s) in self.slices.iter().enumerate() {
            let Slice::Cross(_, t) = *s else { continue };
            let k = cross_index[&slice];
            // slots: 0 = bottom-left, 1 = bottom-right, 2 = top-right, 3 = top-left
            let under: [usize; 2] = if t > 0 { [1, 3] } else { [0, 2] };
            let u = if slot_in[k][under[0]] {
                under[0]
            } else {
                under[1]
            };
            let tuple = [
                slot_arcs[k][u],
                slot_arcs[k][(u + 1) % 4],
                slot_arcs[k][(u + 2) % 4],
                slot_arcs[k][(u + 3) % 4],
            ];
            let sign = if slot_in[k][(u + 3) % 4] { 1 } else { -1 };
            crossings.push(tuple);
            signs.push(sign);
        }
        PDCode::from_parts_unchecked(crossings, signs, components)
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.slices.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "[{} strands, {:?}: {}]",
            self.strands,
            self.closure,
            s.join(", ")
        )
    }
}

#[derive(Serialize, Deserialize)]
struct MorseJson {
    strands: usize,
    closure: Closure,
    slices: Vec<String>,
}

impl Serialize for MorseWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MorseJson {
            strands: self.strands,
            closure: self.closure,
            slices: self.slices.iter().map(|x| x.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MorseWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MorseJson::deserialize(d)?;
        let slices = raw
            .slices
            .iter()
            .map(|s| s.parse::<Slice>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        MorseWord::new(raw.strands, raw.closure, slices).map_err(D::Error::custom)
    }
}
