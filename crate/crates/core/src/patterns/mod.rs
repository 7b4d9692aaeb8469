//! Satellite patterns in the solid torus and operations on them.

pub mod catalog;

pub use catalog::{core, p_pattern, q_pattern, Catalog};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagrams::morse::{Node, Trace};
use crate::diagrams::{Closure, MorseWord, PDCode, Slice};
use crate::error::{Error, Result};

/// A knot in the solid torus, drawn as an annular Morse word whose bottom and
/// top meet at the seam. Oriented so that the winding number is non-negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PatternJson", into = "PatternJson")]
pub struct AnnularPattern {
    word: MorseWord,
    seam_signs: Vec<i8>,
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    word: MorseWord,
    #[serde(default)]
    seam_strands: Option<usize>,
    #[serde(default)]
    seam_signs: Option<Vec<i8>>,
    #[serde(default)]
    name: Option<String>,
}

impl TryFrom<PatternJson> for AnnularPattern {
    type Error = Error;

    fn try_from(j: PatternJson) -> Result<Self> {
        let p = AnnularPattern::new(j.word, j.name)?;
        if j.seam_strands.is_some_and(|s| s != p.seam_strands()) {
            return Err(Error::InvalidParameter(
                "seam_strands does not match the word".into(),
            ));
        }
        if let Some(signs) = j.seam_signs {
            let flipped: Vec<i8> = signs.iter().map(|s| -s).collect();
            if signs != p.seam_signs && flipped != p.seam_signs {
                return Err(Error::InvalidParameter(
                    "seam_signs do not match the word".into(),
                ));
            }
        }
        Ok(p)
    }
}

impl From<AnnularPattern> for PatternJson {
    fn from(p: AnnularPattern) -> Self {
        PatternJson {
            seam_strands: Some(p.seam_strands()),
            seam_signs: Some(p.seam_signs.clone()),
            word: p.word,
            name: p.name,
        }
    }
}

impl AnnularPattern {
    /// Builds a pattern from a one-component word; the closure is forced to
    /// be annular.
    pub fn new(word: MorseWord, name: Option<String>) -> Result<Self> {
        let word = word.with_closure(Closure::Annulus);
        let comps = word.component_count();
        if comps != 1 {
            return Err(Error::NotAKnot(comps));
        }
        let n = word.strands();
        let signs_for = |up: bool| -> Vec<i8> {
            let tr = word.trace_with(&[((0, 1), up)]);
            (1..=n)
                .map(|p| if tr.is_up((0, p)).unwrap() { 1 } else { -1 })
                .collect()
        };
        let mut seam_signs = signs_for(true);
        if seam_signs.iter().map(|&s| s as i64).sum::<i64>() < 0 {
            seam_signs = signs_for(false);
        }
        Ok(Self {
            word,
            seam_signs,
            name,
        })
    }

    pub fn from_slices(strands: usize, slices: Vec<Slice>, name: Option<String>) -> Result<Self> {
        Self::new(MorseWord::new(strands, Closure::Annulus, slices)?, name)
    }

    pub fn word(&self) -> &MorseWord {
        &self.word
    }

    pub fn seam_strands(&self) -> usize {
        self.word.strands()
    }

    pub fn seam_signs(&self) -> &[i8] {
        &self.seam_signs
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Orientation seeds reproducing the stored orientation.
    pub fn seeds(&self) -> Vec<(Node, bool)> {
        if self.seam_strands() > 0 {
            vec![((0, 1), self.seam_signs[0] > 0)]
        } else {
            vec![]
        }
    }

    pub fn trace(&self) -> Trace {
        self.word.trace_with(&self.seeds())
    }

    /// Writhe of the pattern diagram.
    pub fn writhe(&self) -> i64 {
        self.word.writhe_with(&self.trace())
    }
}

impl fmt::Display for AnnularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}", self.word),
        }
    }
}

/// Algebraic winding number: signed count of strands through the seam.
pub fn winding_number(p: &AnnularPattern) -> i64 {
    p.seam_signs.iter().map(|&s| s as i64).sum()
}

/// The ring `Z[1/n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationSpec {
    n: i64,
}

impl LocalizationSpec {
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("localization at 0".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Whether `w` is a unit of the ring.
    pub fn inverts(&self, w: i64) -> bool {
        if w == 0 {
            return false;
        }
        let mut w = w.unsigned_abs();
        let n = self.n.unsigned_abs();
        let mut p = 2u64;
        while p * p <= w {
            if w.is_multiple_of(p) {
                if !n.is_multiple_of(p) {
                    return false;
                }
                while w.is_multiple_of(p) {
                    w /= p;
                }
            }
            p += 1;
        }
        w == 1 || n.is_multiple_of(w)
    }
}

/// Whether the winding number is invertible in `Z[1/n]`.
pub fn in_s_r(p: &AnnularPattern, r: LocalizationSpec) -> bool {
    r.inverts(winding_number(p))
}

/// `t` full twists of type `sign(t)` on strands `1..=s`.
pub fn full_twists(s: usize, t: i64) -> Vec<Slice> {
    let e: i8 = if t > 0 { 1 } else { -1 };
    let mut out = Vec::new();
    if s < 2 {
        return out;
    }
    for _ in 0..t.unsigned_abs() {
        for _ in 0..s {
            out.extend((1..s).map(|i| Slice::Cross(i, e)));
        }
    }
    out
}

/// Replaces every strand by `s` parallel strands (blackboard framing).
pub fn cable_slices(slices: &[Slice], s: usize) -> Vec<Vec<Slice>> {
    slices
        .iter()
        .map(|sl| match *sl {
            Slice::Cross(i, e) => {
                let p = (i - 1) * s;
                let mut v = Vec::with_capacity(s * s);
                for j in 1..=s {
                    for k in 1..=s {
                        v.push(Slice::Cross(p + s + k - j, e));
                    }
                }
                v
            }
            Slice::Cap(i) => (0..s).map(|j| Slice::Cap(i * s - j)).collect(),
            Slice::Cup(i) => (1..=s).map(|j| Slice::Cup((i - 1) * s + j)).collect(),
        })
        .collect()
}

/// Satellite of `host` (one traced component) with pattern `p`: cable by the
/// seam count, insert the pattern once on an upward strand, then add
/// `-writhe(host)` full twists there.
fn satellite_word(
    p: &AnnularPattern,
    host: &MorseWord,
    host_seeds: &[(Node, bool)],
) -> Result<MorseWord> {
    let (w, _) = satellite_component(p.word(), &p.seeds(), host, host_seeds, 0, 0)?;
    Ok(w)
}

/// Replaces component `c` of `host` (traced with `host_seeds`) by the
/// annular word `insert`: every strand of `c` becomes `insert.strands()`
/// parallel strands, `insert` is placed once on an upward strand of `c`, and
/// full twists make the seam longitude of `insert` follow the framing
/// `framing` of `c`. The other components are untouched.
///
/// Returns the word and seeds listing the components as: host components
/// before `c`, the components of `insert` (in the order of `insert_seeds`
/// tracing), host components after `c`.
pub fn satellite_component(
    insert: &MorseWord,
    insert_seeds: &[(Node, bool)],
    host: &MorseWord,
    host_seeds: &[(Node, bool)],
    c: usize,
    framing: i64,
) -> Result<(MorseWord, Vec<(Node, bool)>)> {
    let s = insert.strands();
    let tr = host.trace_with(host_seeds);
    if c >= tr.components.len() {
        return Err(Error::UnknownComponent(c));
    }
    let width = |node: Node| {
        if tr.component_of(node) == Some(c) {
            s
        } else {
            1
        }
    };
    let counts = host.level_counts();
    let sizes: Vec<Vec<usize>> = counts
        .iter()
        .enumerate()
        .map(|(l, &n)| (1..=n).map(|q| width((l, q))).collect())
        .collect();
    let offset = |l: usize, q: usize| sizes[l][..q - 1].iter().sum::<usize>();

    let mut blocks = Vec::with_capacity(host.len());
    for (l, sl) in host.slices().iter().enumerate() {
        let v: Vec<Slice> = match *sl {
            Slice::Cross(i, e) => {
                let (p, sa, sb) = (offset(l, i), sizes[l][i - 1], sizes[l][i]);
                let mut v = Vec::with_capacity(sa * sb);
                for j in 1..=sa {
                    for k in 1..=sb {
                        v.push(Slice::Cross(p + sa + k - j, e));
                    }
                }
                v
            }
            Slice::Cap(i) => {
                let (p, k) = (offset(l, i), sizes[l][i - 1]);
                (0..k).map(|j| Slice::Cap(p + k - j)).collect()
            }
            Slice::Cup(i) => {
                let (p, k) = (offset(l + 1, i), sizes[l + 1][i - 1]);
                (1..=k).map(|j| Slice::Cup(p + j)).collect()
            }
        };
        blocks.push(v);
    }

    let (level, pos) = counts
        .iter()
        .enumerate()
        .flat_map(|(l, &n)| (1..=n).map(move |q| (l, q)))
        .find(|&node| tr.component_of(node) == Some(c) && tr.is_up(node) == Some(true))
        .ok_or_else(|| Error::Internal("component has no upward strand".into()))?;
    let at_level: Vec<usize> = std::iter::once(0)
        .chain(blocks.iter().scan(0, |acc, b| {
            *acc += b.len();
            Some(*acc)
        }))
        .collect();
    let at = at_level[level];
    let shift = offset(level, pos);
    let self_writhe = host.to_pd_with(&tr).self_writhe(c);
    let mut block: Vec<Slice> = insert.slices().to_vec();
    block.extend(full_twists(s, framing - self_writhe));
    let inserted = block.len();
    let mut slices: Vec<Slice> = blocks.into_iter().flatten().collect();
    slices.splice(at..at, block.iter().map(|sl| sl.shifted(shift)));
    let strands = sizes[0].iter().sum();
    let word = MorseWord::new(strands, host.closure(), slices)?;

    let host_node = |(l, q): Node| {
        let extra = if l > level { inserted } else { 0 };
        (at_level[l] + extra, offset(l, q) + 1)
    };
    let itr = insert.trace_with(insert_seeds);
    let mut seeds = Vec::new();
    for (i, t) in tr.components.iter().enumerate() {
        if i == c {
            seeds.extend(
                itr.components
                    .iter()
                    .map(|u| ((at + u.start.0, shift + u.start.1), u.start_up)),
            );
        } else {
            seeds.push((host_node(t.start), t.start_up));
        }
    }
    Ok((word, seeds))
}

/// Diagram of the satellite knot `P(K)`.
pub fn apply(p: &AnnularPattern, k: &MorseWord) -> Result<MorseWord> {
    let k = k.with_closure(Closure::Plane);
    let comps = k.component_count();
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    satellite_word(p, &k, &[])
}

/// `P * Q`, the pattern with `(P * Q)(K) = P(Q(K))`.
pub fn compose(p: &AnnularPattern, q: &AnnularPattern) -> Result<AnnularPattern> {
    let w = satellite_word(p, q.word(), &q.seeds())?;
    let name = match (p.name(), q.name()) {
        (Some(a), Some(b)) => Some(format!("{a}*{b}")),
        _ => None,
    };
    AnnularPattern::new(w, name)
}

/// `t` positive full twists of the seam strands, inserted at the seam.
pub fn twist(p: &AnnularPattern, t: i64) -> AnnularPattern {
    if t == 0 {
        return p.clone();
    }
    let mut slices = full_twists(p.seam_strands(), t);
    slices.extend_from_slice(p.word().slices());
    let word = MorseWord::new(p.seam_strands(), Closure::Annulus, slices)
        .expect("twist keeps the word valid");
    let name = p.name().map(|n| {
        if t == 1 {
            format!("tau({n})")
        } else {
            format!("tau^{t}({n})")
        }
    });
    AnnularPattern::new(word, name).expect("twist keeps one component")
}

/// Slices drawing the axis circle around `n` strands, passing over them
/// leftwards and back under them.
pub fn axis_slices(n: usize) -> Vec<Slice> {
    let mut v = vec![Slice::Cup(n + 1)];
    v.extend((1..=n).rev().map(|i| Slice::Cross(i, -1)));
    v.extend((1..=n).map(|i| Slice::Cross(i, -1)));
    v.push(Slice::Cap(n + 1));
    v
}

/// The two-component link (pattern closure, axis circle), components in that
/// order, with the axis oriented so that the linking number is `w(p)`.
pub fn to_link(p: &AnnularPattern) -> PDCode {
    let n = p.seam_strands();
    let mut slices = axis_slices(n);
    slices.extend_from_slice(p.word().slices());
    let word = MorseWord::new(n, Closure::Plane, slices).expect("valid link word");
    let pattern_seed = if n > 0 {
        ((0, 1), p.seam_signs[0] > 0)
    } else {
        ((3, 1), true)
    };
    let tr = word.trace_with(&[pattern_seed, ((1, n + 1), true)]);
    let pd = word.to_pd_with(&tr);
    let lk = pd.linking_number(0, 1).expect("two components");
    if lk < 0 {
        pd.reverse_component(1).expect("component exists")
    } else {
        pd
    }
}

/// Plane word with `n` through-strands turned into a one-strand annular word:
/// strands `2..=n` are closed up locally on the right, strand 1 runs through
/// the seam. The plane closure of the result is the closure of `t`.
pub fn open_up(t: &MorseWord) -> Result<MorseWord> {
    let n = t.strands();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "diagram without strands at the bottom".into(),
        ));
    }
    let mut slices: Vec<Slice> = (2..=n).map(Slice::Cup).collect();
    slices.extend_from_slice(t.slices());
    slices.extend((2..=n).rev().map(Slice::Cap));
    MorseWord::new(1, Closure::Annulus, slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BraidWord;
    use crate::invariants::knot_alexander;

    fn trefoil() -> MorseWord {
        BraidWord::new(2, vec![1, 1, 1]).unwrap().to_morse()
    }

    #[test]
    fn winding_and_localization() {
        assert_eq!(winding_number(&core()), 1);
        let cable = AnnularPattern::from_slices(2, vec![Slice::Cross(1, 1)], None).unwrap();
        assert_eq!(winding_number(&cable), 2);
        assert!(in_s_r(&cable, LocalizationSpec::new(2).unwrap()));
        assert!(!in_s_r(&cable, LocalizationSpec::new(3).unwrap()));
        assert!(LocalizationSpec::new(6).unwrap().inverts(12));
        assert!(!LocalizationSpec::new(5).unwrap().inverts(0));
        assert!(LocalizationSpec::new(0).is_err());
    }

    #[test]
    fn reversed_strand_pattern() {
        // a strand turning back: two seam strands of opposite orientation
        let p = AnnularPattern::from_slices(2, vec![Slice::Cap(1), Slice::Cup(1)], None).unwrap();
        assert_eq!(winding_number(&p), 0);
        assert_eq!(p.seam_signs(), &[1, -1]);
        assert!(AnnularPattern::from_slices(2, vec![], None).is_err());
        let w = AnnularPattern::from_slices(3, vec![Slice::Cap(1), Slice::Cup(2)], None).unwrap();
        assert_eq!(winding_number(&w), 1);
        assert_eq!(w.seam_signs().iter().filter(|&&s| s < 0).count(), 1);
    }

    #[test]
    fn core_is_identity() {
        let d = apply(&core(), &trefoil()).unwrap().to_pd();
        assert_eq!(d.crossing_count(), 3);
        let hopf = to_link(&core());
        assert_eq!(hopf.linking_number(0, 1).unwrap(), 1);
        assert_eq!(hopf.crossing_count(), 2);
    }

    #[test]
    fn cable_pattern_on_unknot() {
        let cable = AnnularPattern::from_slices(2, vec![Slice::Cross(1, 1); 3], None).unwrap();
        let u = MorseWord::new(1, Closure::Plane, vec![]).unwrap();
        let d = apply(&cable, &u).unwrap().to_pd();
        assert_eq!(knot_alexander(&d).unwrap().to_string(), "t - 1 + t^-1");
        assert_eq!(to_link(&cable).linking_number(0, 1).unwrap(), 2);
    }

    #[test]
    fn twist_keeps_winding() {
        let cable = AnnularPattern::from_slices(2, vec![Slice::Cross(1, 1); 3], None).unwrap();
        let t = twist(&cable, 1);
        assert_eq!(winding_number(&t), 2);
        assert_eq!(t.word().crossing_count(), 5);
        assert_eq!(twist(&cable, 0), cable);
    }

    #[test]
    fn opening_up_keeps_the_knot() {
        let f = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        let open = open_up(&f.to_morse()).unwrap();
        let p = AnnularPattern::new(open, None).unwrap();
        let closed = p.word().with_closure(Closure::Plane).to_pd();
        assert_eq!(
            knot_alexander(&closed).unwrap(),
            knot_alexander(&f.closure()).unwrap()
        );
        assert_eq!(winding_number(&p), 1);
    }
}
