//! Deterministic Tietze simplification with a replayable move list.
//!
//! Relators are kept cyclically reduced after every move. Generators are
//! renumbered `1..=n` after each elimination.

use serde::{Deserialize, Serialize};

use super::presentation::{
    cyclic_reduce, free_reduce, inverse, substitute, GroupPresentation, Word,
};
use crate::error::{Error, Result};

/// Default budget in elementary moves.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Largest total relator length an elimination may produce.
const LENGTH_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum TietzeMove {
    /// Solve relator `relator` for `generator`, which occurs in it exactly
    /// once, substitute everywhere and delete both.
    Eliminate { generator: usize, relator: usize },
    /// Multiply relator `target` by a conjugate of relator `source`: the
    /// subword of length `len` starting at `start` of the cyclic target
    /// equals the prefix of the cyclic source (inverted if `inverse`) rotated
    /// by `rotation`, and is replaced by the inverse of the remaining suffix.
    Rewrite {
        target: usize,
        source: usize,
        inverse: bool,
        rotation: usize,
        start: usize,
        len: usize,
    },
    /// Delete an empty relator, or one that is a cyclic permutation of
    /// another relator or of its inverse.
    Drop { relator: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TietzeTrace {
    pub moves: Vec<TietzeMove>,
}

#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    pub trace: TietzeTrace,
    /// Image of each original generator as a word in the final generators.
    pub expressions: Vec<Word>,
    pub budget_exhausted: bool,
}

struct State {
    names: Vec<String>,
    relators: Vec<Word>,
    expressions: Vec<Word>,
}

fn rotate(w: &[i32], k: usize) -> Word {
    let mut v = w.to_vec();
    if !v.is_empty() {
        v.rotate_left(k % w.len());
    }
    v
}

/// Whether `a` is a cyclic permutation of `b` or of `b^-1`.
fn cyclically_equal(a: &[i32], b: &[i32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let binv = inverse(b);
    (0..b.len()).any(|k| rotate(b, k) == a || rotate(&binv, k) == a)
}

/// Result of a rewrite of `target` by `source` with the given parameters, or
/// `None` if the parameters do not describe a valid rewrite.
fn rewrite(
    target: &[i32],
    source: &[i32],
    inv: bool,
    rotation: usize,
    start: usize,
    len: usize,
) -> Option<Word> {
    if source.is_empty()
        || target.is_empty()
        || len == 0
        || len > source.len()
        || len > target.len()
    {
        return None;
    }
    let s = if inv {
        inverse(source)
    } else {
        source.to_vec()
    };
    let s = rotate(&s, rotation);
    let t = rotate(target, start);
    if t[..len] != s[..len] {
        return None;
    }
    let mut out = inverse(&s[len..]);
    out.extend_from_slice(&t[len..]);
    Some(out)
}

impl State {
    fn new(g: &GroupPresentation) -> Self {
        let n = g.generator_count();
        Self {
            names: g.generators.clone(),
            relators: g.relators.iter().map(|r| cyclic_reduce(r)).collect(),
            expressions: (1..=n as i32).map(|i| vec![i]).collect(),
        }
    }

    fn presentation(&self) -> GroupPresentation {
        GroupPresentation::new(self.names.clone(), self.relators.clone())
    }

    fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    fn apply(&mut self, m: &TietzeMove) -> Result<()> {
        let bad = |why: &str| {
            Err(Error::InvalidParameter(format!(
                "invalid Tietze move {m:?}: {why}"
            )))
        };
        match *m {
            TietzeMove::Eliminate { generator, relator } => {
                let Some(r) = self.relators.get(relator) else {
                    return bad("no such relator");
                };
                let g = generator as i32;
                if generator == 0 || generator > self.names.len() {
                    return bad("no such generator");
                }
                let hits: Vec<usize> = (0..r.len()).filter(|&i| r[i].abs() == g).collect();
                if hits.len() != 1 {
                    return bad("generator does not occur exactly once");
                }
                let i = hits[0];
                // r = x g^e y  =>  g^e = x^-1 y^-1
                let mut image = inverse(&r[..i]);
                image.extend(inverse(&r[i + 1..]));
                let image = if r[i] > 0 {
                    free_reduce(&image)
                } else {
                    inverse(&free_reduce(&image))
                };
                self.relators.remove(relator);
                let renumber = |w: &[i32]| -> Word {
                    let w = substitute(w, g, &image);
                    w.iter()
                        .map(|&x| if x.abs() > g { x - x.signum() } else { x })
                        .collect()
                };
                self.relators = self
                    .relators
                    .iter()
                    .map(|r| cyclic_reduce(&renumber(r)))
                    .collect();
                self.expressions = self
                    .expressions
                    .iter()
                    .map(|e| free_reduce(&renumber(e)))
                    .collect();
                self.names.remove(generator - 1);
            }
            TietzeMove::Rewrite {
                target,
                source,
                inverse: inv,
                rotation,
                start,
                len,
            } => {
                if target == source
                    || target >= self.relators.len()
                    || source >= self.relators.len()
                {
                    return bad("bad relator index");
                }
                match rewrite(
                    &self.relators[target],
                    &self.relators[source],
                    inv,
                    rotation,
                    start,
                    len,
                ) {
                    Some(w) => self.relators[target] = cyclic_reduce(&w),
                    None => return bad("subword mismatch"),
                }
            }
            TietzeMove::Drop { relator } => {
                let Some(r) = self.relators.get(relator) else {
                    return bad("no such relator");
                };
                let redundant = r.is_empty()
                    || self
                        .relators
                        .iter()
                        .enumerate()
                        .any(|(j, s)| j != relator && cyclically_equal(r, s));
                if !redundant {
                    return bad("relator is not redundant");
                }
                self.relators.remove(relator);
            }
        }
        Ok(())
    }

    fn find_drop(&self) -> Option<TietzeMove> {
        for (i, r) in self.relators.iter().enumerate() {
            if r.is_empty() || self.relators[..i].iter().any(|s| cyclically_equal(r, s)) {
                return Some(TietzeMove::Drop { relator: i });
            }
        }
        None
    }

    /// Elimination giving the smallest total relator length.
    fn find_eliminate(&self) -> Option<TietzeMove> {
        let mut best: Option<(usize, TietzeMove)> = None;
        let mut occ = vec![0usize; self.names.len() + 1];
        for r in &self.relators {
            for &x in r {
                occ[x.unsigned_abs() as usize] += 1;
            }
        }
        let total = self.total_length();
        for (ri, r) in self.relators.iter().enumerate() {
            for g in 1..=self.names.len() {
                let c = r.iter().filter(|x| x.unsigned_abs() as usize == g).count();
                if c != 1 {
                    continue;
                }
                let new_total = total - r.len() + (occ[g] - 1) * (r.len() - 1);
                if new_total > LENGTH_CAP {
                    continue;
                }
                if best.as_ref().is_none_or(|(b, _)| new_total < *b) {
                    best = Some((
                        new_total,
                        TietzeMove::Eliminate {
                            generator: g,
                            relator: ri,
                        },
                    ));
                }
            }
        }
        best.map(|(_, m)| m)
    }

    /// First rewrite that shortens some relator.
    fn find_rewrite(&self) -> Option<TietzeMove> {
        for (ti, t) in self.relators.iter().enumerate() {
            for (si, s) in self.relators.iter().enumerate() {
                if si == ti || s.is_empty() {
                    continue;
                }
                if let Some((inv, rotation, start, len)) = shortening(t, s) {
                    return Some(TietzeMove::Rewrite {
                        target: ti,
                        source: si,
                        inverse: inv,
                        rotation,
                        start,
                        len,
                    });
                }
            }
        }
        None
    }
}

/// Parameters `(inverse, rotation, start, len)` of the longest match of more
/// than half of a cyclic conjugate of `s^±1` inside the cyclic word `t`.
fn shortening(t: &[i32], s: &[i32]) -> Option<(bool, usize, usize, usize)> {
    let m = s.len();
    let n = t.len();
    if n == 0 {
        return None;
    }
    let mut best: Option<(usize, (bool, usize, usize, usize))> = None;
    for inv in [false, true] {
        let base = if inv { inverse(s) } else { s.to_vec() };
        for rot in 0..m {
            let c = rotate(&base, rot);
            for start in 0..n {
                let mut k = 0;
                while k < m && k < n && t[(start + k) % n] == c[k] {
                    k += 1;
                }
                if 2 * k > m && best.as_ref().is_none_or(|(b, _)| k > *b) {
                    best = Some((k, (inv, rot, start, k)));
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Simplifies `g` until no move applies or `budget` moves have been made.
pub fn simplify_tietze(g: &GroupPresentation, budget: usize) -> Simplified {
    let mut st = State::new(g);
    let mut trace = TietzeTrace::default();
    let mut exhausted = false;
    loop {
        let next = st
            .find_drop()
            .or_else(|| st.find_eliminate())
            .or_else(|| st.find_rewrite());
        let Some(m) = next else { break };
        if trace.moves.len() >= budget {
            exhausted = true;
            break;
        }
        st.apply(&m).expect("search produces valid moves");
        trace.moves.push(m);
    }
    let out = Simplified {
        presentation: st.presentation(),
        trace,
        expressions: st.expressions,
        budget_exhausted: exhausted,
    };
    #[cfg(debug_assertions)]
    assert_eq!(
        out.presentation.abelianization(),
        g.abelianization(),
        "Tietze moves changed H1"
    );
    out
}

/// Re-applies `trace` to `g`, checking every move.
pub fn replay(g: &GroupPresentation, trace: &TietzeTrace) -> Result<Simplified> {
    let mut st = State::new(g);
    for m in &trace.moves {
        st.apply(m)?;
    }
    Ok(Simplified {
        presentation: st.presentation(),
        trace: trace.clone(),
        expressions: st.expressions,
        budget_exhausted: false,
    })
}

/// A rewrite of a single word by a relator, used to show a word is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordMove {
    pub source: usize,
    pub inverse: bool,
    pub rotation: usize,
    pub start: usize,
    pub len: usize,
}

/// Shortens a word, up to conjugacy, by relators of `g` until it is empty or
/// no relator applies. Returns the moves and the final word.
pub fn reduce_word(g: &GroupPresentation, w: &[i32], budget: usize) -> (Vec<WordMove>, Word) {
    let mut w = cyclic_reduce(w);
    let mut moves = Vec::new();
    while !w.is_empty() && moves.len() < budget {
        let found = g.relators.iter().enumerate().find_map(|(si, s)| {
            if s.is_empty() {
                return None;
            }
            shortening(&w, s).map(|(inverse, rotation, start, len)| WordMove {
                source: si,
                inverse,
                rotation,
                start,
                len,
            })
        });
        let Some(m) = found else { break };
        w = apply_word_move(g, &w, &m).expect("search produces valid moves");
        moves.push(m);
    }
    (moves, w)
}

pub fn apply_word_move(g: &GroupPresentation, w: &[i32], m: &WordMove) -> Result<Word> {
    let s = g.relators.get(m.source).ok_or_else(|| {
        Error::InvalidParameter(format!("word move uses missing relator {}", m.source))
    })?;
    rewrite(w, s, m.inverse, m.rotation, m.start, m.len)
        .map(|x| cyclic_reduce(&x))
        .ok_or_else(|| Error::InvalidParameter(format!("invalid word move {m:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kills_free_generators_by_relators() {
        let g = GroupPresentation::with_count(2, vec![vec![1], vec![2]]);
        let s = simplify_tietze(&g, DEFAULT_BUDGET);
        assert!(s.presentation.is_trivial_presentation());
        assert!(replay(&g, &s.trace)
            .unwrap()
            .presentation
            .is_trivial_presentation());
    }

    #[test]
    fn trefoil_with_meridian_is_trivial() {
        // <a, b | aba = bab, a>
        let g = GroupPresentation::with_count(2, vec![vec![1, 2, 1, -2, -1, -2], vec![1]]);
        let s = simplify_tietze(&g, DEFAULT_BUDGET);
        assert!(s.presentation.is_trivial_presentation());
    }

    #[test]
    fn trefoil_group_stays_nontrivial() {
        let g = GroupPresentation::with_count(2, vec![vec![1, 2, 1, -2, -1, -2]]);
        let s = simplify_tietze(&g, DEFAULT_BUDGET);
        assert_eq!(s.presentation.generator_count(), 2);
        assert_eq!(s.presentation.abelianization().to_string(), "Z");
    }

    #[test]
    fn expressions_follow_eliminations() {
        // b = a^2 then a^3 = 1
        let g = GroupPresentation::with_count(2, vec![vec![2, -1, -1], vec![1, 1, 1]]);
        let s = simplify_tietze(&g, DEFAULT_BUDGET);
        assert_eq!(s.presentation.generator_count(), 1);
        assert_eq!(s.expressions[1].len(), 2);
    }

    #[test]
    fn replay_rejects_tampering() {
        let g = GroupPresentation::with_count(2, vec![vec![1, 2, 1, -2, -1, -2]]);
        let bad = TietzeTrace {
            moves: vec![TietzeMove::Eliminate {
                generator: 1,
                relator: 0,
            }],
        };
        assert!(replay(&g, &bad).is_err());
        let bad = TietzeTrace {
            moves: vec![TietzeMove::Drop { relator: 0 }],
        };
        assert!(replay(&g, &bad).is_err());
    }

    #[test]
    fn word_reduction() {
        let g = GroupPresentation::with_count(2, vec![vec![1, 2, -1, -2]]);
        let (moves, w) = reduce_word(&g, &[2, 1, -2, -1], 100);
        assert!(w.is_empty());
        let mut x = cyclic_reduce(&[2, 1, -2, -1]);
        for m in &moves {
            x = apply_word_move(&g, &x, m).unwrap();
        }
        assert!(x.is_empty());
    }
}
