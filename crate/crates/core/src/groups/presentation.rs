//! Finite group presentations over signed generator indices.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::linalg::{cokernel, AbelianGroup};

/// A word in the generators: letter `+i` is generator `i` (1-based), `-i` its
/// inverse.
pub type Word = Vec<i32>;

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut v = free_reduce(w);
    let mut lo = 0;
    let mut hi = v.len();
    while hi - lo >= 2 && v[lo] == -v[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    v.drain(hi..);
    v.drain(..lo);
    v
}

pub fn concat(parts: &[&[i32]]) -> Word {
    free_reduce(&parts.concat())
}

/// Replaces every occurrence of generator `g` (and its inverse) by `image`.
pub fn substitute(w: &[i32], g: i32, image: &[i32]) -> Word {
    let inv = inverse(image);
    let mut out = Vec::with_capacity(w.len());
    for &x in w {
        if x == g {
            out.extend_from_slice(image);
        } else if x == -g {
            out.extend_from_slice(&inv);
        } else {
            out.push(x);
        }
    }
    free_reduce(&out)
}

/// Exponent sum of each generator.
pub fn exponent_sums(w: &[i32], ngens: usize) -> Vec<i64> {
    let mut v = vec![0i64; ngens];
    for &x in w {
        v[x.unsigned_abs() as usize - 1] += x.signum() as i64;
    }
    v
}

pub fn word_to_string(w: &[i32], names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&x| {
            let n = &names[x.unsigned_abs() as usize - 1];
            if x > 0 {
                n.clone()
            } else {
                format!("{n}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let n = generators.len() as i32;
        for r in &relators {
            assert!(
                r.iter().all(|&x| x != 0 && x.abs() <= n),
                "relator uses unknown generator: {r:?}"
            );
        }
        let relators = relators.iter().map(|r| free_reduce(r)).collect();
        Self {
            generators,
            relators,
        }
    }

    /// Generators named `x1, ..., xn`.
    pub fn with_count(n: usize, relators: Vec<Word>) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn is_trivial_presentation(&self) -> bool {
        self.generators.is_empty()
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| exponent_sums(r, self.generators.len()))
            .collect()
    }

    pub fn abelianization(&self) -> AbelianGroup {
        let m: Vec<Vec<BigInt>> = self
            .exponent_matrix()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        cokernel(&m, self.generators.len())
    }

    /// Appends relators.
    pub fn quotient(&self, extra: &[Word]) -> Self {
        let mut relators = self.relators.clone();
        relators.extend(extra.iter().cloned());
        Self::new(self.generators.clone(), relators)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| word_to_string(r, &self.generators))
            .collect();
        write!(
            f,
            "< {} | {} >",
            self.generators.join(", "),
            rels.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(cyclic_reduce(&[1, -1]), Vec::<i32>::new());
        assert_eq!(inverse(&[1, -2]), vec![2, -1]);
        assert_eq!(substitute(&[1, 2, -1], 1, &[2, 3]), vec![2, 3, 2, -3, -2]);
    }

    #[test]
    fn abelianization_and_quotient() {
        let g = GroupPresentation::with_count(2, vec![vec![1, 2, -1, -2]]);
        assert_eq!(g.abelianization().rank, 2);
        let q = g.quotient(&[vec![1, 1]]);
        assert_eq!(q.abelianization().to_string(), "Z + Z/2");
        assert_eq!(g.quotient(&[]), g);
    }
}
