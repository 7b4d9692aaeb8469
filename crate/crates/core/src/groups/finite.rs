//! Homomorphisms to small symmetric groups.

use serde::{Deserialize, Serialize};

use super::presentation::{GroupPresentation, Word};
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 6;

/// A permutation of `0..d` as its image list.
pub type Perm = Vec<u8>;

/// Images of the generators in `S_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermRep {
    pub degree: usize,
    pub images: Vec<Perm>,
}

fn identity(d: usize) -> Perm {
    (0..d as u8).collect()
}

fn compose(a: &[u8], b: &[u8]) -> Perm {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(a: &[u8]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

fn is_perm(p: &[u8], d: usize) -> bool {
    let mut seen = vec![false; d];
    p.len() == d
        && p.iter()
            .all(|&x| (x as usize) < d && !std::mem::replace(&mut seen[x as usize], true))
}

impl PermRep {
    pub fn eval(&self, w: &[i32]) -> Perm {
        let mut acc = identity(self.degree);
        for &x in w {
            let g = &self.images[x.unsigned_abs() as usize - 1];
            acc = if x > 0 {
                compose(&acc, g)
            } else {
                compose(&acc, &invert(g))
            };
        }
        acc
    }

    pub fn is_identity(&self, w: &[i32]) -> bool {
        self.eval(w) == identity(self.degree)
    }

    /// Checks that the images are permutations satisfying every relator.
    pub fn verify(&self, g: &GroupPresentation) -> Result<()> {
        if self.images.len() != g.generator_count() || self.degree == 0 || self.degree > MAX_DEGREE
        {
            return Err(Error::InvalidParameter(
                "witness does not match the presentation".into(),
            ));
        }
        if !self.images.iter().all(|p| is_perm(p, self.degree)) {
            return Err(Error::InvalidParameter(
                "witness image is not a permutation".into(),
            ));
        }
        if let Some(r) = g.relators.iter().find(|r| !self.is_identity(r)) {
            return Err(Error::InvalidParameter(format!(
                "relator {r:?} is not sent to the identity"
            )));
        }
        Ok(())
    }

    pub fn is_nontrivial(&self) -> bool {
        self.images.iter().any(|p| *p != identity(self.degree))
    }
}

fn all_perms(d: usize) -> Vec<Perm> {
    fn rec(d: usize, cur: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for x in 0..d {
            if !used[x] {
                used[x] = true;
                cur.push(x as u8);
                rec(d, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// Conjugacy class representatives of `S_d`, one per cycle type, each a
/// product of consecutive cycles.
fn class_reps(d: usize) -> Vec<Perm> {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            partitions(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(d, d, &mut Vec::new(), &mut parts);
    let mut reps: Vec<Perm> = parts
        .into_iter()
        .map(|p| {
            let mut perm = identity(d);
            let mut at = 0;
            for k in p {
                for i in 0..k {
                    perm[at + i] = (at + (i + 1) % k) as u8;
                }
                at += k;
            }
            perm
        })
        .collect();
    reps.sort();
    reps
}

/// Searches for a homomorphism to `S_d`, `d = 2..=max_degree`, with some
/// generator sent to a non-identity permutation and, if given, `target` sent
/// to a non-identity permutation. The first generator ranges over cycle-type
/// representatives; the others over all of `S_d` in lexicographic order.
pub fn find_perm_rep(
    g: &GroupPresentation,
    max_degree: usize,
    target: Option<&Word>,
) -> Option<PermRep> {
    let n = g.generator_count();
    if n == 0 {
        return None;
    }
    // relators grouped by the largest generator they use
    let mut by_last: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in &g.relators {
        if let Some(m) = r.iter().map(|x| x.unsigned_abs() as usize).max() {
            by_last[m - 1].push(r);
        }
    }
    for d in 2..=max_degree.min(MAX_DEGREE) {
        let perms = all_perms(d);
        let reps = class_reps(d);
        let mut rep = PermRep {
            degree: d,
            images: Vec::with_capacity(n),
        };
        if search(&mut rep, 0, n, &by_last, &perms, &reps, target) {
            return Some(rep);
        }
    }
    None
}

fn search(
    rep: &mut PermRep,
    i: usize,
    n: usize,
    by_last: &[Vec<&Word>],
    perms: &[Perm],
    reps: &[Perm],
    target: Option<&Word>,
) -> bool {
    if i == n {
        return match target {
            Some(t) => !rep.is_identity(t),
            None => rep.is_nontrivial(),
        };
    }
    let choices = if i == 0 { reps } else { perms };
    for p in choices {
        rep.images.push(p.clone());
        if by_last[i].iter().all(|r| rep.is_identity(r))
            && search(rep, i + 1, n, by_last, perms, reps, target)
        {
            return true;
        }
        rep.images.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_maps_onto_s3() {
        let g = GroupPresentation::with_count(2, vec![vec![1, 2, 1, -2, -1, -2]]);
        let r = find_perm_rep(&g, 6, Some(&vec![1, -2])).unwrap();
        assert_eq!(r.degree, 3);
        r.verify(&g).unwrap();
        assert!(!r.is_identity(&[1, -2]));
    }

    #[test]
    fn trivial_group_has_no_witness() {
        let g = GroupPresentation::with_count(2, vec![vec![1], vec![2]]);
        assert!(find_perm_rep(&g, 4, None).is_none());
        assert!(find_perm_rep(&GroupPresentation::with_count(0, vec![]), 4, None).is_none());
    }

    #[test]
    fn infinite_cyclic_maps_to_z2() {
        let g = GroupPresentation::with_count(1, vec![]);
        let r = find_perm_rep(&g, 6, None).unwrap();
        assert_eq!(r.degree, 2);
    }

    #[test]
    fn class_representatives() {
        assert_eq!(class_reps(3).len(), 3);
        assert_eq!(class_reps(6).len(), 11);
        assert_eq!(all_perms(4).len(), 24);
    }

    #[test]
    fn tampered_witness_fails() {
        let g = GroupPresentation::with_count(1, vec![vec![1, 1]]);
        let bad = PermRep {
            degree: 3,
            images: vec![vec![1, 2, 0]],
        };
        assert!(bad.verify(&g).is_err());
    }
}
