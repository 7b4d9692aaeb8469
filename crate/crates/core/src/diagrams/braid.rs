//! Braid words.

use serde::{Deserialize, Serialize};

use super::morse::{Closure, MorseWord};
use super::pd::PDCode;
use crate::error::{Error, Result};

/// A braid on `strand_count` strands; letter `+i` is `sigma_i`, `-i` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strand_count: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<i32>) -> Result<Self> {
        if strand_count == 0 {
            return Err(Error::InvalidBraid("zero strands".into()));
        }
        if let Some(&l) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strand_count)
        {
            return Err(Error::InvalidBraid(format!(
                "generator {l} on {strand_count} strands"
            )));
        }
        Ok(Self {
            strand_count,
            letters,
        })
    }

    /// The permutation of strand positions, `perm[i]` = end position of the
    /// strand starting at `i`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strand_count).collect(); // position -> strand
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strand_count];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for i in 0..perm.len() {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        cycles
    }

    pub fn to_morse(&self) -> MorseWord {
        MorseWord::from_braid(self.strand_count, &self.letters, Closure::Plane)
            .expect("valid braid")
    }

    /// Plane closure as a PD code.
    pub fn closure(&self) -> PDCode {
        self.to_morse().to_pd()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// A shorter braid with the same closure: cancels `s s^-1` pairs across
    /// commuting letters, cyclically, and destabilizes strands whose
    /// generator occurs once.
    pub fn reduced(&self) -> BraidWord {
        let mut n = self.strand_count;
        let mut w = cancel(&self.letters);
        loop {
            let before = (n, w.len());
            // cyclic cancellation: rotate through every conjugate once
            for _ in 0..w.len() {
                w.rotate_left(1);
                w = cancel(&w);
            }
            if n > 1 {
                let top = (n - 1) as i32;
                if w.iter().filter(|l| l.abs() == top).count() == 1 {
                    w.retain(|l| l.abs() != top);
                    n -= 1;
                } else if w.iter().filter(|l| l.abs() == 1).count() == 1 {
                    w.retain(|l| l.abs() != 1);
                    for l in w.iter_mut() {
                        *l -= l.signum();
                    }
                    n -= 1;
                }
            }
            if (n, w.len()) == before {
                return BraidWord {
                    strand_count: n,
                    letters: w,
                };
            }
        }
    }
}

fn cancel(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    'next: for &x in letters {
        for k in (0..out.len()).rev() {
            let y = out[k];
            if y == -x {
                out.remove(k);
                continue 'next;
            }
            if (y.abs() - x.abs()).abs() < 2 {
                break;
            }
        }
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_components() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert_eq!(
            BraidWord::new(2, vec![1, 1, 1])
                .unwrap()
                .closure_components(),
            1
        );
        assert_eq!(
            BraidWord::new(2, vec![1, 1]).unwrap().closure_components(),
            2
        );
        assert_eq!(
            BraidWord::new(3, vec![1, -2, 1, -2])
                .unwrap()
                .closure_components(),
            1
        );
        assert_eq!(
            BraidWord::new(1, vec![])
                .unwrap()
                .closure()
                .crossing_count(),
            0
        );
    }
}
