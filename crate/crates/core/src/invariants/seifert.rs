//! Seifert matrices of braid closures.

use serde::{Deserialize, Serialize};

use crate::diagrams::BraidWord;
use crate::error::{Error, Result};
use crate::invariants::fox::poly_determinant;
use crate::poly::LaurentPolynomial as Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        Self {
            entries: (0..n)
                .map(|i| (0..n).map(|j| self.entries[j][i]).collect())
                .collect(),
        }
    }

    /// `det(V - t V^T)`, normalized.
    pub fn alexander(&self) -> Poly {
        let n = self.size();
        let m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        &Poly::constant(self.entries[i][j]) - &Poly::monomial(self.entries[j][i], 1)
                    })
                    .collect()
            })
            .collect();
        let d = poly_determinant(&m);
        if d.is_zero() {
            d
        } else {
            d.normalized()
        }
    }

    /// `V + V^T`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entries[i][j] + self.entries[j][i])
                    .collect()
            })
            .collect()
    }
}

/// Seifert matrix of the surface built from one disk per strand and one
/// twisted band per letter. Generators are the loops through consecutive
/// bands of the same generator.
pub fn seifert_matrix(b: &BraidWord) -> Result<SeifertMatrix> {
    let comps = b.closure_components();
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    Ok(seifert_matrix_unchecked(b))
}

pub(crate) fn seifert_matrix_unchecked(b: &BraidWord) -> SeifertMatrix {
    let x = &b.letters;
    let len = x.len();
    // next[j]: index of the next letter with the same generator, if any
    let next: Vec<Option<usize>> = (0..len)
        .map(|j| (j + 1..len).find(|&k| x[k].abs() == x[j].abs()))
        .collect();
    let loops: Vec<usize> = (0..len).filter(|&j| next[j].is_some()).collect();
    let mut a = vec![vec![0i64; len]; len];
    for &i in &loops {
        let hi = next[i].unwrap();
        for j in i..len {
            if i == j {
                a[i][j] = -((x[i] + x[hi]).signum() as i64);
                continue;
            }
            let hj = match next[j] {
                Some(h) => h,
                None => continue,
            };
            if hi > hj || hi < j {
                continue;
            }
            if hi == j {
                if x[j] > 0 {
                    a[i][j] = 1;
                } else {
                    a[j][i] = -1;
                }
            } else {
                match x[i].abs() - x[j].abs() {
                    1 => a[j][i] = -1,
                    -1 => a[i][j] = 1,
                    _ => {}
                }
            }
        }
    }
    let entries = loops
        .iter()
        .map(|&i| loops.iter().map(|&j| a[i][j]).collect())
        .collect();
    SeifertMatrix { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, w: Vec<i32>) -> SeifertMatrix {
        seifert_matrix(&BraidWord::new(n, w).unwrap()).unwrap()
    }

    #[test]
    fn empty_braid() {
        assert_eq!(v(1, vec![]).size(), 0);
        assert!(v(1, vec![]).alexander().is_one());
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let t = v(2, vec![1, 1, 1]);
        assert_eq!(t.size(), 2);
        assert_eq!(t.alexander().to_string(), "t - 1 + t^-1");
        assert_eq!(
            v(3, vec![1, -2, 1, -2]).alexander().to_string(),
            "-t + 3 - t^-1"
        );
    }

    #[test]
    fn rejects_links() {
        assert!(seifert_matrix(&BraidWord::new(2, vec![1, 1]).unwrap()).is_err());
    }
}
