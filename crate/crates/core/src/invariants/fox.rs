//! Alexander polynomials via Fox free differential calculus.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::GroupPresentation;
use crate::poly::LaurentPolynomial as Poly;

/// Maximum number of row subsets examined when a presentation has more
/// relators than needed.
const MAX_MINORS: usize = 4096;

/// Fox Jacobian under the abelianization `phi` (generator -> power of t).
pub fn fox_matrix(g: &GroupPresentation, phi: &[i64]) -> Vec<Vec<Poly>> {
    let n = g.generator_count();
    g.relators
        .iter()
        .map(|r| {
            let mut row = vec![Poly::zero(); n];
            let mut e = 0i64;
            for &x in r {
                let j = x.unsigned_abs() as usize - 1;
                if x > 0 {
                    row[j] = &row[j] + &Poly::t_pow(e);
                    e += phi[j];
                } else {
                    e -= phi[j];
                    row[j] = &row[j] - &Poly::t_pow(e);
                }
            }
            row
        })
        .collect()
}

/// Determinant by fraction-free elimination over Z[t, t^-1].
pub fn poly_determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev = Poly::one();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Poly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Primitive integer generator of the kernel of the exponent-sum matrix, if
/// that kernel has rank one. First nonzero entry positive.
pub fn infinite_cyclic_map(g: &GroupPresentation) -> Option<Vec<i64>> {
    let n = g.generator_count();
    let rows: Vec<Vec<BigRational>> = g
        .exponent_matrix()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut a = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let d = &f * &a[r][j];
                    a[i][j] = &a[i][j] - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if n - pivots.len() != 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![BigRational::zero(); n];
    v[free] = BigRational::one();
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = -a[i][free].clone();
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |l, x| num_integer::lcm(l, x.denom().clone()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    let mut out: Vec<i64> = ints
        .iter()
        .map(|x| i64::try_from(x / &g).expect("small"))
        .collect();
    if out.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        out.iter_mut().for_each(|x| *x = -*x);
    }
    Some(out)
}

/// Alexander polynomial of a presentation whose abelianization is Z, using
/// the map to Z read from the relators. Normalized (symmetric exponents,
/// positive value at 1).
pub fn alexander_fox(g: &GroupPresentation) -> Result<Poly> {
    let ab = g.abelianization();
    if !(ab.rank == 1 && ab.torsion.is_empty()) {
        return Err(Error::AbelianizationNotZ(ab.to_string()));
    }
    let phi = infinite_cyclic_map(g).ok_or_else(|| Error::Internal("no map to Z".into()))?;
    Ok(alexander_with_map(g, &phi))
}

/// First elementary ideal generator of the Alexander module for the map
/// `phi` to Z, normalized. Zero if the module has positive rank.
pub fn alexander_with_map(g: &GroupPresentation, phi: &[i64]) -> Poly {
    let n = g.generator_count();
    if n == 0 {
        return Poly::one();
    }
    let j = match (0..n)
        .filter(|&j| phi[j] != 0)
        .min_by_key(|&j| phi[j].abs())
    {
        Some(j) => j,
        None => return Poly::zero(),
    };
    let m = fox_matrix(g, phi);
    let r = m.len();
    if r + 1 < n {
        return Poly::zero();
    }
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let minor = |rows: &[usize]| -> Poly {
        let sub: Vec<Vec<Poly>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&c| m[i][c].clone()).collect())
            .collect();
        poly_determinant(&sub)
    };
    let mut acc = Poly::zero();
    let mut rows: Vec<usize> = (0..n - 1).collect();
    let mut seen = 0;
    loop {
        let d = minor(&rows);
        acc = acc.gcd(&d);
        seen += 1;
        if acc.is_one() || seen >= MAX_MINORS || !next_subset(&mut rows, r) {
            break;
        }
    }
    // det of the minor deleting column j equals Delta * (t^phi_j - 1)/(t - 1)
    let k = phi[j].abs();
    let factor = Poly::from_terms((0..k).map(|i| (i, 1)));
    let delta = acc.div_exact(&factor).unwrap_or(acc);
    if delta.is_zero() {
        return delta;
    }
    delta.normalized()
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BraidWord;
    use crate::groups::wirtinger;

    fn alex(n: usize, w: Vec<i32>) -> String {
        alexander_fox(&wirtinger(&BraidWord::new(n, w).unwrap().closure()))
            .unwrap()
            .to_string()
    }

    #[test]
    fn small_knots() {
        assert_eq!(alex(2, vec![1, 1, 1]), "t - 1 + t^-1");
        assert_eq!(alex(2, vec![-1, -1, -1]), "t - 1 + t^-1");
        assert_eq!(alex(3, vec![1, -2, 1, -2]), "-t + 3 - t^-1");
        assert_eq!(alex(2, vec![1, 1, 1, 1, 1]), "t^2 - t + 1 - t^-1 + t^-2");
        assert_eq!(alex(1, vec![]), "1");
    }

    #[test]
    fn extra_relators_take_gcd() {
        let t = wirtinger(&BraidWord::new(2, vec![1, 1, 1]).unwrap().closure());
        let mut g = t.clone();
        g.relators.push(g.relators[0].clone());
        assert_eq!(alexander_fox(&g).unwrap(), alexander_fox(&t).unwrap());
    }

    #[test]
    fn rejects_links() {
        let h = wirtinger(&BraidWord::new(2, vec![1, 1]).unwrap().closure());
        assert!(matches!(
            alexander_fox(&h),
            Err(Error::AbelianizationNotZ(_))
        ));
    }
}
