//! Levine–Tristram signatures.
//!
//! For `w = exp(i pi q)` the form `(1-w)V + (1-conj w)V^T` equals
//! `sin(pi q) * (tau S + i A)` with `S = V + V^T`, `A = V^T - V` and
//! `tau = tan(pi q / 2)`. The signature is therefore locally constant in `tau`;
//! it is evaluated exactly at rational points bracketing `tau`, which is
//! computed in fixed point until both brackets agree. Whether `w` is a root of
//! the Alexander polynomial is decided exactly by cyclotomic division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::seifert::SeifertMatrix;
use crate::poly::LaurentPolynomial as Poly;

/// `w = exp(i pi q)` with `q = num/den` in `(0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Angle {
    pub num: i64,
    pub den: i64,
}

impl Angle {
    /// Reduces `num/den` modulo 2.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("angle denominator is zero".into()));
        }
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = n.gcd(&d);
        n /= g;
        d /= g;
        n = n.rem_euclid(2 * d);
        if n == 0 {
            return Err(Error::InvalidParameter(
                "signature at w = 1 is undefined".into(),
            ));
        }
        Ok(Self { num: n, den: d })
    }

    pub fn minus_one() -> Self {
        Self { num: 1, den: 1 }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Order of `w` as a root of unity.
    pub fn order(&self) -> u64 {
        let two_d = 2 * self.den;
        (two_d / self.num.gcd(&two_d)) as u64
    }

    /// `w^n`, or `None` when `w^n = 1`.
    pub fn pow(&self, n: i64) -> Option<Self> {
        Self::new(self.num * n, self.den).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureSample {
    pub omega: Angle,
    pub value: i64,
    pub on_jump: bool,
}

/// Signature and nullity of a rational symmetric matrix by congruence
/// diagonalization.
pub fn symmetric_inertia(m: &[Vec<BigRational>]) -> (i64, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut sig = 0i64;
    let mut nullity = 0usize;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row/col k += row/col j makes the pivot 2 a_kj
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                nullity += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        sig += if p.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
            a[i][k] = BigRational::zero();
        }
    }
    (sig, nullity)
}

fn int_inertia(m: &[Vec<i64>]) -> (i64, usize) {
    let q: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    symmetric_inertia(&q)
}

/// Signature of `tau S + i A` through its real form `[[tau S, -A], [A, tau S]]`.
fn hermitian_inertia(s: &[Vec<i64>], a: &[Vec<i64>], tau: &BigRational) -> (i64, usize) {
    let n = s.len();
    let mut r = vec![vec![BigRational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let ts = tau * BigRational::from_integer(s[i][j].into());
            let aij = BigRational::from_integer(a[i][j].into());
            r[i][j] = ts.clone();
            r[i + n][j + n] = ts;
            r[i][j + n] = -aij.clone();
            r[i + n][j] = aij;
        }
    }
    let (sig, null) = symmetric_inertia(&r);
    (sig / 2, null / 2)
}

/// Whether `w` is a root of `p`.
pub fn is_root(p: &Poly, w: Angle) -> bool {
    if p.is_zero() {
        return true;
    }
    let phi = Poly::cyclotomic(w.order());
    let shifted = p.shift(-p.min_exp());
    shifted.div_exact(&phi).is_some()
}

pub fn lt_signature(v: &SeifertMatrix, omega: Angle) -> SignatureSample {
    let n = v.size();
    if n == 0 {
        return SignatureSample {
            omega,
            value: 0,
            on_jump: false,
        };
    }
    let s = v.symmetrized();
    if omega.num == omega.den {
        let (sig, null) = int_inertia(&s);
        return SignatureSample {
            omega,
            value: sig,
            on_jump: null > 0,
        };
    }
    let on_jump = is_root(&v.alexander(), omega);
    let a: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| v.entries[j][i] - v.entries[i][j]).collect())
        .collect();
    let sin_sign = if omega.num < omega.den { 1 } else { -1 };
    let mut bits = 64u32;
    loop {
        let (lo, hi) = tan_bracket(omega, bits);
        let (sl, nl) = hermitian_inertia(&s, &a, &lo);
        let (sh, nh) = hermitian_inertia(&s, &a, &hi);
        if on_jump && bits >= 256 {
            return SignatureSample {
                omega,
                value: sin_sign * (sl + sh) / 2,
                on_jump,
            };
        }
        if !on_jump && sl == sh && nl == 0 && nh == 0 {
            return SignatureSample {
                omega,
                value: sin_sign * sl,
                on_jump,
            };
        }
        if bits >= 4096 {
            return SignatureSample {
                omega,
                value: sin_sign * (sl + sh) / 2,
                on_jump: true,
            };
        }
        bits *= 2;
    }
}

/// Rational interval containing `tan(pi q / 2)`.
fn tan_bracket(w: Angle, bits: u32) -> (BigRational, BigRational) {
    let guard = 32;
    let p = bits + guard;
    let pi = pi_fixed(p);
    let theta = (&pi * BigInt::from(w.num)) / BigInt::from(2 * w.den);
    let (s, c) = sin_cos_fixed(&theta, p);
    let scale = BigInt::one() << p;
    let eps = BigInt::one() << guard;
    let q = |x: BigInt| BigRational::new(x, scale.clone());
    let cands = [
        (&s - &eps, &c - &eps),
        (&s - &eps, &c + &eps),
        (&s + &eps, &c - &eps),
        (&s + &eps, &c + &eps),
    ];
    if (&c - &eps).signum() != (&c + &eps).signum() {
        // cos(theta) indistinguishable from zero: tan is huge, widen generously
        let big = BigRational::from_integer(BigInt::one() << bits);
        return if w.num < w.den {
            (big.clone(), big * BigRational::from_integer(2.into()))
        } else {
            (-big.clone() * BigRational::from_integer(2.into()), -big)
        };
    }
    let vals: Vec<BigRational> = cands.into_iter().map(|(sn, cs)| q(sn) / q(cs)).collect();
    let lo = vals.iter().min().unwrap().clone();
    let hi = vals.iter().max().unwrap().clone();
    (lo, hi)
}

/// `atan(1/x) * 2^p`.
fn atan_inv_fixed(x: u64, p: u32) -> BigInt {
    let one = BigInt::one() << p;
    let x2 = BigInt::from(x * x);
    let mut term = &one / BigInt::from(x);
    let mut sum = term.clone();
    let mut k = 1u64;
    while !term.is_zero() {
        term = &term / &x2;
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(p: u32) -> BigInt {
    let g = p + 16;
    let v = atan_inv_fixed(5, g) * 16 - atan_inv_fixed(239, g) * 4;
    v >> 16
}

/// `(sin theta, cos theta) * 2^p` for `theta = theta_fixed / 2^p` in `[0, pi]`.
fn sin_cos_fixed(theta: &BigInt, p: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << p;
    let mut s = BigInt::zero();
    let mut c = BigInt::zero();
    let mut term = one.clone();
    let mut k = 0u64;
    while !term.is_zero() {
        match k % 4 {
            0 => c += &term,
            1 => s += &term,
            2 => c -= &term,
            _ => s -= &term,
        }
        k += 1;
        term = ((&term * theta) >> p) / BigInt::from(k);
    }
    (s, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BraidWord;
    use crate::invariants::seifert_matrix;

    fn v(n: usize, w: Vec<i32>) -> SeifertMatrix {
        seifert_matrix(&BraidWord::new(n, w).unwrap()).unwrap()
    }

    #[test]
    fn angles() {
        assert_eq!(Angle::new(7, 6).unwrap(), Angle { num: 7, den: 6 });
        assert_eq!(Angle::new(-1, 1).unwrap(), Angle::minus_one());
        assert!(Angle::new(4, 2).is_err());
        assert_eq!(Angle::new(1, 3).unwrap().order(), 6);
        assert_eq!(Angle::new(2, 3).unwrap().order(), 3);
        assert_eq!(
            Angle::new(1, 6).unwrap().pow(2),
            Some(Angle::new(1, 3).unwrap())
        );
    }

    #[test]
    fn fixed_point_pi() {
        let p = pi_fixed(200);
        let approx = BigRational::new(p, BigInt::one() << 200u32);
        let lo = BigRational::new(314159265358979_i64.into(), 100000000000000_i64.into());
        let hi = BigRational::new(314159265358980_i64.into(), 100000000000000_i64.into());
        assert!(approx > lo && approx < hi);
    }

    #[test]
    fn right_trefoil() {
        let t = v(2, vec![1, 1, 1]);
        assert_eq!(lt_signature(&t, Angle::minus_one()).value, -2);
        assert_eq!(lt_signature(&t, Angle::new(1, 6).unwrap()).value, 0);
        assert_eq!(lt_signature(&t, Angle::new(7, 6).unwrap()).value, -2);
        let s = lt_signature(&t, Angle::new(1, 3).unwrap());
        assert!(s.on_jump);
        assert!(!lt_signature(&t, Angle::new(1, 2).unwrap()).on_jump);
    }

    #[test]
    fn mirror_and_figure_eight() {
        assert_eq!(
            lt_signature(&v(2, vec![-1, -1, -1]), Angle::minus_one()).value,
            2
        );
        assert_eq!(
            lt_signature(&v(3, vec![1, -2, 1, -2]), Angle::minus_one()).value,
            0
        );
        assert_eq!(
            lt_signature(&v(2, vec![1, 1, 1, 1, 1]), Angle::minus_one()).value,
            -4
        );
    }
}
