//! Exact integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Laurent polynomial `sum c_k t^k` with integer coefficients.
///
/// Stored densely from the lowest nonzero exponent; the zero polynomial has
/// no coefficients. The leading and trailing coefficients are never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_dense(0, vec![BigInt::from(c)])
    }

    /// `c * t^k`
    pub fn monomial(c: i64, k: i64) -> Self {
        Self::from_dense(k, vec![BigInt::from(c)])
    }

    /// `t^k`
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// Builds `sum coeffs[i] t^(low + i)`.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_dense(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut table: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *table.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_table(&table)
    }

    pub fn from_table(table: &BTreeMap<i64, BigInt>) -> Self {
        let Some((&lo, _)) = table.iter().next() else {
            return Self::zero();
        };
        let hi = *table.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (&e, c) in table {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Exponent to coefficient table of the nonzero terms.
    pub fn to_table(&self) -> BTreeMap<i64, BigInt> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// `max_exp - min_exp`, or `-1` for zero.
    pub fn span(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn trailing(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Substitutes `t -> t^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        if k == 0 {
            let total: BigInt = self.coeffs.iter().sum();
            return Self::from_dense(0, vec![total]);
        }
        Self::from_table(&self.terms().map(|(e, c)| (e * k, c.clone())).collect())
    }

    /// `p(t^-1)`
    pub fn invert_variable(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        // Laurent evaluation needs t invertible when low < 0; only used at t = ±1
        // or with non-negative exponents.
        if self.low < 0 {
            assert!(
                t.abs().is_one(),
                "negative exponents evaluated only at t = ±1"
            );
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        let base_pow = if self.low >= 0 {
            num_traits::pow(t.clone(), self.low as usize)
        } else if (self.low % 2 == 0) || t.is_positive() {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        acc * base_pow
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.eval(&BigInt::from(-1))
    }

    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Exact division in `Z[t, t^-1]`; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return None;
        }
        let dlead = d.coeffs.last().unwrap();
        let qlen = rem.len() - dl + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * dc;
            }
            q[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.low - d.low, q))
    }

    /// gcd in `Z[t, t^-1]`, normalized by [`LaurentPolynomial::normalized`].
    ///
    /// Computed from primitive parts via a primitive remainder sequence, with
    /// the gcd of the contents restored.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part().coeffs;
        let mut b = other.primitive_part().coeffs;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive(r);
        }
        let g = Self::from_dense(0, a).scale(&content);
        g.normalized()
    }

    /// Representative of the class up to units `±t^k`: exponents centered
    /// (lowest exponent `-floor(span/2)`), and sign chosen so that `p(1) > 0`,
    /// or the leading coefficient is positive when `p(1) = 0`.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let span = self.span();
        let mut p = Self {
            low: -(span / 2),
            coeffs: self.coeffs.clone(),
        };
        let at_one = p.eval_at_one();
        let negate = if at_one.is_zero() {
            p.leading().is_negative()
        } else {
            at_one.is_negative()
        };
        if negate {
            p = -p;
        }
        p
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs == other.coeffs || self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == &-b)
    }

    /// True when `p(t^-1) = ±t^k p(t)`.
    pub fn is_symmetric_up_to_units(&self) -> bool {
        self.eq_up_to_units(&self.invert_variable())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The `n`th cyclotomic polynomial.
    pub fn cyclotomic(n: u64) -> Self {
        assert!(n > 0);
        // t^n - 1 = prod_{d | n} Phi_d
        let mut p = Self::monomial(1, n as i64) - Self::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = p
                    .div_exact(&Self::cyclotomic(d))
                    .expect("cyclotomic divides t^n - 1");
            }
        }
        p
    }
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        // leading/trailing zeros at the bottom are fine; we work in Z[t]
    }
    r
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let c = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !c.is_zero() && !c.is_one() {
        for x in v.iter_mut() {
            *x /= &c;
        }
    }
    // Remove factors of t: we are in the Laurent ring.
    let lz = v.iter().take_while(|c| c.is_zero()).count();
    v.drain(..lz);
    v
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exp().max(rhs.max_exp());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - low) as usize] += c;
        }
        LaurentPolynomial::from_dense(low, coeffs)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPolynomial::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || e == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

// Serialized as {"exp": coeff, ...} with exponents as decimal strings.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            let v: serde_json::Value = match i64::try_from(c) {
                Ok(small) => small.into(),
                Err(_) => c.to_string().into(),
            };
            map.serialize_entry(&e.to_string(), &v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut table = BTreeMap::new();
        for (k, v) in raw {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            let c: BigInt = match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("coefficient must be an integer"))?,
                serde_json::Value::String(s) => s
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")))?,
                _ => return Err(D::Error::custom("coefficient must be an integer")),
            };
            if c.is_zero() {
                continue;
            }
            *table.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Ok(Self::from_table(&table))
    }
}
