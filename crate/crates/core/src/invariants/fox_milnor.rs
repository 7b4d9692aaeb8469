//! Fox–Milnor factorization test `Delta = f(t) f(1/t)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial as Poly;

/// Largest degree of `f` searched exhaustively.
pub const DEGREE_CAP: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum FoxMilnor {
    Pass { f: Poly },
    Fail { reason: String },
    Unknown { reason: String },
}

impl FoxMilnor {
    pub fn label(&self) -> &'static str {
        match self {
            FoxMilnor::Pass { .. } => "pass",
            FoxMilnor::Fail { .. } => "fail",
            FoxMilnor::Unknown { .. } => "unknown",
        }
    }
}

/// `|Delta(-1)|`.
pub fn determinant(d: &Poly) -> BigInt {
    d.eval_at_minus_one().abs()
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

pub fn fox_milnor_check(d: &Poly) -> Result<FoxMilnor> {
    let one = d.eval_at_one();
    if !(one.is_one() || (-one).is_one()) {
        return Err(Error::NotKnotPolynomial(d.to_string()));
    }
    let det = determinant(d);
    if !is_square(&det) {
        return Ok(FoxMilnor::Fail {
            reason: format!("|Delta(-1)| = {det} is not a square"),
        });
    }
    let d = d.normalized();
    if !d.is_symmetric_up_to_units() {
        return Ok(FoxMilnor::Fail {
            reason: "Delta is not symmetric".into(),
        });
    }
    let deg = d.span() / 2;
    if deg > DEGREE_CAP {
        return Ok(FoxMilnor::Unknown {
            reason: format!("degree {deg} above cap {DEGREE_CAP}"),
        });
    }
    // symmetric coefficients c_k, k = 0..deg, with c_k = sum_i f_i f_{i+k}
    let c: Vec<i64> = (0..=deg)
        .map(|k| {
            d.coeff(k)
                .to_i64()
                .ok_or_else(|| Error::InvalidParameter("coefficient too large".into()))
        })
        .collect::<Result<_>>()?;
    let mut f = vec![0i64; deg as usize + 1];
    if search(&c, &mut f, 0, c[0]) {
        let poly = Poly::from_i64s(0, &f);
        return Ok(FoxMilnor::Pass { f: poly });
    }
    Ok(FoxMilnor::Fail {
        reason: format!("no factorization f(t) f(1/t) with deg f = {deg}"),
    })
}

/// Fox–Milnor test for `K1 # -K2`, whose Alexander polynomial is
/// `d1 * d2`. A common factor `h` of the two is symmetric, so it contributes
/// `h(t) h(1/t)` and is split off before the search.
pub fn fox_milnor_pair(d1: &Poly, d2: &Poly) -> Result<FoxMilnor> {
    for d in [d1, d2] {
        let one = d.eval_at_one();
        if !(one.is_one() || (-one).is_one()) {
            return Err(Error::NotKnotPolynomial(d.to_string()));
        }
    }
    let h = d1.gcd(d2);
    let (a, b) = (d1.div_exact(&h), d2.div_exact(&h));
    let (Some(a), Some(b)) = (a, b) else {
        return Err(Error::Internal("gcd does not divide".into()));
    };
    Ok(match fox_milnor_check(&(&a * &b))? {
        FoxMilnor::Pass { f } => FoxMilnor::Pass {
            f: (&h * &f).normalized(),
        },
        other => other,
    })
}

fn search(c: &[i64], f: &mut [i64], i: usize, budget: i64) -> bool {
    let n = f.len();
    if i == n {
        return budget == 0
            && (0..n).all(|k| (0..n - k).map(|j| f[j] * f[j + k]).sum::<i64>() == c[k]);
    }
    if i == n - 1 && n > 1 && c[n - 1] % f[0] != 0 {
        return false;
    }
    let r = (budget as f64).sqrt() as i64 + 1;
    let lo = if i == 0 { 1 } else { -r };
    for v in lo..=r {
        if v * v > budget || (i == n - 1 && v == 0) {
            continue;
        }
        f[i] = v;
        if search(c, f, i + 1, budget - v * v) {
            return true;
        }
    }
    f[i] = 0;
    false
}

/// `sigma(P(U), w) + sigma(K, w^n)`; the companion term vanishes when
/// `w^n = 1`.
pub fn satellite_sig_predict(
    sig_pu: &super::SignatureSample,
    sig_k: &super::SignatureSample,
    n: i64,
) -> Result<i64> {
    if sig_pu.on_jump || sig_k.on_jump {
        return Err(Error::OnJump);
    }
    match sig_pu.omega.pow(n) {
        None => Ok(sig_pu.value),
        Some(w) if w == sig_k.omega => Ok(sig_pu.value + sig_k.value),
        Some(_) => Err(Error::InvalidParameter(
            "companion sample is not taken at w^n".into(),
        )),
    }
}

/// `Delta_{P(U)}(t) * Delta_K(t^w)`, normalized.
pub fn satellite_alex_predict(d_pu: &Poly, d_k: &Poly, w: i64) -> Poly {
    let p = d_pu * &d_k.substitute_power(w.abs());
    if p.is_zero() {
        p
    } else {
        p.normalized()
    }
}
