//! Obstructions built from the satellite formulas: non-surjectivity for
//! winding number at least two, telling an operator apart from connected-sum
//! operators, and the reduction that makes an operator hit the unknot.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagrams::{Closure, MorseWord, PDCode};
use crate::error::{Error, Result};
use crate::invariants::{
    fox_milnor_check, knot_alexander, knot_seifert_matrix, lt_signature, Angle, FoxMilnor,
};
use crate::patterns::{apply, compose, q_pattern, twist, winding_number, AnnularPattern};
use crate::poly::LaurentPolynomial;

/// Largest angle denominator accepted for signature samples.
pub const MAX_SAMPLE_DENOMINATOR: i64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionVerdict {
    NotInImage,
    Distinct,
    Unknown,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Signature samples of `J` and `P(U)`; a witness when two samples with
    /// the same `n`-th power disagree.
    Signatures {
        n: i64,
        samples: Vec<SignaturePair>,
        skipped: Vec<Angle>,
        witness: Option<SignatureWitness>,
    },
    /// Alexander polynomials of `P(U)` and `tau(P)(U)` and their Fox–Milnor
    /// status.
    Twisting {
        pattern: AnnularPattern,
        twisted: AnnularPattern,
        untwisted_poly: LaurentPolynomial,
        twisted_poly: LaurentPolynomial,
        untwisted_status: FoxMilnor,
        twisted_status: FoxMilnor,
    },
    Precondition {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignaturePair {
    pub omega: Angle,
    pub sigma_j: i64,
    pub sigma_pu: i64,
}

/// Everything needed to recompute the two offending samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureWitness {
    pub j: PDCode,
    pub pu: PDCode,
    pub n: i64,
    pub first: SignaturePair,
    pub second: SignaturePair,
}

/// `k/den` for `k = 1 .. 2 den - 1`, together with `-1`, reduced and
/// deduplicated.
pub fn default_samples(den: i64) -> Result<Vec<Angle>> {
    if !(1..=MAX_SAMPLE_DENOMINATOR).contains(&den) {
        return Err(Error::InvalidParameter(format!(
            "sample denominator {den} outside 1..={MAX_SAMPLE_DENOMINATOR}"
        )));
    }
    let mut v: Vec<Angle> = (1..2 * den)
        .map(|k| Angle::new(k, den))
        .collect::<Result<_>>()?;
    v.push(Angle::minus_one());
    v.sort_by(|a, b| (a.num * b.den).cmp(&(b.num * a.den)));
    v.dedup();
    Ok(v)
}

/// Searches the samples for `w1, w2` with `w1^n = w2^n` at which
/// `sigma(J, .) - sigma(P(U), .)` differs. By the satellite signature formula
/// that difference is a function of `w^n` on the image of `P`, so such a pair
/// shows `J` is not concordant to any `P(K)`.
pub fn surjectivity_obstruction(
    p: &AnnularPattern,
    j: &MorseWord,
    samples: &[Angle],
) -> Result<ObstructionReport> {
    let n = winding_number(p);
    if n.abs() <= 1 {
        return Ok(ObstructionReport {
            verdict: ObstructionVerdict::NotApplicable,
            evidence: Evidence::Precondition {
                reason: format!("winding number {n}: the obstruction needs |w| >= 2"),
            },
        });
    }
    if let Some(a) = samples.iter().find(|a| a.den > MAX_SAMPLE_DENOMINATOR) {
        return Err(Error::InvalidParameter(format!(
            "sample {}/{} has denominator above {MAX_SAMPLE_DENOMINATOR}",
            a.num, a.den
        )));
    }
    let j_pd = j.with_closure(Closure::Plane).to_pd();
    if !j_pd.is_knot() {
        return Err(Error::NotAKnot(j_pd.component_count()));
    }
    let pu = apply(p, &MorseWord::new(1, Closure::Plane, vec![])?)?.to_pd();
    let vj = knot_seifert_matrix(&j_pd)?;
    let vpu = knot_seifert_matrix(&pu)?;

    let mut pairs = Vec::new();
    let mut skipped = Vec::new();
    for &w in samples {
        let (a, b) = (lt_signature(&vj, w), lt_signature(&vpu, w));
        if a.on_jump || b.on_jump {
            skipped.push(w);
        } else {
            pairs.push(SignaturePair {
                omega: w,
                sigma_j: a.value,
                sigma_pu: b.value,
            });
        }
    }
    let mut by_power: BTreeMap<Option<(i64, i64)>, Vec<&SignaturePair>> = BTreeMap::new();
    for s in &pairs {
        by_power
            .entry(s.omega.pow(n).map(|a| (a.num, a.den)))
            .or_default()
            .push(s);
    }
    let mut witness = None;
    'outer: for group in by_power.values() {
        let first = group[0];
        for s in &group[1..] {
            if s.sigma_j - s.sigma_pu != first.sigma_j - first.sigma_pu {
                witness = Some(SignatureWitness {
                    j: j_pd.clone(),
                    pu: pu.clone(),
                    n,
                    first: first.clone(),
                    second: (*s).clone(),
                });
                break 'outer;
            }
        }
    }
    let verdict = if witness.is_some() {
        ObstructionVerdict::NotInImage
    } else {
        ObstructionVerdict::Unknown
    };
    Ok(ObstructionReport {
        verdict,
        evidence: Evidence::Signatures {
            n,
            samples: pairs,
            skipped,
            witness,
        },
    })
}

/// Compares the Fox–Milnor status of `P(U)` and `tau(P)(U)`. The twist fixes
/// every connected-sum operator, so a change certifies that `P` is none of
/// them.
pub fn distinguish_from_connected_sum(p: &AnnularPattern) -> Result<ObstructionReport> {
    let w = winding_number(p);
    if w.abs() != 1 {
        return Ok(ObstructionReport {
            verdict: ObstructionVerdict::NotApplicable,
            evidence: Evidence::Precondition {
                reason: format!("winding number {w}: connected-sum operators have w = 1"),
            },
        });
    }
    let twisted = twist(p, 1);
    let evidence = twisting_evidence(p, &twisted)?;
    let verdict = twisting_verdict(&evidence);
    Ok(ObstructionReport { verdict, evidence })
}

fn twisting_evidence(p: &AnnularPattern, twisted: &AnnularPattern) -> Result<Evidence> {
    let u = MorseWord::new(1, Closure::Plane, vec![])?;
    let untwisted_poly = knot_alexander(&apply(p, &u)?.to_pd())?;
    let twisted_poly = knot_alexander(&apply(twisted, &u)?.to_pd())?;
    Ok(Evidence::Twisting {
        pattern: p.clone(),
        twisted: twisted.clone(),
        untwisted_status: fox_milnor_check(&untwisted_poly)?,
        twisted_status: fox_milnor_check(&twisted_poly)?,
        untwisted_poly,
        twisted_poly,
    })
}

fn twisting_verdict(e: &Evidence) -> ObstructionVerdict {
    let Evidence::Twisting {
        untwisted_status: a,
        twisted_status: b,
        ..
    } = e
    else {
        return ObstructionVerdict::Unknown;
    };
    match (a, b) {
        (FoxMilnor::Pass { .. }, FoxMilnor::Fail { .. })
        | (FoxMilnor::Fail { .. }, FoxMilnor::Pass { .. }) => ObstructionVerdict::Distinct,
        _ => ObstructionVerdict::Unknown,
    }
}

/// `Q(-J) * P`, which sends `K` to `-J # P(K)`; when `J = P(U)` it hits the
/// unknot.
pub fn unknot_image_reduction(p: &AnnularPattern, j: &MorseWord) -> Result<AnnularPattern> {
    let jd = j.with_closure(Closure::Plane).to_pd();
    let q = q_pattern(&jd.mirror_reverse(), Some("-J".into()))?;
    compose(&q, p)
}

impl ObstructionReport {
    /// Recomputes the evidence behind a `NotInImage` or `Distinct` verdict
    /// from the report alone. Other verdicts replay trivially.
    pub fn replay(&self) -> Result<()> {
        let fail = |why: String| {
            Err(Error::InvalidParameter(format!(
                "report does not replay: {why}"
            )))
        };
        match (&self.verdict, &self.evidence) {
            (
                ObstructionVerdict::NotInImage,
                Evidence::Signatures {
                    witness: Some(w), ..
                },
            ) => {
                if w.first.omega.pow(w.n) != w.second.omega.pow(w.n) {
                    return fail("the two samples have different powers".into());
                }
                let vj = knot_seifert_matrix(&w.j)?;
                let vpu = knot_seifert_matrix(&w.pu)?;
                for s in [&w.first, &w.second] {
                    let (a, b) = (lt_signature(&vj, s.omega), lt_signature(&vpu, s.omega));
                    if a.on_jump || b.on_jump || a.value != s.sigma_j || b.value != s.sigma_pu {
                        return fail(format!("sample at {}/{} differs", s.omega.num, s.omega.den));
                    }
                }
                if w.first.sigma_j - w.first.sigma_pu == w.second.sigma_j - w.second.sigma_pu {
                    return fail("the differences agree".into());
                }
                Ok(())
            }
            (
                ObstructionVerdict::Distinct,
                Evidence::Twisting {
                    pattern, twisted, ..
                },
            ) => {
                if twist(pattern, 1) != *twisted {
                    return fail("the twisted pattern is not tau of the pattern".into());
                }
                let again = twisting_evidence(pattern, twisted)?;
                if again != self.evidence
                    || twisting_verdict(&again) != ObstructionVerdict::Distinct
                {
                    return fail("recomputed polynomials differ".into());
                }
                Ok(())
            }
            (ObstructionVerdict::NotInImage | ObstructionVerdict::Distinct, _) => {
                fail("verdict without matching evidence".into())
            }
            _ => Ok(()),
        }
    }
}
