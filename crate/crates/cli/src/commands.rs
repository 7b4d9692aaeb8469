//! One function per subcommand. Each returns its payload and whether the
//! answer is conclusive.

use serde::Serialize;
use serde_json::{json, Value};

use satcalc::diagrams::Closure;
use satcalc::groups::{normal_closure_member, strong_winding_check, TriState, Verdict};
use satcalc::invariants::{
    determinant, fox_milnor_check, fox_milnor_pair, knot_alexander, knot_signature, Angle,
    FoxMilnor,
};
use satcalc::obstructions::{
    default_samples, distinguish_from_connected_sum, surjectivity_obstruction, ObstructionVerdict,
};
use satcalc::patterns::{apply, compose, to_link, twist, winding_number, Catalog};
use satcalc::poly::LaurentPolynomial;
use satcalc::surgery::{
    alexander_surgered, apply_surgered, apply_to_surgered, cylinder_boundary_map, cylinder_h1, h1,
    invert_pattern, FramedLink, SurgeredPattern,
};

use crate::input::{decode, Input, Knot};
use crate::{CliError, Options};

pub const COMMANDS: &[&str] = &[
    "wind",
    "apply",
    "compose",
    "twist",
    "to-link",
    "alex",
    "sig",
    "det",
    "fox-milnor",
    "strong",
    "member",
    "invert",
    "apply-surgered",
    "h1",
    "obstruct",
    "distinguish",
    "catalog",
];

pub struct Outcome {
    pub payload: Value,
    pub conclusive: bool,
}

fn done(payload: Value) -> Result<Outcome, CliError> {
    Ok(Outcome {
        payload,
        conclusive: true,
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialize")
}

pub fn run(command: &str, input: &Input, opts: &Options) -> Result<Outcome, CliError> {
    let catalog = Catalog::from_env()?;
    match command {
        "wind" => {
            let p = input.pattern("pattern", &catalog)?;
            done(json!({ "w": winding_number(&p) }))
        }
        "apply" => {
            let p = input.pattern("pattern", &catalog)?;
            let k = input.knot("knot")?;
            let w = apply(&p, &k.word())?;
            done(json!({ "pd": to_value(&w.to_pd()), "word": to_value(&w) }))
        }
        "compose" => {
            let outer = input.pattern("outer", &catalog)?;
            let inner = input.pattern("inner", &catalog)?;
            done(json!({ "pattern": to_value(&compose(&outer, &inner)?) }))
        }
        "twist" => {
            let p = input.pattern("pattern", &catalog)?;
            let t: i64 = input.optional("t")?.unwrap_or(1);
            done(json!({ "pattern": to_value(&twist(&p, t)) }))
        }
        "to-link" => {
            let p = input.pattern("pattern", &catalog)?;
            done(json!({ "link": to_value(&to_link(&p)), "w": winding_number(&p) }))
        }
        "alex" => {
            let k = input.knot("knot")?;
            done(json!({ "poly": to_value(&knot_alexander(&k.pd())?) }))
        }
        "sig" => sig(input, opts),
        "det" => {
            let k = input.knot("knot")?;
            let d = determinant(&knot_alexander(&k.pd())?);
            let det = match i64::try_from(&d) {
                Ok(v) => json!(v),
                Err(_) => json!(d.to_string()),
            };
            done(json!({ "det": det }))
        }
        "fox-milnor" => {
            let d = poly_or_knot(input, "poly", "knot")?;
            let r = match poly_or_knot_optional(input, "other_poly", "other_knot")? {
                Some(e) => fox_milnor_pair(&d, &e)?,
                None => fox_milnor_check(&d)?,
            };
            Ok(Outcome {
                conclusive: !matches!(r, FoxMilnor::Unknown { .. }),
                payload: to_value(&r),
            })
        }
        "strong" => {
            let p = input.pattern("pattern", &catalog)?;
            tri_state(strong_winding_check(&p, opts.budget)?, winding_number(&p))
        }
        "member" => {
            let p = input.pattern("pattern", &catalog)?;
            tri_state(normal_closure_member(&p, opts.budget)?, winding_number(&p))
        }
        "invert" => {
            let p = input.pattern("pattern", &catalog)?;
            let cert = match input.optional::<TriState>("certificate")? {
                Some(c) => c,
                None => normal_closure_member(&p, opts.budget)?,
            };
            let s = invert_pattern(&p, &cert)?;
            let both = satcalc::surgery::compose_surgered(&p, &s)?;
            done(json!({
                "surgered": to_value(&s),
                "homology_sphere": s.is_homology_sphere(),
                "composite_boundary_map": to_value(&cylinder_boundary_map(&both)?),
            }))
        }
        "apply-surgered" => {
            let s: SurgeredPattern = input.typed("surgered")?;
            let k = input.knot("knot")?;
            let mut sk = apply_surgered(&s, &k.word())?;
            if input.has("outer") {
                sk = apply_to_surgered(&input.pattern("outer", &catalog)?, &sk)?;
            }
            done(json!({ "knot": to_value(&sk), "poly": to_value(&alexander_surgered(&sk)?) }))
        }
        "h1" => {
            if input.has("surgered") {
                let s: SurgeredPattern = input.typed("surgered")?;
                let amb = s.ambient();
                done(json!({
                    "group": cylinder_h1(&s)?.to_string(),
                    "ambient_group": h1(&amb).to_string(),
                    "homology_sphere": amb.is_homology_sphere(),
                    "boundary_map": to_value(&cylinder_boundary_map(&s)?),
                }))
            } else {
                let f: FramedLink = decode(&input.raw(), "framed link")?;
                done(
                    json!({ "group": h1(&f).to_string(), "homology_sphere": f.is_homology_sphere() }),
                )
            }
        }
        "obstruct" => {
            let p = input.pattern("pattern", &catalog)?;
            let j = input.knot("j")?;
            let samples = match input.optional::<Vec<Angle>>("samples")? {
                Some(v) => v
                    .iter()
                    .map(|a| Angle::new(a.num, a.den))
                    .collect::<satcalc::Result<Vec<_>>>()?,
                None => default_samples(opts.samples)?,
            };
            let r = surjectivity_obstruction(&p, &j.word().with_closure(Closure::Plane), &samples)?;
            Ok(Outcome {
                conclusive: r.verdict != ObstructionVerdict::Unknown,
                payload: to_value(&r),
            })
        }
        "distinguish" => {
            let p = input.pattern("pattern", &catalog)?;
            let r = distinguish_from_connected_sum(&p)?;
            Ok(Outcome {
                conclusive: r.verdict != ObstructionVerdict::Unknown,
                payload: to_value(&r),
            })
        }
        "catalog" => match input.optional::<String>("name")? {
            Some(name) => done(json!({ "pattern": to_value(&catalog.pattern(&name)?) })),
            None => done(json!({ "names": catalog.names() })),
        },
        other => Err(CliError::UnknownCommand(other.to_string())),
    }
}

fn sig(input: &Input, opts: &Options) -> Result<Outcome, CliError> {
    let k = input.knot("knot")?.pd();
    let omegas = match input.optional::<Angle>("omega")? {
        Some(a) => vec![Angle::new(a.num, a.den)?],
        None if opts.samples_given => default_samples(opts.samples)?,
        None => vec![Angle::minus_one()],
    };
    let samples = omegas
        .into_iter()
        .map(|w| knot_signature(&k, w))
        .collect::<satcalc::Result<Vec<_>>>()?;
    if let [one] = samples.as_slice() {
        return done(to_value(one));
    }
    done(json!({ "samples": to_value(&samples) }))
}

fn tri_state(t: TriState, w: i64) -> Result<Outcome, CliError> {
    let conclusive = t.value != Verdict::Inconclusive;
    let mut payload = to_value(&t);
    payload["w"] = json!(w);
    Ok(Outcome {
        payload,
        conclusive,
    })
}

fn poly_or_knot(input: &Input, poly: &str, knot: &str) -> Result<LaurentPolynomial, CliError> {
    poly_or_knot_optional(input, poly, knot)?
        .ok_or_else(|| CliError::Schema(format!("missing field {poly:?} or {knot:?}")))
}

fn poly_or_knot_optional(
    input: &Input,
    poly: &str,
    knot: &str,
) -> Result<Option<LaurentPolynomial>, CliError> {
    if let Some(p) = input.optional(poly)? {
        return Ok(Some(p));
    }
    if input.has(knot) {
        return Ok(Some(knot_alexander(
            &Knot::from_value(input.required(knot)?, knot)?.pd(),
        )?));
    }
    Ok(None)
}
