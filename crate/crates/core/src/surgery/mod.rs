//! Surgery presentations: framed links, the manifolds they describe, and
//! patterns and knots drawn inside them.
//!
//! Framings are surgery coefficients relative to the 0-framing of each
//! component in `S^3`. A coefficient `c` on a component with meridian `mu` and
//! 0-framed longitude `lambda` fills along `mu^c lambda`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagrams::morse::{Node, Trace};
use crate::diagrams::{Closure, MorseWord, PDCode, Slice};
use crate::error::{Error, Result};
use crate::groups::certify::{membership_question, verify, TriState, Verdict};
use crate::groups::tietze::{simplify_tietze, DEFAULT_BUDGET};
use crate::groups::wirtinger::{longitude_in, wirtinger_data};
use crate::invariants::alexander_fox;
use crate::linalg::{cokernel_i64, determinant, solve_rational, AbelianGroup, IntMatrix};
use crate::patterns::{
    axis_slices, full_twists, satellite_component, winding_number, AnnularPattern,
};
use crate::poly::LaurentPolynomial;

/// A link with an integer surgery coefficient on every component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FramedJson", into = "FramedJson")]
pub struct FramedLink {
    diagram: PDCode,
    framings: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct FramedJson {
    #[serde(flatten)]
    diagram: PDCode,
    framings: Vec<i64>,
}

impl TryFrom<FramedJson> for FramedLink {
    type Error = Error;

    fn try_from(j: FramedJson) -> Result<Self> {
        FramedLink::new(j.diagram, j.framings)
    }
}

impl From<FramedLink> for FramedJson {
    fn from(f: FramedLink) -> Self {
        FramedJson {
            diagram: f.diagram,
            framings: f.framings,
        }
    }
}

impl FramedLink {
    pub fn new(diagram: PDCode, framings: Vec<i64>) -> Result<Self> {
        if framings.len() != diagram.component_count() {
            return Err(Error::InvalidParameter(format!(
                "{} framings for {} components",
                framings.len(),
                diagram.component_count()
            )));
        }
        Ok(Self { diagram, framings })
    }

    pub fn diagram(&self) -> &PDCode {
        &self.diagram
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    /// Whether surgery yields an integral homology sphere.
    pub fn is_homology_sphere(&self) -> bool {
        let d = determinant(&linking_matrix(self));
        let unit = d.abs().is_one();
        debug_assert_eq!(unit, h1(self).is_trivial());
        unit
    }
}

/// Framings on the diagonal, linking numbers off it.
pub fn linking_matrix(f: &FramedLink) -> IntMatrix {
    let comps: Vec<usize> = (0..f.framings.len()).collect();
    linking_matrix_of(&f.diagram, &comps, &f.framings)
}

/// First homology of the surgered manifold.
pub fn h1(f: &FramedLink) -> AbelianGroup {
    cokernel_i64(&linking_matrix(f), f.framings.len())
}

fn linking_matrix_of(d: &PDCode, comps: &[usize], framings: &[i64]) -> IntMatrix {
    let k = comps.len();
    let mut m = vec![vec![0; k]; k];
    for i in 0..k {
        m[i][i] = framings[i];
        for j in i + 1..k {
            let l = d
                .linking_number(comps[i], comps[j])
                .expect("components exist");
            m[i][j] = l;
            m[j][i] = l;
        }
    }
    m
}

/// A Morse word whose traced components are one distinguished curve followed
/// by framed surgery components.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Tagged {
    word: MorseWord,
    seeds: Vec<(Node, bool)>,
    framings: Vec<i64>,
}

impl Tagged {
    fn new(word: MorseWord, seeds: Vec<(Node, bool)>, framings: Vec<i64>) -> Result<Self> {
        if seeds.len() != framings.len() + 1 {
            return Err(Error::InvalidParameter(format!(
                "{} components tagged, {} framings",
                seeds.len(),
                framings.len()
            )));
        }
        let counts = word.level_counts();
        for &((l, q), _) in &seeds {
            if l >= counts.len() || q == 0 || q > counts[l] {
                return Err(Error::InvalidParameter(format!(
                    "no strand at level {l}, position {q}"
                )));
            }
        }
        let tr = word.trace_with(&seeds);
        if tr.components.len() != seeds.len() {
            return Err(Error::InvalidParameter(format!(
                "{} components in the word, {} tagged",
                tr.components.len(),
                seeds.len()
            )));
        }
        if seeds
            .iter()
            .enumerate()
            .any(|(i, &(n, _))| tr.component_of(n) != Some(i))
        {
            return Err(Error::InvalidParameter("two tags on one component".into()));
        }
        Ok(Self {
            word,
            seeds,
            framings,
        })
    }

    fn trace(&self) -> Trace {
        self.word.trace_with(&self.seeds)
    }

    fn pd(&self) -> PDCode {
        self.word.to_pd_with(&self.trace())
    }

    fn surgery_count(&self) -> usize {
        self.framings.len()
    }

    fn surgery_matrix(&self, pd: &PDCode) -> IntMatrix {
        let comps: Vec<usize> = (1..=self.surgery_count()).collect();
        linking_matrix_of(pd, &comps, &self.framings)
    }

    /// Linking numbers of component `x` with the surgery components.
    fn lk_vector(&self, pd: &PDCode, x: usize) -> Vec<i64> {
        (1..=self.surgery_count())
            .map(|i| {
                if i == x {
                    0
                } else {
                    pd.linking_number(x, i).expect("components exist")
                }
            })
            .collect()
    }

    /// Signed count of the strands of each component through the seam.
    fn seam_sums(&self) -> Vec<i64> {
        let tr = self.trace();
        let mut out = vec![0; self.seeds.len()];
        for q in 1..=self.word.strands() {
            let c = tr.component_of((0, q)).expect("seam node");
            out[c] += if tr.is_up((0, q)) == Some(true) {
                1
            } else {
                -1
            };
        }
        out
    }

    fn ambient(&self) -> FramedLink {
        let tr = self.trace();
        let keep: Vec<usize> = (1..=self.surgery_count()).collect();
        let (sub, seeds) = self.word.sublink(&tr, &keep);
        let pd = sub
            .with_closure(Closure::Plane)
            .to_pd_with(&sub.trace_with(&seeds));
        FramedLink::new(pd, self.framings.clone()).expect("one framing per component")
    }

    fn check_homology_sphere(&self, pd: &PDCode) -> Result<IntMatrix> {
        let m = self.surgery_matrix(pd);
        if !determinant(&m).abs().is_one() {
            return Err(Error::NotHomologySphere(
                cokernel_i64(&m, m.len()).to_string(),
            ));
        }
        Ok(m)
    }

    fn json(&self) -> (TagJson, Vec<SurgeryTag>) {
        let tag = |&((level, pos), up): &(Node, bool)| TagJson { level, pos, up };
        let rest = self.seeds[1..]
            .iter()
            .zip(&self.framings)
            .map(|(s, &framing)| SurgeryTag {
                at: tag(s),
                framing,
            })
            .collect();
        (tag(&self.seeds[0]), rest)
    }

    fn from_json(word: MorseWord, first: TagJson, surgery: Vec<SurgeryTag>) -> Result<Self> {
        let mut seeds = vec![first.seed()];
        seeds.extend(surgery.iter().map(|s| s.at.seed()));
        Self::new(word, seeds, surgery.iter().map(|s| s.framing).collect())
    }
}

/// `u^T m^-1 v` over the rationals.
fn form(m: &IntMatrix, u: &[i64], v: &[i64]) -> Result<BigRational> {
    if m.is_empty() {
        return Ok(BigRational::zero());
    }
    let y = solve_rational(m, v)
        .ok_or_else(|| Error::NotHomologySphere("linking matrix is singular".into()))?;
    Ok(u.iter()
        .zip(&y)
        .map(|(&a, b)| BigRational::from_integer(a.into()) * b)
        .sum())
}

fn integral(r: BigRational, what: &str) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::Internal(format!("{what} is not an integer: {r}")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Internal(format!("{what} too large")))
}

#[derive(Clone, Copy, Serialize, Deserialize)]
struct TagJson {
    level: usize,
    pos: usize,
    up: bool,
}

impl TagJson {
    fn seed(&self) -> (Node, bool) {
        ((self.level, self.pos), self.up)
    }
}

#[derive(Serialize, Deserialize)]
struct SurgeryTag {
    #[serde(flatten)]
    at: TagJson,
    framing: i64,
}

/// A pattern in a homology solid torus: an annular word whose components are
/// the pattern curve followed by surgery components. The axis of the annulus
/// is the unframed axis curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurgeredPatternJson", into = "SurgeredPatternJson")]
pub struct SurgeredPattern {
    inner: Tagged,
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SurgeredPatternJson {
    word: MorseWord,
    pattern: TagJson,
    surgery: Vec<SurgeryTag>,
    #[serde(default)]
    name: Option<String>,
}

impl TryFrom<SurgeredPatternJson> for SurgeredPattern {
    type Error = Error;

    fn try_from(j: SurgeredPatternJson) -> Result<Self> {
        let inner = Tagged::from_json(j.word.with_closure(Closure::Annulus), j.pattern, j.surgery)?;
        Ok(Self {
            inner,
            name: j.name,
        })
    }
}

impl From<SurgeredPattern> for SurgeredPatternJson {
    fn from(s: SurgeredPattern) -> Self {
        let (pattern, surgery) = s.inner.json();
        SurgeredPatternJson {
            word: s.inner.word,
            pattern,
            surgery,
            name: s.name,
        }
    }
}

impl SurgeredPattern {
    /// `pattern` and each surgery entry are a node on the component and
    /// whether it runs upward there.
    pub fn new(
        word: MorseWord,
        pattern: (Node, bool),
        surgery: Vec<((Node, bool), i64)>,
        name: Option<String>,
    ) -> Result<Self> {
        let mut seeds = vec![pattern];
        seeds.extend(surgery.iter().map(|s| s.0));
        let framings = surgery.iter().map(|s| s.1).collect();
        let inner = Tagged::new(word.with_closure(Closure::Annulus), seeds, framings)?;
        Ok(Self { inner, name })
    }

    /// An ordinary pattern, with no surgery.
    pub fn from_pattern(p: &AnnularPattern) -> Self {
        let word = p.word().clone();
        let seeds = if p.seam_strands() > 0 {
            p.seeds()
        } else {
            vec![(p.trace().components[0].start, true)]
        };
        let inner = Tagged::new(word, seeds, vec![]).expect("a pattern is one component");
        Self {
            inner,
            name: p.name().map(String::from),
        }
    }

    pub fn word(&self) -> &MorseWord {
        &self.inner.word
    }

    pub fn seeds(&self) -> &[(Node, bool)] {
        &self.inner.seeds
    }

    pub fn framings(&self) -> &[i64] {
        &self.inner.framings
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The surgery components alone.
    pub fn ambient(&self) -> FramedLink {
        self.inner.ambient()
    }

    /// Diagram of the pattern curve, the axis and the surgery components, in
    /// that order. The axis is oriented so that an upward seam strand links
    /// it `+1`.
    pub fn link_diagram(&self) -> PDCode {
        let n = self.word().strands();
        let mut slices = axis_slices(n);
        let lift = slices.len();
        slices.extend_from_slice(self.word().slices());
        let word = MorseWord::new(n, Closure::Plane, slices).expect("valid link word");
        let mut seeds: Vec<(Node, bool)> = self
            .seeds()
            .iter()
            .map(|&((l, q), up)| ((l + lift, q), up))
            .collect();
        seeds.insert(1, ((1, n + 1), true));
        let pd = word.to_pd_with(&word.trace_with(&seeds));
        let sums = self.inner.seam_sums();
        let mut idx = 0usize;
        let probe = sums
            .iter()
            .enumerate()
            .find(|(_, &s)| s != 0)
            .map(|(i, &s)| {
                idx = if i == 0 { 0 } else { i + 1 };
                s
            });
        match probe {
            Some(s)
                if pd
                    .linking_number(idx, 1)
                    .expect("components exist")
                    .signum()
                    != s.signum() =>
            {
                pd.reverse_component(1).expect("axis exists")
            }
            _ => pd,
        }
    }

    fn data(&self) -> Result<CylinderData> {
        let pd = self.inner.pd();
        let lambda = self.inner.surgery_matrix(&pd);
        let sums = self.inner.seam_sums();
        Ok(CylinderData {
            v_pattern: self.inner.lk_vector(&pd, 0),
            v_axis: sums[1..].to_vec(),
            lk: sums[0],
            lambda,
        })
    }

    pub fn is_homology_sphere(&self) -> bool {
        self.ambient().is_homology_sphere()
    }

    /// Linking number of the pattern curve with the axis in the surgered
    /// manifold.
    pub fn winding(&self) -> Result<i64> {
        let d = self.data()?;
        let r = BigRational::from_integer(d.lk.into()) - form(&d.lambda, &d.v_pattern, &d.v_axis)?;
        integral(r, "winding number")
    }

    /// Framing, relative to the `S^3` 0-framing, of the longitude of the
    /// pattern curve that is null-homologous in the surgered manifold.
    pub fn pattern_framing(&self) -> Result<i64> {
        let d = self.data()?;
        integral(
            form(&d.lambda, &d.v_pattern, &d.v_pattern)?,
            "pattern framing",
        )
    }

    /// The same for the axis. The diagrammatic satellite construction is only
    /// correct when this vanishes.
    pub fn axis_correction(&self) -> Result<i64> {
        let d = self.data()?;
        integral(form(&d.lambda, &d.v_axis, &d.v_axis)?, "axis framing")
    }
}

impl From<&AnnularPattern> for SurgeredPattern {
    fn from(p: &AnnularPattern) -> Self {
        Self::from_pattern(p)
    }
}

impl fmt::Display for SurgeredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{n} ")?;
        }
        write!(
            f,
            "{} with framings {:?}",
            self.inner.word, self.inner.framings
        )
    }
}

struct CylinderData {
    lambda: IntMatrix,
    v_pattern: Vec<i64>,
    v_axis: Vec<i64>,
    lk: i64,
}

/// A knot in the manifold obtained by surgery on the other components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurgeredKnotJson", into = "SurgeredKnotJson")]
pub struct SurgeredKnot {
    inner: Tagged,
}

#[derive(Serialize, Deserialize)]
struct SurgeredKnotJson {
    word: MorseWord,
    knot: TagJson,
    surgery: Vec<SurgeryTag>,
}

impl TryFrom<SurgeredKnotJson> for SurgeredKnot {
    type Error = Error;

    fn try_from(j: SurgeredKnotJson) -> Result<Self> {
        Ok(Self {
            inner: Tagged::from_json(j.word.with_closure(Closure::Plane), j.knot, j.surgery)?,
        })
    }
}

impl From<SurgeredKnot> for SurgeredKnotJson {
    fn from(s: SurgeredKnot) -> Self {
        let (knot, surgery) = s.inner.json();
        SurgeredKnotJson {
            word: s.inner.word,
            knot,
            surgery,
        }
    }
}

impl SurgeredKnot {
    pub fn new(
        word: MorseWord,
        knot: (Node, bool),
        surgery: Vec<((Node, bool), i64)>,
    ) -> Result<Self> {
        let mut seeds = vec![knot];
        seeds.extend(surgery.iter().map(|s| s.0));
        let framings = surgery.iter().map(|s| s.1).collect();
        Ok(Self {
            inner: Tagged::new(word.with_closure(Closure::Plane), seeds, framings)?,
        })
    }

    /// A knot in `S^3`.
    pub fn from_knot(k: &MorseWord) -> Result<Self> {
        let k = k.with_closure(Closure::Plane);
        let tr = k.trace();
        if tr.components.len() != 1 {
            return Err(Error::NotAKnot(tr.components.len()));
        }
        let c = &tr.components[0];
        Ok(Self {
            inner: Tagged::new(k, vec![(c.start, c.start_up)], vec![])?,
        })
    }

    pub fn word(&self) -> &MorseWord {
        &self.inner.word
    }

    pub fn framings(&self) -> &[i64] {
        &self.inner.framings
    }

    /// Knot first, then the surgery components.
    pub fn diagram(&self) -> PDCode {
        self.inner.pd()
    }

    pub fn ambient(&self) -> FramedLink {
        self.inner.ambient()
    }

    /// Framing, relative to the `S^3` 0-framing, of the knot's longitude that
    /// is null-homologous in the surgered manifold.
    pub fn framing(&self) -> Result<i64> {
        let pd = self.inner.pd();
        let m = self.inner.surgery_matrix(&pd);
        let v = self.inner.lk_vector(&pd, 0);
        integral(form(&m, &v, &v)?, "knot framing")
    }
}

/// The inverse of a pattern with winding number one whose meridian lies in
/// the normal closure of the axis longitude: 0-surgery on both components of
/// the mirror image of (pattern closure, axis) with reversed orientations.
/// The new pattern curve is a meridian of the old axis, the new axis a
/// meridian of the old pattern curve.
pub fn invert_pattern(p: &AnnularPattern, cert: &TriState) -> Result<SurgeredPattern> {
    if cert.value != Verdict::CertifiedYes {
        return Err(Error::Refused(format!(
            "the pattern meridian is not certified to lie in the normal closure of the axis longitude ({:?})",
            cert.value
        )));
    }
    verify(&membership_question(p)?, cert)
        .map_err(|e| Error::Refused(format!("the certificate is not for this pattern: {e}")))?;
    let w = winding_number(p);
    if w.abs() != 1 {
        return Err(Error::Refused(format!("winding number {w} is not a unit")));
    }
    let n = p.seam_strands();
    // strand 1 passes through the seam; the others are closed on the right
    let axis: Vec<Slice> = axis_slices(n).iter().map(Slice::mirrored).collect();
    let mut slices: Vec<Slice> = (2..=n).map(Slice::Cup).collect();
    slices.push(axis[0]);
    slices.extend(axis_slices(1).iter().map(|s| s.shifted(n + 1)));
    slices.extend_from_slice(&axis[1..]);
    slices.extend(p.word().slices().iter().map(Slice::mirrored));
    slices.extend((2..=n).rev().map(Slice::Cap));
    let word = MorseWord::new(1, Closure::Annulus, slices)?;

    let old_pattern = ((0, 1), p.seam_signs()[0] < 0);
    let mut old_axis = ((n, n + 1), true);
    let mut meridian = ((n + 1, n + 3), true);
    let build = |m, a| {
        SurgeredPattern::new(
            word.clone(),
            m,
            vec![(old_pattern, 0), (a, 0)],
            p.name().map(|s| format!("inv({s})")),
        )
    };
    let trial = build(meridian, old_axis)?;
    if trial.inner.pd().linking_number(1, 2)? != -w {
        old_axis.1 = !old_axis.1;
    }
    if build(meridian, old_axis)?.winding()? < 0 {
        meridian.1 = !meridian.1;
    }
    let s = build(meridian, old_axis)?;
    if !s.is_homology_sphere() || s.winding()? != 1 || s.axis_correction()? != 0 {
        return Err(Error::Internal(
            "inverse construction lost its homology data".into(),
        ));
    }
    Ok(s)
}

/// `S(K)`: the surgered pattern placed along `K` with the 0-framing.
pub fn apply_surgered(s: &SurgeredPattern, k: &MorseWord) -> Result<SurgeredKnot> {
    let k = k.with_closure(Closure::Plane);
    let comps = k.component_count();
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    let c = s.axis_correction()?;
    if c != 0 {
        return Err(Error::Refused(format!(
            "axis longitude is framed {c} in the surgered solid torus"
        )));
    }
    let (word, seeds) = satellite_component(s.word(), s.seeds(), &k, &[], 0, 0)?;
    Ok(SurgeredKnot {
        inner: Tagged::new(word, seeds, s.framings().to_vec())?,
    })
}

/// `P(K)` for a knot `K` in a surgered manifold, framed by the longitude that
/// is null-homologous there.
pub fn apply_to_surgered(p: &AnnularPattern, k: &SurgeredKnot) -> Result<SurgeredKnot> {
    let f = k.framing()?;
    let (word, seeds) = satellite_component(p.word(), &p.seeds(), k.word(), &k.inner.seeds, 0, f)?;
    Ok(SurgeredKnot {
        inner: Tagged::new(word, seeds, k.framings().to_vec())?,
    })
}

/// The surgered pattern `P * S` with `(P * S)(K) = P(S(K))`.
pub fn compose_surgered(p: &AnnularPattern, s: &SurgeredPattern) -> Result<SurgeredPattern> {
    let f = s.pattern_framing()?;
    let (word, seeds) = satellite_component(p.word(), &p.seeds(), s.word(), s.seeds(), 0, f)?;
    let name = match (p.name(), s.name()) {
        (Some(a), Some(b)) => Some(format!("{a}*{b}")),
        _ => None,
    };
    Ok(SurgeredPattern {
        inner: Tagged::new(word, seeds, s.framings().to_vec())?,
        name,
    })
}

/// Alexander polynomial of the knot in its surgered manifold.
pub fn alexander_surgered(k: &SurgeredKnot) -> Result<LaurentPolynomial> {
    let pd = k.diagram();
    k.inner.check_homology_sphere(&pd)?;
    let w = wirtinger_data(&pd);
    let mut extra = Vec::new();
    for (i, &c) in k.framings().iter().enumerate() {
        let comp = i + 1;
        let mu = w.letter(pd.components()[comp][0]);
        let mut r = vec![if c > 0 { mu } else { -mu }; c.unsigned_abs() as usize];
        r.extend(longitude_in(&pd, &w, comp)?);
        extra.push(r);
    }
    let g = w.group.quotient(&extra);
    let s = simplify_tietze(&g, DEFAULT_BUDGET);
    alexander_fox(&s.presentation)
}

/// A 2x2 rational matrix, columns the images of `(l, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMap(pub [[BigRational; 2]; 2]);

impl BoundaryMap {
    pub fn identity() -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        BoundaryMap([[o.clone(), z.clone()], [z, o]])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_integer())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.0;
        let b = &other.0;
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        BoundaryMap([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn entries(&self) -> [[String; 2]; 2] {
        self.0.clone().map(|r| r.map(|x| x.to_string()))
    }
}

impl Serialize for BoundaryMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundaryMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = <[[String; 2]; 2]>::deserialize(d)?;
        let parse = |x: &String| x.parse::<BigRational>().map_err(D::Error::custom);
        Ok(BoundaryMap([
            [parse(&raw[0][0])?, parse(&raw[0][1])?],
            [parse(&raw[1][0])?, parse(&raw[1][1])?],
        ]))
    }
}

impl fmt::Display for BoundaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries();
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

/// The map from the inner boundary torus (0-framed longitude and meridian of
/// the pattern curve) to the outer one (meridian of the axis, which is the
/// solid torus longitude, and the axis longitude, which is the solid torus
/// meridian), in rational first homology of the cylinder.
pub fn cylinder_boundary_map(s: &SurgeredPattern) -> Result<BoundaryMap> {
    let d = s.data()?;
    let q = |u: &[i64], v: &[i64]| form(&d.lambda, u, v);
    let lk = BigRational::from_integer(d.lk.into());
    // H1 of the cylinder over Q is spanned by the meridians of axis and
    // pattern once the surgery relations are solved for the others.
    let lambda_pattern = [
        &lk - q(&d.v_pattern, &d.v_axis)?,
        -q(&d.v_pattern, &d.v_pattern)?,
    ];
    let lambda_axis = [-q(&d.v_axis, &d.v_axis)?, &lk - q(&d.v_axis, &d.v_pattern)?];
    // adding multiples of its own meridian makes each longitude vanish when
    // the other curve is filled back in
    let ell_pattern = lambda_pattern[0].clone();
    let ell_axis = lambda_axis[1].clone();
    if ell_axis.is_zero() {
        return Err(Error::InvalidParameter(
            "winding number 0: the boundary map is not invertible".into(),
        ));
    }
    let z = BigRational::zero();
    Ok(BoundaryMap([
        [ell_pattern, z.clone()],
        [z, ell_axis.recip()],
    ]))
}

/// Integral first homology of the cylinder: `Z^2` for a homology cylinder.
pub fn cylinder_h1(s: &SurgeredPattern) -> Result<AbelianGroup> {
    let d = s.data()?;
    let k = d.lambda.len();
    let rows: IntMatrix = (0..k)
        .map(|i| {
            let mut r = d.lambda[i].clone();
            r.push(d.v_axis[i]);
            r.push(d.v_pattern[i]);
            r
        })
        .collect();
    Ok(cokernel_i64(&rows, k + 2))
}

/// Inserts `t` full twists on the strands `first..first + count` just before
/// slice `at`. Every component is framed; a component meeting the twisted
/// strands with signed count `a` has its framing raised by `t a^2`.
pub fn insert_twists(
    word: &MorseWord,
    seeds: &[(Node, bool)],
    framings: &[i64],
    at: usize,
    first: usize,
    count: usize,
    t: i64,
) -> Result<(MorseWord, Vec<(Node, bool)>, Vec<i64>)> {
    let counts = word.level_counts();
    if at >= counts.len() || first == 0 || first + count - 1 > counts[at] {
        return Err(Error::InvalidParameter(format!(
            "no {count} strands from {first} at level {at}"
        )));
    }
    let tr = word.trace_with(seeds);
    if framings.len() != tr.components.len() {
        return Err(Error::InvalidParameter(
            "one framing per component expected".into(),
        ));
    }
    let mut a = vec![0i64; framings.len()];
    for q in first..first + count {
        let c = tr.component_of((at, q)).expect("node exists");
        a[c] += if tr.is_up((at, q)) == Some(true) {
            1
        } else {
            -1
        };
    }
    let block = full_twists(count, t);
    let w = word.insert_block(at, first - 1, &block)?;
    let seeds = seeds
        .iter()
        .map(|&((l, q), up)| ((if l > at { l + block.len() } else { l }, q), up))
        .collect();
    let framings = framings
        .iter()
        .zip(&a)
        .map(|(&c, &ai)| c + t * ai * ai)
        .collect();
    Ok((w, seeds, framings))
}

/// Twisted framings and linking numbers predicted by [`insert_twists`].
pub fn twisted_matrix(m: &IntMatrix, a: &[i64], t: i64) -> IntMatrix {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| x + t * a[i] * a[j])
                .collect()
        })
        .collect()
}

/// Linking matrix of every component of a framed word.
pub fn word_linking_matrix(
    word: &MorseWord,
    seeds: &[(Node, bool)],
    framings: &[i64],
) -> IntMatrix {
    let pd = word.to_pd_with(&word.trace_with(seeds));
    let comps: Vec<usize> = (0..framings.len()).collect();
    linking_matrix_of(&pd, &comps, framings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BraidWord;
    use crate::groups::certify::normal_closure_member;
    use crate::invariants::{fox_milnor_pair, knot_alexander, FoxMilnor};
    use crate::patterns::{apply, core, p_pattern};
    use num_bigint::BigInt;

    fn trefoil() -> MorseWord {
        BraidWord::new(2, vec![1, 1, 1]).unwrap().to_morse()
    }

    fn unknot() -> MorseWord {
        MorseWord::new(1, Closure::Plane, vec![]).unwrap()
    }

    fn hopf() -> PDCode {
        BraidWord::new(2, vec![1, 1]).unwrap().to_morse().to_pd()
    }

    #[test]
    fn linking_matrices_and_homology() {
        let u = FramedLink::new(PDCode::unknot(), vec![0]).unwrap();
        assert_eq!(linking_matrix(&u), vec![vec![0]]);
        assert_eq!(h1(&u).to_string(), "Z");
        assert!(!u.is_homology_sphere());
        let h = FramedLink::new(hopf(), vec![0, 0]).unwrap();
        assert_eq!(linking_matrix(&h), vec![vec![0, 1], vec![1, 0]]);
        assert!(h1(&h).is_trivial());
        assert!(h.is_homology_sphere());
        let t = FramedLink::new(trefoil().to_pd(), vec![1]).unwrap();
        assert_eq!(linking_matrix(&t), vec![vec![1]]);
        let two = FramedLink::new(PDCode::unknot(), vec![2]).unwrap();
        assert_eq!(h1(&two).to_string(), "Z/2");
        assert!(FramedLink::new(hopf(), vec![0]).is_err());
    }

    #[test]
    fn framed_link_json() {
        let h = FramedLink::new(hopf(), vec![0, 0]).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.contains("\"framings\":[0,0]"));
        let back: FramedLink = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn ordinary_pattern_data() {
        let cable = AnnularPattern::from_slices(2, vec![Slice::Cross(1, 1); 3], None).unwrap();
        let s = SurgeredPattern::from_pattern(&cable);
        assert_eq!(s.winding().unwrap(), 2);
        let m = cylinder_boundary_map(&s).unwrap();
        assert_eq!(m.to_string(), "[[2, 0], [0, 1/2]]");
        assert_eq!(cylinder_h1(&s).unwrap().to_string(), "Z^2");
        assert!(
            cylinder_boundary_map(&SurgeredPattern::from_pattern(&core()))
                .unwrap()
                .is_identity()
        );
        let link = s.link_diagram();
        assert_eq!(link.linking_number(0, 1).unwrap(), 2);
    }

    #[test]
    fn surgered_knot_without_surgery() {
        let k = SurgeredKnot::from_knot(&trefoil()).unwrap();
        assert_eq!(alexander_surgered(&k).unwrap().to_string(), "t - 1 + t^-1");
        assert_eq!(
            alexander_surgered(&SurgeredKnot::from_knot(&unknot()).unwrap()).unwrap(),
            LaurentPolynomial::one()
        );
    }

    #[test]
    fn hopf_surgery_gives_back_s3() {
        // a trefoil clasped by a 0-framed circle, itself clasped by a second
        // 0-framed circle: the pair cancels
        let mut slices = trefoil().slices().to_vec();
        slices.push(Slice::Cup(3));
        slices.extend(axis_slices(1).iter().map(|s| s.shifted(3)));
        slices.extend([Slice::Cross(2, -1), Slice::Cross(2, -1), Slice::Cap(3)]);
        let w = MorseWord::new(2, Closure::Plane, slices).unwrap();
        let sk = SurgeredKnot::new(
            w,
            ((0, 1), true),
            vec![(((4, 3), true), 0), (((5, 5), true), 0)],
        )
        .unwrap();
        let m = linking_matrix(&sk.ambient());
        assert_eq!(m[0][0], 0);
        assert_eq!(m[0][1].abs(), 1);
        assert!(sk.ambient().is_homology_sphere());
        assert_eq!(sk.framing().unwrap(), 0);
        assert_eq!(alexander_surgered(&sk).unwrap().to_string(), "t - 1 + t^-1");
        // a single 1-framed meridian is a blow-up: still S^3 with the knot untouched
        let mut slices = trefoil().slices().to_vec();
        slices.extend(axis_slices(1).iter().map(|s| s.shifted(1)));
        let w = MorseWord::new(2, Closure::Plane, slices).unwrap();
        let sk = SurgeredKnot::new(w, ((0, 1), true), vec![(((4, 3), true), 1)]).unwrap();
        assert!(sk.ambient().is_homology_sphere());
        assert_eq!(sk.framing().unwrap().abs(), 1);
    }

    #[test]
    fn refusals() {
        let p = p_pattern(0).unwrap();
        let fake = TriState {
            value: Verdict::Inconclusive,
            certificate: crate::groups::Certificate::Budget {
                moves: 0,
                remaining: String::new(),
            },
        };
        assert!(matches!(invert_pattern(&p, &fake), Err(Error::Refused(_))));
        let cable = AnnularPattern::from_slices(2, vec![Slice::Cross(1, 1); 3], None).unwrap();
        let c = normal_closure_member(&cable, DEFAULT_BUDGET).unwrap();
        assert!(matches!(invert_pattern(&cable, &c), Err(Error::Refused(_))));
        // a certificate for another pattern is rejected
        let cert = normal_closure_member(&core(), DEFAULT_BUDGET).unwrap();
        assert!(matches!(invert_pattern(&p, &cert), Err(Error::Refused(_))));
    }

    #[test]
    fn inverse_of_core() {
        let c = core();
        let cert = normal_closure_member(&c, DEFAULT_BUDGET).unwrap();
        let inv = invert_pattern(&c, &cert).unwrap();
        assert!(inv.is_homology_sphere());
        assert_eq!(inv.winding().unwrap(), 1);
        assert!(cylinder_boundary_map(&inv).unwrap().is_identity());
        let k = apply_surgered(&inv, &trefoil()).unwrap();
        assert!(k.ambient().is_homology_sphere());
        assert_eq!(alexander_surgered(&k).unwrap().to_string(), "t - 1 + t^-1");
        let both = compose_surgered(&c, &inv).unwrap();
        assert!(cylinder_boundary_map(&both).unwrap().is_identity());
        assert_eq!(cylinder_h1(&both).unwrap().to_string(), "Z^2");
    }

    #[test]
    fn inverse_of_p0() {
        let p = p_pattern(0).unwrap();
        let cert = normal_closure_member(&p, DEFAULT_BUDGET).unwrap();
        let inv = invert_pattern(&p, &cert).unwrap();
        let m = linking_matrix(&inv.ambient());
        assert_eq!(
            m.iter()
                .map(|r| r.iter().map(|x| x.abs()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(determinant(&m), BigInt::from(-1));
        let both = compose_surgered(&p, &inv).unwrap();
        let map = cylinder_boundary_map(&both).unwrap();
        assert!(map.is_identity());
        assert_eq!(
            map,
            cylinder_boundary_map(&SurgeredPattern::from_pattern(&p))
                .unwrap()
                .mul(&cylinder_boundary_map(&inv).unwrap())
        );
        assert_eq!(cylinder_h1(&both).unwrap().to_string(), "Z^2");

        let on_u = apply_surgered(&inv, &unknot()).unwrap();
        assert!(on_u.ambient().is_homology_sphere());
        let d = alexander_surgered(&on_u).unwrap();
        assert_eq!(d.to_string(), "t^2 - 2t + 3 - 2t^-1 + t^-2");
        assert!(
            matches!(
                crate::invariants::fox_milnor_check(&d).unwrap(),
                FoxMilnor::Pass { .. }
            ),
            "{d}"
        );

        let k = trefoil();
        let back = apply_to_surgered(&p, &apply_surgered(&inv, &k).unwrap()).unwrap();
        let d = alexander_surgered(&back).unwrap();
        let dk = knot_alexander(&k.to_pd()).unwrap();
        assert!(
            matches!(fox_milnor_pair(&d, &dk).unwrap(), FoxMilnor::Pass { .. }),
            "{d}"
        );
    }

    #[test]
    fn surgered_satellite_matches_plain_one_without_surgery() {
        let p = p_pattern(0).unwrap();
        let sk = apply_to_surgered(&p, &SurgeredKnot::from_knot(&trefoil()).unwrap()).unwrap();
        let direct = knot_alexander(&apply(&p, &trefoil()).unwrap().to_pd()).unwrap();
        assert_eq!(alexander_surgered(&sk).unwrap(), direct);
    }

    #[test]
    fn surgered_pattern_json() {
        let c = core();
        let cert = normal_closure_member(&c, DEFAULT_BUDGET).unwrap();
        let inv = invert_pattern(&c, &cert).unwrap();
        let s = serde_json::to_string(&inv).unwrap();
        let back: SurgeredPattern = serde_json::from_str(&s).unwrap();
        assert_eq!(back, inv);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        let m = cylinder_boundary_map(&inv).unwrap();
        let back: BoundaryMap = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
