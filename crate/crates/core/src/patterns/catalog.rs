//! Named patterns: `core`, the connected-sum patterns `Q(J)` and the family
//! `P(m)`.
//!
//! Fixed words live in a versioned JSON file compiled into the library. The
//! environment variable `SATCALC_CATALOG` points to a replacement file.
//! Family words may contain `box+ i` / `box- i`, which expand to `2m+1`
//! crossings `x± i`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{open_up, AnnularPattern};
use crate::diagrams::reidemeister::DEFAULT_BUDGET;
use crate::diagrams::{simplify_reidemeister, vogel_to_braid, Closure, MorseWord, PDCode, Slice};
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../data/catalog.json");
pub const CATALOG_ENV: &str = "SATCALC_CATALOG";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Family {
    pub strands: usize,
    pub closure: Closure,
    pub slices: Vec<String>,
}

impl Family {
    pub fn word(&self, m: i64) -> Result<MorseWord> {
        if m < 0 {
            return Err(Error::InvalidParameter(format!(
                "family parameter must be non-negative, got {m}"
            )));
        }
        let mut slices = Vec::new();
        for s in &self.slices {
            let mut it = s.split_whitespace();
            match (it.next(), it.next()) {
                (Some(b @ ("box+" | "box-")), Some(p)) => {
                    let pos: usize = p.parse().map_err(|_| Error::SliceSyntax(s.clone()))?;
                    let e = if b == "box+" { 1 } else { -1 };
                    slices.extend(std::iter::repeat_n(Slice::Cross(pos, e), 2 * m as usize + 1));
                }
                _ => slices.push(s.parse()?),
            }
        }
        MorseWord::new(self.strands, self.closure, slices)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    #[serde(default)]
    pub patterns: BTreeMap<String, MorseWord>,
    #[serde(default)]
    pub families: BTreeMap<String, Family>,
}

impl Catalog {
    pub fn builtin() -> Self {
        serde_json::from_str(BUILTIN).expect("bundled catalog parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Catalog(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    /// The catalog named by `SATCALC_CATALOG`, or the bundled one.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CATALOG_ENV) {
            Some(p) => Self::load(std::path::Path::new(&p)),
            None => Ok(Self::builtin()),
        }
    }

    /// Looks up `name`, which is a fixed entry or `F(m)` for a family `F`.
    pub fn pattern(&self, name: &str) -> Result<AnnularPattern> {
        let name = name.trim();
        if let Some(w) = self.patterns.get(name) {
            return AnnularPattern::new(w.clone(), Some(name.to_string()));
        }
        let (fam, arg) = name
            .strip_suffix(')')
            .and_then(|s| s.split_once('('))
            .ok_or_else(|| Error::UnknownCatalogName(name.to_string()))?;
        let family = self
            .families
            .get(fam.trim())
            .ok_or_else(|| Error::UnknownCatalogName(name.to_string()))?;
        let m: i64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad family parameter {arg:?}")))?;
        AnnularPattern::new(family.word(m)?, Some(format!("{}({m})", fam.trim())))
    }

    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.patterns.keys().cloned().collect();
        v.extend(self.families.keys().map(|f| format!("{f}(m)")));
        v.push("Q(J)".into());
        v
    }
}

pub fn core() -> AnnularPattern {
    AnnularPattern::new(
        MorseWord::new(1, Closure::Annulus, vec![]).unwrap(),
        Some("core".into()),
    )
    .unwrap()
}

/// `Q_J`: one seam strand tied into `J`.
pub fn q_pattern(j: &PDCode, name: Option<String>) -> Result<AnnularPattern> {
    if !j.is_knot() {
        return Err(Error::NotAKnot(j.component_count()));
    }
    let b = vogel_to_braid(&simplify_reidemeister(j, DEFAULT_BUDGET));
    let word = open_up(&b.to_morse())?;
    let name = name.unwrap_or_else(|| "J".into());
    AnnularPattern::new(word, Some(format!("Q({name})")))
}

/// `P_m` from the active catalog.
pub fn p_pattern(m: i64) -> Result<AnnularPattern> {
    Catalog::from_env()?.pattern(&format!("P({m})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BraidWord;
    use crate::patterns::winding_number;

    #[test]
    fn builtin_entries() {
        let c = Catalog::builtin();
        assert_eq!(c.pattern("core").unwrap().seam_strands(), 1);
        for m in 0..3 {
            let p = c.pattern(&format!("P({m})")).unwrap();
            assert_eq!(p.seam_strands(), 3);
            assert_eq!(winding_number(&p), 1);
            assert_eq!(p.word().crossing_count(), 4 * m as usize + 10);
        }
        assert!(matches!(
            c.pattern("P(-1)"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            c.pattern("R(1)"),
            Err(Error::UnknownCatalogName(_))
        ));
        assert!(matches!(
            c.pattern("nope"),
            Err(Error::UnknownCatalogName(_))
        ));
    }

    #[test]
    fn q_of_trefoil() {
        let q = q_pattern(
            &BraidWord::new(2, vec![1, 1, 1]).unwrap().closure(),
            Some("3_1".into()),
        )
        .unwrap();
        assert_eq!(winding_number(&q), 1);
        assert_eq!(q.seam_strands(), 1);
        assert_eq!(q.name(), Some("Q(3_1)"));
    }

    #[test]
    fn json_round_trip() {
        let c = Catalog::builtin();
        let back = Catalog::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back.pattern("P(1)").unwrap(), c.pattern("P(1)").unwrap());
        let p = c.pattern("P(0)").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let q: AnnularPattern = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
