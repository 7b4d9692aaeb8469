//! Decoding of the JSON values that commands read.

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use satcalc::diagrams::reidemeister::DEFAULT_BUDGET as REIDEMEISTER_BUDGET;
use satcalc::diagrams::{
    simplify_reidemeister, vogel_to_braid, BraidWord, Closure, MorseWord, PDCode,
};
use satcalc::patterns::{q_pattern, AnnularPattern, Catalog};

use crate::CliError;

pub struct Input {
    fields: Map<String, Value>,
}

impl Input {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim().is_empty() {
            return Ok(Self { fields: Map::new() });
        }
        match serde_json::from_str::<Value>(text) {
            Ok(Value::Object(fields)) => Ok(Self { fields }),
            Ok(other) => Err(CliError::Schema(format!(
                "expected a JSON object, found {}",
                kind(&other)
            ))),
            Err(e) => Err(CliError::MalformedJson(e.to_string())),
        }
    }

    pub fn raw(&self) -> Value {
        Value::Object(self.fields.clone())
    }

    pub fn has(&self, key: &str) -> bool {
        self.fields.contains_key(key)
    }

    pub fn required(&self, key: &str) -> Result<&Value, CliError> {
        self.fields
            .get(key)
            .ok_or_else(|| CliError::Schema(format!("missing field {key:?}")))
    }

    pub fn typed<T: DeserializeOwned>(&self, key: &str) -> Result<T, CliError> {
        decode(self.required(key)?, key)
    }

    pub fn optional<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.fields.get(key).map(|v| decode(v, key)).transpose()
    }

    pub fn knot(&self, key: &str) -> Result<Knot, CliError> {
        Knot::from_value(self.required(key)?, key)
    }

    pub fn pattern(&self, key: &str, catalog: &Catalog) -> Result<AnnularPattern, CliError> {
        pattern_from_value(self.required(key)?, key, catalog)
    }
}

pub fn decode<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Schema(format!("{key}: {e}")))
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

/// A knot given as a PD code (`crossings`), a braid (`letters`) or a Morse
/// word (`slices`).
pub enum Knot {
    Pd(PDCode),
    Braid(BraidWord),
    Word(MorseWord),
}

impl Knot {
    pub fn from_value(v: &Value, key: &str) -> Result<Self, CliError> {
        let Value::Object(m) = v else {
            return Err(CliError::Schema(format!(
                "{key}: expected a knot object, found {}",
                kind(v)
            )));
        };
        let knot = if m.contains_key("crossings") {
            Knot::Pd(decode(v, key)?)
        } else if m.contains_key("letters") {
            let b: BraidWord = decode(v, key)?;
            Knot::Braid(BraidWord::new(b.strand_count, b.letters)?)
        } else if m.contains_key("slices") {
            Knot::Word(decode::<MorseWord>(v, key)?.with_closure(Closure::Plane))
        } else {
            return Err(CliError::Schema(format!(
                "{key}: a knot needs one of \"crossings\", \"letters\" or \"slices\""
            )));
        };
        let n = knot.pd().component_count();
        if n != 1 {
            return Err(satcalc::Error::NotAKnot(n).into());
        }
        Ok(knot)
    }

    pub fn pd(&self) -> PDCode {
        match self {
            Knot::Pd(d) => d.clone(),
            Knot::Braid(b) => b.closure(),
            Knot::Word(w) => w.to_pd(),
        }
    }

    pub fn word(&self) -> MorseWord {
        match self {
            Knot::Pd(d) => {
                vogel_to_braid(&simplify_reidemeister(d, REIDEMEISTER_BUDGET)).to_morse()
            }
            Knot::Braid(b) => b.to_morse(),
            Knot::Word(w) => w.clone(),
        }
    }
}

/// A pattern given by catalog name, as `{"q": knot}` for a connected-sum
/// pattern, or as a pattern object.
pub fn pattern_from_value(
    v: &Value,
    key: &str,
    catalog: &Catalog,
) -> Result<AnnularPattern, CliError> {
    match v {
        Value::String(name) => Ok(catalog.pattern(name)?),
        Value::Object(m) if m.contains_key("q") => {
            let j = Knot::from_value(&m["q"], "q")?;
            let name = m.get("name").and_then(Value::as_str).map(String::from);
            Ok(q_pattern(&j.pd(), name)?)
        }
        Value::Object(_) => decode(v, key),
        other => Err(CliError::Schema(format!(
            "{key}: expected a pattern name or object, found {}",
            kind(other)
        ))),
    }
}
