//! JSON views of exact values, plus the batch-job format read by the CLI.
//!
//! A fraction serializes as
//! `{"num": [{"coef": "<int>", "exps": {"<color>": e, …}}, …],
//!   "den": [{"kind": "minus|plus|pair", "colors": ["<color>", …], "mult": m}, …]}`.
//! Coefficients are decimal strings (they are arbitrary-precision integers),
//! exponents are integers keyed by color name, and zero exponents are
//! omitted. Serialization is deterministic: terms follow the polynomial's
//! canonical term order and factors the denominator's canonical factor
//! order, so equal values produce byte-identical JSON.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::fraction::{DenomFactor, Fraction};
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

fn color_index(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::Parse(format!("unknown color {name:?}")))
}

/// `[{"coef": "<int>", "exps": {color: exp}}, …]` in canonical term order.
pub fn poly_to_json(p: &LaurentPoly, names: &[String]) -> Value {
    assert_eq!(p.nvars(), names.len());
    let terms: Vec<Value> = p
        .terms()
        .map(|(exps, coef)| {
            let mut m = Map::new();
            for (v, &e) in exps.iter().enumerate() {
                if e != 0 {
                    m.insert(names[v].clone(), json!(e));
                }
            }
            json!({"coef": coef.to_string(), "exps": Value::Object(m)})
        })
        .collect();
    Value::Array(terms)
}

pub fn poly_from_json(v: &Value, names: &[String]) -> Result<LaurentPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial JSON must be an array of terms".into()))?;
    let mut out = LaurentPoly::zero(names.len());
    for term in arr {
        let coef = term
            .get("coef")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("term is missing a string \"coef\"".into()))?;
        let coef = BigInt::from_str(coef)
            .map_err(|e| Error::Parse(format!("bad coefficient {coef:?}: {e}")))?;
        let exps_obj = term
            .get("exps")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("term is missing an \"exps\" object".into()))?;
        let mut exps = vec![0i32; names.len()];
        for (name, e) in exps_obj {
            let e = e
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("exponent of {name:?} is not an integer")))?;
            exps[color_index(names, name)?] = i32::try_from(e)
                .map_err(|_| Error::Parse(format!("exponent of {name:?} out of range")))?;
        }
        out = out.add(&LaurentPoly::monomial(names.len(), &exps, coef));
    }
    Ok(out)
}

fn factor_to_json(f: &DenomFactor, mult: u32, names: &[String]) -> Value {
    let (kind, colors) = match *f {
        DenomFactor::Minus(a) => ("minus", vec![names[a].clone()]),
        DenomFactor::Plus(a) => ("plus", vec![names[a].clone()]),
        DenomFactor::Pair(a, b) => ("pair", vec![names[a].clone(), names[b].clone()]),
    };
    json!({"kind": kind, "colors": colors, "mult": mult})
}

/// `{"num": […], "den": […]}`; requires a fraction whose denominator is a
/// product of the three named factor kinds (every value the engine or the
/// oracle produces is of this shape).
pub fn fraction_to_json(f: &Fraction, names: &[String]) -> Value {
    assert!(
        f.denominator_general().is_none(),
        "value denominator fell outside the named factor kinds"
    );
    let den: Vec<Value> =
        f.denominator_factors().map(|(d, &m)| factor_to_json(d, m, names)).collect();
    json!({"num": poly_to_json(f.numerator(), names), "den": den})
}

pub fn fraction_from_json(v: &Value, names: &[String]) -> Result<Fraction> {
    let num = poly_from_json(
        v.get("num").ok_or_else(|| Error::Parse("fraction JSON is missing \"num\"".into()))?,
        names,
    )?;
    let den = v
        .get("den")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("fraction JSON is missing a \"den\" array".into()))?;
    let mut factors = Vec::new();
    for entry in den {
        let kind = entry
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("denominator factor is missing \"kind\"".into()))?;
        let colors = entry
            .get("colors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("denominator factor is missing \"colors\"".into()))?;
        let idx: Vec<usize> = colors
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| Error::Parse("factor colors must be strings".into()))
                    .and_then(|s| color_index(names, s))
            })
            .collect::<Result<_>>()?;
        let mult = entry.get("mult").and_then(Value::as_u64).unwrap_or(1) as u32;
        let parsed = match (kind, idx.as_slice()) {
            ("minus", [a]) => vec![DenomFactor::Minus(*a)],
            ("plus", [a]) => vec![DenomFactor::Plus(*a)],
            ("pair", [a, b]) => DenomFactor::pair(*a, *b),
            _ => {
                return Err(Error::Parse(format!(
                    "bad denominator factor: kind {kind:?} with {} colors",
                    idx.len()
                )))
            }
        };
        for f in parsed {
            for _ in 0..mult {
                factors.push(f);
            }
        }
    }
    Ok(Fraction::new(num, &factors))
}

// ---------------------------------------------------------------------------
// batch jobs
// ---------------------------------------------------------------------------

/// One closure to compute, with its requested output views.
#[derive(Debug, Clone, Deserialize)]
pub struct BatchItem {
    pub strands: usize,
    pub word: String,
    pub colors: Vec<String>,
    #[serde(default)]
    pub alexander: bool,
    #[serde(default)]
    pub uncolored: bool,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct BatchLimits {
    #[serde(default)]
    pub max_strands: Option<usize>,
    #[serde(default)]
    pub max_length: Option<usize>,
    #[serde(default)]
    pub timeout_ms: Option<u64>,
}

/// A batch request: items plus shared limits. `seed` is accepted for
/// forward compatibility with randomized batch tooling; computing ∇ is
/// deterministic and does not consume it.
#[derive(Debug, Clone, Deserialize)]
pub struct BatchJob {
    pub items: Vec<BatchItem>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub limits: BatchLimits,
}

pub fn batch_from_json(text: &str) -> Result<BatchJob> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad batch JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::ColoredBraid;
    use crate::cpf::conway_potential;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn round_trip(f: &Fraction, names: &[String]) {
        let j = fraction_to_json(f, names);
        let back = fraction_from_json(&j, names).unwrap();
        assert_eq!(&back, f);
        assert_eq!(back.render(names), f.render(names));
        // Deterministic serialization.
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&j).unwrap());
    }

    #[test]
    fn fractions_round_trip_through_json() {
        let ns = names(&["a", "b"]);
        for (n, word, colors) in [
            (2usize, "1 1", vec!["a", "b"]),
            (2, "1 1 1", vec!["a", "a"]),
            (2, "", vec!["a", "b"]),
            (2, "1 1 1 1", vec!["a", "b"]),
            (3, "1 -2 1 -2", vec!["a", "a", "a"]),
        ] {
            let cb = ColoredBraid::parse(n, word, &colors).unwrap();
            let v = conway_potential(&cb).unwrap();
            round_trip(&v.value, &v.names);
        }
        round_trip(&Fraction::zero(2), &ns);
        round_trip(&Fraction::from_int(2, -7), &ns);
    }

    #[test]
    fn big_coefficients_survive_the_string_coding() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let p = LaurentPoly::monomial(1, &[-3], big.clone());
        let ns = names(&["a"]);
        let j = poly_to_json(&p, &ns);
        assert_eq!(j[0]["coef"], json!(big.to_string()));
        assert_eq!(poly_from_json(&j, &ns).unwrap(), p);
    }

    #[test]
    fn zero_exponents_are_omitted() {
        let p = LaurentPoly::monomial(2, &[2, 0], 5);
        let j = poly_to_json(&p, &names(&["a", "b"]));
        assert_eq!(j, json!([{"coef": "5", "exps": {"a": 2}}]));
    }

    #[test]
    fn malformed_json_is_rejected_with_parse_errors() {
        let ns = names(&["a"]);
        assert!(poly_from_json(&json!({"not": "an array"}), &ns).is_err());
        assert!(poly_from_json(&json!([{"coef": "x", "exps": {}}]), &ns).is_err());
        assert!(poly_from_json(&json!([{"coef": "1", "exps": {"zz": 1}}]), &ns).is_err());
        assert!(fraction_from_json(&json!({"num": []}), &ns).is_err());
        let bad = json!({"num": [], "den": [{"kind": "cube", "colors": ["a"], "mult": 1}]});
        assert!(fraction_from_json(&bad, &ns).is_err());
    }

    #[test]
    fn batch_jobs_parse_with_defaults() {
        let job = batch_from_json(
            r#"{"items": [{"strands": 2, "word": "1 1", "colors": ["a", "b"]}],
                "limits": {"timeout_ms": 500}}"#,
        )
        .unwrap();
        assert_eq!(job.items.len(), 1);
        assert!(!job.items[0].alexander);
        assert_eq!(job.limits.timeout_ms, Some(500));
        assert_eq!(job.seed, None);
        assert!(batch_from_json("{").is_err());
    }
}
