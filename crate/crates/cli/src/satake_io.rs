//! Satake tables in JSON: an array of
//! `{"p": 5, "alphas": ["1/2", "2"], "chi": "1"}` where `chi` may be
//! `"ramified"` and an optional `"q"` overrides the residue field size `p`.

use std::collections::HashSet;
use std::path::Path;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::Value;

use metaplectic::arith::{is_prime, parse_rational, Rational};
use metaplectic::symsq::{CharValue, EulerRow, SatakeData};
use metaplectic::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeEntry {
    pub p: u64,
    pub data: SatakeData,
}

impl SatakeEntry {
    pub fn euler_row(&self) -> EulerRow {
        let f = |x: &Rational| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0);
        EulerRow {
            p: self.p,
            alphas: self.data.alphas().iter().map(f).collect(),
            chi: self.data.chi().value().map(f),
        }
    }
}

fn data_err(msg: String) -> Error {
    Error::Domain(format!("data error: {msg}"))
}

fn exact(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| data_err(format!("{at}: {e}"))),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| data_err(format!("{at}: {e}"))),
        _ => Err(data_err(format!("{at}: expected a number or numeric string"))),
    }
}

pub fn parse_satake(text: &str) -> Result<Vec<SatakeEntry>> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| data_err(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let Value::Array(items) = root else {
        return Err(data_err("top level must be an array".into()));
    };
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(items.len());
    for (k, item) in items.iter().enumerate() {
        let at = |field: &str| format!("entry {k}, field {field}");
        let p = item
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| data_err(format!("{}: expected a positive integer", at("p"))))?;
        if !is_prime(p) {
            return Err(data_err(format!("{}: {p} is not prime", at("p"))));
        }
        if !seen.insert(p) {
            return Err(data_err(format!("{}: duplicate prime {p}", at("p"))));
        }
        let q = match item.get("q") {
            None => p,
            Some(v) => v.as_u64().ok_or_else(|| data_err(format!("{}: expected an integer", at("q"))))?,
        };
        let alphas = item
            .get("alphas")
            .and_then(Value::as_array)
            .ok_or_else(|| data_err(format!("{}: expected an array", at("alphas"))))?;
        let alphas = alphas
            .iter()
            .enumerate()
            .map(|(i, a)| exact(a, &at(&format!("alphas[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        let chi = match item.get("chi") {
            None => CharValue::trivial(),
            Some(Value::String(s)) if s == "ramified" => CharValue::Ramified,
            Some(v) => CharValue::Unramified(exact(v, &at("chi"))?),
        };
        let data = SatakeData::new(alphas, q, chi).map_err(|e| data_err(format!("entry {k}: {e}")))?;
        out.push(SatakeEntry { p, data });
    }
    Ok(out)
}

pub fn ingest_satake(path: &Path) -> Result<Vec<SatakeEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| data_err(format!("cannot read {}: {e}", path.display())))?;
    parse_satake(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use metaplectic::arith::{int, rat};

    #[test]
    fn two_primes() {
        let t = parse_satake(r#"[{"p": 2, "alphas": ["1/2", 3], "chi": "ramified"},
                                 {"p": 3, "alphas": ["0.5", "2"], "chi": -1}]"#)
        .unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].data.omega(), rat(3, 2));
        assert_eq!(t[0].data.chi(), &CharValue::Ramified);
        assert_eq!(t[1].data.chi(), &CharValue::Unramified(int(-1)));
        assert_eq!(t[1].data.alphas()[0], rat(1, 2));
        assert!(t[0].euler_row().chi.is_none());
    }

    #[test]
    fn rejects_bad_tables() {
        let zero = parse_satake(r#"[{"p": 2, "alphas": ["0"]}]"#).unwrap_err().to_string();
        assert!(zero.contains("entry 0"), "{zero}");
        let dup = parse_satake(r#"[{"p": 2, "alphas": [1]}, {"p": 2, "alphas": [1]}]"#).unwrap_err().to_string();
        assert!(dup.contains("duplicate prime"), "{dup}");
        let syntax = parse_satake("[{\"p\": 2,\n \"alphas\": [1,]}]").unwrap_err().to_string();
        assert!(syntax.contains("line 2"), "{syntax}");
        assert!(parse_satake(r#"[{"p": 4, "alphas": [1]}]"#).is_err());
        assert!(parse_satake(r#"{"p": 2}"#).is_err());
        let field = parse_satake(r#"[{"p": 3, "alphas": [1, "x"]}]"#).unwrap_err().to_string();
        assert!(field.contains("alphas[1]"), "{field}");
    }
}
