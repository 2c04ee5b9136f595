//! JSON arrangement documents.
//!
//! ```json
//! { "variables": 2, "forms": [["1", "0", "0"], ["1", "-1", "0"]], "labels": ["x", "x-y"] }
//! ```
//!
//! Each form lists `c_1..c_l` followed by the constant term. Rationals are
//! written as `"p"` or `"p/q"` strings; plain JSON integers are accepted on
//! input. Variable names other than `x1..xl` are kept in `"names"`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::ParseError;
use crate::scalar::{format_rational, parse_rational, Rational};

use super::Arrangement;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementDocument {
    pub variables: usize,
    pub forms: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

fn scalar(v: &Value) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(ParseError::Document(format!(
            "expected a rational string or integer, found {other}"
        ))),
    }
}

impl Arrangement {
    pub fn to_document(&self) -> ArrangementDocument {
        let forms = (0..self.len())
            .map(|i| {
                self.normal(i)
                    .iter()
                    .chain(std::iter::once(self.constant(i)))
                    .map(|q| Value::String(format_rational(q)))
                    .collect()
            })
            .collect();
        let default: Vec<String> = super::default_names(self.dim());
        ArrangementDocument {
            variables: self.dim(),
            forms,
            labels: Some(self.labels().to_vec()),
            names: (self.ring().names() != default.as_slice()).then(|| self.ring().names().to_vec()),
        }
    }

    pub fn from_document(doc: &ArrangementDocument) -> Result<Self, ParseError> {
        let l = doc.variables;
        let mut normals = Vec::new();
        let mut constants = Vec::new();
        for (i, row) in doc.forms.iter().enumerate() {
            if row.len() != l + 1 {
                return Err(ParseError::Document(format!(
                    "form {i} has {} entries, expected {}",
                    row.len(),
                    l + 1
                )));
            }
            let vals = row.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
            normals.push(vals[..l].to_vec());
            constants.push(vals[l].clone());
        }
        let names = match &doc.names {
            Some(n) if n.len() == l => n.clone(),
            Some(n) => {
                return Err(ParseError::Document(format!(
                    "{} variable names for {l} variables",
                    n.len()
                )))
            }
            None => super::default_names(l),
        };
        let mut a = Arrangement::with_names(names, normals, Some(constants))
            .map_err(|e| ParseError::Document(e.to_string()))?;
        if let Some(labels) = &doc.labels {
            if labels.len() != a.len() {
                return Err(ParseError::Document(format!(
                    "{} labels for {} forms",
                    labels.len(),
                    a.len()
                )));
            }
            a = a.with_labels(labels.clone());
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: ArrangementDocument =
            serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))?;
        Self::from_document(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let a = Arrangement::affine(&[&[1, 0, -1], &[0, 3, 2], &[1, 1, 0]]).unwrap();
        let text = a.to_json();
        let b = Arrangement::from_json(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_json(), text);
    }

    #[test]
    fn accepts_integers_and_fractions() {
        let a = Arrangement::from_json(
            r#"{"variables": 2, "forms": [[1, 0, 0], ["1/2", "-1", "0"]]}"#,
        )
        .unwrap();
        assert!(a.is_central());
        assert_eq!(a.form(1).to_string(), "1/2*x1 - x2");
        assert!(Arrangement::from_json(r#"{"variables": 2, "forms": [[1, 0]]}"#).is_err());
        assert!(Arrangement::from_json(r#"{"variables": 1, "forms": [[0.5, 0]]}"#).is_err());
    }
}
