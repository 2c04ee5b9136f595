use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::scalar::{format_rational, int, parse_rational, parse_rational_list, Rational};

/// Weights `lambda_1..lambda_n`, parallel to the hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        WeightVector(entries)
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        WeightVector(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        WeightVector(vec![Rational::zero(); n])
    }

    /// Comma separated rationals, e.g. `"1, 1, -2"` or `"1/2,3"`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_rational_list(text).map(WeightVector)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn sum_over(&self, indices: &[usize]) -> Rational {
        indices.iter().fold(Rational::zero(), |acc, &i| acc + &self.0[i])
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        WeightVector(self.0.iter().map(|v| v * t).collect())
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        WeightVector(order.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        WeightVector(v)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Text(String),
            Integer(i64),
        }
        let raw: Vec<Entry> = Vec::deserialize(d)?;
        raw.iter()
            .map(|e| match e {
                Entry::Text(s) => parse_rational(s),
                Entry::Integer(v) => Ok(int(*v)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(WeightVector)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn parse_and_sum() {
        let w = WeightVector::parse("1, 1/2, -2").unwrap();
        assert_eq!(w.sum(), rat(-1, 2));
        assert_eq!(w.to_string(), "(1, 1/2, -2)");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"["1","1/2","-2"]"#);
        assert_eq!(serde_json::from_str::<WeightVector>(&json).unwrap(), w);
        let mixed: WeightVector = serde_json::from_str(r#"[1, "1/2", -2]"#).unwrap();
        assert_eq!(mixed, w);
    }
}
