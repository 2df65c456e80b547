//! The JSON algebra file format.
//!
//! ```json
//! {"name": "w11_p2", "field": {"degree": 1, "modulus_bits": 2}, "dim": 2,
//!  "bracket": [[0, 1, [[0, 1]]]], "two_map": [[1, [[1, 1]]]], "labels": ["d", "xd"]}
//! ```
//!
//! Indices are 0-based, bracket pairs need i < j, and coefficients are
//! bit-encoded field elements. Only nonzero products and images are listed.
//! Writing a parsed file reproduces canonical input byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Fixture;
use crate::field::{Fe, Field};
use crate::liealg::{LieAlgebra, LieError};
use crate::restricted::TwoMap;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed algebra file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("coefficient {bits} is not an element of {field}")]
    BadCoefficient { bits: u64, field: Field },
    #[error("index {0} listed twice")]
    Duplicate(usize),
}

type Terms = Vec<(usize, u64)>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    field: Field,
    dim: usize,
    bracket: Vec<(usize, usize, Terms)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    two_map: Option<Vec<(usize, Terms)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn to_terms(v: &[Fe]) -> Terms {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.bits() as u64)).collect()
}

fn from_terms(field: Field, dim: usize, terms: &Terms) -> Result<Vec<Fe>, FormatError> {
    let mut v = field.zero_vec(dim);
    let mut seen = vec![false; dim];
    for &(k, bits) in terms {
        if k >= dim {
            return Err(FormatError::IndexOutOfRange { index: k, dim });
        }
        if seen[k] {
            return Err(FormatError::Duplicate(k));
        }
        seen[k] = true;
        v[k] = field.elem(bits).map_err(|_| FormatError::BadCoefficient { bits, field })?;
    }
    Ok(v)
}

/// Serializes as pretty JSON followed by a newline.
pub fn to_json(g: &LieAlgebra, two_map: Option<&TwoMap>) -> String {
    let file = AlgebraFile {
        name: g.name().to_string(),
        field: g.field(),
        dim: g.dim(),
        bracket: g.nonzero_products().into_iter().map(|(i, j, v)| (i, j, to_terms(v))).collect(),
        two_map: two_map.map(|tm| {
            tm.images
                .iter()
                .enumerate()
                .filter(|(_, b)| b.iter().any(|c| !c.is_zero()))
                .map(|(i, b)| (i, to_terms(b)))
                .collect()
        }),
        labels: g.labels().map(<[String]>::to_vec),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn fixture_to_json(fx: &Fixture) -> String {
    to_json(&fx.algebra, fx.two_map.as_ref())
}

/// Parses an algebra file. Lie and 2-map axioms are not checked here.
pub fn from_json(text: &str) -> Result<Fixture, FormatError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let (field, dim) = (file.field, file.dim);
    let mut entries = Vec::with_capacity(file.bracket.len());
    for (i, j, terms) in &file.bracket {
        entries.push((*i, *j, from_terms(field, dim, terms)?));
    }
    let mut algebra = LieAlgebra::from_table(file.name, field, dim, &entries)?;
    if let Some(labels) = file.labels {
        algebra = algebra.with_labels(labels)?;
    }
    let two_map = match &file.two_map {
        None => None,
        Some(list) => {
            let mut images = vec![field.zero_vec(dim); dim];
            let mut seen = vec![false; dim];
            for (i, terms) in list {
                if *i >= dim {
                    return Err(FormatError::IndexOutOfRange { index: *i, dim });
                }
                if seen[*i] {
                    return Err(FormatError::Duplicate(*i));
                }
                seen[*i] = true;
                images[*i] = from_terms(field, dim, terms)?;
            }
            Some(TwoMap { images })
        }
    };
    Ok(Fixture { algebra, two_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fixture, fixture_f2, FIXTURE_NAMES};

    #[test]
    fn round_trip_is_byte_identical() {
        for name in FIXTURE_NAMES.iter().map(|n| n.replace("(n)", "(3)")) {
            let fx = fixture_f2(&name).unwrap();
            let text = fixture_to_json(&fx);
            let back = from_json(&text).unwrap();
            assert_eq!(back, fx, "{name}");
            assert_eq!(fixture_to_json(&back), text, "{name}");
        }
    }

    #[test]
    fn w11_document() {
        let fx = fixture_f2("w11_p2").unwrap();
        let v: serde_json::Value = serde_json::from_str(&fixture_to_json(&fx)).unwrap();
        let expected = serde_json::json!({
            "name": "w11_p2",
            "field": {"degree": 1, "modulus_bits": 2},
            "dim": 2,
            "bracket": [[0, 1, [[0, 1]]]],
            "two_map": [[1, [[1, 1]]]],
            "labels": ["d", "xd"]
        });
        assert_eq!(v, expected);
    }

    #[test]
    fn extension_field_round_trip() {
        let fx = fixture("sl3", Field::new(4).unwrap()).unwrap();
        let text = fixture_to_json(&fx);
        assert_eq!(from_json(&text).unwrap(), fx);
    }

    #[test]
    fn rejects_malformed() {
        let base = r#"{"name":"x","field":{"degree":1,"modulus_bits":2},"dim":2,"bracket":BR}"#;
        let bad =
            ["[[1,0,[[0,1]]]]", "[[0,1,[[2,1]]]]", "[[0,1,[[0,2]]]]", "[[0,1,[[0,1],[0,1]]]]", "[[0,1,[]],[0,1,[]]]"];
        for b in bad {
            assert!(from_json(&base.replace("BR", b)).is_err(), "{b}");
        }
        assert!(from_json(&base.replace("BR", "[]")).is_ok());
        let wrong_field = r#"{"name":"x","field":{"degree":2,"modulus_bits":5},"dim":1,"bracket":[]}"#;
        assert!(from_json(wrong_field).is_err());
        let unknown = r#"{"name":"x","field":{"degree":1,"modulus_bits":2},"dim":1,"bracket":[],"extra":1}"#;
        assert!(from_json(unknown).is_err());
    }
}
