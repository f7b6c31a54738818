//! JSON documents read and written by the command line front end.
//!
//! The input document holds a rank, a mode, and either sparse structure
//! constants (`products`: entries `(i, j, coefficients)` with 1-based basis
//! indices, every unlisted product zero) or a list of integer generator
//! matrices. The output document carries the canonical rational function as
//! integer strings: an ascending numerator coefficient list, a positive
//! constant, and denominator factors `(A, B, multiplicity)` standing for
//! `(A*s - B)^multiplicity`. All fields are integers or strings of integers;
//! no symbolic expressions occur.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use torzeta_core::algebras::{AlgebraError, AlgebraInput, AlgebraMode};
use torzeta_core::topeval::RationalFunction1V;
use torzeta_core::toric::ToricDatum;
use torzeta_core::Int;

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    MissingMode,
    UnknownMode(String),
    /// `products` given in submodule mode or `generators` in an algebra mode.
    WrongSection(&'static str),
    BadIndex(usize, usize),
    BadCoefficientLength(usize),
    DuplicateProduct(usize, usize),
    BadInteger(String),
    Algebra(AlgebraError),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "malformed document: {e}"),
            FormatError::MissingMode => {
                write!(f, "no mode given (set \"mode\" in the document or pass --mode)")
            }
            FormatError::UnknownMode(m) => {
                write!(f, "unknown mode {m:?} (expected subalgebra, ideal, or submodule)")
            }
            FormatError::WrongSection(s) => {
                write!(f, "section {s:?} does not belong to the selected mode")
            }
            FormatError::BadIndex(i, j) => {
                write!(f, "product index ({i}, {j}) out of range")
            }
            FormatError::BadCoefficientLength(i) => {
                write!(f, "coefficient vector of product entry {i} must have length = rank")
            }
            FormatError::DuplicateProduct(i, j) => {
                write!(f, "duplicate product entry for ({i}, {j})")
            }
            FormatError::BadInteger(s) => write!(f, "not an integer: {s:?}"),
            FormatError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> FormatError {
        FormatError::Json(e)
    }
}

impl From<AlgebraError> for FormatError {
    fn from(e: AlgebraError) -> FormatError {
        FormatError::Algebra(e)
    }
}

pub fn parse_mode(s: &str) -> Result<AlgebraMode, FormatError> {
    match s {
        "subalgebra" => Ok(AlgebraMode::Subalgebra),
        "ideal" => Ok(AlgebraMode::Ideal),
        "submodule" => Ok(AlgebraMode::Submodule),
        other => Err(FormatError::UnknownMode(other.to_string())),
    }
}

pub fn mode_name(mode: AlgebraMode) -> &'static str {
    match mode {
        AlgebraMode::Subalgebra => "subalgebra",
        AlgebraMode::Ideal => "ideal",
        AlgebraMode::Submodule => "submodule",
    }
}

/// Structure input as written by users. `products` lists `(i, j, c)` with
/// `e_i * e_j = sum_k c[k] e_k`, indices 1-based; missing entries are zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<(usize, usize, Vec<i64>)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<i64>>>>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<InputDocument, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Resolves the mode (a command line override wins over the document)
    /// and assembles the dense structure input.
    pub fn to_algebra_input(
        &self,
        mode_override: Option<AlgebraMode>,
    ) -> Result<AlgebraInput, FormatError> {
        let mode = match (mode_override, &self.mode) {
            (Some(m), _) => m,
            (None, Some(s)) => parse_mode(s)?,
            (None, None) => return Err(FormatError::MissingMode),
        };
        let d = self.rank;
        match mode {
            AlgebraMode::Submodule => {
                if self.products.is_some() {
                    return Err(FormatError::WrongSection("products"));
                }
                let generators = self.generators.clone().unwrap_or_default();
                Ok(AlgebraInput::submodule(d, generators)?)
            }
            AlgebraMode::Subalgebra | AlgebraMode::Ideal => {
                if self.generators.is_some() {
                    return Err(FormatError::WrongSection("generators"));
                }
                let mut constants = vec![vec![vec![0i64; d]; d]; d];
                let mut seen = std::collections::BTreeSet::new();
                for (entry, (i, j, c)) in
                    self.products.iter().flatten().enumerate()
                {
                    if *i < 1 || *i > d || *j < 1 || *j > d {
                        return Err(FormatError::BadIndex(*i, *j));
                    }
                    if c.len() != d {
                        return Err(FormatError::BadCoefficientLength(entry));
                    }
                    if !seen.insert((*i, *j)) {
                        return Err(FormatError::DuplicateProduct(*i, *j));
                    }
                    constants[*i - 1][*j - 1].copy_from_slice(c);
                }
                Ok(AlgebraInput::algebra(d, mode, constants)?)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OutputStats {
    pub regular_data: usize,
    pub terms: u64,
    pub wall_ms: u64,
}

/// Result document. On `ok` the rational function fields are present; on
/// `fail` the phase and the serialized offending datum are.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OutputDocument {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<(i64, i64, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<Value>,
    pub stats: OutputStats,
}

/// Run-length encodes a sorted factor list into (A, B, multiplicity) rows.
fn group_factors(factors: &[(i64, i64)]) -> Vec<(i64, i64, usize)> {
    let mut out: Vec<(i64, i64, usize)> = Vec::new();
    for &(a, b) in factors {
        match out.last_mut() {
            Some((pa, pb, m)) if *pa == a && *pb == b => *m += 1,
            _ => out.push((a, b, 1)),
        }
    }
    out
}

impl OutputDocument {
    pub fn from_json(text: &str) -> Result<OutputDocument, FormatError> {
        serde_json::from_str(text).map_err(FormatError::Json)
    }

    pub fn ok(
        name: Option<String>,
        r: &RationalFunction1V,
        stats: OutputStats,
    ) -> OutputDocument {
        OutputDocument {
            status: "ok".to_string(),
            name,
            numerator: Some(r.numerator().iter().map(|c| c.to_string()).collect()),
            constant: Some(r.constant().to_string()),
            denominator: Some(group_factors(r.factors())),
            phase: None,
            datum: None,
            stats,
        }
    }

    pub fn fail(
        name: Option<String>,
        phase: &str,
        datum: Value,
        stats: OutputStats,
    ) -> OutputDocument {
        OutputDocument {
            status: "fail".to_string(),
            name,
            numerator: None,
            constant: None,
            denominator: None,
            phase: Some(phase.to_string()),
            datum: Some(datum),
            stats,
        }
    }

    /// Reconstructs the rational function of an `ok` document.
    pub fn rational_function(&self) -> Result<RationalFunction1V, FormatError> {
        let parse_int = |s: &String| {
            Int::from_str(s).map_err(|_| FormatError::BadInteger(s.clone()))
        };
        let numerator = self
            .numerator
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(parse_int)
            .collect::<Result<Vec<Int>, _>>()?;
        let constant = match &self.constant {
            Some(c) => parse_int(c)?,
            None => Int::from(1),
        };
        let mut factors = Vec::new();
        for &(a, b, m) in self.denominator.as_deref().unwrap_or_default() {
            for _ in 0..m {
                factors.push((a, b));
            }
        }
        Ok(RationalFunction1V::new(numerator, constant, factors))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialize output document");
        s.push('\n');
        s
    }
}

/// Serializes a toric datum for failure reports: the ambient dimension, the
/// weak and strict inequality normals, the polynomial family as
/// (exponent vector, coefficient) pairs, and the depth counter.
pub fn datum_to_json(t: &ToricDatum) -> Value {
    let rows = |m: &[Vec<Int>]| -> Value {
        Value::Array(
            m.iter()
                .map(|row| {
                    Value::Array(row.iter().map(|v| json!(v.to_string())).collect())
                })
                .collect(),
        )
    };
    let polys: Vec<Value> = t
        .polys()
        .iter()
        .map(|f| {
            Value::Array(
                f.terms()
                    .map(|(e, c)| json!([e, c.to_string()]))
                    .collect(),
            )
        })
        .collect();
    json!({
        "ambient": t.cone().ambient_dim(),
        "weak": rows(t.cone().weak()),
        "strict": rows(t.cone().strict()),
        "polys": polys,
        "depth": t.depth(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_product_documents() {
        let text = r#"{
            "name": "heisenberg",
            "rank": 3,
            "mode": "subalgebra",
            "products": [[1, 2, [0, 0, 1]], [2, 1, [0, 0, -1]]]
        }"#;
        let doc = InputDocument::from_json(text).unwrap();
        assert_eq!(doc.rank, 3);
        let input = doc.to_algebra_input(None).unwrap();
        assert_eq!(input.mode(), AlgebraMode::Subalgebra);
        let over = doc.to_algebra_input(Some(AlgebraMode::Ideal)).unwrap();
        assert_eq!(over.mode(), AlgebraMode::Ideal);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(matches!(
            InputDocument::from_json("{"),
            Err(FormatError::Json(_))
        ));
        let doc = InputDocument::from_json(r#"{"rank": 2}"#).unwrap();
        assert!(matches!(
            doc.to_algebra_input(None),
            Err(FormatError::MissingMode)
        ));
        let doc =
            InputDocument::from_json(r#"{"rank": 2, "mode": "ring"}"#).unwrap();
        assert!(matches!(
            doc.to_algebra_input(None),
            Err(FormatError::UnknownMode(_))
        ));
        let doc = InputDocument::from_json(
            r#"{"rank": 2, "mode": "subalgebra", "products": [[1, 3, [1, 0]]]}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.to_algebra_input(None),
            Err(FormatError::BadIndex(1, 3))
        ));
        let doc = InputDocument::from_json(
            r#"{"rank": 2, "mode": "subalgebra", "products": [[1, 2, [1]]]}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.to_algebra_input(None),
            Err(FormatError::BadCoefficientLength(0))
        ));
        let doc = InputDocument::from_json(
            r#"{"rank": 2, "mode": "subalgebra",
                "products": [[1, 2, [1, 0]], [1, 2, [0, 1]]]}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.to_algebra_input(None),
            Err(FormatError::DuplicateProduct(1, 2))
        ));
        let doc = InputDocument::from_json(
            r#"{"rank": 2, "mode": "submodule", "products": [[1, 1, [1, 0]]]}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.to_algebra_input(None),
            Err(FormatError::WrongSection("products"))
        ));
        let doc = InputDocument::from_json(
            r#"{"rank": 2, "mode": "submodule"}"#,
        )
        .unwrap();
        assert!(matches!(
            doc.to_algebra_input(None),
            Err(FormatError::Algebra(AlgebraError::MissingGenerators))
        ));
    }

    #[test]
    fn output_document_round_trips_the_rational_function() {
        let r = RationalFunction1V::new(
            vec![Int::from(3)],
            Int::from(2),
            vec![(1, 0), (1, 1), (2, 3)],
        );
        let stats = OutputStats {
            regular_data: 3,
            terms: 12,
            wall_ms: 0,
        };
        let doc = OutputDocument::ok(Some("h".to_string()), &r, stats);
        assert_eq!(doc.denominator.as_deref(), Some(&[(1, 0, 1), (1, 1, 1), (2, 3, 1)][..]));
        let r2 = doc.rational_function().unwrap();
        assert_eq!(r, r2);
        let doc2 = OutputDocument::ok(Some("h".to_string()), &r2, doc.stats.clone());
        assert_eq!(doc, doc2);
        let text = doc.to_json_string();
        let parsed: OutputDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, doc);
    }

    #[test]
    fn multiplicities_group_and_expand() {
        let r = RationalFunction1V::new(
            vec![Int::from(1)],
            Int::from(4),
            vec![(1, 1), (1, 1), (2, 3), (2, 3), (2, 3)],
        );
        let doc = OutputDocument::ok(
            None,
            &r,
            OutputStats {
                regular_data: 0,
                terms: 0,
                wall_ms: 0,
            },
        );
        assert_eq!(doc.denominator.as_deref(), Some(&[(1, 1, 2), (2, 3, 3)][..]));
        assert_eq!(doc.rational_function().unwrap(), r);
    }
}
