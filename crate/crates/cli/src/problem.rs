//! Problem files: one JSON document per problem.

use std::fs;
use std::path::{Path, PathBuf};

use polyint::field::{construct_field, reduce_field};
use polyint::{Field, FactoredIntegral, Integral, Poly};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub factors: Vec<FactorSpec>,
    #[serde(default)]
    pub field: Option<FieldSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub poly: String,
    pub exponent: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: String,
    pub q: String,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: invalid problem file: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{what}: {source}")]
    Poly {
        what: String,
        source: polyint::Error,
    },
    #[error("{0}")]
    Invalid(polyint::Error),
    #[error("{0}")]
    Usage(String),
}

/// A validated problem. `field` is the given field, or the reduced
/// product-of-factors field when none was given.
pub struct Problem {
    pub name: String,
    pub integral: Integral,
    pub field: Field,
    pub field_given: bool,
}

fn parse_poly(src: &str, what: String) -> Result<Poly, InputError> {
    src.parse().map_err(|source| InputError::Poly { what, source })
}

impl ProblemSpec {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| InputError::Json {
            path: path.to_owned(),
            source,
        })
    }

    pub fn build(&self) -> Result<Problem, InputError> {
        let mut factors = Vec::with_capacity(self.factors.len());
        for (i, f) in self.factors.iter().enumerate() {
            factors.push((parse_poly(&f.poly, format!("factors[{i}].poly"))?, f.exponent));
        }
        let integral = FactoredIntegral::new(factors).map_err(InputError::Invalid)?;
        let (field, field_given) = match &self.field {
            Some(fs) => {
                let p = parse_poly(&fs.p, "field.p".into())?;
                let q = parse_poly(&fs.q, "field.q".into())?;
                (Field::new(p, q).map_err(InputError::Invalid)?, true)
            }
            None => (reduce_field(&construct_field(&integral)).0, false),
        };
        Ok(Problem {
            name: self.name.clone(),
            integral,
            field,
            field_given,
        })
    }
}

/// The problem files named by `input`: the file itself, or every `.json`
/// file in a directory, sorted by file name.
pub fn collect_inputs(input: &Path) -> Result<Vec<PathBuf>, InputError> {
    if !input.is_dir() {
        return Ok(vec![input.to_owned()]);
    }
    let entries = fs::read_dir(input).map_err(|source| InputError::Io {
        path: input.to_owned(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    if files.is_empty() {
        return Err(InputError::Usage(format!(
            "no .json problem files in {}",
            input.display()
        )));
    }
    Ok(files)
}
