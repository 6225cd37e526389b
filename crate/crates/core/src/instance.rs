//! JSON instance format and the bundled fixtures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, Bilinear, Bimodule, CleftDatum, Grading};
use crate::field::{parse_scalar, Field};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read instance: {0}")]
    Io(String),
    #[error("malformed instance JSON: {0}")]
    Json(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("`{0}` is neither a bundled fixture (DN, T, K2, TP3, TP3-graded, TP3-broken, TP5) nor a readable file")]
    UnknownFixture(String),
}

/// `[i, j, k, "p/q"]`: the product of basis elements `i` and `j` has coefficient `p/q` on `k`.
pub type Constant = (usize, usize, usize, String);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub unit_index: usize,
    #[serde(default)]
    pub mult: Vec<Constant>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub left: Vec<Constant>,
    #[serde(default)]
    pub right: Vec<Constant>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub name: String,
    pub algebra: AlgebraSpec,
    pub module: ModuleSpec,
    #[serde(default)]
    pub nabla: Vec<Constant>,
    #[serde(default)]
    pub grading: Option<BTreeMap<String, i64>>,
}

const FIXTURES: &[(&str, &str)] = &[
    ("DN", include_str!("../fixtures/DN.json")),
    ("T", include_str!("../fixtures/T.json")),
    ("K2", include_str!("../fixtures/K2.json")),
    ("TP3", include_str!("../fixtures/TP3.json")),
    ("TP3-graded", include_str!("../fixtures/TP3-graded.json")),
    ("TP3-broken", include_str!("../fixtures/TP3-broken.json")),
    ("TP5", include_str!("../fixtures/TP5.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture_source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

fn labels_or_default(labels: &[String], dim: usize, prefix: &str) -> Result<Vec<String>, InstanceError> {
    if labels.is_empty() {
        return Ok((0..dim).map(|i| format!("{prefix}{i}")).collect());
    }
    if labels.len() != dim {
        return Err(InstanceError::Invalid(format!("{} labels for dimension {dim}", labels.len())));
    }
    Ok(labels.to_vec())
}

fn table<S: Field>(
    what: &str,
    entries: &[Constant],
    left: usize,
    right: usize,
    out: usize,
) -> Result<Bilinear<S>, InstanceError> {
    let mut parsed = Vec::with_capacity(entries.len());
    for (i, j, k, c) in entries {
        if *i >= left || *j >= right || *k >= out {
            return Err(InstanceError::Invalid(format!("{what}: index ({i},{j},{k}) out of range")));
        }
        let v: S = parse_scalar(c).ok_or_else(|| InstanceError::Invalid(format!("{what}: bad rational `{c}`")))?;
        parsed.push((*i, *j, *k, v));
    }
    Ok(Bilinear::from_entries(left, right, out, parsed))
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))
    }

    pub fn to_datum<S: Field>(&self) -> Result<CleftDatum<S>, InstanceError> {
        let da = self.algebra.dim;
        let dm = self.module.dim;
        if da == 0 {
            return Err(InstanceError::Invalid("algebra dimension must be positive".into()));
        }
        if self.algebra.unit_index != 0 {
            return Err(InstanceError::Invalid("the unit must be basis index 0".into()));
        }
        let la = labels_or_default(&self.algebra.labels, da, "a")?;
        let lm = labels_or_default(&self.module.labels, dm, "m")?;
        let grading = match &self.grading {
            None => None,
            Some(map) => {
                let mut g = Grading { a: vec![0; da], m: vec![0; dm] };
                for (label, w) in map {
                    let ia = la.iter().position(|l| l == label);
                    let im = lm.iter().position(|l| l == label);
                    match (ia, im) {
                        (Some(i), None) => g.a[i] = *w,
                        (None, Some(i)) => g.m[i] = *w,
                        (Some(_), Some(_)) => {
                            return Err(InstanceError::Invalid(format!("grading label `{label}` is ambiguous")))
                        }
                        (None, None) => return Err(InstanceError::Invalid(format!("grading label `{label}` is unknown"))),
                    }
                }
                Some(g)
            }
        };
        Ok(CleftDatum {
            name: self.name.clone(),
            algebra: Algebra { labels: la, mult: table("algebra.mult", &self.algebra.mult, da, da, da)? },
            module: Bimodule {
                labels: lm,
                left: table("module.left", &self.module.left, da, dm, dm)?,
                right: table("module.right", &self.module.right, dm, da, dm)?,
            },
            nabla: table("nabla", &self.nabla, dm, dm, dm)?,
            grading,
        })
    }
}

/// Parse an instance without checking the cleft-datum axioms.
pub fn parse_datum<S: Field>(text: &str) -> Result<CleftDatum<S>, InstanceError> {
    InstanceSpec::parse(text)?.to_datum()
}

pub fn fixture<S: Field>(name: &str) -> Result<CleftDatum<S>, InstanceError> {
    let src = fixture_source(name).ok_or_else(|| InstanceError::UnknownFixture(name.into()))?;
    parse_datum(src)
}

/// A fixture name or a path to a JSON file.
pub fn load<S: Field>(name_or_path: &str) -> Result<CleftDatum<S>, InstanceError> {
    if let Some(src) = fixture_source(name_or_path) {
        return parse_datum(src);
    }
    let path = std::path::Path::new(name_or_path);
    if !path.exists() && path.extension().is_none() && path.components().count() == 1 {
        return Err(InstanceError::UnknownFixture(name_or_path.into()));
    }
    let text = std::fs::read_to_string(name_or_path).map_err(|e| InstanceError::Io(format!("{name_or_path}: {e}")))?;
    parse_datum(&text)
}
