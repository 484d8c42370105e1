//! Real-form catalog: `(dim, Killing signature, Cartan dimension)` to real
//! rank and weak amenability constant.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{format_rational, parse_rational, Rational, Signature};

/// Environment variable naming a catalog file that replaces the built-in one.
pub const CATALOG_ENV: &str = "LIEWA_CATALOG";

const DEFAULT_CATALOG: &str = include_str!("../data/real_forms.json");

/// A weak amenability constant: a nonnegative rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WaConstant {
    Finite(Rational),
    Infinite,
}

impl WaConstant {
    pub fn one() -> Self {
        WaConstant::Finite(Rational::one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, WaConstant::Infinite)
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s.trim() == "inf" {
            return Some(WaConstant::Infinite);
        }
        let r = parse_rational(s)?;
        (!r.is_negative()).then_some(WaConstant::Finite(r))
    }
}

impl Mul for WaConstant {
    type Output = WaConstant;

    fn mul(self, rhs: WaConstant) -> WaConstant {
        match (self, rhs) {
            (WaConstant::Finite(a), WaConstant::Finite(b)) => WaConstant::Finite(a * b),
            _ => WaConstant::Infinite,
        }
    }
}

impl std::iter::Product for WaConstant {
    fn product<I: Iterator<Item = WaConstant>>(iter: I) -> Self {
        iter.fold(WaConstant::one(), |a, b| a * b)
    }
}

impl fmt::Display for WaConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WaConstant::Finite(r) => f.write_str(&format_rational(r)),
            WaConstant::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for WaConstant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WaConstant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        WaConstant::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad constant '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealFormRecord {
    pub name: String,
    pub dim: usize,
    pub signature: Signature,
    pub cartan_dim: usize,
    pub real_rank: usize,
    pub lambda_wa: WaConstant,
}

impl RealFormRecord {
    pub fn key(&self) -> (usize, Signature, usize) {
        (self.dim, self.signature, self.cartan_dim)
    }

    pub fn is_compact(&self) -> bool {
        self.real_rank == 0
    }
}

#[derive(Serialize, Deserialize)]
struct RecordFile {
    name: String,
    dim: usize,
    signature: [usize; 3],
    cartan_dim: usize,
    real_rank: usize,
    lambda_wa: WaConstant,
}

impl From<&RealFormRecord> for RecordFile {
    fn from(r: &RealFormRecord) -> Self {
        RecordFile {
            name: r.name.clone(),
            dim: r.dim,
            signature: [r.signature.positive, r.signature.negative, r.signature.zero],
            cartan_dim: r.cartan_dim,
            real_rank: r.real_rank,
            lambda_wa: r.lambda_wa.clone(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed catalog: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("catalog key collision between '{first}' and '{second}' at dim {dim}, signature {signature}, cartan_dim {cartan_dim}")]
    Collision { first: String, second: String, dim: usize, signature: Signature, cartan_dim: usize },
    #[error("invalid catalog record '{name}': {reason}")]
    Invalid { name: String, reason: String },
}

/// Immutable after load. Lookups are counted so callers can confirm which
/// paths consulted the table.
#[derive(Debug)]
pub struct Catalog {
    records: Vec<RealFormRecord>,
    lookups: AtomicUsize,
}

impl Catalog {
    pub fn from_records(records: Vec<RealFormRecord>) -> Result<Self, CatalogError> {
        let mut seen: Vec<&RealFormRecord> = Vec::new();
        let mut names = HashSet::new();
        for r in &records {
            if r.signature.dim() != r.dim {
                return Err(CatalogError::Invalid { name: r.name.clone(), reason: "signature does not sum to dim".into() });
            }
            if (r.real_rank == 0) != (r.signature.positive == 0) {
                return Err(CatalogError::Invalid {
                    name: r.name.clone(),
                    reason: "real rank 0 must coincide with a negative definite Killing form".into(),
                });
            }
            if !names.insert(r.name.clone()) {
                return Err(CatalogError::Invalid { name: r.name.clone(), reason: "duplicate name".into() });
            }
            if let Some(prev) = seen.iter().find(|p| p.key() == r.key()) {
                return Err(CatalogError::Collision {
                    first: prev.name.clone(),
                    second: r.name.clone(),
                    dim: r.dim,
                    signature: r.signature,
                    cartan_dim: r.cartan_dim,
                });
            }
            seen.push(r);
        }
        Ok(Catalog { records, lookups: AtomicUsize::new(0) })
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let raw: Vec<RecordFile> = serde_json::from_str(text)?;
        let records = raw
            .into_iter()
            .map(|r| RealFormRecord {
                name: r.name,
                dim: r.dim,
                signature: Signature::new(r.signature[0], r.signature[1], r.signature[2]),
                cartan_dim: r.cartan_dim,
                real_rank: r.real_rank,
                lambda_wa: r.lambda_wa,
            })
            .collect();
        Self::from_records(records)
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// The built-in catalog.
    pub fn builtin() -> Self {
        Self::from_json(DEFAULT_CATALOG).expect("built-in catalog is valid")
    }

    /// The catalog named by `LIEWA_CATALOG`, or the built-in one.
    pub fn from_env() -> Result<Self, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(p) => Self::load(Path::new(&p)),
            None => Ok(Self::builtin()),
        }
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<RecordFile> = self.records.iter().map(RecordFile::from).collect();
        serde_json::to_string_pretty(&raw).expect("catalog serializes")
    }

    pub fn records(&self) -> &[RealFormRecord] {
        &self.records
    }

    pub fn lookup(&self, dim: usize, signature: Signature, cartan_dim: usize) -> Option<&RealFormRecord> {
        self.lookups.fetch_add(1, Ordering::Relaxed);
        self.records.iter().find(|r| r.key() == (dim, signature, cartan_dim))
    }

    pub fn lookup_count(&self) -> usize {
        self.lookups.load(Ordering::Relaxed)
    }
}
