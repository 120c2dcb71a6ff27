//! Stable serialized forms: the JSON lattice record and the plain-text Gram
//! matrix format (4 lines of 4 exact rationals).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{as_string, parse_rat_matrix, Rat, RatMat};
use crate::ideal_lattice::{IdealLattice, ModularityCertificate};
use crate::lattice::ZLat4;

/// Everything about a constructed lattice. Every number is a JSON string so
/// nothing passes through floating point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    #[serde(with = "as_string")]
    pub a: i64,
    #[serde(with = "as_string")]
    pub b: i64,
    #[serde(with = "as_string")]
    pub ell: u64,
    #[serde(with = "as_string")]
    pub alpha: Rat,
    pub order_basis: Vec<Vec<String>>,
    pub ideal_basis: Vec<Vec<String>>,
    pub gram: Vec<Vec<String>>,
    #[serde(with = "as_string")]
    pub det: Rat,
    #[serde(with = "as_string")]
    pub min: Rat,
    #[serde(with = "as_string")]
    pub kissing: u64,
    pub even: bool,
    pub certificate: ModularityCertificate,
}

fn strings(m: &RatMat) -> Vec<Vec<String>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn basis_strings(l: &ZLat4) -> Vec<Vec<String>> {
    strings(l.basis())
}

impl LatticeRecord {
    pub fn new(lattice: &IdealLattice, certificate: ModularityCertificate) -> Result<Self> {
        let alg = lattice.algebra();
        let (min, kissing) = lattice.minimum_and_kissing()?;
        Ok(LatticeRecord {
            a: alg.a(),
            b: alg.b(),
            ell: certificate.ell,
            alpha: lattice.alpha().clone(),
            order_basis: basis_strings(lattice.ideal().order().lattice()),
            ideal_basis: basis_strings(lattice.ideal().lattice()),
            gram: strings(lattice.gram()),
            det: lattice.discriminant()?,
            min,
            kissing,
            even: lattice.is_even(),
            certificate,
        })
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        sorted_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn gram_matrix(&self) -> Result<RatMat> {
        parse_rat_matrix(
            &self
                .gram
                .iter()
                .map(|r| r.join(" "))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    }
}

/// Any JSON-serializable value as pretty JSON with sorted keys.
pub fn sorted_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("value serializes");
    serde_json::to_string_pretty(&value).expect("value serializes")
}

pub fn format_matrix(m: &RatMat) -> String {
    let mut out = String::new();
    for r in m.row_vecs() {
        let line: Vec<String> = r.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a 4×4 matrix of exact rationals, one row per line.
pub fn parse_matrix4(text: &str) -> Result<RatMat> {
    let m = parse_rat_matrix(text)?;
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Dimension(format!(
            "expected a 4x4 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}
