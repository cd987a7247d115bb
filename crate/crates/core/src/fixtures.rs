//! Embedded matrix and map fixtures.
//!
//! The TOML sources are compiled in; setting `DP4AUT_FIXTURES` to a
//! directory reads `matrices.toml`, `maps.toml` and `manifest.toml` from
//! there instead. The manifest pins the record counts so a truncated or
//! edited file cannot silently drop checks.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::RatMat;
use crate::numfield::Rat;
use crate::picard::Basis;
use crate::realforms::FormId;
use crate::weyl::{parse_bits, Bits5, Perm};

pub const ENV_VAR: &str = "DP4AUT_FIXTURES";

const MATRICES: &str = include_str!("../fixtures/matrices.toml");
const MAPS: &str = include_str!("../fixtures/maps.toml");
const MANIFEST: &str = include_str!("../fixtures/manifest.toml");

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{file}: {msg}")]
    Parse { file: String, msg: String },
    #[error("{file} holds {found} records, the manifest expects {expected}")]
    CountMismatch { file: String, found: usize, expected: usize },
}

fn source(name: &str, embedded: &'static str) -> Result<String, FixtureError> {
    match std::env::var_os(ENV_VAR) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(name);
            std::fs::read_to_string(&path)
                .map_err(|e| FixtureError::Io { path: path.display().to_string(), msg: e.to_string() })
        }
        None => Ok(embedded.to_string()),
    }
}

fn parse_err(file: &str, msg: impl ToString) -> FixtureError {
    FixtureError::Parse { file: file.to_string(), msg: msg.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub matrices: usize,
    pub maps: usize,
}

pub fn manifest() -> Result<Manifest, FixtureError> {
    toml::from_str(&source("manifest.toml", MANIFEST)?).map_err(|e| parse_err("manifest.toml", e))
}

fn check_count(file: &str, found: usize, expected: usize) -> Result<(), FixtureError> {
    if found != expected {
        return Err(FixtureError::CountMismatch { file: file.to_string(), found, expected });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Automorphism,
    NonIntegral,
}

#[derive(Debug, Clone)]
pub struct MatrixRecord {
    pub tag: String,
    pub form: FormId,
    pub basis: Basis,
    pub expect: Expect,
    pub perm: Perm,
    /// Stated kernel signature, present for elements acting trivially on
    /// the pairs.
    pub swaps: Option<Bits5>,
    pub note: String,
    pub rows: RatMat,
}

#[derive(Deserialize)]
struct RawMatrices {
    matrix: Vec<RawMatrix>,
}

#[derive(Deserialize)]
struct RawMatrix {
    tag: String,
    form: String,
    basis: String,
    expect: String,
    perm: String,
    swaps: Option<String>,
    note: String,
    rows: Vec<String>,
}

fn parse_matrix(r: RawMatrix) -> Result<MatrixRecord, FixtureError> {
    let f = "matrices.toml";
    let e = |m: &str| parse_err(f, format!("{}: {m}", r.tag));
    let rows: RatMat = r
        .rows
        .iter()
        .map(|line| line.split_whitespace().map(|t| t.parse::<Rat>().map_err(|_| e("bad entry"))).collect())
        .collect::<Result<_, _>>()?;
    if rows.len() != 6 || rows.iter().any(|row| row.len() != 6) {
        return Err(e("need a 6x6 matrix"));
    }
    Ok(MatrixRecord {
        form: FormId::parse(&r.form).ok_or_else(|| e("unknown form"))?,
        basis: Basis::from_name(&r.basis).ok_or_else(|| e("unknown basis"))?,
        expect: match r.expect.as_str() {
            "automorphism" => Expect::Automorphism,
            "non-integral" => Expect::NonIntegral,
            _ => return Err(e("unknown expectation")),
        },
        perm: Perm::parse(&r.perm).map_err(|_| e("bad permutation"))?,
        swaps: match &r.swaps {
            Some(s) => Some(parse_bits(s).ok_or_else(|| e("bad swap signature"))?),
            None => None,
        },
        note: r.note.clone(),
        rows,
        tag: r.tag,
    })
}

/// Matrix records without the count check, for regenerating the manifest.
pub fn matrices_unchecked() -> Result<Vec<MatrixRecord>, FixtureError> {
    let raw: RawMatrices = toml::from_str(&source("matrices.toml", MATRICES)?).map_err(|e| parse_err("matrices.toml", e))?;
    raw.matrix.into_iter().map(parse_matrix).collect()
}

pub fn matrices() -> Result<Vec<MatrixRecord>, FixtureError> {
    let out = matrices_unchecked()?;
    check_count("matrices.toml", out.len(), manifest()?.matrices)?;
    Ok(out)
}

pub fn matrix(tag: &str) -> Result<MatrixRecord, FixtureError> {
    matrices()?
        .into_iter()
        .find(|m| m.tag == tag)
        .ok_or_else(|| parse_err("matrices.toml", format!("no record {tag}")))
}

/// One builtin map specialised at sample parameters, with its manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub tag: String,
    pub form: String,
    pub basis: String,
    pub d: i64,
    pub params: std::collections::BTreeMap<String, String>,
    /// Expected properties, one [`crate::birmaps::certify::Fact`] per line.
    pub facts: Vec<String>,
    pub order: u32,
    pub real: bool,
    /// The matrix the facts are read from, in the map's basis.
    pub lattice: Vec<String>,
    /// Coefficient tables `e0 e1 e2 e3 : coeff`, one per component.
    pub components: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub map: Vec<MapRecord>,
}

pub fn maps() -> Result<Vec<MapRecord>, FixtureError> {
    let raw: MapFile = toml::from_str(&source("maps.toml", MAPS)?).map_err(|e| parse_err("maps.toml", e))?;
    check_count("maps.toml", raw.map.len(), manifest()?.maps)?;
    Ok(raw.map)
}

/// The embedded map fixture text, for drift checks.
pub fn embedded_maps() -> &'static str {
    MAPS
}

pub fn embedded_manifest() -> &'static str {
    MANIFEST
}
