//! The structure-constant file format: JSON with scalar strings.

use radford_core::{CycScalar, Elem, Functional, HopfData, Mat, Tensor3};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    pub name: String,
    pub dim: usize,
    pub field_order: u32,
    pub mult: Vec<Vec<Vec<String>>>,
    pub comult: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Vec<String>>>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Format(msg.into())
}

fn scalar(text: &str, field: u32) -> Result<CycScalar, CliError> {
    CycScalar::parse(text, field).map_err(|e| bad(format!("{text:?}: {e}")))
}

fn vector(v: &[String], n: usize, field: u32, what: &str) -> Result<Vec<CycScalar>, CliError> {
    if v.len() != n {
        return Err(bad(format!("{what} has length {}, expected {n}", v.len())));
    }
    v.iter().map(|s| scalar(s, field)).collect()
}

fn matrix(m: &[Vec<String>], n: usize, field: u32, what: &str) -> Result<Mat, CliError> {
    if m.len() != n {
        return Err(bad(format!("{what} has {} rows, expected {n}", m.len())));
    }
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, n, field, &format!("{what} row {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(rows).map_err(|e| bad(e.to_string()))
}

fn tensor(t: &[Vec<Vec<String>>], n: usize, field: u32, what: &str) -> Result<Tensor3, CliError> {
    if t.len() != n {
        return Err(bad(format!("{what} has {} slices, expected {n}", t.len())));
    }
    let nested = t
        .iter()
        .enumerate()
        .map(|(i, s)| matrix(s, n, field, &format!("{what}[{i}]")).map(|m| m.to_rows()))
        .collect::<Result<Vec<_>, _>>()?;
    Tensor3::from_nested(nested).map_err(|e| bad(e.to_string()))
}

impl HopfFile {
    pub fn to_hopf(&self) -> Result<HopfData, CliError> {
        let (n, f) = (self.dim, self.field_order);
        if f == 0 {
            return Err(bad("field_order must be positive"));
        }
        if n == 0 {
            return Err(bad("dim must be positive"));
        }
        Ok(HopfData {
            name: self.name.clone(),
            dim: n,
            field_order: f,
            mult: tensor(&self.mult, n, f, "mult")?,
            unit: Elem(vector(&self.unit, n, f, "unit")?),
            comult: tensor(&self.comult, n, f, "comult")?,
            counit: Functional(vector(&self.counit, n, f, "counit")?),
            antipode: matrix(&self.antipode, n, f, "antipode")?,
            star: self.star.as_ref().map(|s| matrix(s, n, f, "star")).transpose()?,
        })
    }

    pub fn from_hopf(h: &HopfData) -> Result<HopfFile, CliError> {
        let f = h.field_order;
        let text = |c: &CycScalar| c.to_text(f).map_err(|e| bad(e.to_string()));
        let vec_text = |v: &[CycScalar]| v.iter().map(text).collect::<Result<Vec<_>, _>>();
        let mat_text = |m: &Mat| m.to_rows().iter().map(|r| vec_text(r)).collect::<Result<Vec<_>, _>>();
        let tensor_text = |t: &Tensor3| {
            t.to_nested()
                .iter()
                .map(|s| s.iter().map(|r| vec_text(r)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(HopfFile {
            name: h.name.clone(),
            dim: h.dim,
            field_order: f,
            mult: tensor_text(&h.mult)?,
            comult: tensor_text(&h.comult)?,
            unit: vec_text(&h.unit.0)?,
            counit: vec_text(&h.counit.0)?,
            antipode: mat_text(&h.antipode)?,
            star: h.star.as_ref().map(mat_text).transpose()?,
        })
    }
}

pub fn parse(text: &str) -> Result<HopfData, CliError> {
    let file: HopfFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    file.to_hopf()
}

/// Two-space indented JSON with a trailing newline.
pub fn write(h: &HopfData) -> Result<String, CliError> {
    let file = HopfFile::from_hopf(h)?;
    let mut out = serde_json::to_string_pretty(&file).map_err(|e| bad(e.to_string()))?;
    out.push('\n');
    Ok(out)
}
