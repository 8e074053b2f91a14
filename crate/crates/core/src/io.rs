//! JSON and CSV formats.
//!
//! Matrices are `{"re": [[...]], "im": [[...]]}` with row-major real arrays. Report numbers
//! are written in scientific notation with 12 significant digits; non-finite values become
//! the strings `"inf"`, `"-inf"` and `"nan"`.

use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::channels::{
    certify_rdm, dephasing_map, lueders_map, mixing_map, modified_coarse_map, twirling_map, MeasurementPartition,
    QuantumChannel, ResourceDestroyingMap,
};
use crate::error::{Error, Result};
use crate::linalg::{validate_density, ComplexMatrix, DensityMatrix};
use crate::measures::MeasureReport;
use num_complex::Complex64;

/// Formats a float with 12 significant digits in scientific notation.
pub fn format_sci(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.11e}")
    }
}

/// A float that serializes through [`format_sci`]: a JSON number when finite, a string otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sci(pub f64);

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format_sci(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(serializer)
        } else {
            serializer.serialize_str(&format_sci(self.0))
        }
    }
}

/// Accepts a JSON number or one of the strings `"inf"`, `"-inf"`, `"nan"`.
pub fn parse_extended(value: &serde_json::Value) -> Option<f64> {
    match value {
        serde_json::Value::Number(n) => n.as_f64(),
        serde_json::Value::String(s) => match s.as_str() {
            "inf" => Some(f64::INFINITY),
            "-inf" => Some(f64::NEG_INFINITY),
            "nan" => Some(f64::NAN),
            _ => None,
        },
        _ => None,
    }
}

/// Wire form of a complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = |part: fn(&Complex64) -> f64| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| part(&m[(i, j)])).collect())
                .collect()
        };
        MatrixJson {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    /// Square matrix; a missing `im` means a real matrix.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let d = self.re.len();
        let ragged = |rows: &Vec<Vec<f64>>| rows.iter().any(|r| r.len() != d);
        if ragged(&self.re) {
            return Err(Error::Parse(format!("\"re\" is not a {d}x{d} array")));
        }
        if !self.im.is_empty() && (self.im.len() != d || ragged(&self.im)) {
            return Err(Error::Parse(format!("\"im\" is not a {d}x{d} array")));
        }
        if d == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        Ok(ComplexMatrix::from_fn(d, d, |i, j| {
            let im = if self.im.is_empty() { 0.0 } else { self.im[i][j] };
            Complex64::new(self.re[i][j], im)
        }))
    }
}

impl Serialize for SciMatrix<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let m = self.0;
        let rows = |part: fn(&Complex64) -> f64| -> Vec<Vec<Sci>> {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| Sci(part(&m[(i, j)]))).collect())
                .collect()
        };
        let mut s = serializer.serialize_struct("Matrix", 2)?;
        s.serialize_field("re", &rows(|z| z.re))?;
        s.serialize_field("im", &rows(|z| z.im))?;
        s.end()
    }
}

/// Matrix serialized with [`Sci`] entries.
pub struct SciMatrix<'a>(pub &'a ComplexMatrix);

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let json: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.to_matrix()
}

/// Parses and validates a state file.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    validate_density(parse_matrix(text)?)
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    parse_state(&read_to_string(path)?)
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(&SciMatrix(rho.matrix())).expect("matrix serialization")
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Wire form of a map description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapSpec {
    Dephasing {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        partition: Option<Vec<Vec<usize>>>,
    },
    Lueders {
        dim: usize,
        partition: Vec<Vec<usize>>,
    },
    Modified {
        dim: usize,
        partition: Vec<Vec<usize>>,
    },
    Twirl {
        dim: usize,
        unitaries: Vec<MatrixJson>,
    },
    Mixing {
        dim: usize,
    },
    Kraus {
        dim: usize,
        operators: Vec<MatrixJson>,
    },
}

impl MapSpec {
    pub fn dim(&self) -> usize {
        match self {
            MapSpec::Dephasing { dim, .. }
            | MapSpec::Lueders { dim, .. }
            | MapSpec::Modified { dim, .. }
            | MapSpec::Twirl { dim, .. }
            | MapSpec::Mixing { dim }
            | MapSpec::Kraus { dim, .. } => *dim,
        }
    }

    fn matrices(dim: usize, list: &[MatrixJson]) -> Result<Vec<ComplexMatrix>> {
        list.iter()
            .map(|m| {
                let m = m.to_matrix()?;
                if m.nrows() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: m.nrows() });
                }
                Ok(m)
            })
            .collect()
    }

    /// Builds and certifies the map.
    pub fn build(&self) -> Result<ResourceDestroyingMap> {
        match self {
            MapSpec::Dephasing { dim, partition } => {
                let partition = match partition {
                    Some(blocks) => MeasurementPartition::new(*dim, blocks.clone())?,
                    None => MeasurementPartition::singletons(*dim),
                };
                dephasing_map(&partition)
            }
            MapSpec::Lueders { dim, partition } => lueders_map(&MeasurementPartition::new(*dim, partition.clone())?),
            MapSpec::Modified { dim, partition } => {
                modified_coarse_map(&MeasurementPartition::new(*dim, partition.clone())?)
            }
            MapSpec::Twirl { dim, unitaries } => twirling_map(&Self::matrices(*dim, unitaries)?),
            MapSpec::Mixing { dim } => mixing_map(*dim),
            MapSpec::Kraus { dim, operators } => {
                let channel = QuantumChannel::from_kraus(*dim, Self::matrices(*dim, operators)?)?;
                Ok(certify_rdm(channel)?.with_label(format!("kraus(d={dim})")))
            }
        }
    }
}

pub fn parse_map(text: &str) -> Result<ResourceDestroyingMap> {
    let spec: MapSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.build()
}

pub fn read_map(path: &Path) -> Result<ResourceDestroyingMap> {
    parse_map(&read_to_string(path)?)
}

#[derive(Serialize)]
struct MeasureReportJson<'a> {
    value: Sci,
    a: Sci,
    #[serde(rename = "N")]
    n: Sci,
    sigma_star: SciMatrix<'a>,
    fixed_point_residual: Sci,
}

/// `{"value", "a", "N", "sigma_star", "fixed_point_residual"}`.
pub fn measure_report_json(report: &MeasureReport) -> String {
    serde_json::to_string_pretty(&MeasureReportJson {
        value: Sci(report.value),
        a: Sci(report.a.value()),
        n: Sci(report.trace_term),
        sigma_star: SciMatrix(report.sigma_star.matrix()),
        fixed_point_residual: Sci(report.fixed_point_residual),
    })
    .expect("report serialization")
}

/// CSV with header `a,value,N`.
pub fn sweep_csv(rows: &[MeasureReport]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["a", "value", "N"]).expect("in-memory csv");
    for r in rows {
        writer
            .write_record([format_sci(r.a.value()), format_sci(r.value), format_sci(r.trace_term)])
            .expect("in-memory csv");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}
