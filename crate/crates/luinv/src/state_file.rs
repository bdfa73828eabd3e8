//! Versioned JSON files holding one operator.
//!
//! ```json
//! {
//!   "format": "luinv-state",
//!   "version": 1,
//!   "dims": [2, 2],
//!   "scalar": "rational",
//!   "matrix": [[["107/400", "0"], ...], ...]
//! }
//! ```
//!
//! Entries are `[re, im]` pairs. Rational files use `"p/q"` strings (or
//! integers); float files use JSON numbers. A float file read in rational
//! mode takes each number at its shortest decimal spelling.

use std::fmt::Write as _;
use std::path::Path;

use luinv_core::scalar::{
    format_rational, parse_rational, rational_to_f64, BigRational, GaussianRational,
};
use luinv_core::{DensityOperator, Matrix, Role};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "luinv-state";
pub const VERSION: u32 = 1;

const RHO1: &str = include_str!("../fixtures/rho1.json");
const RHO2: &str = include_str!("../fixtures/rho2.json");

#[derive(Debug, thiserror::Error)]
pub enum StateFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed state file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid state file: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] luinv_core::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Float,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub format: String,
    pub version: u32,
    pub dims: Vec<usize>,
    pub scalar: ScalarKind,
    pub matrix: Vec<Vec<[Entry; 2]>>,
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self, StateFileError> {
        let file: StateFile = serde_json::from_str(text)?;
        if file.format != FORMAT {
            return Err(StateFileError::Invalid(format!(
                "format is {:?}, expected {FORMAT:?}",
                file.format
            )));
        }
        if file.version != VERSION {
            return Err(StateFileError::Invalid(format!(
                "unsupported version {} (this build reads version {VERSION})",
                file.version
            )));
        }
        let n = file.matrix.len();
        if file.matrix.iter().any(|row| row.len() != n) {
            return Err(StateFileError::Invalid("matrix is not square".into()));
        }
        Ok(file)
    }

    /// A path, or one of the bundled names `rho1` / `rho2`.
    pub fn load(spec: &str) -> Result<Self, StateFileError> {
        let text = match spec {
            "rho1" => RHO1.to_string(),
            "rho2" => RHO2.to_string(),
            path => std::fs::read_to_string(path).map_err(|source| StateFileError::Io {
                path: path.to_string(),
                source,
            })?,
        };
        Self::parse(&text)
    }

    pub fn to_float(&self, role: Role) -> Result<DensityOperator<Complex64>, StateFileError> {
        let rows = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|[re, im]| Ok(Complex64::new(float_of(re)?, float_of(im)?)))
                    .collect::<Result<Vec<_>, StateFileError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DensityOperator::new(
            self.dims.clone(),
            Matrix::from_rows(rows)?,
            role,
        )?)
    }

    pub fn to_exact(
        &self,
        role: Role,
    ) -> Result<DensityOperator<GaussianRational>, StateFileError> {
        let rows = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|[re, im]| Ok(GaussianRational::new(exact_of(re)?, exact_of(im)?)))
                    .collect::<Result<Vec<_>, StateFileError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DensityOperator::new(
            self.dims.clone(),
            Matrix::from_rows(rows)?,
            role,
        )?)
    }

    pub fn from_float(op: &DensityOperator<Complex64>) -> Self {
        let m = op.matrix();
        let matrix = (0..m.dim())
            .map(|r| {
                (0..m.dim())
                    .map(|c| {
                        let z = m.get(r, c);
                        [Entry::Float(z.re), Entry::Float(z.im)]
                    })
                    .collect()
            })
            .collect();
        Self {
            format: FORMAT.into(),
            version: VERSION,
            dims: op.dims().to_vec(),
            scalar: ScalarKind::Float,
            matrix,
        }
    }

    pub fn from_exact(op: &DensityOperator<GaussianRational>) -> Self {
        let m = op.matrix();
        let matrix = (0..m.dim())
            .map(|r| {
                (0..m.dim())
                    .map(|c| {
                        let z = m.get(r, c);
                        [
                            Entry::Text(format_rational(&z.re)),
                            Entry::Text(format_rational(&z.im)),
                        ]
                    })
                    .collect()
            })
            .collect();
        Self {
            format: FORMAT.into(),
            version: VERSION,
            dims: op.dims().to_vec(),
            scalar: ScalarKind::Rational,
            matrix,
        }
    }

    /// JSON with one matrix row per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format\": {},", json(&self.format));
        let _ = writeln!(out, "  \"version\": {},", self.version);
        let _ = writeln!(out, "  \"dims\": {},", json(&self.dims));
        let _ = writeln!(out, "  \"scalar\": {},", json(&self.scalar));
        out.push_str("  \"matrix\": [\n");
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| format!("    {}", json(r)))
            .collect();
        out.push_str(&rows.join(",\n"));
        out.push_str("\n  ]\n}\n");
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), StateFileError> {
        std::fs::write(path, self.to_json()).map_err(|source| StateFileError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn float_of(e: &Entry) -> Result<f64, StateFileError> {
    match e {
        Entry::Int(i) => Ok(*i as f64),
        Entry::Float(x) => Ok(*x),
        Entry::Text(t) => match t.parse::<f64>() {
            Ok(x) => Ok(x),
            Err(_) => Ok(rational_to_f64(&parse_rational(t)?)),
        },
    }
}

fn exact_of(e: &Entry) -> Result<BigRational, StateFileError> {
    match e {
        Entry::Int(i) => Ok(BigRational::from_integer((*i).into())),
        Entry::Float(x) if x.is_finite() => Ok(parse_rational(&x.to_string())?),
        Entry::Float(x) => Err(StateFileError::Invalid(format!("non-finite entry {x}"))),
        Entry::Text(t) => Ok(parse_rational(t)?),
    }
}
