//! On-disk formats: matrices, weighted shifts and certifier verdicts (JSON),
//! plus the command-line weight shorthand.

use std::fs;
use std::path::Path;

use cslab_core::{ComplexMatrix, CsStatus, SymmetryVerdict, WeightedShift, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// `{"rows": r, "cols": c, "data": [[re, im], ...]}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<ComplexMatrix> {
        let data = self.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Ok(ComplexMatrix::from_vec(self.rows, self.cols, data)?)
    }
}

/// `{"n": n, "weights": [[re, im], ...]}` with `n - 1` weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftFile {
    pub n: usize,
    pub weights: Vec<[f64; 2]>,
}

impl ShiftFile {
    pub fn from_shift(s: &WeightedShift) -> Self {
        Self {
            n: s.dim(),
            weights: s.weights().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_shift(&self) -> CliResult<WeightedShift> {
        if self.weights.len() + 1 != self.n {
            return Err(CliError::Parse(format!(
                "shift file declares n = {} but lists {} weights",
                self.n,
                self.weights.len()
            )));
        }
        Ok(WeightedShift::new(
            self.weights
                .iter()
                .map(|&[re, im]| C64::new(re, im))
                .collect(),
        )?)
    }
}

/// Machine-readable certifier verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub status: String,
    pub residual: f64,
    pub tau_yes: f64,
    pub tau_no: f64,
    pub restarts_used: usize,
    pub seed: u64,
    pub certificate: Option<MatrixFile>,
}

impl VerdictReport {
    pub fn new(v: &SymmetryVerdict, tau_yes: f64, tau_no: f64) -> Self {
        Self {
            status: v.status.to_string(),
            residual: v.residual,
            tau_yes,
            tau_no,
            restarts_used: v.restarts_used,
            seed: v.seed,
            certificate: v.certificate.as_ref().map(MatrixFile::from_matrix),
        }
    }

    pub fn status(&self) -> Option<CsStatus> {
        match self.status.as_str() {
            "CS" => Some(CsStatus::Cs),
            "NotCS" => Some(CsStatus::NotCs),
            "Inconclusive" => Some(CsStatus::Inconclusive),
            _ => None,
        }
    }
}

pub fn read_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    let text = fs::read_to_string(path)?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> CliResult<ComplexMatrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    file.to_matrix()
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> CliResult<()> {
    let text = serde_json::to_string_pretty(&MatrixFile::from_matrix(m))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_shift(path: &Path) -> CliResult<WeightedShift> {
    let text = fs::read_to_string(path)?;
    let file: ShiftFile = serde_json::from_str(&text)?;
    file.to_shift()
}

/// Parses `re`, `re+imi`, `re-imi`, `imi`, `i`, `-i`.
pub fn parse_complex(token: &str) -> CliResult<C64> {
    let s: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Parse(format!("cannot parse complex number `{token}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let z = if let Some(body) = s.strip_suffix('i') {
        // Split at the last sign that is not the leading one and not an exponent sign.
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| {
            (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E')
        });
        let imag = |t: &str| -> Result<f64, CliError> {
            match t {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => t.parse::<f64>().map_err(|_| bad()),
            }
        };
        match split {
            Some(k) => C64::new(body[..k].parse().map_err(|_| bad())?, imag(&body[k..])?),
            None => C64::new(0.0, imag(body)?),
        }
    } else {
        C64::new(s.parse().map_err(|_| bad())?, 0.0)
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(bad());
    }
    Ok(z)
}

/// Comma-separated weights, e.g. `1,2,1` or `1+1i,-2,0.5i`.
pub fn parse_shift(spec: &str) -> CliResult<WeightedShift> {
    let weights = spec
        .split(',')
        .map(parse_complex)
        .collect::<CliResult<Vec<_>>>()?;
    Ok(WeightedShift::new(weights)?)
}
