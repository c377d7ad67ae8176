//! File formats: matrices and coefficient tables as JSON or CSV.
//!
//! CSV cells are complex numbers written `re+imj` (e.g. `0.5-1j`). Matrix
//! CSV has no header; coefficient CSV starts with a `k\l,0,1,…` header and
//! each data row is prefixed by its `k`.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use num::complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::bases::CoeffTable;
use crate::error::{Error, Result};
use crate::matcore::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            other => Err(Error::Invalid(format!("unknown format `{other}`"))),
        }
    }
}

impl Format {
    /// Guesses from the file extension, defaulting to JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("csv") => Format::Csv,
            Some("txt") => Format::Text,
            _ => Format::Json,
        }
    }
}

pub fn format_complex(z: Complex64) -> String {
    format!("{}{}{}j", z.re, if z.im.is_sign_negative() { '-' } else { '+' }, z.im.abs())
}

/// Parses `re+imj`, `re-imj`, a bare real, or a bare imaginary `imj`.
pub fn parse_complex(cell: &str) -> Result<Complex64> {
    let s = cell.trim();
    let bad = || Error::Invalid(format!("cannot parse complex number `{cell}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['j', 'i']) else {
        return match s.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // split at the last sign that is not the leading one and not an exponent sign
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().map_err(|_| bad())?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    let z = Complex64::new(re, im);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

pub fn write_matrix_csv<W: Write>(m: &CMatrix, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for i in 0..m.n() {
        w.write_record((0..m.n()).map(|j| format_complex(m[(i, j)])))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_matrix_csv<R: Read>(input: R) -> Result<CMatrix> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(input);
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        rows.push(rec.iter().map(parse_complex).collect::<Result<Vec<_>>>()?);
    }
    CMatrix::from_rows(rows)
}

pub fn write_coeffs_csv<W: Write>(c: &CoeffTable, out: W) -> Result<()> {
    let n = c.n();
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(std::iter::once("k\\l".to_string()).chain((0..n).map(|l| l.to_string())))?;
    for k in 0..n {
        w.write_record(std::iter::once(k.to_string()).chain((0..n).map(|l| format_complex(c[(k, l)]))))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_coeffs_csv<R: Read>(input: R) -> Result<CoeffTable> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
    let n = r.headers()?.len().saturating_sub(1);
    let mut table = CoeffTable::zeros(n);
    let mut seen = vec![false; n];
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != n + 1 {
            return Err(Error::Invalid(format!("coefficient row has {} cells, expected {}", rec.len(), n + 1)));
        }
        let k: usize = rec[0].parse().map_err(|_| Error::Invalid(format!("bad row label `{}`", &rec[0])))?;
        if k >= n || seen[k] {
            return Err(Error::Invalid(format!("row label {k} out of range or repeated")));
        }
        seen[k] = true;
        for l in 0..n {
            table[(k, l)] = parse_complex(&rec[l + 1])?;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Invalid("coefficient table is missing rows".into()));
    }
    Ok(table)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

/// Reads a matrix as JSON or CSV, chosen by extension.
pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    match Format::from_path(path) {
        Format::Csv => read_matrix_csv(fs::File::open(path)?),
        _ => read_json(path),
    }
}

pub fn write_matrix(m: &CMatrix, path: &Path) -> Result<()> {
    match Format::from_path(path) {
        Format::Csv => write_matrix_csv(m, fs::File::create(path)?),
        _ => write_json(m, path),
    }
}

pub fn read_coeffs(path: &Path) -> Result<CoeffTable> {
    match Format::from_path(path) {
        Format::Csv => read_coeffs_csv(fs::File::open(path)?),
        _ => read_json(path),
    }
}

pub fn write_coeffs(c: &CoeffTable, path: &Path) -> Result<()> {
    match Format::from_path(path) {
        Format::Csv => write_coeffs_csv(c, fs::File::create(path)?),
        _ => write_json(c, path),
    }
}
