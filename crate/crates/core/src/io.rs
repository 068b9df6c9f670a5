//! Series files.
//!
//! Two formats are read:
//!
//! * JSON: `{"center": 0.0, "coeffs": [a_0, a_1, ...]}`
//! * CSV with header `n,a_n`. Rows may come in any order and may leave out
//!   zero coefficients; the degree is the largest index present. CSV carries
//!   no center, so the caller supplies one.
//!
//! Only JSON is written.

use std::path::Path;

use thiserror::Error;

use crate::series::{PowerSeries, SeriesError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON series: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV series: {0}")]
    Csv(#[from] csv::Error),
    #[error("CSV header must be `n,a_n`, found `{0}`")]
    CsvHeader(String),
    #[error("CSV row {row}: {msg}")]
    CsvRow { row: usize, msg: String },
    #[error("CSV series has no rows")]
    CsvEmpty,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFormat {
    Json,
    Csv,
}

impl SeriesFormat {
    /// `.csv` means CSV, anything else JSON.
    pub fn from_path(path: &Path) -> SeriesFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => SeriesFormat::Csv,
            _ => SeriesFormat::Json,
        }
    }
}

pub fn series_from_json(text: &str) -> Result<PowerSeries, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with shortest round-trip floats.
pub fn series_to_json(series: &PowerSeries) -> String {
    let mut s = serde_json::to_string_pretty(series).expect("series always serializes");
    s.push('\n');
    s
}

pub fn series_from_csv(text: &str, center: f64) -> Result<PowerSeries, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "n" || &headers[1] != "a_n" {
        return Err(IoError::CsvHeader(
            headers.iter().collect::<Vec<_>>().join(","),
        ));
    }
    let mut entries: Vec<(usize, f64)> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = i + 2;
        let n: usize = record[0].parse().map_err(|_| IoError::CsvRow {
            row,
            msg: format!("index `{}` is not a non-negative integer", &record[0]),
        })?;
        let a: f64 = record[1].parse().map_err(|_| IoError::CsvRow {
            row,
            msg: format!("coefficient `{}` is not a number", &record[1]),
        })?;
        if entries.iter().any(|&(m, _)| m == n) {
            return Err(IoError::CsvRow {
                row,
                msg: format!("index {n} appears twice"),
            });
        }
        entries.push((n, a));
    }
    let degree = entries
        .iter()
        .map(|&(n, _)| n)
        .max()
        .ok_or(IoError::CsvEmpty)?;
    let mut coeffs = vec![0.0; degree + 1];
    for (n, a) in entries {
        coeffs[n] = a;
    }
    Ok(PowerSeries::new(center, coeffs)?)
}

/// Reads a series file, picking the format from the extension.
pub fn read_series(path: &Path, csv_center: f64) -> Result<PowerSeries, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    match SeriesFormat::from_path(path) {
        SeriesFormat::Json => series_from_json(&text),
        SeriesFormat::Csv => series_from_csv(&text, csv_center),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_fills_gaps() {
        let s = series_from_csv("n,a_n\n3,-0.5\n1,1\n", 0.0).unwrap();
        assert_eq!(s.coeffs(), &[0.0, 1.0, 0.0, -0.5]);
        let s = series_from_csv("n, a_n\n 0 , 2.5e-1\n", 1.5).unwrap();
        assert_eq!(s.coeffs(), &[0.25]);
        assert_eq!(s.center(), 1.5);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(
            series_from_csv("k,v\n0,1\n", 0.0),
            Err(IoError::CsvHeader(_))
        ));
        assert!(matches!(
            series_from_csv("n,a_n\n", 0.0),
            Err(IoError::CsvEmpty)
        ));
        assert!(matches!(
            series_from_csv("n,a_n\n-1,2\n", 0.0),
            Err(IoError::CsvRow { row: 2, .. })
        ));
        assert!(matches!(
            series_from_csv("n,a_n\n0,abc\n", 0.0),
            Err(IoError::CsvRow { .. })
        ));
        assert!(matches!(
            series_from_csv("n,a_n\n0,1\n0,2\n", 0.0),
            Err(IoError::CsvRow { row: 3, .. })
        ));
        assert!(matches!(
            series_from_csv("n,a_n\n0,NaN\n", 0.0),
            Err(IoError::Series(_))
        ));
    }

    #[test]
    fn json_errors() {
        assert!(series_from_json("{\"coeffs\": [1]}").is_err());
        assert!(series_from_json("{\"center\": 0, \"coeffs\": []}").is_err());
        assert!(series_from_json("[1, 2]").is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            SeriesFormat::from_path(Path::new("a/b.CSV")),
            SeriesFormat::Csv
        );
        assert_eq!(
            SeriesFormat::from_path(Path::new("a/b.json")),
            SeriesFormat::Json
        );
        assert_eq!(
            SeriesFormat::from_path(Path::new("noext")),
            SeriesFormat::Json
        );
    }

    proptest! {
        #[test]
        fn json_round_trip_is_lossless(
            center in -1e3..1e3f64,
            coeffs in prop::collection::vec(prop::num::f64::NORMAL, 1..40),
        ) {
            let s = PowerSeries::new(center, coeffs).unwrap();
            prop_assert_eq!(series_from_json(&series_to_json(&s)).unwrap(), s);
        }
    }
}
