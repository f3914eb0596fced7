//! Point-set and sketch files.
//!
//! Binary layout (little endian): `u64 rows`, `u64 cols`, then
//! `rows · cols` IEEE-754 doubles in row-major order. Sketches use the same
//! layout with `cols = k`.
//!
//! CSV: one point per line, comma separated. A first line that does not
//! parse as numbers is taken as a header and skipped.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use cauchy_sketch_core::sketch::PointSet;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

const HEADER_BYTES: usize = 16;

/// On-disk encoding of a point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Comma-separated text.
    Csv,
    /// Little-endian binary with a `(rows, cols)` header.
    Bin,
}

impl Format {
    /// `Bin` for a `.bin` extension, `Csv` otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("bin") => Format::Bin,
            _ => Format::Csv,
        }
    }
}

/// Read a point set in `format`.
pub fn read_points(path: &Path, format: Format) -> Result<PointSet, CliError> {
    let ctx = || path.display().to_string();
    let bytes = fs::read(path).map_err(|e| CliError::io(ctx(), e))?;
    if bytes.is_empty() {
        return Err(CliError::io(ctx(), "empty input"));
    }
    match format {
        Format::Csv => parse_csv(&bytes).map_err(|e| CliError::io(ctx(), e)),
        Format::Bin => {
            let (n, d, data) = parse_bin(&bytes).map_err(|e| CliError::io(ctx(), e))?;
            PointSet::from_flat(n, d, data).map_err(|e| CliError::io(ctx(), e))
        }
    }
}

fn parse_csv(bytes: &[u8]) -> Result<PointSet, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => {
                if let Some(bad) = row.iter().find(|x| !x.is_finite()) {
                    return Err(format!("line {}: non-finite value {bad}", line + 1));
                }
                rows.push(row);
            }
            Err(_) if line == 0 => {}
            Err(e) => return Err(format!("line {}: {e}", line + 1)),
        }
    }
    if rows.is_empty() {
        return Err("no data rows".into());
    }
    PointSet::from_rows(&rows).map_err(|e| e.to_string())
}

/// Decode the binary layout into `(rows, cols, values)`.
pub fn parse_bin(bytes: &[u8]) -> Result<(usize, usize, Vec<f64>), String> {
    if bytes.len() < HEADER_BYTES {
        return Err("truncated header".into());
    }
    let word = |i: usize| u64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().expect("8-byte slice"));
    let (rows, cols) = (word(0), word(1));
    if rows == 0 || cols == 0 {
        return Err(format!("empty matrix ({rows} x {cols})"));
    }
    let body = (rows as u128) * (cols as u128) * 8;
    if body != (bytes.len() - HEADER_BYTES) as u128 {
        return Err(format!(
            "header says {rows} x {cols} but body has {} bytes",
            bytes.len() - HEADER_BYTES
        ));
    }
    let data: Vec<f64> = bytes[HEADER_BYTES..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
        return Err(format!("non-finite value {bad}"));
    }
    Ok((rows as usize, cols as usize, data))
}

/// Write `rows` of equal length `cols` in the binary layout.
pub fn write_bin<'a, I>(path: &Path, rows: usize, cols: usize, values: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let ctx = || path.display().to_string();
    let file = fs::File::create(path).map_err(|e| CliError::io(ctx(), e))?;
    let mut w = BufWriter::new(file);
    let mut put = |b: &[u8]| w.write_all(b).map_err(|e| CliError::io(ctx(), e));
    put(&(rows as u64).to_le_bytes())?;
    put(&(cols as u64).to_le_bytes())?;
    for row in values {
        for x in row {
            put(&x.to_le_bytes())?;
        }
    }
    w.flush().map_err(|e| CliError::io(ctx(), e))
}

/// Read a binary matrix file as `(rows, cols, values)`.
pub fn read_bin(path: &Path) -> Result<(usize, usize, Vec<f64>), CliError> {
    let ctx = || path.display().to_string();
    let bytes = fs::read(path).map_err(|e| CliError::io(ctx(), e))?;
    if bytes.is_empty() {
        return Err(CliError::io(ctx(), "empty input"));
    }
    parse_bin(&bytes).map_err(|e| CliError::io(ctx(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_and_without_header() {
        let p = parse_csv(b"x,y\n1,2\n3.5, -4e1\n").unwrap();
        assert_eq!((p.len(), p.dim()), (2, 2));
        assert_eq!(p.row(1), &[3.5, -40.0]);
        let p = parse_csv(b"1,2,3\n").unwrap();
        assert_eq!((p.len(), p.dim()), (1, 3));
    }

    #[test]
    fn csv_errors() {
        assert!(parse_csv(b"a,b\n").is_err());
        assert!(parse_csv(b"1,2\n3\n").is_err());
        assert!(parse_csv(b"1,2\nx,3\n").is_err());
        assert!(parse_csv(b"1,NaN\n").is_err());
    }

    #[test]
    fn binary_round_trip_and_checks() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.bin");
        let rows = [[1.0, 2.0], [3.0, -0.5]];
        write_bin(&path, 2, 2, rows.iter().map(|r| &r[..])).unwrap();
        let (n, d, data) = read_bin(&path).unwrap();
        assert_eq!((n, d), (2, 2));
        assert_eq!(data, vec![1.0, 2.0, 3.0, -0.5]);

        let bytes = fs::read(&path).unwrap();
        assert!(parse_bin(&bytes[..bytes.len() - 1]).is_err());
        assert!(parse_bin(&bytes[..10]).is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("a.BIN")), Format::Bin);
        assert_eq!(Format::from_path(Path::new("a.csv")), Format::Csv);
        assert_eq!(Format::from_path(Path::new("a")), Format::Csv);
    }
}
