//! CSV input and output. Numbers are written with 17 significant digits.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use fraclap_core::discrete::Matrix;

use crate::error::{CliError, CliResult};

pub fn number(v: f64) -> String {
    format!("{v:.16e}")
}

/// A CSV sink: a file when a path is given, stdout otherwise.
pub fn writer(path: Option<&Path>) -> CliResult<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink))
}

pub fn write_table<S: AsRef<str>>(
    path: Option<&Path>,
    header: &[S],
    rows: &[Vec<String>],
) -> CliResult<()> {
    let mut w = writer(path)?;
    w.write_record(header.iter().map(|h| h.as_ref()))?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Header `c0,…,c{n-1}` followed by one row per matrix row.
pub fn write_matrix(path: Option<&Path>, m: &Matrix) -> CliResult<()> {
    let header: Vec<String> = (0..m.cols()).map(|j| format!("c{j}")).collect();
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&v| number(v)).collect())
        .collect();
    write_table(path, &header, &rows)
}

/// Numeric rows of a CSV file; a leading non-numeric row is taken as a header.
fn numeric_rows(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) if row.iter().all(|v| v.is_finite()) => rows.push(row),
            _ if i == 0 => continue,
            _ => {
                return Err(CliError::usage(format!(
                    "{}: row {} is not numeric",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(rows)
}

pub fn read_matrix(path: &Path) -> CliResult<Matrix> {
    let rows = numeric_rows(path)?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(CliError::usage(format!(
            "{}: expected a square matrix",
            path.display()
        )));
    }
    Ok(Matrix::from_rows(&rows)?)
}

/// All numbers in the file in reading order (a column or a single row).
pub fn read_vector(path: &Path) -> CliResult<Vec<f64>> {
    Ok(numeric_rows(path)?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        let m = Matrix::from_rows(&[vec![0.1, -2.0 / 3.0], vec![-2.0 / 3.0, 1e-300]]).unwrap();
        write_matrix(Some(&path), &m).unwrap();
        assert_eq!(read_matrix(&path).unwrap(), m);
    }

    #[test]
    fn vector_with_or_without_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.csv");
        std::fs::write(&path, "value\n1\n2.5\n-3\n").unwrap();
        assert_eq!(read_vector(&path).unwrap(), vec![1.0, 2.5, -3.0]);
        std::fs::write(&path, "1,2,3\n").unwrap();
        assert_eq!(read_vector(&path).unwrap(), vec![1.0, 2.0, 3.0]);
        std::fs::write(&path, "1\nx\n").unwrap();
        assert!(read_vector(&path).is_err());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(number(0.1), "1.0000000000000001e-1");
        assert_eq!(number(-2.0), "-2.0000000000000000e0");
        assert_eq!(number(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
