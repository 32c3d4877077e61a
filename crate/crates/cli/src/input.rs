//! CSV ingestion. The first row is always a header; fields are parsed with
//! the locale-independent `f64` parser.

use std::path::Path;

use mvrho::SampleMatrix;

use crate::error::{CliError, CliResult};

pub fn read_sample(path: &Path) -> CliResult<SampleMatrix> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_sample(file, path)
}

pub fn parse_sample<R: std::io::Read>(reader: R, path: &Path) -> CliResult<SampleMatrix> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let err = |record: usize, message: String| CliError::Csv { path: path.into(), record, message };
    let width = rdr.headers().map_err(|e| err(0, e.to_string()))?.len();
    let mut data = Vec::new();
    let mut n = 0;
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| err(i + 1, e.to_string()))?;
        if rec.len() != width {
            return Err(err(i + 1, format!("expected {width} fields, found {}", rec.len())));
        }
        for field in rec.iter() {
            let v: f64 = field.parse().map_err(|_| err(i + 1, format!("`{field}` is not a number")))?;
            data.push(v);
        }
        n += 1;
    }
    Ok(SampleMatrix::new(n, width, data)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_rows_after_header() {
        let s = parse_sample("a,b\n0.1, 2\n3,4e-1\n".as_bytes(), Path::new("t.csv")).unwrap();
        assert_eq!((s.n(), s.m()), (2, 2));
        assert_eq!(s.row(1), &[3.0, 0.4]);
    }

    #[test]
    fn reports_bad_fields() {
        let e = parse_sample("a,b\n1,x\n".as_bytes(), Path::new("t.csv")).unwrap_err();
        assert!(matches!(e, CliError::Csv { record: 1, .. }));
        assert!(parse_sample("a,b\n1,2,3\n".as_bytes(), Path::new("t.csv")).is_err());
        assert!(parse_sample("a,b\n1,2\n".as_bytes(), Path::new("t.csv")).is_err());
        assert!(parse_sample("a,b\n1,nan\n3,4\n".as_bytes(), Path::new("t.csv")).is_err());
    }

    #[test]
    fn decimal_comma_is_not_accepted() {
        assert!(parse_sample("a;b\n0,5;1\n2;3\n".as_bytes(), Path::new("t.csv")).is_err());
    }
}
