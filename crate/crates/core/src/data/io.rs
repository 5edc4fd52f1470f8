use std::collections::BTreeSet;
use std::path::Path;

use super::{Dataset, Source};
use crate::error::{Error, Result};

/// Reads a headered CSV. Every column except `label_column` must be numeric.
///
/// Labels are mapped to a contiguous catalog: numerically ordered when all
/// labels parse as integers, lexicographically otherwise.
pub fn load_csv(path: &Path, label_column: &str) -> Result<Dataset> {
    let fail = |message: String| Error::Ingestion {
        path: path.to_path_buf(),
        message,
    };
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    let headers = reader.headers()?.clone();
    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| fail(format!("no column named '{label_column}'")))?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_idx)
        .map(|(_, h)| h.to_string())
        .collect();
    if feature_names.is_empty() {
        return Err(fail("no feature columns".into()));
    }

    let mut x = Vec::new();
    let mut raw_labels = Vec::new();
    for (r, record) in reader.records().enumerate() {
        // 1-based file line, counting the header
        let line = r + 2;
        let record = record.map_err(|e| fail(format!("row {line}: {e}")))?;
        if record.len() != headers.len() {
            return Err(fail(format!(
                "row {line}: {} cells, expected {}",
                record.len(),
                headers.len()
            )));
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (c, cell) in record.iter().enumerate() {
            if c == label_idx {
                continue;
            }
            if cell.is_empty() {
                return Err(fail(format!(
                    "row {line}, column '{}': empty cell",
                    &headers[c]
                )));
            }
            let v: f64 = cell.parse().map_err(|_| {
                fail(format!(
                    "row {line}, column '{}': '{cell}' is not a number",
                    &headers[c]
                ))
            })?;
            if !v.is_finite() {
                return Err(fail(format!(
                    "row {line}, column '{}': non-finite value",
                    &headers[c]
                )));
            }
            row.push(v);
        }
        let label = &record[label_idx];
        if label.is_empty() {
            return Err(fail(format!(
                "row {line}, column '{label_column}': empty label"
            )));
        }
        x.push(row);
        raw_labels.push(label.to_string());
    }
    if x.is_empty() {
        return Err(fail("no data rows".into()));
    }

    let classes = label_catalog(&raw_labels);
    let y = raw_labels
        .iter()
        .map(|l| {
            classes
                .iter()
                .position(|c| c == l)
                .expect("catalog covers labels")
        })
        .collect();
    Dataset::new(
        x,
        y,
        feature_names,
        classes,
        Source::File {
            path: path.display().to_string(),
            label_column: label_column.to_string(),
        },
    )
}

fn label_catalog(labels: &[String]) -> Vec<String> {
    let distinct: BTreeSet<&String> = labels.iter().collect();
    let mut classes: Vec<String> = distinct.into_iter().cloned().collect();
    if classes.iter().all(|c| c.parse::<i64>().is_ok()) {
        classes.sort_by_key(|c| c.parse::<i64>().expect("checked above"));
    }
    classes
}

/// Writes the dataset in the format [`load_csv`] reads, with the label in a
/// trailing `label` column.
pub fn write_csv(ds: &Dataset, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<&str> = ds.feature_names.iter().map(String::as_str).collect();
    header.push("label");
    w.write_record(&header)?;
    for (row, &l) in ds.x.iter().zip(&ds.y) {
        let mut rec: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        rec.push(ds.classes[l].clone());
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_shape_and_catalog() {
        let f = write("f1,f2,label\n1,2,M\n3,4,B\n5,6,M\n");
        let ds = load_csv(f.path(), "label").unwrap();
        assert_eq!((ds.len(), ds.n_features()), (3, 2));
        assert_eq!(ds.classes, vec!["B", "M"]);
        assert_eq!(ds.y, vec![1, 0, 1]);
        assert_eq!(ds.feature_names, vec!["f1", "f2"]);
    }

    #[test]
    fn label_column_can_be_anywhere() {
        let f = write("target,a\n10,0.5\n2,0.25\n");
        let ds = load_csv(f.path(), "target").unwrap();
        assert_eq!(ds.classes, vec!["2", "10"]);
        assert_eq!(ds.x, vec![vec![0.5], vec![0.25]]);
    }

    #[test]
    fn blank_cell_is_named() {
        let f = write("f1,f2,label\n1,2,a\n3,,b\n");
        let err = load_csv(f.path(), "label").unwrap_err().to_string();
        assert!(err.contains("row 3") && err.contains("'f2'"), "{err}");
    }

    #[test]
    fn non_numeric_and_missing_column() {
        let f = write("f1,label\nabc,a\n");
        let err = load_csv(f.path(), "label").unwrap_err().to_string();
        assert!(err.contains("'abc'"), "{err}");
        assert!(load_csv(f.path(), "class").is_err());
        assert!(load_csv(Path::new("/nonexistent/x.csv"), "label").is_err());
    }

    #[test]
    fn write_then_load() {
        let ds = super::super::gen_hard(10, super::super::HardKind::Xor, 0.0, 1).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("xor.csv");
        write_csv(&ds, &path).unwrap();
        let back = load_csv(&path, "label").unwrap();
        assert_eq!(back.x, ds.x);
        assert_eq!(back.y, ds.y);
    }
}
