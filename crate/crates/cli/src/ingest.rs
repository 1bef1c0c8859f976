use std::fmt::Write as _;
use std::path::Path;

use adafilter::PValueMatrix64;

use crate::error::CliError;

/// A p-value matrix read from disk together with its labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PValueTable {
    /// Hypothesis identifiers, in file order.
    pub ids: Vec<String>,
    /// Study names from the header row.
    pub studies: Vec<String>,
    pub matrix: PValueMatrix64,
}

/// Reads a CSV whose rows are hypotheses and whose columns (after the
/// identifier) are studies. `NA` marks a missing entry.
pub fn ingest_csv(path: &Path) -> Result<PValueTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_csv(&text)
}

/// [`ingest_csv`] on in-memory text.
pub fn parse_csv(text: &str) -> Result<PValueTable, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.len() < 2 {
        return Err(CliError::Format(
            "header must name at least one study after the identifier column".into(),
        ));
    }
    let studies: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let mut ids = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut columns = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != header.len() {
            return Err(CliError::RaggedRow {
                line,
                expected: header.len(),
                found: record.len(),
            });
        }
        let id = record[0].to_owned();
        if let Some(first) = seen.insert(id.clone(), line) {
            return Err(CliError::DuplicateIdentifier { id, line, first });
        }
        let mut column = Vec::with_capacity(studies.len());
        for (k, token) in record.iter().enumerate().skip(1) {
            column.push(parse_cell(token, line, k + 1)?);
        }
        ids.push(id);
        columns.push(column);
    }
    if ids.is_empty() {
        return Err(CliError::Format("no hypotheses after the header".into()));
    }
    let matrix = PValueMatrix64::from_columns(&columns)?;
    Ok(PValueTable { ids, studies, matrix })
}

fn parse_cell(token: &str, line: usize, column: usize) -> Result<Option<f64>, CliError> {
    if token == "NA" {
        return Ok(None);
    }
    let parse_error = || CliError::Parse {
        line,
        column,
        token: token.to_owned(),
    };
    let value: f64 = token.parse().map_err(|_| parse_error())?;
    if !value.is_finite() {
        return Err(parse_error());
    }
    if !(0.0..=1.0).contains(&value) {
        return Err(CliError::OutOfRange { line, column, value });
    }
    Ok(Some(value))
}

/// Writes `table` back in the input format.
pub fn emit_csv(table: &PValueTable) -> String {
    let mut out = String::from("id");
    for s in &table.studies {
        out.push(',');
        out.push_str(s);
    }
    out.push('\n');
    for (j, id) in table.ids.iter().enumerate() {
        out.push_str(id);
        for i in 0..table.studies.len() {
            match table.matrix.get(i, j) {
                Some(v) => {
                    let _ = write!(out, ",{v}");
                }
                None => out.push_str(",NA"),
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let t = parse_csv("id,s1,s2\ng1,0.03,0.04\ng2,0.2,0.9").unwrap();
        assert_eq!(t.ids, ["g1", "g2"]);
        assert_eq!(t.studies, ["s1", "s2"]);
        assert_eq!(t.matrix.n_studies(), 2);
        assert_eq!(t.matrix.n_hypotheses(), 2);
        assert_eq!(t.matrix.get(1, 0), Some(0.04));
        assert_eq!(t.matrix.get(0, 1), Some(0.2));
    }

    #[test]
    fn na_is_missing() {
        let t = parse_csv("id,a,b\nx,NA,0.5\n").unwrap();
        assert_eq!(t.matrix.get(0, 0), None);
        assert_eq!(t.matrix.get(1, 0), Some(0.5));
    }

    #[test]
    fn bad_cells() {
        assert!(matches!(
            parse_csv("id,a\nx,1.5\n"),
            Err(CliError::OutOfRange { line: 2, column: 2, .. })
        ));
        match parse_csv("id,a,b\nx,0.1,0.2\ny,0.3,abc\n") {
            Err(CliError::Parse { line, column, token }) => assert_eq!((line, column, token.as_str()), (3, 3, "abc")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_csv("id,a\nx,nan\n"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_csv("id,a\nx,\n"), Err(CliError::Parse { .. })));
        assert!(matches!(
            parse_csv("id,a\nx,0.1\nx,0.2\n"),
            Err(CliError::DuplicateIdentifier { line: 3, first: 2, .. })
        ));
        assert!(matches!(
            parse_csv("id,a\nx,0.1,0.2\n"),
            Err(CliError::RaggedRow { .. })
        ));
        assert!(matches!(parse_csv("id,a,b\nx,NA,NA\n"), Err(CliError::Core(_))));
    }

    #[test]
    fn round_trip() {
        let text = "id,s1,s2,s3\ng1,0.0123456789012,NA,1\ng2,NA,0.5,3.3e-7\ng3,0,0.999999999999,NA\n";
        let t = parse_csv(text).unwrap();
        let again = parse_csv(&emit_csv(&t)).unwrap();
        assert_eq!(t, again);
        assert_eq!(emit_csv(&again), emit_csv(&t));
    }
}
