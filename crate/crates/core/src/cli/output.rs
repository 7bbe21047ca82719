use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::record::Method;

use super::args::OutputFormat;
use super::sweep::SweepRow;
use super::CliError;

pub const RECORD_COLUMNS: [&str; 8] =
    ["n", "alpha", "method", "gap", "log_gap", "s_star", "digits_used", "error"];

/// Flat form of a [`SweepRow`]; inapplicable fields are empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordRow {
    pub n: f64,
    pub alpha: f64,
    pub method: Method,
    pub gap: Option<f64>,
    pub log_gap: Option<f64>,
    pub s_star: Option<f64>,
    pub digits_used: Option<u32>,
    pub error: Option<String>,
}

impl From<&SweepRow> for RecordRow {
    fn from(row: &SweepRow) -> Self {
        match &row.result {
            Ok(r) => Self {
                n: r.n(),
                alpha: r.alpha(),
                method: r.method(),
                gap: Some(r.gap()),
                log_gap: r.log_gap(),
                s_star: r.s_star(),
                digits_used: r.digits_used(),
                error: None,
            },
            Err(e) => Self {
                n: row.n,
                alpha: row.alpha,
                method: row.method,
                gap: None,
                log_gap: None,
                s_star: None,
                digits_used: None,
                error: Some(format!("{}: {}", e.kind(), e).replace(['\n', '\r'], " ")),
            },
        }
    }
}

/// Writes `rows` to `out` (stdout when `None`): CSV with `header` as the
/// first line, or a JSON array of objects.
pub fn write_table<T: Serialize>(
    header: &[&str],
    rows: &[T],
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(CliError::io)?)),
        None => Box::new(io::stdout().lock()),
    };
    write_table_to(sink, header, rows, format)
}

pub fn write_table_to<W: Write, T: Serialize>(
    sink: W,
    header: &[&str],
    rows: &[T],
    format: OutputFormat,
) -> Result<(), CliError> {
    let io_err = |e: csv::Error| CliError::new(super::EXIT_INPUT, "io", e.to_string());
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
            w.write_record(header).map_err(io_err)?;
            for row in rows {
                w.serialize(row).map_err(io_err)?;
            }
            w.flush().map_err(CliError::io)?;
        }
        OutputFormat::Json => {
            let mut sink = sink;
            serde_json::to_writer_pretty(&mut sink, rows)
                .map_err(|e| CliError::new(super::EXIT_INPUT, "io", e.to_string()))?;
            writeln!(sink).map_err(CliError::io)?;
            sink.flush().map_err(CliError::io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::record::GapRecord;

    fn csv_of(rows: &[RecordRow]) -> String {
        let mut buf = Vec::new();
        write_table_to(&mut buf, &RECORD_COLUMNS, rows, OutputFormat::Csv).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn header_and_empty_fields() {
        let ok = SweepRow {
            n: 12.0,
            alpha: 0.3,
            method: Method::Discrete,
            result: GapRecord::discrete(12, 0.3, 0.5, 0.25),
        };
        let bad = SweepRow {
            n: 50.0,
            alpha: 0.3,
            method: Method::Continuous,
            result: Err(Error::Regime("below, the \"barrier\"".into())),
        };
        let text = csv_of(&[(&ok).into(), (&bad).into()]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,alpha,method,gap,log_gap,s_star,digits_used,error");
        assert_eq!(lines[1], "12.0,0.3,discrete,0.5,,0.25,,");
        assert!(lines[2].starts_with("50.0,0.3,continuous,,,,,\"regime: "));
        assert_eq!(csv_of(&[]).lines().count(), 1);
    }
}
