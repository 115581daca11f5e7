use std::io::Write;

use serde::Serialize;

use crate::Result;

/// Fixed CSV column order.
pub const CSV_COLUMNS: [&str; 14] = [
    "experiment",
    "d",
    "n",
    "m",
    "q",
    "p",
    "r",
    "a",
    "b",
    "beta",
    "value",
    "predicted_term",
    "ratio",
    "status",
];

/// One CSV record. Absent parameters serialize as empty cells.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Row {
    pub experiment: String,
    pub d: usize,
    pub n: Option<u32>,
    pub m: Option<usize>,
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub r: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub beta: Option<f64>,
    pub value: Option<f64>,
    pub predicted_term: Option<f64>,
    pub ratio: Option<f64>,
    pub status: String,
}

impl Row {
    pub fn new(experiment: impl Into<String>, d: usize) -> Self {
        Row {
            experiment: experiment.into(),
            d,
            status: "ok".into(),
            ..Row::default()
        }
    }

    /// Fills `value`, `predicted_term` and their quotient.
    pub fn measured(mut self, value: f64, predicted: f64) -> Self {
        self.value = Some(value);
        self.predicted_term = Some(predicted);
        self.ratio = Some(value / predicted);
        self
    }

    pub fn status(mut self, status: impl Into<String>) -> Self {
        self.status = status.into();
        self
    }
}

/// Writes the header and rows; `timestamp` adds a leading `#` comment line.
pub fn write_csv<W: Write>(out: W, rows: &[Row], timestamp: Option<&str>) -> Result<()> {
    let mut out = out;
    if let Some(ts) = timestamp {
        writeln!(out, "# generated {ts}")?;
    }
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[Row], timestamp: Option<&str>) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows, timestamp)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Seconds since the Unix epoch, for the optional header line.
pub fn unix_timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}
