//! Report serialization. JSON objects come out with sorted keys because
//! `serde_json::Map` is ordered; CSV uses LF line endings and a header row.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

use crate::Format;

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows,
        }
    }

    fn write_to<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub struct Report {
    json: Value,
    table: Option<Table>,
    /// A prediction did not match a measurement.
    pub failed: bool,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            json,
            table: None,
            failed: false,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    fn render(&self, format: Format) -> Result<Vec<u8>, String> {
        match format {
            Format::Json => {
                let mut bytes = serde_json::to_vec_pretty(&self.json).map_err(|e| e.to_string())?;
                bytes.push(b'\n');
                Ok(bytes)
            }
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| "this command has no CSV form".to_string())?;
                let mut bytes = Vec::new();
                table.write_to(&mut bytes).map_err(|e| e.to_string())?;
                Ok(bytes)
            }
        }
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<(), String> {
        let bytes = self.render(format)?;
        let written = match path {
            Some(p) => File::create(p).and_then(|mut f| f.write_all(&bytes)),
            None => io::stdout().lock().write_all(&bytes),
        };
        written.map_err(|e| e.to_string())
    }
}
