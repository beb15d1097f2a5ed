//! Output sinks and table formatting.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Stdout or a file.
pub struct Sink {
    path: Option<PathBuf>,
    out: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Ok(Self {
                path: None,
                out: Box::new(BufWriter::new(io::stdout().lock())),
            }),
            Some(p) => {
                let f = File::create(p).map_err(|e| io_err(p, e))?;
                Ok(Self {
                    path: Some(p.to_path_buf()),
                    out: Box::new(BufWriter::new(f)),
                })
            }
        }
    }

    fn name(&self) -> String {
        self.path
            .as_ref()
            .map_or_else(|| "<stdout>".into(), |p| p.display().to_string())
    }

    pub fn write_json<T: Serialize>(mut self, value: &T) -> CliResult<()> {
        let name = self.name();
        serde_json::to_writer_pretty(&mut self.out, value).map_err(|e| CliError::Io {
            path: name.clone(),
            source: e.into(),
        })?;
        writeln!(self.out)
            .and_then(|_| self.out.flush())
            .map_err(|e| CliError::Io {
                path: name,
                source: e,
            })
    }

    pub fn write_table(self, table: &Table, format: Format) -> CliResult<()> {
        match format {
            Format::Json => self.write_json(table),
            Format::Csv => self.write_csv(table),
        }
    }

    fn write_csv(self, table: &Table) -> CliResult<()> {
        let name = self.name();
        let csv_err = |e| CliError::Csv {
            path: name.clone(),
            source: e,
        };
        let mut w = csv::Writer::from_writer(self.out);
        w.write_record(&table.columns).map_err(csv_err)?;
        for row in &table.rows {
            w.write_record(row.iter().map(|v| csv_float(*v)))
                .map_err(csv_err)?;
        }
        w.flush().map_err(|e| CliError::Io {
            path: name.clone(),
            source: e,
        })
    }
}

pub fn io_err(path: &Path, source: io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// 17 significant digits.
pub fn csv_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Named numeric columns.
#[derive(Debug, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }
}
