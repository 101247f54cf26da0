//! CSV and JSON artifacts. Every CSV opens with a `#` provenance line and a
//! header row; floats carry 17 significant digits so they read back exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use degenac::Field;
use serde::Serialize;

use crate::error::{CliError, Result};

/// 17 significant digits, or an empty cell for NaN.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, num)
}

/// Semicolon-separated list inside one cell.
pub fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";")
}

/// `# degenac <version>, config <hash>, subcommand <name>`.
pub fn provenance(hash: &str, subcommand: &str) -> String {
    format!("# degenac {}, config {hash}, subcommand {subcommand}", env!("CARGO_PKG_VERSION"))
}

fn create_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
        }
        _ => Ok(()),
    }
}

pub struct CsvOut {
    path: std::path::PathBuf,
    writer: csv::Writer<BufWriter<File>>,
}

impl CsvOut {
    pub fn create(path: &Path, provenance: &str, header: &[&str]) -> Result<Self> {
        create_parent(path)?;
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut inner = BufWriter::new(file);
        writeln!(inner, "{provenance}").map_err(|e| CliError::io(path, e))?;
        let mut writer = csv::Writer::from_writer(inner);
        let out = |e: csv::Error| CliError::input(path, e.to_string());
        writer.write_record(header).map_err(out)?;
        Ok(CsvOut {
            path: path.to_path_buf(),
            writer,
        })
    }

    pub fn row<I, S>(&mut self, cells: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let path = &self.path;
        self.writer
            .write_record(cells)
            .map_err(|e| CliError::input(path, e.to_string()))
    }

    pub fn finish(mut self) -> Result<()> {
        self.writer.flush().map_err(|e| CliError::io(&self.path, e))
    }
}

/// Writes `x, u` for every node of `field`.
pub fn write_field(path: &Path, provenance: &str, field: &Field) -> Result<()> {
    let mut out = CsvOut::create(path, provenance, &["x", "u"])?;
    for (i, &u) in field.values().iter().enumerate() {
        out.row([num(field.x(i)), num(u)])?;
    }
    out.finish()
}

/// Loads a field written by [`write_field`] (columns `x` and `u`, uniform grid).
pub fn read_field(path: &Path) -> Result<Field> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::input(path, e.to_string()))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::input(path, e.to_string()))?
        .clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::input(path, format!("no `{name}` column")))
    };
    let (ix, iu) = (col("x")?, col("u")?);
    let mut xs = Vec::new();
    let mut us = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::input(path, e.to_string()))?;
        let parse = |i: usize| -> Result<f64> {
            let cell = record.get(i).unwrap_or("");
            cell.parse()
                .map_err(|_| CliError::input(path, format!("row {}: `{cell}` is not a number", line + 1)))
        };
        xs.push(parse(ix)?);
        us.push(parse(iu)?);
    }
    if xs.len() < 3 {
        return Err(CliError::input(path, "need at least three rows"));
    }
    let field = Field::new(xs[0], xs[xs.len() - 1], us)?;
    let tol = 1e-9 * (field.b() - field.a());
    if let Some(i) = (0..xs.len()).find(|&i| (xs[i] - field.x(i)).abs() > tol) {
        return Err(CliError::input(path, format!("grid is not uniform near x = {}", xs[i])));
    }
    Ok(field)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    create_parent(path)?;
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    create_parent(path)?;
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
