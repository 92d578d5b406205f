//! Dataset and coefficient file formats.
//!
//! CSV rows are `x1,…,xd,f`. A first row with any non-numeric field is taken
//! as a header. JSON files look like
//! `{"dimension": d, "samples": [{"x": [...], "f": v}, …]}`.

use crate::error::{CliError, CliResult};
use chebcert::{Dataset, Error as CoreError};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` files are JSON, everything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn parse_dataset(path: &Path, format: Option<Format>) -> CliResult<Dataset<f64>> {
    let text = read(path)?;
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Csv => parse_csv(&text),
        Format::Json => parse_json(&text),
    }
}

fn build(points: Vec<Vec<f64>>, values: Vec<f64>, locations: &[String]) -> CliResult<Dataset<f64>> {
    Dataset::new(points, values).map_err(|e| match e {
        CoreError::DuplicatePoint { first, second } => CliError::parse(
            locations[second].clone(),
            format!("duplicate point (same coordinates as {})", locations[first]),
        ),
        CoreError::EmptyDataset => CliError::parse("input", "dataset is empty"),
        other => CliError::Core(other),
    })
}

fn number(field: &str, location: &str, column: usize) -> CliResult<f64> {
    let v: f64 = field.parse().map_err(|_| {
        CliError::parse(location, format!("field {column} is not a number: {field:?}"))
    })?;
    if !v.is_finite() {
        return Err(CliError::parse(location, format!("field {column} is not finite: {field:?}")));
    }
    Ok(v)
}

pub fn parse_csv(text: &str) -> CliResult<Dataset<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut locations = Vec::new();
    let mut width = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::parse(format!("line {line}"), e.to_string())
        })?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        let location = format!("line {line}");
        if record.iter().all(str::is_empty) {
            continue;
        }
        if i == 0 && record.iter().any(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(CliError::parse(
                location,
                format!("expected {expected} fields, found {}", record.len()),
            ));
        }
        if expected < 2 {
            return Err(CliError::parse(location, "rows need at least one coordinate and a value"));
        }
        let fields: Vec<f64> = record
            .iter()
            .enumerate()
            .map(|(c, f)| number(f, &location, c + 1))
            .collect::<CliResult<_>>()?;
        let (x, f) = fields.split_at(expected - 1);
        points.push(x.to_vec());
        values.push(f[0]);
        locations.push(location);
    }
    build(points, values, &locations)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonSample {
    x: Vec<f64>,
    f: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDataset {
    dimension: usize,
    samples: Vec<JsonSample>,
}

pub fn parse_json(text: &str) -> CliResult<Dataset<f64>> {
    let doc: JsonDataset = serde_json::from_str(text).map_err(|e| {
        CliError::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    if doc.dimension == 0 {
        return Err(CliError::parse("dimension", "must be at least 1"));
    }
    let mut locations = Vec::with_capacity(doc.samples.len());
    let mut points = Vec::with_capacity(doc.samples.len());
    let mut values = Vec::with_capacity(doc.samples.len());
    for (i, s) in doc.samples.into_iter().enumerate() {
        let location = format!("samples[{i}]");
        if s.x.len() != doc.dimension {
            return Err(CliError::parse(
                location,
                format!("expected {} coordinates, found {}", doc.dimension, s.x.len()),
            ));
        }
        points.push(s.x);
        values.push(s.f);
        locations.push(location);
    }
    build(points, values, &locations)
}

pub fn write_csv(data: &Dataset<f64>) -> String {
    let mut out = String::new();
    let d = data.dimension();
    let header: Vec<String> = (1..=d).map(|j| format!("x{j}")).chain(["f".into()]).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (p, f) in data.points().iter().zip(data.values()) {
        let row: Vec<String> = p.iter().chain(std::iter::once(f)).map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_json(data: &Dataset<f64>) -> String {
    let doc = JsonDataset {
        dimension: data.dimension(),
        samples: data
            .points()
            .iter()
            .zip(data.values())
            .map(|(x, &f)| JsonSample { x: x.clone(), f })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain numbers serialize")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefficientFile {
    Bare(Vec<f64>),
    Wrapped { coefficients: Vec<f64> },
}

/// A JSON array of coefficients or `{"coefficients": [...]}`.
pub fn parse_coefficients(path: &Path) -> CliResult<Vec<f64>> {
    let text = read(path)?;
    let parsed: CoefficientFile = serde_json::from_str(&text).map_err(|e| {
        CliError::parse(
            format!("{} line {}", path.display(), e.line()),
            "expected a JSON array of numbers or {\"coefficients\": [...]}",
        )
    })?;
    Ok(match parsed {
        CoefficientFile::Bare(c) | CoefficientFile::Wrapped { coefficients: c } => c,
    })
}
