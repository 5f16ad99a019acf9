use std::io::Write;
use std::path::Path;

use anyhow::bail;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{Format, OutputArgs};

/// Rounds to 10 significant digits. Non-finite values are a numerical failure.
pub fn num(x: f64) -> anyhow::Result<f64> {
    if !x.is_finite() {
        bail!("computation produced a non-finite value ({x})");
    }
    Ok(round10(x))
}

pub fn round10(x: f64) -> f64 {
    format!("{x:.9e}").parse().expect("formatted float parses")
}

pub fn nums(xs: &[f64]) -> anyhow::Result<Vec<f64>> {
    xs.iter().map(|&x| num(x)).collect()
}

pub struct Document {
    pub meta: Value,
    pub records: Vec<Value>,
}

impl Document {
    pub fn new<R: Serialize>(meta: Value, records: &[R]) -> anyhow::Result<Self> {
        let records = records.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
        Ok(Self { meta, records })
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        let mut top = Map::new();
        top.insert("meta".into(), self.meta.clone());
        top.insert("records".into(), Value::Array(self.records.clone()));
        let mut s = serde_json::to_string_pretty(&Value::Object(top))?;
        s.push('\n');
        Ok(s)
    }

    /// Header from the first record's keys; arrays become `;`-joined cells.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let header: Vec<String> = match self.records.first() {
            Some(Value::Object(m)) => m.keys().cloned().collect(),
            Some(_) => bail!("records must be objects"),
            None => Vec::new(),
        };
        w.write_record(&header)?;
        for r in &self.records {
            let Value::Object(m) = r else { bail!("records must be objects") };
            w.write_record(header.iter().map(|k| cell(m.get(k).unwrap_or(&Value::Null))))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

/// Standard output, or a temporary file renamed over `path` once complete.
pub fn write(out: &OutputArgs, body: &str) -> std::io::Result<()> {
    match &out.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
        }
    }
    Ok(())
}
