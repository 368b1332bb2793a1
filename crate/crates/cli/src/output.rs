use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum RecordValue {
    Scalar(ComplexValue),
    List(Vec<Value>),
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub value: RecordValue,
    pub err_estimate: Option<f64>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl OutputRecord {
    pub fn scalar(command: &str, params: BTreeMap<String, Value>, value: Complex64) -> Self {
        Self {
            command: command.to_string(),
            params,
            value: RecordValue::Scalar(value.into()),
            err_estimate: None,
            warnings: Vec::new(),
            summary: None,
            meta: None,
        }
    }

    pub fn list(command: &str, params: BTreeMap<String, Value>, items: Vec<Value>) -> Self {
        Self {
            value: RecordValue::List(items),
            ..Self::scalar(command, params, Complex64::new(0.0, 0.0))
        }
    }

    pub fn with_meta(mut self, enabled: bool) -> Self {
        if enabled {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            self.meta = Some(serde_json::json!({
                "timestamp": secs,
                "version": env!("CARGO_PKG_VERSION"),
            }));
        }
        self
    }

    pub fn emit(&self, format: Format) -> io::Result<()> {
        let mut out = io::stdout().lock();
        match format {
            Format::Json => {
                serde_json::to_writer(&mut out, self)?;
                writeln!(out)
            }
            Format::Csv => match &self.value {
                RecordValue::Scalar(v) => {
                    writeln!(out, "re,im,err_estimate")?;
                    writeln!(
                        out,
                        "{},{},{}",
                        float(v.re),
                        float(v.im),
                        self.err_estimate.map(float).unwrap_or_default()
                    )
                }
                RecordValue::List(items) => write_table(&mut out, items),
            },
        }
    }
}

/// 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.as_f64().map(float).unwrap_or_else(|| n.to_string()),
        Value::String(s) if s.contains(',') || s.contains('"') => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rows of flat objects as CSV, columns taken from the first row.
fn write_table(out: &mut impl Write, items: &[Value]) -> io::Result<()> {
    let Some(Value::Object(first)) = items.first() else {
        return Ok(());
    };
    let columns: Vec<&String> = first.keys().collect();
    writeln!(out, "{}", columns.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(","))?;
    for item in items {
        let row: Vec<String> = columns
            .iter()
            .map(|c| item.get(c.as_str()).map(cell).unwrap_or_default())
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Streams a CSV scan to stdout.
pub struct CsvWriter<W: Write> {
    out: W,
    columns: usize,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W, header: &[&str]) -> io::Result<Self> {
        writeln!(out, "{}", header.join(","))?;
        Ok(Self {
            out,
            columns: header.len(),
        })
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        debug_assert_eq!(values.len(), self.columns);
        let cells: Vec<String> = values.iter().map(|&v| float(v)).collect();
        writeln!(self.out, "{}", cells.join(","))
    }
}
