//! JSON and CSV emission.
//!
//! Every command produces a list of flat records. JSON output is one object
//! per line with numbers in shortest round-trip form; CSV output prints
//! floats as `{:.16e}`, 17 significant digits. Both are locale independent.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};
use wilton_core::Complex64;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Field::Int(v) => Value::from(*v),
            Field::Text(s) => Value::from(s.as_str()),
            Field::Bool(b) => Value::from(*b),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Field::Num(v) => format_float(*v),
            Field::Int(v) => v.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
        }
    }
}

/// `{:.16e}`: every double survives a round trip through this text.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// An ordered list of named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Field)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.fields.push((key.to_owned(), Field::Num(v)));
        self
    }

    pub fn int(mut self, key: &str, v: i64) -> Self {
        self.fields.push((key.to_owned(), Field::Int(v)));
        self
    }

    pub fn text(mut self, key: &str, v: impl Into<String>) -> Self {
        self.fields.push((key.to_owned(), Field::Text(v.into())));
        self
    }

    pub fn flag(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.to_owned(), Field::Bool(v)));
        self
    }

    /// Adds `{key}_re` and `{key}_im`.
    pub fn complex(self, key: &str, z: Complex64) -> Self {
        self.num(&format!("{key}_re"), z.re)
            .num(&format!("{key}_im"), z.im)
    }

    pub fn fields(&self) -> &[(String, Field)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.to_json());
        }
        Value::Object(m)
    }
}

/// Write records in the requested format.
///
/// CSV takes its header from the first record; all records must share it.
pub fn emit(records: &[Record], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::io("<output>", e);
    match format {
        Format::Json => {
            for r in records {
                let line = serde_json::to_string(&r.to_json()).expect("records always serialize");
                writeln!(out, "{line}").map_err(io)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.fields.iter().map(|(k, _)| k.as_str()))
                    .map_err(|e| io(e.into()))?;
            }
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| v.to_csv()))
                    .map_err(|e| io(e.into()))?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}
