//! Tabular output: CSV with `#`-prefixed metadata lines, or a JSON object
//! holding `meta` and an array of row objects.

use std::io::Write;

use serde_json::{Map, Value};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every double
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    meta: Vec<(String, Cell)>,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    markers: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    /// A note written after the rows, such as the band-edge position of a
    /// clipped curve.
    pub fn marker(&mut self, text: impl Into<String>) -> &mut Self {
        self.markers.push(text.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {}", v.csv())?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        for m in &self.markers {
            writeln!(out, "# {m}")?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        if !self.markers.is_empty() {
            meta.insert("markers".into(), Value::from(self.markers.clone()));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect()))
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(meta));
        top.insert("rows".into(), Value::Array(rows));
        Value::Object(top)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json()).map_err(|e| crate::Error::Io(e.to_string()))?;
                writeln!(out)?;
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["x", "n", "label"]);
        t.meta("source", "test").meta("alpha", 8.5);
        t.push(vec![0.1.into(), 3u32.into(), "a".into()]);
        t.push(vec![f64::NAN.into(), 4u32.into(), "b".into()]);
        t.marker("band edge at 1");
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# source: test");
        assert_eq!(lines[1], "# alpha: 8.5000000000000000e0");
        assert_eq!(lines[2], "x,n,label");
        assert_eq!(lines[3], "1.0000000000000001e-1,3,a");
        assert_eq!(lines[4], "NaN,4,b");
        assert_eq!(lines[5], "# band edge at 1");
    }

    #[test]
    fn csv_round_trips_doubles() {
        let v = 0.1f64 + 0.2;
        assert_eq!(Cell::Num(v).csv().parse::<f64>().unwrap(), v);
    }

    #[test]
    fn json_layout() {
        let j = sample().to_json();
        assert_eq!(j["meta"]["source"], "test");
        assert_eq!(j["meta"]["markers"][0], "band edge at 1");
        assert_eq!(j["rows"][0]["n"], 3);
        assert!(j["rows"][1]["x"].is_null());
    }
}
