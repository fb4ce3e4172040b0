use std::fmt::Write as _;

use crate::args::OutputFormat;

/// One table cell; `Null` marks columns a row kind does not use.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// The uniform output document: ordered parameters, a column schema, and
/// rows aligned with it. Rendering is deterministic: identical tables
/// produce identical bytes.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Table { command, params: Vec::new(), columns, rows: Vec::new() }
    }

    pub fn param(&mut self, key: &'static str, value: impl ToString) {
        self.params.push((key, value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.render_json(),
            OutputFormat::Csv => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        fn cell_value(cell: &Cell) -> serde_json::Value {
            match cell {
                Cell::Null => serde_json::Value::Null,
                Cell::Int(v) => serde_json::Value::from(*v),
                Cell::Float(v) => serde_json::Number::from_f64(*v)
                    .map(serde_json::Value::Number)
                    .unwrap_or(serde_json::Value::Null),
                Cell::Text(v) => serde_json::Value::from(v.as_str()),
            }
        }
        let mut root = serde_json::Map::new();
        root.insert("schema".into(), "psiball.v1".into());
        root.insert("command".into(), self.command.into());
        let mut params = serde_json::Map::new();
        for (k, v) in &self.params {
            params.insert((*k).into(), v.as_str().into());
        }
        root.insert("params".into(), serde_json::Value::Object(params));
        root.insert(
            "columns".into(),
            serde_json::Value::from(
                self.columns.iter().map(|c| serde_json::Value::from(*c)).collect::<Vec<_>>(),
            ),
        );
        root.insert(
            "rows".into(),
            serde_json::Value::from(
                self.rows
                    .iter()
                    .map(|row| serde_json::Value::from(row.iter().map(cell_value).collect::<Vec<_>>()))
                    .collect::<Vec<_>>(),
            ),
        );
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("table serialization cannot fail");
        text.push('\n');
        text
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        // Versioned schema comment so downstream parsers can pin layouts.
        let mut header = format!("# psiball-csv v1 command={}", self.command);
        for (k, v) in &self.params {
            let _ = write!(header, " {k}={v}");
        }
        out.push_str(&header);
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Cell::Null => {}
                    Cell::Int(v) => {
                        let _ = write!(out, "{v}");
                    }
                    Cell::Float(v) => {
                        let _ = write!(out, "{v}");
                    }
                    Cell::Text(v) => out.push_str(v),
                }
            }
            out.push('\n');
        }
        out
    }
}
