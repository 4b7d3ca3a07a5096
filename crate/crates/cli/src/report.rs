//! Format-independent command output and its four renderings.

use std::fmt::Write as _;

use cone_walls::arith::decimal;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i128),
    /// Integers that may outgrow a JSON number (Pell solutions).
    Big(BigInt),
    Ratio(BigRational),
    Text(String),
    Bool(bool),
    List(Vec<Cell>),
    Null,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<BigRational> for Cell {
    fn from(v: BigRational) -> Self {
        Cell::Ratio(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

pub type Row = Vec<(&'static str, Cell)>;

pub struct Report {
    pub command: &'static str,
    pub inputs: Row,
    pub results: Vec<Row>,
    /// Shown by the plain renderer when there are no result rows.
    pub empty: &'static str,
}

impl Report {
    pub fn new(command: &'static str, inputs: Row) -> Self {
        Self {
            command,
            inputs,
            results: Vec::new(),
            empty: "(none)",
        }
    }

    pub fn row(mut self, row: Row) -> Self {
        self.results.push(row);
        self
    }

    pub fn render(&self, format: Format, places: u32) -> String {
        match format {
            Format::Json => self.json(places),
            Format::Csv => self.csv(places),
            Format::Plain => self.plain(places),
            Format::Markdown => self.markdown(places),
        }
    }

    pub fn json_value(&self, places: u32) -> Value {
        json!({
            "command": self.command,
            "inputs": object(&self.inputs, places),
            "results": self.results.iter().map(|r| object(r, places)).collect::<Vec<_>>(),
        })
    }

    fn json(&self, places: u32) -> String {
        pretty(&self.json_value(places))
    }

    fn columns(&self) -> Vec<&'static str> {
        let mut cols: Vec<&'static str> = Vec::new();
        for row in &self.results {
            for (k, _) in row {
                if !cols.contains(k) {
                    cols.push(k);
                }
            }
        }
        cols
    }

    fn csv(&self, places: u32) -> String {
        // each rational gets a companion `<name>_decimal` column
        let cols = self.columns();
        let mut header = Vec::new();
        for c in &cols {
            header.push(c.to_string());
            if self
                .results
                .iter()
                .any(|r| matches!(lookup(r, c), Some(Cell::Ratio(_))))
            {
                header.push(format!("{c}_decimal"));
            }
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for row in &self.results {
            let mut record = Vec::new();
            for c in &cols {
                let cell = lookup(row, c);
                record.push(cell.map_or(String::new(), csv_text));
                if header.iter().any(|h| *h == format!("{c}_decimal")) {
                    record.push(match cell {
                        Some(Cell::Ratio(q)) => decimal(q, places),
                        _ => String::new(),
                    });
                }
            }
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn table(&self, places: u32) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let cols = self.columns();
        let body = self
            .results
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| lookup(r, c).map_or(String::new(), |v| human(v, places)))
                    .collect()
            })
            .collect();
        (cols, body)
    }

    fn plain(&self, places: u32) -> String {
        let mut out = String::new();
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={}", human(v, places)))
            .collect();
        writeln!(out, "{} {}", self.command, inputs.join(" ")).unwrap();
        if self.results.is_empty() {
            writeln!(out, "{}", self.empty).unwrap();
            return out;
        }
        if self.results.len() == 1 {
            let row = &self.results[0];
            let width = row.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in row {
                writeln!(out, "  {k:<width$}  {}", human(v, places)).unwrap();
            }
            return out;
        }
        let (cols, body) = self.table(places);
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| {
                body.iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.len()])
                    .max()
                    .unwrap()
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(cols.clone())).unwrap();
        for r in &body {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
        }
        out
    }

    fn markdown(&self, places: u32) -> String {
        let (cols, body) = self.table(places);
        let mut out = String::new();
        if cols.is_empty() {
            writeln!(out, "_{}_", self.empty).unwrap();
            return out;
        }
        writeln!(out, "| {} |", cols.join(" | ")).unwrap();
        writeln!(out, "|{}", cols.iter().map(|_| "---|").collect::<String>()).unwrap();
        for r in body {
            let cells: Vec<String> = r.into_iter().map(|c| c.replace('|', "\\|")).collect();
            writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        }
        out
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn lookup<'a>(row: &'a Row, key: &str) -> Option<&'a Cell> {
    row.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
}

fn object(row: &Row, places: u32) -> Value {
    let mut map = Map::new();
    for (k, v) in row {
        map.insert(k.to_string(), to_json(v, places));
    }
    Value::Object(map)
}

fn exact(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn to_json(cell: &Cell, places: u32) -> Value {
    match cell {
        Cell::Int(i) => match i64::try_from(*i) {
            Ok(v) => json!(v),
            Err(_) => json!(i.to_string()),
        },
        Cell::Big(b) => json!(b.to_string()),
        Cell::Ratio(q) => json!({ "value": exact(q), "decimal": decimal(q, places) }),
        Cell::Text(t) => json!(t),
        Cell::Bool(b) => json!(b),
        Cell::List(items) => Value::Array(items.iter().map(|c| to_json(c, places)).collect()),
        Cell::Null => Value::Null,
    }
}

fn csv_text(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Big(b) => b.to_string(),
        Cell::Ratio(q) => exact(q),
        Cell::Text(t) => t.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::List(items) => items.iter().map(csv_text).collect::<Vec<_>>().join(";"),
        Cell::Null => String::new(),
    }
}

fn human(cell: &Cell, places: u32) -> String {
    match cell {
        Cell::Ratio(q) if q.is_integer() => q.to_string(),
        Cell::Ratio(q) => format!("{q} ({})", decimal(q, places)),
        Cell::List(items) if items.is_empty() => "-".into(),
        Cell::List(items) => items
            .iter()
            .map(|c| human(c, places))
            .collect::<Vec<_>>()
            .join(", "),
        Cell::Null => "-".into(),
        other => csv_text(other),
    }
}
