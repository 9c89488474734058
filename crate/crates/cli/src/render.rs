//! Output assembly: one document per command in JSON, CSV or aligned text.

use crate::{Failure, Format};
use serde_json::{Map, Value};
use std::path::PathBuf;

/// Where and how to write.
pub struct Sink {
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Sink {
    pub fn write(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Plain string table.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_pretty(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut s = String::new();
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            let mut line = String::new();
            for (k, (c, w)) in row.iter().zip(&widths).enumerate() {
                if k > 0 {
                    line.push_str("  ");
                }
                let pad = w - c.chars().count();
                line.push_str(c);
                line.extend(std::iter::repeat_n(' ', pad));
            }
            s.push_str(line.trim_end());
            s.push('\n');
        }
        s
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Parameters shared by every document.
pub struct Header {
    pub command: &'static str,
    pub n: usize,
    pub e: u32,
    pub kappa: [u32; 2],
    pub walls: Vec<i64>,
}

impl Header {
    pub fn json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), self.command.into());
        m.insert("n".into(), self.n.into());
        m.insert("e".into(), self.e.into());
        m.insert("kappa".into(), Value::from(self.kappa.to_vec()));
        m.insert("walls".into(), Value::from(self.walls.clone()));
        m
    }

    pub fn comment(&self) -> String {
        let walls: Vec<String> = self.walls.iter().map(|w| w.to_string()).collect();
        format!(
            "# {} n={} e={} kappa=({},{}) walls=[{}]\n",
            self.command,
            self.n,
            self.e,
            self.kappa[0],
            self.kappa[1],
            walls.join(",")
        )
    }
}

/// Render one document: `payload` is merged into the JSON header, the text
/// forms follow a comment line naming the parameters.
pub fn document(
    h: &Header,
    format: Format,
    payload: Map<String, Value>,
    csv: impl FnOnce() -> String,
    pretty: impl FnOnce() -> String,
) -> String {
    match format {
        Format::Json => {
            let mut m = h.json();
            m.extend(payload);
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => h.comment() + &csv(),
        Format::Pretty => h.comment() + &pretty(),
    }
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}
