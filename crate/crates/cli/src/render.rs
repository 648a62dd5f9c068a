use serde_json::Value;

use crate::{CliResult, Format};

/// Rows of already-formatted cells under a fixed header.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub name: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            name: None,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("cells are utf-8"))
    }

    fn text(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        for r in &self.rows {
            out += &line(r);
        }
        out
    }
}

/// What a command produced: a JSON document, the same content as tables,
/// and warnings for stderr.
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub json: Value,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
    pub default_format: Option<Format>,
}

impl Output {
    pub fn render(&self, format: Option<Format>) -> CliResult<String> {
        match format.or(self.default_format).unwrap_or(Format::Json) {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n"),
            Format::Csv => {
                let mut parts = Vec::new();
                for t in &self.tables {
                    let mut s = String::new();
                    if let (Some(n), true) = (&t.name, self.tables.len() > 1) {
                        s += &format!("# {n}\n");
                    }
                    s += &t.csv()?;
                    parts.push(s);
                }
                Ok(parts.join("\n"))
            }
            Format::Text => {
                let parts: Vec<String> = self
                    .tables
                    .iter()
                    .map(|t| match &t.name {
                        Some(n) if self.tables.len() > 1 => format!("{n}:\n{}", t.text()),
                        _ => t.text(),
                    })
                    .collect();
                Ok(parts.join("\n"))
            }
        }
    }
}
