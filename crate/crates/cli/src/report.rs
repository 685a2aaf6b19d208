use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Default)]
pub struct Section {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Section {
            title: Some(title.into()),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn key_values(title: impl Into<String>) -> Self {
        Section::new(title, &["key", "value"])
    }

    pub fn row<I, S>(&mut self, cells: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows
            .push(cells.into_iter().map(|c| c.to_string()).collect());
        self
    }

    pub fn kv(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.row([key.to_string(), value.to_string()])
    }
}

/// What a subcommand produced: human tables, a JSON document, and whether
/// every verification it ran passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub sections: Vec<Section>,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    pub fn new(sections: Vec<Section>, json: Value) -> Self {
        Report {
            sections,
            json,
            ok: true,
        }
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Table => Ok(self.render_table()),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.sections.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            if let Some(t) = &s.title {
                let _ = writeln!(out, "{t}");
            }
            let ncols = s
                .headers
                .len()
                .max(s.rows.iter().map(Vec::len).max().unwrap_or(0));
            let mut widths = vec![0; ncols];
            for r in std::iter::once(&s.headers).chain(&s.rows) {
                for (i, c) in r.iter().enumerate() {
                    widths[i] = widths[i].max(c.chars().count());
                }
            }
            let line = |r: &[String]| {
                let cells: Vec<String> = r
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
                    .collect();
                cells.join("  ").trim_end().to_string()
            };
            if !s.headers.is_empty() {
                let _ = writeln!(out, "{}", line(&s.headers));
                let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                let _ = writeln!(out, "{}", rule.join("  "));
            }
            for r in &s.rows {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        out
    }

    fn render_csv(&self) -> Result<String> {
        let mut out = Vec::new();
        for (k, s) in self.sections.iter().enumerate() {
            if k > 0 {
                out.push(b'\n');
            }
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            let mut headers = Vec::with_capacity(s.headers.len() + 1);
            if self.sections.len() > 1 {
                headers.push("section".to_string());
            }
            headers.extend(s.headers.iter().cloned());
            w.write_record(&headers)?;
            for r in &s.rows {
                let mut rec = Vec::with_capacity(r.len() + 1);
                if self.sections.len() > 1 {
                    rec.push(s.title.clone().unwrap_or_default());
                }
                rec.extend(r.iter().cloned());
                w.write_record(&rec)?;
            }
            out.extend(w.into_inner()?);
        }
        Ok(String::from_utf8(out)?)
    }
}
