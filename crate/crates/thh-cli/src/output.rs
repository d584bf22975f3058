//! One result rendered three ways from the same data.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A finished command. `pass` decides the exit code.
pub struct Rendered {
    pub json: String,
    pub text: String,
    pub csv: Vec<Vec<String>>,
    pub pass: bool,
}

impl Rendered {
    pub fn new<T: Serialize>(value: &T, text: String, csv: Vec<Vec<String>>, pass: bool) -> anyhow::Result<Self> {
        Ok(Rendered { json: serde_json::to_string(value)?, text, csv, pass })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.clone(),
            Format::Text => self.text.trim_end().to_string(),
            Format::Csv => self
                .csv
                .iter()
                .map(|row| row.iter().map(|f| thh_engine::report::csv_field(f)).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n"),
        }
    }
}

/// Header row followed by data rows.
pub fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Vec<Vec<String>> {
    std::iter::once(header.iter().map(|s| s.to_string()).collect()).chain(rows).collect()
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
