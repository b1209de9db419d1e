use std::fmt::Write as _;

use rowadj::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

enum Entry {
    Banner(String),
    Value(String, String),
    Matrix(String, Matrix),
}

/// Ordered key/value report rendered either for people or as `key=value` lines.
#[derive(Default)]
pub struct Report {
    entries: Vec<Entry>,
}

impl Report {
    pub fn banner(&mut self, text: impl Into<String>) {
        self.entries.push(Entry::Banner(text.into()));
    }

    pub fn value(&mut self, key: &str, value: impl ToString) {
        self.entries.push(Entry::Value(key.to_string(), value.to_string()));
    }

    pub fn matrix(&mut self, key: &str, m: &Matrix) {
        self.entries.push(Entry::Matrix(key.to_string(), m.clone()));
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match (e, format) {
                (Entry::Banner(t), Format::Human) => {
                    let _ = writeln!(out, "{t}");
                }
                (Entry::Banner(t), Format::Machine) => {
                    let _ = writeln!(out, "banner={t}");
                }
                (Entry::Value(k, v), Format::Human) => {
                    let _ = writeln!(out, "{k}: {v}");
                }
                (Entry::Value(k, v), Format::Machine) => {
                    let _ = writeln!(out, "{k}={v}");
                }
                (Entry::Matrix(k, m), Format::Human) => {
                    let _ = writeln!(out, "{k}:");
                    for line in m.to_string().lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
                (Entry::Matrix(k, m), Format::Machine) => {
                    let _ = writeln!(out, "{k}.rows={}", m.rows());
                    for (i, row) in m.row_iter().enumerate() {
                        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                        let _ = writeln!(out, "{k}.row.{}={}", i + 1, cells.join(" "));
                    }
                }
            }
        }
        out
    }
}
