//! Structured verification reports and table documents, with deterministic
//! rendering to tab-separated values, JSON records, and aligned text.

use crate::linalg::{fmt_rat, Rat};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Records,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<OutputFormat> {
        match s {
            "tsv" => Some(OutputFormat::Tsv),
            "records" => Some(OutputFormat::Records),
            "text" => Some(OutputFormat::Text),
            _ => None,
        }
    }
}

/// One verification check: an identifier, the verdict, and a short detail
/// line (residuals and counts go here).
#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn passed(id: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { id: id.into(), pass: true, detail: detail.into() }
    }

    pub fn failed(id: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { id: id.into(), pass: false, detail: detail.into() }
    }

    pub fn from_bool(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { id: id.into(), pass, detail: detail.into() }
    }
}

/// Outcome of one verification suite at a fixed rank.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, n: usize) -> SuiteReport {
        SuiteReport { suite: suite.into(), n, checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for c in other.checks {
            self.checks.push(Check {
                id: format!("{}/{}", other.suite, c.id),
                ..c
            });
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Tsv => {
                let mut out = String::from("suite\tn\tcheck\tstatus\tdetail\n");
                for c in &self.checks {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\n",
                        self.suite,
                        self.n,
                        c.id,
                        if c.pass { "pass" } else { "FAIL" },
                        c.detail
                    ));
                }
                out
            }
            OutputFormat::Records => {
                let checks: Vec<Value> = self
                    .checks
                    .iter()
                    .map(|c| json!({"id": c.id, "pass": c.pass, "detail": c.detail}))
                    .collect();
                let doc = json!({
                    "suite": self.suite,
                    "n": self.n,
                    "pass": self.passed(),
                    "checks": checks,
                });
                format!("{doc}\n")
            }
            OutputFormat::Text => {
                let mut out = format!("suite {} (n = {})\n", self.suite, self.n);
                for c in &self.checks {
                    out.push_str(&format!(
                        "  [{}] {} {}\n",
                        if c.pass { "ok" } else { "FAIL" },
                        c.id,
                        if c.detail.is_empty() {
                            String::new()
                        } else {
                            format!("- {}", c.detail)
                        }
                    ));
                }
                out.push_str(&format!(
                    "  {} checks, {}\n",
                    self.checks.len(),
                    if self.passed() { "all passed" } else { "FAILURES PRESENT" }
                ));
                out
            }
        }
    }
}

/// A table cell. Rationals render as `p/q` (bare integer when q = 1),
/// integer lists as bracketed comma-joined text in tsv/text and JSON arrays
/// in records.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Count(usize),
    Rat(Rat),
    Text(String),
    Ints(Vec<i64>),
}

impl Cell {
    fn as_string(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Count(x) => x.to_string(),
            Cell::Rat(x) => fmt_rat(x),
            Cell::Text(s) => s.clone(),
            Cell::Ints(v) => format!(
                "[{}]",
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    fn as_json(&self) -> Value {
        match self {
            Cell::Int(x) => json!(x),
            Cell::Count(x) => json!(x),
            Cell::Rat(x) => json!(fmt_rat(x)),
            Cell::Text(s) => json!(s),
            Cell::Ints(v) => json!(v),
        }
    }
}

/// A deterministic tabular document.
#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            title: title.into(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Tsv => {
                let mut out = self.columns.join("\t");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.as_string()).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
                out
            }
            OutputFormat::Records => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (name, cell) in self.columns.iter().zip(row) {
                            obj.insert(name.clone(), cell.as_json());
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({"table": self.title, "rows": rows});
                format!("{doc}\n")
            }
            OutputFormat::Text => {
                let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
                let string_rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|row| row.iter().map(|c| c.as_string()).collect())
                    .collect();
                for row in &string_rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.len());
                    }
                }
                let mut out = format!("{}\n", self.title);
                let header: Vec<String> = self
                    .columns
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:w$}"))
                    .collect();
                out.push_str(&header.join("  "));
                out.push('\n');
                for row in &string_rows {
                    let cells: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:w$}"))
                        .collect();
                    out.push_str(cells.join("  ").trim_end());
                    out.push('\n');
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratq;

    #[test]
    fn table_rendering_is_stable() {
        let mut t = Table::new("demo", &["level", "root", "mult", "length_sq"]);
        t.push_row(vec![
            Cell::Int(-1),
            Cell::Ints(vec![-1, 0, 1]),
            Cell::Count(2),
            Cell::Rat(ratq(-2, 1)),
        ]);
        t.push_row(vec![
            Cell::Int(0),
            Cell::Ints(vec![0, 1, 0]),
            Cell::Count(1),
            Cell::Rat(ratq(1, 2)),
        ]);
        let tsv = t.render(OutputFormat::Tsv);
        assert_eq!(tsv.lines().count(), 3);
        assert!(tsv.contains("-1\t[-1,0,1]\t2\t-2"));
        assert!(tsv.contains("1/2"));
        let rec = t.render(OutputFormat::Records);
        let parsed: serde_json::Value = serde_json::from_str(&rec).unwrap();
        assert_eq!(parsed["rows"][0]["mult"], 2);
        assert_eq!(parsed["rows"][0]["length_sq"], "-2");
        let txt1 = t.render(OutputFormat::Text);
        let txt2 = t.render(OutputFormat::Text);
        assert_eq!(txt1, txt2);
    }

    #[test]
    fn suite_report_flags_failures() {
        let mut r = SuiteReport::new("demo", 3);
        r.push(Check::passed("a", ""));
        assert!(r.passed());
        r.push(Check::failed("b", "residual 1"));
        assert!(!r.passed());
        let text = r.render(OutputFormat::Text);
        assert!(text.contains("FAIL"));
        let rec = r.render(OutputFormat::Records);
        let parsed: serde_json::Value = serde_json::from_str(&rec).unwrap();
        assert_eq!(parsed["pass"], false);
    }
}
