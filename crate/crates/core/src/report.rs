//! Run configuration and deterministic reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::check::CheckReport;

/// Windows and limits shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    /// `W1` window `[witt_lo, witt_hi]`.
    pub witt_lo: i64,
    pub witt_hi: i64,
    /// Top degree of density modules.
    pub density_hi: i64,
    /// Top index of Verma duals.
    pub verma_hi: i64,
    pub pbw_length: usize,
    /// Weights `|w| <= weight_range` are computed.
    pub weight_range: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            witt_lo: -1,
            witt_hi: 8,
            density_hi: 12,
            verma_hi: 12,
            pbw_length: 2,
            weight_range: 8,
        }
    }
}

impl RunConfig {
    pub fn entries(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("witt_window".into(), format!("[{}, {}]", self.witt_lo, self.witt_hi));
        m.insert("density_window".into(), format!("[0, {}]", self.density_hi));
        m.insert("verma_window".into(), format!("[0, {}]", self.verma_hi));
        m.insert("pbw_length".into(), self.pbw_length.to_string());
        m.insert("weight_range".into(), self.weight_range.to_string());
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A discrepancy that is reported but does not fail the run.
    Warn,
    Info,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warn => "warn",
            Status::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, status: Status, witness: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            status,
            witness: witness.into(),
        }
    }

    pub fn from_check(name: impl Into<String>, c: &CheckReport) -> Self {
        let status = if c.passed() { Status::Pass } else { Status::Fail };
        Verdict::new(name, status, format!("{}: {}", c.name, c.summary()))
    }

    /// Pass iff the check fails (negative controls).
    pub fn expect_failure(name: impl Into<String>, c: &CheckReport) -> Self {
        match &c.failure {
            Some(f) => Verdict::new(name, Status::Pass, format!("rejected as expected: {f}")),
            None => Verdict::new(name, Status::Fail, format!("{} unexpectedly passed", c.name)),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Verdict::new(name, if ok { Status::Pass } else { Status::Fail }, witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

/// Printed value against computed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub item: String,
    pub printed: String,
    pub computed: String,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    pub tables: Vec<Table>,
    pub comparisons: Vec<Comparison>,
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Report {
            command: config.command.clone(),
            config: config.entries(),
            verdicts: Vec::new(),
            tables: Vec::new(),
            comparisons: Vec::new(),
        }
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn check(&mut self, name: impl Into<String>, c: &CheckReport) {
        self.push(Verdict::from_check(name, c));
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    /// Adds a comparison and a matching `warn` verdict when it disagrees.
    pub fn compare(&mut self, item: impl Into<String>, printed: impl Into<String>, computed: impl Into<String>) {
        let (item, printed, computed) = (item.into(), printed.into(), computed.into());
        let agree = printed == computed;
        if !agree {
            self.push(Verdict::new(
                format!("discrepancy {item}"),
                Status::Warn,
                format!("printed {printed}, computed {computed}"),
            ));
        }
        self.comparisons.push(Comparison {
            item,
            printed,
            computed,
            agree,
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.verdicts.extend(other.verdicts);
        self.tables.extend(other.tables);
        self.comparisons.extend(other.comparisons);
    }

    /// Orders verdicts by name so output is independent of scheduling.
    pub fn finish(mut self) -> Self {
        self.verdicts.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.verdicts.iter().filter(|v| v.status == s).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# xmodlab {}\n", self.command);
        let _ = writeln!(s, "## Configuration\n");
        for (k, v) in &self.config {
            let _ = writeln!(s, "- {k}: {v}");
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(s, "\n## Verdicts\n");
            let _ = writeln!(s, "| check | status | witness |");
            let _ = writeln!(s, "|---|---|---|");
            for v in &self.verdicts {
                let _ = writeln!(s, "| {} | {} | {} |", cell(&v.name), v.status.as_str(), cell(&v.witness));
            }
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n## {}\n", t.name);
            let _ = writeln!(s, "| {} |", t.columns.join(" | "));
            let _ = writeln!(s, "|{}", "---|".repeat(t.columns.len()));
            for r in &t.rows {
                let cells: Vec<String> = r.iter().map(|c| cell(c)).collect();
                let _ = writeln!(s, "| {} |", cells.join(" | "));
            }
        }
        if !self.comparisons.is_empty() {
            let _ = writeln!(s, "\n## Printed vs computed\n");
            let _ = writeln!(s, "| item | printed | computed | agree |");
            let _ = writeln!(s, "|---|---|---|---|");
            for c in &self.comparisons {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    cell(&c.item),
                    cell(&c.printed),
                    cell(&c.computed),
                    if c.agree { "yes" } else { "no" }
                );
            }
        }
        let _ = writeln!(
            s,
            "\n{} pass, {} fail, {} warn",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Warn)
        );
        s
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

/// Renders a dimension vector as `(a, b, c)`.
pub fn dims(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(", "))
}
