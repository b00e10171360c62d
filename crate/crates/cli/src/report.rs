//! Deterministic JSON/CSV reports. Nothing time- or thread-dependent goes
//! into a report; rows are sorted by case id before writing.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub config: ExperimentConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub suite: String,
    pub case_id: String,
    pub verdict: String,
    pub ok: bool,
    pub checked: u64,
    pub violations: u64,
    pub witness: String,
    pub note: String,
}

impl Row {
    pub fn new(suite: &str, case_id: impl Into<String>) -> Self {
        Self {
            suite: suite.to_string(),
            case_id: case_id.into(),
            verdict: String::new(),
            ok: true,
            checked: 0,
            violations: 0,
            witness: String::new(),
            note: String::new(),
        }
    }

    /// Pass/fail row from a violation count.
    pub fn counted(
        suite: &str,
        case_id: impl Into<String>,
        checked: u64,
        violations: u64,
        witness: Option<String>,
    ) -> Self {
        let ok = violations == 0;
        Self {
            verdict: if ok { "pass" } else { "fail" }.into(),
            ok,
            checked,
            violations,
            witness: witness.unwrap_or_default(),
            ..Self::new(suite, case_id)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub header: Header,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, cfg: &ExperimentConfig, mut rows: Vec<Row>) -> Self {
        rows.sort_by(|a, b| (&a.suite, &a.case_id).cmp(&(&b.suite, &b.case_id)));
        let pass = rows.iter().filter(|r| r.ok).count();
        Self {
            header: Header {
                tool: env!("CARGO_PKG_NAME").into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: command.into(),
                seed: cfg.seed,
                config: cfg.clone(),
            },
            summary: Summary {
                pass,
                fail: rows.len() - pass,
            },
            rows,
        }
    }

    pub fn failed(&self) -> usize {
        self.summary.fail
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("row serializes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8")
    }

    /// Writes `<stem>.json` and `<stem>.csv` under `dir`.
    pub fn write(&self, dir: &Path, stem: &str) -> CliResult<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let json = dir.join(format!("{stem}.json"));
        let csv = dir.join(format!("{stem}.csv"));
        fs::write(&json, self.to_json())?;
        fs::write(&csv, self.to_csv())?;
        Ok(vec![json, csv])
    }
}

/// Plain matrix CSV: a header row then one row per line of `cells`.
pub fn matrix_csv(header: &[String], cells: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("header");
    for row in cells {
        w.write_record(row).expect("row");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_sorted_and_summarized() {
        let cfg = ExperimentConfig::default();
        let rows = vec![
            Row::counted("b", "2", 10, 1, Some("x".into())),
            Row::counted("a", "9", 10, 0, None),
        ];
        let r = Report::new("props-run", &cfg, rows);
        assert_eq!(r.rows[0].suite, "a");
        assert_eq!(r.summary, Summary { pass: 1, fail: 1 });
        let csv = r.to_csv();
        assert!(csv.starts_with("suite,case_id,verdict,ok,checked,violations,witness,note\n"));
        assert!(r.to_json().contains("\"tail_fraction\": 0.9"));
    }
}
