//! Machine-readable reports.
//!
//! A report is deterministic: identical inputs and flags produce
//! byte-identical output. All witness values are exact integer-fraction
//! strings; `inf`, `nan` and decimal points never appear.

use hamfix::{Certificate, Verdict};
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Serialize, Clone)]
pub struct DatasetMeta {
    pub digest: String,
    pub half_dim: usize,
    pub points: usize,
    pub classes: usize,
}

impl DatasetMeta {
    pub fn of(ds: &crate::dataset::Dataset) -> Self {
        Self {
            digest: ds.digest(),
            half_dim: ds.fps.half_dim(),
            points: ds.fps.points().len(),
            classes: ds.classes.as_ref().map_or(0, Vec::len),
        }
    }
}

#[derive(Serialize, Clone)]
pub struct CheckJson {
    pub check: String,
    pub verdict: String,
    pub witness: BTreeMap<String, String>,
}

impl From<&Certificate> for CheckJson {
    fn from(c: &Certificate) -> Self {
        Self {
            check: c.check.clone(),
            verdict: c.verdict.to_string(),
            witness: c.witness.clone(),
        }
    }
}

#[derive(Serialize, Clone)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset: Option<DatasetMeta>,
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            dataset: None,
            checks: Vec::new(),
            data: None,
            verdict: "pass".to_owned(),
            error: None,
        }
    }

    pub fn with_dataset(mut self, meta: DatasetMeta) -> Self {
        self.dataset = Some(meta);
        self
    }

    pub fn push_check(&mut self, cert: &Certificate) {
        self.checks.push(CheckJson::from(cert));
        match cert.verdict {
            Verdict::Pass => {}
            Verdict::Fail => {
                if self.verdict == "pass" {
                    self.verdict = "fail".to_owned();
                }
            }
            Verdict::NotCovered => {
                if self.verdict == "pass" {
                    self.verdict = "not-covered".to_owned();
                }
            }
        }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn with_verdict(mut self, verdict: &str) -> Self {
        self.verdict = verdict.to_owned();
        self
    }

    /// Usage or precondition error: verdict `error`, exit code 2.
    pub fn error(command: &str, message: impl Into<String>) -> Self {
        let mut r = Self::new(command);
        r.verdict = "error".to_owned();
        r.error = Some(message.into());
        r
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict.as_str() {
            "pass" | "consistent" => 0,
            "fail" | "contradiction" => 1,
            _ => 2,
        }
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(ds) = &self.dataset {
            out.push_str(&format!(
                "dataset: {} points={} half_dim={} classes={}\n",
                ds.digest, ds.points, ds.half_dim, ds.classes
            ));
        }
        for c in &self.checks {
            out.push_str(&format!("check {}: {}", c.check, c.verdict));
            for (k, v) in &c.witness {
                out.push_str(&format!(" {k}={v}"));
            }
            out.push('\n');
        }
        if let Some(data) = &self.data {
            if let Value::Object(map) = data {
                for (k, v) in map {
                    out.push_str(&format!("{k} = {}\n", compact(v)));
                }
            } else {
                out.push_str(&format!("data = {}\n", compact(data)));
            }
        }
        if let Some(err) = &self.error {
            out.push_str(&format!("error: {err}\n"));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_aggregation_and_exit_codes() {
        let mut r = Report::new("validate");
        r.push_check(&Certificate::pass("validate"));
        assert_eq!(r.exit_code(), 0);
        r.push_check(&Certificate::fail("residues").with("k", 1));
        assert_eq!(r.verdict, "fail");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(Report::error("x", "boom").exit_code(), 2);
    }

    #[test]
    fn text_rendering_is_flat_and_exact() {
        let mut r = Report::new("residues");
        r.push_check(&Certificate::fail("residues").with("k", 1).with("value", "-1/2"));
        let text = r.render_text();
        assert!(text.contains("check residues: fail k=1 value=-1/2"));
        assert!(text.ends_with("verdict: fail\n"));
    }
}
