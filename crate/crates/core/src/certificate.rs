//! Structured pass/fail verdicts with exact witnesses.
//!
//! Every checker in the engine returns a [`Certificate`] instead of a bare
//! boolean: a failing check always names the rule it tripped and the exact
//! rational values involved, so a report is reproducible evidence rather
//! than a diagnostic string.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check does not apply to this input (e.g. wrong dimension class);
    /// distinct from failure.
    NotCovered,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::NotCovered => write!(f, "not-covered"),
        }
    }
}

/// Verdict of a single named check plus its witness values.
///
/// Witness values are rendered as exact integer-fraction strings; floats
/// never appear.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub check: String,
    pub verdict: Verdict,
    pub witness: BTreeMap<String, String>,
}

impl Certificate {
    pub fn pass(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass)
    }

    pub fn fail(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Fail)
    }

    pub fn not_covered(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::NotCovered)
    }

    fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        Self {
            check: check.into(),
            verdict,
            witness: BTreeMap::new(),
        }
    }

    /// Attaches a witness entry; builder style.
    pub fn with(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.witness.insert(key.into(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.verdict)?;
        for (k, v) in &self.witness {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}
