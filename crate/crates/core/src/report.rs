//! Pass/fail records produced by every verifier.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::linalg::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where a check failed: group elements, basis indices, and both evaluated sides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub elements: Vec<usize>,
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lhs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rhs: Vec<String>,
}

impl Witness {
    pub fn new(elements: &[usize], indices: &[usize]) -> Self {
        Witness { elements: elements.to_vec(), indices: indices.to_vec(), ..Default::default() }
    }

    pub fn sides(mut self, lhs: &[Scalar], rhs: &[Scalar]) -> Self {
        self.lhs = lhs.iter().map(ToString::to_string).collect();
        self.rhs = rhs.iter().map(ToString::to_string).collect();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Number of individual identities evaluated.
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates one named check; the first failure is kept as the witness.
pub struct CheckBuilder {
    name: String,
    cases: usize,
    failure: Option<(Option<String>, Option<Witness>)>,
    started: Instant,
}

impl CheckBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CheckBuilder { name: name.into(), cases: 0, failure: None, started: Instant::now() }
    }

    /// Records one evaluated case; on the first `false` the lazily built witness is kept.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some((None, Some(witness())));
        }
        ok
    }

    pub fn fail(&mut self, detail: impl Into<String>, witness: Option<Witness>) {
        self.cases += 1;
        if self.failure.is_none() {
            self.failure = Some((Some(detail.into()), witness));
        }
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn finish(self) -> Check {
        let timing_us = Some(self.started.elapsed().as_micros() as u64);
        match self.failure {
            None => Check { name: self.name, status: Status::Pass, cases: self.cases, detail: None, witness: None, timing_us },
            Some((detail, witness)) => Check {
                name: self.name,
                status: Status::Fail,
                cases: self.cases,
                detail,
                witness,
                timing_us,
            },
        }
    }
}

/// An ordered list of checks about one subject.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Drops wall-clock timings so that reports are reproducible byte for byte.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.timing_us = None;
        }
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.passed() { "pass" } else { "FAIL" };
            write!(f, "  [{tag}] {:<width$}  ({} cases)", c.name, c.cases)?;
            if let Some(t) = c.timing_us {
                write!(f, " {:.3} ms", t as f64 / 1000.0)?;
            }
            writeln!(f)?;
            if let Some(d) = &c.detail {
                writeln!(f, "         {d}")?;
            }
            if let Some(w) = &c.witness {
                writeln!(f, "         witness: elements {:?}, indices {:?}", w.elements, w.indices)?;
                if !w.lhs.is_empty() || !w.rhs.is_empty() {
                    writeln!(f, "           lhs = [{}]", w.lhs.join(", "))?;
                    writeln!(f, "           rhs = [{}]", w.rhs.join(", "))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let mut b = CheckBuilder::new("demo");
        b.case(true, || Witness::new(&[0], &[]));
        b.case(false, || Witness::new(&[1], &[2]));
        b.case(false, || Witness::new(&[3], &[4]));
        let c = b.finish();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.cases, 3);
        assert_eq!(c.witness.unwrap().elements, vec![1]);
    }

    #[test]
    fn report_json_round_trip() {
        let mut r = Report::new("x");
        let mut b = CheckBuilder::new("a");
        b.fail("broken", Some(Witness::new(&[1, 2], &[3])));
        r.push(b.finish());
        r.push(CheckBuilder::new("b").finish());
        let r = r.without_timings();
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed());
    }
}
