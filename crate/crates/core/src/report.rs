//! Check records and suite reports shared by every verification routine.

use std::fmt;

/// How a check was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvalPath {
    Exact,
    Numeric,
}

impl fmt::Display for EvalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalPath::Exact => write!(f, "exact"),
            EvalPath::Numeric => write!(f, "numeric"),
        }
    }
}

/// One evaluated identity instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    /// Identity name, e.g. `pentagon` or `formula1`.
    pub identity: String,
    /// Label and multiplicity tuple the instance refers to.
    pub index: Vec<String>,
    pub passed: bool,
    pub path: EvalPath,
    /// Absolute or relative residual for numeric checks.
    pub residual: Option<f64>,
    /// Free-form explanation of a failure.
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn exact(identity: &str, index: Vec<String>, passed: bool) -> Self {
        CheckRecord {
            identity: identity.to_string(),
            index,
            passed,
            path: EvalPath::Exact,
            residual: None,
            detail: None,
        }
    }

    pub fn numeric(identity: &str, index: Vec<String>, residual: f64, tol: f64) -> Self {
        CheckRecord {
            identity: identity.to_string(),
            index,
            passed: residual.is_finite() && residual <= tol,
            path: EvalPath::Numeric,
            residual: Some(residual),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub suite: String,
    /// The named identity the suite verifies.
    pub header: String,
    pub records: Vec<CheckRecord>,
    /// Extra key/value diagnostics such as seeds or convergence ratios.
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(suite: &str, header: &str) -> Self {
        Report {
            suite: suite.to_string(),
            header: header.to_string(),
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.to_string(), value.into()));
    }

    /// Appends the records of another report.
    pub fn absorb(&mut self, other: Report) {
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    /// Records for a given identity name.
    pub fn of(&self, identity: &str) -> impl Iterator<Item = &CheckRecord> + '_ {
        let id = identity.to_string();
        self.records.iter().filter(move |r| r.identity == id)
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} [{}]: {} ({} checks, {} failed)",
            self.suite,
            self.header,
            self.verdict(),
            self.records.len(),
            self.failure_count()
        )?;
        for (k, v) in &self.notes {
            writeln!(f, "  note {k} = {v}")?;
        }
        for r in self.failures() {
            write!(f, "  FAIL {} ({})", r.identity, r.index.join(","))?;
            if let Some(res) = r.residual {
                write!(f, " residual={res:.3e}")?;
            }
            if let Some(d) = &r.detail {
                write!(f, " {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
