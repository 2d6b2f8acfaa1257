use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub status: Status,
    /// Wall time, only recorded when timings are requested so that reports
    /// stay byte-identical across runs by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        CheckReport { suite: suite.to_string(), seed, cases: Vec::new(), summary: Summary::default() }
    }

    pub fn push(&mut self, case: Case) {
        match case.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Error => self.summary.error += 1,
            Status::Skipped => self.summary.skipped += 1,
        }
        self.cases.push(case);
    }

    pub fn extend(&mut self, other: CheckReport) {
        for c in other.cases {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
                Status::Skipped => "SKIP",
            };
            let _ = write!(out, "{status:<5} {:<40} got {}", c.id, c.got);
            if c.status != Status::Pass {
                let _ = write!(out, " (expected {})", c.expected);
            }
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, " [{ms:.1} ms]");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} pass, {} fail, {} error, {} skipped",
            self.suite, s.pass, s.fail, s.error, s.skipped
        );
        out
    }
}

/// Collects cases, timing each one when asked to.
pub struct Runner {
    pub report: CheckReport,
    timings: bool,
}

impl Runner {
    pub fn new(suite: &str, seed: u64, timings: bool) -> Self {
        Runner { report: CheckReport::new(suite, seed), timings }
    }

    /// Runs `f`, which returns the observed value; the case passes when it
    /// renders equal to `expected`.
    pub fn case(
        &mut self,
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        f: impl FnOnce() -> metaplectic::Result<String>,
    ) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let expected = expected.into();
        let (got, status) = match result {
            Ok(g) if g == expected => (g, Status::Pass),
            Ok(g) => (g, Status::Fail),
            Err(e) => (e.to_string(), Status::Error),
        };
        self.report.push(Case {
            id: id.into(),
            inputs: inputs.into(),
            expected,
            got,
            status,
            elapsed_ms: self.timings.then_some(elapsed),
        });
    }

    /// A case whose verdict is a boolean.
    pub fn check(&mut self, id: impl Into<String>, inputs: impl Into<String>, f: impl FnOnce() -> metaplectic::Result<bool>) {
        self.case(id, inputs, "true", || f().map(|b| b.to_string()));
    }

    pub fn finish(self) -> CheckReport {
        self.report
    }
}
