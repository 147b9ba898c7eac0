//! Machine-readable verdicts emitted by the verification suites, one JSON
//! object per checked instance.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Every redraw hit a degenerate point; nothing was asserted.
    SkippedDegenerate,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub check: String,
    /// Which instance of the check: type, rank, degree, sample seed.
    pub instance: String,
    pub verdict: Verdict,
    /// For failures: what differed, kept small enough to read.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    /// Only populated when timing output is requested; omitted otherwise so
    /// repeated runs are byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl VerificationReport {
    pub fn pass(suite: &str, check: &str, instance: String) -> VerificationReport {
        VerificationReport {
            suite: suite.to_string(),
            check: check.to_string(),
            instance,
            verdict: Verdict::Pass,
            residual: None,
            warning: None,
            wall_ms: None,
        }
    }

    pub fn fail(
        suite: &str,
        check: &str,
        instance: String,
        residual: String,
    ) -> VerificationReport {
        VerificationReport {
            suite: suite.to_string(),
            check: check.to_string(),
            instance,
            verdict: Verdict::Fail,
            residual: Some(residual),
            warning: None,
            wall_ms: None,
        }
    }

    pub fn skipped(suite: &str, check: &str, instance: String) -> VerificationReport {
        VerificationReport {
            suite: suite.to_string(),
            check: check.to_string(),
            instance,
            verdict: Verdict::SkippedDegenerate,
            residual: None,
            warning: None,
            wall_ms: None,
        }
    }

    pub fn with_warning(mut self, warning: String) -> VerificationReport {
        self.warning = Some(warning);
        self
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
