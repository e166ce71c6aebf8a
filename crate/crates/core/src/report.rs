//! Verification reports: one report per law, first counterexample in
//! lexicographic scan order, deterministic for a fixed input and seed.

use serde::{Deserialize, Serialize};

/// Outcome of a single law check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LawStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "budget-exceeded")]
    BudgetExceeded,
}

/// First counterexample of a failed law: the input tuple and both evaluated
/// sides, rendered as stable strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new<I: ToString>(input: &[I], lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            input: input.iter().map(|x| x.to_string()).collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Result of checking one law, identified by its law id (e.g. `e01`, `mna`,
/// `diag4`). A failing report always carries a witness; a passing report
/// records how many probes covered the domain (or the sample size).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub law: String,
    pub status: LawStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub probes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn pass(law: &str, probes: u64) -> Self {
        VerificationReport {
            law: law.to_string(),
            status: LawStatus::Pass,
            witness: None,
            probes,
            seed: None,
            budget: None,
            detail: None,
        }
    }

    pub fn fail(law: &str, witness: Witness, probes: u64) -> Self {
        VerificationReport {
            law: law.to_string(),
            status: LawStatus::Fail,
            witness: Some(witness),
            probes,
            seed: None,
            budget: None,
            detail: None,
        }
    }

    pub fn skipped(law: &str, detail: impl ToString) -> Self {
        VerificationReport {
            law: law.to_string(),
            status: LawStatus::Skipped,
            witness: None,
            probes: 0,
            seed: None,
            budget: None,
            detail: Some(detail.to_string()),
        }
    }

    pub fn budget_exceeded(law: &str, domain: u128, budget: u64) -> Self {
        VerificationReport {
            law: law.to_string(),
            status: LawStatus::BudgetExceeded,
            witness: None,
            probes: 0,
            seed: None,
            budget: Some(budget),
            detail: Some(format!("domain size {domain} exceeds budget {budget}")),
        }
    }

    pub fn with_detail(mut self, detail: impl ToString) -> Self {
        self.detail = Some(detail.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == LawStatus::Pass
    }
}

/// Ordered collection of per-law reports produced by a grouped check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub reports: Vec<VerificationReport>,
}

impl ReportSet {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        ReportSet { reports }
    }

    /// True when every non-skipped law passed.
    pub fn passed(&self) -> bool {
        self.reports
            .iter()
            .all(|r| matches!(r.status, LawStatus::Pass | LawStatus::Skipped))
    }

    pub fn first_failure(&self) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.status == LawStatus::Fail)
    }

    pub fn push(&mut self, report: VerificationReport) {
        self.reports.push(report);
    }

    pub fn extend(&mut self, other: ReportSet) {
        self.reports.extend(other.reports);
    }

    pub fn get(&self, law: &str) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.law == law)
    }
}

/// Probe budget for exhaustive scans. Domains larger than `max_probes` are
/// reported as budget-exceeded (or sampled, where the law allows sampling).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_probes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_probes: 10_000_000,
        }
    }
}

impl Budget {
    pub fn new(max_probes: u64) -> Self {
        Budget { max_probes }
    }

    /// Checks that a domain of `size` probes fits, returning the size as u64.
    pub fn admit(&self, size: u128) -> Option<u64> {
        if size <= self.max_probes as u128 {
            Some(size as u64)
        } else {
            None
        }
    }
}

/// Run configuration shared by the batch runner and the sampled checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub budget: Budget,
    /// Sample size used when a law falls back to seeded sampling.
    pub sample: u64,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: Budget::default(),
            sample: 8192,
            seed: 0,
            jobs: 1,
        }
    }
}
