//! Certification of the identities and bijections at desk scale.
//!
//! Every check yields a [`VerificationReport`] comparing two exactly computed
//! sides. Failures are reported, never raised; the only errors are requests
//! outside a check's parameter domain.

mod certify;
mod sums;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::numbers::{NumberError, SignedCount};
use crate::par::Exec;

pub use certify::{
    certify_barred, certify_dumont, certify_phi, certify_psi, certify_relabel, certify_swap,
    verify_partition,
};
pub use sums::{
    alternating_sum, verify_pb_zero, verify_prop_rec, verify_telescope, verify_thm_identity,
    verify_thm_identity2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Number(#[from] NumberError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where a count came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Enumeration,
    Series,
}

/// One signed summand `(-1)^j * count` of an alternating sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumTerm {
    pub j: usize,
    pub sign: i8,
    #[serde(serialize_with = "as_decimal")]
    pub count: SignedCount,
    pub source: Source,
}

impl SumTerm {
    pub fn new(j: usize, count: SignedCount, source: Source) -> Self {
        Self {
            j,
            sign: if j.is_multiple_of(2) { 1 } else { -1 },
            count,
            source,
        }
    }

    pub fn signed(&self) -> SignedCount {
        if self.sign < 0 {
            -self.count.clone()
        } else {
            self.count.clone()
        }
    }
}

fn as_decimal<S: Serializer>(v: &SignedCount, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_seconds<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Outcome of one certification cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub parameters: BTreeMap<String, i64>,
    #[serde(serialize_with = "as_decimal")]
    pub lhs: SignedCount,
    #[serde(serialize_with = "as_decimal")]
    pub rhs: SignedCount,
    pub status: Status,
    pub counterexamples: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<SumTerm>,
    /// Auxiliary sizes (cell cardinalities, domain sizes, chain values).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, i64>,
    #[serde(rename = "elapsed_s", serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

/// At most this many counterexamples are kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 16;

impl VerificationReport {
    fn new(claim_id: &str, parameters: &[(&str, i64)], lhs: SignedCount, rhs: SignedCount) -> Self {
        let mut report = Self {
            claim_id: claim_id.to_string(),
            parameters: parameters
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            lhs,
            rhs,
            status: Status::Fail,
            counterexamples: Vec::new(),
            terms: Vec::new(),
            details: BTreeMap::new(),
            elapsed: Duration::ZERO,
        };
        report.settle();
        report
    }

    fn settle(&mut self) {
        self.status = if self.lhs == self.rhs && self.counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
    }

    fn push_counterexample(&mut self, value: serde_json::Value) {
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(value);
        }
        self.status = Status::Fail;
    }

    fn with_counterexamples(mut self, values: Vec<serde_json::Value>) -> Self {
        for v in values {
            self.push_counterexample(v);
        }
        self.settle();
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    fn sort_key(&self) -> (String, Vec<(String, i64)>) {
        (
            self.claim_id.clone(),
            self.parameters
                .iter()
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        )
    }
}

/// Claims the sweep knows how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    PbZero,
    Thm1,
    Thm2,
    PropRec,
    Partition,
    Phi,
    Psi,
    Relabel,
    Telescope,
    Prop1,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::PbZero,
        Claim::Thm1,
        Claim::Thm2,
        Claim::PropRec,
        Claim::Partition,
        Claim::Phi,
        Claim::Psi,
        Claim::Relabel,
        Claim::Telescope,
        Claim::Prop1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::PbZero => "pb-zero",
            Claim::Thm1 => "thm1",
            Claim::Thm2 => "thm2",
            Claim::PropRec => "prop-rec",
            Claim::Partition => "partition",
            Claim::Phi => "phi",
            Claim::Psi => "psi",
            Claim::Relabel => "relabel",
            Claim::Telescope => "telescope",
            Claim::Prop1 => "prop1",
        }
    }

    pub fn from_name(name: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Size limits for the sweeps.
///
/// Alternating-sum claims (`thm1` enumeration, `thm2`, `prop-rec`,
/// `telescope`) cover every `(n, m)` with `n + 2m <= sum_weight`; their
/// summands `C_{n-j}^j(m)` all have `k + n + 2m = n + 2m`. Per-cell claims
/// (`partition`, `phi`, `psi`, `relabel`, `prop1`) cover every `(k, n, m)`
/// with `k + n + m <= cell_weight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub sum_weight: u32,
    pub cell_weight: u32,
    /// Largest `n` for the series-only claims `pb-zero` and `thm1`.
    pub series_max: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            sum_weight: 8,
            cell_weight: 6,
            series_max: 20,
        }
    }
}

impl Budget {
    /// Same bound for both sweep families.
    pub fn uniform(weight: u32) -> Self {
        Self {
            sum_weight: weight,
            cell_weight: weight,
            ..Self::default()
        }
    }

    /// `(n, m)` with `n + 2m <= sum_weight`.
    pub fn sum_cells(&self) -> Vec<(u32, u32)> {
        let w = self.sum_weight;
        (0..=w / 2)
            .flat_map(|m| (0..=w - 2 * m).map(move |n| (n, m)))
            .collect()
    }

    /// `(k, n, m)` with `k + n + m <= cell_weight`.
    pub fn triples(&self) -> Vec<(u32, u32, u32)> {
        let w = self.cell_weight;
        let mut out = Vec::new();
        for m in 0..=w {
            for k in 0..=w - m {
                for n in 0..=w - m - k {
                    out.push((k, n, m));
                }
            }
        }
        out
    }
}

/// Runs every cell of `claim` within `budget` and returns the reports sorted
/// by claim id, then parameters.
pub fn run_claim(
    claim: Claim,
    budget: &Budget,
    exec: Exec,
) -> Result<Vec<VerificationReport>, HarnessError> {
    let mut reports: Vec<VerificationReport> = match claim {
        Claim::PbZero => {
            let ns: Vec<usize> = (1..=budget.series_max).collect();
            exec.map(&ns, |&n| verify_pb_zero(n))
                .into_iter()
                .collect::<Result<_, _>>()?
        }
        Claim::Thm1 => {
            let series: Vec<usize> = (0..=budget.series_max.min(16)).collect();
            let mut out: Vec<VerificationReport> = exec
                .map(&series, |&n| verify_thm_identity(n, Source::Series, exec))
                .into_iter()
                .collect::<Result<_, _>>()?;
            let enumerated: Vec<usize> = (0..=budget.sum_weight as usize).collect();
            out.extend(
                exec.map(&enumerated, |&n| {
                    verify_thm_identity(n, Source::Enumeration, exec)
                })
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?,
            );
            out
        }
        Claim::Thm2 => exec
            .map(&budget.sum_cells(), |&(n, m)| {
                verify_thm_identity2(n, m, Source::Enumeration, exec)
            })
            .into_iter()
            .collect::<Result<_, _>>()?,
        Claim::PropRec => {
            let cells: Vec<(u32, u32)> = budget
                .sum_cells()
                .into_iter()
                .filter(|&(n, _)| n >= 2)
                .collect();
            exec.map(&cells, |&(n, m)| verify_prop_rec(n, m, exec))
                .into_iter()
                .collect::<Result<_, _>>()?
        }
        Claim::Telescope => {
            let cells: Vec<(u32, u32)> = budget
                .sum_cells()
                .into_iter()
                .filter(|&(n, _)| n % 2 == 0)
                .collect();
            exec.map(&cells, |&(n, m)| verify_telescope(n, m, exec))
                .into_iter()
                .collect::<Result<_, _>>()?
        }
        Claim::Partition => exec
            .map(&budget.triples(), |&(k, n, m)| {
                verify_partition(k, n, m, exec)
            })
            .into_iter()
            .collect::<Result<_, _>>()?,
        Claim::Phi => exec.map(&budget.triples(), |&(k, n, m)| certify_phi(k, n, m, exec)),
        Claim::Psi => exec.map(&budget.triples(), |&(k, n, m)| certify_psi(k, n, m, exec)),
        Claim::Relabel => exec.map(&budget.triples(), |&(k, n, m)| {
            certify_relabel(k, n, m, exec)
        }),
        Claim::Prop1 => {
            let triples = budget.triples();
            let mut out = exec.map(&triples, |&(k, n, m)| certify_swap(k, n, m, exec));
            let pairs: Vec<(u32, u32)> = triples
                .iter()
                .filter(|t| t.2 == 0)
                .map(|t| (t.0, t.1))
                .collect();
            out.extend(exec.map(&pairs, |&(k, n)| certify_barred(k, n)));
            let ms: Vec<u32> = (0..=budget.cell_weight.min(4)).collect();
            out.extend(exec.map(&ms, |&m| certify_dumont(m)));
            out
        }
    };
    reports.sort_by_key(VerificationReport::sort_key);
    Ok(reports)
}

/// Human-readable table, one line per report.
pub fn format_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params: Vec<String> = r
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(
            out,
            "{status}  {:<10} {:<28} lhs={} rhs={} ({:.3}s){}",
            r.claim_id,
            params.join(" "),
            r.lhs,
            r.rhs,
            r.elapsed.as_secs_f64(),
            if r.counterexamples.is_empty() {
                String::new()
            } else {
                format!(" counterexamples={}", r.counterexamples.len())
            }
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_sides_and_counterexamples() {
        let r = VerificationReport::new("x", &[("n", 1)], 3.into(), 3.into());
        assert!(r.passed());
        let r = VerificationReport::new("x", &[], 3.into(), 4.into());
        assert!(!r.passed());
        let r = VerificationReport::new("x", &[], 3.into(), 3.into())
            .with_counterexamples(vec![serde_json::json!({"a": 1})]);
        assert!(!r.passed());
    }

    #[test]
    fn budget_cells() {
        let b = Budget::default();
        assert!(b.sum_cells().contains(&(8, 0)));
        assert!(b.sum_cells().contains(&(0, 4)));
        assert!(!b.sum_cells().contains(&(1, 4)));
        assert!(b.triples().iter().all(|&(k, n, m)| k + n + m <= 6));
        assert_eq!(b.triples().len(), 84);
    }

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(Claim::from_name(c.name()), Some(c));
        }
        assert_eq!(Claim::from_name("nope"), None);
    }

    #[test]
    fn json_line_shape() {
        let r = VerificationReport::new("thm1", &[("n", 2)], (-1).into(), (-1).into());
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(v["claim_id"], "thm1");
        assert_eq!(v["lhs"], "-1");
        assert_eq!(v["status"], "pass");
        assert!(v.get("terms").is_none());
    }
}
