use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use super::{HarnessError, Source, SumTerm, VerificationReport};
use crate::combinat::count_mbarred;
use crate::numbers::{c_number, genocchi, poly_bernoulli_b, SignedCount};
use crate::par::Exec;

fn sign(power: u32) -> SignedCount {
    if power.is_multiple_of(2) {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// The summands `(-1)^j C_{n-j}^j(m)` for `j = 0..=n`.
///
/// Series mode reads `C_{n-j}^j` off the C-poly-Bernoulli numbers and only
/// exists for `m = 0`.
pub fn alternating_sum(
    n: u32,
    m: u32,
    source: Source,
    exec: Exec,
) -> Result<Vec<SumTerm>, HarnessError> {
    if source == Source::Series && m != 0 {
        return Err(HarnessError::Unsupported(format!(
            "no series for m-barred counts with m = {m}"
        )));
    }
    (0..=n)
        .map(|j| {
            let count = match source {
                Source::Enumeration => BigInt::from(count_mbarred(j, n - j, m, exec)),
                Source::Series => c_number((n - j) as usize, j as usize)?,
            };
            Ok(SumTerm::new(j as usize, count, source))
        })
        .collect()
}

fn total(terms: &[SumTerm]) -> SignedCount {
    terms.iter().map(SumTerm::signed).sum()
}

/// `sum_j (-1)^j B_{n-j}^{(-j)} = 0`, which holds for every `n >= 1`.
pub fn verify_pb_zero(n: usize) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let terms: Vec<SumTerm> = (0..=n)
        .map(|j| {
            let value = poly_bernoulli_b(n - j, -(j as i64));
            if !value.is_integer() {
                return Err(HarnessError::Number(
                    crate::numbers::NumberError::NonInteger {
                        family: "poly_bernoulli_b",
                        index: format!("n={},k=-{j}", n - j),
                        value,
                    },
                ));
            }
            Ok(SumTerm::new(j, value.to_integer(), Source::Series))
        })
        .collect::<Result<_, _>>()?;
    let mut report =
        VerificationReport::new("pb-zero", &[("n", n as i64)], total(&terms), BigInt::zero());
    report.terms = terms;
    Ok(report.timed(start))
}

/// `sum_j (-1)^j C_{n-j}^j = -G_{n+2}`.
pub fn verify_thm_identity(
    n: usize,
    source: Source,
    exec: Exec,
) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let terms = alternating_sum(n as u32, 0, source, exec)?;
    let rhs = -genocchi(n + 2)?;
    let mode = match source {
        Source::Enumeration => 0,
        Source::Series => 1,
    };
    let mut report = VerificationReport::new(
        "thm1",
        &[("n", n as i64), ("series", mode)],
        total(&terms),
        rhs,
    );
    report.terms = terms;
    Ok(report.timed(start))
}

/// `sum_j (-1)^j C_{n-j}^j(m) = (-1)^{m+1} G_{n+2m+2}`.
pub fn verify_thm_identity2(
    n: u32,
    m: u32,
    source: Source,
    exec: Exec,
) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let terms = alternating_sum(n, m, source, exec)?;
    let rhs = sign(m + 1) * genocchi((n + 2 * m + 2) as usize)?;
    let mut report = VerificationReport::new(
        "thm2",
        &[("m", m as i64), ("n", n as i64)],
        total(&terms),
        rhs,
    );
    report.terms = terms;
    Ok(report.timed(start))
}

/// `sum_j (-1)^j C_{n-j}^j(m) = -sum_j (-1)^j C_{n-2-j}^j(m+1)`, both sides
/// by enumeration.
pub fn verify_prop_rec(n: u32, m: u32, exec: Exec) -> Result<VerificationReport, HarnessError> {
    if n < 2 {
        return Err(HarnessError::InvalidArgument(format!(
            "prop-rec needs n >= 2, got {n}"
        )));
    }
    let start = Instant::now();
    let left = alternating_sum(n, m, Source::Enumeration, exec)?;
    let right = alternating_sum(n - 2, m + 1, Source::Enumeration, exec)?;
    let mut report = VerificationReport::new(
        "prop-rec",
        &[("m", m as i64), ("n", n as i64)],
        total(&left),
        -total(&right),
    );
    report.terms = left;
    Ok(report.timed(start))
}

/// Iterates the recursion from `(n, m)` down to `(0, m + n/2)`.
///
/// Every link of the chain is checked, the left side is compared with
/// `(-1)^{n/2} C_0^0(m + n/2)`, and that end value with the Genocchi side.
pub fn verify_telescope(n: u32, m: u32, exec: Exec) -> Result<VerificationReport, HarnessError> {
    if !n.is_multiple_of(2) {
        return Err(HarnessError::InvalidArgument(format!(
            "telescope needs even n, got {n}"
        )));
    }
    let start = Instant::now();
    let half = n / 2;
    let sums: Vec<SignedCount> = (0..=half)
        .map(|i| alternating_sum(n - 2 * i, m + i, Source::Enumeration, exec).map(|t| total(&t)))
        .collect::<Result<_, _>>()?;

    let mut counterexamples = Vec::new();
    for i in 0..half as usize {
        if sums[i] != -sums[i + 1].clone() {
            counterexamples.push(json!({
                "link": i,
                "n": n - 2 * i as u32,
                "m": m + i as u32,
                "sum": sums[i].to_string(),
                "next": sums[i + 1].to_string(),
            }));
        }
    }
    let end = BigInt::from(count_mbarred(0, 0, m + half, exec));
    let rhs = sign(half) * end.clone();
    let genocchi_side = sign(m + 1) * genocchi((n + 2 * m + 2) as usize)?;
    if rhs != genocchi_side {
        counterexamples.push(json!({
            "end": rhs.to_string(),
            "genocchi": genocchi_side.to_string(),
        }));
    }

    let mut report = VerificationReport::new(
        "telescope",
        &[("m", m as i64), ("n", n as i64)],
        sums[0].clone(),
        rhs,
    )
    .with_counterexamples(counterexamples);
    report
        .details
        .insert("chain_length".into(), half as i64 + 1);
    report
        .details
        .insert("end_count".into(), i64::try_from(&end).unwrap_or(i64::MAX));
    Ok(report.timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pb_zero_from_one() {
        assert!(!verify_pb_zero(0).unwrap().passed());
        for n in 1..=8 {
            assert!(verify_pb_zero(n).unwrap().passed(), "n={n}");
        }
    }

    #[test]
    fn thm_identity_small() {
        let r = verify_thm_identity(4, Source::Series, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, BigInt::from(3));
        let counts: Vec<_> = r.terms.iter().map(|t| t.count.clone()).collect();
        assert_eq!(counts, [1, 15, 31, 15, 1].map(BigInt::from));
        let e = verify_thm_identity(4, Source::Enumeration, Exec::Sequential).unwrap();
        assert_eq!((e.lhs, e.rhs), (r.lhs, r.rhs));
    }

    #[test]
    fn thm_identity2_examples() {
        let r = verify_thm_identity2(2, 1, Source::Enumeration, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, BigInt::from(-3));
        let r = verify_thm_identity2(0, 2, Source::Enumeration, Exec::Sequential).unwrap();
        assert_eq!(r.lhs, BigInt::from(3));
        assert!(r.passed());
        let r = verify_thm_identity2(3, 1, Source::Enumeration, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert!(r.lhs.is_zero());
        assert!(matches!(
            verify_thm_identity2(2, 1, Source::Series, Exec::Sequential),
            Err(HarnessError::Unsupported(_))
        ));
    }

    #[test]
    fn prop_rec_examples() {
        let r = verify_prop_rec(4, 0, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert_eq!(r.rhs, BigInt::from(3));
        assert!(verify_prop_rec(2, 1, Exec::Sequential).unwrap().passed());
        assert!(verify_prop_rec(1, 0, Exec::Sequential).is_err());
    }

    #[test]
    fn telescope_examples() {
        let r = verify_telescope(4, 0, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert_eq!(r.details["end_count"], 3);
        let r = verify_telescope(0, 3, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert_eq!(r.details["end_count"], 17);
        assert!(verify_telescope(3, 0, Exec::Sequential).is_err());
    }
}
