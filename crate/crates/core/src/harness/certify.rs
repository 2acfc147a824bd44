use std::collections::HashSet;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use super::{HarnessError, VerificationReport, MAX_COUNTEREXAMPLES};
use crate::bijections::{
    phi, phi_inverse, psi, psi_inverse, relabel_max_min, relabel_min_max, PhiCase,
};
use crate::combinat::{
    barred_to_mbarred, dumont_to_mbarred, enumerate_callan, enumerate_dumont, enumerate_mbarred,
    for_each_mbarred, mbarred_to_barred, mbarred_to_dumont, swap_colors, BarredCallanSequence,
    MBarredCallanSequence,
};
use crate::numbers::{c_number, genocchi};
use crate::par::Exec;

fn failure<T: Serialize>(input: &T, reason: impl Into<String>) -> Value {
    json!({ "input": input, "reason": reason.into() })
}

fn params(k: u32, n: u32, m: u32) -> [(&'static str, i64); 3] {
    [("k", k as i64), ("m", m as i64), ("n", n as i64)]
}

/// Exhaustive check that `forward` is a bijection from `domain` onto
/// `codomain` with inverse `backward`.
///
/// Checks every image against the codomain, `backward . forward = id` on the
/// domain, `forward . backward = id` on the codomain, injectivity, and set
/// equality of image and codomain. `lhs` is the domain size and `rhs` the
/// codomain size.
fn certify_bijection<S, T, F, B>(
    claim: &str,
    parameters: &[(&str, i64)],
    domain: Vec<S>,
    codomain: Vec<T>,
    forward: F,
    backward: B,
    exec: Exec,
) -> VerificationReport
where
    S: Serialize + PartialEq + Sync + Send,
    T: Serialize + Eq + Hash + Sync + Send + Clone,
    F: Fn(&S) -> Result<T, String> + Sync + Send,
    B: Fn(&T) -> Result<S, String> + Sync + Send,
{
    let start = Instant::now();
    let target: HashSet<&T> = codomain.iter().collect();
    let mut bad = Vec::new();

    let images: Vec<Result<T, Value>> = exec.map(&domain, |s| {
        let t = forward(s).map_err(|e| failure(s, e))?;
        if !target.contains(&t) {
            return Err(failure(s, "image outside the codomain"));
        }
        match backward(&t) {
            Ok(back) if back == *s => Ok(t),
            Ok(_) => Err(failure(s, "inverse does not return the input")),
            Err(e) => Err(failure(s, format!("inverse failed on the image: {e}"))),
        }
    });
    let mut image = HashSet::with_capacity(images.len());
    for r in images {
        match r {
            Ok(t) => {
                if !image.insert(t.clone()) {
                    bad.push(json!({ "image": t, "reason": "two inputs share this image" }));
                }
            }
            Err(v) => bad.push(v),
        }
    }

    let reverse: Vec<Option<Value>> = exec.map(&codomain, |t| {
        let s = match backward(t) {
            Ok(s) => s,
            Err(e) => return Some(failure(t, e)),
        };
        match forward(&s) {
            Ok(again) if again == *t => None,
            Ok(_) => Some(failure(t, "forward map does not return the input")),
            Err(e) => Some(failure(
                t,
                format!("forward map failed on the preimage: {e}"),
            )),
        }
    });
    bad.extend(reverse.into_iter().flatten());
    if bad.is_empty() && image.len() != target.len() {
        bad.push(json!({ "reason": "image and codomain differ as sets" }));
    }

    let mut report = VerificationReport::new(
        claim,
        parameters,
        BigInt::from(domain.len()),
        BigInt::from(codomain.len()),
    )
    .with_counterexamples(bad);
    report.details.insert("domain".into(), domain.len() as i64);
    report.details.insert("image".into(), image.len() as i64);
    report.timed(start)
}

fn collect(
    k: u32,
    n: u32,
    m: u32,
    keep: impl Fn(&MBarredCallanSequence) -> bool,
) -> Vec<MBarredCallanSequence> {
    enumerate_mbarred(k, n, m).filter(keep).collect()
}

/// `phi` from `C_n^k(m, R*)` onto `C_{n-1}^{k+1}(m, *)` minus the `|m'`
/// subset. Also checks the two case-recovery predicates on every image.
pub fn certify_phi(k: u32, n: u32, m: u32, exec: Exec) -> VerificationReport {
    if n == 0 {
        let mut r =
            VerificationReport::new("phi", &params(k, n, m), BigInt::from(0), BigInt::from(0));
        r.details.insert("domain".into(), 0);
        return r;
    }
    let domain = collect(k, n, m, |s| !s.extra_red_is_star_only());
    let codomain = collect(k + 1, n - 1, m, |t| {
        t.extra_red_is_star_only() && !t.in_barred_max_subset()
    });
    let forward = |s: &MBarredCallanSequence| {
        let (t, case) = phi(s).map_err(|e| e.to_string())?;
        let pos = t
            .position_of(crate::combinat::Color::Blue, t.max_blue())
            .ok_or("new blue missing")?;
        let first = t
            .elements
            .iter()
            .position(|e| !e.is_bar())
            .expect("has a pair");
        let pair = t.elements[pos].as_pair().expect("pair");
        let in_first = pos == first;
        let single = !pair.extra && pair.blue.len() == 1;
        if in_first != matches!(case, PhiCase::A1 | PhiCase::A2)
            || single != matches!(case, PhiCase::A2 | PhiCase::B2)
        {
            return Err(format!(
                "case {} not recoverable from the image",
                case.as_str()
            ));
        }
        Ok(t)
    };
    let backward =
        |t: &MBarredCallanSequence| phi_inverse(t).map(|r| r.0).map_err(|e| e.to_string());
    certify_bijection(
        "phi",
        &params(k, n, m),
        domain,
        codomain,
        forward,
        backward,
        exec,
    )
}

/// `psi` from `C_n^k(m, *, |m+1)` onto `C_{n-1}^{k-1}(m+1)`.
pub fn certify_psi(k: u32, n: u32, m: u32, exec: Exec) -> VerificationReport {
    let domain = collect(k, n, m, MBarredCallanSequence::in_barred_min_subset);
    if k == 0 || n == 0 {
        let mut r = VerificationReport::new(
            "psi",
            &params(k, n, m),
            BigInt::from(domain.len()),
            BigInt::from(0),
        );
        r.details.insert("domain".into(), domain.len() as i64);
        return r;
    }
    let codomain: Vec<_> = enumerate_mbarred(k - 1, n - 1, m + 1).collect();
    let forward = |s: &MBarredCallanSequence| psi(s).map(|r| r.0).map_err(|e| e.to_string());
    let backward =
        |t: &MBarredCallanSequence| psi_inverse(t).map(|r| r.0).map_err(|e| e.to_string());
    certify_bijection(
        "psi",
        &params(k, n, m),
        domain,
        codomain,
        forward,
        backward,
        exec,
    )
}

/// The blue relabelling `m+k <-> m+1` from the `|m'` subset onto the `|m+1`
/// subset, checked as an involution.
pub fn certify_relabel(k: u32, n: u32, m: u32, exec: Exec) -> VerificationReport {
    let domain = collect(k, n, m, MBarredCallanSequence::in_barred_max_subset);
    let codomain = collect(k, n, m, MBarredCallanSequence::in_barred_min_subset);
    let forward = |s: &MBarredCallanSequence| relabel_max_min(s).map_err(|e| e.to_string());
    let backward = |t: &MBarredCallanSequence| relabel_min_max(t).map_err(|e| e.to_string());
    certify_bijection(
        "relabel",
        &params(k, n, m),
        domain,
        codomain,
        forward,
        backward,
        exec,
    )
}

/// Colour exchange from `C_n^k(m)` onto `C_k^n(m)`.
pub fn certify_swap(k: u32, n: u32, m: u32, exec: Exec) -> VerificationReport {
    let domain: Vec<_> = enumerate_mbarred(k, n, m).collect();
    let codomain: Vec<_> = enumerate_mbarred(n, k, m).collect();
    let check = |s: &MBarredCallanSequence| {
        let t = swap_colors(s);
        t.validate().map_err(|e| e.to_string())?;
        Ok(t)
    };
    certify_bijection(
        "prop1-swap",
        &params(k, n, m),
        domain,
        codomain,
        check,
        check,
        exec,
    )
}

/// Replacing `r0` by an unlabelled bar, from `C_n^k(0)` onto barred Callan
/// sequences. Both sides are also compared with `C_n^{(-k-1)}`.
pub fn certify_barred(k: u32, n: u32) -> VerificationReport {
    let domain: Vec<_> = enumerate_mbarred(k, n, 0).collect();
    let codomain: Vec<BarredCallanSequence> = enumerate_callan(k, n, 0)
        .flat_map(|c| {
            (0..c.pairs.len()).map(move |bar| BarredCallanSequence {
                bar,
                callan: c.clone(),
            })
        })
        .collect();
    let forward = |s: &MBarredCallanSequence| mbarred_to_barred(s).map_err(|e| e.to_string());
    let backward = |b: &BarredCallanSequence| barred_to_mbarred(b).map_err(|e| e.to_string());
    let mut report = certify_bijection(
        "prop1-barred",
        &[("k", k as i64), ("n", n as i64)],
        domain,
        codomain,
        forward,
        backward,
        Exec::Sequential,
    );
    match c_number(n as usize, k as usize) {
        Ok(c) if c == report.rhs => {}
        Ok(c) => {
            report = report.with_counterexamples(vec![
                json!({ "reason": "count differs from the series", "series": c.to_string() }),
            ])
        }
        Err(e) => report = report.with_counterexamples(vec![json!({ "reason": e.to_string() })]),
    }
    report
}

/// `C_0^0(m)` onto Dumont permutations of length `2m`, whose number is
/// `|G_{2m+2}|`.
pub fn certify_dumont(m: u32) -> VerificationReport {
    let domain: Vec<_> = enumerate_mbarred(0, 0, m).collect();
    let codomain = enumerate_dumont(2 * m).expect("even length");
    let forward = |s: &MBarredCallanSequence| mbarred_to_dumont(s).map_err(|e| e.to_string());
    let backward = |p: &_| dumont_to_mbarred(p).map_err(|e| e.to_string());
    let mut report = certify_bijection(
        "prop1-dumont",
        &[("m", m as i64)],
        domain,
        codomain,
        forward,
        backward,
        Exec::Sequential,
    );
    let g = genocchi(2 * m as usize + 2).map(|g| g.magnitude().clone());
    if g.as_ref()
        .map(|g| BigInt::from(g.clone()) != report.rhs)
        .unwrap_or(true)
    {
        report = report.with_counterexamples(vec![
            json!({ "reason": "Dumont count differs from |G_{2m+2}|" }),
        ]);
    }
    report
}

/// The three cells of `C_n^k(m)` from their defining predicates: disjoint,
/// exhaustive, summing to the total. For `m = 0` the total is also compared
/// with the series, and the emptiness facts for `k = 0` and `n = 0` are
/// asserted.
pub fn verify_partition(
    k: u32,
    n: u32,
    m: u32,
    exec: Exec,
) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let total = AtomicU64::new(0);
    let cells = [AtomicU64::new(0), AtomicU64::new(0), AtomicU64::new(0)];
    let bad = Mutex::new(Vec::new());
    for_each_mbarred(k, n, m, exec, |s| {
        total.fetch_add(1, Ordering::Relaxed);
        let star_only = s.extra_pair().red.is_empty();
        let barred_max = s.k >= 1 && s.has_barred_blue_singleton(s.m + s.k);
        let member = [
            !star_only,
            star_only && !barred_max,
            star_only && barred_max,
        ];
        for (cell, &inside) in cells.iter().zip(&member) {
            if inside {
                cell.fetch_add(1, Ordering::Relaxed);
            }
        }
        if member.iter().filter(|&&b| b).count() != 1 {
            let mut bad = bad.lock().expect("not poisoned");
            if bad.len() < MAX_COUNTEREXAMPLES {
                bad.push(failure(&s, "not in exactly one cell"));
            }
        }
    });
    let total = total.into_inner();
    let [nonempty, star, barred] = cells.map(AtomicU64::into_inner);
    let mut bad = bad.into_inner().expect("not poisoned");

    if k == 0 && n > 0 && star + barred != 0 {
        bad.push(json!({ "reason": "star-only cells must be empty for k = 0, n > 0" }));
    }
    if n == 0 && barred != 0 {
        bad.push(json!({ "reason": "the |m' cell must be empty for n = 0" }));
    }
    if m == 0 {
        let series = c_number(n as usize, k as usize)?;
        if series != BigInt::from(total) {
            bad.push(
                json!({ "reason": "total differs from the series", "series": series.to_string() }),
            );
        }
    }

    let mut report = VerificationReport::new(
        "partition",
        &params(k, n, m),
        BigInt::from(total),
        BigInt::from(nonempty + star + barred),
    )
    .with_counterexamples(bad);
    report
        .details
        .insert("extra_red_nonempty".into(), nonempty as i64);
    report.details.insert("star_only".into(), star as i64);
    report
        .details
        .insert("star_only_barred_max".into(), barred as i64);
    Ok(report.timed(start))
}
