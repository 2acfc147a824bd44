//! Structural maps between subsets of m-barred Callan sequences.
//!
//! - [`phi`]: `C_n^k(m, R*) -> C_{n-1}^{k+1}(m, *) \ C_{n-1}^{k+1}(m, *, |m')`,
//!   removing the maximal red element and adding a new maximal blue one.
//! - [`relabel_max_min`]: exchanges the maximal and minimal blue labels,
//!   carrying the `|m'` subset onto the `|m+1` subset.
//! - [`psi`] `= psi_r . psi_b`: `C_n^k(m, *, |m+1) -> C_{n-1}^{k-1}(m+1)`,
//!   turning the minimal blue and red elements into bars labelled `m + 1`.
//!
//! All maps check their domain and validate their output; labels are kept
//! absolute throughout.

mod phi;
mod psi;

use thiserror::Error;

use crate::combinat::{Color, MBarredCallanSequence, Violation};

pub use phi::{phi, phi_case, phi_inverse, PhiCase};
pub use psi::{
    psi, psi_b, psi_b_inverse, psi_inverse, psi_r, psi_r_case, psi_r_inverse, PsiIntermediate,
    PsiRCase,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("input outside the domain: {0}")]
    Domain(String),
    #[error("input is not a valid m-barred Callan sequence: {0}")]
    InvalidInput(Violation),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

fn domain(msg: impl Into<String>) -> BijectionError {
    BijectionError::Domain(msg.into())
}

fn require_valid(s: &MBarredCallanSequence) -> Result<(), BijectionError> {
    s.validate().map_err(BijectionError::InvalidInput)
}

fn check_output(s: &MBarredCallanSequence, map: &str) -> Result<(), BijectionError> {
    s.validate().map_err(|v| {
        BijectionError::Consistency(format!("{map} produced an invalid sequence {s}: {v}"))
    })
}

fn swap_blue_labels(s: &MBarredCallanSequence, a: u32, b: u32) -> MBarredCallanSequence {
    let mut out = s.clone();
    for pair in out.elements.iter_mut().filter_map(|e| e.as_pair_mut()) {
        let has_a = pair.blue.remove(&a);
        let has_b = pair.blue.remove(&b);
        if has_a {
            pair.blue.insert(b);
        }
        if has_b {
            pair.blue.insert(a);
        }
    }
    out
}

/// Exchanges blue `m + k` and `m + 1` on the `|m'` subset.
pub fn relabel_max_min(s: &MBarredCallanSequence) -> Result<MBarredCallanSequence, BijectionError> {
    require_valid(s)?;
    if !s.in_barred_max_subset() {
        return Err(domain(
            "maximal blue element is not a barred singleton with empty extra red block",
        ));
    }
    let out = swap_blue_labels(s, s.m + s.k, s.m + 1);
    debug_assert!(out.in_barred_min_subset());
    Ok(out)
}

/// Inverse of [`relabel_max_min`]; the same label exchange on the `|m+1`
/// subset.
pub fn relabel_min_max(s: &MBarredCallanSequence) -> Result<MBarredCallanSequence, BijectionError> {
    require_valid(s)?;
    if !s.in_barred_min_subset() {
        return Err(domain(
            "minimal blue element is not a barred singleton with empty extra red block",
        ));
    }
    Ok(swap_blue_labels(s, s.m + s.k, s.m + 1))
}

/// Element index of the pair holding `element` of the given colour.
fn locate(s: &MBarredCallanSequence, color: Color, element: u32) -> Result<usize, BijectionError> {
    s.position_of(color, element).ok_or_else(|| {
        BijectionError::Consistency(format!("{color:?} element {element} not found in {s}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_mbarred;
    use std::collections::HashSet;

    #[test]
    fn relabel_is_identity_for_single_blue() {
        for s in enumerate_mbarred(1, 2, 1).filter(|s| s.in_barred_max_subset()) {
            assert_eq!(relabel_max_min(&s).unwrap(), s);
        }
    }

    #[test]
    fn relabel_swaps_labels() {
        let s: MBarredCallanSequence = "r0 (2,1) (1*,*)".parse().unwrap();
        let t = relabel_max_min(&s).unwrap();
        assert_eq!(t.to_string(), "r0 (1,1) (2*,*)");
        assert_eq!(relabel_min_max(&t).unwrap(), s);
        assert!(relabel_max_min(&t).is_err());
    }

    #[test]
    fn relabel_is_a_bijection_at_two_two() {
        let max: Vec<_> = enumerate_mbarred(2, 2, 0)
            .filter(|s| s.in_barred_max_subset())
            .collect();
        let min: HashSet<_> = enumerate_mbarred(2, 2, 0)
            .filter(|s| s.in_barred_min_subset())
            .collect();
        let image: HashSet<_> = max.iter().map(|s| relabel_max_min(s).unwrap()).collect();
        assert_eq!(image.len(), max.len());
        assert_eq!(image, min);
    }
}
