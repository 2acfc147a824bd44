use serde::{Deserialize, Serialize};

use super::{check_output, domain, locate, require_valid, BijectionError};
use crate::combinat::{Bar, Block, CallanPair, Color, Element, MBarredCallanSequence};

/// Output of [`psi_b`]: the blue element `m + 1` has become a blue bar, but
/// the red element `m + 1` is still inside a pair.
///
/// The wrapped sequence already carries the raised bar parameter `m + 1` and
/// `k - 1` blue elements, with `n` unchanged. It has one red bar fewer than
/// an (m+1)-barred sequence, so it never passes
/// [`MBarredCallanSequence::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PsiIntermediate(pub MBarredCallanSequence);

impl PsiIntermediate {
    /// Membership in the image of [`psi_b`], decided by pulling back and
    /// mapping forward again.
    pub fn check(&self) -> Result<(), BijectionError> {
        let pre = psi_b_inverse(self)?;
        if psi_b(&pre)? != *self {
            return Err(domain("not in the image of psi_b"));
        }
        Ok(())
    }
}

/// Which block of the intermediate form held the red element `m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PsiRCase {
    ExtraBlock,
    OrdinaryBlock,
}

impl PsiRCase {
    pub fn as_str(self) -> &'static str {
        match self {
            PsiRCase::ExtraBlock => "extra",
            PsiRCase::OrdinaryBlock => "ordinary",
        }
    }
}

/// Replaces `w1 ({m+1}, R) w2` by `w2 b_{m+1} w1` and sets the extra red
/// block to `R`.
pub fn psi_b(s: &MBarredCallanSequence) -> Result<PsiIntermediate, BijectionError> {
    require_valid(s)?;
    if s.k == 0 || s.n == 0 {
        return Err(domain("psi needs k >= 1 and n >= 1"));
    }
    if !s.in_barred_min_subset() {
        return Err(domain(
            "minimal blue element is not a barred singleton with empty extra red block",
        ));
    }
    let lowest = s.m + 1;
    let pos = s
        .elements
        .windows(2)
        .position(|w| {
            w[0].is_bar()
                && matches!(&w[1], Element::Pair(p) if !p.extra && p.blue.len() == 1 && p.blue.contains(&lowest))
        })
        .expect("membership checked")
        + 1;
    let w1_start = s.bar_run_before(pos);
    let w2_end = s.bar_run_after(pos + 1);

    let red = s.elements[pos].as_pair().expect("pair").red.clone();
    let mut segment: Vec<Element> = s.elements[pos + 1..w2_end].to_vec();
    segment.push(Element::Bar(Bar::blue(lowest)));
    segment.extend_from_slice(&s.elements[w1_start..pos]);

    let mut out = s.clone();
    out.elements.splice(w1_start..w2_end, segment);
    out.extra_pair_mut().red = red;
    out.m += 1;
    out.k -= 1;
    Ok(PsiIntermediate(out))
}

/// Inverse of [`psi_b`].
pub fn psi_b_inverse(x: &PsiIntermediate) -> Result<MBarredCallanSequence, BijectionError> {
    let x = &x.0;
    if x.m == 0 {
        return Err(domain(
            "intermediate form carries a blue bar labelled m >= 1",
        ));
    }
    let label = x.m;
    let pos = x
        .bar_position(Bar::blue(label))
        .ok_or_else(|| domain(format!("no blue bar labelled {label}")))?;
    if x.elements
        .last()
        .and_then(Element::as_pair)
        .is_none_or(|p| !p.extra)
    {
        return Err(domain("last element must be the extra pair"));
    }
    let red = x.extra_pair().red.clone();
    if red.is_empty() {
        return Err(domain(
            "extra red block of an intermediate form must be nonempty",
        ));
    }
    let w2_start = x.bar_run_before(pos);
    let w1_end = x.bar_run_after(pos + 1);
    if w1_end == pos + 1 {
        return Err(domain("blue bar must be followed by a bar"));
    }

    let mut segment: Vec<Element> = x.elements[pos + 1..w1_end].to_vec();
    segment.push(Element::Pair(CallanPair::ordinary([label].into(), red)));
    segment.extend_from_slice(&x.elements[w2_start..pos]);

    let mut out = x.clone();
    out.elements.splice(w2_start..w1_end, segment);
    out.extra_pair_mut().red = Block::new();
    out.m -= 1;
    out.k += 1;
    require_valid(&out).map_err(|e| domain(format!("preimage is invalid: {e}")))?;
    if !out.in_barred_min_subset() {
        return Err(domain("preimage is outside the |m+1 subset"));
    }
    Ok(out)
}

pub fn psi_r_case(x: &PsiIntermediate) -> Result<PsiRCase, BijectionError> {
    let x = &x.0;
    let pos = locate(x, Color::Red, x.m)?;
    Ok(if pos == x.extra_index() {
        PsiRCase::ExtraBlock
    } else {
        PsiRCase::OrdinaryBlock
    })
}

fn psi_r_unchecked(
    x: &PsiIntermediate,
) -> Result<(MBarredCallanSequence, PsiRCase), BijectionError> {
    let case = psi_r_case(x)?;
    let x = &x.0;
    let label = x.m;
    let pos = locate(x, Color::Red, label)?;
    let mut out = x.clone();
    out.n -= 1;
    match case {
        PsiRCase::ExtraBlock => {
            out.extra_pair_mut().red.remove(&label);
        }
        PsiRCase::OrdinaryBlock => {
            let extra_red = out.extra_pair().red.clone();
            let pair = out.elements[pos].as_pair_mut().expect("pair");
            let mut rest = std::mem::replace(&mut pair.red, extra_red);
            rest.remove(&label);
            out.extra_pair_mut().red = rest;
        }
    }
    out.elements.insert(pos, Element::Bar(Bar::red(label)));
    check_output(&out, "psi_r")?;
    Ok((out, case))
}

/// Turns the red element `m + 1` of an intermediate form into the red bar
/// `r_{m+1}`.
pub fn psi_r(x: &PsiIntermediate) -> Result<(MBarredCallanSequence, PsiRCase), BijectionError> {
    x.check()?;
    psi_r_unchecked(x)
}

/// Inverse of [`psi_r`]: the red bar `r_m` precedes either the extra pair or
/// an ordinary pair, which tells the two cases apart.
pub fn psi_r_inverse(
    t: &MBarredCallanSequence,
) -> Result<(PsiIntermediate, PsiRCase), BijectionError> {
    require_valid(t)?;
    if t.m == 0 {
        return Err(domain("psi images have m >= 1"));
    }
    let label = t.m;
    let pos = t
        .bar_position(Bar::red(label))
        .expect("valid sequences carry every bar");
    let mut out = t.clone();
    out.elements.remove(pos);
    out.n += 1;
    let case = if pos == out.extra_index() {
        out.extra_pair_mut().red.insert(label);
        PsiRCase::ExtraBlock
    } else {
        let mut extra_red = std::mem::take(&mut out.extra_pair_mut().red);
        extra_red.insert(label);
        let pair = out.elements[pos]
            .as_pair_mut()
            .expect("red bar r_m is followed by a pair");
        let hat = std::mem::replace(&mut pair.red, extra_red);
        out.extra_pair_mut().red = hat;
        PsiRCase::OrdinaryBlock
    };
    Ok((PsiIntermediate(out), case))
}

/// `psi = psi_r . psi_b`, from `C_n^k(m, *, |m+1)` to `C_{n-1}^{k-1}(m+1)`.
pub fn psi(s: &MBarredCallanSequence) -> Result<(MBarredCallanSequence, PsiRCase), BijectionError> {
    let x = psi_b(s)?;
    psi_r_unchecked(&x)
}

pub fn psi_inverse(
    t: &MBarredCallanSequence,
) -> Result<(MBarredCallanSequence, PsiRCase), BijectionError> {
    let (x, case) = psi_r_inverse(t)?;
    Ok((psi_b_inverse(&x)?, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_mbarred;
    use std::collections::HashSet;

    fn seq(text: &str) -> MBarredCallanSequence {
        text.parse().unwrap()
    }

    fn intermediate(text: &str) -> PsiIntermediate {
        PsiIntermediate(seq(text))
    }

    #[test]
    fn psi_b_worked_example() {
        let s = seq("(4,9) (58,25) r1 (2,347) b1 r0 (37,68) (6*,*)");
        assert!(s.is_valid());
        let x = psi_b(&s).unwrap();
        assert_eq!(
            x.0.to_string(),
            "(4,9) (58,25) b1 r0 b2 r1 (37,68) (6*,347*)"
        );
        assert_eq!((x.0.m, x.0.k, x.0.n), (2, 6, 8));
        assert_eq!(psi_b_inverse(&x).unwrap(), s);
    }

    #[test]
    fn psi_b_with_empty_right_run() {
        let s = seq("r0 (1,1) (2*,*)");
        let x = psi_b(&s).unwrap();
        assert_eq!(x.0.to_string(), "b1 r0 (2*,1*)");
        assert!(!x.0.extra_red_is_star_only());
    }

    #[test]
    fn psi_r_worked_examples() {
        let x = intermediate("(358,46) (29,35) b1 r0 (47,2) (6*,17*)");
        assert_eq!(psi_r_case(&x).unwrap(), PsiRCase::ExtraBlock);
        let (t, _) = psi_r(&x).unwrap();
        assert_eq!(t.to_string(), "(358,46) (29,35) b1 r0 (47,2) r1 (6*,7*)");

        let x = intermediate("(358,1) (29,35) b1 r0 (47,46) (6*,27*)");
        assert_eq!(psi_r_case(&x).unwrap(), PsiRCase::OrdinaryBlock);
        let (t, _) = psi_r(&x).unwrap();
        assert_eq!(t.to_string(), "r1 (358,27) (29,35) b1 r0 (47,46) (6*,*)");
        assert_eq!(psi_r_inverse(&t).unwrap().0, x);
    }

    #[test]
    fn psi_r_rejects_non_images() {
        let x = intermediate("(358,1) (29,35) r0 (47,46) (6*,27*)");
        assert!(psi_r(&x).is_err());
    }

    #[test]
    fn psi_outputs_validate_at_two_two() {
        let domain: Vec<_> = enumerate_mbarred(2, 2, 0)
            .filter(|s| s.in_barred_min_subset())
            .collect();
        let image: HashSet<_> = domain.iter().map(|s| psi(s).unwrap().0).collect();
        assert!(image.iter().all(|t| t.is_valid()));
        let target: HashSet<_> = enumerate_mbarred(1, 1, 1).collect();
        assert_eq!(domain.len(), 5);
        assert_eq!(image, target);
    }

    #[test]
    fn psi_roundtrip_small() {
        let domain: Vec<_> = enumerate_mbarred(1, 1, 0)
            .filter(|s| s.in_barred_min_subset())
            .collect();
        assert!(!domain.is_empty());
        for s in domain {
            let (t, case) = psi(&s).unwrap();
            let (back, inv_case) = psi_inverse(&t).unwrap();
            assert_eq!(back, s);
            assert_eq!(case, inv_case);
        }
    }

    #[test]
    fn psi_domain_errors() {
        let s = seq("r0 (1*,*)");
        assert!(psi(&s).is_err());
        let s = seq("r0 (*,1*)");
        assert!(psi(&s).is_err());
        let s = seq("r0 (1,1) (*,*)");
        assert!(psi_inverse(&s).is_err());
    }
}
