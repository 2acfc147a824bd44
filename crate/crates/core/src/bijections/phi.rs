use serde::{Deserialize, Serialize};

use super::{check_output, domain, locate, require_valid, BijectionError};
use crate::combinat::{Block, CallanPair, Color, Element, MBarredCallanSequence};

/// Where the maximal red element `m + n` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhiCase {
    /// Alone (besides the star) in the extra red block.
    A1,
    /// In the extra red block with other red elements.
    A2,
    /// Alone in an ordinary red block.
    B1,
    /// In an ordinary red block with other red elements.
    B2,
}

impl PhiCase {
    pub fn as_str(self) -> &'static str {
        match self {
            PhiCase::A1 => "A1",
            PhiCase::A2 => "A2",
            PhiCase::B1 => "B1",
            PhiCase::B2 => "B2",
        }
    }
}

pub fn phi_case(s: &MBarredCallanSequence) -> Result<PhiCase, BijectionError> {
    if s.n == 0 || s.extra_red_is_star_only() {
        return Err(domain("extra red block must hold a red element"));
    }
    let max_red = s.m + s.n;
    let pos = locate(s, Color::Red, max_red)?;
    let pair = s.elements[pos].as_pair().expect("located a pair");
    Ok(match (pair.extra, pair.red.len() == 1) {
        (true, true) => PhiCase::A1,
        (true, false) => PhiCase::A2,
        (false, true) => PhiCase::B1,
        (false, false) => PhiCase::B2,
    })
}

fn first_pair_index(s: &MBarredCallanSequence) -> usize {
    s.elements
        .iter()
        .position(|e| !e.is_bar())
        .expect("sequence has a pair")
}

fn pair_mut(s: &mut MBarredCallanSequence, index: usize) -> &mut CallanPair {
    s.elements[index]
        .as_pair_mut()
        .expect("index points at a pair")
}

/// Moves the pair at `pair_index` together with the bar run in front of it
/// to the start of the sequence.
fn move_group_to_front(s: &mut MBarredCallanSequence, pair_index: usize) {
    let start = s.bar_run_before(pair_index);
    let group: Vec<Element> = s.elements.drain(start..=pair_index).collect();
    s.elements.splice(0..0, group);
}

/// Removes the maximal red element `m + n` and adds the blue element
/// `m + k + 1`. Returns the image and the case that was applied.
pub fn phi(s: &MBarredCallanSequence) -> Result<(MBarredCallanSequence, PhiCase), BijectionError> {
    require_valid(s)?;
    let case = phi_case(s)?;
    let max_red = s.m + s.n;
    let new_blue = s.m + s.k + 1;

    let mut out = s.clone();
    out.k += 1;
    out.n -= 1;
    let extra_red = std::mem::take(&mut out.extra_pair_mut().red);

    match case {
        PhiCase::A1 => {
            let first = first_pair_index(&out);
            pair_mut(&mut out, first).blue.insert(new_blue);
        }
        PhiCase::A2 => {
            let mut rest = extra_red;
            rest.remove(&max_red);
            out.elements.insert(
                0,
                Element::Pair(CallanPair::ordinary([new_blue].into(), rest)),
            );
        }
        PhiCase::B1 => {
            let pos = locate(s, Color::Red, max_red)?;
            let next = pos
                + 1
                + out.elements[pos + 1..]
                    .iter()
                    .position(|e| !e.is_bar())
                    .expect("extra pair follows");
            pair_mut(&mut out, next).blue.insert(new_blue);
            pair_mut(&mut out, pos).red = extra_red;
            move_group_to_front(&mut out, pos);
        }
        PhiCase::B2 => {
            let pos = locate(s, Color::Red, max_red)?;
            let pair = pair_mut(&mut out, pos);
            let mut rest = std::mem::replace(&mut pair.red, extra_red);
            rest.remove(&max_red);
            out.elements.insert(
                pos + 1,
                Element::Pair(CallanPair::ordinary([new_blue].into(), rest)),
            );
            move_group_to_front(&mut out, pos);
        }
    }

    check_output(&out, "phi")?;
    if !out.extra_red_is_star_only() || out.in_barred_max_subset() {
        return Err(BijectionError::Consistency(format!(
            "phi image {out} outside the codomain"
        )));
    }
    Ok((out, case))
}

/// Inverse of [`phi`]. The case is read off two predicates: whether the
/// maximal blue element is in the first pair, and whether it is alone in
/// its block.
pub fn phi_inverse(
    t: &MBarredCallanSequence,
) -> Result<(MBarredCallanSequence, PhiCase), BijectionError> {
    require_valid(t)?;
    if t.k == 0 {
        return Err(domain("codomain sequences have at least one blue element"));
    }
    if !t.extra_red_is_star_only() {
        return Err(domain("extra red block must be {*}"));
    }
    if t.in_barred_max_subset() {
        return Err(domain("maximal blue element is a barred singleton"));
    }
    let max_blue = t.m + t.k;
    let restored_red = t.m + t.n + 1;
    let pos = locate(t, Color::Blue, max_blue)?;
    let first = first_pair_index(t);
    let pair = t.elements[pos].as_pair().expect("located a pair");
    let single = !pair.extra && pair.blue.len() == 1;
    let case = match (pos == first, single) {
        (true, false) => PhiCase::A1,
        (true, true) => PhiCase::A2,
        (false, false) => PhiCase::B1,
        (false, true) => PhiCase::B2,
    };

    let mut out = t.clone();
    out.k -= 1;
    out.n += 1;
    match case {
        PhiCase::A1 => {
            pair_mut(&mut out, pos).blue.remove(&max_blue);
            out.extra_pair_mut().red.insert(restored_red);
        }
        PhiCase::A2 => {
            let removed = out.elements.remove(pos);
            let mut red = removed.as_pair().expect("pair").red.clone();
            red.insert(restored_red);
            out.extra_pair_mut().red = red;
        }
        PhiCase::B1 | PhiCase::B2 => {
            let mut group: Vec<Element> = out.elements.drain(..=first).collect();
            let target = pos - group.len();
            let moved = group
                .last_mut()
                .and_then(Element::as_pair_mut)
                .expect("group ends with a pair");
            let extra_red = std::mem::take(&mut moved.red);
            if case == PhiCase::B1 {
                moved.red = Block::from([restored_red]);
                pair_mut(&mut out, target).blue.remove(&max_blue);
                let at = out.bar_run_before(target);
                out.elements.splice(at..at, group);
            } else {
                let removed = out.elements.remove(target);
                let mut red = removed.as_pair().expect("pair").red.clone();
                red.insert(restored_red);
                moved.red = red;
                out.elements.splice(target..target, group);
            }
            out.extra_pair_mut().red = extra_red;
        }
    }

    check_output(&out, "phi_inverse")?;
    if out.extra_red_is_star_only() {
        return Err(BijectionError::Consistency(format!(
            "phi_inverse image {out} has empty extra red block"
        )));
    }
    Ok((out, case))
}
