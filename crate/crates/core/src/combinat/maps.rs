//! The three elementary encodings: colour exchange, the single-bar form for
//! `m = 0`, and Dumont permutations for `k = n = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    notation, Bar, CallanPair, CallanSequence, Color, CombinatError, DumontPermutation, Element,
    MBarredCallanSequence, Violation,
};

/// Exchanges the blue and red block of every pair. Both base sets start at
/// `m + 1`, so the result is a `n x k` sequence without any relabelling.
pub fn swap_colors(s: &MBarredCallanSequence) -> MBarredCallanSequence {
    let elements = s
        .elements
        .iter()
        .map(|e| match e {
            Element::Pair(p) => Element::Pair(CallanPair {
                blue: p.red.clone(),
                red: p.blue.clone(),
                extra: p.extra,
            }),
            bar => bar.clone(),
        })
        .collect();
    MBarredCallanSequence {
        m: s.m,
        k: s.n,
        n: s.k,
        elements,
    }
}

/// A Callan sequence with one unlabelled bar in front of pair `bar`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BarredCallanSequence {
    pub bar: usize,
    pub callan: CallanSequence,
}

impl BarredCallanSequence {
    pub fn validate(&self) -> Result<(), Violation> {
        self.callan.validate()?;
        if self.bar >= self.callan.pairs.len() {
            return Err(Violation::LastNotExtraPair);
        }
        Ok(())
    }
}

impl fmt::Display for BarredCallanSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.callan.pairs.iter().enumerate() {
            if i == self.bar {
                f.write_str("|")?;
            }
            notation::write_pair(f, p)?;
        }
        if self.bar >= self.callan.pairs.len() {
            f.write_str("|")?;
        }
        Ok(())
    }
}

/// Replaces the only bar `r0` of a 0-barred sequence by an unlabelled bar.
pub fn mbarred_to_barred(s: &MBarredCallanSequence) -> Result<BarredCallanSequence, CombinatError> {
    if s.m != 0 {
        return Err(CombinatError::InvalidArgument(format!(
            "expected m = 0, got m = {}",
            s.m
        )));
    }
    s.validate()?;
    let bar = s.elements.iter().take_while(|e| !e.is_bar()).count();
    Ok(BarredCallanSequence {
        bar,
        callan: s.callan(),
    })
}

pub fn barred_to_mbarred(b: &BarredCallanSequence) -> Result<MBarredCallanSequence, CombinatError> {
    if b.callan.shift != 0 {
        return Err(CombinatError::InvalidArgument(
            "barred sequences are unshifted".into(),
        ));
    }
    b.validate()?;
    let mut elements: Vec<Element> = b.callan.pairs.iter().cloned().map(Element::Pair).collect();
    elements.insert(b.bar, Element::Bar(Bar::red(0)));
    Ok(MBarredCallanSequence {
        m: 0,
        k: b.callan.k,
        n: b.callan.n,
        elements,
    })
}

/// Drops the trailing `r_m (*,*)` and reads blue `i` as `2i`, red `i` as
/// `2i + 1`.
pub fn mbarred_to_dumont(s: &MBarredCallanSequence) -> Result<DumontPermutation, CombinatError> {
    if s.k != 0 || s.n != 0 {
        return Err(CombinatError::InvalidArgument(format!(
            "expected k = n = 0, got k = {}, n = {}",
            s.k, s.n
        )));
    }
    s.validate()?;
    let bars = &s.elements[..s.elements.len() - 2];
    debug_assert_eq!(
        s.elements[s.elements.len() - 2].as_bar(),
        Some(&Bar::red(s.m))
    );
    let values = bars
        .iter()
        .filter_map(Element::as_bar)
        .map(|b| match b.color {
            Color::Blue => 2 * b.label,
            Color::Red => 2 * b.label + 1,
        })
        .collect();
    DumontPermutation::new(values)
}

pub fn dumont_to_mbarred(p: &DumontPermutation) -> Result<MBarredCallanSequence, CombinatError> {
    let m = (p.len() / 2) as u32;
    let mut elements: Vec<Element> = p
        .values()
        .iter()
        .map(|&v| {
            Element::Bar(if v % 2 == 0 {
                Bar::blue(v / 2)
            } else {
                Bar::red(v / 2)
            })
        })
        .collect();
    elements.push(Element::Bar(Bar::red(m)));
    elements.push(Element::Pair(CallanPair::extra(
        Default::default(),
        Default::default(),
    )));
    let s = MBarredCallanSequence {
        m,
        k: 0,
        n: 0,
        elements,
    };
    s.validate()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{enumerate_dumont, enumerate_mbarred};
    use std::collections::HashSet;

    #[test]
    fn swap_is_an_involution_and_changes_shape() {
        for s in enumerate_mbarred(2, 2, 1) {
            assert_eq!(swap_colors(&swap_colors(&s)), s);
        }
        for s in enumerate_mbarred(2, 1, 0) {
            let t = swap_colors(&s);
            assert_eq!((t.k, t.n), (1, 2));
            assert!(t.is_valid());
        }
    }

    #[test]
    fn barred_form() {
        let s: MBarredCallanSequence = "r0 (12*,1*)".parse().unwrap();
        let b = mbarred_to_barred(&s).unwrap();
        assert_eq!(b.to_string(), "|(12*,1*)");
        for s in enumerate_mbarred(2, 1, 0) {
            assert_eq!(
                barred_to_mbarred(&mbarred_to_barred(&s).unwrap()).unwrap(),
                s
            );
        }
        let bad = BarredCallanSequence {
            bar: 1,
            callan: b.callan.clone(),
        };
        assert!(barred_to_mbarred(&bad).is_err());
        assert_eq!(bad.to_string(), "(12*,1*)|");
        let s1: MBarredCallanSequence = "r0 b1 r1 (*,*)".parse().unwrap();
        assert!(mbarred_to_barred(&s1).is_err());
    }

    #[test]
    fn dumont_encoding() {
        let one: Vec<_> = enumerate_mbarred(0, 0, 1).collect();
        assert_eq!(one.len(), 1);
        assert_eq!(mbarred_to_dumont(&one[0]).unwrap().to_string(), "21");

        let images: HashSet<String> = enumerate_mbarred(0, 0, 2)
            .map(|s| mbarred_to_dumont(&s).unwrap().to_string())
            .collect();
        let want: HashSet<String> = ["2143", "3421", "4213"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(images, want);

        for s in enumerate_mbarred(0, 0, 3) {
            assert_eq!(
                dumont_to_mbarred(&mbarred_to_dumont(&s).unwrap()).unwrap(),
                s
            );
        }
        for p in enumerate_dumont(6).unwrap() {
            assert_eq!(
                mbarred_to_dumont(&dumont_to_mbarred(&p).unwrap()).unwrap(),
                p
            );
        }
        let s: MBarredCallanSequence = "r0 (1*,*)".parse().unwrap();
        assert!(mbarred_to_dumont(&s).is_err());
    }
}
