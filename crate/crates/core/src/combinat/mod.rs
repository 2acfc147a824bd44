//! Callan sequences, m-barred Callan sequences and Dumont permutations.
//!
//! Blocks are stored as plain integer sets. The stars of the extra pair are
//! implicit: an extra pair with empty stored blocks is `(*, *)`.
//!
//! The JSON form of an [`MBarredCallanSequence`] is
//! `{"m":..,"k":..,"n":..,"elements":[..]}` where each element is either
//! `{"bar":{"color":"blue"|"red","label":i}}` or
//! `{"pair":{"blue":[..],"red":[..],"extra":bool}}`, blocks sorted ascending.
//! [`MBarredCallanSequence::to_json`] emits it without whitespace.

mod dumont;
mod enumerate;
mod maps;
mod notation;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dumont::{enumerate_dumont, DumontPermutation};
pub use enumerate::{
    bar_arrangements, callan_sequences, count_mbarred, enumerate_callan, enumerate_mbarred,
    for_each_mbarred, BarArrangement,
};
pub use maps::{
    barred_to_mbarred, dumont_to_mbarred, mbarred_to_barred, mbarred_to_dumont, swap_colors,
    BarredCallanSequence,
};
pub use notation::ParseError;

pub type Block = BTreeSet<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid sequence: {0}")]
    Invalid(#[from] Violation),
}

/// A `(blue block, red block)` couple of a Callan sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CallanPair {
    pub blue: Block,
    pub red: Block,
    pub extra: bool,
}

impl CallanPair {
    pub fn ordinary(blue: Block, red: Block) -> Self {
        Self {
            blue,
            red,
            extra: false,
        }
    }

    pub fn extra(blue: Block, red: Block) -> Self {
        Self {
            blue,
            red,
            extra: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bar {
    pub color: Color,
    pub label: u32,
}

impl Bar {
    pub fn blue(label: u32) -> Self {
        Self {
            color: Color::Blue,
            label,
        }
    }

    pub fn red(label: u32) -> Self {
        Self {
            color: Color::Red,
            label,
        }
    }

    /// Whether `next` (a bar, or a Callan pair when `None`) may directly
    /// follow this bar. Only labels are compared.
    pub fn may_precede(&self, next: Option<&Bar>) -> bool {
        match (self.color, next) {
            (Color::Blue, Some(b)) => b.label < self.label,
            (Color::Blue, None) => false,
            (Color::Red, Some(b)) => b.label > self.label,
            (Color::Red, None) => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Bar(Bar),
    Pair(CallanPair),
}

impl Element {
    pub fn as_bar(&self) -> Option<&Bar> {
        match self {
            Element::Bar(b) => Some(b),
            Element::Pair(_) => None,
        }
    }

    pub fn as_pair(&self) -> Option<&CallanPair> {
        match self {
            Element::Pair(p) => Some(p),
            Element::Bar(_) => None,
        }
    }

    pub fn as_pair_mut(&mut self) -> Option<&mut CallanPair> {
        match self {
            Element::Pair(p) => Some(p),
            Element::Bar(_) => None,
        }
    }

    pub fn is_bar(&self) -> bool {
        matches!(self, Element::Bar(_))
    }
}

/// First rule an m-barred (or plain) Callan sequence breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("sequence is empty")]
    Empty,
    #[error("last element is not the extra pair")]
    LastNotExtraPair,
    #[error("{0} extra pairs, expected exactly one")]
    ExtraPairCount(usize),
    #[error("{color:?} bar label {label} out of range")]
    BarLabelOutOfRange { color: Color, label: u32 },
    #[error("{color:?} bar label {label} appears more than once")]
    DuplicateBar { color: Color, label: u32 },
    #[error("{color:?} bar label {label} is missing")]
    MissingBar { color: Color, label: u32 },
    #[error("ordinary pair at position {position} has an empty block")]
    EmptyOrdinaryBlock { position: usize },
    #[error("{color:?} element {element} outside the base set")]
    ElementOutOfRange { color: Color, element: u32 },
    #[error("{color:?} element {element} appears in more than one block")]
    DuplicateElement { color: Color, element: u32 },
    #[error("{color:?} element {element} is missing")]
    MissingElement { color: Color, element: u32 },
    #[error("bar at position {position} is followed by a forbidden element")]
    Adjacency { position: usize },
}

/// Checks that the pairs form a Callan sequence on the shifted base sets
/// `{shift+1..shift+k}` and `{shift+1..shift+n}`.
fn check_pairs<'a, I>(pairs: I, k: u32, n: u32, shift: u32) -> Result<(), Violation>
where
    I: IntoIterator<Item = (usize, &'a CallanPair)>,
{
    let mut seen_blue = BTreeSet::new();
    let mut seen_red = BTreeSet::new();
    let mut extras = 0;
    for (position, pair) in pairs {
        if pair.extra {
            extras += 1;
        } else if pair.blue.is_empty() || pair.red.is_empty() {
            return Err(Violation::EmptyOrdinaryBlock { position });
        }
        for (color, block, seen, size) in [
            (Color::Blue, &pair.blue, &mut seen_blue, k),
            (Color::Red, &pair.red, &mut seen_red, n),
        ] {
            for &element in block {
                if element <= shift || element > shift + size {
                    return Err(Violation::ElementOutOfRange { color, element });
                }
                if !seen.insert(element) {
                    return Err(Violation::DuplicateElement { color, element });
                }
            }
        }
    }
    if extras != 1 {
        return Err(Violation::ExtraPairCount(extras));
    }
    for (color, seen, size) in [(Color::Blue, &seen_blue, k), (Color::Red, &seen_red, n)] {
        if let Some(element) = (shift + 1..=shift + size).find(|e| !seen.contains(e)) {
            return Err(Violation::MissingElement { color, element });
        }
    }
    Ok(())
}

/// A `k x n` Callan sequence on the base sets shifted up by `shift`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CallanSequence {
    pub k: u32,
    pub n: u32,
    pub shift: u32,
    pub pairs: Vec<CallanPair>,
}

impl CallanSequence {
    pub fn validate(&self) -> Result<(), Violation> {
        match self.pairs.last() {
            None => return Err(Violation::Empty),
            Some(p) if !p.extra => return Err(Violation::LastNotExtraPair),
            Some(_) => {}
        }
        check_pairs(self.pairs.iter().enumerate(), self.k, self.n, self.shift)
    }

    pub fn ordinary_pairs(&self) -> usize {
        self.pairs.len() - 1
    }
}

/// Which cell of the three-way split of an m-barred set a sequence lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cell {
    /// The extra red block holds more than the star.
    ExtraRedNonempty,
    /// Extra red block is `{*}`, and the sequence is not in the next cell.
    StarOnly,
    /// Extra red block is `{*}` and the maximal blue element sits alone in an
    /// ordinary pair directly preceded by a bar.
    StarOnlyBarredMax,
}

/// Interleaving of `m` blue bars `1..=m`, `m + 1` red bars `0..=m` and the
/// pairs of a `k x n` Callan sequence shifted up by `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MBarredCallanSequence {
    pub m: u32,
    pub k: u32,
    pub n: u32,
    pub elements: Vec<Element>,
}

impl MBarredCallanSequence {
    pub fn validate(&self) -> Result<(), Violation> {
        match self.elements.last() {
            None => return Err(Violation::Empty),
            Some(Element::Pair(p)) if p.extra => {}
            Some(_) => return Err(Violation::LastNotExtraPair),
        }

        let mut blue = vec![false; self.m as usize + 1];
        let mut red = vec![false; self.m as usize + 1];
        for bar in self.elements.iter().filter_map(Element::as_bar) {
            let (seen, lowest) = match bar.color {
                Color::Blue => (&mut blue, 1),
                Color::Red => (&mut red, 0),
            };
            if bar.label < lowest || bar.label > self.m {
                return Err(Violation::BarLabelOutOfRange {
                    color: bar.color,
                    label: bar.label,
                });
            }
            if std::mem::replace(&mut seen[bar.label as usize], true) {
                return Err(Violation::DuplicateBar {
                    color: bar.color,
                    label: bar.label,
                });
            }
        }
        for (color, seen, lowest) in [(Color::Blue, &blue, 1), (Color::Red, &red, 0)] {
            if let Some(label) = (lowest..=self.m).find(|&l| !seen[l as usize]) {
                return Err(Violation::MissingBar { color, label });
            }
        }

        let pairs = self
            .elements
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_pair().map(|p| (i, p)));
        check_pairs(pairs, self.k, self.n, self.m)?;

        for (position, w) in self.elements.windows(2).enumerate() {
            if let Element::Bar(bar) = &w[0] {
                if !bar.may_precede(w[1].as_bar()) {
                    return Err(Violation::Adjacency { position });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The pairs in order, bars dropped.
    pub fn pairs(&self) -> impl Iterator<Item = &CallanPair> {
        self.elements.iter().filter_map(Element::as_pair)
    }

    pub fn callan(&self) -> CallanSequence {
        CallanSequence {
            k: self.k,
            n: self.n,
            shift: self.m,
            pairs: self.pairs().cloned().collect(),
        }
    }

    /// Index of the extra pair, assumed last.
    pub fn extra_index(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn extra_pair(&self) -> &CallanPair {
        self.elements
            .last()
            .and_then(Element::as_pair)
            .expect("sequence ends with the extra pair")
    }

    pub fn extra_pair_mut(&mut self) -> &mut CallanPair {
        self.elements
            .last_mut()
            .and_then(Element::as_pair_mut)
            .expect("sequence ends with the extra pair")
    }

    /// Element index of the pair whose `color` block contains `element`.
    pub fn position_of(&self, color: Color, element: u32) -> Option<usize> {
        self.elements.iter().position(|e| match e {
            Element::Pair(p) => match color {
                Color::Blue => p.blue.contains(&element),
                Color::Red => p.red.contains(&element),
            },
            Element::Bar(_) => false,
        })
    }

    /// Element index of the bar with this color and label.
    pub fn bar_position(&self, bar: Bar) -> Option<usize> {
        self.elements.iter().position(|e| e.as_bar() == Some(&bar))
    }

    /// Whether blue `element` is alone in an ordinary pair that is directly
    /// preceded by a bar.
    pub fn has_barred_blue_singleton(&self, element: u32) -> bool {
        self.elements.windows(2).any(|w| {
            w[0].is_bar()
                && matches!(&w[1], Element::Pair(p)
                    if !p.extra && p.blue.len() == 1 && p.blue.contains(&element))
        })
    }

    /// Largest blue element `m + k`.
    pub fn max_blue(&self) -> u32 {
        self.m + self.k
    }

    pub fn extra_red_is_star_only(&self) -> bool {
        self.extra_pair().red.is_empty()
    }

    /// Membership in the subset where the extra red block is `{*}` and the
    /// maximal blue element is a barred singleton.
    pub fn in_barred_max_subset(&self) -> bool {
        self.k >= 1
            && self.extra_red_is_star_only()
            && self.has_barred_blue_singleton(self.max_blue())
    }

    /// Same as [`Self::in_barred_max_subset`] for the minimal blue element.
    pub fn in_barred_min_subset(&self) -> bool {
        self.k >= 1 && self.extra_red_is_star_only() && self.has_barred_blue_singleton(self.m + 1)
    }

    pub fn classify(&self) -> Cell {
        if !self.extra_red_is_star_only() {
            Cell::ExtraRedNonempty
        } else if self.in_barred_max_subset() {
            Cell::StarOnlyBarredMax
        } else {
            Cell::StarOnly
        }
    }

    /// Start index of the maximal run of bars ending right before `index`.
    pub fn bar_run_before(&self, index: usize) -> usize {
        let mut start = index;
        while start > 0 && self.elements[start - 1].is_bar() {
            start -= 1;
        }
        start
    }

    /// End index (exclusive) of the maximal run of bars starting at `index`.
    pub fn bar_run_after(&self, index: usize) -> usize {
        let mut end = index;
        while end < self.elements.len() && self.elements[end].is_bar() {
            end += 1;
        }
        end
    }
}

impl fmt::Display for MBarredCallanSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        notation::write_elements(f, &self.elements)
    }
}

impl fmt::Display for CallanSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elements: Vec<Element> = self.pairs.iter().cloned().map(Element::Pair).collect();
        notation::write_elements(f, &elements)
    }
}
