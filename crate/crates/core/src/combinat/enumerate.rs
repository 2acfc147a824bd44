//! Exhaustive enumerators.
//!
//! Canonical order of Callan sequences: number of ordinary pairs ascending,
//! then the ordered blue partition lexicographically, then the ordered red
//! partition. An m-barred sequence is a Callan sequence (outer loop) together
//! with a bar arrangement (inner loop). Bar arrangements are produced by a
//! left-to-right backtracking search that at each slot first tries closing
//! the current group with the next pair, then bars by ascending label with
//! blue before red at equal labels.

use std::sync::Arc;

use super::{Bar, Block, CallanPair, CallanSequence, Element, MBarredCallanSequence};
use crate::par::Exec;

/// All ways to pick `parts` disjoint nonempty ordered blocks from `base`,
/// with the leftover elements returned as the extra block. Sorted by the
/// ordered block list.
fn ordered_partitions(base: &[u32], parts: usize) -> Vec<(Vec<Block>, Block)> {
    fn go(
        base: &[u32],
        i: usize,
        blocks: &mut Vec<Block>,
        rest: &mut Block,
        out: &mut Vec<(Vec<Block>, Block)>,
    ) {
        if i == base.len() {
            if blocks.iter().all(|b| !b.is_empty()) {
                out.push((blocks.clone(), rest.clone()));
            }
            return;
        }
        let empty_left = blocks.iter().filter(|b| b.is_empty()).count();
        if empty_left > base.len() - i {
            return;
        }
        let e = base[i];
        rest.insert(e);
        go(base, i + 1, blocks, rest, out);
        rest.remove(&e);
        for j in 0..blocks.len() {
            blocks[j].insert(e);
            go(base, i + 1, blocks, rest, out);
            blocks[j].remove(&e);
        }
    }

    let mut out = Vec::new();
    let mut blocks = vec![Block::new(); parts];
    go(base, 0, &mut blocks, &mut Block::new(), &mut out);
    out.sort();
    out
}

/// Every `k x n` Callan sequence on base sets shifted by `shift`, in
/// canonical order.
pub fn callan_sequences(k: u32, n: u32, shift: u32) -> Vec<CallanSequence> {
    let blue_base: Vec<u32> = (shift + 1..=shift + k).collect();
    let red_base: Vec<u32> = (shift + 1..=shift + n).collect();
    let mut out = Vec::new();
    for parts in 0..=k.min(n) as usize {
        let blues = ordered_partitions(&blue_base, parts);
        let reds = ordered_partitions(&red_base, parts);
        for (blue_blocks, blue_rest) in &blues {
            for (red_blocks, red_rest) in &reds {
                let mut pairs: Vec<CallanPair> = blue_blocks
                    .iter()
                    .zip(red_blocks)
                    .map(|(b, r)| CallanPair::ordinary(b.clone(), r.clone()))
                    .collect();
                pairs.push(CallanPair::extra(blue_rest.clone(), red_rest.clone()));
                out.push(CallanSequence { k, n, shift, pairs });
            }
        }
    }
    out
}

pub fn enumerate_callan(k: u32, n: u32, shift: u32) -> impl Iterator<Item = CallanSequence> {
    callan_sequences(k, n, shift).into_iter()
}

/// The bar runs in front of each pair: `groups[i]` precedes pair `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BarArrangement {
    pub groups: Vec<Vec<Bar>>,
}

/// All valid placements of the `2m + 1` bars in front of `pairs` pairs.
pub fn bar_arrangements(m: u32, pairs: usize) -> Vec<BarArrangement> {
    struct Search {
        bars: Vec<Bar>,
        used: Vec<bool>,
        remaining: usize,
        groups: Vec<Vec<Bar>>,
        out: Vec<BarArrangement>,
        pairs: usize,
    }

    impl Search {
        fn step(&mut self, prev: Option<Bar>) {
            let group = self.groups.len() - 1;
            if prev.is_none_or(|b| b.may_precede(None)) {
                if group + 1 == self.pairs {
                    if self.remaining == 0 {
                        self.out.push(BarArrangement {
                            groups: self.groups.clone(),
                        });
                    }
                } else {
                    self.groups.push(Vec::new());
                    self.step(None);
                    self.groups.pop();
                }
            }
            for i in 0..self.bars.len() {
                let bar = self.bars[i];
                if self.used[i] || !prev.is_none_or(|p| p.may_precede(Some(&bar))) {
                    continue;
                }
                self.used[i] = true;
                self.remaining -= 1;
                self.groups[group].push(bar);
                self.step(Some(bar));
                self.groups[group].pop();
                self.remaining += 1;
                self.used[i] = false;
            }
        }
    }

    if pairs == 0 {
        return Vec::new();
    }
    let mut bars = vec![Bar::red(0)];
    for label in 1..=m {
        bars.push(Bar::blue(label));
        bars.push(Bar::red(label));
    }
    let mut search = Search {
        used: vec![false; bars.len()],
        remaining: bars.len(),
        bars,
        groups: vec![Vec::new()],
        out: Vec::new(),
        pairs,
    };
    search.step(None);
    search.out
}

/// Bar arrangements for every pair count a `k x n` sequence can have.
struct ArrangementTable {
    by_pairs: Vec<Vec<BarArrangement>>,
}

impl ArrangementTable {
    fn new(m: u32, max_pairs: usize) -> Self {
        Self {
            by_pairs: (0..=max_pairs).map(|p| bar_arrangements(m, p)).collect(),
        }
    }

    fn get(&self, pairs: usize) -> &[BarArrangement] {
        &self.by_pairs[pairs]
    }
}

fn assemble(c: &CallanSequence, a: &BarArrangement, m: u32) -> MBarredCallanSequence {
    let bar_count: usize = a.groups.iter().map(Vec::len).sum();
    let mut elements = Vec::with_capacity(bar_count + c.pairs.len());
    for (group, pair) in a.groups.iter().zip(&c.pairs) {
        elements.extend(group.iter().copied().map(Element::Bar));
        elements.push(Element::Pair(pair.clone()));
    }
    MBarredCallanSequence {
        m,
        k: c.k,
        n: c.n,
        elements,
    }
}

/// Every m-barred Callan sequence of size `k x n`, in canonical order.
pub fn enumerate_mbarred(k: u32, n: u32, m: u32) -> impl Iterator<Item = MBarredCallanSequence> {
    let table = Arc::new(ArrangementTable::new(m, k.min(n) as usize + 1));
    callan_sequences(k, n, m).into_iter().flat_map(move |c| {
        let table = Arc::clone(&table);
        let len = table.get(c.pairs.len()).len();
        (0..len).map(move |i| assemble(&c, &table.get(c.pairs.len())[i], m))
    })
}

/// Visits every m-barred sequence, splitting the work over Callan sequences.
/// Visiting order is unspecified under [`Exec::Parallel`].
pub fn for_each_mbarred<F>(k: u32, n: u32, m: u32, exec: Exec, f: F)
where
    F: Fn(MBarredCallanSequence) + Sync + Send,
{
    let table = ArrangementTable::new(m, k.min(n) as usize + 1);
    let callans = callan_sequences(k, n, m);
    exec.sum(&callans, |c| {
        for a in table.get(c.pairs.len()) {
            f(assemble(c, a, m));
        }
        0
    });
}

/// Number of m-barred sequences of size `k x n`, obtained by building each one.
pub fn count_mbarred(k: u32, n: u32, m: u32, exec: Exec) -> u64 {
    let table = ArrangementTable::new(m, k.min(n) as usize + 1);
    let callans = callan_sequences(k, n, m);
    exec.sum(&callans, |c| {
        let mut count = 0;
        for a in table.get(c.pairs.len()) {
            std::hint::black_box(assemble(c, a, m));
            count += 1;
        }
        count
    })
}
