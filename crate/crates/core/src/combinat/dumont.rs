use std::fmt;

use serde::{Deserialize, Serialize};

use super::CombinatError;

/// Permutation of `1..=2n` in which every even value starts a descent and
/// every odd value starts an ascent or ends the word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DumontPermutation(Vec<u32>);

fn may_follow(prev: u32, next: u32) -> bool {
    if prev.is_multiple_of(2) {
        next < prev
    } else {
        next > prev
    }
}

impl DumontPermutation {
    pub fn new(values: Vec<u32>) -> Result<Self, CombinatError> {
        if !Self::is_dumont(&values) {
            return Err(CombinatError::InvalidArgument(format!(
                "{values:?} is not a Dumont permutation"
            )));
        }
        Ok(Self(values))
    }

    pub fn is_dumont(values: &[u32]) -> bool {
        let len = values.len() as u32;
        if !len.is_multiple_of(2) {
            return false;
        }
        let mut seen = vec![false; values.len() + 1];
        for &v in values {
            if v == 0 || v > len || std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        values.windows(2).all(|w| may_follow(w[0], w[1]))
            && values.last().is_none_or(|&v| v % 2 == 1)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DumontPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { " " } else { "" };
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

/// All Dumont permutations of length `two_n`, in lexicographic order.
pub fn enumerate_dumont(two_n: u32) -> Result<Vec<DumontPermutation>, CombinatError> {
    if !two_n.is_multiple_of(2) {
        return Err(CombinatError::InvalidArgument(format!(
            "length {two_n} is odd"
        )));
    }
    fn go(word: &mut Vec<u32>, used: &mut [bool], len: u32, out: &mut Vec<DumontPermutation>) {
        if word.len() as u32 == len {
            if word.last().is_none_or(|&v| v % 2 == 1) {
                out.push(DumontPermutation(word.clone()));
            }
            return;
        }
        for v in 1..=len {
            if used[v as usize] || !word.last().is_none_or(|&p| may_follow(p, v)) {
                continue;
            }
            used[v as usize] = true;
            word.push(v);
            go(word, used, len, out);
            word.pop();
            used[v as usize] = false;
        }
    }
    let mut out = Vec::new();
    go(
        &mut Vec::new(),
        &mut vec![false; two_n as usize + 1],
        two_n,
        &mut out,
    );
    Ok(out)
}
