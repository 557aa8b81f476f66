//! Permutations of `{1, …, n}` and the tuple space they live in.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// An ordered n-tuple holding each of `1..=n` exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermutationRepr", into = "PermutationRepr")]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates and wraps a value sequence.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        match permutation_violation(&values) {
            None => Ok(Self { values }),
            Some(reason) => Err(Error::Invalid(reason)),
        }
    }

    pub fn n(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// Parses a whitespace- or comma-separated value list.
    pub fn parse_text(text: &str) -> Result<Self> {
        Self::new(crate::textgrid::tokens(text)?)
    }

    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(is_permutation(&values));
        Self { values }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    n: u32,
    values: Vec<u32>,
}

impl TryFrom<PermutationRepr> for Permutation {
    type Error = Error;

    fn try_from(repr: PermutationRepr) -> Result<Self> {
        if repr.values.len() as u32 != repr.n {
            return Err(Error::Parse(format!(
                "declared n = {} but {} values given",
                repr.n,
                repr.values.len()
            )));
        }
        Permutation::new(repr.values)
    }
}

impl From<Permutation> for PermutationRepr {
    fn from(p: Permutation) -> Self {
        Self {
            n: p.n(),
            values: p.values,
        }
    }
}

/// An n-tuple over `{1, …, n}`, repeats allowed; the raw candidate space
/// that rejection sampling of permutations draws from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    values: Vec<u32>,
}

impl Tuple {
    /// Validates length >= 1 and every value in `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroOrder);
        }
        let n = values.len() as u32;
        for (pos, &v) in values.iter().enumerate() {
            if v < 1 || v > n {
                return Err(Error::Invalid(format!(
                    "position {pos} holds {v}, outside 1..={n}"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn n(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }
}

/// Checks whether `values` is a permutation of `{1, …, len}`.
///
/// Single pass over a counting vector of size `n + 1`; out-of-range and
/// repeated values simply answer `false`.
pub fn is_permutation(values: &[u32]) -> bool {
    let n = values.len();
    if n == 0 {
        return false;
    }
    let mut counts = vec![0u8; n + 1];
    for &v in values {
        let v = v as usize;
        if v < 1 || v > n {
            return false;
        }
        counts[v] += 1;
        if counts[v] > 1 {
            return false;
        }
    }
    true
}

/// Names the first constraint that stops `values` from being a
/// permutation, or `None` if it is one.
pub fn permutation_violation(values: &[u32]) -> Option<String> {
    let n = values.len();
    if n == 0 {
        return Some("empty sequence; a permutation needs n >= 1".into());
    }
    let mut first_seen = vec![usize::MAX; n + 1];
    for (pos, &v) in values.iter().enumerate() {
        let v = v as usize;
        if v < 1 || v > n {
            return Some(format!("position {pos} holds {v}, outside 1..={n}"));
        }
        if first_seen[v] != usize::MAX {
            return Some(format!(
                "value {v} repeats at positions {} and {pos}",
                first_seen[v]
            ));
        }
        first_seen[v] = pos;
    }
    None
}

/// Draws n independent uniform values from `{1, …, n}`.
pub fn random_tuple(src: &mut RandomSource, n: u32) -> Result<Tuple> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let values = (0..n).map(|_| src.bounded(n) + 1).collect();
    Ok(Tuple { values })
}

/// Draws a uniform random permutation directly, without rejection.
///
/// Works on a shrinking pool initialized to `1..=n`: each step picks a
/// uniform index into the remaining pool, emits that element and deletes
/// it (swap-with-last). Every call returns a valid permutation.
pub fn random_permutation_direct(src: &mut RandomSource, n: u32) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut pool: Vec<u32> = (1..=n).collect();
    let mut values = Vec::with_capacity(n as usize);
    for remaining in (1..=n).rev() {
        let idx = src.bounded(remaining) as usize;
        values.push(pool[idx]);
        pool.swap_remove(idx);
    }
    Ok(Permutation::from_values_unchecked(values))
}
