//! 2n x n matrices whose every row is a permutation of `{1, …, n}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{is_permutation, permutation_violation, random_permutation_direct};
use crate::rng::RandomSource;
use crate::textgrid;

/// A 2n x n matrix over `{1, …, n}` in which every row is a permutation.
///
/// Stored row-major as one flat sequence of `2n²` values; row `i`,
/// column `j` sits at index `i*n + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PiMatrixRepr", into = "PiMatrixRepr")]
pub struct PiMatrix {
    n: u32,
    values: Vec<u32>,
}

impl PiMatrix {
    /// Validates a flat row-major value sequence of length `2n²`.
    pub fn new(n: u32, values: Vec<u32>) -> Result<Self> {
        match pi_violation(&values, n) {
            None => Ok(Self { n, values }),
            Some(reason) => Err(Error::Invalid(reason)),
        }
    }

    /// Builds from explicit rows.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        if rows.is_empty() || !rows.len().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "a Pi matrix needs 2n rows, found {}",
                rows.len()
            )));
        }
        let n = (rows.len() / 2) as u32;
        let mut values = Vec::with_capacity(rows.len() * n as usize);
        for (i, row) in rows.iter().enumerate() {
            if row.len() as u32 != n {
                return Err(Error::Invalid(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::new(n, values)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Flat row-major values, length `2n²`.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Row `i` of the matrix, `0 <= i < 2n`.
    pub fn row(&self, i: usize) -> &[u32] {
        let n = self.n as usize;
        &self.values[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.values.chunks(self.n as usize)
    }

    /// Plain text: 2n lines of n whitespace-separated integers.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        textgrid::format_csv(&self.values, self.n as usize)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let rows = textgrid::rows(text)?;
        Self::from_rows(&rows)
    }
}

impl fmt::Display for PiMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct PiMatrixRepr {
    n: u32,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<PiMatrixRepr> for PiMatrix {
    type Error = Error;

    fn try_from(repr: PiMatrixRepr) -> Result<Self> {
        let m = PiMatrix::from_rows(&repr.rows)?;
        if m.n != repr.n {
            return Err(Error::Parse(format!(
                "declared n = {} but the rows describe n = {}",
                repr.n, m.n
            )));
        }
        Ok(m)
    }
}

impl From<PiMatrix> for PiMatrixRepr {
    fn from(m: PiMatrix) -> Self {
        Self {
            n: m.n,
            rows: m.rows().map(<[u32]>::to_vec).collect(),
        }
    }
}

/// Membership test on a flat candidate: `2n` rows, each a permutation.
///
/// Shape mismatches answer `false`.
pub fn is_pi(values: &[u32], n: u32) -> bool {
    if n == 0 || values.len() != 2 * (n as usize) * (n as usize) {
        return false;
    }
    values.chunks(n as usize).all(is_permutation)
}

/// Names the first violated constraint, or `None` for a member.
pub fn pi_violation(values: &[u32], n: u32) -> Option<String> {
    if n == 0 {
        return Some("order must be at least 1".into());
    }
    let expected = 2 * (n as usize) * (n as usize);
    if values.len() != expected {
        return Some(format!(
            "expected {expected} values for a 2n x n matrix at n = {n}, found {}",
            values.len()
        ));
    }
    for (i, row) in values.chunks(n as usize).enumerate() {
        if let Some(reason) = permutation_violation(row) {
            return Some(format!("row {i} is not a permutation: {reason}"));
        }
    }
    None
}

/// Draws a uniform random Pi matrix as 2n independent direct
/// permutations; every call succeeds on its first try.
pub fn random_pi(src: &mut RandomSource, n: u32) -> Result<PiMatrix> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut values = Vec::with_capacity(2 * (n as usize) * (n as usize));
    for _ in 0..2 * n {
        values.extend(random_permutation_direct(src, n)?.into_values());
    }
    Ok(PiMatrix { n, values })
}

/// Disjointness of two Pi matrices of equal order.
///
/// For every position `(s, t)` the ordered value pair
/// `(m[s][t], m[n+t][s])` is compared between the two matrices; the
/// matrices are disjoint when no position yields the same pair in both.
/// This pairing is exactly the one the Pi-to-S-permutation bijection
/// consumes, and the two notions of disjointness correspond under it.
pub fn disjoint_pi(c: &PiMatrix, d: &PiMatrix) -> Result<bool> {
    if c.n != d.n {
        return Err(Error::OrderMismatch {
            left: c.n,
            right: d.n,
        });
    }
    let n = c.n as usize;
    for s in 0..n {
        for t in 0..n {
            let top = s * n + t;
            let bottom = (n + t) * n + s;
            if c.values[top] == d.values[top] && c.values[bottom] == d.values[bottom] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_example() -> PiMatrix {
        PiMatrix::from_rows(&[
            vec![1, 3, 2],
            vec![2, 3, 1],
            vec![1, 2, 3],
            vec![3, 1, 2],
            vec![1, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap()
    }

    #[test]
    fn worked_example_is_a_member() {
        let p = paper_example();
        assert!(is_pi(p.values(), 3));
    }

    #[test]
    fn repeated_value_in_a_row_is_rejected() {
        let values = vec![1, 1, 2, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3];
        assert!(!is_pi(&values, 3));
        let reason = pi_violation(&values, 3).unwrap();
        assert!(reason.starts_with("row 0"), "{reason}");
    }

    #[test]
    fn order_one_is_the_all_ones_column() {
        assert!(is_pi(&[1, 1], 1));
        let mut src = RandomSource::new(1);
        let m = random_pi(&mut src, 1).unwrap();
        assert_eq!(m.values(), &[1, 1]);
    }

    #[test]
    fn shape_mismatch_is_false() {
        assert!(!is_pi(&[1, 2, 2, 1], 3));
        assert!(!is_pi(&[], 1));
    }

    #[test]
    fn random_pi_always_valid() {
        let mut src = RandomSource::new(11);
        for _ in 0..10_000 {
            let m = random_pi(&mut src, 3).unwrap();
            assert!(is_pi(m.values(), 3));
        }
    }

    #[test]
    fn disjointness_is_antireflexive() {
        let mut src = RandomSource::new(8);
        for n in 1..=4 {
            let m = random_pi(&mut src, n).unwrap();
            assert_eq!(disjoint_pi(&m, &m), Ok(false));
        }
    }

    #[test]
    fn order_mismatch_is_a_domain_error() {
        let mut src = RandomSource::new(8);
        let a = random_pi(&mut src, 2).unwrap();
        let b = random_pi(&mut src, 3).unwrap();
        assert_eq!(
            disjoint_pi(&a, &b),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn text_and_json_round_trip() {
        let p = paper_example();
        assert_eq!(PiMatrix::parse_text(&p.to_text()).unwrap(), p);
        let json = serde_json::to_string(&p).unwrap();
        let back: PiMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn invalid_json_rejected_on_parse() {
        let bad: std::result::Result<PiMatrix, _> =
            serde_json::from_str(r#"{"n":1,"rows":[[1],[2]]}"#);
        assert!(bad.is_err());
    }
}
