//! S-permutation matrices: n² x n² permutation matrices with exactly one
//! 1 in every n x n block, and the bijection between them and Pi
//! matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pi::PiMatrix;
use crate::textgrid;

/// An n² x n² binary matrix with exactly one 1 per row, per column and
/// per n x n block.
///
/// The n⁴ bits are kept row-major in a packed word array (bit `i*n² + j`),
/// so disjointness of two matrices is a word-wise AND sweep.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SPermMatrixRepr", into = "SPermMatrixRepr")]
pub struct SPermMatrix {
    n: u32,
    words: Vec<u64>,
}

impl SPermMatrix {
    /// Validates a dense entry matrix (flat row-major, length n⁴).
    ///
    /// Entries other than 0 and 1 are a domain error, distinct from a
    /// plain `false` membership answer.
    pub fn from_dense(n: u32, entries: &[u32]) -> Result<Self> {
        if !is_s_permutation(entries, n)? {
            let reason =
                sperm_violation(entries, n).unwrap_or_else(|| "not an S-permutation matrix".into());
            return Err(Error::Invalid(reason));
        }
        let n2 = (n as usize) * (n as usize);
        let mut m = Self::zeroed(n);
        for (idx, &v) in entries.iter().enumerate() {
            if v == 1 {
                m.set_bit(idx / n2, idx % n2);
            }
        }
        Ok(m)
    }

    /// Validates a sparse list of 1-positions.
    pub fn from_ones(n: u32, ones: &[(u32, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let n2 = (n as usize) * (n as usize);
        let mut entries = vec![0u32; n2 * n2];
        for &(i, j) in ones {
            if i as usize >= n2 || j as usize >= n2 {
                return Err(Error::Invalid(format!(
                    "position ({i}, {j}) is outside the {n2} x {n2} grid"
                )));
            }
            entries[i as usize * n2 + j as usize] += 1;
        }
        Self::from_dense(n, &entries)
    }

    /// Packs 1-positions without membership validation. The caller must
    /// guarantee the result is a valid member; internal construction
    /// sites are covered by the surrounding algorithm's invariants.
    pub(crate) fn from_ones_unchecked(
        n: u32,
        ones: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut m = Self::zeroed(n);
        for (i, j) in ones {
            m.set_bit(i, j);
        }
        m
    }

    fn zeroed(n: u32) -> Self {
        let bits = (n as usize).pow(4);
        Self {
            n,
            words: vec![0u64; bits.div_ceil(64)],
        }
    }

    fn set_bit(&mut self, i: usize, j: usize) {
        let n2 = (self.n as usize) * (self.n as usize);
        let b = i * n2 + j;
        self.words[b / 64] |= 1u64 << (b % 64);
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Whether position `(i, j)` holds a 1.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        let n2 = (self.n as usize) * (self.n as usize);
        let b = i * n2 + j;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    /// The n² positions of the 1s, sorted by row.
    pub fn ones(&self) -> Vec<(u32, u32)> {
        let n2 = (self.n as usize) * (self.n as usize);
        let mut out = Vec::with_capacity(n2);
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = w * 64 + bits.trailing_zeros() as usize;
                out.push(((b / n2) as u32, (b % n2) as u32));
                bits &= bits - 1;
            }
        }
        out
    }

    /// Dense flat row-major 0/1 entries, length n⁴.
    pub fn to_dense(&self) -> Vec<u32> {
        let n2 = (self.n as usize) * (self.n as usize);
        let mut entries = vec![0u32; n2 * n2];
        for (i, j) in self.ones() {
            entries[i as usize * n2 + j as usize] = 1;
        }
        entries
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// 0/1 text grid; `separators` draws the block rulers.
    pub fn to_grid(&self, separators: bool) -> String {
        textgrid::format_square(&self.to_dense(), self.n as usize, separators)
    }

    pub fn to_csv(&self) -> String {
        let n2 = (self.n as usize) * (self.n as usize);
        textgrid::format_csv(&self.to_dense(), n2)
    }

    /// Parses a dense 0/1 grid (decoration tolerated).
    pub fn parse_text(text: &str) -> Result<Self> {
        let rows = textgrid::rows(text)?;
        let n = order_from_row_count(rows.len()).ok_or_else(|| {
            Error::Parse(format!("{} rows do not form an n² x n² grid", rows.len()))
        })?;
        let entries: Vec<u32> = rows.into_iter().flatten().collect();
        Self::from_dense(n, &entries)
    }
}

impl fmt::Display for SPermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid(false))
    }
}

/// Row count n² -> n, when the count is a perfect square.
fn order_from_row_count(rows: usize) -> Option<u32> {
    let n = (rows as f64).sqrt().round() as usize;
    (n >= 1 && n * n == rows).then_some(n as u32)
}

#[derive(Serialize, Deserialize)]
struct SPermMatrixRepr {
    n: u32,
    ones: Vec<(u32, u32)>,
}

impl TryFrom<SPermMatrixRepr> for SPermMatrix {
    type Error = Error;

    fn try_from(repr: SPermMatrixRepr) -> Result<Self> {
        SPermMatrix::from_ones(repr.n, &repr.ones)
    }
}

impl From<SPermMatrix> for SPermMatrixRepr {
    fn from(m: SPermMatrix) -> Self {
        Self {
            n: m.n,
            ones: m.ones(),
        }
    }
}

/// Block coordinates of a cell: block `(s, t)`, local offset `(k, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIndex {
    pub s: u32,
    pub t: u32,
    pub k: u32,
    pub l: u32,
}

impl BlockIndex {
    /// Splits global coordinates: `i = s*n + k`, `j = t*n + l`.
    pub fn from_global(i: u32, j: u32, n: u32) -> Self {
        Self {
            s: i / n,
            k: i % n,
            t: j / n,
            l: j % n,
        }
    }

    /// Recovers the global coordinates `(i, j)`.
    pub fn global(&self, n: u32) -> (u32, u32) {
        (self.s * n + self.k, self.t * n + self.l)
    }
}

/// Membership test on a dense binary candidate.
///
/// `Ok(true)` iff every row, every column and every block sums to 1;
/// shape mismatches are `Ok(false)`; entries outside `{0, 1}` are an
/// [`Error::NonBinaryEntry`]. Each scan exits on the first violation.
pub fn is_s_permutation(entries: &[u32], n: u32) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    let n = n as usize;
    let n2 = n * n;
    if entries.len() != n2 * n2 {
        return Ok(false);
    }
    for (idx, &v) in entries.iter().enumerate() {
        if v > 1 {
            return Err(Error::NonBinaryEntry {
                row: idx / n2,
                col: idx % n2,
                value: v,
            });
        }
    }
    for i in 0..n2 {
        let mut sum = 0;
        for j in 0..n2 {
            sum += entries[i * n2 + j];
            if sum > 1 {
                return Ok(false);
            }
        }
        if sum == 0 {
            return Ok(false);
        }
    }
    for j in 0..n2 {
        let mut sum = 0;
        for i in 0..n2 {
            sum += entries[i * n2 + j];
            if sum > 1 {
                return Ok(false);
            }
        }
        if sum == 0 {
            return Ok(false);
        }
    }
    for s in 0..n {
        for t in 0..n {
            let mut sum = 0;
            for k in 0..n {
                for l in 0..n {
                    sum += entries[(s * n + k) * n2 + (t * n + l)];
                }
            }
            if sum != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Names the first violated constraint, or `None` for a member.
pub fn sperm_violation(entries: &[u32], n: u32) -> Option<String> {
    if n == 0 {
        return Some("order must be at least 1".into());
    }
    let n = n as usize;
    let n2 = n * n;
    if entries.len() != n2 * n2 {
        return Some(format!(
            "expected {} entries for an {n2} x {n2} matrix, found {}",
            n2 * n2,
            entries.len()
        ));
    }
    for (idx, &v) in entries.iter().enumerate() {
        if v > 1 {
            return Some(format!(
                "entry at row {}, column {} is {v}; expected 0 or 1",
                idx / n2,
                idx % n2
            ));
        }
    }
    for i in 0..n2 {
        let sum: u32 = (0..n2).map(|j| entries[i * n2 + j]).sum();
        if sum != 1 {
            return Some(format!("row {i} holds {sum} ones, expected exactly 1"));
        }
    }
    for j in 0..n2 {
        let sum: u32 = (0..n2).map(|i| entries[i * n2 + j]).sum();
        if sum != 1 {
            return Some(format!("column {j} holds {sum} ones, expected exactly 1"));
        }
    }
    for s in 0..n {
        for t in 0..n {
            let sum: u32 = (0..n)
                .flat_map(|k| (0..n).map(move |l| (k, l)))
                .map(|(k, l)| entries[(s * n + k) * n2 + (t * n + l)])
                .sum();
            if sum != 1 {
                return Some(format!(
                    "block ({s}, {t}) holds {sum} ones, expected exactly 1"
                ));
            }
        }
    }
    None
}

/// Positionwise disjointness: no cell holds a 1 in both matrices.
pub fn disjoint_sperm(a: &SPermMatrix, b: &SPermMatrix) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::OrderMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(a.words.iter().zip(&b.words).all(|(x, y)| x & y == 0))
}

/// The value-pair table a Pi matrix feeds into the bijection: entry
/// `(s, t)` (row-major) is `(m[s][t], m[n+t][s])`, built in two passes
/// over the top and bottom halves.
pub fn block_value_pairs(m: &PiMatrix) -> Vec<(u32, u32)> {
    let n = m.n() as usize;
    let values = m.values();
    let mut top = vec![0u32; n * n];
    let mut bottom = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            top[i * n + j] = values[i * n + j];
        }
    }
    for i in 0..n {
        for j in 0..n {
            bottom[j * n + i] = values[(n + i) * n + j];
        }
    }
    top.into_iter().zip(bottom).collect()
}

/// The bijection from Pi matrices to S-permutation matrices.
///
/// Block `(s, t)` of the image holds its single 1 at global position
/// `(s*n + a - 1, t*n + b - 1)` where `(a, b)` is the value pair of
/// `(s, t)`. Always produces a valid member.
pub fn phi(m: &PiMatrix) -> SPermMatrix {
    let n = m.n() as usize;
    let pairs = block_value_pairs(m);
    let ones = (0..n).flat_map(|s| {
        let pairs = &pairs;
        (0..n).map(move |t| {
            let (a, b) = pairs[s * n + t];
            (s * n + a as usize - 1, t * n + b as usize - 1)
        })
    });
    SPermMatrix::from_ones_unchecked(m.n(), ones)
}

/// Inverse of [`phi`]: reads each block's single 1 at local offset
/// `(k, l)` and writes value `k + 1` at `(s, t)` and `l + 1` at
/// `(n + t, s)`.
pub fn phi_inverse(a: &SPermMatrix) -> PiMatrix {
    let n = a.n as usize;
    let mut values = vec![0u32; 2 * n * n];
    for (i, j) in a.ones() {
        let block = BlockIndex::from_global(i, j, a.n);
        let (s, t) = (block.s as usize, block.t as usize);
        values[s * n + t] = block.k + 1;
        values[(n + t) * n + s] = block.l + 1;
    }
    PiMatrix::new(a.n, values).expect("a valid S-permutation matrix maps to a valid Pi matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_of_order_four_violates_a_block() {
        let mut entries = vec![0u32; 16];
        for i in 0..4 {
            entries[i * 4 + i] = 1;
        }
        assert_eq!(is_s_permutation(&entries, 2), Ok(false));
        let reason = sperm_violation(&entries, 2).unwrap();
        assert!(reason.contains("block"), "{reason}");
    }

    #[test]
    fn all_zero_is_rejected() {
        assert_eq!(is_s_permutation(&[0; 16], 2), Ok(false));
        let reason = sperm_violation(&[0; 16], 2).unwrap();
        assert!(reason.contains("row 0"), "{reason}");
    }

    #[test]
    fn non_binary_entry_is_a_domain_error() {
        let mut entries = vec![0u32; 16];
        entries[5] = 2;
        assert_eq!(
            is_s_permutation(&entries, 2),
            Err(Error::NonBinaryEntry {
                row: 1,
                col: 1,
                value: 2
            })
        );
    }

    #[test]
    fn order_one_is_the_single_one() {
        assert_eq!(is_s_permutation(&[1], 1), Ok(true));
        let m = SPermMatrix::from_dense(1, &[1]).unwrap();
        assert_eq!(m.ones(), vec![(0, 0)]);
    }

    #[test]
    fn block_index_round_trips() {
        for n in 1..=4u32 {
            for i in 0..n * n {
                for j in 0..n * n {
                    let b = BlockIndex::from_global(i, j, n);
                    assert_eq!(b.global(n), (i, j));
                    assert!(b.k < n && b.l < n && b.s < n && b.t < n);
                }
            }
        }
    }

    #[test]
    fn disjointness_is_antireflexive_and_errors_on_order_mismatch() {
        let a = SPermMatrix::from_dense(1, &[1]).unwrap();
        assert_eq!(disjoint_sperm(&a, &a), Ok(false));
        let mut src = crate::rng::RandomSource::new(4);
        let b = phi(&crate::pi::random_pi(&mut src, 2).unwrap());
        assert_eq!(
            disjoint_sperm(&a, &b),
            Err(Error::OrderMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn phi_of_the_trivial_matrix() {
        let m = PiMatrix::new(1, vec![1, 1]).unwrap();
        let a = phi(&m);
        assert_eq!(a.ones(), vec![(0, 0)]);
        assert_eq!(phi_inverse(&a), m);
    }

    #[test]
    fn phi_output_is_always_a_member() {
        let mut src = crate::rng::RandomSource::new(21);
        for n in [2u32, 3, 4] {
            for _ in 0..200 {
                let m = crate::pi::random_pi(&mut src, n).unwrap();
                let a = phi(&m);
                assert_eq!(is_s_permutation(&a.to_dense(), n), Ok(true));
                assert_eq!(phi_inverse(&a), m);
            }
        }
    }

    #[test]
    fn grid_and_json_round_trip() {
        let mut src = crate::rng::RandomSource::new(33);
        let a = phi(&crate::pi::random_pi(&mut src, 2).unwrap());
        assert_eq!(SPermMatrix::parse_text(&a.to_grid(true)).unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        let back: SPermMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn sparse_constructor_rejects_non_members() {
        assert!(SPermMatrix::from_ones(2, &[(0, 0)]).is_err());
        assert!(SPermMatrix::from_ones(1, &[(5, 0)]).is_err());
        // duplicate position counts as a non-binary entry
        let dup = SPermMatrix::from_ones(1, &[(0, 0), (0, 0)]);
        assert_eq!(
            dup,
            Err(Error::NonBinaryEntry {
                row: 0,
                col: 0,
                value: 2
            })
        );
    }
}
