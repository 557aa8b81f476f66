//! Exhaustive enumeration at tiny orders: the ground truth the
//! randomized generators and probability formulas are checked against.
//!
//! Every enumeration is deterministic (lexicographic over the underlying
//! representation), so reports reproduce byte for byte.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::pi::PiMatrix;
use crate::sperm::{disjoint_sperm, is_s_permutation, SPermMatrix};

/// Largest order enumerable as full permutation lists (8! = 40 320).
pub const MAX_PERMUTATION_ORDER: u32 = 8;
/// Largest order enumerable as full Pi-matrix lists (|Π₂| = 16).
pub const MAX_PI_ORDER: u32 = 2;
/// Largest order scannable for S-permutation matrices (2¹⁶ candidates).
pub const MAX_SPERM_ORDER: u32 = 2;
/// Largest order with an exhaustive Sudoku count (σ₂ = 288).
pub const MAX_SUDOKU_ORDER: u32 = 2;

/// Outcome of one exhaustive count against its closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub domain_name: String,
    pub count: u64,
    pub expected: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl EnumerationReport {
    fn new(domain_name: String, count: u64, expected: u64) -> Self {
        Self {
            domain_name,
            count,
            expected,
            matches: count == expected,
        }
    }
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n > cap {
        return Err(Error::AboveCap { n, cap });
    }
    Ok(())
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// All n! permutations of `{1, …, n}` in lexicographic order, n <= 8.
pub fn enum_permutations(n: u32) -> Result<Vec<Permutation>> {
    check_cap(n, MAX_PERMUTATION_ORDER)?;
    let mut current: Vec<u32> = (1..=n).collect();
    let mut out = Vec::with_capacity(factorial(n) as usize);
    loop {
        out.push(Permutation::new(current.clone()).expect("generated in order"));
        if !next_permutation(&mut current) {
            return Ok(out);
        }
    }
}

/// Advances to the lexicographic successor in place; false at the end.
fn next_permutation(values: &mut [u32]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let Some(pivot) = (0..n - 1).rev().find(|&i| values[i] < values[i + 1]) else {
        return false;
    };
    let successor = (pivot + 1..n)
        .rev()
        .find(|&i| values[i] > values[pivot])
        .expect("pivot has a successor");
    values.swap(pivot, successor);
    values[pivot + 1..].reverse();
    true
}

/// All (n!)^2n Pi matrices, lexicographic by rows, n <= 2.
pub fn enum_pi(n: u32) -> Result<Vec<PiMatrix>> {
    check_cap(n, MAX_PI_ORDER)?;
    let perms = enum_permutations(n)?;
    let row_count = 2 * n as usize;
    let total = perms.len().pow(row_count as u32);
    let mut out = Vec::with_capacity(total);
    let mut choice = vec![0usize; row_count];
    loop {
        let mut values = Vec::with_capacity(row_count * n as usize);
        for &c in &choice {
            values.extend_from_slice(perms[c].values());
        }
        out.push(PiMatrix::new(n, values).expect("rows are permutations"));
        // odometer, most significant row first
        let mut k = row_count;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if choice[k] + 1 < perms.len() {
                choice[k] += 1;
                choice[k + 1..].fill(0);
                break;
            }
        }
    }
}

/// All (n!)^2n S-permutation matrices, found by scanning every binary
/// n² x n² matrix, n <= 2.
pub fn enum_sperm(n: u32) -> Result<Vec<SPermMatrix>> {
    check_cap(n, MAX_SPERM_ORDER)?;
    let n2 = (n as usize) * (n as usize);
    let bits = n2 * n2;
    let mut out = Vec::new();
    let mut entries = vec![0u32; bits];
    for pattern in 0u64..(1 << bits) {
        for (k, e) in entries.iter_mut().enumerate() {
            *e = (pattern >> k & 1) as u32;
        }
        if is_s_permutation(&entries, n)? {
            out.push(SPermMatrix::from_dense(n, &entries)?);
        }
    }
    Ok(out)
}

/// Number of Sudoku matrices of order n, counted as ordered tuples of
/// n² pairwise-disjoint S-permutation matrices (with prefix pruning),
/// n <= 2. Each accepted tuple yields a distinct matrix by the weighted
/// sum, so the tuple count is the matrix count.
pub fn count_sudoku(n: u32) -> Result<u64> {
    check_cap(n, MAX_SUDOKU_ORDER)?;
    let members = enum_sperm(n)?;
    let depth = (n as usize) * (n as usize);
    fn extend(members: &[SPermMatrix], chosen: &mut Vec<usize>, depth: usize) -> u64 {
        if chosen.len() == depth {
            return 1;
        }
        let mut total = 0;
        for (idx, candidate) in members.iter().enumerate() {
            if chosen
                .iter()
                .all(|&c| disjoint_sperm(&members[c], candidate).unwrap_or(false))
            {
                chosen.push(idx);
                total += extend(members, chosen, depth);
                chosen.pop();
            }
        }
        total
    }
    Ok(extend(&members, &mut Vec::new(), depth))
}

/// What the `count` command can enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountDomain {
    Permutations,
    Pi,
    SPerm,
    Sudoku,
}

/// Runs one exhaustive count and pairs it with its closed form.
pub fn report(domain: CountDomain, n: u32) -> Result<EnumerationReport> {
    let pow2n = |base: u64| base.pow(2 * n);
    match domain {
        CountDomain::Permutations => Ok(EnumerationReport::new(
            format!("S_{n}"),
            enum_permutations(n)?.len() as u64,
            factorial(n),
        )),
        CountDomain::Pi => Ok(EnumerationReport::new(
            format!("Pi_{n}"),
            enum_pi(n)?.len() as u64,
            pow2n(factorial(n)),
        )),
        CountDomain::SPerm => Ok(EnumerationReport::new(
            format!("Sigma_{}", n * n),
            enum_sperm(n)?.len() as u64,
            pow2n(factorial(n)),
        )),
        CountDomain::Sudoku => {
            let expected = match n {
                1 => 1,
                2 => 288,
                _ => {
                    return Err(Error::AboveCap {
                        n,
                        cap: MAX_SUDOKU_ORDER,
                    })
                }
            };
            Ok(EnumerationReport::new(
                format!("sudoku_{n}"),
                count_sudoku(n)?,
                expected,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::is_permutation;
    use crate::pi::is_pi;

    #[test]
    fn permutation_lists_are_lexicographic_and_complete() {
        assert_eq!(enum_permutations(1).unwrap().len(), 1);
        let s3 = enum_permutations(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0].values(), &[1, 2, 3]);
        assert_eq!(s3[5].values(), &[3, 2, 1]);
        let s4 = enum_permutations(4).unwrap();
        assert_eq!(s4.len(), 24);
        let mut sorted = s4.clone();
        sorted.sort_by(|a, b| a.values().cmp(b.values()));
        assert_eq!(sorted, s4, "already in lexicographic order");
        for p in &s4 {
            assert!(is_permutation(p.values()));
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(enum_permutations(9), Err(Error::AboveCap { .. })));
        assert!(matches!(enum_pi(3), Err(Error::AboveCap { .. })));
        assert!(matches!(enum_sperm(3), Err(Error::AboveCap { .. })));
        assert!(matches!(count_sudoku(3), Err(Error::AboveCap { .. })));
        assert!(matches!(enum_pi(0), Err(Error::ZeroOrder)));
    }

    #[test]
    fn pi_enumeration_is_complete_and_distinct() {
        assert_eq!(enum_pi(1).unwrap().len(), 1);
        let pi2 = enum_pi(2).unwrap();
        assert_eq!(pi2.len(), 16);
        for m in &pi2 {
            assert!(is_pi(m.values(), 2));
        }
        let distinct: std::collections::HashSet<_> = pi2.iter().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn sperm_scan_finds_exactly_the_members() {
        assert_eq!(enum_sperm(1).unwrap().len(), 1);
        let sigma4 = enum_sperm(2).unwrap();
        assert_eq!(sigma4.len(), 16);
        let distinct: std::collections::HashSet<_> = sigma4.iter().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn sudoku_counts_match_the_known_values() {
        assert_eq!(count_sudoku(1).unwrap(), 1);
        assert_eq!(count_sudoku(2).unwrap(), 288);
    }

    #[test]
    fn reports_match_closed_forms() {
        for (domain, n, expected) in [
            (CountDomain::Permutations, 3, 6),
            (CountDomain::Pi, 2, 16),
            (CountDomain::SPerm, 2, 16),
            (CountDomain::Sudoku, 2, 288),
        ] {
            let r = report(domain, n).unwrap();
            assert_eq!(r.count, expected);
            assert!(r.matches, "{}", r.domain_name);
        }
    }

    #[test]
    fn report_serializes_with_match_key() {
        let r = report(CountDomain::SPerm, 2).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""match":true"#), "{json}");
    }
}
