//! Shared helpers for the plain-text matrix formats.
//!
//! The readers are deliberately forgiving: commas and pipes count as
//! separators and ruler lines made of `-` and `+` are skipped, so the
//! same parser accepts the bare, decorated and CSV layouts.

use crate::error::{Error, Result};

/// Splits a line into numeric tokens, ignoring decoration characters.
pub(crate) fn line_tokens(line: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for raw in line.split(|c: char| c.is_whitespace() || c == ',' || c == '|') {
        if raw.is_empty() || raw.chars().all(|c| c == '-' || c == '+') {
            continue;
        }
        let v = raw
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("not a non-negative integer: {raw:?}")))?;
        out.push(v);
    }
    Ok(out)
}

/// All numeric tokens in a text, in reading order.
pub(crate) fn tokens(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for line in text.lines() {
        out.extend(line_tokens(line)?);
    }
    Ok(out)
}

/// Non-empty data rows of a grid file (decoration-only lines dropped).
pub(crate) fn rows(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let row = line_tokens(line)?;
        if !row.is_empty() {
            out.push(row);
        }
    }
    Ok(out)
}

/// Renders a flat row-major `n2 x n2` matrix, optionally with the
/// block-separator decoration (`|` between block columns, dashed rules
/// between block rows).
pub(crate) fn format_square(values: &[u32], n: usize, separators: bool) -> String {
    let n2 = n * n;
    debug_assert_eq!(values.len(), n2 * n2);
    let width = values.iter().max().copied().unwrap_or(0).to_string().len();
    let mut out = String::new();
    for i in 0..n2 {
        if separators && i > 0 && i % n == 0 {
            let segment = "-".repeat(n * (width + 1) - 1);
            let rule = vec![segment; n].join("-+-");
            out.push_str(&rule);
            out.push('\n');
        }
        for j in 0..n2 {
            if j > 0 {
                out.push_str(if separators && j % n == 0 { " | " } else { " " });
            }
            out.push_str(&format!("{:>width$}", values[i * n2 + j]));
        }
        out.push('\n');
    }
    out
}

/// Renders the same matrix as CSV, one row per line.
pub(crate) fn format_csv(values: &[u32], columns: usize) -> String {
    let mut out = String::new();
    for row in values.chunks(columns) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_skip_decoration() {
        let text = "1 2 | 3 4\n----+----\n2,1,4,3\n";
        assert_eq!(tokens(text).unwrap(), vec![1, 2, 3, 4, 2, 1, 4, 3]);
        assert_eq!(rows(text).unwrap().len(), 2);
    }

    #[test]
    fn bad_token_is_parse_error() {
        assert!(matches!(tokens("1 x 3"), Err(Error::Parse(_))));
    }

    #[test]
    fn square_formatting_round_trips() {
        let values: Vec<u32> = (1..=16).map(|v| (v % 4) + 1).collect();
        let plain = format_square(&values, 2, false);
        let fancy = format_square(&values, 2, true);
        assert_eq!(tokens(&plain).unwrap(), values);
        assert_eq!(tokens(&fancy).unwrap(), values);
        assert!(fancy.contains('|'));
    }
}
