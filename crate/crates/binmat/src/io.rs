//! The point-set text format.
//!
//! ```text
//! # optional comments
//! dim 3
//! 100
//! 010
//! 110
//! ```
//!
//! Header `dim <n>`, then one line per point: exactly n characters over
//! {0,1}, leftmost character = coordinate 1. `#` starts a comment line;
//! blank lines are ignored. No duplicates, no all-zero line.
//! `parse(render(X)) = X` for every point set.

use crate::gf2::{Mask, MAX_DIM};
use crate::point_set::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: bad header (expected `dim <n>` with 1 <= n <= {MAX_DIM})")]
    BadHeader { line: usize },
    #[error("line {line}: expected {expected} characters, found {found}")]
    BadLineLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: the zero vector is not a valid point")]
    ZeroVector { line: usize },
    #[error("line {line}: duplicate vector")]
    DuplicateVector { line: usize },
    #[error("line {line}: invalid character {found:?} (expected 0 or 1)")]
    BadCharacter { line: usize, found: char },
}

/// Renders one point as a line of the text format: coordinate i at
/// character position i (1-based), i.e. bit i-1 of the mask.
pub fn render_point(mask: Mask, dim: usize) -> String {
    (0..dim)
        .map(|i| if mask & (1 << i) != 0 { '1' } else { '0' })
        .collect()
}

/// Canonical rendering: header plus the points in sorted order.
pub fn render(x: &PointSet) -> String {
    let mut out = format!("dim {}\n", x.dim());
    for p in x.iter() {
        out.push_str(&render_point(p, x.dim()));
        out.push('\n');
    }
    out
}

/// Parses the text format. Points are canonicalized (sorted) regardless of
/// input order; errors carry 1-based line numbers.
pub fn parse(text: &str) -> Result<PointSet, ParseError> {
    let mut dim: Option<usize> = None;
    let mut points: Vec<Mask> = Vec::new();
    let mut header_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match dim {
            None => {
                let n = line
                    .strip_prefix("dim")
                    .map(str::trim)
                    .and_then(|rest| rest.parse::<usize>().ok())
                    .filter(|&n| (1..=MAX_DIM).contains(&n))
                    .ok_or(ParseError::BadHeader { line: line_no })?;
                dim = Some(n);
                header_line = line_no;
            }
            Some(n) => {
                if line.chars().count() != n {
                    return Err(ParseError::BadLineLength {
                        line: line_no,
                        expected: n,
                        found: line.chars().count(),
                    });
                }
                let mut mask: Mask = 0;
                for (i, ch) in line.chars().enumerate() {
                    match ch {
                        '0' => {}
                        '1' => mask |= 1 << i,
                        other => {
                            return Err(ParseError::BadCharacter {
                                line: line_no,
                                found: other,
                            })
                        }
                    }
                }
                if mask == 0 {
                    return Err(ParseError::ZeroVector { line: line_no });
                }
                if points.contains(&mask) {
                    return Err(ParseError::DuplicateVector { line: line_no });
                }
                points.push(mask);
            }
        }
    }
    let dim = dim.ok_or(ParseError::BadHeader {
        line: header_line.max(1),
    })?;
    Ok(PointSet::new(dim, points).expect("validated during parse"))
}
