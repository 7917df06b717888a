//! Matrix file formats: the dense text format and MacKay-style alist.

use std::fmt::Write as _;

use super::matrix::BinaryMatrix;
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a nonnegative integer, found {tok:?}")))
}

/// Dense format: a header line `m n`, then `m` lines of exactly `n` characters
/// from `{0, 1}`. Blank trailing lines are ignored.
pub fn parse_text(src: &str) -> Result<BinaryMatrix> {
    let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(perr(hl, "header must be \"m n\""));
    }
    let m = parse_usize(dims[0], hl)?;
    let n = parse_usize(dims[1], hl)?;
    let mut rows = Vec::with_capacity(m);
    for (ln, line) in lines {
        if rows.len() == m {
            if line.trim().is_empty() {
                continue;
            }
            return Err(perr(ln, format!("more than {m} rows")));
        }
        let row: Vec<u8> = line
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(perr(ln, format!("invalid character {other:?}"))),
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(perr(ln, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != m {
        return Err(perr(m + 1, format!("expected {m} rows, found {}", rows.len())));
    }
    BinaryMatrix::from_rows(&rows)
}

pub fn to_text(h: &BinaryMatrix) -> String {
    let mut out = String::with_capacity(h.m() * (h.n() + 1) + 16);
    writeln!(out, "{} {}", h.m(), h.n()).unwrap();
    for i in 0..h.m() {
        for j in 0..h.n() {
            out.push(if h.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Alist format:
///
/// ```text
/// N M                 columns, rows
/// max_col_deg max_row_deg
/// N column degrees
/// M row degrees
/// N lines: 1-based row indices of each column (0 = padding)
/// M lines: 1-based column indices of each row (0 = padding)
/// ```
///
/// The row lists are checked against the column lists when present.
pub fn parse_alist(src: &str) -> Result<BinaryMatrix> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next_nums = |what: &str| -> Result<(usize, Vec<usize>)> {
        let (ln, line) = lines.next().ok_or_else(|| perr(0, format!("missing {what}")))?;
        let nums = line.split_whitespace().map(|t| parse_usize(t, ln)).collect::<Result<Vec<_>>>()?;
        Ok((ln, nums))
    };
    let (ln, dims) = next_nums("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(perr(ln, "expected \"N M\""));
    };
    next_nums("maximum degrees")?;
    let (ln, col_deg) = next_nums("column degrees")?;
    if col_deg.len() != n {
        return Err(perr(ln, format!("expected {n} column degrees")));
    }
    let (ln, row_deg) = next_nums("row degrees")?;
    if row_deg.len() != m {
        return Err(perr(ln, format!("expected {m} row degrees")));
    }
    let mut ones = vec![vec![0u8; n]; m];
    for (j, &deg) in col_deg.iter().enumerate() {
        let (ln, list) = next_nums("column list")?;
        let idx: Vec<usize> = list.into_iter().filter(|&r| r != 0).collect();
        if idx.len() != deg {
            return Err(perr(ln, format!("column {} lists {} rows, degree says {deg}", j + 1, idx.len())));
        }
        for r in idx {
            if r > m {
                return Err(perr(ln, format!("row index {r} exceeds {m}")));
            }
            ones[r - 1][j] = 1;
        }
    }
    for (i, &deg) in row_deg.iter().enumerate() {
        let Ok((ln, list)) = next_nums("row list") else {
            break;
        };
        let mut idx: Vec<usize> = list.into_iter().filter(|&c| c != 0).collect();
        idx.sort_unstable();
        let expected: Vec<usize> = (0..n).filter(|&j| ones[i][j] == 1).map(|j| j + 1).collect();
        if idx.len() != deg || idx != expected {
            return Err(perr(ln, format!("row {} list disagrees with column lists", i + 1)));
        }
    }
    BinaryMatrix::from_rows(&ones)
}

pub fn to_alist(h: &BinaryMatrix) -> String {
    let cols = h.column_supports();
    let rows: Vec<Vec<usize>> = (0..h.m()).map(|i| h.row_support(i)).collect();
    let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_r = rows.iter().map(Vec::len).max().unwrap_or(0);
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "{} {}", h.n(), h.m()).unwrap();
    writeln!(out, "{max_c} {max_r}").unwrap();
    writeln!(out, "{}", join(&cols.iter().map(Vec::len).collect::<Vec<_>>())).unwrap();
    writeln!(out, "{}", join(&rows.iter().map(Vec::len).collect::<Vec<_>>())).unwrap();
    for (list, width) in cols.iter().map(|c| (c, max_c)).chain(rows.iter().map(|r| (r, max_r))) {
        let mut padded: Vec<usize> = list.iter().map(|x| x + 1).collect();
        // An empty list is written as a lone 0 so the line survives parsing.
        padded.resize(width.max(1), 0);
        writeln!(out, "{}", join(&padded)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE2: &str = "3 4\n0111\n0110\n1011\n";

    #[test]
    fn text_round_trip() {
        let h = parse_text(EXAMPLE2).unwrap();
        assert_eq!((h.m(), h.n()), (3, 4));
        assert!(h.get(2, 0) && !h.get(0, 0));
        assert_eq!(to_text(&h), EXAMPLE2);
    }

    #[test]
    fn text_rejects_bad_input() {
        assert!(matches!(parse_text("2 3\n101\n1x1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_text("2 3\n101\n").is_err());
        assert!(parse_text("2 3\n101\n11\n").is_err());
        assert!(parse_text("2 3\n101\n111\n000\n").is_err());
        assert!(parse_text("2\n").is_err());
        assert!(parse_text("").is_err());
        assert!(parse_text("0 3\n").is_err());
    }

    #[test]
    fn alist_round_trip() {
        let h = parse_text(EXAMPLE2).unwrap();
        let a = to_alist(&h);
        assert_eq!(parse_alist(&a).unwrap(), h);
    }

    #[test]
    fn alist_known_layout() {
        // 2x3 matrix [[1,1,0],[0,1,1]] with zero padding.
        let src = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        let h = parse_alist(src).unwrap();
        assert_eq!(to_text(&h), "2 3\n110\n011\n");
    }

    #[test]
    fn alist_detects_inconsistency() {
        let src = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 3\n2 3\n";
        assert!(parse_alist(src).is_err());
    }
}
