//! Matrix, move-list, and fiber-key parsing for the CLI and file inputs.
//!
//! The row-text grammar: rows separated by `;` or newlines, entries by commas
//! or whitespace. A leading `{` or `[` switches to JSON: either
//! `{"rows": [[...]]}` or a bare array of rows. Numbers are arbitrary
//! precision.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fiber::FiberKey;

fn perr(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

fn parse_entry(token: &str, line: usize, col: usize) -> Result<BigInt> {
    token
        .parse::<BigInt>()
        .map_err(|_| perr(line, col, format!("expected an integer, found {token:?}")))
}

fn split_rows(text: &str) -> Vec<(usize, &str)> {
    // Line numbers are 1-based and count physical newlines; `;` splits within
    // a line without advancing the line number.
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        for part in line.split(';') {
            if !part.trim().is_empty() {
                rows.push((lineno + 1, part));
            }
        }
    }
    rows
}

fn parse_row(line: usize, text: &str) -> Result<Vec<BigInt>> {
    let mut entries = Vec::new();
    let mut col = 1;
    for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if token.is_empty() {
            col += 1;
            continue;
        }
        entries.push(parse_entry(token, line, col)?);
        col += token.len() + 1;
    }
    if entries.is_empty() {
        return Err(perr(line, 1, "empty row"));
    }
    Ok(entries)
}

fn json_number_to_bigint(v: &serde_json::Value, what: &str) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| perr(1, 1, format!("{what} must be an integer, found {n}"))),
        other => Err(perr(
            1,
            1,
            format!("{what} must be a number, found {other}"),
        )),
    }
}

fn json_rows(value: &serde_json::Value) -> Result<Vec<Vec<BigInt>>> {
    let rows = match value {
        serde_json::Value::Object(map) => map
            .get("rows")
            .ok_or_else(|| perr(1, 1, "JSON matrix object needs a \"rows\" key"))?,
        arr @ serde_json::Value::Array(_) => arr,
        other => return Err(perr(1, 1, format!("expected JSON rows, found {other}"))),
    };
    let serde_json::Value::Array(rows) = rows else {
        return Err(perr(1, 1, "\"rows\" must be an array of arrays"));
    };
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let serde_json::Value::Array(entries) = row else {
            return Err(perr(1, 1, "each row must be an array"));
        };
        let mut r = Vec::with_capacity(entries.len());
        for e in entries {
            r.push(json_number_to_bigint(e, "matrix entry")?);
        }
        out.push(r);
    }
    Ok(out)
}

fn check_rectangular(rows: &[Vec<BigInt>]) -> Result<()> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let expected = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != expected {
            return Err(Error::RaggedRows {
                row: i,
                got: row.len(),
                expected,
            });
        }
    }
    Ok(())
}

/// Parse a matrix from row text or JSON into a rectangular integer array.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<BigInt>>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let rows = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| perr(e.line(), e.column(), e.to_string()))?;
        json_rows(&value)?
    } else {
        split_rows(trimmed)
            .into_iter()
            .map(|(line, row)| parse_row(line, row))
            .collect::<Result<Vec<_>>>()?
    };
    check_rectangular(&rows)?;
    Ok(rows)
}

/// Serialize a matrix in the JSON input schema; `parse_matrix` inverts this.
pub fn matrix_to_json(rows: &[Vec<BigInt>]) -> serde_json::Value {
    serde_json::json!({
        "rows": rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        serde_json::Value::Number(
                            v.to_string().parse().expect("integer is a valid number"),
                        )
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    })
}

/// Parse a list of move vectors (one per row, `n` entries each) from row
/// text or JSON (`{"moves": [[...]]}` or a bare array). Blank lines between
/// rows are ignored, so `bases --format rows` output parses directly.
pub fn parse_moves(text: &str, n: usize) -> Result<Vec<Vec<i64>>> {
    let trimmed = text.trim();
    let rows: Vec<Vec<BigInt>> = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| perr(e.line(), e.column(), e.to_string()))?;
        let rows = match &value {
            serde_json::Value::Object(map) => map
                .get("moves")
                .ok_or_else(|| perr(1, 1, "JSON move list needs a \"moves\" key"))?
                .clone(),
            arr @ serde_json::Value::Array(_) => arr.clone(),
            other => return Err(perr(1, 1, format!("expected JSON moves, found {other}"))),
        };
        json_rows(&serde_json::Value::Array(match rows {
            serde_json::Value::Array(a) => a,
            _ => return Err(perr(1, 1, "\"moves\" must be an array of arrays")),
        }))?
    } else if trimmed.is_empty() {
        Vec::new()
    } else {
        split_rows(trimmed)
            .into_iter()
            .map(|(line, row)| parse_row(line, row))
            .collect::<Result<Vec<_>>>()?
    };
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedRows {
                row: i,
                got: row.len(),
                expected: n,
            });
        }
        let mut z = Vec::with_capacity(n);
        for v in row {
            z.push(i64::try_from(v).map_err(|_| Error::Overflow {
                context: "reading a move entry",
            })?);
        }
        out.push(z);
    }
    Ok(out)
}

/// Parse a fiber key such as `3`, `1,0,2`, or `(1, 0, 2)`.
pub fn parse_key(text: &str, d: usize) -> Result<FiberKey> {
    let cleaned = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coords = parse_row(1, cleaned)?;
    if coords.len() != d {
        return Err(Error::KeyDimension {
            got: coords.len(),
            expected: d,
        });
    }
    Ok(FiberKey::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
        rows.iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn comma_row() {
        assert_eq!(
            ints(&parse_matrix("7,8,9,10").unwrap()),
            vec![vec![7, 8, 9, 10]]
        );
    }

    #[test]
    fn semicolon_and_whitespace() {
        assert_eq!(
            ints(&parse_matrix("1 0; 0 1").unwrap()),
            vec![vec![1, 0], vec![0, 1]]
        );
        assert_eq!(
            ints(&parse_matrix("1 2\n3 4").unwrap()),
            vec![vec![1, 2], vec![3, 4]]
        );
    }

    #[test]
    fn ragged_is_rejected() {
        let err = parse_matrix("1,2;3").unwrap_err();
        assert!(matches!(
            err,
            Error::RaggedRows {
                row: 1,
                got: 1,
                expected: 2
            }
        ));
    }

    #[test]
    fn garbage_has_position() {
        let err = parse_matrix("1 2\n3 x").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_object_and_bare_array() {
        let a = parse_matrix("{\"rows\": [[1,2],[3,4]]}").unwrap();
        let b = parse_matrix("[[1,2],[3,4]]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip() {
        let rows = parse_matrix("7,8,9,10").unwrap();
        let json = matrix_to_json(&rows).to_string();
        assert_eq!(parse_matrix(&json).unwrap(), rows);
    }

    #[test]
    fn big_entries_survive_json() {
        let huge = "123456789012345678901234567890";
        let rows = parse_matrix(&format!("{huge}, 1")).unwrap();
        let json = matrix_to_json(&rows).to_string();
        assert!(json.contains(huge));
        assert_eq!(parse_matrix(&json).unwrap(), rows);
    }

    #[test]
    fn moves_with_blank_separators() {
        let moves = parse_moves("2 -1 0\n\n3 0 -1\n", 3).unwrap();
        assert_eq!(moves, vec![vec![2, -1, 0], vec![3, 0, -1]]);
        assert!(parse_moves("2 -1", 3).is_err());
        assert!(parse_moves("", 3).unwrap().is_empty());
    }

    #[test]
    fn moves_in_json() {
        let moves = parse_moves("{\"moves\": [[2,-1,0],[3,0,-1]]}", 3).unwrap();
        assert_eq!(moves, vec![vec![2, -1, 0], vec![3, 0, -1]]);
        let moves = parse_moves("[[1,1,-1]]", 3).unwrap();
        assert_eq!(moves, vec![vec![1, 1, -1]]);
        assert!(parse_moves("{\"rows\": [[1,1,-1]]}", 3).is_err());
    }

    #[test]
    fn keys_parse_in_all_spellings() {
        let k = parse_key("3", 1).unwrap();
        assert_eq!(k, FiberKey::from_i64(&[3]));
        let k = parse_key("(1, 0, 2)", 3).unwrap();
        assert_eq!(k, FiberKey::from_i64(&[1, 0, 2]));
        assert!(parse_key("1,2", 3).is_err());
    }
}
