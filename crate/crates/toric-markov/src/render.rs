//! Textual binomial rendering over variables `x1..xn`.
//!
//! A move renders as `x^(u+) - x^(u-)`: exponent 1 omitted, zero exponents
//! omitted, factors joined with `*`, and a side with empty support rendered
//! as the constant `1`. The grammar is fixed so output can be parsed back.

use crate::error::{Error, Result};
use crate::moves::Move;

fn render_monomial(exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(format!("x{}", i + 1));
        } else {
            parts.push(format!("x{}^{}", i + 1, e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Render a move as a binomial string, positive part first.
pub fn render_binomial(m: &Move) -> String {
    format!(
        "{} - {}",
        render_monomial(&m.positive_part()),
        render_monomial(&m.negative_part())
    )
}

fn parse_monomial(text: &str, n: usize) -> Result<Vec<i64>> {
    let bad = |msg: String| Error::Parse {
        line: 1,
        col: 1,
        message: msg,
    };
    let mut exps = vec![0i64; n];
    let text = text.trim();
    if text == "1" {
        return Ok(exps);
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let rest = factor
            .strip_prefix('x')
            .ok_or_else(|| bad(format!("expected variable, found {factor:?}")))?;
        let (var, exp) = match rest.split_once('^') {
            Some((v, e)) => (v, e),
            None => (rest, "1"),
        };
        let var: usize = var
            .parse()
            .map_err(|_| bad(format!("bad variable index in {factor:?}")))?;
        if var == 0 || var > n {
            return Err(bad(format!("variable x{var} out of range 1..={n}")));
        }
        let exp: i64 = exp
            .parse()
            .map_err(|_| bad(format!("bad exponent in {factor:?}")))?;
        if exp < 1 {
            return Err(bad(format!("exponent must be positive in {factor:?}")));
        }
        exps[var - 1] += exp;
    }
    Ok(exps)
}

/// Parse a binomial string back to the exponent-difference vector.
pub fn parse_binomial(text: &str, n: usize) -> Result<Vec<i64>> {
    let (lhs, rhs) = text.split_once(" - ").ok_or(Error::Parse {
        line: 1,
        col: 1,
        message: "expected \"<monomial> - <monomial>\"".to_string(),
    })?;
    let pos = parse_monomial(lhs, n)?;
    let neg = parse_monomial(rhs, n)?;
    Ok(pos.iter().zip(&neg).map(|(p, m)| p - m).collect())
}
