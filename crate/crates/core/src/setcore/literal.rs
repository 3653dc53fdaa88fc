//! The set literal format: comma-separated decimal integers with optional
//! whitespace, e.g. `0,2,3,4,7,11,12,14`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::setcore::IntSet;

/// Parses a set literal. Positions in errors are zero-based element indices.
/// An empty (or all-whitespace) literal is the empty set; braces around the
/// list are tolerated.
pub fn parse_set(literal: &str) -> Result<IntSet> {
    let body = literal.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .unwrap_or(body)
        .trim();
    if body.is_empty() {
        return Ok(IntSet::empty());
    }
    let values = body
        .split(',')
        .enumerate()
        .map(|(position, token)| {
            token
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::MalformedElement {
                    token: token.trim().to_string(),
                    position,
                })
        })
        .collect::<Result<Vec<i64>>>()?;
    IntSet::new(&values)
}

/// Parses a batch file: one literal per nonblank line; `#` starts a comment.
pub fn parse_set_lines(text: &str) -> Result<Vec<IntSet>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_set)
        .collect()
}

impl FromStr for IntSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_set(s)
    }
}
