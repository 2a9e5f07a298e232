//! Text notation for singularity multisets.
//!
//! ```text
//! list  := item ("," item)*      (empty input is the empty multiset)
//! item  := [count "x"] type
//! type  := "A" k | "D" k | "E" k | "1/" r "(" b1 "," b2 ")"
//! ```
//!
//! Whitespace is ignored everywhere; commas inside parentheses do not split
//! items.

use std::fmt;

use thiserror::Error;

use super::SingularityType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {token:?} at byte {offset}: {reason}")]
pub struct ParseError {
    pub token: String,
    pub offset: usize,
    pub reason: String,
}

impl ParseError {
    fn new(token: &str, offset: usize, reason: impl Into<String>) -> Self {
        ParseError {
            token: token.to_string(),
            offset,
            reason: reason.into(),
        }
    }
}

/// Splits on commas outside parentheses, returning `(byte offset, item)`.
fn split_items(text: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| ParseError::new(")", i, "unbalanced ')'"))?;
            }
            ',' if depth == 0 => {
                items.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ParseError::new(&text[start..], start, "unclosed '('"));
    }
    items.push((start, &text[start..]));
    Ok(items)
}

/// Parses one singularity type such as `A8`, `D4`, `E6` or `1/9(1,2)`.
pub fn parse_singularity(text: &str) -> Result<SingularityType, ParseError> {
    let offset = text.len() - text.trim_start().len();
    parse_type(text.trim(), offset)
}

fn parse_type(token: &str, offset: usize) -> Result<SingularityType, ParseError> {
    let compact: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| ParseError::new(token, offset, reason);
    let invalid = |e: super::CatalogError| ParseError::new(token, offset, e.to_string());

    let mut chars = compact.chars();
    match chars.next() {
        None => Err(err("empty singularity type")),
        Some(family @ ('A' | 'a' | 'D' | 'd' | 'E' | 'e')) => {
            let index: u32 = chars
                .as_str()
                .parse()
                .map_err(|_| err("expected a positive index after the family letter"))?;
            match family.to_ascii_uppercase() {
                'A' => SingularityType::a(index),
                'D' => SingularityType::d(index),
                _ => SingularityType::e(index),
            }
            .map_err(invalid)
        }
        Some(_) => {
            let rest = compact
                .strip_prefix("1/")
                .ok_or_else(|| err("expected Ak, Dk, Ek or 1/r(b1,b2)"))?;
            let (r, weights) = rest
                .split_once('(')
                .ok_or_else(|| err("expected '(' after the order"))?;
            let weights = weights
                .strip_suffix(')')
                .ok_or_else(|| err("expected ')' to close the weights"))?;
            let r: u32 = r
                .parse()
                .map_err(|_| err("order r must be a positive integer"))?;
            let (b1, b2) = weights
                .split_once(',')
                .ok_or_else(|| err("expected two weights b1,b2"))?;
            let b1: i64 = b1
                .parse()
                .map_err(|_| err("weight b1 must be an integer"))?;
            let b2: i64 = b2
                .parse()
                .map_err(|_| err("weight b2 must be an integer"))?;
            SingularityType::cyclic(r, b1, b2).map_err(invalid)
        }
    }
}

/// Parses a comma-separated multiset, expanding `Nx` multiplicities.
pub fn parse_singularity_list(text: &str) -> Result<Vec<SingularityType>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (start, raw) in split_items(text)? {
        let offset = start + (raw.len() - raw.trim_start().len());
        let item = raw.trim();
        if item.is_empty() {
            return Err(ParseError::new(raw, start, "empty item"));
        }

        let digits = item.bytes().take_while(u8::is_ascii_digit).count();
        let after_digits = item[digits..].trim_start();
        let (count, ty) = match after_digits.strip_prefix(['x', 'X', '×']) {
            Some(ty) if digits > 0 => {
                let count: usize = item[..digits]
                    .parse()
                    .map_err(|_| ParseError::new(item, offset, "multiplicity out of range"))?;
                if count == 0 {
                    return Err(ParseError::new(
                        item,
                        offset,
                        "multiplicity must be positive",
                    ));
                }
                let ty_offset =
                    offset + (item.len() - ty.len()) + (ty.len() - ty.trim_start().len());
                (count, parse_type(ty.trim(), ty_offset)?)
            }
            _ => (1, parse_type(item, offset)?),
        };
        out.extend(std::iter::repeat_n(ty, count));
    }
    Ok(out)
}

/// Inverse of [`parse_singularity_list`]; consecutive repeats are grouped as `Nx`.
pub fn format_singularity_list(sings: &[SingularityType]) -> String {
    struct Run(usize, SingularityType);
    impl fmt::Display for Run {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0 == 1 {
                write!(f, "{}", self.1)
            } else {
                write!(f, "{}x {}", self.0, self.1)
            }
        }
    }

    let mut runs: Vec<Run> = Vec::new();
    for &s in sings {
        match runs.last_mut() {
            Some(run) if run.1 == s => run.0 += 1,
            _ => runs.push(Run(1, s)),
        }
    }
    runs.iter()
        .map(Run::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
