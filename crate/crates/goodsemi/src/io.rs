//! Plain-text formats for semigroups and for generator sets.
//!
//! A semigroup file lists the small elements together with the conductor:
//!
//! ```text
//! goodsemi 1
//! # optional comments
//! c 41 32
//! s 0 0
//! s 6 3
//! ```
//!
//! A generator file lists points of N² ∪ {(a,∞)} ∪ {(∞,b)}:
//!
//! ```text
//! goodsemi-gen 1
//! g 6 3
//! g 39 inf
//! g inf 12
//! ```
//!
//! Writers emit a canonical form: header first, the conductor line next,
//! records sorted, no comments. Parsing a written file reproduces the
//! data exactly, and rewriting reproduces the bytes.

use thiserror::Error;

use crate::point::{pt, ExtNat, Point};

pub const SEMIGROUP_HEADER: &str = "goodsemi 1";
pub const GENERATOR_HEADER: &str = "goodsemi-gen 1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header `{expected}`, found `{found}`")]
    BadHeader { line: usize, expected: &'static str, found: String },
    #[error("line {line}: unrecognized record `{found}`")]
    BadRecord { line: usize, found: String },
    #[error("line {line}: bad coordinate `{token}`")]
    BadCoordinate { line: usize, token: String },
    #[error("no conductor line `c x y` present")]
    MissingConductor,
    #[error("line {line}: second conductor line")]
    DuplicateConductor { line: usize },
    #[error("line {line}: a generator may have at most one infinite coordinate")]
    TwoInfinite { line: usize },
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn records(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_nat(line: usize, token: &str) -> Result<u64, ParseError> {
    token
        .parse::<u64>()
        .map_err(|_| ParseError::BadCoordinate { line, token: token.to_string() })
}

fn parse_ext(line: usize, token: &str) -> Result<ExtNat, ParseError> {
    if token == "inf" {
        Ok(ExtNat::Inf)
    } else {
        parse_nat(line, token).map(ExtNat::Fin)
    }
}

fn two_fields<'a>(line: usize, rest: &'a str, whole: &str) -> Result<(&'a str, &'a str), ParseError> {
    let mut it = rest.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(ParseError::BadRecord { line, found: whole.to_string() }),
    }
}

/// Parses a semigroup file into (small elements, conductor). The elements
/// are returned sorted and deduplicated; validation of the semigroup
/// axioms is a separate step.
pub fn parse_semigroup(src: &str) -> Result<(Vec<Point>, Point), ParseError> {
    let mut it = records(src);
    match it.next() {
        Some((_, l)) if l == SEMIGROUP_HEADER => {}
        Some((line, l)) => {
            return Err(ParseError::BadHeader {
                line,
                expected: SEMIGROUP_HEADER,
                found: l.to_string(),
            })
        }
        None => {
            return Err(ParseError::BadHeader {
                line: 1,
                expected: SEMIGROUP_HEADER,
                found: String::new(),
            })
        }
    }
    let mut conductor: Option<Point> = None;
    let mut small = Vec::new();
    for (line, l) in it {
        if let Some(rest) = l.strip_prefix("c ").or(if l == "c" { Some("") } else { None }) {
            if conductor.is_some() {
                return Err(ParseError::DuplicateConductor { line });
            }
            let (a, b) = two_fields(line, rest, l)?;
            conductor = Some(pt(parse_nat(line, a)?, parse_nat(line, b)?));
        } else if let Some(rest) = l.strip_prefix("s ").or(if l == "s" { Some("") } else { None }) {
            let (a, b) = two_fields(line, rest, l)?;
            small.push(pt(parse_nat(line, a)?, parse_nat(line, b)?));
        } else {
            return Err(ParseError::BadRecord { line, found: l.to_string() });
        }
    }
    let conductor = conductor.ok_or(ParseError::MissingConductor)?;
    small.sort();
    small.dedup();
    Ok((small, conductor))
}

/// Writes the canonical semigroup file for (small, conductor).
pub fn write_semigroup(small: &[Point], conductor: Point) -> String {
    let mut sorted: Vec<Point> = small.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = String::new();
    out.push_str(SEMIGROUP_HEADER);
    out.push('\n');
    out.push_str(&format!("c {} {}\n", conductor.x, conductor.y));
    for p in sorted {
        out.push_str(&format!("s {} {}\n", p.x, p.y));
    }
    out
}

/// Parses a generator file. Order and multiplicity are preserved; points
/// may have one infinite coordinate but not two.
pub fn parse_generators(src: &str) -> Result<Vec<Point>, ParseError> {
    let mut it = records(src);
    match it.next() {
        Some((_, l)) if l == GENERATOR_HEADER => {}
        Some((line, l)) => {
            return Err(ParseError::BadHeader {
                line,
                expected: GENERATOR_HEADER,
                found: l.to_string(),
            })
        }
        None => {
            return Err(ParseError::BadHeader {
                line: 1,
                expected: GENERATOR_HEADER,
                found: String::new(),
            })
        }
    }
    let mut gens = Vec::new();
    for (line, l) in it {
        let Some(rest) = l.strip_prefix("g ").or(if l == "g" { Some("") } else { None }) else {
            return Err(ParseError::BadRecord { line, found: l.to_string() });
        };
        let (a, b) = two_fields(line, rest, l)?;
        let p = Point::new(parse_ext(line, a)?, parse_ext(line, b)?);
        if p == Point::TOP {
            return Err(ParseError::TwoInfinite { line });
        }
        gens.push(p);
    }
    Ok(gens)
}

/// Writes the canonical generator file: sorted, deduplicated.
pub fn write_generators(gens: &[Point]) -> String {
    let mut sorted: Vec<Point> = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = String::new();
    out.push_str(GENERATOR_HEADER);
    out.push('\n');
    for p in sorted {
        out.push_str(&format!("g {} {}\n", p.x, p.y));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{col_ray, row_ray};

    #[test]
    fn semigroup_round_trip() {
        let small = vec![pt(0, 0), pt(2, 2), pt(3, 3), pt(4, 4)];
        let text = write_semigroup(&small, pt(4, 4));
        let (parsed, c) = parse_semigroup(&text).unwrap();
        assert_eq!(parsed, small);
        assert_eq!(c, pt(4, 4));
        assert_eq!(write_semigroup(&parsed, c), text);
    }

    #[test]
    fn comments_and_order_are_normalized() {
        let text = "goodsemi 1\n# a remark\ns 3 3\n\nc 3 3\ns 0 0\ns 3 3\n";
        let (small, c) = parse_semigroup(text).unwrap();
        assert_eq!(small, vec![pt(0, 0), pt(3, 3)]);
        assert_eq!(c, pt(3, 3));
    }

    #[test]
    fn generator_round_trip() {
        let gens = vec![pt(6, 3), col_ray(39), row_ray(12)];
        let text = write_generators(&gens);
        let parsed = parse_generators(&text).unwrap();
        let mut sorted = gens.clone();
        sorted.sort();
        assert_eq!(parsed, sorted);
        assert_eq!(write_generators(&parsed), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_semigroup("nonsense\n"),
            Err(ParseError::BadHeader {
                line: 1,
                expected: SEMIGROUP_HEADER,
                found: "nonsense".into()
            })
        );
        assert_eq!(
            parse_semigroup("goodsemi 1\ns 0 0\n"),
            Err(ParseError::MissingConductor)
        );
        assert_eq!(
            parse_semigroup("goodsemi 1\nc 1 1\nc 2 2\n"),
            Err(ParseError::DuplicateConductor { line: 3 })
        );
        assert_eq!(
            parse_semigroup("goodsemi 1\nc 1 1\ns 0 zero\n"),
            Err(ParseError::BadCoordinate { line: 3, token: "zero".into() })
        );
        assert_eq!(
            parse_semigroup("goodsemi 1\nc 1 1\nq 0 0\n"),
            Err(ParseError::BadRecord { line: 3, found: "q 0 0".into() })
        );
        assert_eq!(
            parse_generators("goodsemi-gen 1\ng inf inf\n"),
            Err(ParseError::TwoInfinite { line: 2 })
        );
        assert_eq!(
            parse_generators("goodsemi-gen 1\ng 1\n"),
            Err(ParseError::BadRecord { line: 2, found: "g 1".into() })
        );
    }
}
