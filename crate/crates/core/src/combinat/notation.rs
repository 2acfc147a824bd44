//! Compact text notation, close to how the sequences are written by hand:
//! `b3 b2 r1 r2 (5,45) r3 (79,7) (4,6) b1 r0 (68*,*)`.
//!
//! `bI` / `rI` are blue / red bars with label `I`. A pair `(B,R)` lists its
//! elements digit by digit; a block containing a label above 9 separates its
//! elements with dots (`10.11*`, or `11.` for a lone label). A `*` in both
//! blocks marks the extra pair.
//! Parsing infers `m` from the blue bars and `k`, `n` from the element counts;
//! the result is not validated.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Bar, Block, CallanPair, Element, MBarredCallanSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse token {token:?}: {reason}")]
pub struct ParseError {
    pub token: String,
    pub reason: &'static str,
}

fn err(token: &str, reason: &'static str) -> ParseError {
    ParseError {
        token: token.to_string(),
        reason,
    }
}

fn parse_block(token: &str, text: &str) -> Result<(Block, bool), ParseError> {
    let star = text.contains('*');
    let body: String = text.chars().filter(|&c| c != '*').collect();
    let labels: Result<Block, _> = if body.contains('.') {
        body.split('.')
            .filter(|s| !s.is_empty())
            .map(str::parse::<u32>)
            .collect()
    } else {
        body.chars().map(|c| c.to_string().parse::<u32>()).collect()
    };
    let block = labels.map_err(|_| err(token, "block elements must be digits"))?;
    Ok((block, star))
}

fn parse_token(token: &str) -> Result<Element, ParseError> {
    if let Some(inner) = token.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (b, r) = inner
            .split_once(',')
            .ok_or_else(|| err(token, "pair needs a comma"))?;
        let (blue, blue_star) = parse_block(token, b)?;
        let (red, red_star) = parse_block(token, r)?;
        if blue_star != red_star {
            return Err(err(token, "the extra pair carries both stars"));
        }
        return Ok(Element::Pair(CallanPair {
            blue,
            red,
            extra: blue_star,
        }));
    }
    let (make, rest): (fn(u32) -> Bar, &str) = if let Some(rest) = token.strip_prefix('b') {
        (Bar::blue, rest)
    } else if let Some(rest) = token.strip_prefix('r') {
        (Bar::red, rest)
    } else {
        return Err(err(token, "expected a pair or a bar"));
    };
    let label = rest
        .parse()
        .map_err(|_| err(token, "bar label must be a number"))?;
    Ok(Element::Bar(make(label)))
}

impl FromStr for MBarredCallanSequence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let elements: Vec<Element> = s
            .split_whitespace()
            .map(parse_token)
            .collect::<Result<_, _>>()?;
        let mut m = 0;
        let mut k = 0;
        let mut n = 0;
        for e in &elements {
            match e {
                Element::Bar(b) if b.color == super::Color::Blue => m += 1,
                Element::Bar(_) => {}
                Element::Pair(p) => {
                    k += p.blue.len() as u32;
                    n += p.red.len() as u32;
                }
            }
        }
        Ok(MBarredCallanSequence { m, k, n, elements })
    }
}

fn write_block(f: &mut fmt::Formatter<'_>, block: &Block, star: bool) -> fmt::Result {
    let sep = if block.iter().any(|&e| e > 9) {
        "."
    } else {
        ""
    };
    let mut first = true;
    for e in block {
        if !first {
            f.write_str(sep)?;
        }
        write!(f, "{e}")?;
        first = false;
    }
    if sep == "." && block.len() == 1 {
        f.write_str(".")?;
    }
    if star {
        f.write_str("*")?;
    }
    Ok(())
}

pub(crate) fn write_pair(f: &mut fmt::Formatter<'_>, p: &CallanPair) -> fmt::Result {
    f.write_str("(")?;
    write_block(f, &p.blue, p.extra)?;
    f.write_str(",")?;
    write_block(f, &p.red, p.extra)?;
    f.write_str(")")
}

pub(crate) fn write_elements(f: &mut fmt::Formatter<'_>, elements: &[Element]) -> fmt::Result {
    for (i, e) in elements.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        match e {
            Element::Bar(b) => match b.color {
                super::Color::Blue => write!(f, "b{}", b.label)?,
                super::Color::Red => write!(f, "r{}", b.label)?,
            },
            Element::Pair(p) => write_pair(f, p)?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for text in [
            "b3 b2 r1 r2 (5,45) r3 (79,7) (4,6) b1 r0 (68*,*)",
            "r0 (*,*)",
            "(10.12,3) r0 (11.*,*)",
        ] {
            let s: MBarredCallanSequence = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("x1".parse::<MBarredCallanSequence>().is_err());
        assert!("(1*,2)".parse::<MBarredCallanSequence>().is_err());
        assert!("(12)".parse::<MBarredCallanSequence>().is_err());
        assert!("bx".parse::<MBarredCallanSequence>().is_err());
    }
}
