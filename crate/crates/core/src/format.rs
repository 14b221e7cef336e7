//! Text and JSON encodings of [`MultigradeSolution`].
//!
//! Text: `a1 a2 ... as | b1 b2 ... bs @ k`.
//! JSON: `{"left":["a1",...],"right":["b1",...],"degree":k}` with decimal
//! strings for every entry.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::solution::MultigradeSolution;

impl fmt::Display for MultigradeSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let l = join(&self.left);
        let r = join(&self.right);
        let mut out = String::new();
        if !l.is_empty() {
            out.push_str(&l);
            out.push(' ');
        }
        out.push('|');
        if !r.is_empty() {
            out.push(' ');
            out.push_str(&r);
        }
        write!(f, "{out} @ {}", self.degree)
    }
}

impl FromStr for MultigradeSolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, degree) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse("missing '@ degree'".into()))?;
        let degree = degree
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad degree {:?}", degree.trim())))?;
        let (l, r) = body
            .split_once('|')
            .ok_or_else(|| Error::Parse("missing '|' between sides".into()))?;
        let side = |t: &str| -> Result<Vec<BigInt>> {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .map(|w| {
                    w.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("not an integer: {w:?}")))
                })
                .collect()
        };
        Ok(MultigradeSolution::new(side(l)?, side(r)?, degree))
    }
}

/// Parses either encoding; JSON is recognised by a leading `{`.
pub fn parse_solution(input: &str) -> Result<MultigradeSolution> {
    let t = input.trim();
    if t.starts_with('{') {
        serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))
    } else {
        t.parse()
    }
}

pub fn to_json(sol: &MultigradeSolution) -> String {
    serde_json::to_string(sol).expect("solution serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_form() {
        let s = MultigradeSolution::from_i64(&[57, -22, 40], &[19, 16, -42], 4);
        assert_eq!(s.to_string(), "57 -22 40 | 19 16 -42 @ 4");
        assert_eq!(parse_solution("57 -22 40 | 19 16 -42 @ 4").unwrap(), s);
        assert_eq!(MultigradeSolution::empty(3).to_string(), "| @ 3");
        assert_eq!(
            parse_solution("| @ 3").unwrap(),
            MultigradeSolution::empty(3)
        );
    }

    #[test]
    fn malformed_text() {
        assert!(parse_solution("1 2 | 3 4").is_err());
        assert!(parse_solution("1 2 3 4 @ 1").is_err());
        assert!(parse_solution("1 x | 3 4 @ 1").is_err());
        assert!(parse_solution("{\"left\": [").is_err());
    }

    #[test]
    fn json_detection() {
        let s =
            parse_solution(r#" {"left":["1","5","6"],"right":["2","3","7"],"degree":2} "#).unwrap();
        assert_eq!(s, MultigradeSolution::from_i64(&[1, 5, 6], &[2, 3, 7], 2));
    }

    proptest! {
        #[test]
        fn both_encodings_round_trip(
            l in proptest::collection::vec(any::<i64>(), 0..6),
            r in proptest::collection::vec(any::<i64>(), 0..6),
            k in 0u32..12,
        ) {
            let s = MultigradeSolution::from_i64(&l, &r, k);
            prop_assert_eq!(parse_solution(&s.to_string()).unwrap(), s.clone());
            prop_assert_eq!(parse_solution(&to_json(&s)).unwrap(), s);
        }
    }
}
