use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Int, Quad};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse entry `{input}`: {reason}")]
pub struct ParseError {
    pub input: String,
    pub reason: String,
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn fail<X>(&self, reason: impl Into<String>) -> Result<X, ParseError> {
        Err(ParseError {
            input: self.input.to_string(),
            reason: reason.into(),
        })
    }

    fn integer<T: Int>(&mut self) -> Result<T, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(format!("expected a number at offset {start}"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match T::from_str_radix(&digits, 10) {
            Ok(v) => Ok(v),
            Err(_) => self.fail("integer out of range"),
        }
    }
}

/// Parses `INT` or `INT/INT`, with an optional leading sign.
pub fn parse_rational<T: Int>(s: &str) -> Result<Ratio<T>, ParseError> {
    let q = parse_quad::<T>(s, None)?;
    Ok(q.rat().clone())
}

/// Parses an entry such as `3`, `-1/2`, `r`, `-r`, `2*r`, `1/2-3/4*r`,
/// where `r` stands for `sqrt(disc)`. Whitespace is ignored.
pub fn parse_quad<T: Int>(s: &str, disc: Option<&T>) -> Result<Quad<T>, ParseError> {
    let mut cur = Cursor {
        chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        input: s,
    };
    if cur.chars.is_empty() {
        return cur.fail("empty entry");
    }
    let mut rat = Ratio::<T>::zero();
    let mut surd = Ratio::<T>::zero();
    let mut first = true;
    while cur.pos < cur.chars.len() {
        let mut negative = false;
        match cur.peek() {
            Some('+') if !first => cur.pos += 1,
            Some('-') => {
                negative = true;
                cur.pos += 1;
            }
            _ if first => {}
            Some(c) => return cur.fail(format!("unexpected `{c}`")),
            None => unreachable!(),
        }
        first = false;
        let (coeff, has_r) = if cur.peek() == Some('r') {
            cur.pos += 1;
            (Ratio::one(), true)
        } else {
            let n: T = cur.integer()?;
            let mut q = Ratio::from_integer(n);
            if cur.peek() == Some('/') {
                cur.pos += 1;
                let d: T = cur.integer()?;
                if d.is_zero() {
                    return cur.fail("zero denominator");
                }
                q = q / Ratio::from_integer(d);
            }
            if cur.peek() == Some('*') {
                cur.pos += 1;
                if cur.peek() != Some('r') {
                    return cur.fail("expected `r` after `*`");
                }
                cur.pos += 1;
                (q, true)
            } else {
                (q, false)
            }
        };
        let coeff = if negative { -coeff } else { coeff };
        if has_r {
            surd = surd + coeff;
        } else {
            rat = rat + coeff;
        }
    }
    if surd.is_zero() {
        return Ok(Quad::rational(rat));
    }
    match disc {
        Some(d) => Ok(Quad::new(rat, surd, d.clone())),
        None => cur.fail("`r` used but the table declares no field"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(s: &str, d: Option<i64>) -> Result<Quad<BigInt>, ParseError> {
        let d = d.map(BigInt::from);
        parse_quad(s, d.as_ref())
    }

    #[test]
    fn grammar_forms() {
        let two = Some(2);
        assert_eq!(p("3", None).unwrap(), Quad::from_int(3));
        assert_eq!(p("-1/2", None).unwrap(), Quad::from_frac(-1, 2));
        assert_eq!(p("r", two).unwrap(), Quad::sqrt_of(BigInt::from(2)));
        assert_eq!(p("-r", two).unwrap(), -Quad::sqrt_of(BigInt::from(2)));
        assert_eq!(p(" 1 + 2 * r ", two).unwrap().to_string(), "1+2*r");
        assert_eq!(p("-3/4+1/4*r", Some(17)).unwrap().to_string(), "-3/4+1/4*r");
        assert_eq!(p("2-r", two).unwrap().to_string(), "2-r");
    }

    #[test]
    fn malformed_entries() {
        assert!(p("1+sqrt", Some(2)).is_err());
        assert!(p("", None).is_err());
        assert!(p("1/0", None).is_err());
        assert!(p("r", None).is_err());
        assert!(p("2*", Some(2)).is_err());
        assert!(p("1++2", None).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "5", "-7/3", "r", "-r", "1/2+3/2*r", "-1-r", "4*r"] {
            let x = p(s, Some(-3)).unwrap();
            assert_eq!(p(&x.to_string(), Some(-3)).unwrap(), x);
        }
    }
}
