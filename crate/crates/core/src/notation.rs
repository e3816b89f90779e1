//! Text notation for descriptors, torus matrices and filling slopes.
//!
//! ```text
//! descriptor := "(" INT "," base "|" pairs? ")"
//! base       := "o1" | "n1"
//! pairs      := pair ("," pair)*
//! pair       := "(" INT "," INT ")"
//! matrix     := INT "," INT ";" INT "," INT
//! slope      := INT "," INT
//! ```
//!
//! Whitespace is allowed between tokens. A trailing `(1, b)` pair is read as the
//! integer term; every other pair is kept exactly as written.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::filling::{FillingError, FillingSlope};
use crate::invariants::{BaseSurface, InvariantError, SeifertInvariants, SeifertPair};
use crate::torus::IntMatrix2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found:?}")]
    Unexpected { expected: &'static str, found: char },
    #[error("expected {expected}, found end of input")]
    UnexpectedEnd { expected: &'static str },
    #[error("unexpected trailing input {found:?}")]
    TrailingInput { found: char },
    #[error("genus must be non-negative")]
    NegativeGenus,
    #[error("integer {value} does not fit in 64 bits")]
    OutOfRange { value: String },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Slope(#[from] FillingError),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected(&mut self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(found) => self.error(ParseErrorKind::Unexpected { expected, found }),
            None => self.error(ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expect(&mut self, token: char, expected: &'static str) -> Result<usize, ParseError> {
        if self.peek() == Some(token) {
            let at = self.pos;
            self.pos += token.len_utf8();
            Ok(at)
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn integer(&mut self) -> Result<(usize, BigInt), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        if bytes.get(end) == Some(&b'-') {
            end += 1;
        }
        let digits_start = end;
        while bytes.get(end).is_some_and(u8::is_ascii_digit) {
            end += 1;
        }
        if end == digits_start {
            self.pos = digits_start;
            return Err(self.unexpected("integer"));
        }
        let value = self.text[start..end]
            .parse::<BigInt>()
            .expect("validated digit run");
        self.pos = end;
        Ok((start, value))
    }

    fn small_integer(&mut self) -> Result<i64, ParseError> {
        let (at, value) = self.integer()?;
        i64::try_from(&value).map_err(|_| ParseError {
            position: at,
            kind: ParseErrorKind::OutOfRange {
                value: value.to_string(),
            },
        })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(found) => Err(self.error(ParseErrorKind::TrailingInput { found })),
        }
    }

    fn base(&mut self, genus: BigInt, genus_at: usize) -> Result<BaseSurface, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let orientable = if rest.starts_with("o1") {
            true
        } else if rest.starts_with("n1") {
            false
        } else {
            return Err(self.unexpected("base type \"o1\" or \"n1\""));
        };
        self.pos += 2;
        let genus = BigUint::try_from(genus).map_err(|_| ParseError {
            position: genus_at,
            kind: ParseErrorKind::NegativeGenus,
        })?;
        if orientable {
            Ok(BaseSurface::orientable(genus))
        } else {
            BaseSurface::non_orientable(genus).map_err(|err| ParseError {
                position: genus_at,
                kind: err.into(),
            })
        }
    }

    fn pair(&mut self) -> Result<SeifertPair, ParseError> {
        let at = self.expect('(', "'('")?;
        let (_, q) = self.integer()?;
        self.expect(',', "','")?;
        let (_, p) = self.integer()?;
        self.expect(')', "')'")?;
        SeifertPair::new(q, p).map_err(|err| ParseError {
            position: at,
            kind: err.into(),
        })
    }
}

/// Parses a descriptor. No normalization is applied.
pub fn parse_seifert(text: &str) -> Result<SeifertInvariants, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect('(', "'('")?;
    let (genus_at, genus) = cur.integer()?;
    cur.expect(',', "','")?;
    let base = cur.base(genus, genus_at)?;
    cur.expect('|', "'|'")?;

    let mut pairs = Vec::new();
    if cur.peek() != Some(')') {
        pairs.push(cur.pair()?);
        while cur.peek() == Some(',') {
            cur.pos += 1;
            pairs.push(cur.pair()?);
        }
    }
    cur.expect(')', "',' or ')'")?;
    cur.finish()?;

    let b = match pairs.last() {
        Some(last) if last.q().is_one() => {
            let b = last.p().clone();
            pairs.pop();
            b
        }
        _ => BigInt::zero(),
    };
    Ok(SeifertInvariants::new(base, pairs, b))
}

/// Canonical text form; `parse_seifert(&print_seifert(m)) == m`.
pub fn print_seifert(m: &SeifertInvariants) -> String {
    m.to_string()
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.base().is_orientable() {
            "o1"
        } else {
            "n1"
        };
        write!(f, "({},{}|", self.base().genus(), base)?;
        let mut first = true;
        for pair in self.pairs() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{pair}")?;
        }
        // A written (1,.) pair in last position would be read back as b, so
        // the b term is spelled out whenever that could happen.
        let last_is_unit = self.pairs().last().is_some_and(|pair| pair.q().is_one());
        if !self.b().is_zero() || last_is_unit {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "(1,{})", self.b())?;
        }
        f.write_str(")")
    }
}

impl FromStr for SeifertInvariants {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_seifert(s)
    }
}

/// Parses `"a,b;c,d"` (row-major).
pub fn parse_matrix(text: &str) -> Result<IntMatrix2, ParseError> {
    let mut cur = Cursor::new(text);
    let a = cur.small_integer()?;
    cur.expect(',', "','")?;
    let b = cur.small_integer()?;
    cur.expect(';', "';'")?;
    let c = cur.small_integer()?;
    cur.expect(',', "','")?;
    let d = cur.small_integer()?;
    cur.finish()?;
    Ok(IntMatrix2::new(a, b, c, d))
}

/// Parses `"m,l"` into a normalized filling slope.
pub fn parse_slope(text: &str) -> Result<FillingSlope, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let start = cur.pos;
    let m = cur.small_integer()?;
    cur.expect(',', "','")?;
    let l = cur.small_integer()?;
    cur.finish()?;
    FillingSlope::new(m, l).map_err(|err| ParseError {
        position: start,
        kind: err.into(),
    })
}

impl FromStr for IntMatrix2 {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_matrix(s)
    }
}

impl FromStr for FillingSlope {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_slope(s)
    }
}
