//! Recursive-descent parser for integer polynomials in `x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | 'x' | '(' expr ')'
//! ```

use std::fmt;

use gapscan::IntPoly;
use num_bigint::BigInt;

/// Largest exponent accepted after `^`, and largest degree of any
/// intermediate result.
pub const MAX_DEGREE: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(b) if b.is_ascii_graphic() => format!("'{}'", b as char),
            Some(b) => format!("byte 0x{b:02x}"),
        }
    }

    fn check_degree(&self, p: IntPoly, offset: usize) -> PResult<IntPoly> {
        if p.deg0() > MAX_DEGREE {
            return self.err(offset, format!("degree {} exceeds the limit {MAX_DEGREE}", p.deg0()));
        }
        Ok(p)
    }

    fn expr(&mut self) -> PResult<IntPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<IntPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if acc.deg0() + rhs.deg0() > MAX_DEGREE {
                return self.err(at, format!("product degree exceeds the limit {MAX_DEGREE}"));
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<IntPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<IntPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        let Some(digits) = self.digits() else {
            let what = self.describe();
            return self.err(at, format!("exponent must be a nonnegative integer literal, found {what}"));
        };
        let e: usize = match digits.parse() {
            Ok(e) if e <= MAX_DEGREE => e,
            _ => return self.err(at, format!("exponent {digits} exceeds the limit {MAX_DEGREE}")),
        };
        if base.deg0().saturating_mul(e) > MAX_DEGREE {
            return self.err(at, format!("power degree exceeds the limit {MAX_DEGREE}"));
        }
        self.check_degree(gapscan::poly::pow(&base, e), at)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn atom(&mut self) -> PResult<IntPoly> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric()) {
                    return self.err(self.pos, "unexpected character after 'x'");
                }
                Ok(IntPoly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    let what = self.describe();
                    return self.err(self.pos, format!("expected ')' to close '(' at byte {at}, found {what}"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let digits = self.digits().expect("starts with a digit");
                let n: BigInt = digits.parse().expect("decimal digits");
                if self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphabetic() || *b == b'(') {
                    return self.err(self.pos, "implicit multiplication is not allowed; use '*'");
                }
                Ok(IntPoly::constant(n))
            }
            _ => {
                let what = self.describe();
                self.err(self.pos, format!("expected an integer, 'x' or '(', found {what}"))
            }
        }
    }
}

/// Parses `text` into an integer polynomial.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if let Some(b) = p.peek() {
        let msg = if b == b'x' || b == b'(' || b.is_ascii_digit() {
            "implicit multiplication is not allowed; use '*'".to_string()
        } else {
            format!("unexpected {}", p.describe())
        };
        return p.err(p.pos, msg);
    }
    Ok(out)
}
