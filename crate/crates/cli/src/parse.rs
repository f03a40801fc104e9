//! Text forms for polynomials, strata, permutations, paths and twist words.

use std::fmt;

use systole_core::lefschetz::Stratum;
use systole_core::rauzy::{Permutation, StepType};
use systole_core::twist::TwistWord;
use systole_core::{IntPoly, ReciprocalPolynomial};

/// Error with the byte offset where parsing stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub input: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at position {} in {:?}: expected {}",
            self.position, self.input, self.expected
        )
    }
}

impl std::error::Error for ParseError {}

fn err(input: &str, position: usize, expected: impl Into<String>) -> ParseError {
    ParseError {
        position,
        expected: expected.into(),
        input: input.to_string(),
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn integer(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.text[start..self.pos].parse().ok()
        }
    }

    fn signed(&mut self) -> Option<i64> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.integer()? as i64;
        Some(if neg { -v } else { v })
    }

    fn error(&self, expected: &str) -> ParseError {
        err(self.text, self.pos, expected)
    }
}

/// `"x^6 - x^4 - x^3 - x^2 + 1"` or a descending coefficient list
/// `"[1,0,-1,-1,-1,0,1]"`.
pub fn parse_polynomial(text: &str) -> Result<IntPoly, ParseError> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    if c.eat('[') {
        let mut coeffs = Vec::new();
        loop {
            coeffs.push(c.signed().ok_or_else(|| c.error("integer"))?);
            if c.eat(']') {
                break;
            }
            if !c.eat(',') {
                return Err(c.error("',' or ']'"));
            }
        }
        if !c.at_end() {
            return Err(c.error("end of input"));
        }
        let p = IntPoly::from_descending(&coeffs);
        if p.is_zero() {
            return Err(err(text, 0, "a nonzero polynomial"));
        }
        return Ok(p);
    }

    let mut terms: Vec<(usize, i64)> = Vec::new();
    let mut first = true;
    loop {
        if c.at_end() {
            if first {
                return Err(c.error("a term"));
            }
            break;
        }
        let sign = if c.eat('-') {
            -1
        } else if c.eat('+') || first {
            1
        } else {
            return Err(c.error("'+' or '-'"));
        };
        first = false;
        c.skip_ws();
        let coeff = c.integer();
        if coeff.is_some() {
            c.eat('*');
        }
        c.skip_ws();
        let exp = if c.peek().is_some_and(|ch| ch == 'x' || ch == 'X') {
            c.pos += 1;
            if c.eat('^') {
                c.integer().ok_or_else(|| c.error("exponent"))? as usize
            } else {
                1
            }
        } else if coeff.is_some() {
            0
        } else {
            return Err(c.error("coefficient or 'x'"));
        };
        terms.push((exp, sign * coeff.unwrap_or(1) as i64));
    }
    let degree = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![0i64; degree + 1];
    for (e, v) in terms {
        coeffs[e] += v;
    }
    Ok(IntPoly::new(coeffs))
}

/// A polynomial that must be monic, palindromic, of even degree, with
/// constant term 1.
pub fn parse_reciprocal(text: &str) -> Result<ReciprocalPolynomial, ParseError> {
    let p = parse_polynomial(text)?;
    ReciprocalPolynomial::from_int_poly(&p).map_err(|e| {
        err(
            text,
            0,
            format!("a monic reciprocal polynomial with constant term 1 ({e})"),
        )
    })
}

/// `"2,2,4"`, optionally parenthesized.
pub fn parse_stratum(text: &str) -> Result<Stratum, ParseError> {
    let degrees = parse_list(text)?;
    let degrees: Vec<u32> = degrees.iter().map(|&d| d as u32).collect();
    Stratum::new(degrees).map_err(|e| {
        err(
            text,
            0,
            format!("a stratum of even degrees summing to 4g − 4 ({e})"),
        )
    })
}

fn parse_list(text: &str) -> Result<Vec<u64>, ParseError> {
    let mut c = Cursor::new(text);
    let paren = c.eat('(');
    let mut out = Vec::new();
    loop {
        out.push(c.integer().ok_or_else(|| c.error("non-negative integer"))?);
        if paren && c.eat(')') {
            break;
        }
        if !c.eat(',') {
            if !paren && c.at_end() {
                break;
            }
            return Err(c.error(if paren { "',' or ')'" } else { "','" }));
        }
    }
    if !c.at_end() {
        return Err(c.error("end of input"));
    }
    Ok(out)
}

/// Bottom row of a permutation: `"5,3,9,8,6,2,7,1,4"`.
pub fn parse_permutation(text: &str) -> Result<Permutation, ParseError> {
    let bottom: Vec<usize> = parse_list(text)?.into_iter().map(|v| v as usize).collect();
    Permutation::new(bottom).map_err(|e| err(text, 0, format!("an irreducible permutation ({e})")))
}

/// Rauzy path digits: `"0,1,0,0"`.
pub fn parse_path(text: &str) -> Result<Vec<StepType>, ParseError> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    loop {
        let at = {
            c.skip_ws();
            c.pos
        };
        let d = c.integer().ok_or_else(|| c.error("0 or 1"))?;
        out.push(StepType::from_digit(d as u8).ok_or_else(|| err(text, at, "0 or 1"))?);
        if c.at_end() {
            break;
        }
        if !c.eat(',') {
            return Err(c.error("','"));
        }
    }
    Ok(out)
}

/// `"a1.a1.b1.c1.A2"`; capitals are inverse twists.
pub fn parse_word(text: &str, genus: Option<usize>) -> Result<TwistWord, ParseError> {
    TwistWord::parse(text, genus).map_err(|e| {
        let position = match &e {
            systole_core::twist::TwistError::BadLetter { position, .. } => *position,
            _ => 0,
        };
        err(
            text,
            position,
            format!("twist letters a<i>, b<i>, c<i> ({e})"),
        )
    })
}
