//! Transition-operator expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [real '*'] symbol
//! symbol := I+ | I- | U+ | U- | V+ | V- | I3 | I8
//! ```
//!
//! Whitespace may appear between tokens but not inside a symbol, so
//! `"V+ + V-"` is two terms while `"V + + V-"` is a syntax error.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::yangian::LadderSymbol;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl ParseError {
    fn new(offset: usize, expected: impl Into<String>) -> Self {
        Self {
            offset,
            expected: expected.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coefficient: f64,
    pub symbol: LadderSymbol,
}

/// A non-empty formal sum of ladder symbols with real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr {
    terms: Vec<Term>,
}

impl OperatorExpr {
    /// Returns `None` for an empty term list or a non-finite coefficient.
    pub fn new(terms: Vec<Term>) -> Option<Self> {
        if terms.is_empty() || terms.iter().any(|t| !t.coefficient.is_finite()) {
            return None;
        }
        Some(Self { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Concatenation; realizes to the operator sum.
    pub fn plus(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        OperatorExpr { terms }
    }

    pub fn scaled(&self, factor: f64) -> OperatorExpr {
        OperatorExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: t.coefficient * factor,
                    symbol: t.symbol,
                })
                .collect(),
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let (sign, mag) = if t.coefficient < 0.0 {
                ("-", -t.coefficient)
            } else {
                ("+", t.coefficient)
            };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag != 1.0 {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", t.symbol)?;
        }
        Ok(())
    }
}

impl FromStr for OperatorExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_operator_expr(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<f64> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1.0)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1.0)
            }
            _ => None,
        }
    }

    fn number(&mut self) -> Result<Option<f64>, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let from = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - from
        };
        let mut mantissa = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            mantissa += digits(self);
        }
        if mantissa == 0 {
            self.pos = start;
            return Ok(None);
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            self.pos += 1;
            if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                return Err(ParseError::new(self.pos, "exponent digits"));
            }
        }
        // slice is ASCII by construction
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii literal");
        let value: f64 = text.parse().map_err(|_| ParseError::new(start, "real literal"))?;
        if !value.is_finite() {
            return Err(ParseError::new(start, "finite real literal"));
        }
        Ok(Some(value))
    }

    fn symbol(&mut self) -> Result<LadderSymbol, ParseError> {
        const EXPECTED: &str = "symbol (I+, I-, U+, U-, V+, V-, I3, I8)";
        let start = self.pos;
        let head = self.peek().ok_or_else(|| ParseError::new(start, EXPECTED))?;
        let tail = self.src.get(start + 1).copied();
        let sym = match (head, tail) {
            (b'I', Some(b'+')) => LadderSymbol::IPlus,
            (b'I', Some(b'-')) => LadderSymbol::IMinus,
            (b'I', Some(b'3')) => LadderSymbol::I3,
            (b'I', Some(b'8')) => LadderSymbol::I8,
            (b'U', Some(b'+')) => LadderSymbol::UPlus,
            (b'U', Some(b'-')) => LadderSymbol::UMinus,
            (b'V', Some(b'+')) => LadderSymbol::VPlus,
            (b'V', Some(b'-')) => LadderSymbol::VMinus,
            (b'I' | b'U' | b'V', _) => {
                let what = if head == b'I' {
                    "'+', '-', '3' or '8'"
                } else {
                    "'+' or '-'"
                };
                return Err(ParseError::new(start + 1, format!("{what} after '{}'", head as char)));
            }
            _ => return Err(ParseError::new(start, EXPECTED)),
        };
        self.pos += 2;
        Ok(sym)
    }

    fn term(&mut self, sign: f64) -> Result<Term, ParseError> {
        self.skip_ws();
        let coefficient = match self.number()? {
            Some(value) => {
                self.skip_ws();
                if self.peek() != Some(b'*') {
                    return Err(ParseError::new(self.pos, "'*' after coefficient"));
                }
                self.pos += 1;
                self.skip_ws();
                value
            }
            None => 1.0,
        };
        let symbol = self.symbol()?;
        Ok(Term {
            coefficient: sign * coefficient,
            symbol,
        })
    }
}

/// Parses a transition-operator expression such as `"2*I8 - 0.5*I3"`.
pub fn parse_operator_expr(text: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let lead = p.sign().unwrap_or(1.0);
    let mut terms = vec![p.term(lead)?];
    loop {
        p.skip_ws();
        if p.peek().is_none() {
            break;
        }
        let sign = p
            .sign()
            .ok_or_else(|| ParseError::new(p.pos, "'+', '-' or end of input"))?;
        terms.push(p.term(sign)?);
    }
    Ok(OperatorExpr { terms })
}
