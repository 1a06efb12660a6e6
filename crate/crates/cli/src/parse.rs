//! Recursive-descent reader for the textual parameter grammar:
//!
//! ```text
//! lparam   := segment ( "+" segment )*
//! segment  := "[" INT ";" rho ";" RATIONAL "]"
//! rho      := NAME ( "(" INT ")" )?
//! RATIONAL := ("-")? INT ( "/" INT )?
//! NAME     := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored. Positions are 1-based.

use std::fmt;

use langlands_core::lparam::{GaloisTypeLabel, Segment};
use langlands_core::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{position}: expected {}, found {found}", expected.join(" or "))]
    Syntax { position: Position, expected: Vec<String>, found: String },
    #[error("{position}: integer {literal} does not fit in 64 bits")]
    Overflow { position: Position, literal: String },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Syntax { position, .. } | ParseError::Overflow { position, .. } => *position,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::Overflow { .. } => "OverflowError",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Semi,
    Plus,
    LParen,
    RParen,
    Slash,
    Minus,
    Int(String),
    Name(String),
    Other(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("'['"),
            Tok::Close => f.write_str("']'"),
            Tok::Semi => f.write_str("';'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Int(s) => write!(f, "integer {s}"),
            Tok::Name(s) => write!(f, "name {s}"),
            Tok::Other(c) => write!(f, "{c:?}"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
    tok: Tok,
    at: Position,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let mut p = Parser {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
            tok: Tok::End,
            at: Position { line: 1, column: 1 },
        };
        p.advance();
        p
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn advance(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
        self.at = Position { line: self.line, column: self.column };
        let Some(c) = self.bump() else {
            self.tok = Tok::End;
            return;
        };
        self.tok = match c {
            '[' => Tok::Open,
            ']' => Tok::Close,
            ';' => Tok::Semi,
            '+' => Tok::Plus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '/' => Tok::Slash,
            '-' => Tok::Minus,
            '0'..='9' => {
                let mut s = c.to_string();
                while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    self.bump();
                }
                Tok::Int(s)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = c.to_string();
                while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    s.push(d);
                    self.bump();
                }
                Tok::Name(s)
            }
            other => Tok::Other(other),
        };
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.at,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.tok == tok {
            self.advance();
            Ok(())
        } else {
            self.fail(&[&tok.to_string()])
        }
    }

    fn int(&mut self) -> Result<(i64, Position), ParseError> {
        let Tok::Int(s) = &self.tok else {
            return self.fail(&["integer"]);
        };
        let at = self.at;
        let v = s.parse::<i64>().map_err(|_| ParseError::Overflow { position: at, literal: s.clone() })?;
        self.advance();
        Ok((v, at))
    }

    fn positive(&mut self) -> Result<usize, ParseError> {
        let found = self.tok.to_string();
        let (v, at) = self.int()?;
        if v == 0 {
            return Err(ParseError::Syntax { position: at, expected: vec!["positive integer".into()], found });
        }
        usize::try_from(v).map_err(|_| ParseError::Overflow { position: at, literal: v.to_string() })
    }

    /// The flag records whether a denominator was read.
    fn rational(&mut self) -> Result<(Rational, bool), ParseError> {
        let negative = self.tok == Tok::Minus;
        if negative {
            self.advance();
        }
        let (num, _) = self.int()?;
        let slash = self.tok == Tok::Slash;
        let den = if slash {
            self.advance();
            let found = self.tok.to_string();
            let (den, at) = self.int()?;
            if den == 0 {
                return Err(ParseError::Syntax { position: at, expected: vec!["nonzero denominator".into()], found });
            }
            den
        } else {
            1
        };
        Ok((Rational::new(if negative { -num } else { num }, den), slash))
    }

    fn segment(&mut self) -> Result<Segment, ParseError> {
        self.expect(Tok::Open)?;
        let sl2_dim = self.positive()?;
        self.expect(Tok::Semi)?;
        let Tok::Name(name) = self.tok.clone() else {
            return self.fail(&["name"]);
        };
        self.advance();
        let dim = match self.tok {
            Tok::LParen => {
                self.advance();
                let dim = self.positive()?;
                self.expect(Tok::RParen)?;
                dim
            }
            Tok::Semi => 1,
            _ => return self.fail(&["'('", "';'"]),
        };
        self.expect(Tok::Semi)?;
        let (exponent, slash) = match self.tok {
            Tok::Minus | Tok::Int(_) => self.rational()?,
            _ => return self.fail(&["'-'", "integer"]),
        };
        if self.tok != Tok::Close {
            return self.fail(if slash { &["']'"] } else { &["'/'", "']'"] });
        }
        self.advance();
        Ok(Segment::new(sl2_dim, GaloisTypeLabel::new(name, dim), exponent))
    }
}

/// Reads the segments of a parameter. The dimension identity is checked
/// later, against `n`.
pub fn parse_lparam(text: &str) -> Result<Vec<Segment>, ParseError> {
    let mut p = Parser::new(text);
    let mut out = vec![p.segment()?];
    loop {
        match p.tok {
            Tok::Plus => {
                p.advance();
                out.push(p.segment()?);
            }
            Tok::End => return Ok(out),
            _ => return p.fail(&["'+'", "end of input"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(line: usize, column: usize) -> Position {
        Position { line, column }
    }

    #[test]
    fn single_segment() {
        let s = parse_lparam("[1;triv;0]").unwrap();
        assert_eq!(s, vec![Segment::new(1, GaloisTypeLabel::trivial(), Rational::from_integer(0))]);
    }

    #[test]
    fn two_segments_and_whitespace() {
        let s = parse_lparam(" [2;triv;0] +\n [ 1 ; chi5 ; 3 / 2 ] ").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].rho, GaloisTypeLabel::new("chi5", 1));
        assert_eq!(s[1].exponent, Rational::new(3, 2));
        let s = parse_lparam("[1;rho_2(3);-4/6]").unwrap();
        assert_eq!(s[0].rho, GaloisTypeLabel::new("rho_2", 3));
        assert_eq!(s[0].exponent, Rational::new(-2, 3));
    }

    #[test]
    fn zero_denominator() {
        let e = parse_lparam("[2;triv;1/0]").unwrap_err();
        assert_eq!(
            e,
            ParseError::Syntax {
                position: pos(1, 11),
                expected: vec!["nonzero denominator".into()],
                found: "integer 0".into()
            }
        );
        assert_eq!(e.code(), "SyntaxError");
    }

    #[test]
    fn expectation_sets() {
        let e = parse_lparam("[2;triv 0]").unwrap_err();
        assert_eq!(
            e,
            ParseError::Syntax {
                position: pos(1, 9),
                expected: vec!["'('".into(), "';'".into()],
                found: "integer 0".into()
            }
        );
        let e = parse_lparam("[1;triv;0]\n[1;triv;0]").unwrap_err();
        assert_eq!(e.position(), pos(2, 1));
        let e = parse_lparam("").unwrap_err();
        assert_eq!(e.to_string(), "line 1, column 1: expected '[', found end of input");
        let e = parse_lparam("[0;triv;0]").unwrap_err();
        assert_eq!(e.position(), pos(1, 2));
        let e = parse_lparam("[1;triv;1/2/3]").unwrap_err();
        assert_eq!(e.position(), pos(1, 12));
    }

    #[test]
    fn overflow() {
        let e = parse_lparam("[99999999999999999999;triv;0]").unwrap_err();
        assert_eq!(e.code(), "OverflowError");
        assert_eq!(e.position(), pos(1, 2));
    }

    #[test]
    fn printing_round_trips() {
        let text = "[2;triv;0] + [1;chi5(2);3/2] + [3;x;-1/6]";
        let segs = parse_lparam(text).unwrap();
        let phi = langlands_core::lparam::new_lparameter(7, 1, segs).unwrap();
        let again = parse_lparam(&phi.to_string()).unwrap();
        let psi = langlands_core::lparam::new_lparameter(7, 1, again).unwrap();
        assert_eq!(phi, psi);
    }
}
