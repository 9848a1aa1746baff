//! Cycle-notation parser.
//!
//! Grammar: `Cycles := Cycle*`, `Cycle := '[' int (',' int)* ']'`, whitespace
//! allowed between tokens. `()` is accepted for the identity so that every
//! formatted perm parses back.

use std::fmt;

use thiserror::Error;

use super::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    ZeroDegree,
    PointOutOfRange { point: usize, degree: usize },
    DuplicatePoint { point: usize },
    Syntax(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::ZeroDegree => f.write_str("degree must be at least 1"),
            ParseErrorKind::PointOutOfRange { point, degree } => {
                write!(f, "point {point} outside 1..{degree}")
            }
            ParseErrorKind::DuplicatePoint { point } => write!(f, "point {point} appears twice"),
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
        }
    }
}

/// Parse failure with the 1-based character column where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at column {column}")]
pub struct ParseCyclesError {
    pub kind: ParseErrorKind,
    pub column: usize,
}

impl ParseCyclesError {
    /// True when the text was well formed but named a point above the degree.
    pub fn is_degree_violation(&self) -> bool {
        matches!(self.kind, ParseErrorKind::PointOutOfRange { .. })
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::iter::Enumerate<std::str::Chars<'a>>>,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn expect(&mut self, want: char, end: usize) -> Result<(), ParseCyclesError> {
        match self.peek() {
            Some((_, c)) if c == want => {
                self.chars.next();
                Ok(())
            }
            Some((i, c)) => Err(syntax(i, format!("expected '{want}', found '{c}'"))),
            None => Err(syntax(
                end,
                format!("expected '{want}', found end of input"),
            )),
        }
    }

    fn number(&mut self, end: usize) -> Result<(usize, usize), ParseCyclesError> {
        let start = match self.peek() {
            Some((i, c)) if c.is_ascii_digit() => i,
            Some((i, c)) => return Err(syntax(i, format!("expected a point, found '{c}'"))),
            None => return Err(syntax(end, "expected a point, found end of input".into())),
        };
        let mut value: usize = 0;
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as usize - '0' as usize))
                .ok_or_else(|| syntax(start, "point too large".into()))?;
        }
        Ok((start, value))
    }
}

fn syntax(index: usize, msg: String) -> ParseCyclesError {
    ParseCyclesError {
        kind: ParseErrorKind::Syntax(msg),
        column: index + 1,
    }
}

/// Parses disjoint cycles into a perm of the given degree. Each cycle maps
/// every element to its successor and the last element to the first.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, ParseCyclesError> {
    if degree == 0 {
        return Err(ParseCyclesError {
            kind: ParseErrorKind::ZeroDegree,
            column: 1,
        });
    }
    let end = text.chars().count();
    let mut lex = Lexer {
        chars: text.chars().enumerate().peekable(),
    };
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];

    while let Some((i, c)) = lex.peek() {
        match c {
            '(' => {
                lex.chars.next();
                lex.expect(')', end)?;
            }
            '[' => {
                lex.chars.next();
                let mut cycle = Vec::new();
                loop {
                    let (col, point) = lex.number(end)?;
                    if point == 0 || point > degree {
                        return Err(ParseCyclesError {
                            kind: ParseErrorKind::PointOutOfRange { point, degree },
                            column: col + 1,
                        });
                    }
                    if std::mem::replace(&mut used[point - 1], true) {
                        return Err(ParseCyclesError {
                            kind: ParseErrorKind::DuplicatePoint { point },
                            column: col + 1,
                        });
                    }
                    cycle.push(point - 1);
                    match lex.peek() {
                        Some((_, ',')) => {
                            lex.chars.next();
                        }
                        Some((_, ']')) => {
                            lex.chars.next();
                            break;
                        }
                        Some((j, other)) => {
                            return Err(syntax(j, format!("expected ',' or ']', found '{other}'")))
                        }
                        None => return Err(syntax(end, "unclosed cycle".into())),
                    }
                }
                for (k, &x) in cycle.iter().enumerate() {
                    images[x] = cycle[(k + 1) % cycle.len()] as u32;
                }
            }
            other => return Err(syntax(i, format!("expected '[', found '{other}'"))),
        }
    }
    Ok(Perm::from_raw(images))
}
