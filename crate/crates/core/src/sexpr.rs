//! S-expression reader shared by the formula, proof and document parsers.
//!
//! Atoms are whitespace-delimited symbols; `{...}` groups (balanced braces)
//! carry grade literals verbatim; `;` starts a line comment.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {message}; expected one of: {}", .expected.join(", "))]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>, expected: &[&str]) -> Self {
        ParseError {
            pos,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Sym(String, Pos),
    Brace(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Sym(_, p) | SExpr::Brace(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            SExpr::Sym(s, _) => Some(s),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SExpr::Sym(s, _) => format!("symbol `{s}`"),
            SExpr::Brace(s, _) => format!("grade `{{{s}}}`"),
            SExpr::List(..) => "list".to_string(),
        }
    }
}

struct Reader<'a> {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            chars: src.chars().collect(),
            i: 0,
            line: 1,
            col: 1,
            _src: src,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<SExpr, ParseError> {
        self.skip_ws();
        let pos = self.pos();
        match self.peek() {
            None => Err(ParseError::new(
                pos,
                "unexpected end of input",
                &["(", "symbol"],
            )),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => {
                            return Err(ParseError::new(self.pos(), "unclosed list", &[")"]));
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(SExpr::List(items, pos));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(')') => Err(ParseError::new(pos, "unexpected `)`", &["(", "symbol"])),
            Some('{') => {
                self.bump();
                let mut depth = 1;
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => return Err(ParseError::new(self.pos(), "unclosed grade", &["}"])),
                        Some('{') => {
                            depth += 1;
                            text.push('{');
                        }
                        Some('}') => {
                            depth -= 1;
                            if depth == 0 {
                                return Ok(SExpr::Brace(text.trim().to_string(), pos));
                            }
                            text.push('}');
                        }
                        Some(c) => text.push(c),
                    }
                }
            }
            Some('}') => Err(ParseError::new(pos, "unexpected `}`", &["(", "symbol"])),
            Some(_) => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '{' | '}' | ';') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(SExpr::Sym(s, pos))
            }
        }
    }
}

/// Reads every top-level expression in `src`.
pub fn read_all(src: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut r = Reader::new(src);
    let mut out = Vec::new();
    loop {
        r.skip_ws();
        if r.peek().is_none() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

/// Reads exactly one expression.
pub fn read_one(src: &str) -> Result<SExpr, ParseError> {
    let mut all = read_all(src)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(ParseError::new(
            Pos { line: 1, col: 1 },
            "empty input",
            &["(", "symbol"],
        )),
        _ => Err(ParseError::new(
            all[1].pos(),
            "trailing input",
            &["end of input"],
        )),
    }
}
