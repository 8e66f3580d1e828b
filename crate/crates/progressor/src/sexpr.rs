//! Minimal s-expression reader and writer.
//!
//! Atoms are bare symbols (no string or numeric literals beyond what a
//! symbol can spell); `;` starts a comment running to end of line. The
//! writer pretty-prints with two-space indentation so emitted files diff
//! cleanly and re-parse to the same tree.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Sym(String),
    List(Vec<Sexp>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SexpError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

impl Sexp {
    pub fn sym(s: impl Into<String>) -> Sexp {
        Sexp::Sym(s.into())
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List(items)
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s) => Some(s),
            Sexp::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items) => Some(items),
            Sexp::Sym(_) => None,
        }
    }

    /// For `(head rest...)` returns `(head, rest)` when `head` is a symbol.
    pub fn as_tagged(&self) -> Option<(&str, &[Sexp])> {
        let items = self.as_list()?;
        let head = items.first()?.as_sym()?;
        Some((head, &items[1..]))
    }
}

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, msg: impl Into<String>) -> SexpError {
        SexpError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b';') => {
                    while let Some(c) = self.bump() {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, SexpError> {
        self.skip_trivia();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => return Err(self.error("unclosed '('")),
                        Some(b')') => {
                            self.bump();
                            return Ok(Sexp::List(items));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(b')') => Err(self.error("unexpected ')'")),
            Some(_) => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_whitespace() || c == b'(' || c == b')' || c == b';' {
                        break;
                    }
                    self.bump();
                }
                let text = std::str::from_utf8(&self.src[start..self.pos])
                    .map_err(|_| self.error("invalid utf-8 in symbol"))?;
                Ok(Sexp::Sym(text.to_string()))
            }
        }
    }
}

/// Reads every top-level s-expression in `src`.
pub fn parse_many(src: &str) -> Result<Vec<Sexp>, SexpError> {
    let mut r = Reader::new(src);
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.peek().is_none() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

/// Reads exactly one s-expression (trailing trivia allowed).
pub fn parse_one(src: &str) -> Result<Sexp, SexpError> {
    let mut r = Reader::new(src);
    let e = r.read()?;
    r.skip_trivia();
    if r.peek().is_some() {
        return Err(r.error("trailing input after s-expression"));
    }
    Ok(e)
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Sym(s) => write!(f, "{s}"),
            Sexp::List(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Pretty-prints with indentation: short lists stay on one line, long ones
/// break after the head.
pub fn pretty(e: &Sexp) -> String {
    let mut out = String::new();
    pretty_into(e, 0, &mut out);
    out
}

fn flat_len(e: &Sexp) -> usize {
    match e {
        Sexp::Sym(s) => s.len(),
        Sexp::List(items) => 2 + items.iter().map(flat_len).sum::<usize>() + items.len().max(1) - 1,
    }
}

fn pretty_into(e: &Sexp, indent: usize, out: &mut String) {
    match e {
        Sexp::Sym(_) => out.push_str(&e.to_string()),
        Sexp::List(items) => {
            if flat_len(e) + indent <= 78 || items.len() <= 1 {
                out.push_str(&e.to_string());
                return;
            }
            out.push('(');
            pretty_into(&items[0], indent + 1, out);
            let head_is_sym = items[0].as_sym().is_some();
            for (i, it) in items[1..].iter().enumerate() {
                // keep "(tag first-arg" on the head line when short
                if head_is_sym && i == 0 && matches!(it, Sexp::Sym(_)) {
                    out.push(' ');
                    out.push_str(&it.to_string());
                    continue;
                }
                out.push('\n');
                out.push_str(&" ".repeat(indent + 2));
                pretty_into(it, indent + 2, out);
            }
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = "(a (b c) ; comment\n  (d))";
        let e = parse_one(src).unwrap();
        assert_eq!(e.to_string(), "(a (b c) (d))");
        assert_eq!(parse_one(&pretty(&e)).unwrap(), e);
    }

    #[test]
    fn reports_position() {
        let err = parse_one("(a\n  b))").unwrap_err();
        assert!(matches!(err, SexpError::Syntax { line: 2, .. }));
    }
}
