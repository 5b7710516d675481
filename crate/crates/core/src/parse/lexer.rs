use crate::span::{LineIndex, Span};

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    /// `\name`; the name excludes the backslash. Single non-letter control
    /// symbols such as `\ ` or `\{` have a one-character name.
    Command(String),
    /// `{ ... }`
    Group(Vec<Token>),
    /// `[ ... ]`, only recognised directly after a command.
    Optional(Vec<Token>),
    /// `&`
    CellSep,
    /// `\\`
    RowSep,
    /// A run of ordinary characters. Inside braces a run may contain
    /// whitespace, collapsed to single spaces; at top level whitespace ends it.
    /// `^` and `_` are always single-character runs.
    Text(String),
    /// `@...` before the circuit body; holds the text after the `@`.
    Param(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    pub fn is_command(&self, name: &str) -> bool {
        matches!(&self.kind, TokenKind::Command(n) if n == name)
    }

    /// Children of a group or optional token.
    pub fn children(&self) -> Option<&[Token]> {
        match &self.kind {
            TokenKind::Group(ts) | TokenKind::Optional(ts) => Some(ts),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Frame {
    Group,
    Optional,
}

struct Open {
    frame: Frame,
    start: usize,
    tokens: Vec<Token>,
}

/// Splits Q-circuit source into tokens. `%` comments and insignificant
/// whitespace are dropped.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    Lexer::new(source).run()
}

struct Lexer<'a> {
    src: &'a str,
    lines: LineIndex,
    pos: usize,
    root: Vec<Token>,
    stack: Vec<Open>,
}

fn is_run_stop(c: char) -> bool {
    matches!(c, '\\' | '{' | '}' | '&' | '%' | '^' | '_' | '[' | ']')
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            lines: LineIndex::new(src),
            pos: 0,
            root: Vec::new(),
            stack: Vec::new(),
        }
    }

    fn span(&self, start: usize, end: usize) -> Span {
        self.lines.span(self.src, start, end)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn current(&mut self) -> &mut Vec<Token> {
        match self.stack.last_mut() {
            Some(open) => &mut open.tokens,
            None => &mut self.root,
        }
    }

    fn push(&mut self, kind: TokenKind, start: usize, end: usize) {
        let span = self.span(start, end);
        self.current().push(Token { kind, span });
    }

    fn run(mut self) -> Result<Vec<Token>, ParseError> {
        while let Some(c) = self.peek() {
            let start = self.pos;
            match c {
                c if c.is_whitespace() => self.pos += c.len_utf8(),
                '%' => {
                    self.pos = self.src[start..]
                        .find('\n')
                        .map_or(self.src.len(), |i| start + i + 1);
                }
                '\\' => self.command()?,
                '{' => self.open(Frame::Group),
                '}' => self.close(Frame::Group)?,
                '[' if matches!(
                    self.current().last(),
                    Some(Token {
                        kind: TokenKind::Command(_),
                        ..
                    })
                ) =>
                {
                    self.open(Frame::Optional)
                }
                ']' if matches!(self.stack.last(), Some(o) if o.frame == Frame::Optional) => {
                    self.close(Frame::Optional)?
                }
                '&' => {
                    self.pos += 1;
                    self.push(TokenKind::CellSep, start, self.pos);
                }
                '@' if self.stack.is_empty() => self.param(),
                '^' | '_' | '[' | ']' => {
                    self.pos += 1;
                    self.push(TokenKind::Text(c.to_string()), start, self.pos);
                }
                _ => self.text(),
            }
        }
        if let Some(open) = self.stack.last() {
            return Err(ParseError::UnbalancedBrace {
                span: self.span(open.start, open.start + 1),
            });
        }
        Ok(self.root)
    }

    fn command(&mut self) -> Result<(), ParseError> {
        let start = self.pos;
        self.pos += 1;
        let Some(next) = self.peek() else {
            return Err(ParseError::BareBackslashAtEof {
                span: self.span(start, self.pos),
            });
        };
        if next == '\\' {
            self.pos += 1;
            self.push(TokenKind::RowSep, start, self.pos);
            return Ok(());
        }
        if next.is_ascii_alphabetic() {
            let len = self.src[self.pos..]
                .find(|c: char| !c.is_ascii_alphabetic())
                .unwrap_or(self.src.len() - self.pos);
            let name = self.src[self.pos..self.pos + len].to_string();
            self.pos += len;
            self.push(TokenKind::Command(name), start, self.pos);
            // spaces after a control word are not significant
            let rest = &self.src[self.pos..];
            self.pos += rest.len() - rest.trim_start().len();
        } else {
            self.pos += next.len_utf8();
            self.push(TokenKind::Command(next.to_string()), start, self.pos);
        }
        Ok(())
    }

    fn open(&mut self, frame: Frame) {
        self.stack.push(Open {
            frame,
            start: self.pos,
            tokens: Vec::new(),
        });
        self.pos += 1;
    }

    fn close(&mut self, frame: Frame) -> Result<(), ParseError> {
        let here = self.pos;
        let open = match self.stack.last() {
            Some(open) if open.frame == frame => self.stack.pop().unwrap(),
            Some(open) => {
                return Err(ParseError::UnbalancedBrace {
                    span: self.span(open.start, open.start + 1),
                })
            }
            None => {
                return Err(ParseError::UnbalancedBrace {
                    span: self.span(here, here + 1),
                })
            }
        };
        self.pos += 1;
        let kind = match frame {
            Frame::Group => TokenKind::Group(open.tokens),
            Frame::Optional => TokenKind::Optional(open.tokens),
        };
        self.push(kind, open.start, self.pos);
        Ok(())
    }

    fn param(&mut self) {
        let start = self.pos;
        self.pos += 1;
        let len = self.src[self.pos..]
            .find(|c: char| c.is_whitespace() || matches!(c, '{' | '}' | '@' | '%' | '\\' | '&'))
            .unwrap_or(self.src.len() - self.pos);
        let raw = self.src[self.pos..self.pos + len].to_string();
        self.pos += len;
        self.push(TokenKind::Param(raw), start, self.pos);
    }

    fn text(&mut self) {
        let start = self.pos;
        let in_group = !self.stack.is_empty();
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| is_run_stop(c) || (!in_group && c.is_whitespace()))
            .unwrap_or(rest.len());
        let raw = rest[..len].trim_end();
        self.pos = start + len;
        let text = collapse_whitespace(raw);
        self.push(TokenKind::Text(text), start, start + raw.len());
    }
}

/// Replaces every whitespace run with a single space.
pub fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_ws = false;
    for c in s.chars() {
        if c.is_whitespace() {
            if !in_ws {
                out.push(' ');
            }
            in_ws = true;
        } else {
            out.push(c);
            in_ws = false;
        }
    }
    out
}
