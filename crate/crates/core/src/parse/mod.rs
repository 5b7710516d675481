//! Tokenizing and parsing of Q-circuit source into an untyped cell grid.

mod length;
mod lexer;

pub use length::{parse_length, Length, Unit};
pub use lexer::{collapse_whitespace, tokenize, Token, TokenKind};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::span::Span;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unbalanced brace")]
    UnbalancedBrace { span: Span },
    #[error("backslash at end of input")]
    BareBackslashAtEof { span: Span },
    #[error("expected a `{{...}}` circuit body")]
    MissingBody { span: Span },
    #[error("unknown parameter `@{param}`")]
    UnknownParam { param: String, span: Span },
    #[error("malformed length `{text}`")]
    BadLength { text: String, span: Option<Span> },
    #[error("unexpected input after the circuit body")]
    TrailingInput { span: Span },
}

impl ParseError {
    pub fn span(&self) -> Option<Span> {
        match self {
            ParseError::UnbalancedBrace { span }
            | ParseError::BareBackslashAtEof { span }
            | ParseError::MissingBody { span }
            | ParseError::UnknownParam { span, .. }
            | ParseError::TrailingInput { span } => Some(*span),
            ParseError::BadLength { span, .. } => *span,
        }
    }
}

/// Which dimensions `@!R`, `@!C` or `@!` force to a uniform size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniform {
    #[default]
    None,
    Rows,
    Cols,
    All,
}

impl Uniform {
    pub fn rows(self) -> bool {
        matches!(self, Uniform::Rows | Uniform::All)
    }

    pub fn cols(self) -> bool {
        matches!(self, Uniform::Cols | Uniform::All)
    }

    fn with_rows(self) -> Self {
        if self.cols() {
            Uniform::All
        } else {
            Uniform::Rows
        }
    }

    fn with_cols(self) -> Self {
        if self.rows() {
            Uniform::All
        } else {
            Uniform::Cols
        }
    }
}

/// Default column and row separation when `@C` / `@R` are absent.
pub const DEFAULT_SEPARATION: Length = Length::em(1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacingParams {
    pub col_sep: Length,
    pub row_sep: Length,
    pub uniform: Uniform,
}

impl Default for SpacingParams {
    fn default() -> Self {
        SpacingParams {
            col_sep: DEFAULT_SEPARATION,
            row_sep: DEFAULT_SEPARATION,
            uniform: Uniform::None,
        }
    }
}

/// The tokens of one `&`-delimited entry.
#[derive(Debug, Clone, PartialEq)]
pub struct RawCell {
    pub items: Vec<Token>,
    /// Covers the items, or is empty at the cell's position when there are none.
    pub span: Span,
}

/// Rows of raw cells; rows may differ in length.
pub type RawGrid = Vec<Vec<RawCell>>;

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCircuit {
    pub params: SpacingParams,
    pub rows: RawGrid,
    /// Span of the `{...}` body.
    pub body_span: Span,
}

/// Parses a `\Qcircuit @params { rows }` expression. The `\Qcircuit` word is
/// optional, as is a surrounding `\[ ... \]` display-math wrapper.
pub fn parse(source: &str) -> Result<ParsedCircuit, ParseError> {
    let tokens = tokenize(source)?;
    let mut rest = tokens.as_slice();
    if let [first, inner @ ..] = rest {
        if first.is_command("[") {
            rest = inner;
            if let [inner @ .., last] = rest {
                if last.is_command("]") {
                    rest = inner;
                }
            }
        }
    }
    if let [first, inner @ ..] = rest {
        if first.is_command("Qcircuit") {
            rest = inner;
        }
    }

    let mut params = SpacingParams::default();
    while let [Token {
        kind: TokenKind::Param(raw),
        span,
    }, inner @ ..] = rest
    {
        apply_param(&mut params, raw, *span)?;
        rest = inner;
    }

    let (body, body_span) = match rest {
        [Token {
            kind: TokenKind::Group(body),
            span,
        }, inner @ ..] => {
            if let Some(extra) = inner.first() {
                return Err(ParseError::TrailingInput { span: extra.span });
            }
            (body, *span)
        }
        [other, ..] => return Err(ParseError::MissingBody { span: other.span }),
        [] => {
            let end = source.len();
            let span = crate::span::LineIndex::new(source).span(source, end, end);
            return Err(ParseError::MissingBody { span });
        }
    };

    Ok(ParsedCircuit {
        params,
        rows: split_grid(body, body_span),
        body_span,
    })
}

fn apply_param(params: &mut SpacingParams, raw: &str, span: Span) -> Result<(), ParseError> {
    let length = |text: &str| {
        parse_length(text).map_err(|_| ParseError::BadLength {
            text: text.to_string(),
            span: Some(span),
        })
    };
    match raw {
        "!" => params.uniform = Uniform::All,
        "!R" => params.uniform = params.uniform.with_rows(),
        "!C" => params.uniform = params.uniform.with_cols(),
        _ => {
            if let Some(v) = raw.strip_prefix("C=") {
                params.col_sep = length(v)?;
            } else if let Some(v) = raw.strip_prefix("R=") {
                params.row_sep = length(v)?;
            } else {
                return Err(ParseError::UnknownParam {
                    param: raw.to_string(),
                    span,
                });
            }
        }
    }
    Ok(())
}

fn split_grid(body: &[Token], body_span: Span) -> RawGrid {
    // position just inside the opening brace
    let mut cursor = Span {
        start: body_span.start + 1,
        end: body_span.start + 1,
        line: body_span.line,
        column: body_span.column + 1,
    };
    let mut rows: RawGrid = Vec::new();
    let mut row: Vec<RawCell> = Vec::new();
    let mut items: Vec<Token> = Vec::new();
    let mut trailing_row_sep = false;

    let finish_cell = |items: &mut Vec<Token>, cursor: Span| {
        let items = std::mem::take(items);
        let span = match (items.first(), items.last()) {
            (Some(a), Some(b)) => a.span.to(b.span),
            _ => cursor,
        };
        RawCell { items, span }
    };
    let after = |sep: Span| Span {
        start: sep.end,
        end: sep.end,
        line: sep.line,
        column: sep.column + sep.len(),
    };

    for token in body {
        match token.kind {
            TokenKind::CellSep => {
                row.push(finish_cell(&mut items, cursor));
                cursor = after(token.span);
                trailing_row_sep = false;
            }
            TokenKind::RowSep => {
                row.push(finish_cell(&mut items, cursor));
                rows.push(std::mem::take(&mut row));
                cursor = after(token.span);
                trailing_row_sep = true;
            }
            _ => {
                items.push(token.clone());
                trailing_row_sep = false;
            }
        }
    }
    if !(trailing_row_sep && items.is_empty()) {
        row.push(finish_cell(&mut items, cursor));
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(cell: &RawCell) -> Vec<&TokenKind> {
        cell.items.iter().map(|t| &t.kind).collect()
    }

    #[test]
    fn x_gate_listing() {
        let p = parse("\\Qcircuit @C=1em @R=.7em {\n      & \\gate{X} & \\qw\n}").unwrap();
        assert_eq!(p.params.col_sep, Length::em(1.0));
        assert_eq!(p.params.row_sep, Length::em(0.7));
        assert_eq!(p.params.uniform, Uniform::None);
        assert_eq!(p.rows.len(), 1);
        let row = &p.rows[0];
        assert_eq!(row.len(), 3);
        assert!(row[0].items.is_empty());
        assert!(row[1].items[0].is_command("gate"));
        assert!(row[2].items[0].is_command("qw"));
    }

    #[test]
    fn uniform_flags() {
        let p = parse(r"\Qcircuit @C=.7em @R=.4em @! { & \qw }").unwrap();
        assert_eq!(p.params.uniform, Uniform::All);
        let p = parse(r"\Qcircuit @C=.5em @R=0em @!R { & \qw }").unwrap();
        assert_eq!(p.params.uniform, Uniform::Rows);
        assert_eq!(p.params.row_sep, Length::em(0.0));
        let p = parse(r"@!C { & \qw }").unwrap();
        assert_eq!(p.params.uniform, Uniform::Cols);
        // parameters compose in any order
        let p = parse(r"@!C @R=2pt @!R { & \qw }").unwrap();
        assert_eq!(p.params.uniform, Uniform::All);
        assert_eq!(
            p.params.row_sep,
            Length {
                value: 2.0,
                unit: Unit::Pt
            }
        );
    }

    #[test]
    fn bare_body_uses_default_spacing() {
        let p = parse(r"\Qcircuit { a & i \\ 1 & x }").unwrap();
        assert_eq!(p.params, SpacingParams::default());
        assert_eq!(p.params.col_sep, Length::em(1.0));
        assert_eq!(p.rows.len(), 2);
        assert!(p.rows.iter().all(|r| r.len() == 2));
        assert_eq!(texts(&p.rows[1][1]), vec![&TokenKind::Text("x".into())]);

        let bare = parse(r"{ a & i \\ 1 & x }").unwrap();
        assert_eq!(bare.rows.len(), 2);
    }

    #[test]
    fn trailing_row_separator_is_dropped() {
        let p = parse("{ & \\gate{U_1} & \\qw \\\\\n & \\qw \\\\\n}").unwrap();
        assert_eq!(p.rows.len(), 2);
        assert_eq!(p.rows[0].len(), 3);
        assert_eq!(p.rows[1].len(), 2);
        // an empty body is a single empty cell
        let p = parse("{}").unwrap();
        assert_eq!(p.rows.len(), 1);
        assert_eq!(p.rows[0].len(), 1);
    }

    #[test]
    fn display_math_wrapper() {
        let p = parse("\\[ \\Qcircuit @C=1em @R=.7em {\n & \\gate{U} & \\qw \\\\\n & \\gate{U^\\dag} & \\qw\n} \\]").unwrap();
        assert_eq!(p.rows.len(), 2);
    }

    #[test]
    fn empty_cells_get_positional_spans() {
        let src = "{a&&b}";
        let p = parse(src).unwrap();
        let cells = &p.rows[0];
        assert_eq!(cells[1].span.start, 3);
        assert!(cells[1].span.is_empty());
        assert_eq!(cells[2].span.slice(src), "b");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse(r"\Qcircuit @C=1em"),
            Err(ParseError::MissingBody { .. })
        ));
        assert!(matches!(
            parse(r"\Qcircuit @C=1em \qw"),
            Err(ParseError::MissingBody { .. })
        ));
        assert!(matches!(parse(""), Err(ParseError::MissingBody { .. })));
        assert!(matches!(
            parse(r"\Qcircuit @L=1em { }"),
            Err(ParseError::UnknownParam { param, .. }) if param == "L=1em"
        ));
        assert!(matches!(
            parse(r"\Qcircuit @C=wide { }"),
            Err(ParseError::BadLength { span: Some(_), .. })
        ));
        assert!(matches!(
            parse(r"{ } x"),
            Err(ParseError::TrailingInput { .. })
        ));
        assert!(matches!(
            parse(r"{ \gate{X }"),
            Err(ParseError::UnbalancedBrace { .. })
        ));
    }
}
