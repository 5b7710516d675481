//! Canonical JSON form of [`CircuitAst`] (`qcirc-ast/1`).

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;
use thiserror::Error;

use super::ast::{Cell, CircuitAst, Element, GateGroup, WireDecoration};
use crate::parse::SpacingParams;

pub const AST_VERSION: &str = "qcirc-ast/1";

#[derive(Debug, Clone, PartialEq, Error)]
#[error("schema violation at `{path}`: {message}")]
pub struct SchemaViolation {
    /// JSON pointer to the offending value (empty for the document root).
    pub path: String,
    pub message: String,
}

impl SchemaViolation {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaViolation {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Serialize)]
struct DocumentRef<'a> {
    version: &'static str,
    params: &'a SpacingParams,
    rows: &'a [Vec<Cell>],
    groups: &'a [GateGroup],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    version: String,
    params: SpacingParams,
    rows: Vec<Vec<Cell>>,
    #[serde(default)]
    groups: Vec<GateGroup>,
}

/// Pretty-printed JSON with a trailing newline. Spans are not included.
pub fn ast_to_json(ast: &CircuitAst) -> String {
    let doc = DocumentRef {
        version: AST_VERSION,
        params: &ast.params,
        rows: &ast.rows,
        groups: &ast.groups,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("AST serialization cannot fail");
    text.push('\n');
    text
}

pub fn json_to_ast(text: &str) -> Result<CircuitAst, SchemaViolation> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let pointer = pointer(err.path());
        SchemaViolation::new(pointer, err.into_inner().to_string())
    })?;
    de.end()
        .map_err(|e| SchemaViolation::new("", e.to_string()))?;

    if doc.version != AST_VERSION {
        return Err(SchemaViolation::new(
            "/version",
            format!("expected \"{AST_VERSION}\", found \"{}\"", doc.version),
        ));
    }
    check_cells(&doc.rows)?;
    let height = doc.rows.len();
    let width = doc.rows.first().map_or(0, Vec::len);
    for (i, g) in doc.groups.iter().enumerate() {
        if !g.in_bounds(height, width) {
            return Err(SchemaViolation::new(
                format!("/groups/{i}"),
                format!(
                    "group must satisfy 1 <= r1 <= r2 <= {height} and 1 <= c1 <= c2 <= {width}"
                ),
            ));
        }
    }
    Ok(CircuitAst {
        params: doc.params,
        rows: doc.rows,
        groups: doc.groups,
        spans: None,
    })
}

fn check_cells(rows: &[Vec<Cell>]) -> Result<(), SchemaViolation> {
    let width = rows.first().map_or(0, Vec::len);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(SchemaViolation::new(
                format!("/rows/{r}"),
                format!("row has {} cells, expected {width}", row.len()),
            ));
        }
        for (c, cell) in row.iter().enumerate() {
            let at = format!("/rows/{r}/{c}");
            match cell.body {
                Element::Ctrl { offset: 0, .. } => {
                    return Err(SchemaViolation::new(
                        format!("{at}/body/offset"),
                        "must be non-zero",
                    ))
                }
                Element::MultiGateTop { depth: 0, .. }
                | Element::MultiMeasureTop { depth: 0, .. } => {
                    return Err(SchemaViolation::new(
                        format!("{at}/body/depth"),
                        "must be at least 1",
                    ))
                }
                _ => {}
            }
            for (k, d) in cell.decorations.iter().enumerate() {
                let bad = match *d {
                    WireDecoration::Qw { offset, .. } => {
                        (offset >= 0).then_some("must be negative")
                    }
                    WireDecoration::Qwx { offset, .. } => {
                        (offset == 0).then_some("must be non-zero")
                    }
                };
                if let Some(message) = bad {
                    return Err(SchemaViolation::new(
                        format!("{at}/decorations/{k}/offset"),
                        message,
                    ));
                }
            }
            if cell.decorations_before_body > cell.decorations.len() {
                return Err(SchemaViolation::new(
                    format!("{at}/decorations_before_body"),
                    "exceeds the number of decorations",
                ));
            }
        }
    }
    Ok(())
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for segment in path.iter() {
        match segment {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Enum { .. } | Segment::Unknown => {}
        }
    }
    out
}
