//! Typed circuit AST: elaboration from raw cells, validation and the
//! canonical JSON form.

mod ast;
mod diagnostic;
mod elaborate;
mod json;
pub mod label;
mod validate;

pub use ast::{
    AstSpans, Cell, CircuitAst, Element, GateGroup, GroupStyle, MeasureStyle, StickDir,
    WireDecoration,
};
pub use diagnostic::{sort_diagnostics, Code, Diagnostic, Severity};
pub use elaborate::elaborate;
pub use json::{ast_to_json, json_to_ast, SchemaViolation, AST_VERSION};
pub use label::{LabelExpr, LabelRun, StyleKind};
pub use validate::validate;
