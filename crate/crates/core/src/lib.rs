//! Compiler for Q-circuit quantum circuit diagrams.
//!
//! ```
//! let source = r"\Qcircuit @C=1em @R=.7em { & \gate{X} & \qw }";
//! let analysis = qcirc_core::analyze(source).unwrap();
//! assert!(analysis.diagnostics.is_empty());
//! let svg = qcirc_core::to_svg(&analysis.ast, &qcirc_core::Style::default());
//! assert!(svg.contains("class=\"gate\""));
//! ```

pub mod layout;
pub mod model;
pub mod parse;
pub mod render;
pub mod span;
pub mod style;

pub use model::{CircuitAst, Code, Diagnostic, Severity};
pub use parse::ParseError;
pub use span::Span;
pub use style::{Style, StyleError};

use layout::{place_connectors, size_elements, solve_grid, ConnectorSet, FontMetrics, LayoutGrid};
use render::{emit_svg, render_shapes, ShapeList};

/// A parsed and checked circuit.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub ast: CircuitAst,
    /// Errors and warnings in source order.
    pub diagnostics: Vec<Diagnostic>,
}

impl Analysis {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

/// Parses, elaborates and validates `source`, collecting every diagnostic
/// including fallback-metric warnings.
pub fn analyze(source: &str) -> Result<Analysis, ParseError> {
    let parsed = parse::parse(source)?;
    let (ast, mut diagnostics) = model::elaborate(parsed.params, &parsed.rows);
    diagnostics.extend(model::validate(&ast));
    let sized = size_elements(
        &ast,
        FontMetrics::embedded(),
        &style::LayoutStyle::default(),
    );
    diagnostics.extend(sized.warnings);
    model::sort_diagnostics(&mut diagnostics);
    Ok(Analysis { ast, diagnostics })
}

/// Everything computed between the AST and the document.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub layout: LayoutGrid,
    pub connectors: ConnectorSet,
    pub shapes: ShapeList,
}

/// Lays out and renders an error-free AST.
pub fn render(ast: &CircuitAst, style: &Style) -> Rendered {
    let sized = size_elements(ast, FontMetrics::embedded(), &style.layout);
    let layout = solve_grid(&sized, &ast.params);
    let connectors = place_connectors(ast, &layout);
    let shapes = render_shapes(ast, &layout, &connectors, style);
    Rendered {
        layout,
        connectors,
        shapes,
    }
}

pub fn to_svg(ast: &CircuitAst, style: &Style) -> String {
    emit_svg(&render(ast, style).shapes, &style.render)
}
