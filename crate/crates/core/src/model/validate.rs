use super::ast::{CircuitAst, Element, WireDecoration};
use super::diagnostic::{sort_diagnostics, Code, Diagnostic};
use crate::layout::{measure_label, FontMetrics};

/// Checks placement rules on an elaborated circuit. Diagnostics come back in
/// source order.
pub fn validate(ast: &CircuitAst) -> Vec<Diagnostic> {
    let metrics = FontMetrics::embedded();
    let rows = ast.row_count() as i64;
    let cols = ast.col_count() as i64;
    let mut out = Vec::new();

    for ((r, c), cell) in ast.cells() {
        let span = ast.cell_span(r, c);
        let mut push =
            |code, message: String| out.push(Diagnostic::at_cell(code, span, (r, c), message));
        let body = &cell.body;

        let left_wire = body.has_implicit_left_wire()
            || cell
                .decorations
                .iter()
                .any(|d| matches!(d, WireDecoration::Qw { .. }));
        if c == 0 && left_wire {
            let what = if body.has_implicit_left_wire() {
                format!("`\\{}`", body.name())
            } else {
                "horizontal wire".to_string()
            };
            push(
                Code::E001,
                format!("{what} in the leftmost column has no entry to connect to on its left"),
            );
        }

        if cell.decorations_before_body > 0 && !body.is_empty() {
            push(
                Code::E003,
                format!(
                    "wire command precedes the `\\{}` command in this entry",
                    body.name()
                ),
            );
        }

        let (r_i, c_i) = (r as i64, c as i64);
        if let Element::Ctrl { offset, .. } = body {
            if !(0..rows).contains(&(r_i + offset)) {
                push(
                    Code::E002,
                    format!(
                        "`\\{}{{{offset}}}` targets row {}, outside rows 1..{rows}",
                        body.name(),
                        r_i + offset + 1
                    ),
                );
            }
        }
        for deco in &cell.decorations {
            match *deco {
                WireDecoration::Qwx { offset, classical }
                    if !(0..rows).contains(&(r_i + offset)) =>
                {
                    let name = if classical { "cwx" } else { "qwx" };
                    push(
                        Code::E002,
                        format!(
                            "`\\{name}[{offset}]` targets row {}, outside rows 1..{rows}",
                            r_i + offset + 1
                        ),
                    );
                }
                // column 0 is already covered by E001
                WireDecoration::Qw { offset, classical }
                    if c > 0 && !(0..cols).contains(&(c_i + offset)) =>
                {
                    let name = if classical { "cw" } else { "qw" };
                    push(
                        Code::E002,
                        format!(
                            "`\\{name}[{offset}]` targets column {}, outside columns 1..{cols}",
                            c_i + offset + 1
                        ),
                    );
                }
                _ => {}
            }
        }

        if let Some(depth) = body.multi_depth() {
            if r + depth >= ast.row_count() {
                push(
                    Code::E005,
                    format!(
                        "`\\{}` of depth {depth} extends to row {}, past the last row {rows}",
                        body.name(),
                        r + depth + 1
                    ),
                );
            }
        }

        if let Element::Ghost { label } = body {
            let top = (0..r)
                .rev()
                .find_map(|above| ast.cell(above, c).body.multi_depth().map(|d| (above, d)));
            match top {
                Some((above, depth)) if above + depth >= r => {
                    let top_label = ast
                        .cell(above, c)
                        .body
                        .label()
                        .expect("multi-row gates are labelled");
                    let ghost_w = measure_label(label, metrics).width;
                    let top_w = measure_label(top_label, metrics).width;
                    if (ghost_w - top_w).abs() > 1e-9 {
                        push(
                            Code::W003,
                            format!(
                                "ghost label is {ghost_w:.3}em wide but the `\\{}` label in row {} is {top_w:.3}em",
                                ast.cell(above, c).body.name(),
                                above + 1
                            ),
                        );
                    }
                }
                _ => push(
                    Code::W001,
                    "ghost is not covered by a multigate or multimeasure above it in this column"
                        .to_string(),
                ),
            }
        }
    }

    for (i, group) in ast.groups.iter().enumerate() {
        if !group.in_bounds(ast.row_count(), ast.col_count()) {
            out.push(Diagnostic::new(
                Code::W002,
                ast.group_span(i),
                format!(
                    "gate group rows {}..{}, columns {}..{} lies outside the {rows}x{cols} grid",
                    group.r1, group.r2, group.c1, group.c2
                ),
            ));
        }
    }

    sort_diagnostics(&mut out);
    out
}
