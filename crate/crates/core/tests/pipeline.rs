//! Whole-pipeline properties over randomly generated circuits.

use proptest::prelude::*;

use qcirc_core::layout::SegmentKind;
use qcirc_core::model::{ast_to_json, json_to_ast, Element};
use qcirc_core::render::{emit_svg, svg_numbers, Shape, LAYER_TEXT};
use qcirc_core::{analyze, render, CircuitAst, Style};

/// One cell of source text. `target` picks a row for controls and vertical
/// wires; it is never the cell's own row.
fn cell_source(kind: u8, row: usize, target: usize, rows: usize) -> String {
    let offset = if rows > 1 {
        let t = target % (rows - 1);
        let t = if t >= row { t + 1 } else { t };
        Some(t as i64 - row as i64)
    } else {
        None
    };
    match (kind, offset) {
        (0, _) => String::new(),
        (1, _) => r"\qw".into(),
        (2, _) => r"\gate{H}".into(),
        (3, _) => r"\targ".into(),
        (4, Some(k)) => format!(r"\ctrl{{{k}}}"),
        (5, Some(k)) => format!(r"\ctrlo{{{k}}}"),
        (6, _) => r"\control \qw".into(),
        (7, _) => r"\meter".into(),
        (8, _) => r"\measure{M_a}".into(),
        (9, _) => r"\cw".into(),
        (10, _) => r"\qswap".into(),
        (11, _) => r"\rstick{\ket{\psi}} \qw".into(),
        (12, _) => r"\push{X} \qw".into(),
        (13, _) => r"\measureD{\chi}".into(),
        (14, Some(k)) => format!(r"\gate{{U^\dag}} \qwx[{k}]"),
        (15, Some(k)) => format!(r"\controlo \cw \cwx[{k}]"),
        (16, _) => r"\measuretab{M_{ijk}}".into(),
        (17, _) => r"{\mbox{note}}".into(),
        _ => r"\gate{V}".into(),
    }
}

/// Valid circuits: column 0 holds only sticks or nothing.
fn circuit_source() -> impl Strategy<Value = String> {
    (1usize..5, 1usize..6).prop_flat_map(|(rows, cols)| {
        let cells = prop::collection::vec((0u8..19, 0usize..8), rows * cols);
        let starts = prop::collection::vec(any::<bool>(), rows);
        let group = prop::option::of((0usize..rows, 0usize..cols, any::<bool>()));
        (cells, starts, group).prop_map(move |(cells, starts, group)| {
            let mut lines = Vec::new();
            for r in 0..rows {
                let mut row = vec![if starts[r] {
                    r"\lstick{\ket{0}}".to_string()
                } else {
                    String::new()
                }];
                for c in 0..cols {
                    let (kind, target) = cells[r * cols + c];
                    row.push(cell_source(kind, r, target, rows));
                }
                if r == rows - 1 {
                    if let Some((gr, gc, dotted)) = group {
                        let style = if dotted { "." } else { "--" };
                        row.last_mut().unwrap().push_str(&format!(
                            r" \gategroup{{1}}{{2}}{{{}}}{{{}}}{{.6em}}{{{style}}}",
                            gr + 1,
                            gc + 2
                        ));
                    }
                }
                lines.push(row.join(" & "));
            }
            format!(
                "\\Qcircuit @C=1em @R=.7em {{\n{}\n}}",
                lines.join(" \\\\\n")
            )
        })
    })
}

fn valid_ast(src: &str) -> CircuitAst {
    let analysis = analyze(src).expect("generated source parses");
    assert!(
        !analysis.has_errors(),
        "generated source has errors: {:?}\n{src}",
        analysis.diagnostics
    );
    analysis.ast
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generated_circuits_are_valid(src in circuit_source()) {
        valid_ast(&src);
    }

    #[test]
    fn output_is_deterministic(src in circuit_source()) {
        let style = Style::default();
        let a = valid_ast(&src);
        let b = valid_ast(&src);
        prop_assert_eq!(qcirc_core::to_svg(&a, &style), qcirc_core::to_svg(&b, &style));
        prop_assert_eq!(ast_to_json(&a), ast_to_json(&b));
    }

    #[test]
    fn json_round_trip(src in circuit_source()) {
        let ast = valid_ast(&src);
        let json = ast_to_json(&ast);
        let back = json_to_ast(&json).unwrap();
        prop_assert_eq!(&back, &ast);
        prop_assert_eq!(ast_to_json(&back), json);
    }

    #[test]
    fn layers_ascend_in_document(src in circuit_source()) {
        let style = Style::default();
        let r = render(&valid_ast(&src), &style);
        prop_assert!(r.shapes.items.windows(2).all(|w| w[0].layer <= w[1].layer));
        // the document follows the shape list order
        let svg = emit_svg(&r.shapes, &style.render);
        let classes: Vec<&str> = svg
            .lines()
            .filter_map(|l| l.strip_prefix("<g class=\""))
            .map(|l| &l[..l.find('"').unwrap()])
            .collect();
        let expected: Vec<&str> = r.shapes.items.iter().map(|i| i.class.as_str()).collect();
        prop_assert_eq!(classes, expected);
    }

    #[test]
    fn glyph_counts_equal_ast_counts(src in circuit_source()) {
        let style = Style::default();
        let ast = valid_ast(&src);
        let r = render(&ast, &style);
        let count = |f: fn(&Element) -> bool| ast.cells().filter(|(_, c)| f(&c.body)).count();
        prop_assert_eq!(r.shapes.count_class("targ"), count(|e| matches!(e, Element::Targ)));
        prop_assert_eq!(
            r.shapes.count_class("ctrl"),
            count(|e| matches!(e, Element::Ctrl { open: false, .. } | Element::Control { open: false }))
        );
        prop_assert_eq!(r.shapes.count_class("cw"), r.connectors.classical_count());
        let svg = emit_svg(&r.shapes, &style.render);
        prop_assert_eq!(svg.matches("<g class=\"targ\">").count(), count(|e| matches!(e, Element::Targ)));
    }

    #[test]
    fn shapes_lie_inside_canvas(src in circuit_source()) {
        let style = Style::default();
        let r = render(&valid_ast(&src), &style);
        let canvas = r.shapes.canvas(false);
        for item in r.shapes.items.iter().filter(|i| i.layer != LAYER_TEXT) {
            for shape in &item.shapes {
                let points = match shape {
                    Shape::Line { p1, p2, .. } => vec![*p1, *p2],
                    Shape::Rect { origin, width, height, .. } => {
                        vec![*origin, qcirc_core::layout::Point::new(origin.x + width, origin.y + height)]
                    }
                    Shape::Circle { center, .. } => vec![*center],
                    _ => vec![],
                };
                for p in points {
                    prop_assert!(canvas.contains(p), "{:?} outside {:?}", p, canvas);
                }
            }
        }
    }

    #[test]
    fn connector_endpoints_are_centers(src in circuit_source()) {
        let r = render(&valid_ast(&src), &Style::default());
        for s in &r.connectors.segments {
            let a = r.layout.center(s.from.row, s.from.col);
            let b = r.layout.center(s.to.row, s.to.col);
            prop_assert!((s.p1.x - a.x).abs() < 1e-9 && (s.p1.y - a.y).abs() < 1e-9);
            prop_assert!((s.p2.x - b.x).abs() < 1e-9 && (s.p2.y - b.y).abs() < 1e-9);
            match s.kind {
                SegmentKind::Horizontal => prop_assert_eq!(s.from.row, s.to.row),
                SegmentKind::Vertical => prop_assert_eq!(s.from.col, s.to.col),
            }
        }
    }

    #[test]
    fn scale_is_linear(src in circuit_source(), factor in 0.5f64..4.0) {
        let style = Style::default();
        let mut scaled = Style::default();
        scaled.render.scale *= factor;
        let ast = valid_ast(&src);
        let one = svg_numbers(&render(&ast, &style).shapes, &style.render);
        let other = svg_numbers(&render(&ast, &scaled).shapes, &scaled.render);
        prop_assert_eq!(one.len(), other.len());
        for (a, b) in one.iter().zip(&other) {
            prop_assert!((b - factor * a).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }
}

#[test]
fn fit_labels_grows_canvas() {
    let ast = valid_ast(
        r"\Qcircuit @C=1em @R=.7em { \lstick{\ket{\psi}} & \gate{H} & \rstick{out} \qw }",
    );
    let mut style = Style::default();
    let tight = render(&ast, &style).shapes.canvas(false);
    style.render.fit_labels = true;
    let fitted = render(&ast, &style).shapes.canvas(true);
    assert!(fitted.min_x < tight.min_x);
    assert!(fitted.max_x > tight.max_x);
}
