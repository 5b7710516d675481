use super::{
    Bounds, Dash, Item, PathSeg, Shape, ShapeList, TextRun, LAYER_BOXES, LAYER_GLYPHS,
    LAYER_GROUPS, LAYER_TEXT, LAYER_WIRES,
};
use crate::layout::metrics::{typeset_label, FontMetrics, TypesetLabel};
use crate::layout::{ConnectorSet, Extent, LayoutGrid, Point, SegmentKind};
use crate::model::{CircuitAst, Element, GateGroup, GroupStyle, LabelExpr, MeasureStyle, StickDir};
use crate::style::Style;

/// Needle length relative to the meter arc radius.
const NEEDLE_RATIO: f64 = 1.25;
/// Distance from the bottom of a meter box to the arc center.
const METER_ARC_LIFT: f64 = 0.15;
/// Largest size of the folded tab on a `\measuretab` box.
const TAB_SIZE: f64 = 0.25;

#[derive(Clone, Copy)]
enum BoxShape {
    Plain,
    D,
    Tab,
}

struct Renderer<'a> {
    ast: &'a CircuitAst,
    layout: &'a LayoutGrid,
    style: &'a Style,
    metrics: &'static FontMetrics,
    items: Vec<Item>,
}

impl Renderer<'_> {
    fn push(&mut self, layer: u8, class: &str, shapes: Vec<Shape>) {
        if !shapes.is_empty() {
            self.items.push(Item {
                layer,
                class: class.to_string(),
                shapes,
            });
        }
    }

    /// Text with the left end of its baseline at `origin`.
    fn text(&self, t: &TypesetLabel, origin: Point) -> Option<Shape> {
        if t.runs.is_empty() {
            return None;
        }
        let runs = t
            .runs
            .iter()
            .map(|r| TextRun {
                x: origin.x + r.x,
                y: origin.y - r.rise,
                size: r.size,
                style: r.style,
                text: r.text.clone(),
            })
            .collect();
        Some(Shape::Text {
            anchor: origin,
            runs,
            bounds: Bounds::new(
                origin.x,
                origin.y - t.ascent,
                origin.x + t.width,
                origin.y + t.depth,
            ),
        })
    }

    /// Label centered on `center`.
    fn centered_label(&mut self, label: &LabelExpr, center: Point, class: &str) {
        let t = typeset_label(label, self.metrics);
        let origin = Point::new(center.x - t.width / 2.0, center.y + t.baseline_offset());
        let shape = self.text(&t, origin);
        self.push(LAYER_TEXT, class, shape.into_iter().collect());
    }

    fn stick(&mut self, dir: StickDir, label: &LabelExpr, center: Point) {
        let t = typeset_label(label, self.metrics);
        let gap = self.style.layout.stick_gap;
        let origin = match dir {
            StickDir::Left => Point::new(center.x - gap - t.width, center.y + t.baseline_offset()),
            StickDir::Right => Point::new(center.x + gap, center.y + t.baseline_offset()),
            StickDir::Up => Point::new(center.x - t.width / 2.0, center.y - gap - t.depth),
            StickDir::Down => Point::new(center.x - t.width / 2.0, center.y + gap + t.ascent),
        };
        let class = match dir {
            StickDir::Left => "lstick",
            StickDir::Right => "rstick",
            StickDir::Up => "ustick",
            StickDir::Down => "dstick",
        };
        let shape = self.text(&t, origin);
        self.push(LAYER_TEXT, class, shape.into_iter().collect());
    }

    fn wires(&mut self, connectors: &ConnectorSet) {
        let half_gap = self.style.render.classical_gap / 2.0;
        for seg in &connectors.segments {
            let line = |d: f64| {
                let (dx, dy) = match seg.kind {
                    SegmentKind::Horizontal => (0.0, d),
                    SegmentKind::Vertical => (d, 0.0),
                };
                Shape::Line {
                    p1: Point::new(seg.p1.x + dx, seg.p1.y + dy),
                    p2: Point::new(seg.p2.x + dx, seg.p2.y + dy),
                    dash: Dash::Solid,
                }
            };
            if seg.classical {
                self.push(LAYER_WIRES, "cw", vec![line(-half_gap), line(half_gap)]);
            } else {
                self.push(LAYER_WIRES, "qw", vec![line(0.0)]);
            }
        }
    }

    /// Framed box from `top` to `bottom` around `x`.
    fn frame(&mut self, shape: BoxShape, x: f64, width: f64, top: f64, bottom: f64, class: &str) {
        let x0 = x - width / 2.0;
        let x1 = x + width / 2.0;
        let height = bottom - top;
        let shapes = match shape {
            BoxShape::Plain => vec![Shape::Rect {
                origin: Point::new(x0, top),
                width,
                height,
                filled: true,
                dash: Dash::Solid,
                corner_radius: 0.0,
            }],
            BoxShape::D => {
                let r = height / 2.0;
                let straight_end = (x1 - r).max(x0);
                vec![Shape::Path {
                    segments: vec![
                        PathSeg::MoveTo(Point::new(x0, top)),
                        PathSeg::LineTo(Point::new(straight_end, top)),
                        PathSeg::Arc {
                            rx: r,
                            ry: r,
                            large: false,
                            sweep: true,
                            to: Point::new(straight_end, bottom),
                        },
                        PathSeg::LineTo(Point::new(x0, bottom)),
                    ],
                    closed: true,
                    fill: true,
                }]
            }
            BoxShape::Tab => {
                let t = TAB_SIZE.min(width / 4.0).min(height / 4.0);
                vec![
                    Shape::Path {
                        segments: vec![
                            PathSeg::MoveTo(Point::new(x0, top)),
                            PathSeg::LineTo(Point::new(x1 - t, top)),
                            PathSeg::LineTo(Point::new(x1, top + t)),
                            PathSeg::LineTo(Point::new(x1, bottom)),
                            PathSeg::LineTo(Point::new(x0, bottom)),
                        ],
                        closed: true,
                        fill: true,
                    },
                    Shape::Path {
                        segments: vec![
                            PathSeg::MoveTo(Point::new(x1 - t, top)),
                            PathSeg::LineTo(Point::new(x1 - t, top + t)),
                            PathSeg::LineTo(Point::new(x1, top + t)),
                        ],
                        closed: false,
                        fill: false,
                    },
                ]
            }
        };
        self.push(LAYER_BOXES, class, shapes);
    }

    fn boxed(
        &mut self,
        shape: BoxShape,
        label: &LabelExpr,
        center: Point,
        extent: Extent,
        class: &str,
    ) {
        self.frame(
            shape,
            center.x,
            extent.width,
            center.y - extent.height_above,
            center.y + extent.height_below,
            class,
        );
        self.centered_label(label, center, "label");
    }

    /// Multi-row box from the top of row `r` to the bottom of row `r + depth`.
    fn multi(
        &mut self,
        shape: BoxShape,
        label: &LabelExpr,
        r: usize,
        c: usize,
        depth: usize,
        class: &str,
    ) {
        let layout = self.layout;
        let last = (r + depth).min(layout.rows() - 1);
        let top = layout.row_center[r] - layout.row_height[r] / 2.0;
        let bottom = layout.row_center[last] + layout.row_height[last] / 2.0;
        let mut width = layout.cells[r][c].width;
        for rr in r + 1..=last {
            if matches!(self.ast.cell(rr, c).body, Element::Ghost { .. }) {
                width = width.max(layout.cells[rr][c].width);
            }
        }
        let x = layout.col_center[c];
        self.frame(shape, x, width, top, bottom, class);
        self.centered_label(label, Point::new(x, (top + bottom) / 2.0), "label");
    }

    fn meter(&mut self, center: Point) {
        let l = &self.style.layout;
        let rs = &self.style.render;
        let (w, h) = (l.meter_width, l.meter_height);
        let r = rs.meter_arc_radius;
        let arc_center = Point::new(center.x, center.y + h / 2.0 - METER_ARC_LIFT);
        let on_circle = |deg: f64, radius: f64| {
            let a = deg.to_radians();
            Point::new(
                arc_center.x + radius * a.cos(),
                arc_center.y - radius * a.sin(),
            )
        };
        let half_span = rs.meter_arc_span / 2.0;
        let shapes = vec![
            Shape::Rect {
                origin: Point::new(center.x - w / 2.0, center.y - h / 2.0),
                width: w,
                height: h,
                filled: true,
                dash: Dash::Solid,
                corner_radius: 0.0,
            },
            Shape::Path {
                segments: vec![
                    PathSeg::MoveTo(on_circle(90.0 + half_span, r)),
                    PathSeg::Arc {
                        rx: r,
                        ry: r,
                        large: rs.meter_arc_span > 180.0,
                        sweep: true,
                        to: on_circle(90.0 - half_span, r),
                    },
                ],
                closed: false,
                fill: false,
            },
            Shape::Line {
                p1: arc_center,
                p2: on_circle(rs.meter_needle_angle, r * NEEDLE_RATIO),
                dash: Dash::Solid,
            },
        ];
        self.push(LAYER_BOXES, "meter", shapes);
    }

    fn elements(&mut self) {
        let l = self.style.layout.clone();
        for ((r, c), cell) in self.ast.cells() {
            let center = self.layout.center(r, c);
            let extent = self.layout.cells[r][c];
            match &cell.body {
                Element::Empty | Element::Ghost { .. } => {}
                Element::Gate { label } => {
                    self.boxed(BoxShape::Plain, label, center, extent, "gate")
                }
                Element::Measure { label } => {
                    self.boxed(BoxShape::Plain, label, center, extent, "measure")
                }
                Element::MeasureD { label } => {
                    self.boxed(BoxShape::D, label, center, extent, "measure")
                }
                Element::MeasureTab { label } => {
                    self.boxed(BoxShape::Tab, label, center, extent, "measure")
                }
                Element::MultiGateTop { depth, label } => {
                    self.multi(BoxShape::Plain, label, r, c, *depth, "gate multi")
                }
                Element::MultiMeasureTop {
                    depth,
                    label,
                    style,
                } => {
                    let shape = match style {
                        MeasureStyle::Plain => BoxShape::Plain,
                        MeasureStyle::D => BoxShape::D,
                    };
                    self.multi(shape, label, r, c, *depth, "measure multi")
                }
                Element::Meter => self.meter(center),
                Element::Ctrl { open, .. } | Element::Control { open } => {
                    let class = if *open { "ctrlo" } else { "ctrl" };
                    let circle = Shape::Circle {
                        center,
                        r: l.ctrl_radius,
                        filled: !open,
                    };
                    self.push(LAYER_GLYPHS, class, vec![circle]);
                }
                Element::Targ => {
                    let rad = l.targ_radius;
                    let line = |dx: f64, dy: f64| Shape::Line {
                        p1: Point::new(center.x - dx, center.y - dy),
                        p2: Point::new(center.x + dx, center.y + dy),
                        dash: Dash::Solid,
                    };
                    let circle = Shape::Circle {
                        center,
                        r: rad,
                        filled: false,
                    };
                    self.push(
                        LAYER_GLYPHS,
                        "targ",
                        vec![circle, line(rad, 0.0), line(0.0, rad)],
                    );
                }
                Element::Swap => {
                    let s = l.swap_half_diagonal / std::f64::consts::SQRT_2;
                    let diagonal = |sign: f64| Shape::Line {
                        p1: Point::new(center.x - s, center.y - sign * s),
                        p2: Point::new(center.x + s, center.y + sign * s),
                        dash: Dash::Solid,
                    };
                    self.push(LAYER_GLYPHS, "swap", vec![diagonal(1.0), diagonal(-1.0)]);
                }
                Element::Stick { dir, label } => self.stick(*dir, label, center),
                Element::Push { label } => self.centered_label(label, center, "push"),
                Element::RawLabel { label } => self.centered_label(label, center, "raw"),
            }
        }
    }

    /// Region box over all cells of the group, or only its corners.
    fn group_box(&self, g: &GateGroup) -> Bounds {
        let (r1, c1, r2, c2) = (g.r1 - 1, g.c1 - 1, g.r2 - 1, g.c2 - 1);
        let mut b = Bounds::EMPTY;
        let mut add = |r: usize, c: usize| {
            let e = self.layout.cells[r][c];
            let p = self.layout.center(r, c);
            b.include(Point::new(p.x - e.width / 2.0, p.y - e.height_above));
            b.include(Point::new(p.x + e.width / 2.0, p.y + e.height_below));
        };
        if self.style.render.corner_only_groups {
            for (r, c) in [(r1, c1), (r1, c2), (r2, c1), (r2, c2)] {
                add(r, c);
            }
        } else {
            for r in r1..=r2 {
                for c in c1..=c2 {
                    add(r, c);
                }
            }
        }
        b.inflate(g.pad.to_em() / 2.0)
    }

    fn groups(&mut self) {
        let depth = self.style.render.brace_depth;
        for g in &self.ast.groups {
            let b = self.group_box(g);
            let rect = |dash: Dash| Shape::Rect {
                origin: Point::new(b.min_x, b.min_y),
                width: b.max_x - b.min_x,
                height: b.max_y - b.min_y,
                filled: false,
                dash,
                corner_radius: 0.0,
            };
            let (class, shape) = match g.style {
                GroupStyle::DashedBox => ("group dashed", rect(Dash::Dashed)),
                GroupStyle::DottedBox => ("group dotted", rect(Dash::Dotted)),
                GroupStyle::BraceBottom => {
                    ("group brace", brace(b.min_x, b.max_x, b.max_y, depth, true))
                }
                GroupStyle::BraceTop => (
                    "group brace",
                    brace(b.min_x, b.max_x, b.min_y, -depth, true),
                ),
                GroupStyle::BraceLeft => (
                    "group brace",
                    brace(b.min_y, b.max_y, b.min_x, -depth, false),
                ),
                GroupStyle::BraceRight => (
                    "group brace",
                    brace(b.min_y, b.max_y, b.max_x, depth, false),
                ),
                GroupStyle::ParenBottom => {
                    ("group paren", paren(b.min_x, b.max_x, b.max_y, depth, true))
                }
                GroupStyle::ParenTop => (
                    "group paren",
                    paren(b.min_x, b.max_x, b.min_y, -depth, true),
                ),
                GroupStyle::ParenLeft => (
                    "group paren",
                    paren(b.min_y, b.max_y, b.min_x, -depth, false),
                ),
                GroupStyle::ParenRight => (
                    "group paren",
                    paren(b.min_y, b.max_y, b.max_x, depth, false),
                ),
            };
            self.push(LAYER_GROUPS, class, vec![shape]);
        }
    }
}

/// Maps (along, across) to a point on a horizontal or vertical side.
fn side_point(horizontal: bool, along: f64, across: f64) -> Point {
    if horizontal {
        Point::new(along, across)
    } else {
        Point::new(across, along)
    }
}

/// Curly brace from `a` to `b` along a side at `at`, bulging by `depth`
/// (signed, positive toward +x/+y) with its cusp at the middle.
fn brace(a: f64, b: f64, at: f64, depth: f64, horizontal: bool) -> Shape {
    let p = |along, across| side_point(horizontal, along, across);
    let m = (a + b) / 2.0;
    let half = depth / 2.0;
    Shape::Path {
        segments: vec![
            PathSeg::MoveTo(p(a, at)),
            PathSeg::CubicTo(p(a, at + half), p(m, at + half), p(m, at + depth)),
            PathSeg::CubicTo(p(m, at + half), p(b, at + half), p(b, at)),
        ],
        closed: false,
        fill: false,
    }
}

/// Elliptical arc from `a` to `b` along a side, bulging by `depth`.
fn paren(a: f64, b: f64, at: f64, depth: f64, horizontal: bool) -> Shape {
    let p = |along, across| side_point(horizontal, along, across);
    // Travelling in +x, bulging toward +y turns clockwise on screen; the
    // axes swap for vertical sides, which flips the turn.
    let sweep = (depth > 0.0) != horizontal;
    let radius_along = (b - a) / 2.0;
    let (rx, ry) = if horizontal {
        (radius_along, depth.abs())
    } else {
        (depth.abs(), radius_along)
    };
    Shape::Path {
        segments: vec![
            PathSeg::MoveTo(p(a, at)),
            PathSeg::Arc {
                rx,
                ry,
                large: false,
                sweep,
                to: p(b, at),
            },
        ],
        closed: false,
        fill: false,
    }
}

/// Turns a solved circuit into layered shapes. Wires come first, then boxes,
/// glyphs, text and group overlays, each in row-major order.
pub fn render_shapes(
    ast: &CircuitAst,
    layout: &LayoutGrid,
    connectors: &ConnectorSet,
    style: &Style,
) -> ShapeList {
    let mut renderer = Renderer {
        ast,
        layout,
        style,
        metrics: FontMetrics::embedded(),
        items: Vec::new(),
    };
    renderer.wires(connectors);
    renderer.elements();
    renderer.groups();
    let mut items = renderer.items;
    items.sort_by_key(|i| i.layer);
    ShapeList {
        items,
        circuit: Bounds::new(0.0, 0.0, layout.width(), layout.height()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{place_connectors, size_elements, solve_grid};
    use crate::model::elaborate;
    use crate::parse::parse;

    fn shapes_with(src: &str, style: &Style) -> (ShapeList, LayoutGrid) {
        let p = parse(src).unwrap();
        let (ast, _) = elaborate(p.params, &p.rows);
        let sized = size_elements(&ast, FontMetrics::embedded(), &style.layout);
        let layout = solve_grid(&sized, &ast.params);
        let connectors = place_connectors(&ast, &layout);
        (render_shapes(&ast, &layout, &connectors, style), layout)
    }

    fn shapes(src: &str) -> ShapeList {
        shapes_with(src, &Style::default()).0
    }

    #[test]
    fn empty_grid_has_no_shapes() {
        assert!(shapes("{}").is_empty());
    }

    #[test]
    fn controlled_z() {
        let list = shapes(r"\Qcircuit @C=1em @R=.7em { & \ctrl{1} & \qw \\ & \control \qw & \qw }");
        assert_eq!(list.count_class("ctrl"), 2);
        assert_eq!(list.count_class("gate"), 0);
        let verticals = list
            .items
            .iter()
            .flat_map(|i| &i.shapes)
            .filter(|s| matches!(s, Shape::Line { p1, p2, .. } if p1.x == p2.x && p1.y != p2.y))
            .count();
        assert_eq!(verticals, 1);
        assert!(list.count_class("qw") >= 3);
    }

    #[test]
    fn layers_ascend() {
        let list = shapes(r"{ \lstick{a} & \gate{U} & \meter \gategroup{1}{2}{1}{3}{.7em}{--} }");
        assert!(list.items.windows(2).all(|w| w[0].layer <= w[1].layer));
        assert_eq!(list.items.first().unwrap().layer, LAYER_WIRES);
        assert_eq!(list.items.last().unwrap().layer, LAYER_GROUPS);
    }

    #[test]
    fn classical_wires_are_pairs() {
        let list = shapes(r"{ & \meter & \cw }");
        let cw: Vec<_> = list.items.iter().filter(|i| i.class == "cw").collect();
        assert_eq!(cw.len(), 1);
        let Shape::Line { p1: a, .. } = cw[0].shapes[0] else {
            panic!()
        };
        let Shape::Line { p1: b, .. } = cw[0].shapes[1] else {
            panic!()
        };
        assert!((b.y - a.y - 0.08).abs() < 1e-12);
    }

    #[test]
    fn group_covers_every_cell_in_region() {
        // the middle row holds the widest gate; corner-only sizing misses it
        let src =
            r"{ & \gate{A} \gategroup{1}{2}{3}{2}{.4em}{--} \\ & \gate{WWWWWW} \\ & \gate{A} }";
        let (full, layout) = shapes_with(src, &Style::default());
        let mut corner_style = Style::default();
        corner_style.render.corner_only_groups = true;
        let (corner, _) = shapes_with(src, &corner_style);
        let width = |list: &ShapeList| match list.items.last().unwrap().shapes[0] {
            Shape::Rect { width, .. } => width,
            _ => panic!(),
        };
        let wide = layout.cells[1][1].width;
        assert!((width(&full) - (wide + 0.4)).abs() < 1e-12);
        assert!(width(&corner) < width(&full));
    }

    #[test]
    fn multigate_spans_rows() {
        let (list, layout) = shapes_with(
            r"{ & \multigate{1}{U} & \qw \\ & \ghost{U} & \qw }",
            &Style::default(),
        );
        let item = list.items.iter().find(|i| i.class == "gate multi").unwrap();
        let Shape::Rect { origin, height, .. } = item.shapes[0] else {
            panic!()
        };
        let top = layout.row_center[0] - layout.row_height[0] / 2.0;
        let bottom = layout.row_center[1] + layout.row_height[1] / 2.0;
        assert_eq!(origin.y, top);
        assert!((height - (bottom - top)).abs() < 1e-12);
    }

    #[test]
    fn braces_bulge_outward() {
        let list = shapes(r"{ & \gate{A} \gategroup{1}{2}{1}{2}{.4em}{_\}} }");
        let item = list.items.last().unwrap();
        let Shape::Path { segments, .. } = &item.shapes[0] else {
            panic!()
        };
        let PathSeg::CubicTo(_, _, cusp) = segments[1] else {
            panic!()
        };
        let PathSeg::MoveTo(start) = segments[0] else {
            panic!()
        };
        assert!((cusp.y - start.y - 0.3).abs() < 1e-12);
    }
}
