use std::fmt::Write as _;

use super::{Dash, PathSeg, Shape, ShapeList};
use crate::layout::metrics::RunStyle;
use crate::layout::Point;
use crate::style::RenderStyle;

/// Receives every length written to the document, already scaled to user
/// units.
pub trait NumberSink {
    fn number(&mut self, out: &mut String, v: f64);
}

/// Fixed three-decimal formatting with negative zero folded to zero.
pub fn format_number(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// The sink used for document output.
pub struct Fixed3;

impl NumberSink for Fixed3 {
    fn number(&mut self, out: &mut String, v: f64) {
        out.push_str(&format_number(v));
    }
}

struct Collect(Vec<f64>);

impl NumberSink for Collect {
    fn number(&mut self, out: &mut String, v: f64) {
        self.0.push(v);
        out.push_str(&format_number(v));
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

struct Writer<'a, S: NumberSink> {
    out: String,
    sink: &'a mut S,
    scale: f64,
}

impl<S: NumberSink> Writer<'_, S> {
    fn raw(&mut self, s: &str) {
        self.out.push_str(s);
    }

    /// A length in em, written in user units.
    fn len(&mut self, v: f64) {
        let scaled = v * self.scale;
        self.sink.number(&mut self.out, scaled);
    }

    fn attr(&mut self, name: &str, v: f64) {
        let _ = write!(self.out, " {name}=\"");
        self.len(v);
        self.out.push('"');
    }

    fn point(&mut self, p: Point) {
        self.len(p.x);
        self.out.push(' ');
        self.len(p.y);
    }

    fn dash(&mut self, dash: Dash, style: &RenderStyle) {
        let (on, off) = match dash {
            Dash::Solid => return,
            Dash::Dashed => (style.dash_on, style.dash_off),
            Dash::Dotted => (style.dot_on, style.dot_off),
        };
        self.raw(" stroke-dasharray=\"");
        self.len(on);
        self.raw(" ");
        self.len(off);
        self.raw("\"");
        if dash == Dash::Dotted {
            self.raw(" stroke-linecap=\"round\"");
        }
    }

    fn shape(&mut self, shape: &Shape, style: &RenderStyle) {
        match shape {
            Shape::Line { p1, p2, dash } => {
                self.raw("<line");
                self.attr("x1", p1.x);
                self.attr("y1", p1.y);
                self.attr("x2", p2.x);
                self.attr("y2", p2.y);
                self.dash(*dash, style);
                self.raw("/>");
            }
            Shape::Rect {
                origin,
                width,
                height,
                filled,
                dash,
                corner_radius,
            } => {
                self.raw("<rect");
                self.attr("x", origin.x);
                self.attr("y", origin.y);
                self.attr("width", *width);
                self.attr("height", *height);
                if *corner_radius > 0.0 {
                    self.attr("rx", *corner_radius);
                }
                if *filled {
                    let _ = write!(self.out, " fill=\"{}\"", escape(&style.background));
                }
                self.dash(*dash, style);
                self.raw("/>");
            }
            Shape::Circle { center, r, filled } => {
                self.raw("<circle");
                self.attr("cx", center.x);
                self.attr("cy", center.y);
                self.attr("r", *r);
                let fill = if *filled {
                    &style.foreground
                } else {
                    &style.background
                };
                let _ = write!(self.out, " fill=\"{}\"/>", escape(fill));
            }
            Shape::Path {
                segments,
                closed,
                fill,
            } => {
                self.raw("<path d=\"");
                for (i, seg) in segments.iter().enumerate() {
                    if i > 0 {
                        self.raw(" ");
                    }
                    match *seg {
                        PathSeg::MoveTo(p) => {
                            self.raw("M ");
                            self.point(p);
                        }
                        PathSeg::LineTo(p) => {
                            self.raw("L ");
                            self.point(p);
                        }
                        PathSeg::CubicTo(a, b, c) => {
                            self.raw("C ");
                            self.point(a);
                            self.raw(" ");
                            self.point(b);
                            self.raw(" ");
                            self.point(c);
                        }
                        PathSeg::Arc {
                            rx,
                            ry,
                            large,
                            sweep,
                            to,
                        } => {
                            self.raw("A ");
                            self.len(rx);
                            self.raw(" ");
                            self.len(ry);
                            let _ = write!(self.out, " 0 {} {} ", large as u8, sweep as u8);
                            self.point(to);
                        }
                    }
                }
                if *closed {
                    self.raw(" Z");
                }
                self.raw("\"");
                if *fill {
                    let _ = write!(self.out, " fill=\"{}\"", escape(&style.background));
                }
                self.raw("/>");
            }
            Shape::Text { runs, .. } => {
                let _ = write!(
                    self.out,
                    "<text fill=\"{}\" stroke=\"none\">",
                    escape(&style.foreground)
                );
                for run in runs {
                    self.raw("<tspan");
                    self.attr("x", run.x);
                    self.attr("y", run.y);
                    self.attr("font-size", run.size);
                    match run.style {
                        RunStyle::Math => self.raw(" font-style=\"italic\""),
                        RunStyle::Upright => {}
                        RunStyle::Calligraphic => self.raw(" font-family=\"cursive\""),
                    }
                    let _ = write!(self.out, ">{}</tspan>", escape(&run.text));
                }
                self.raw("</text>");
            }
        }
    }
}

/// Writes the document, passing every length through `sink`.
pub fn emit_svg_with<S: NumberSink>(
    shapes: &ShapeList,
    style: &RenderStyle,
    sink: &mut S,
) -> String {
    let mut w = Writer {
        out: String::new(),
        sink,
        scale: style.scale,
    };
    let canvas = shapes.canvas(style.fit_labels).inflate(style.margin);
    w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    w.raw("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"");
    w.attr("width", canvas.max_x - canvas.min_x);
    w.attr("height", canvas.max_y - canvas.min_y);
    w.raw(" viewBox=\"");
    w.len(canvas.min_x);
    w.raw(" ");
    w.len(canvas.min_y);
    w.raw(" ");
    w.len(canvas.max_x - canvas.min_x);
    w.raw(" ");
    w.len(canvas.max_y - canvas.min_y);
    w.raw("\">\n");
    if !shapes.is_empty() {
        let _ = write!(
            w.out,
            "<g fill=\"none\" stroke=\"{}\" font-family=\"{}\"",
            escape(&style.foreground),
            escape(&style.font_family)
        );
        w.attr("stroke-width", style.stroke_width);
        w.raw(">\n");
        // stable sort keeps insertion order within a layer
        let mut items: Vec<_> = shapes.items.iter().collect();
        items.sort_by_key(|i| i.layer);
        for item in items {
            let _ = write!(w.out, "<g class=\"{}\">", escape(&item.class));
            for shape in &item.shapes {
                w.shape(shape, style);
            }
            w.raw("</g>\n");
        }
        w.raw("</g>\n");
    }
    w.raw("</svg>\n");
    w.out
}

pub fn emit_svg(shapes: &ShapeList, style: &RenderStyle) -> String {
    emit_svg_with(shapes, style, &mut Fixed3)
}

/// Every length the document contains, in emission order and unrounded.
pub fn svg_numbers(shapes: &ShapeList, style: &RenderStyle) -> Vec<f64> {
    let mut sink = Collect(Vec::new());
    emit_svg_with(shapes, style, &mut sink);
    sink.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::Point;
    use crate::render::{Bounds, Item, LAYER_BOXES, LAYER_WIRES};

    fn list(items: Vec<Item>) -> ShapeList {
        ShapeList {
            items,
            circuit: Bounds::new(0.0, 0.0, 2.0, 1.0),
        }
    }

    fn line(x: f64) -> Shape {
        Shape::Line {
            p1: Point::new(x, 0.0),
            p2: Point::new(x + 1.0, 0.0),
            dash: Dash::Solid,
        }
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(1.0), "1.000");
        assert_eq!(format_number(-0.0004), "0.000");
        assert_eq!(format_number(-0.0), "0.000");
        assert_eq!(format_number(2.34567), "2.346");
        assert_eq!(format_number(-1.5), "-1.500");
    }

    #[test]
    fn empty_list_is_root_only() {
        let empty = ShapeList {
            items: vec![],
            circuit: Bounds::new(0.0, 0.0, 0.0, 0.0),
        };
        let svg = emit_svg(&empty, &RenderStyle::default());
        assert_eq!(
            svg,
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"10.000\" height=\"10.000\" viewBox=\"-5.000 -5.000 10.000 10.000\">\n\
             </svg>\n"
        );
    }

    #[test]
    fn layers_emitted_in_order() {
        let items = vec![
            Item {
                layer: LAYER_BOXES,
                class: "late".into(),
                shapes: vec![line(0.0)],
            },
            Item {
                layer: LAYER_WIRES,
                class: "early".into(),
                shapes: vec![line(1.0)],
            },
        ];
        let svg = emit_svg(&list(items), &RenderStyle::default());
        assert!(svg.find("early").unwrap() < svg.find("late").unwrap());
    }

    #[test]
    fn scale_multiplies_numbers() {
        let l = list(vec![Item {
            layer: 0,
            class: "qw".into(),
            shapes: vec![line(0.3333)],
        }]);
        let one = svg_numbers(&l, &RenderStyle::default());
        let mut doubled = RenderStyle::default();
        doubled.scale *= 2.0;
        let two = svg_numbers(&l, &doubled);
        assert_eq!(one.len(), two.len());
        for (a, b) in one.iter().zip(&two) {
            assert!((b - 2.0 * a).abs() < 1e-9);
        }
    }

    #[test]
    fn text_is_escaped() {
        let l = list(vec![Item {
            layer: 3,
            class: "raw".into(),
            shapes: vec![Shape::Text {
                anchor: Point::new(0.0, 0.0),
                runs: vec![crate::render::TextRun {
                    x: 0.0,
                    y: 0.0,
                    size: 1.0,
                    style: RunStyle::Upright,
                    text: "a<b&c".into(),
                }],
                bounds: Bounds::new(0.0, -0.5, 1.0, 0.1),
            }],
        }]);
        let svg = emit_svg(&l, &RenderStyle::default());
        assert!(svg.contains(">a&lt;b&amp;c</tspan>"));
    }
}
