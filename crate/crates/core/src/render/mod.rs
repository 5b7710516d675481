//! Shape lists and SVG output.

mod shapes;
mod svg;

pub use shapes::render_shapes;
pub use svg::{emit_svg, emit_svg_with, format_number, svg_numbers, Fixed3, NumberSink};

use crate::layout::metrics::RunStyle;
use crate::layout::Point;

pub const LAYER_WIRES: u8 = 0;
pub const LAYER_BOXES: u8 = 1;
pub const LAYER_GLYPHS: u8 = 2;
pub const LAYER_TEXT: u8 = 3;
pub const LAYER_GROUPS: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dash {
    #[default]
    Solid,
    Dashed,
    Dotted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathSeg {
    MoveTo(Point),
    LineTo(Point),
    CubicTo(Point, Point, Point),
    Arc {
        rx: f64,
        ry: f64,
        large: bool,
        sweep: bool,
        to: Point,
    },
}

impl PathSeg {
    fn points(&self) -> Vec<Point> {
        match *self {
            PathSeg::MoveTo(p) | PathSeg::LineTo(p) => vec![p],
            PathSeg::CubicTo(a, b, c) => vec![a, b, c],
            PathSeg::Arc { to, .. } => vec![to],
        }
    }
}

/// A text run with an absolute baseline position.
#[derive(Debug, Clone, PartialEq)]
pub struct TextRun {
    pub x: f64,
    pub y: f64,
    pub size: f64,
    pub style: RunStyle,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Line {
        p1: Point,
        p2: Point,
        dash: Dash,
    },
    Rect {
        origin: Point,
        width: f64,
        height: f64,
        filled: bool,
        dash: Dash,
        corner_radius: f64,
    },
    Circle {
        center: Point,
        r: f64,
        filled: bool,
    },
    /// `fill` paints the background colour inside a closed path.
    Path {
        segments: Vec<PathSeg>,
        closed: bool,
        fill: bool,
    },
    /// `bounds` is the typeset box, used only when labels count toward the
    /// canvas.
    Text {
        anchor: Point,
        runs: Vec<TextRun>,
        bounds: Bounds,
    },
}

impl Shape {
    /// Geometric bounds of everything but text.
    fn bounds(&self) -> Bounds {
        let mut b = Bounds::EMPTY;
        match self {
            Shape::Line { p1, p2, .. } => {
                b.include(*p1);
                b.include(*p2);
            }
            Shape::Rect {
                origin,
                width,
                height,
                ..
            } => {
                b.include(*origin);
                b.include(Point::new(origin.x + width, origin.y + height));
            }
            Shape::Circle { center, r, .. } => {
                b.include(Point::new(center.x - r, center.y - r));
                b.include(Point::new(center.x + r, center.y + r));
            }
            Shape::Path { segments, .. } => {
                for p in segments.iter().flat_map(PathSeg::points) {
                    b.include(p);
                }
            }
            Shape::Text { .. } => {}
        }
        b
    }
}

/// Axis-aligned box; `EMPTY` is the identity for `union`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bounds {
    pub const EMPTY: Bounds = Bounds {
        min_x: f64::INFINITY,
        min_y: f64::INFINITY,
        max_x: f64::NEG_INFINITY,
        max_y: f64::NEG_INFINITY,
    };

    pub fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Self {
        Bounds {
            min_x,
            min_y,
            max_x,
            max_y,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.min_x > self.max_x || self.min_y > self.max_y
    }

    pub fn include(&mut self, p: Point) {
        self.min_x = self.min_x.min(p.x);
        self.min_y = self.min_y.min(p.y);
        self.max_x = self.max_x.max(p.x);
        self.max_y = self.max_y.max(p.y);
    }

    pub fn union(self, other: Bounds) -> Bounds {
        Bounds {
            min_x: self.min_x.min(other.min_x),
            min_y: self.min_y.min(other.min_y),
            max_x: self.max_x.max(other.max_x),
            max_y: self.max_y.max(other.max_y),
        }
    }

    pub fn inflate(self, d: f64) -> Bounds {
        Bounds::new(
            self.min_x - d,
            self.min_y - d,
            self.max_x + d,
            self.max_y + d,
        )
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }
}

/// Shapes drawn as one SVG group.
#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub layer: u8,
    pub class: String,
    pub shapes: Vec<Shape>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeList {
    pub items: Vec<Item>,
    /// The solved grid's box, from the origin to the far edges.
    pub circuit: Bounds,
}

impl ShapeList {
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn count_class(&self, class: &str) -> usize {
        self.items.iter().filter(|i| i.class == class).count()
    }

    /// Canvas before the margin: the circuit box, every non-text shape and,
    /// with `fit_labels`, the text boxes.
    pub fn canvas(&self, fit_labels: bool) -> Bounds {
        let mut b = self.circuit;
        for shape in self.items.iter().flat_map(|i| &i.shapes) {
            match shape {
                Shape::Text { bounds, .. } if fit_labels => b = b.union(*bounds),
                Shape::Text { .. } => {}
                s => b = b.union(s.bounds()),
            }
        }
        b
    }
}
