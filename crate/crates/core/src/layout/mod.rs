//! Entry sizing, grid solving and wire placement. All lengths are in em,
//! with y growing downward from the top-left corner of the circuit.

mod connectors;
mod grid;
pub mod metrics;
mod sizing;

pub use connectors::{place_connectors, CellRef, ConnectorSet, Segment, SegmentKind};
pub use grid::{solve_grid, LayoutGrid};
pub use metrics::{measure_label, typeset_label, FontMetrics, TypesetLabel};
pub use sizing::{size_elements, SizedGrid};

/// Size of an entry relative to its center line.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Extent {
    pub width: f64,
    pub height_above: f64,
    pub height_below: f64,
}

impl Extent {
    pub fn new(width: f64, height_above: f64, height_below: f64) -> Self {
        Extent {
            width,
            height_above,
            height_below,
        }
    }

    pub fn height(&self) -> f64 {
        self.height_above + self.height_below
    }

    pub fn is_zero(&self) -> bool {
        self.width == 0.0 && self.height() == 0.0
    }
}

/// Distances from an entry's center to the edges of what it draws. Unlike
/// [`Extent`] this need not be horizontally symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VisualBox {
    pub left: f64,
    pub right: f64,
    pub up: f64,
    pub down: f64,
}

impl From<Extent> for VisualBox {
    fn from(e: Extent) -> Self {
        VisualBox {
            left: e.width / 2.0,
            right: e.width / 2.0,
            up: e.height_above,
            down: e.height_below,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}
