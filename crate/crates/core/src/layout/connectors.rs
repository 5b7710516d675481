use std::collections::HashSet;

use super::grid::LayoutGrid;
use super::Point;
use crate::model::{CircuitAst, Element, WireDecoration};

/// 0-based grid position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub row: usize,
    pub col: usize,
}

impl CellRef {
    pub fn new(row: usize, col: usize) -> Self {
        CellRef { row, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    Horizontal,
    Vertical,
}

/// A wire between two entry centers.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub classical: bool,
    pub from: CellRef,
    pub to: CellRef,
    pub p1: Point,
    pub p2: Point,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConnectorSet {
    pub segments: Vec<Segment>,
}

impl ConnectorSet {
    pub fn classical_count(&self) -> usize {
        self.segments.iter().filter(|s| s.classical).count()
    }
}

struct Placer<'a> {
    layout: &'a LayoutGrid,
    rows: i64,
    cols: i64,
    seen: HashSet<(SegmentKind, bool, CellRef, CellRef)>,
    out: Vec<Segment>,
}

impl Placer<'_> {
    fn add(&mut self, kind: SegmentKind, classical: bool, from: CellRef, row: i64, col: i64) {
        if !(0..self.rows).contains(&row) || !(0..self.cols).contains(&col) {
            return;
        }
        let to = CellRef::new(row as usize, col as usize);
        if to == from {
            return;
        }
        let key = (kind, classical, from.min(to), from.max(to));
        if !self.seen.insert(key) {
            return;
        }
        self.out.push(Segment {
            kind,
            classical,
            from,
            to,
            p1: self.layout.center(from.row, from.col),
            p2: self.layout.center(to.row, to.col),
        });
    }
}

/// Resolves explicit and implicit wires to segments between entry centers,
/// in row-major order with duplicates removed.
pub fn place_connectors(ast: &CircuitAst, layout: &LayoutGrid) -> ConnectorSet {
    let mut placer = Placer {
        layout,
        rows: ast.row_count() as i64,
        cols: ast.col_count() as i64,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    for ((r, c), cell) in ast.cells() {
        let here = CellRef::new(r, c);
        let (ri, ci) = (r as i64, c as i64);
        if cell.body.has_implicit_left_wire() {
            placer.add(SegmentKind::Horizontal, false, here, ri, ci - 1);
        }
        if let Element::Ctrl { offset, .. } = cell.body {
            placer.add(SegmentKind::Vertical, false, here, ri + offset, ci);
        }
        for deco in &cell.decorations {
            match *deco {
                WireDecoration::Qw { offset, classical } => {
                    placer.add(SegmentKind::Horizontal, classical, here, ri, ci + offset)
                }
                WireDecoration::Qwx { offset, classical } => {
                    placer.add(SegmentKind::Vertical, classical, here, ri + offset, ci)
                }
            }
        }
    }
    ConnectorSet {
        segments: placer.out,
    }
}
