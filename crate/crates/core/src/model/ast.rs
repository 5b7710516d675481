use serde::{Deserialize, Serialize};

use super::label::LabelExpr;
use crate::parse::{Length, SpacingParams};
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StickDir {
    Left,
    Right,
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureStyle {
    Plain,
    D,
}

/// The body of a cell. A cell holds at most one.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Element {
    #[default]
    Empty,
    Gate {
        label: LabelExpr,
    },
    Targ,
    Swap,
    MultiGateTop {
        depth: usize,
        label: LabelExpr,
    },
    Ghost {
        label: LabelExpr,
    },
    Meter,
    Measure {
        label: LabelExpr,
    },
    MeasureTab {
        label: LabelExpr,
    },
    #[serde(rename = "measure_d")]
    MeasureD {
        label: LabelExpr,
    },
    MultiMeasureTop {
        depth: usize,
        label: LabelExpr,
        style: MeasureStyle,
    },
    Ctrl {
        offset: i64,
        open: bool,
    },
    Control {
        open: bool,
    },
    Stick {
        dir: StickDir,
        label: LabelExpr,
    },
    Push {
        label: LabelExpr,
    },
    RawLabel {
        label: LabelExpr,
    },
}

impl Element {
    /// Elements that carry their own wire back to the previous column.
    pub fn has_implicit_left_wire(&self) -> bool {
        matches!(
            self,
            Element::Gate { .. }
                | Element::Targ
                | Element::Swap
                | Element::MultiGateTop { .. }
                | Element::Ghost { .. }
                | Element::Meter
                | Element::Measure { .. }
                | Element::MeasureTab { .. }
                | Element::MeasureD { .. }
                | Element::MultiMeasureTop { .. }
                | Element::Ctrl { .. }
        )
    }

    /// Row span of a multi-row box, counting rows below the top.
    pub fn multi_depth(&self) -> Option<usize> {
        match self {
            Element::MultiGateTop { depth, .. } | Element::MultiMeasureTop { depth, .. } => {
                Some(*depth)
            }
            _ => None,
        }
    }

    pub fn label(&self) -> Option<&LabelExpr> {
        match self {
            Element::Gate { label }
            | Element::MultiGateTop { label, .. }
            | Element::Ghost { label }
            | Element::Measure { label }
            | Element::MeasureTab { label }
            | Element::MeasureD { label }
            | Element::MultiMeasureTop { label, .. }
            | Element::Stick { label, .. }
            | Element::Push { label }
            | Element::RawLabel { label } => Some(label),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Element::Empty)
    }

    /// Short name used in messages.
    pub fn name(&self) -> &'static str {
        match self {
            Element::Empty => "empty",
            Element::Gate { .. } => "gate",
            Element::Targ => "targ",
            Element::Swap => "qswap",
            Element::MultiGateTop { .. } => "multigate",
            Element::Ghost { .. } => "ghost",
            Element::Meter => "meter",
            Element::Measure { .. } => "measure",
            Element::MeasureTab { .. } => "measuretab",
            Element::MeasureD { .. } => "measureD",
            Element::MultiMeasureTop {
                style: MeasureStyle::Plain,
                ..
            } => "multimeasure",
            Element::MultiMeasureTop {
                style: MeasureStyle::D,
                ..
            } => "multimeasureD",
            Element::Ctrl { open: false, .. } => "ctrl",
            Element::Ctrl { open: true, .. } => "ctrlo",
            Element::Control { open: false } => "control",
            Element::Control { open: true } => "controlo",
            Element::Stick { dir, .. } => match dir {
                StickDir::Left => "lstick",
                StickDir::Right => "rstick",
                StickDir::Up => "ustick",
                StickDir::Down => "dstick",
            },
            Element::Push { .. } => "push",
            Element::RawLabel { .. } => "label",
        }
    }
}

/// `\qw[k]`, `\cw[k]`, `\qwx[k]` and `\cwx[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WireDecoration {
    /// Horizontal wire to the entry `offset` columns away; `offset < 0`.
    Qw { offset: i64, classical: bool },
    /// Vertical wire to the entry `offset` rows away; `offset != 0`.
    Qwx { offset: i64, classical: bool },
}

impl WireDecoration {
    pub fn offset(&self) -> i64 {
        match *self {
            WireDecoration::Qw { offset, .. } | WireDecoration::Qwx { offset, .. } => offset,
        }
    }

    pub fn classical(&self) -> bool {
        match *self {
            WireDecoration::Qw { classical, .. } | WireDecoration::Qwx { classical, .. } => {
                classical
            }
        }
    }
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Cell {
    pub body: Element,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decorations: Vec<WireDecoration>,
    /// How many of `decorations` appeared in the source before the body.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub decorations_before_body: usize,
}

impl Cell {
    pub fn new(body: Element) -> Self {
        Cell {
            body,
            ..Cell::default()
        }
    }

    pub fn with(mut self, decoration: WireDecoration) -> Self {
        self.decorations.push(decoration);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupStyle {
    DashedBox,
    DottedBox,
    BraceBottom,
    BraceTop,
    BraceLeft,
    BraceRight,
    ParenBottom,
    ParenTop,
    ParenLeft,
    ParenRight,
}

impl GroupStyle {
    /// Maps the sixth `\gategroup` argument to a style.
    pub fn from_source(arg: &str) -> Option<Self> {
        Some(match arg {
            "--" => GroupStyle::DashedBox,
            "." => GroupStyle::DottedBox,
            r"_\}" => GroupStyle::BraceBottom,
            r"^\}" => GroupStyle::BraceTop,
            r"\{" => GroupStyle::BraceLeft,
            r"\}" => GroupStyle::BraceRight,
            "_)" => GroupStyle::ParenBottom,
            "^)" => GroupStyle::ParenTop,
            "(" => GroupStyle::ParenLeft,
            ")" => GroupStyle::ParenRight,
            _ => return None,
        })
    }
}

/// A `\gategroup` highlight. Indices are 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateGroup {
    pub r1: usize,
    pub c1: usize,
    pub r2: usize,
    pub c2: usize,
    pub pad: Length,
    pub style: GroupStyle,
}

impl GateGroup {
    pub fn in_bounds(&self, rows: usize, cols: usize) -> bool {
        1 <= self.r1
            && self.r1 <= self.r2
            && self.r2 <= rows
            && 1 <= self.c1
            && self.c1 <= self.c2
            && self.c2 <= cols
    }
}

/// Source locations for an elaborated AST. Not part of the serialized form.
#[derive(Debug, Clone, Default)]
pub struct AstSpans {
    pub cells: Vec<Vec<Span>>,
    pub groups: Vec<Span>,
}

/// A rectangular grid of cells plus spacing parameters and gate groups.
#[derive(Debug, Clone, Default)]
pub struct CircuitAst {
    pub params: SpacingParams,
    pub rows: Vec<Vec<Cell>>,
    pub groups: Vec<GateGroup>,
    pub spans: Option<AstSpans>,
}

impl PartialEq for CircuitAst {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.rows == other.rows && self.groups == other.groups
    }
}

impl CircuitAst {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Cell at 0-based `(row, col)`.
    pub fn cell(&self, row: usize, col: usize) -> &Cell {
        &self.rows[row][col]
    }

    /// Cells in row-major order with their 0-based positions.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &Cell)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, cell)| ((r, c), cell)))
    }

    pub fn cell_span(&self, row: usize, col: usize) -> Span {
        self.spans
            .as_ref()
            .and_then(|s| s.cells.get(row).and_then(|r| r.get(col)).copied())
            .unwrap_or_default()
    }

    pub fn group_span(&self, index: usize) -> Span {
        self.spans
            .as_ref()
            .and_then(|s| s.groups.get(index).copied())
            .unwrap_or_default()
    }
}
