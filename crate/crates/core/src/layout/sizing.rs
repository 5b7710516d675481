use super::metrics::{typeset_label, FontMetrics};
use super::{Extent, VisualBox};
use crate::model::{CircuitAst, Code, Diagnostic, Element, LabelExpr, StickDir};
use crate::style::LayoutStyle;

/// Per-entry extents. `layout` drives grid solving; `visual` is what the
/// entry actually covers, which differs for zero-size labels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SizedGrid {
    pub layout: Vec<Vec<Extent>>,
    pub visual: Vec<Vec<VisualBox>>,
    /// W101 warnings for characters measured with fallback metrics.
    pub warnings: Vec<Diagnostic>,
}

impl SizedGrid {
    /// A grid whose visual extents equal its layout extents.
    pub fn from_extents(layout: Vec<Vec<Extent>>) -> Self {
        let visual = layout
            .iter()
            .map(|row| row.iter().map(|&e| VisualBox::from(e)).collect())
            .collect();
        SizedGrid {
            layout,
            visual,
            warnings: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.layout.len()
    }

    pub fn cols(&self) -> usize {
        self.layout.first().map_or(0, Vec::len)
    }
}

/// Extent of a framed label: the label plus box padding on every side.
pub fn boxed_extent(label_extent: Extent, style: &LayoutStyle) -> Extent {
    Extent::new(
        label_extent.width + 2.0 * style.gate_pad_x,
        label_extent.height_above + style.gate_pad_y,
        label_extent.height_below + style.gate_pad_y,
    )
}

/// Layout extent of a fixed-size glyph, if the element is one.
pub fn glyph_extent(body: &Element, style: &LayoutStyle) -> Option<Extent> {
    let square = |half: f64| Extent::new(2.0 * half, half, half);
    Some(match body {
        Element::Meter => Extent::new(
            style.meter_width,
            style.meter_height / 2.0,
            style.meter_height / 2.0,
        ),
        Element::Targ => square(style.targ_radius),
        Element::Ctrl { .. } | Element::Control { .. } => square(style.ctrl_radius),
        Element::Swap => square(style.swap_half_diagonal / std::f64::consts::SQRT_2),
        _ => return None,
    })
}

pub fn size_elements(ast: &CircuitAst, metrics: &FontMetrics, style: &LayoutStyle) -> SizedGrid {
    let mut warnings = Vec::new();
    let mut layout = Vec::with_capacity(ast.row_count());
    let mut visual = Vec::with_capacity(ast.row_count());
    for (r, row) in ast.rows.iter().enumerate() {
        let mut layout_row = Vec::with_capacity(row.len());
        let mut visual_row = Vec::with_capacity(row.len());
        for (c, cell) in row.iter().enumerate() {
            let mut measure = |label: &LabelExpr| {
                let t = typeset_label(label, metrics);
                if !t.unsupported.is_empty() {
                    let chars: String = t.unsupported.iter().collect();
                    warnings.push(Diagnostic::at_cell(
                        Code::W101,
                        ast.cell_span(r, c),
                        (r, c),
                        format!(
                            "no metrics for {chars:?}; using a {}em fallback width",
                            metrics.fallback_width
                        ),
                    ));
                }
                t.extent()
            };
            let (lay, vis) = match &cell.body {
                Element::Empty => (Extent::default(), VisualBox::default()),
                Element::Gate { label }
                | Element::Ghost { label }
                | Element::MultiGateTop { label, .. }
                | Element::Measure { label }
                | Element::MeasureTab { label }
                | Element::MeasureD { label }
                | Element::MultiMeasureTop { label, .. } => {
                    let e = boxed_extent(measure(label), style);
                    (e, e.into())
                }
                Element::Push { label } => {
                    let e = measure(label);
                    (e, e.into())
                }
                Element::RawLabel { label } => (Extent::default(), measure(label).into()),
                Element::Stick { dir, label } => {
                    let e = measure(label);
                    let gap = style.stick_gap;
                    let half_w = e.width / 2.0;
                    let v = match dir {
                        StickDir::Left => VisualBox {
                            left: gap + e.width,
                            right: 0.0,
                            up: e.height_above,
                            down: e.height_below,
                        },
                        StickDir::Right => VisualBox {
                            left: 0.0,
                            right: gap + e.width,
                            up: e.height_above,
                            down: e.height_below,
                        },
                        StickDir::Up => VisualBox {
                            left: half_w,
                            right: half_w,
                            up: gap + e.height(),
                            down: 0.0,
                        },
                        StickDir::Down => VisualBox {
                            left: half_w,
                            right: half_w,
                            up: 0.0,
                            down: gap + e.height(),
                        },
                    };
                    (Extent::default(), v)
                }
                body => {
                    let e = glyph_extent(body, style).expect("remaining elements are glyphs");
                    (e, e.into())
                }
            };
            layout_row.push(lay);
            visual_row.push(vis);
        }
        layout.push(layout_row);
        visual.push(visual_row);
    }
    SizedGrid {
        layout,
        visual,
        warnings,
    }
}
