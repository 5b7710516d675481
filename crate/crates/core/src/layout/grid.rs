use super::sizing::SizedGrid;
use super::Extent;
use crate::parse::SpacingParams;

/// Solved grid geometry in em.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutGrid {
    pub col_center: Vec<f64>,
    pub row_center: Vec<f64>,
    pub col_width: Vec<f64>,
    pub row_height: Vec<f64>,
    /// Layout extent of each entry (not uniformized).
    pub cells: Vec<Vec<Extent>>,
    pub col_sep: f64,
    pub row_sep: f64,
}

impl LayoutGrid {
    pub fn rows(&self) -> usize {
        self.row_center.len()
    }

    pub fn cols(&self) -> usize {
        self.col_center.len()
    }

    /// Right edge of the last column.
    pub fn width(&self) -> f64 {
        match (self.col_center.last(), self.col_width.last()) {
            (Some(c), Some(w)) => c + w / 2.0,
            _ => 0.0,
        }
    }

    /// Bottom edge of the last row.
    pub fn height(&self) -> f64 {
        match (self.row_center.last(), self.row_height.last()) {
            (Some(c), Some(h)) => c + h / 2.0,
            _ => 0.0,
        }
    }

    pub fn center(&self, row: usize, col: usize) -> super::Point {
        super::Point::new(self.col_center[col], self.row_center[row])
    }
}

fn centers(sizes: &[f64], sep: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(sizes.len());
    for (i, &size) in sizes.iter().enumerate() {
        let center = match i {
            0 => size / 2.0,
            _ => out[i - 1] + sizes[i - 1] / 2.0 + sep + size / 2.0,
        };
        out.push(center);
    }
    out
}

/// Column widths are the widest entry per column, row heights the tallest
/// entry per row; uniform modes raise every column and/or row to the global
/// maximum. Centers then follow from the sizes and the separations.
pub fn solve_grid(sized: &SizedGrid, params: &SpacingParams) -> LayoutGrid {
    let rows = sized.rows();
    let cols = sized.cols();
    let mut col_width = vec![0.0f64; cols];
    let mut row_height = vec![0.0f64; rows];
    for (r, row) in sized.layout.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            col_width[c] = col_width[c].max(e.width);
            row_height[r] = row_height[r].max(e.height());
        }
    }
    if params.uniform.cols() {
        let widest = col_width.iter().copied().fold(0.0, f64::max);
        col_width.fill(widest);
    }
    if params.uniform.rows() {
        let tallest = row_height.iter().copied().fold(0.0, f64::max);
        row_height.fill(tallest);
    }
    let col_sep = params.col_sep.to_em();
    let row_sep = params.row_sep.to_em();
    LayoutGrid {
        col_center: centers(&col_width, col_sep),
        row_center: centers(&row_height, row_sep),
        col_width,
        row_height,
        cells: sized.layout.clone(),
        col_sep,
        row_sep,
    }
}
