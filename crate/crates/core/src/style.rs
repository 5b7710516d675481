//! Glyph geometry and drawing style, with a `key = value` config format.
//!
//! ```text
//! # comments start with '#'
//! gate_pad_x = 0.5em
//! stroke_width = 0.5pt
//! foreground = #202020
//! ```

use thiserror::Error;

use crate::parse::parse_length;

/// Fixed glyph sizes used for layout, in em.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutStyle {
    pub gate_pad_x: f64,
    pub gate_pad_y: f64,
    pub ctrl_radius: f64,
    pub targ_radius: f64,
    /// Distance from the center of a swap cross to the end of an arm.
    pub swap_half_diagonal: f64,
    pub meter_width: f64,
    pub meter_height: f64,
    /// Gap between a stick label and the entry center.
    pub stick_gap: f64,
}

impl Default for LayoutStyle {
    fn default() -> Self {
        LayoutStyle {
            gate_pad_x: 0.4,
            gate_pad_y: 0.3,
            ctrl_radius: 0.22,
            targ_radius: 0.45,
            swap_half_diagonal: 0.35,
            meter_width: 1.2,
            meter_height: 0.9,
            stick_gap: 0.2,
        }
    }
}

/// Stroke, colour and output settings for rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub stroke_width: f64,
    /// Distance between the two lines of a classical wire.
    pub classical_gap: f64,
    pub dash_on: f64,
    pub dash_off: f64,
    pub dot_on: f64,
    pub dot_off: f64,
    pub meter_arc_radius: f64,
    /// Angle swept by the meter arc, in degrees.
    pub meter_arc_span: f64,
    /// Needle angle above the horizontal, in degrees.
    pub meter_needle_angle: f64,
    /// Depth of a brace or parenthesis highlight.
    pub brace_depth: f64,
    pub margin: f64,
    pub background: String,
    pub foreground: String,
    pub font_family: String,
    /// User units per em.
    pub scale: f64,
    /// Grow the canvas to include stick and raw labels.
    pub fit_labels: bool,
    /// Size gate groups from their four corner entries only.
    pub corner_only_groups: bool,
}

/// User units per em at scale 1.
pub const UNITS_PER_EM: f64 = 10.0;

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            stroke_width: 0.04,
            classical_gap: 0.08,
            dash_on: 0.2,
            dash_off: 0.15,
            dot_on: 0.02,
            dot_off: 0.12,
            meter_arc_radius: 0.35,
            meter_arc_span: 160.0,
            meter_needle_angle: 65.0,
            brace_depth: 0.3,
            margin: 0.5,
            background: "#ffffff".to_string(),
            foreground: "#000000".to_string(),
            font_family: "serif".to_string(),
            scale: UNITS_PER_EM,
            fit_labels: false,
            corner_only_groups: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Style {
    pub layout: LayoutStyle,
    pub render: RenderStyle,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StyleError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value `{value}` for `{key}`")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error("classical wire gap ({gap}em) must exceed the stroke width ({stroke}em)")]
    GapTooSmall { gap: f64, stroke: f64 },
}

fn is_color(v: &str) -> bool {
    let hex = v.strip_prefix('#').unwrap_or("");
    matches!(hex.len(), 3 | 6) && hex.bytes().all(|b| b.is_ascii_hexdigit())
        || (!v.is_empty() && v.bytes().all(|b| b.is_ascii_alphabetic()))
}

impl Style {
    /// Applies overrides from config text on top of the current values.
    pub fn apply_config(&mut self, text: &str) -> Result<(), StyleError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split(" # ").next().unwrap_or("").trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or(StyleError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || StyleError::BadValue {
                line,
                key: key.to_string(),
                value: value.to_string(),
            };
            let length = || parse_length(value).map(|l| l.to_em()).map_err(|_| bad());
            let positive = || length().and_then(|v| if v > 0.0 { Ok(v) } else { Err(bad()) });
            let number = || {
                value
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(bad)
            };
            let color = || {
                if is_color(value) {
                    Ok(value.to_string())
                } else {
                    Err(bad())
                }
            };
            let l = &mut self.layout;
            let r = &mut self.render;
            match key {
                "gate_pad_x" => l.gate_pad_x = length()?,
                "gate_pad_y" => l.gate_pad_y = length()?,
                "ctrl_radius" => l.ctrl_radius = positive()?,
                "targ_radius" => l.targ_radius = positive()?,
                "swap_half_diagonal" => l.swap_half_diagonal = positive()?,
                "meter_width" => l.meter_width = positive()?,
                "meter_height" => l.meter_height = positive()?,
                "stick_gap" => l.stick_gap = length()?,
                "stroke_width" => r.stroke_width = positive()?,
                "classical_gap" => r.classical_gap = positive()?,
                "dash_on" => r.dash_on = positive()?,
                "dash_off" => r.dash_off = positive()?,
                "dot_on" => r.dot_on = positive()?,
                "dot_off" => r.dot_off = positive()?,
                "meter_arc_radius" => r.meter_arc_radius = positive()?,
                "meter_arc_span" => r.meter_arc_span = number()?,
                "meter_needle_angle" => r.meter_needle_angle = number()?,
                "brace_depth" => r.brace_depth = positive()?,
                "margin" => r.margin = length()?,
                "background" => r.background = color()?,
                "foreground" => r.foreground = color()?,
                "font_family" => r.font_family = value.to_string(),
                _ => {
                    return Err(StyleError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }
        self.check()
    }

    pub fn from_config(text: &str) -> Result<Self, StyleError> {
        let mut style = Style::default();
        style.apply_config(text)?;
        Ok(style)
    }

    pub fn check(&self) -> Result<(), StyleError> {
        let r = &self.render;
        if r.classical_gap <= r.stroke_width {
            return Err(StyleError::GapTooSmall {
                gap: r.classical_gap,
                stroke: r.stroke_width,
            });
        }
        Ok(())
    }
}
