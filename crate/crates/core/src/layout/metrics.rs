//! Embedded glyph metrics and label typesetting.
//!
//! Widths approximate Computer Modern at 10pt, in em. Layout never consults
//! host fonts, so the same source always produces the same geometry.

use std::sync::OnceLock;

use super::Extent;
use crate::model::label::symbol_char;
use crate::model::{LabelExpr, LabelRun, StyleKind};

pub const METRICS_VERSION: &str = "qcirc-metrics/1";

pub const CAP_HEIGHT: f64 = 0.683;
pub const ASCENDER: f64 = 0.694;
pub const X_HEIGHT: f64 = 0.431;
pub const DIGIT_HEIGHT: f64 = 0.644;
pub const DESCENDER: f64 = 0.194;
pub const DELIMITER_HEIGHT: f64 = 0.75;
pub const DELIMITER_DEPTH: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlyphMetrics {
    pub width: f64,
    pub height: f64,
    pub depth: f64,
}

const fn g(width: f64, height: f64, depth: f64) -> GlyphMetrics {
    GlyphMetrics {
        width,
        height,
        depth,
    }
}

const UPPER: [f64; 26] = [
    0.750, 0.759, 0.715, 0.828, 0.738, 0.643, 0.786, 0.831, 0.440, 0.555, 0.849, 0.681, 0.970,
    0.803, 0.763, 0.642, 0.791, 0.759, 0.613, 0.584, 0.683, 0.583, 0.944, 0.828, 0.581, 0.683,
];

const LOWER: [f64; 26] = [
    0.529, 0.429, 0.433, 0.520, 0.466, 0.490, 0.477, 0.576, 0.345, 0.412, 0.521, 0.298, 0.878,
    0.600, 0.485, 0.503, 0.446, 0.451, 0.469, 0.361, 0.572, 0.485, 0.716, 0.572, 0.490, 0.465,
];

fn ascii_glyph(c: char) -> Option<GlyphMetrics> {
    Some(match c {
        'A'..='Z' => g(UPPER[c as usize - 'A' as usize], CAP_HEIGHT, 0.0),
        'a'..='z' => {
            let width = LOWER[c as usize - 'a' as usize];
            let height = if "bdfhklt".contains(c) {
                ASCENDER
            } else {
                X_HEIGHT
            };
            let depth = if "fgjpqy".contains(c) { DESCENDER } else { 0.0 };
            g(width, height, depth)
        }
        '0'..='9' => g(0.5, DIGIT_HEIGHT, 0.0),
        ' ' => g(0.333, 0.0, 0.0),
        '(' | ')' | '[' | ']' => g(0.389, DELIMITER_HEIGHT, DELIMITER_DEPTH),
        '{' | '}' => g(0.5, DELIMITER_HEIGHT, DELIMITER_DEPTH),
        '|' => g(0.278, DELIMITER_HEIGHT, DELIMITER_DEPTH),
        '/' | '\\' => g(0.5, DELIMITER_HEIGHT, DELIMITER_DEPTH),
        '=' => g(0.778, 0.367, 0.0),
        '+' => g(0.778, 0.583, 0.083),
        '-' => g(0.333, 0.25, 0.0),
        '<' | '>' => g(0.778, 0.54, 0.04),
        '*' => g(0.5, DELIMITER_HEIGHT, 0.0),
        ',' | ';' => g(0.278, X_HEIGHT, DESCENDER),
        '.' | ':' => g(0.278, X_HEIGHT, 0.0),
        '!' | '\'' | '`' => g(0.278, ASCENDER, 0.0),
        '?' => g(0.472, ASCENDER, 0.0),
        '"' => g(0.5, ASCENDER, 0.0),
        '#' => g(0.833, ASCENDER, DESCENDER),
        '$' => g(0.5, DELIMITER_HEIGHT, 0.056),
        '%' => g(0.833, DELIMITER_HEIGHT, 0.056),
        '&' => g(0.778, ASCENDER, 0.0),
        '@' => g(0.778, ASCENDER, 0.0),
        '^' | '~' => g(0.5, ASCENDER, 0.0),
        '_' => g(0.5, 0.0, 0.1),
        _ => return None,
    })
}

fn unicode_glyph(c: char) -> Option<GlyphMetrics> {
    Some(match c {
        '†' | '‡' => g(0.444, ASCENDER, DESCENDER),
        '⊗' | '⊕' => g(0.778, 0.583, 0.083),
        '×' => g(0.778, 0.491, 0.0),
        '⋅' => g(0.278, 0.31, 0.0),
        '⋯' | '…' => g(1.172, 0.31, 0.0),
        '±' | '∓' => g(0.778, 0.583, 0.083),
        '⟨' | '⟩' => g(0.389, DELIMITER_HEIGHT, DELIMITER_DEPTH),
        '∞' => g(1.0, X_HEIGHT, 0.0),
        '→' | '←' => g(1.0, 0.511, 0.0),
        '≈' => g(0.778, 0.483, 0.0),
        '≠' | '≤' | '≥' => g(0.778, 0.636, 0.136),
        '′' => g(0.275, 0.56, 0.0),
        '⋆' | '∘' => g(0.5, 0.465, 0.0),
        'ℓ' => g(0.417, ASCENDER, 0.0),
        '\u{2001}' => g(1.0, 0.0, 0.0),
        'ψ' => g(0.651, ASCENDER, DESCENDER),
        'χ' => g(0.626, X_HEIGHT, DESCENDER),
        'ϕ' | 'φ' => g(0.596, ASCENDER, DESCENDER),
        'β' | 'ζ' | 'ξ' => g(0.566, ASCENDER, DESCENDER),
        'γ' | 'η' | 'μ' | 'ρ' => g(0.518, X_HEIGHT, DESCENDER),
        'δ' | 'θ' | 'ϑ' | 'λ' => g(0.469, ASCENDER, 0.0),
        'α' | 'ϵ' | 'ε' | 'ι' | 'κ' | 'ν' | 'π' | 'σ' | 'τ' | 'υ' | 'ω' => {
            g(0.57, X_HEIGHT, 0.0)
        }
        'Γ' | 'Δ' | 'Θ' | 'Λ' | 'Ξ' | 'Π' | 'Σ' | 'Υ' | 'Φ' | 'Ψ' | 'Ω' => {
            g(0.75, CAP_HEIGHT, 0.0)
        }
        _ => return None,
    })
}

/// Immutable metrics table shared by layout and rendering.
#[derive(Debug, Clone)]
pub struct FontMetrics {
    pub version: &'static str,
    /// Size of sub- and superscripts relative to their base.
    pub script_scale: f64,
    /// Baseline raise of a superscript, in units of the base size.
    pub sup_shift: f64,
    /// Baseline drop of a lone subscript.
    pub sub_shift: f64,
    /// Baseline drop of a subscript stacked under a superscript.
    pub sub_shift_stacked: f64,
    /// Advance used for characters missing from the table.
    pub fallback_width: f64,
}

static EMBEDDED: OnceLock<FontMetrics> = OnceLock::new();

impl FontMetrics {
    pub fn embedded() -> &'static FontMetrics {
        EMBEDDED.get_or_init(|| FontMetrics {
            version: METRICS_VERSION,
            script_scale: 0.7,
            sup_shift: 0.413,
            sub_shift: 0.15,
            sub_shift_stacked: 0.247,
            fallback_width: 0.5,
        })
    }

    pub fn glyph(&self, c: char) -> Option<GlyphMetrics> {
        ascii_glyph(c).or_else(|| unicode_glyph(c))
    }

    fn glyph_or_fallback(&self, c: char) -> (GlyphMetrics, bool) {
        match self.glyph(c) {
            Some(m) => (m, true),
            None => (g(self.fallback_width, CAP_HEIGHT, 0.0), false),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStyle {
    Math,
    Upright,
    Calligraphic,
}

/// A piece of label text at a fixed position relative to the label's
/// origin (left end of the baseline).
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedRun {
    pub x: f64,
    /// Baseline raise; negative for subscripts.
    pub rise: f64,
    /// Font size in em.
    pub size: f64,
    pub style: RunStyle,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TypesetLabel {
    pub width: f64,
    pub ascent: f64,
    pub depth: f64,
    pub runs: Vec<PlacedRun>,
    /// Characters measured with the fallback width.
    pub unsupported: Vec<char>,
}

impl TypesetLabel {
    /// Extent with the label box centered vertically on the entry's center.
    pub fn extent(&self) -> Extent {
        let half = (self.ascent + self.depth) / 2.0;
        Extent {
            width: self.width,
            height_above: half,
            height_below: half,
        }
    }

    /// Baseline offset below the entry center when the label is centered.
    pub fn baseline_offset(&self) -> f64 {
        (self.ascent - self.depth) / 2.0
    }
}

pub fn typeset_label(label: &LabelExpr, metrics: &FontMetrics) -> TypesetLabel {
    let mut out = TypesetLabel::default();
    let mut setter = Setter {
        metrics,
        out: &mut out,
    };
    let width = setter.expr(label, 0.0, 0.0, 1.0, RunStyle::Math);
    out.width = width;
    out
}

/// Width and centered vertical extent of a label. Empty labels measure zero.
pub fn measure_label(label: &LabelExpr, metrics: &FontMetrics) -> Extent {
    typeset_label(label, metrics).extent()
}

struct Setter<'a> {
    metrics: &'a FontMetrics,
    out: &'a mut TypesetLabel,
}

#[derive(Clone, Copy, PartialEq)]
enum Script {
    Sub,
    Sup,
}

impl Setter<'_> {
    fn bump(&mut self, rise: f64, height: f64, depth: f64) {
        self.out.ascent = self.out.ascent.max(rise + height);
        self.out.depth = self.out.depth.max(depth - rise);
    }

    /// Sets `text` at `x` and returns its advance.
    fn text(&mut self, text: &str, x: f64, rise: f64, size: f64, style: RunStyle) -> f64 {
        if text.is_empty() {
            return 0.0;
        }
        let mut width = 0.0;
        for c in text.chars() {
            let (m, known) = self.metrics.glyph_or_fallback(c);
            if !known {
                self.out.unsupported.push(c);
            }
            width += m.width * size;
            self.bump(rise, m.height * size, m.depth * size);
        }
        self.out.runs.push(PlacedRun {
            x,
            rise,
            size,
            style,
            text: text.to_string(),
        });
        width
    }

    /// Sets `expr` starting at `x`; returns the total advance.
    fn expr(&mut self, expr: &LabelExpr, x0: f64, rise: f64, size: f64, style: RunStyle) -> f64 {
        let mut x = x0;
        // (kind, start x, advance) of the script just set, for stacking
        let mut last_script: Option<(Script, f64, f64)> = None;
        for run in expr.runs() {
            let script = match run {
                LabelRun::Sub(_) => Some(Script::Sub),
                LabelRun::Sup(_) => Some(Script::Sup),
                _ => None,
            };
            match (run, script) {
                (LabelRun::Sub(body) | LabelRun::Sup(body), Some(kind)) => {
                    let small = size * self.metrics.script_scale;
                    let stacked = matches!(last_script, Some((prev, _, _)) if prev != kind);
                    let shift = match kind {
                        Script::Sup => self.metrics.sup_shift * size,
                        Script::Sub if stacked => -self.metrics.sub_shift_stacked * size,
                        Script::Sub => -self.metrics.sub_shift * size,
                    };
                    if stacked {
                        let (_, start, prev_w) = last_script.unwrap();
                        let w = self.expr(body, start, rise + shift, small, style);
                        x = start + prev_w.max(w);
                        last_script = None;
                    } else {
                        let w = self.expr(body, x, rise + shift, small, style);
                        last_script = Some((kind, x, w));
                        x += w;
                    }
                    continue;
                }
                (LabelRun::Text(s), _) => x += self.text(s, x, rise, size, style),
                (LabelRun::Symbol(name), _) => {
                    let c = symbol_char(name).unwrap_or('?');
                    x += self.text(&c.to_string(), x, rise, size, RunStyle::Upright);
                }
                (LabelRun::Style { kind, body }, _) => {
                    let inner = match kind {
                        StyleKind::Calligraphic => RunStyle::Calligraphic,
                        StyleKind::Upright => RunStyle::Upright,
                    };
                    x += self.expr(body, x, rise, size, inner);
                }
                (LabelRun::Ket(body), _) => {
                    x += self.text("|", x, rise, size, RunStyle::Upright);
                    x += self.expr(body, x, rise, size, style);
                    x += self.text("⟩", x, rise, size, RunStyle::Upright);
                }
                (LabelRun::Bra(body), _) => {
                    x += self.text("⟨", x, rise, size, RunStyle::Upright);
                    x += self.expr(body, x, rise, size, style);
                    x += self.text("|", x, rise, size, RunStyle::Upright);
                }
                (LabelRun::Rule { width, height }, _) => {
                    self.bump(rise, height.to_em() * size, 0.0);
                    x += width.to_em() * size;
                }
                (LabelRun::Sub(_) | LabelRun::Sup(_), None) => unreachable!(),
            }
            last_script = None;
        }
        x - x0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::label::label_from_tokens;
    use crate::parse::tokenize;

    fn label(src: &str) -> LabelExpr {
        let tokens = tokenize(&format!("{{{src}}}")).unwrap();
        label_from_tokens(tokens[0].children().unwrap())
    }

    fn width(src: &str) -> f64 {
        measure_label(&label(src), FontMetrics::embedded()).width
    }

    #[test]
    fn empty_label_is_zero() {
        let e = measure_label(&LabelExpr::default(), FontMetrics::embedded());
        assert_eq!(e, Extent::default());
    }

    #[test]
    fn advances_add() {
        assert_eq!(width("XX"), 2.0 * width("X"));
        assert_eq!(width("X"), 0.828);
    }

    #[test]
    fn dagger_superscript_oracle() {
        // hand-summed from the table: U = 0.683, dagger = 0.444 at scale 0.7
        let expected = 0.683 + 0.7 * 0.444;
        assert!((width(r"U^\dag") - expected).abs() < 1e-12);
        assert!((width(r"U^\dag") - width("U") - 0.7 * 0.444).abs() < 1e-12);
    }

    #[test]
    fn stacked_scripts_share_advance() {
        // M_{ijk}: subscript alone advances by its own width
        let m = 0.970;
        let ijk = 0.345 + 0.412 + 0.521;
        assert!((width("M_{ijk}") - (m + 0.7 * ijk)).abs() < 1e-12);
        // sub then sup stack: advance is the wider of the two
        assert!((width("M_{ijk}^a") - (m + 0.7 * ijk)).abs() < 1e-12);
        assert!((width("M^a_{ijk}") - (m + 0.7 * ijk)).abs() < 1e-12);
        // not stacked when separated
        assert!((width("M_a b^c") - (m + 0.7 * 0.529 + 0.333 + 0.429 + 0.7 * 0.433)).abs() < 1e-12);
    }

    #[test]
    fn ket_adds_delimiters() {
        let expected = 0.278 + 0.5 + 0.389;
        assert!((width(r"\ket{0}") - expected).abs() < 1e-12);
        assert!((width(r"\bra{0}") - expected).abs() < 1e-12);
    }

    #[test]
    fn rules_take_space_invisibly() {
        let t = typeset_label(&label(r"\rule{0em}{1em}"), FontMetrics::embedded());
        assert_eq!(t.width, 0.0);
        assert_eq!(t.ascent, 1.0);
        assert!(t.runs.is_empty());
        assert!((width(r"\rule{.3em}{0em}=\rule{.3em}{0em}") - (0.3 + 0.778 + 0.3)).abs() < 1e-12);
    }

    #[test]
    fn unsupported_characters_fall_back() {
        let t = typeset_label(&LabelExpr::text("a\u{4e2d}"), FontMetrics::embedded());
        assert_eq!(t.unsupported, vec!['\u{4e2d}']);
        assert!((t.width - (0.529 + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn every_symbol_has_metrics() {
        let m = FontMetrics::embedded();
        for (name, c) in crate::model::label::SYMBOLS {
            assert!(m.glyph(*c).is_some(), "{name}");
        }
        for c in ' '..='~' {
            let g = m.glyph(c).unwrap_or_else(|| panic!("{c:?}"));
            assert!(g.width > 0.0 && g.height >= 0.0 && g.depth >= 0.0);
        }
    }

    #[test]
    fn heights_come_from_the_table() {
        let t = typeset_label(&label("xy"), FontMetrics::embedded());
        assert_eq!(t.ascent, X_HEIGHT);
        assert_eq!(t.depth, DESCENDER);
        let e = t.extent();
        assert_eq!(e.height_above, e.height_below);
        assert!((e.height_above + e.height_below - (X_HEIGHT + DESCENDER)).abs() < 1e-12);
    }
}
