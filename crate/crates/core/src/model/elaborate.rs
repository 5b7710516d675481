use super::ast::*;
use super::diagnostic::{Code, Diagnostic};
use super::label::{flat_text, is_label_command, label_from_tokens, LabelExpr};
use crate::parse::{parse_length, RawCell, RawGrid, SpacingParams, Token, TokenKind};
use crate::span::Span;

/// Turns raw cells into typed cells, pads rows to a rectangle and hoists
/// `\gategroup` commands to the grid. Problems are reported as diagnostics;
/// an AST is always produced.
pub fn elaborate(params: SpacingParams, grid: &RawGrid) -> (CircuitAst, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    let mut groups = Vec::new();
    let mut rows = Vec::with_capacity(grid.len());
    let mut cell_spans = Vec::with_capacity(grid.len());

    for (r, raw_row) in grid.iter().enumerate() {
        let mut row = Vec::with_capacity(raw_row.len());
        let mut spans = Vec::with_capacity(raw_row.len());
        for (c, raw) in raw_row.iter().enumerate() {
            let mut builder = CellBuilder {
                pos: (r, c),
                cell: Cell::default(),
                body: None,
                diags: &mut diags,
                groups: &mut groups,
            };
            builder.run(raw);
            row.push(builder.cell);
            spans.push(raw.span);
        }
        rows.push(row);
        cell_spans.push(spans);
    }

    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    for (row, spans) in rows.iter_mut().zip(cell_spans.iter_mut()) {
        let filler = spans.last().map_or_else(Span::default, |s| Span {
            start: s.end,
            end: s.end,
            line: s.line,
            column: s.column + s.len(),
        });
        row.resize_with(width, Cell::default);
        spans.resize(width, filler);
    }

    let height = rows.len();
    let mut kept = Vec::new();
    let mut group_spans = Vec::new();
    for (group, span) in groups {
        if group.in_bounds(height, width) {
            kept.push(group);
            group_spans.push(span);
        } else {
            diags.push(Diagnostic::new(
                Code::W002,
                span,
                format!(
                    "gate group rows {}..{}, columns {}..{} lies outside the {height}x{width} grid; group dropped",
                    group.r1, group.r2, group.c1, group.c2
                ),
            ));
        }
    }

    let ast = CircuitAst {
        params,
        rows,
        groups: kept,
        spans: Some(AstSpans {
            cells: cell_spans,
            groups: group_spans,
        }),
    };
    (ast, diags)
}

struct CellBuilder<'a> {
    pos: (usize, usize),
    cell: Cell,
    body: Option<&'static str>,
    diags: &'a mut Vec<Diagnostic>,
    groups: &'a mut Vec<(GateGroup, Span)>,
}

fn int_value(token: &Token) -> Option<i64> {
    token
        .children()
        .and_then(|ts| flat_text(ts).trim().parse().ok())
}

impl CellBuilder<'_> {
    fn error(&mut self, code: Code, span: Span, message: String) {
        self.diags
            .push(Diagnostic::at_cell(code, span, self.pos, message));
    }

    fn set_body(&mut self, body: Element, span: Span) {
        if let Some(existing) = self.body {
            let message = format!(
                "entry already has a `{existing}` body; ignoring `{}`",
                body.name()
            );
            self.error(Code::E006, span, message);
            return;
        }
        self.body = Some(body.name());
        self.cell.decorations_before_body = self.cell.decorations.len();
        self.cell.body = body;
    }

    fn run(&mut self, raw: &RawCell) {
        let items = &raw.items;
        let mut i = 0;
        while i < items.len() {
            let token = &items[i];
            match &token.kind {
                TokenKind::Command(name) if !is_label_command(name) => {
                    i = self.command(name, token.span, items, i + 1);
                }
                _ => {
                    // maximal run of label material
                    let start = i;
                    while i < items.len() {
                        match &items[i].kind {
                            TokenKind::Command(n) if !is_label_command(n) => break,
                            _ => i += 1,
                        }
                    }
                    let span = items[start].span.to(items[i - 1].span);
                    let label = label_from_tokens(&items[start..i]);
                    self.set_body(Element::RawLabel { label }, span);
                }
            }
        }
    }

    /// Takes `n` group arguments starting at `i`; None if any is missing.
    fn groups(items: &[Token], i: usize, n: usize) -> Option<&[Token]> {
        let args = items.get(i..i + n)?;
        args.iter()
            .all(|t| matches!(t.kind, TokenKind::Group(_)))
            .then_some(args)
    }

    fn missing(&mut self, name: &str, span: Span, wanted: &str) {
        self.error(Code::E007, span, format!("`\\{name}` expects {wanted}"));
    }

    fn label_arg(
        &mut self,
        name: &str,
        span: Span,
        items: &[Token],
        i: usize,
    ) -> Option<LabelExpr> {
        match Self::groups(items, i, 1) {
            Some(args) => Some(label_from_tokens(args[0].children().unwrap())),
            None => {
                self.missing(name, span, "a `{label}` argument");
                None
            }
        }
    }

    fn depth_label(
        &mut self,
        name: &str,
        span: Span,
        items: &[Token],
        i: usize,
    ) -> Option<(usize, LabelExpr)> {
        let Some(args) = Self::groups(items, i, 2) else {
            self.missing(name, span, "`{depth}{label}` arguments");
            return None;
        };
        match int_value(&args[0]) {
            Some(d) if d >= 1 => Some((d as usize, label_from_tokens(args[1].children().unwrap()))),
            _ => {
                self.missing(name, args[0].span, "a positive integer depth");
                None
            }
        }
    }

    /// Handles a circuit command at `items[i - 1]`; returns the index after
    /// its arguments.
    fn command(&mut self, name: &str, span: Span, items: &[Token], i: usize) -> usize {
        let labelled = |label| match name {
            "gate" => Element::Gate { label },
            "ghost" => Element::Ghost { label },
            "measure" => Element::Measure { label },
            "measuretab" => Element::MeasureTab { label },
            "measureD" => Element::MeasureD { label },
            "push" => Element::Push { label },
            "lstick" => Element::Stick {
                dir: StickDir::Left,
                label,
            },
            "rstick" => Element::Stick {
                dir: StickDir::Right,
                label,
            },
            "ustick" => Element::Stick {
                dir: StickDir::Up,
                label,
            },
            _ => Element::Stick {
                dir: StickDir::Down,
                label,
            },
        };
        match name {
            "gate" | "ghost" | "measure" | "measuretab" | "measureD" | "push" | "lstick"
            | "rstick" | "ustick" | "dstick" => {
                if let Some(label) = self.label_arg(name, span, items, i) {
                    self.set_body(labelled(label), span);
                    return i + 1;
                }
                i
            }
            "targ" => self.simple(Element::Targ, span, i),
            "meter" => self.simple(Element::Meter, span, i),
            "control" => self.simple(Element::Control { open: false }, span, i),
            "controlo" => self.simple(Element::Control { open: true }, span, i),
            "qswap" => {
                self.set_body(Element::Swap, span);
                self.cell.decorations.push(WireDecoration::Qw {
                    offset: -1,
                    classical: false,
                });
                i
            }
            "ctrl" | "ctrlo" => {
                let open = name == "ctrlo";
                let offset = Self::groups(items, i, 1).and_then(|a| int_value(&a[0]));
                match offset {
                    Some(offset) if offset != 0 => {
                        self.set_body(Element::Ctrl { offset, open }, span);
                        i + 1
                    }
                    Some(_) => {
                        self.missing(name, items[i].span, "a non-zero row offset");
                        i + 1
                    }
                    None => {
                        self.missing(name, span, "an integer `{offset}` argument");
                        i
                    }
                }
            }
            "multigate" | "multimeasure" | "multimeasureD" => {
                match self.depth_label(name, span, items, i) {
                    Some((depth, label)) => {
                        let body = match name {
                            "multigate" => Element::MultiGateTop { depth, label },
                            "multimeasure" => Element::MultiMeasureTop {
                                depth,
                                label,
                                style: MeasureStyle::Plain,
                            },
                            _ => Element::MultiMeasureTop {
                                depth,
                                label,
                                style: MeasureStyle::D,
                            },
                        };
                        self.set_body(body, span);
                        i + 2
                    }
                    None => i + Self::groups(items, i, 2).map_or(0, |_| 2),
                }
            }
            "qw" | "cw" | "qwx" | "cwx" => self.wire(name, span, items, i),
            "gategroup" => self.gategroup(span, items, i),
            _ => {
                self.error(Code::E004, span, format!("unknown command `\\{name}`"));
                // skip its arguments as well
                let mut j = i;
                while matches!(
                    items.get(j).map(|t| &t.kind),
                    Some(TokenKind::Group(_) | TokenKind::Optional(_))
                ) {
                    j += 1;
                }
                j
            }
        }
    }

    fn simple(&mut self, body: Element, span: Span, i: usize) -> usize {
        self.set_body(body, span);
        i
    }

    fn wire(&mut self, name: &str, span: Span, items: &[Token], i: usize) -> usize {
        let classical = name.starts_with('c');
        let vertical = name.ends_with('x');
        let (offset, next) = match items.get(i) {
            Some(
                t @ Token {
                    kind: TokenKind::Optional(_),
                    ..
                },
            ) => match int_value(t) {
                Some(k) => (k, i + 1),
                None => {
                    self.missing(name, t.span, "an integer `[offset]`");
                    return i + 1;
                }
            },
            _ => (-1, i),
        };
        let decoration = if vertical {
            if offset == 0 {
                self.missing(name, span, "a non-zero row offset");
                return next;
            }
            WireDecoration::Qwx { offset, classical }
        } else {
            if offset >= 0 {
                self.missing(name, span, "a negative column offset");
                return next;
            }
            WireDecoration::Qw { offset, classical }
        };
        self.cell.decorations.push(decoration);
        next
    }

    fn gategroup(&mut self, span: Span, items: &[Token], i: usize) -> usize {
        let Some(args) = Self::groups(items, i, 6) else {
            self.missing("gategroup", span, "six arguments");
            return i;
        };
        let mut index = [0usize; 4];
        for (slot, arg) in index.iter_mut().zip(args) {
            match int_value(arg) {
                Some(n) if n >= 1 => *slot = n as usize,
                _ => {
                    self.missing(
                        "gategroup",
                        arg.span,
                        "positive integer row and column indices",
                    );
                    return i + 6;
                }
            }
        }
        let pad = match parse_length(flat_text(args[4].children().unwrap()).trim()) {
            Ok(pad) => pad,
            Err(_) => {
                self.missing("gategroup", args[4].span, "a length as its fifth argument");
                return i + 6;
            }
        };
        let style_text = flat_text(args[5].children().unwrap());
        let Some(style) = GroupStyle::from_source(style_text.trim()) else {
            self.missing(
                "gategroup",
                args[5].span,
                "one of `--`, `.`, `_\\}`, `^\\}`, `\\{`, `\\}`, `_)`, `^)`, `(`, `)` as its style",
            );
            return i + 6;
        };
        let [r1, c1, r2, c2] = index;
        let group = GateGroup {
            r1,
            c1,
            r2,
            c2,
            pad,
            style,
        };
        self.groups.push((group, span.to(args[5].span)));
        i + 6
    }
}
