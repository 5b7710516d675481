//! Micro-math labels: the small subset of TeX math that appears inside gate
//! and stick labels.

use serde::{Deserialize, Serialize};

use crate::parse::{parse_length, Length, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StyleKind {
    Calligraphic,
    Upright,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelRun {
    Text(String),
    Sub(LabelExpr),
    Sup(LabelExpr),
    Style {
        kind: StyleKind,
        body: LabelExpr,
    },
    Symbol(String),
    Ket(LabelExpr),
    Bra(LabelExpr),
    /// An invisible box, as made by `\rule{w}{h}`.
    Rule {
        width: Length,
        height: Length,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabelExpr(pub Vec<LabelRun>);

impl LabelExpr {
    pub fn text(s: &str) -> Self {
        LabelExpr(vec![LabelRun::Text(s.to_string())])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn runs(&self) -> &[LabelRun] {
        &self.0
    }

    fn push(&mut self, run: LabelRun) {
        if let LabelRun::Text(s) = &run {
            if s.is_empty() {
                return;
            }
            if let Some(LabelRun::Text(prev)) = self.0.last_mut() {
                prev.push_str(s);
                return;
            }
        }
        self.0.push(run);
    }

    fn extend(&mut self, other: LabelExpr) {
        for run in other.0 {
            self.push(run);
        }
    }
}

/// Named math symbols and the characters they render as.
pub const SYMBOLS: &[(&str, char)] = &[
    ("dag", '†'),
    ("dagger", '†'),
    ("ddag", '‡'),
    ("otimes", '⊗'),
    ("oplus", '⊕'),
    ("times", '×'),
    ("cdot", '⋅'),
    ("cdots", '⋯'),
    ("ldots", '…'),
    ("dots", '…'),
    ("pm", '±'),
    ("mp", '∓'),
    ("langle", '⟨'),
    ("rangle", '⟩'),
    ("infty", '∞'),
    ("to", '→'),
    ("rightarrow", '→'),
    ("leftarrow", '←'),
    ("approx", '≈'),
    ("neq", '≠'),
    ("le", '≤'),
    ("ge", '≥'),
    ("prime", '′'),
    ("star", '⋆'),
    ("circ", '∘'),
    ("ell", 'ℓ'),
    ("alpha", 'α'),
    ("beta", 'β'),
    ("gamma", 'γ'),
    ("delta", 'δ'),
    ("epsilon", 'ϵ'),
    ("varepsilon", 'ε'),
    ("zeta", 'ζ'),
    ("eta", 'η'),
    ("theta", 'θ'),
    ("vartheta", 'ϑ'),
    ("iota", 'ι'),
    ("kappa", 'κ'),
    ("lambda", 'λ'),
    ("mu", 'μ'),
    ("nu", 'ν'),
    ("xi", 'ξ'),
    ("pi", 'π'),
    ("rho", 'ρ'),
    ("sigma", 'σ'),
    ("tau", 'τ'),
    ("upsilon", 'υ'),
    ("phi", 'ϕ'),
    ("varphi", 'φ'),
    ("chi", 'χ'),
    ("psi", 'ψ'),
    ("omega", 'ω'),
    ("Gamma", 'Γ'),
    ("Delta", 'Δ'),
    ("Theta", 'Θ'),
    ("Lambda", 'Λ'),
    ("Xi", 'Ξ'),
    ("Pi", 'Π'),
    ("Sigma", 'Σ'),
    ("Upsilon", 'Υ'),
    ("Phi", 'Φ'),
    ("Psi", 'Ψ'),
    ("Omega", 'Ω'),
    ("quad", '\u{2001}'),
    ("qquad", '\u{2001}'),
];

pub fn symbol_char(name: &str) -> Option<char> {
    SYMBOLS.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

fn style_kind(name: &str) -> Option<Option<StyleKind>> {
    Some(match name {
        "mathcal" | "mathscr" => Some(StyleKind::Calligraphic),
        "mathrm" | "text" | "textrm" | "mbox" | "mathbf" | "textbf" | "operatorname" => {
            Some(StyleKind::Upright)
        }
        // same rendering as plain math
        "mathit" | "textit" | "ensuremath" => None,
        _ => return None,
    })
}

const SPACES: &[&str] = &[" ", ",", ";", ":", "!"];
const ESCAPES: &[&str] = &["{", "}", "&", "%", "$", "_", "#", "|"];

/// Commands that produce label content and may therefore start a raw label
/// at the top level of a cell.
pub fn is_label_command(name: &str) -> bool {
    style_kind(name).is_some()
        || matches!(name, "ket" | "bra" | "rule" | "hspace")
        || symbol_char(name).is_some()
        || SPACES.contains(&name)
        || ESCAPES.contains(&name)
}

/// Builds a label from the tokens of a group. Unknown commands are kept as
/// literal text.
pub fn label_from_tokens(tokens: &[Token]) -> LabelExpr {
    let mut items = Vec::new();
    for t in tokens {
        match &t.kind {
            // `^` and `_` always arrive as their own runs
            TokenKind::Text(s) if s == "^" || s == "_" => items.push(Item::Token(t)),
            TokenKind::Text(s) => items.extend(s.chars().filter(|&c| c != '$').map(Item::Char)),
            _ => items.push(Item::Token(t)),
        }
    }
    let mut cursor = Cursor { items, pos: 0 };
    let mut out = LabelExpr::default();
    while cursor.item(&mut out) {}
    out
}

enum Item<'a> {
    Char(char),
    Token(&'a Token),
}

struct Cursor<'a> {
    items: Vec<Item<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek_kind(&self) -> Option<&'a TokenKind> {
        match self.items.get(self.pos) {
            Some(Item::Token(t)) => Some(&t.kind),
            _ => None,
        }
    }

    /// A mandatory argument: a group, a single character or a single command.
    fn argument(&mut self) -> LabelExpr {
        let mut out = LabelExpr::default();
        match self.items.get(self.pos) {
            Some(Item::Token(Token {
                kind: TokenKind::Group(ts),
                ..
            })) => {
                self.pos += 1;
                out = label_from_tokens(ts);
            }
            Some(Item::Char(' ')) => {
                self.pos += 1;
                return self.argument();
            }
            Some(_) => {
                self.item(&mut out);
            }
            None => {}
        }
        out
    }

    /// Raw text of a group argument, for length arguments.
    fn raw_argument(&mut self) -> String {
        match self.peek_kind() {
            Some(TokenKind::Group(ts)) => {
                self.pos += 1;
                flat_text(ts)
            }
            _ => String::new(),
        }
    }

    fn skip_optional(&mut self) {
        if let Some(TokenKind::Optional(_)) = self.peek_kind() {
            self.pos += 1;
        }
    }

    /// Appends the next item to `out`; false at the end of input.
    fn item(&mut self, out: &mut LabelExpr) -> bool {
        let Some(item) = self.items.get(self.pos) else {
            return false;
        };
        self.pos += 1;
        let token = match item {
            Item::Char(c) => {
                out.push(LabelRun::Text(c.to_string()));
                return true;
            }
            Item::Token(t) => *t,
        };
        match &token.kind {
            TokenKind::Text(s) => {
                let arg = self.argument();
                out.push(if s == "^" {
                    LabelRun::Sup(arg)
                } else {
                    LabelRun::Sub(arg)
                });
            }
            TokenKind::Group(ts) => out.extend(label_from_tokens(ts)),
            TokenKind::Optional(ts) => {
                out.push(LabelRun::Text("[".into()));
                out.extend(label_from_tokens(ts));
                out.push(LabelRun::Text("]".into()));
            }
            TokenKind::Command(name) => self.command(name, out),
            TokenKind::CellSep => out.push(LabelRun::Text("&".into())),
            TokenKind::RowSep | TokenKind::Param(_) => {}
        }
        true
    }

    fn command(&mut self, name: &str, out: &mut LabelExpr) {
        if let Some(kind) = style_kind(name) {
            let body = self.argument();
            match kind {
                Some(kind) => out.push(LabelRun::Style { kind, body }),
                None => out.extend(body),
            }
        } else if name == "ket" {
            out.push(LabelRun::Ket(self.argument()));
        } else if name == "bra" {
            out.push(LabelRun::Bra(self.argument()));
        } else if name == "rule" {
            self.skip_optional();
            let width = parse_length(&self.raw_argument()).unwrap_or(Length::em(0.0));
            let height = parse_length(&self.raw_argument()).unwrap_or(Length::em(0.0));
            out.push(LabelRun::Rule { width, height });
        } else if name == "hspace" {
            let width = parse_length(&self.raw_argument()).unwrap_or(Length::em(0.0));
            out.push(LabelRun::Rule {
                width,
                height: Length::em(0.0),
            });
        } else if symbol_char(name).is_some() {
            out.push(LabelRun::Symbol(name.to_string()));
        } else if name == "!" {
            // negative thin space
        } else if SPACES.contains(&name) {
            out.push(LabelRun::Text(" ".into()));
        } else if ESCAPES.contains(&name) {
            out.push(LabelRun::Text(name.into()));
        } else {
            out.push(LabelRun::Text(format!("\\{name}")));
        }
    }
}

/// Concatenated text of a token list, with commands written back as `\name`.
pub fn flat_text(tokens: &[Token]) -> String {
    let mut out = String::new();
    for t in tokens {
        match &t.kind {
            TokenKind::Text(s) | TokenKind::Param(s) => out.push_str(s),
            TokenKind::Command(n) => {
                out.push('\\');
                out.push_str(n);
            }
            TokenKind::Group(ts) => {
                out.push('{');
                out.push_str(&flat_text(ts));
                out.push('}');
            }
            TokenKind::Optional(ts) => {
                out.push('[');
                out.push_str(&flat_text(ts));
                out.push(']');
            }
            TokenKind::CellSep => out.push('&'),
            TokenKind::RowSep => out.push_str("\\\\"),
        }
    }
    out
}
