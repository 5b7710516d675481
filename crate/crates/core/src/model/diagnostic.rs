use std::fmt;

use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

/// Diagnostic codes. `E` codes make a circuit invalid; `W` codes do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    /// Wire-connecting element in the leftmost column.
    E001,
    /// Vertical or horizontal offset leaves the grid.
    E002,
    /// Wire command before the gate command in an entry.
    E003,
    /// Unknown command at the top level of an entry.
    E004,
    /// Multi-row gate extends past the last row.
    E005,
    /// More than one body element in an entry.
    E006,
    /// Missing or malformed command argument.
    E007,
    /// Ghost not covered by a multi-row gate.
    W001,
    /// Gate group outside the grid; the group is dropped.
    W002,
    /// Ghost label width differs from its multi-row gate's label.
    W003,
    /// Character without metrics; a fallback width was used.
    W101,
}

impl Code {
    pub fn severity(self) -> Severity {
        match self {
            Code::E001
            | Code::E002
            | Code::E003
            | Code::E004
            | Code::E005
            | Code::E006
            | Code::E007 => Severity::Error,
            Code::W001 | Code::W002 | Code::W003 | Code::W101 => Severity::Warning,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Code::E001 => "E001",
            Code::E002 => "E002",
            Code::E003 => "E003",
            Code::E004 => "E004",
            Code::E005 => "E005",
            Code::E006 => "E006",
            Code::E007 => "E007",
            Code::W001 => "W001",
            Code::W002 => "W002",
            Code::W003 => "W003",
            Code::W101 => "W101",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub code: Code,
    pub span: Span,
    pub message: String,
    /// 0-based grid position, when the diagnostic concerns one entry.
    pub cell: Option<(usize, usize)>,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            span,
            message: message.into(),
            cell: None,
        }
    }

    pub fn at_cell(
        code: Code,
        span: Span,
        cell: (usize, usize),
        message: impl Into<String>,
    ) -> Self {
        Diagnostic {
            cell: Some(cell),
            ..Diagnostic::new(code, span, message)
        }
    }

    pub fn severity(&self) -> Severity {
        self.code.severity()
    }

    pub fn is_error(&self) -> bool {
        self.severity() == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if let Some((r, c)) = self.cell {
            write!(f, " (row {}, column {})", r + 1, c + 1)?;
        }
        Ok(())
    }
}

/// Sorts diagnostics into source order; ties keep their relative order.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by_key(|d| (d.span.start, d.cell));
}
