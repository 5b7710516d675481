use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use rayon::prelude::*;

use qcirc_core::{analyze, to_svg, Style};

use crate::{
    format_diagnostic, format_parse_error, RunConfig, EXIT_DIAGNOSTICS, EXIT_OK, EXIT_USAGE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldenCheck {
    /// No goldens directory was given, or the file did not compile.
    NotChecked,
    Missing,
    Match,
    Mismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileStatus {
    Ok,
    Diagnostics,
    GoldenMismatch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FileReport {
    pub name: String,
    /// Parse errors and E-diagnostics, formatted for printing.
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
    pub golden: GoldenCheck,
    /// Compiled document, when there were no errors.
    pub svg: Option<String>,
}

impl FileReport {
    pub fn status(&self) -> FileStatus {
        if !self.errors.is_empty() {
            FileStatus::Diagnostics
        } else if self.golden == GoldenCheck::Mismatch {
            FileStatus::GoldenMismatch
        } else {
            FileStatus::Ok
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport {
    /// Sorted by file name.
    pub files: Vec<FileReport>,
    pub ok: usize,
    pub with_errors: usize,
    pub mismatches: usize,
}

impl CorpusReport {
    pub fn from_files(mut files: Vec<FileReport>) -> Self {
        files.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |s| files.iter().filter(|f| f.status() == s).count();
        CorpusReport {
            ok: count(FileStatus::Ok),
            with_errors: count(FileStatus::Diagnostics),
            mismatches: count(FileStatus::GoldenMismatch),
            files,
        }
    }

    pub fn file(&self, name: &str) -> Option<&FileReport> {
        self.files.iter().find(|f| f.name == name)
    }

    pub fn table(&self) -> String {
        let width = self
            .files
            .iter()
            .map(|f| f.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<width$}  {:<11}  {:>6}  {:>8}  golden",
            "file", "status", "errors", "warnings"
        );
        for f in &self.files {
            let status = match f.status() {
                FileStatus::Ok => "ok",
                FileStatus::Diagnostics => "diagnostics",
                FileStatus::GoldenMismatch => "mismatch",
            };
            let golden = match f.golden {
                GoldenCheck::NotChecked => "-",
                GoldenCheck::Missing => "missing",
                GoldenCheck::Match => "match",
                GoldenCheck::Mismatch => "differs",
            };
            let _ = writeln!(
                s,
                "{:<width$}  {:<11}  {:>6}  {:>8}  {}",
                f.name,
                status,
                f.errors.len(),
                f.warnings.len(),
                golden
            );
        }
        let _ = writeln!(
            s,
            "{} files: {} ok, {} with errors, {} golden mismatches",
            self.files.len(),
            self.ok,
            self.with_errors,
            self.mismatches
        );
        s
    }
}

fn compile_file(path: &Path, goldens: Option<&Path>, style: &Style) -> FileReport {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut report = FileReport {
        name,
        errors: Vec::new(),
        warnings: Vec::new(),
        golden: GoldenCheck::NotChecked,
        svg: None,
    };
    let source = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            report.errors.push(format!("{}: {}", path.display(), e));
            return report;
        }
    };
    let analysis = match analyze(&source) {
        Ok(a) => a,
        Err(e) => {
            report.errors.push(format_parse_error(path, &e));
            return report;
        }
    };
    for d in &analysis.diagnostics {
        let line = format_diagnostic(path, d);
        if d.is_error() {
            report.errors.push(line);
        } else {
            report.warnings.push(line);
        }
    }
    if !report.errors.is_empty() {
        return report;
    }
    let svg = to_svg(&analysis.ast, style);
    if let Some(dir) = goldens {
        let golden = dir.join(path.with_extension("svg").file_name().unwrap_or_default());
        report.golden = match fs::read(&golden) {
            Ok(bytes) if bytes == svg.as_bytes() => GoldenCheck::Match,
            Ok(_) => GoldenCheck::Mismatch,
            Err(_) => GoldenCheck::Missing,
        };
    }
    report.svg = Some(svg);
    report
}

/// Compiles every `.qc` file directly inside `dir`, comparing against
/// `<goldens>/<stem>.svg` when a goldens directory is given.
pub fn run_corpus(dir: &Path, goldens: Option<&Path>, style: &Style) -> io::Result<CorpusReport> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "qc") {
            paths.push(path);
        }
    }
    let files = paths
        .par_iter()
        .map(|p| compile_file(p, goldens, style))
        .collect();
    Ok(CorpusReport::from_files(files))
}

pub(crate) fn run_corpus_command(
    config: &RunConfig,
    dir: &Path,
    goldens: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if let Err(e) = config.check() {
        let _ = writeln!(err, "qcirc: {e:#}");
        return EXIT_USAGE;
    }
    let style = match config.style() {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "qcirc: {e:#}");
            return EXIT_USAGE;
        }
    };
    if !dir.is_dir() {
        let _ = writeln!(err, "qcirc: corpus directory {} not found", dir.display());
        return EXIT_USAGE;
    }
    let report = match run_corpus(dir, goldens, &style) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "qcirc: {}: {}", dir.display(), e);
            return EXIT_USAGE;
        }
    };
    for f in &report.files {
        for line in f.errors.iter().chain(&f.warnings) {
            let _ = writeln!(err, "{line}");
        }
    }
    if let Some(out_dir) = &config.output {
        if let Err(e) = write_outputs(&report, out_dir) {
            let _ = writeln!(err, "qcirc: {}: {}", out_dir.display(), e);
            return EXIT_USAGE;
        }
    }
    let _ = write!(out, "{}", report.table());
    if report.with_errors > 0 || report.mismatches > 0 {
        EXIT_DIAGNOSTICS
    } else {
        EXIT_OK
    }
}

/// Writes each compiled document as `<out_dir>/<stem>.svg`.
fn write_outputs(report: &CorpusReport, out_dir: &Path) -> io::Result<()> {
    fs::create_dir_all(out_dir)?;
    for f in &report.files {
        if let Some(svg) = &f.svg {
            fs::write(out_dir.join(Path::new(&f.name).with_extension("svg")), svg)?;
        }
    }
    Ok(())
}
