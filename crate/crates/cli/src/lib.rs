//! Command-line driver for the Q-circuit compiler.

mod corpus;

pub use corpus::{run_corpus, CorpusReport, FileReport, FileStatus, GoldenCheck};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{CommandFactory, Parser, ValueEnum};
use rayon::prelude::*;

use qcirc_core::model::ast_to_json;
use qcirc_core::style::UNITS_PER_EM;
use qcirc_core::{analyze, to_svg, Diagnostic, ParseError, Style};

/// Environment variable naming a style file when `--style` is absent.
pub const STYLE_ENV: &str = "QCIRC_STYLE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTICS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Json,
    /// Validate only.
    Check,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Svg => "svg",
            Format::Json => "json",
            Format::Check => "",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qcirc", version, about = "Compile Q-circuit diagrams to SVG")]
struct Args {
    /// Source files.
    inputs: Vec<PathBuf>,
    /// Output file, or directory when compiling several inputs.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "svg")]
    format: Format,
    /// Grow the canvas to fit stick and raw labels.
    #[arg(long)]
    fit_labels: bool,
    /// Size gate groups from their corner entries only.
    #[arg(long)]
    corner_only_groups: bool,
    /// Style overrides (`key = value` lines).
    #[arg(long)]
    style: Option<PathBuf>,
    /// Output scale multiplier.
    #[arg(long)]
    scale: Option<f64>,
    /// Compile every `.qc` file in a directory and print a report.
    #[arg(long, conflicts_with = "inputs")]
    corpus: Option<PathBuf>,
    /// Directory of expected SVGs to compare corpus output against.
    #[arg(long, requires = "corpus")]
    goldens: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub fit_labels: bool,
    pub corner_only_groups: bool,
    pub style_path: Option<PathBuf>,
    pub scale: f64,
}

impl RunConfig {
    pub fn new(inputs: Vec<PathBuf>) -> Self {
        RunConfig {
            inputs,
            output: None,
            format: Format::Svg,
            fit_labels: false,
            corner_only_groups: false,
            style_path: None,
            scale: 1.0,
        }
    }

    pub fn check(&self) -> anyhow::Result<()> {
        if self.format == Format::Check && self.output.is_some() {
            bail!("--format check does not write output; drop -o/--out");
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            bail!("--scale must be a positive number");
        }
        Ok(())
    }

    /// Loads the style file, if any, and applies the command-line flags.
    pub fn style(&self) -> anyhow::Result<Style> {
        let mut style = Style::default();
        if let Some(path) = &self.style_path {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read style file {}", path.display()))?;
            style
                .apply_config(&text)
                .with_context(|| format!("in style file {}", path.display()))?;
        }
        style.render.fit_labels = self.fit_labels;
        style.render.corner_only_groups = self.corner_only_groups;
        style.render.scale = UNITS_PER_EM * self.scale;
        Ok(style)
    }

    /// Where output for `input` goes; `None` means standard output.
    fn destination(&self, input: &Path) -> Option<PathBuf> {
        let file_name = || {
            let stem = input.file_stem().unwrap_or(input.as_os_str());
            PathBuf::from(stem).with_extension(self.format.extension())
        };
        match &self.output {
            None if self.inputs.len() == 1 => None,
            None => Some(input.with_file_name(file_name())),
            Some(out) if self.inputs.len() > 1 || out.is_dir() => Some(out.join(file_name())),
            Some(out) => Some(out.clone()),
        }
    }
}

/// `file:line:col: CODE: message`
pub fn format_diagnostic(path: &Path, d: &Diagnostic) -> String {
    format!(
        "{}:{}:{}: {}",
        path.display(),
        d.span.line,
        d.span.column,
        d
    )
}

pub fn format_parse_error(path: &Path, e: &ParseError) -> String {
    match e.span() {
        Some(span) => format!(
            "{}:{}:{}: parse error: {}",
            path.display(),
            span.line,
            span.column,
            e
        ),
        None => format!("{}: parse error: {}", path.display(), e),
    }
}

/// Result of one input: messages for stderr, text for stdout, exit code.
struct Outcome {
    messages: Vec<String>,
    stdout: Option<String>,
    code: i32,
}

fn compile_one(config: &RunConfig, style: &Style, input: &Path) -> Outcome {
    let mut outcome = Outcome {
        messages: Vec::new(),
        stdout: None,
        code: EXIT_OK,
    };
    let source = match fs::read_to_string(input) {
        Ok(s) => s,
        Err(e) => {
            outcome.messages.push(format!("{}: {}", input.display(), e));
            outcome.code = EXIT_USAGE;
            return outcome;
        }
    };
    let analysis = match analyze(&source) {
        Ok(a) => a,
        Err(e) => {
            outcome.messages.push(format_parse_error(input, &e));
            outcome.code = EXIT_DIAGNOSTICS;
            return outcome;
        }
    };
    outcome.messages.extend(
        analysis
            .diagnostics
            .iter()
            .map(|d| format_diagnostic(input, d)),
    );
    if analysis.has_errors() {
        outcome.code = EXIT_DIAGNOSTICS;
        return outcome;
    }
    let text = match config.format {
        Format::Check => return outcome,
        Format::Svg => to_svg(&analysis.ast, style),
        Format::Json => ast_to_json(&analysis.ast),
    };
    match config.destination(input) {
        None => outcome.stdout = Some(text),
        Some(path) => {
            let written = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .map_or(Ok(()), fs::create_dir_all)
                .and_then(|()| fs::write(&path, text));
            if let Err(e) = written {
                outcome.messages.push(format!("{}: {}", path.display(), e));
                outcome.code = EXIT_USAGE;
            }
        }
    }
    outcome
}

/// Compiles every input, printing diagnostics in input order.
pub fn run_config(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
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
    let outcomes: Vec<Outcome> = config
        .inputs
        .par_iter()
        .map(|input| compile_one(config, &style, input))
        .collect();
    let mut code = EXIT_OK;
    for outcome in outcomes {
        for m in &outcome.messages {
            let _ = writeln!(err, "{m}");
        }
        if let Some(text) = &outcome.stdout {
            let _ = out.write_all(text.as_bytes());
        }
        code = code.max(outcome.code);
    }
    code
}

/// Runs the command line `argv` (program name first).
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let ok = e.exit_code() == 0;
            let sink: &mut dyn Write = if ok { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if ok { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let style_path = args.style.or_else(|| {
        std::env::var_os(STYLE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    });
    let config = RunConfig {
        inputs: args.inputs,
        output: args.out,
        format: args.format,
        fit_labels: args.fit_labels,
        corner_only_groups: args.corner_only_groups,
        style_path,
        scale: args.scale.unwrap_or(1.0),
    };
    if let Some(dir) = args.corpus {
        return corpus::run_corpus_command(&config, &dir, args.goldens.as_deref(), out, err);
    }
    if config.inputs.is_empty() {
        let _ = write!(err, "{}", Args::command().render_usage());
        let _ = writeln!(err, "\n\nFor more information, try '--help'.");
        return EXIT_USAGE;
    }
    run_config(&config, out, err)
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
