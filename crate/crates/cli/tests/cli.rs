use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;

const X_GATE: &str = "\\Qcircuit @C=1em @R=.7em {\n      & \\gate{X} & \\qw\n}\n";

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn qcirc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcirc"))
        .args(args)
        .env_remove(qcirc_cli::STYLE_ENV)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn compiles_to_svg_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.qc", X_GATE);
    let out = dir.path().join("x.svg");
    let o = qcirc(&[input.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = fs::read_to_string(out).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<g class=\"gate\">").count(), 1);
}

#[test]
fn svg_to_stdout_for_single_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.qc", X_GATE);
    let o = qcirc(&[input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("</svg>"));
}

#[test]
fn wrong_listing_exits_one_with_two_e001_lines() {
    let wrong = corpus_dir().join("wrong_gate_col1.qc");
    let o = qcirc(&["--format", "check", wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 2, "{err}");
    assert!(lines[0].ends_with("wrong_gate_col1.qc:2:6: E001: `\\gate` in the leftmost column has no entry to connect to on its left (row 1, column 1)"));
    assert!(lines[1].contains(":3:6: E001:"));
    assert!(o.stdout.is_empty());
}

#[test]
fn no_arguments_prints_usage() {
    let o = qcirc(&[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.qc", X_GATE);
    let path = input.to_str().unwrap();
    assert_eq!(
        qcirc(&["--format", "check", path, "-o", "x.svg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qcirc(&["--scale", "0", path]).status.code(), Some(2));
    assert_eq!(qcirc(&["--scale", "-1", path]).status.code(), Some(2));
    assert_eq!(qcirc(&["--format", "pdf", path]).status.code(), Some(2));
    assert_eq!(qcirc(&["--bogus", path]).status.code(), Some(2));
    assert_eq!(qcirc(&["missing.qc"]).status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    let o = qcirc(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("--corner-only-groups"));
    assert_eq!(qcirc(&["--version"]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.qc", "\\Qcircuit {\n & \\gate{X\n}\n");
    let o = qcirc(&["--format", "check", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("bad.qc:1:11: parse error: unbalanced brace"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn warnings_do_not_fail() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "w.qc", "\\Qcircuit { & \\ghost{U} & \\qw }\n");
    let o = qcirc(&["--format", "check", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("W001"));
}

#[test]
fn json_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = corpus_dir().join("control_family.qc");
    let out = dir.path().join("c.json");
    let o = qcirc(&[
        "--format",
        "json",
        input.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let json = fs::read_to_string(out).unwrap();
    let ast = qcirc_core::model::json_to_ast(&json).unwrap();
    let source = fs::read_to_string(input).unwrap();
    assert_eq!(ast, qcirc_core::analyze(&source).unwrap().ast);
}

#[test]
fn several_inputs_go_to_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.qc", X_GATE);
    let b = write(dir.path(), "b.qc", X_GATE);
    let out = dir.path().join("out");
    let o = qcirc(&[
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(out.join("a.svg").is_file() && out.join("b.svg").is_file());
}

#[test]
fn batch_diagnostics_follow_input_order() {
    let wrong = corpus_dir().join("wrong_gate_col1.qc");
    let dir = tempfile::tempdir().unwrap();
    let other = write(dir.path(), "other.qc", "\\Qcircuit { \\targ & \\qw }\n");
    let (w, o) = (wrong.to_str().unwrap(), other.to_str().unwrap());
    let first = stderr(&qcirc(&["--format", "check", w, o]));
    let second = stderr(&qcirc(&["--format", "check", o, w]));
    assert_eq!(first.lines().count(), 3);
    assert!(first.lines().next().unwrap().contains("wrong_gate_col1"));
    assert!(second.lines().next().unwrap().contains("other.qc"));
    let mut a: Vec<_> = first.lines().collect();
    let mut b: Vec<_> = second.lines().collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn style_file_and_environment_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.qc", X_GATE);
    let style = write(dir.path(), "house.style", "foreground = #123456\n");
    let bad = write(dir.path(), "bad.style", "wobble = 1em\n");
    let path = input.to_str().unwrap();

    let o = qcirc(&["--style", style.to_str().unwrap(), path]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("#123456"));

    let from_env = Command::new(env!("CARGO_BIN_EXE_qcirc"))
        .arg(path)
        .env(qcirc_cli::STYLE_ENV, &style)
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&from_env.stdout).contains("#123456"));

    let o = qcirc(&["--style", bad.to_str().unwrap(), path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown key `wobble`"));
}

#[test]
fn scale_flag_scales_canvas() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "x.qc", X_GATE);
    let width = |args: &[&str]| {
        let o = qcirc(args);
        let svg = String::from_utf8(o.stdout).unwrap();
        let start = svg.find(" width=\"").unwrap() + 8;
        let end = start + svg[start..].find('"').unwrap();
        svg[start..end].parse::<f64>().unwrap()
    };
    let path = input.to_str().unwrap();
    let one = width(&[path]);
    let two = width(&["--scale", "2", path]);
    assert!((two - 2.0 * one).abs() < 2e-3);
}

#[test]
fn flags_reach_the_renderer() {
    let src = "\\Qcircuit { & \\gate{A} \\gategroup{1}{2}{3}{2}{.4em}{--} \\\\ & \\gate{WWWW} \\\\ & \\gate{A} }\n";
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.qc", src);
    let path = input.to_str().unwrap();
    let full = String::from_utf8(qcirc(&[path]).stdout).unwrap();
    let corner = String::from_utf8(qcirc(&["--corner-only-groups", path]).stdout).unwrap();
    assert_ne!(full, corner);
    let labels = "\\Qcircuit { \\lstick{\\ket{\\psi}} & \\qw }\n";
    let input = write(dir.path(), "l.qc", labels);
    let path = input.to_str().unwrap();
    let plain = String::from_utf8(qcirc(&[path]).stdout).unwrap();
    let fitted = String::from_utf8(qcirc(&["--fit-labels", path]).stdout).unwrap();
    assert_ne!(plain.lines().nth(1), fitted.lines().nth(1));
}

#[test]
fn exit_code_matches_diagnostics_on_corpus() {
    for entry in fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "qc") {
            continue;
        }
        let source = fs::read_to_string(&path).unwrap();
        let has_errors = qcirc_core::analyze(&source).map_or(true, |a| a.has_errors());
        let code = qcirc(&["--format", "check", path.to_str().unwrap()])
            .status
            .code();
        assert_eq!(
            code,
            Some(if has_errors { 1 } else { 0 }),
            "{}",
            path.display()
        );
    }
}

/// Sources mixing valid and invalid entries, including column-0 gates.
fn any_source() -> impl Strategy<Value = String> {
    let cell = prop::sample::select(vec![
        "",
        r"\qw",
        r"\gate{H}",
        r"\targ",
        r"\ctrl{1}",
        r"\ctrl{-1}",
        r"\meter",
        r"\cw",
        r"\lstick{a}",
        r"\qwx[2]",
        r"\qw \gate{X}",
        r"\frob",
        r"\ghost{U}",
        r"\multigate{3}{U}",
    ]);
    prop::collection::vec(prop::collection::vec(cell, 1..4), 1..4).prop_map(|rows| {
        let body: Vec<String> = rows.iter().map(|r| r.join(" & ")).collect();
        format!("\\Qcircuit @C=1em {{ {} }}", body.join(r" \\ "))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exit_zero_iff_no_errors(src in any_source()) {
        let dir = tempfile::tempdir().unwrap();
        let input = write(dir.path(), "p.qc", &src);
        let config = qcirc_cli::RunConfig {
            format: qcirc_cli::Format::Check,
            ..qcirc_cli::RunConfig::new(vec![input])
        };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = qcirc_cli::run_config(&config, &mut out, &mut err);
        let analysis = qcirc_core::analyze(&src).unwrap();
        prop_assert_eq!(code, if analysis.has_errors() { 1 } else { 0 });
        let printed = String::from_utf8(err).unwrap();
        prop_assert_eq!(printed.lines().count(), analysis.diagnostics.len());
    }
}
