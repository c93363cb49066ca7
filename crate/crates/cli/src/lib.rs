//! `reslab`: command-line experiments over `resonance-core`.
//!
//! [`run`] parses an argument vector, executes one subcommand inside a rayon
//! pool of the requested width and writes a CSV or JSON report. Exit codes:
//! 0 success, 2 usage, 3 budget or precision, 4 no witness.

mod args;
mod commands;
mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use resonance_core::Error;
use serde_json::json;

pub use args::Format;
pub use report::{Manifest, Report, Value};

use args::Cli;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NO_WITNESS: i32 = 4;

/// Exit code and error category for a core error.
pub fn classify(e: &Error) -> (i32, &'static str) {
    match e {
        Error::LimitExceeded { .. } | Error::FactorizationBudget { .. } | Error::Overflow => (EXIT_BUDGET, "budget"),
        Error::Precision(_) => (EXIT_BUDGET, "precision"),
        Error::WitnessNotFound { .. } => (EXIT_NO_WITNESS, "witness"),
        _ => (EXIT_USAGE, "usage"),
    }
}

/// Flags as given on the command line, minus the ones recorded separately.
fn parameters(argv: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut i = 1;
    while i < argv.len() {
        if let Some(flag) = argv[i].strip_prefix("--") {
            let (key, value) = match flag.split_once('=') {
                Some((k, v)) => (k.to_string(), Some(v.to_string())),
                None => (flag.to_string(), None),
            };
            let value = match value {
                Some(v) => v,
                None if i + 1 < argv.len() && !argv[i + 1].starts_with("--") => {
                    i += 1;
                    argv[i].clone()
                }
                None => "true".into(),
            };
            if !matches!(key.as_str(), "threads" | "seed" | "format" | "out") {
                out.push((key, value));
            }
        }
        i += 1;
    }
    out.sort();
    out
}

fn timestamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .unwrap_or_else(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs() as i64)
                .unwrap_or(0)
        });
    chrono::DateTime::from_timestamp(secs, 0)
        .map(|t| t.to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
        .unwrap_or_default()
}

fn write_file(path: &Path, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    body(&mut w)?;
    w.flush()
}

fn sidecar(path: &Path, suffix: &str) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    s.into()
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if help { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return if help { 0 } else { EXIT_USAGE };
        }
    };
    let g = &cli.global;
    if g.emit_plot && (g.out.is_none() || g.format != Format::Csv) {
        let _ = writeln!(err, "error: --emit-plot needs --out and --format csv");
        return EXIT_USAGE;
    }
    let threads = g.threads.map(|t| t as usize).unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    });
    let manifest = Manifest {
        subcommand: commands::name(&cli.command).into(),
        parameters: parameters(&argv),
        seed: g.seed,
        threads,
        timestamp: timestamp(),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {threads} threads: {e}");
            return EXIT_BUDGET;
        }
    };
    let result = pool.install(|| commands::dispatch(&cli.command, g.seed));

    let (report, code, errors) = match result {
        Ok(r) => (Some(r), 0, vec![]),
        Err(e) => {
            let (code, kind) = classify(&e);
            let _ = writeln!(err, "error: {e}");
            (None, code, vec![json!({ "kind": kind, "message": e.to_string(), "exitCode": code })])
        }
    };
    if report.is_none() && g.format == Format::Csv {
        return code;
    }

    let emitted = match (g.format, &g.out) {
        (Format::Json, target) => {
            let rows = report.as_ref().map(Report::json_rows).unwrap_or_else(|| json!([]));
            let body = report::envelope(&manifest, rows, errors);
            let text = serde_json::to_string_pretty(&body).expect("serializable") + "\n";
            match target {
                Some(path) => write_file(path, |w| w.write_all(text.as_bytes())),
                None => out.write_all(text.as_bytes()),
            }
        }
        (Format::Csv, None) => report.as_ref().expect("checked above").write_csv(out),
        (Format::Csv, Some(path)) => {
            let report = report.as_ref().expect("checked above");
            write_file(path, |w| report.write_csv(w))
                .and_then(|_| {
                    let text = serde_json::to_string_pretty(&manifest.json()).expect("serializable") + "\n";
                    write_file(&sidecar(path, ".manifest.json"), |w| w.write_all(text.as_bytes()))
                })
                .and_then(|_| {
                    if !g.emit_plot {
                        return Ok(());
                    }
                    let data = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    match report::gnuplot_script(report, &data) {
                        Some(script) => write_file(&sidecar(path, ".gp"), |w| w.write_all(script.as_bytes())),
                        None => {
                            let _ = writeln!(err, "warning: no plot is defined for this subcommand");
                            Ok(())
                        }
                    }
                })
        }
    };
    if let Err(e) = emitted {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    code
}
