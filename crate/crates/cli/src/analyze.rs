use std::fs;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use askdetect::annotation::{load_annotations, AnnotatedDocument};
use askdetect::eval::{analyze_email, annotation_path, check_segments, CorpusEmail};
use askdetect::ingest::normalize_email;
use askdetect::{DetectorConfig, EmailAnalysis, NormalizedDocument, Resources};
use rayon::prelude::*;

use crate::args::{AnalyzeArgs, Format};
use crate::{build_config, input_error, render, CliError};

const STDIN_ID: &str = "<stdin>";

pub fn run(resources: &Resources, args: &AnalyzeArgs) -> Result<(), CliError> {
    let cfg = build_config(args.case, &args.overrides, resources)?;
    if args.annotations.is_some() && args.emails.len() > 1 {
        return Err(CliError::Input("--annotations applies to a single email".into()));
    }
    if args.emails.is_empty() && args.annotations.is_none() && args.adapter.is_none() {
        return Err(CliError::Input("reading an email from stdin needs --annotations or --adapter".into()));
    }

    let inputs: Vec<Option<&Path>> =
        if args.emails.is_empty() { vec![None] } else { args.emails.iter().map(|p| Some(p.as_path())).collect() };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build().map_err(input_error)?;
    let results: Vec<Result<EmailAnalysis, CliError>> =
        pool.install(|| inputs.par_iter().map(|p| analyze_one(*p, args, resources, &cfg)).collect());
    let analyses = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut out = std::io::stdout().lock();
    let written = match args.format {
        Format::Json => analyses.iter().try_for_each(|a| {
            let line = serde_json::to_string(&a.to_json()).map_err(std::io::Error::other)?;
            writeln!(out, "{line}")
        }),
        Format::Table => write!(out, "{}", render::analysis_table(&analyses)),
    };
    written.map_err(input_error)
}

fn analyze_one(
    path: Option<&Path>,
    args: &AnalyzeArgs,
    resources: &Resources,
    cfg: &DetectorConfig,
) -> Result<EmailAnalysis, CliError> {
    let name = path.map_or_else(|| STDIN_ID.to_string(), |p| p.display().to_string());
    let raw = read_email(path)?;
    let document = normalize_email(&raw).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    let annotations = match (&args.adapter, &args.annotations, path) {
        (Some(cmd), _, _) => run_adapter(cmd, &document).map_err(|e| CliError::Input(format!("{name}: adapter: {e}")))?,
        (None, Some(file), _) => read_annotations(file)?,
        (None, None, Some(p)) => read_annotations(&annotation_path(p))?,
        (None, None, None) => unreachable!("checked before dispatch"),
    };
    check_segments(&document, &annotations).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    let id = path.and_then(|p| p.file_stem()).map_or_else(|| STDIN_ID.to_string(), |s| s.to_string_lossy().into_owned());
    let email = CorpusEmail { id, path: path.map(Path::to_path_buf).unwrap_or_default(), document, annotations };
    Ok(analyze_email(&email, resources, cfg))
}

pub fn read_email(path: Option<&Path>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) => fs::read(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::Input(format!("{STDIN_ID}: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_annotations(path: &PathBuf) -> Result<AnnotatedDocument, CliError> {
    let file = fs::File::open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            CliError::Input(format!("missing annotations: {}", path.display()))
        } else {
            CliError::Input(format!("{}: {e}", path.display()))
        }
    })?;
    load_annotations(BufReader::new(file)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Pipes the segments, one per line, to `sh -c cmd` and parses its stdout.
fn run_adapter(cmd: &str, document: &NormalizedDocument) -> Result<AnnotatedDocument, String> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(cmd)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    let mut input = String::new();
    for segment in &document.segments {
        input.push_str(segment);
        input.push('\n');
    }
    let mut stdin = child.stdin.take().expect("stdin is piped");
    let writer = std::thread::spawn(move || stdin.write_all(input.as_bytes()));
    let output = child.wait_with_output().map_err(|e| e.to_string())?;
    // A command that exits without reading its input closes the pipe early.
    let _ = writer.join();
    if !output.status.success() {
        return Err(format!("`{cmd}` failed ({}): {}", output.status, String::from_utf8_lossy(&output.stderr).trim()));
    }
    load_annotations(output.stdout.as_slice()).map_err(|e| e.to_string())
}
