mod analyze;
mod args;
mod evaluate;
mod lexicon;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use askdetect::{DetectorConfig, Resources};
use clap::Parser;

use args::{Cli, Command, Overrides};

/// Failure with its exit status: 2 for bad input, 3 for gold alignment.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Alignment(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Alignment(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Alignment(m) => f.write_str(m),
        }
    }
}

pub fn input_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("askdetect: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(a) => analyze::run(&load_resources(cli.resources.as_deref())?, &a),
        Command::Evaluate(a) => evaluate::run(&load_resources(cli.resources.as_deref())?, &a),
        Command::Lexicon(c) => lexicon::run(&load_resources(cli.resources.as_deref())?, &c),
        Command::Normalize { email } => {
            let raw = analyze::read_email(email.as_deref())?;
            let doc = askdetect::ingest::normalize_email(&raw).map_err(input_error)?;
            println!("{}", serde_json::to_string_pretty(&doc).map_err(input_error)?);
            Ok(())
        }
    }
}

fn load_resources(dir: Option<&Path>) -> Result<Resources, CliError> {
    let dir: PathBuf = dir
        .map(Path::to_path_buf)
        .ok_or_else(|| CliError::Input("no resource directory: pass --resources or set ASKDETECT_RESOURCES".into()))?;
    Resources::load(&dir).map_err(|e| CliError::Input(format!("loading resources from {}: {e}", dir.display())))
}

/// Case preset with explicit feature switches applied on top.
pub fn build_config(case: u8, overrides: &Overrides, resources: &Resources) -> Result<DetectorConfig, CliError> {
    let mut cfg = DetectorConfig::case(case).map_err(input_error)?;
    cfg.categories = resources.categories.clone();
    if let Some(m) = overrides.link_mode {
        cfg.link_mode = m.into();
    }
    if let Some(v) = overrides.verbal {
        cfg.verbal_processing = v.enabled();
    }
    if let Some(c) = overrides.catvar {
        cfg.catvar = c.enabled();
    }
    Ok(cfg)
}
