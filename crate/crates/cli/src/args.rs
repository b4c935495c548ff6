use std::path::PathBuf;

use askdetect::lexicon::{AskLabel, LexiconSource};
use askdetect::LinkMode;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "askdetect", version, about = "Detect asks and framings in social-engineering emails")]
pub struct Cli {
    /// Resource directory (lexicons, CATVAR, category rules).
    #[arg(long, global = true, env = "ASKDETECT_RESOURCES", value_name = "DIR")]
    pub resources: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze emails and report asks, framings and top asks.
    Analyze(AnalyzeArgs),
    /// Score the case ladder against a gold validation set.
    Evaluate(EvaluateArgs),
    /// Inspect the verb lexicons.
    #[command(subcommand)]
    Lexicon(LexiconCommand),
    /// Print the normalized text and link table of an email as JSON.
    Normalize {
        /// Email file; stdin when omitted.
        email: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

impl Switch {
    pub fn enabled(self) -> bool {
        self == Switch::On
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LinkModeArg {
    None,
    Basic,
    Advanced,
}

impl From<LinkModeArg> for LinkMode {
    fn from(m: LinkModeArg) -> Self {
        match m {
            LinkModeArg::None => LinkMode::None,
            LinkModeArg::Basic => LinkMode::Basic,
            LinkModeArg::Advanced => LinkMode::Advanced,
        }
    }
}

/// Feature switches that override a case preset.
#[derive(Debug, Clone, Args)]
pub struct Overrides {
    #[arg(long, value_enum)]
    pub link_mode: Option<LinkModeArg>,
    /// Rule out past-tense and progressive actions as asks.
    #[arg(long, value_enum)]
    pub verbal: Option<Switch>,
    #[arg(long, value_enum)]
    pub catvar: Option<Switch>,
}

impl Overrides {
    pub fn any(&self) -> bool {
        self.link_mode.is_some() || self.verbal.is_some() || self.catvar.is_some()
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Email files; each needs a `<name>.ann.jsonl` sidecar unless
    /// --annotations or --adapter is given. Reads stdin when omitted.
    pub emails: Vec<PathBuf>,
    /// Annotation file for a single email (or for stdin).
    #[arg(long, value_name = "FILE")]
    pub annotations: Option<PathBuf>,
    /// Command that reads one text segment per line on stdin and writes
    /// annotation JSON lines on stdout; run through `sh -c`.
    #[arg(long, value_name = "CMD", conflicts_with = "annotations")]
    pub adapter: Option<String>,
    /// Case preset 0-6.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..7))]
    pub case: u8,
    #[command(flatten)]
    pub overrides: Overrides,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads.
    #[arg(long, default_value_t = default_jobs())]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseSelection {
    All,
    One(u8),
}

fn parse_case_selection(s: &str) -> Result<CaseSelection, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(CaseSelection::All);
    }
    match s.parse::<u8>() {
        Ok(n) if n < 7 => Ok(CaseSelection::One(n)),
        _ => Err(format!("expected 0-6 or `all`, got `{s}`")),
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Directory of `<id>.eml` files with `<id>.ann.jsonl` sidecars.
    #[arg(long, value_name = "DIR")]
    pub corpus: PathBuf,
    /// Gold validation set (JSON lines).
    #[arg(long, value_name = "FILE")]
    pub gold: PathBuf,
    /// Case preset 0-6, or `all` for the full ladder.
    #[arg(long, default_value = "all", value_parser = parse_case_selection)]
    pub case: CaseSelection,
    #[command(flatten)]
    pub overrides: Overrides,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

fn parse_source(s: &str) -> Result<LexiconSource, String> {
    s.parse()
}

fn parse_label(s: &str) -> Result<AskLabel, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum LexiconCommand {
    /// Labels of a lemma.
    Lookup {
        lemma: String,
        #[arg(long, default_value = "lcs+", value_parser = parse_source)]
        source: LexiconSource,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Lemmas removed and added between two lexicons.
    Diff {
        #[arg(value_parser = parse_source)]
        from: LexiconSource,
        #[arg(value_parser = parse_source)]
        to: LexiconSource,
        /// Restrict to one label.
        #[arg(long, value_parser = parse_label)]
        label: Option<AskLabel>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Lemma counts per label.
    Counts {
        /// One source; all when omitted.
        #[arg(long, value_parser = parse_source)]
        source: Option<LexiconSource>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}
