//! Verb lexicons (thesaurus lists, LCS classes and the LCS+ variant) and
//! the categorial-variation database.
//!
//! On-disk layout of a resource directory:
//!
//! ```text
//! perform.txt give.txt lose.txt gain.txt   one lemma per line, '#' comments
//! classes.tsv                              class_id <TAB> name <TAB> lemma lemma ...
//! class_labels.tsv                         class_id <TAB> PERFORM|GIVE|LOSE|GAIN|NONE
//! deltas.tsv                               LABEL <TAB> +|- <TAB> lemma
//! catvar.txt                               word#POS word#POS ... per cluster
//! manifest.toml                            provenance, per-source counts, sha256 checksums
//! ```

mod catvar;
mod delta;
mod lcs;
mod manifest;
mod thesaurus;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catvar::{catvar_verbalize, load_catvar, parse_catvar, CatVarDatabase, PosClass};
pub use delta::{apply_deltas, load_deltas, parse_deltas, revert_deltas, LexiconDelta};
pub use lcs::{load_lcs, parse_lcs};
pub use manifest::{published_counts, LexiconManifest, Provenance};
pub use thesaurus::{load_thesaurus, thesaurus_from_lists};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("missing resource file {0}")]
    MissingFile(PathBuf),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error("catvar line {line}: {message}")]
    MalformedCluster { line: usize, message: String },
    #[error("manifest mismatch: {0}")]
    ManifestMismatch(String),
    #[error("delta for {label} removes {lemma:?}, which does not carry that label")]
    RemoveMissing { label: AskLabel, lemma: String },
    #[error("delta for {label} adds {lemma:?}, which already carries that label")]
    AddPresent { label: AskLabel, lemma: String },
    #[error("delta for {label} both adds and removes {lemma:?}")]
    DeltaOverlap { label: AskLabel, lemma: String },
    #[error("deltas apply to an LCS lexicon, got {0}")]
    WrongSource(LexiconSource),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AskLabel {
    Perform,
    Give,
    Lose,
    Gain,
}

impl AskLabel {
    pub const ALL: [AskLabel; 4] = [AskLabel::Perform, AskLabel::Give, AskLabel::Lose, AskLabel::Gain];

    pub fn is_ask(self) -> bool {
        matches!(self, AskLabel::Perform | AskLabel::Give)
    }

    pub fn is_framing(self) -> bool {
        !self.is_ask()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AskLabel::Perform => "PERFORM",
            AskLabel::Give => "GIVE",
            AskLabel::Lose => "LOSE",
            AskLabel::Gain => "GAIN",
        }
    }

    /// Base name of the thesaurus list file.
    pub fn file_stem(self) -> &'static str {
        match self {
            AskLabel::Perform => "perform",
            AskLabel::Give => "give",
            AskLabel::Lose => "lose",
            AskLabel::Gain => "gain",
        }
    }
}

impl fmt::Display for AskLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AskLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AskLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown label {s:?} (expected PERFORM, GIVE, LOSE or GAIN)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LexiconSource {
    Thesaurus,
    Lcs,
    LcsPlus,
}

impl LexiconSource {
    pub const ALL: [LexiconSource; 3] = [LexiconSource::Thesaurus, LexiconSource::Lcs, LexiconSource::LcsPlus];

    pub fn as_str(self) -> &'static str {
        match self {
            LexiconSource::Thesaurus => "THESAURUS",
            LexiconSource::Lcs => "LCS",
            LexiconSource::LcsPlus => "LCS_PLUS",
        }
    }

    /// Key used in the manifest's `[counts.*]` tables.
    pub fn manifest_key(self) -> &'static str {
        match self {
            LexiconSource::Thesaurus => "thesaurus",
            LexiconSource::Lcs => "lcs",
            LexiconSource::LcsPlus => "lcs_plus",
        }
    }
}

impl fmt::Display for LexiconSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LexiconSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "thesaurus" => Ok(LexiconSource::Thesaurus),
            "lcs" => Ok(LexiconSource::Lcs),
            "lcs+" | "lcs_plus" | "lcsplus" | "lcs-plus" => Ok(LexiconSource::LcsPlus),
            _ => Err(format!("unknown lexicon source {s:?} (expected thesaurus, lcs or lcs+)")),
        }
    }
}

/// One LCS verb class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsClass {
    pub name: String,
    pub members: BTreeSet<String>,
    pub label: AskLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbLexicon {
    pub source: LexiconSource,
    pub entries: BTreeMap<String, BTreeSet<AskLabel>>,
    /// Labeled classes by id; empty for thesaurus lexicons.
    pub class_index: BTreeMap<String, LcsClass>,
}

impl VerbLexicon {
    pub fn empty(source: LexiconSource) -> Self {
        Self { source, entries: BTreeMap::new(), class_index: BTreeMap::new() }
    }

    /// Labels of `lemma`; no priority is applied here.
    pub fn lookup(&self, lemma: &str) -> BTreeSet<AskLabel> {
        self.entries.get(lemma).cloned().unwrap_or_default()
    }

    pub fn has(&self, lemma: &str, label: AskLabel) -> bool {
        self.entries.get(lemma).is_some_and(|s| s.contains(&label))
    }

    pub fn insert(&mut self, lemma: &str, label: AskLabel) -> bool {
        self.entries.entry(lemma.to_string()).or_default().insert(label)
    }

    /// Drops `label` from `lemma`, and the lemma itself once it has no labels.
    pub fn remove(&mut self, lemma: &str, label: AskLabel) -> bool {
        let Some(set) = self.entries.get_mut(lemma) else { return false };
        let removed = set.remove(&label);
        if set.is_empty() {
            self.entries.remove(lemma);
        }
        removed
    }

    pub fn lemmas(&self, label: AskLabel) -> BTreeSet<&str> {
        self.entries
            .iter()
            .filter(|(_, labels)| labels.contains(&label))
            .map(|(l, _)| l.as_str())
            .collect()
    }

    pub fn count(&self, label: AskLabel) -> usize {
        self.entries.values().filter(|s| s.contains(&label)).count()
    }

    pub fn counts(&self) -> BTreeMap<AskLabel, usize> {
        AskLabel::ALL.into_iter().map(|l| (l, self.count(l))).collect()
    }
}

/// Set of labels for a lowercase lemma.
pub fn lookup_labels(lex: &VerbLexicon, lemma: &str) -> BTreeSet<AskLabel> {
    lex.lookup(lemma)
}

/// Lemmas gained and lost under `label` going from `from` to `to`.
pub fn diff_label(from: &VerbLexicon, to: &VerbLexicon, label: AskLabel) -> (Vec<String>, Vec<String>) {
    let a = from.lemmas(label);
    let b = to.lemmas(label);
    let added = b.difference(&a).map(|s| s.to_string()).collect();
    let removed = a.difference(&b).map(|s| s.to_string()).collect();
    (added, removed)
}

fn read_file(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            LexiconError::MissingFile(path.to_path_buf())
        } else {
            LexiconError::Io { path: path.to_path_buf(), source }
        }
    })
}

/// Lines with comments and surrounding whitespace stripped, paired with
/// their 1-based line numbers. Blank results are dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or_default().trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Validates and lowercases a lexicon lemma.
fn normalize_lemma(raw: &str) -> Result<String, String> {
    let lemma = raw.trim().to_lowercase();
    if lemma.is_empty() {
        return Err("empty lemma".into());
    }
    if lemma.chars().any(char::is_whitespace) {
        return Err(format!("multi-word entry {raw:?} is not supported"));
    }
    Ok(lemma)
}
