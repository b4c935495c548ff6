//! Linguistic annotations consumed by the detector, and clause-level
//! action/argument extraction over them.
//!
//! Annotations are produced outside this crate (parser, tagger and SRL
//! system) and arrive as JSON lines, one sentence per line; see
//! [`load_annotations`].

mod arguments;
mod clauses;
mod load;
#[cfg(test)]
pub(crate) mod testdata;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use arguments::{extract_arguments, Argument, ArgumentSource};
pub use clauses::{extract_clauses, sentence_clauses, CandidateSource, ClauseCandidate};
pub use load::{load_annotations, parse_sentence, sentence_to_json};

#[derive(Debug, Error)]
pub enum AnnotationError {
    #[error("line {line}: invalid JSON: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: schema error: {message}")]
    Schema { line: usize, message: String },
    #[error("line {line}: dependency graph error: {message}")]
    Graph { line: usize, message: String },
    #[error("reading annotations: {0}")]
    Io(#[from] std::io::Error),
}

/// Inclusive token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn single(i: usize) -> Self {
        Self { start: i, end: i }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }
}

impl From<[usize; 2]> for Span {
    fn from([start, end]: [usize; 2]) -> Self {
        Self { start, end }
    }
}

impl From<Span> for [usize; 2] {
    fn from(s: Span) -> Self {
        [s.start, s.end]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub index: usize,
    pub text: String,
    pub lemma: String,
    /// Penn Treebank tag.
    pub pos: String,
}

impl Token {
    pub fn is_verb(&self) -> bool {
        self.pos.starts_with("VB")
    }

    /// Lowercased lemma, falling back to the surface form.
    pub fn normalized_lemma(&self) -> String {
        let lemma = if self.lemma.trim().is_empty() { &self.text } else { &self.lemma };
        lemma.trim().to_lowercase()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependency {
    /// `None` is the artificial ROOT.
    pub head: Option<usize>,
    pub dependent: usize,
    pub relation: String,
}

impl Dependency {
    /// Relation without subtype, lowercased (`obl:tmod` → `obl`).
    pub fn base_relation(&self) -> String {
        let rel = self.relation.to_ascii_lowercase();
        rel.split(':').next().unwrap_or_default().to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constituent {
    Node { label: String, children: Vec<Constituent> },
    Leaf(usize),
}

impl Constituent {
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Constituent::Leaf(i) => out.push(*i),
            Constituent::Node { children, .. } => {
                children.iter().for_each(|c| c.collect_leaves(out))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrlArg {
    pub role: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrlFrame {
    pub predicate_index: usize,
    pub args: Vec<SrlArg>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceAnnotation {
    /// Index into the normalized document's segments.
    pub segment_index: usize,
    pub tokens: Vec<Token>,
    pub dependencies: Vec<Dependency>,
    pub constituency: Option<Constituent>,
    pub srl_frames: Vec<SrlFrame>,
}

impl SentenceAnnotation {
    pub fn token(&self, i: usize) -> Option<&Token> {
        self.tokens.get(i)
    }

    /// Incoming dependency edge of token `i`.
    pub fn head_edge(&self, i: usize) -> Option<&Dependency> {
        self.dependencies.iter().find(|d| d.dependent == i)
    }

    pub fn children(&self) -> BTreeMap<Option<usize>, Vec<&Dependency>> {
        let mut out: BTreeMap<Option<usize>, Vec<&Dependency>> = BTreeMap::new();
        for dep in &self.dependencies {
            out.entry(dep.head).or_default().push(dep);
        }
        for list in out.values_mut() {
            list.sort_by_key(|d| d.dependent);
        }
        out
    }

    /// Smallest span covering token `i` and all of its dependency
    /// descendants.
    pub fn subtree_span(&self, i: usize) -> Span {
        let children = self.children();
        let mut span = Span::single(i);
        let mut stack = vec![i];
        let mut seen = vec![false; self.tokens.len()];
        while let Some(t) = stack.pop() {
            if t >= seen.len() || std::mem::replace(&mut seen[t], true) {
                continue;
            }
            span.start = span.start.min(t);
            span.end = span.end.max(t);
            if let Some(kids) = children.get(&Some(t)) {
                stack.extend(kids.iter().map(|d| d.dependent));
            }
        }
        span
    }

    /// Surface text of a token range, detokenized.
    pub fn text(&self, span: Span) -> String {
        let end = span.end.min(self.tokens.len().saturating_sub(1));
        detokenize(self.tokens[span.start.min(end)..=end].iter().map(|t| t.text.as_str()))
    }

    pub fn full_text(&self) -> String {
        if self.tokens.is_empty() {
            return String::new();
        }
        self.text(Span::new(0, self.tokens.len() - 1))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotatedDocument {
    pub sentences: Vec<SentenceAnnotation>,
}

/// Joins tokens with the spacing conventions of English text: no space
/// before closing punctuation and clitics, none after currency signs and
/// opening brackets.
pub fn detokenize<'a>(tokens: impl IntoIterator<Item = &'a str>) -> String {
    const NO_SPACE_BEFORE: &[&str] =
        &[".", ",", "!", "?", ";", ":", "%", ")", "]", "}", "n't", "...", "-RRB-"];
    const NO_SPACE_AFTER: &[&str] = &["$", "(", "[", "{", "#", "€", "£", "-LRB-"];

    let mut out = String::new();
    let mut glue_next = true;
    for tok in tokens {
        let attach = NO_SPACE_BEFORE.contains(&tok) || (tok.starts_with('\'') && tok.len() > 1);
        if !glue_next && !attach {
            out.push(' ');
        }
        out.push_str(match tok {
            "-LRB-" => "(",
            "-RRB-" => ")",
            t => t,
        });
        glue_next = NO_SPACE_AFTER.contains(&tok);
    }
    out
}
