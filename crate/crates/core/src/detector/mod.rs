//! Ask and framing detection over annotated emails.
//!
//! [`detect`] runs the whole pipeline for one email: clause extraction,
//! optional CATVAR candidates, the verbal filter, lexicon classification
//! under the priority scheme, argument categories, link association,
//! confidence scoring and top-ask selection.

mod categories;
mod classify;
mod config;
mod links;
mod wire;

use serde::{Deserialize, Serialize};

use crate::annotation::{
    extract_arguments, sentence_clauses, AnnotatedDocument, Argument, CandidateSource, ClauseCandidate,
};
use crate::ingest::{LinkEntry, LinkTable};
use crate::lexicon::{AskLabel, CatVarDatabase, VerbLexicon};

pub use categories::{assign_category, CategoryError, CategoryNode, CategoryRuleSet, TAXONOMY_SIZE};
pub use classify::{catvar_candidates, classify_action, classify_labels, verbal_filter};
pub use config::{ConfidenceTable, ConfigError, DetectorConfig, LinkMode, CASE_COUNT};
pub use links::associate_links;
pub use wire::{AnalysisJson, ArgumentJson, FrameJson};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameArgument {
    pub role: String,
    pub text: String,
    pub category: Option<String>,
}

/// A detected ask or framing.
#[derive(Debug, Clone, PartialEq)]
pub struct AskFrame {
    pub kind: AskLabel,
    pub clause: ClauseCandidate,
    /// Surface form of the action token.
    pub surface: String,
    pub arguments: Vec<FrameArgument>,
    pub links: Vec<LinkEntry>,
    /// Set for asks, absent for framings.
    pub confidence: Option<f64>,
    pub evidence: Vec<String>,
}

impl AskFrame {
    pub fn action_lemma(&self) -> &str {
        &self.clause.lemma
    }

    /// `(sentence, token)` of the action.
    pub fn position(&self) -> (usize, usize) {
        (self.clause.sentence_index, self.clause.action_index)
    }

    pub fn categories(&self) -> impl Iterator<Item = &str> {
        self.arguments.iter().filter_map(|a| a.category.as_deref())
    }

    fn is_past_tense(&self) -> bool {
        self.clause.pos == "VBD" && !self.clause.is_catvar()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmailAnalysis {
    pub email_id: String,
    /// PERFORM and GIVE frames in text order.
    pub asks: Vec<AskFrame>,
    /// LOSE and GAIN frames in text order.
    pub framings: Vec<AskFrame>,
    /// Indices into `asks` of the highest-confidence asks.
    pub top_asks: Vec<usize>,
}

impl EmailAnalysis {
    pub fn top_ask_frames(&self) -> impl Iterator<Item = &AskFrame> {
        self.top_asks.iter().map(|&i| &self.asks[i])
    }

    pub fn top_confidence(&self) -> Option<f64> {
        self.top_ask_frames().next().and_then(|a| a.confidence)
    }

    pub fn to_json(&self) -> AnalysisJson {
        AnalysisJson::from(self)
    }
}

/// Confidence of an ask; the first matching rule wins.
pub fn score_confidence(ask: &AskFrame, table: &ConfidenceTable) -> (f64, &'static str) {
    let categorized = ask.categories().next().is_some();
    if ask.is_past_tense() {
        (table.past_tense_ask, "past-tense action")
    } else if !ask.links.is_empty() {
        (table.ask_with_link, "ask with link")
    } else if categorized && ask.kind == AskLabel::Perform {
        (table.perform_with_category, "PERFORM with categorized argument")
    } else if categorized {
        (table.give_with_category, "GIVE with categorized argument")
    } else if ask.kind == AskLabel::Give {
        (table.give_plain, "GIVE without category")
    } else {
        (table.perform_plain, "PERFORM without category")
    }
}

/// Indices of all asks tied at the maximum confidence.
pub fn select_top_asks(asks: &[AskFrame]) -> Vec<usize> {
    let best = asks.iter().filter_map(|a| a.confidence).fold(None, |m: Option<f64>, c| {
        Some(m.map_or(c, |m| m.max(c)))
    });
    match best {
        Some(best) => (0..asks.len()).filter(|&i| asks[i].confidence == Some(best)).collect(),
        None => Vec::new(),
    }
}

pub fn detect(
    email_id: &str,
    doc: &AnnotatedDocument,
    links: &LinkTable,
    lex: &VerbLexicon,
    db: &CatVarDatabase,
    cfg: &DetectorConfig,
) -> EmailAnalysis {
    let mut frames = Vec::new();
    for (si, sentence) in doc.sentences.iter().enumerate() {
        let verbal = sentence_clauses(sentence, si);
        let mut covered = Vec::new();
        let mut sentence_frames = Vec::new();
        for clause in verbal {
            if let Some(frame) = build_frame(clause, doc, lex, cfg) {
                covered.push(frame.clause.clause_span);
                sentence_frames.push(frame);
            }
        }
        if cfg.catvar {
            for clause in catvar_candidates(sentence, si, db, &covered) {
                sentence_frames.extend(build_frame(clause, doc, lex, cfg));
            }
        }
        sentence_frames.sort_by_key(AskFrame::position);
        frames.extend(sentence_frames);
    }

    let (mut asks, framings): (Vec<_>, Vec<_>) = frames.into_iter().partition(|f| f.kind.is_ask());
    associate_links(&mut asks, doc, links, lex, cfg);
    for ask in &mut asks {
        let (score, rule) = score_confidence(ask, &cfg.confidence);
        ask.confidence = Some(score);
        ask.evidence.push(format!("confidence {score}: {rule}"));
    }
    let top_asks = select_top_asks(&asks);
    EmailAnalysis { email_id: email_id.to_string(), asks, framings, top_asks }
}

fn build_frame(
    clause: ClauseCandidate,
    doc: &AnnotatedDocument,
    lex: &VerbLexicon,
    cfg: &DetectorConfig,
) -> Option<AskFrame> {
    let labels = lex.lookup(&clause.lemma);
    if labels.is_empty() {
        return None;
    }
    let eligible = verbal_filter(&clause, cfg);
    let kind = classify_action(&clause, false, lex, cfg)?;
    let sentence = &doc.sentences[clause.sentence_index];
    let surface = sentence.tokens[clause.action_index].text.clone();

    let mut evidence = vec![match &clause.source {
        CandidateSource::Dependency => format!("candidate: clause head {surface}/{}", clause.pos),
        CandidateSource::Constituency => format!("candidate: VP head {surface}/{} (constituency backoff)", clause.pos),
        CandidateSource::Catvar { word, pos } => format!("catvar: {word}/{pos} -> {}", clause.lemma),
    }];
    let label_list: Vec<&str> = labels.iter().map(|l| l.as_str()).collect();
    evidence.push(format!("lexicon {}: {} -> {}", lex.source, clause.lemma, label_list.join(", ")));
    if !eligible {
        evidence.push(format!("verbal filter: {} action is not ask-eligible", clause.pos));
    }
    evidence.push(format!("classified {kind}"));

    let args: Vec<Argument> = extract_arguments(sentence, clause.action_index);
    let cats = assign_category(&args, &cfg.categories);
    let arguments = args
        .into_iter()
        .zip(cats)
        .map(|(a, category)| {
            if let Some(c) = &category {
                evidence.push(format!("category {c}: {} \"{}\"", a.role, a.text));
            }
            FrameArgument { role: a.role, text: a.text, category }
        })
        .collect();

    Some(AskFrame { kind, clause, surface, arguments, links: Vec::new(), confidence: None, evidence })
}
