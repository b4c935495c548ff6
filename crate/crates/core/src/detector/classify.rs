use std::collections::BTreeSet;

use crate::annotation::{CandidateSource, ClauseCandidate, SentenceAnnotation, Span};
use crate::ingest::placeholder_ids;
use crate::lexicon::{catvar_verbalize, AskLabel, CatVarDatabase, VerbLexicon};

use super::DetectorConfig;

/// Whether the clause may be an ask. Past-tense and progressive actions are
/// ruled out when verbal processing is on; CATVAR-derived candidates have
/// no verbal inflection and always pass.
pub fn verbal_filter(clause: &ClauseCandidate, cfg: &DetectorConfig) -> bool {
    !cfg.verbal_processing || clause.is_catvar() || !matches!(clause.pos.as_str(), "VBD" | "VBG")
}

/// Priority scheme over a lemma's labels: PERFORM, then GIVE for
/// ask-eligible clauses, then LOSE, then GAIN. A lemma that is both PERFORM
/// and GIVE is a PERFORM only next to a link.
pub fn classify_labels(labels: &BTreeSet<AskLabel>, ask_eligible: bool, has_link: bool) -> Option<AskLabel> {
    if ask_eligible {
        let perform = labels.contains(&AskLabel::Perform);
        let give = labels.contains(&AskLabel::Give);
        match (perform, give) {
            (true, true) if has_link => return Some(AskLabel::Perform),
            (true, true) => return Some(AskLabel::Give),
            (true, false) => return Some(AskLabel::Perform),
            (false, true) => return Some(AskLabel::Give),
            (false, false) => {}
        }
    }
    [AskLabel::Lose, AskLabel::Gain].into_iter().find(|l| labels.contains(l))
}

pub fn classify_action(
    clause: &ClauseCandidate,
    has_link: bool,
    lex: &VerbLexicon,
    cfg: &DetectorConfig,
) -> Option<AskLabel> {
    classify_labels(&lex.lookup(&clause.lemma), verbal_filter(clause, cfg), has_link)
}

/// Nominal and adjectival tokens mapped to a verb through CATVAR.
///
/// Tokens inside `covered` (clause spans of verbal candidates that already
/// received a label) are skipped, as are link placeholders.
pub fn catvar_candidates(
    sentence: &SentenceAnnotation,
    sentence_index: usize,
    db: &CatVarDatabase,
    covered: &[Span],
) -> Vec<ClauseCandidate> {
    sentence
        .tokens
        .iter()
        .filter(|t| t.pos.starts_with("NN") || t.pos.starts_with("JJ"))
        .filter(|t| !covered.iter().any(|s| s.contains(t.index)))
        .filter(|t| placeholder_ids(&t.text).is_empty())
        .filter_map(|t| {
            let word = t.normalized_lemma();
            let verb = catvar_verbalize(db, &word, &t.pos)?;
            let clause_span = if sentence.dependencies.is_empty() {
                Span::single(t.index)
            } else {
                sentence.subtree_span(t.index)
            };
            Some(ClauseCandidate {
                sentence_index,
                segment_index: sentence.segment_index,
                action_index: t.index,
                lemma: verb,
                pos: "VB".into(),
                clause_span,
                source: CandidateSource::Catvar { word, pos: t.pos.clone() },
            })
        })
        .collect()
}
