use serde::{Deserialize, Serialize};

use super::{AnnotatedDocument, Constituent, SentenceAnnotation, Span};

/// Relations that introduce a clause of their own under a verbal head.
const CLAUSAL: &[&str] = &["ccomp", "xcomp", "advcl", "csubj", "csubjpass", "parataxis"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidateSource {
    Dependency,
    /// VP head found by the constituency backoff.
    Constituency,
    /// Nominal or adjectival token mapped to a verb through a
    /// categorial-variation cluster. `word` and `pos` describe the original
    /// token.
    Catvar { word: String, pos: String },
}

/// A clause and the token treated as its action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseCandidate {
    pub sentence_index: usize,
    pub segment_index: usize,
    pub action_index: usize,
    /// Lowercased lemma used for lexicon lookup.
    pub lemma: String,
    /// POS the filters see. CATVAR candidates carry `VB`.
    pub pos: String,
    pub clause_span: Span,
    pub source: CandidateSource,
}

impl ClauseCandidate {
    pub fn is_catvar(&self) -> bool {
        matches!(self.source, CandidateSource::Catvar { .. })
    }
}

pub fn extract_clauses(doc: &AnnotatedDocument) -> Vec<ClauseCandidate> {
    doc.sentences
        .iter()
        .enumerate()
        .flat_map(|(i, s)| sentence_clauses(s, i))
        .collect()
}

/// Verbal clause heads of one sentence, ordered by token index.
///
/// The dependency tree is walked from ROOT; a verb is a candidate when it
/// is the root or hangs off its head through a clausal relation (or `conj`
/// between verbs). Sentences whose parse yields nothing fall back to the
/// heads of VP constituents.
pub fn sentence_clauses(sentence: &SentenceAnnotation, sentence_index: usize) -> Vec<ClauseCandidate> {
    let mut heads = dependency_heads(sentence);
    let mut source = CandidateSource::Dependency;
    if heads.is_empty() {
        heads = constituency_heads(sentence);
        source = CandidateSource::Constituency;
    }
    heads.sort_by_key(|(i, _)| *i);
    heads.dedup_by_key(|(i, _)| *i);
    heads
        .into_iter()
        .map(|(i, clause_span)| {
            let tok = &sentence.tokens[i];
            ClauseCandidate {
                sentence_index,
                segment_index: sentence.segment_index,
                action_index: i,
                lemma: tok.normalized_lemma(),
                pos: tok.pos.clone(),
                clause_span,
                source: source.clone(),
            }
        })
        .collect()
}

fn dependency_heads(sentence: &SentenceAnnotation) -> Vec<(usize, Span)> {
    let children = sentence.children();
    let is_verb = |i: usize| sentence.token(i).is_some_and(|t| t.is_verb());
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for root in children.get(&None).into_iter().flatten() {
        if is_verb(root.dependent) {
            out.push(root.dependent);
        }
        stack.push(root.dependent);
    }
    while let Some(t) = stack.pop() {
        for edge in children.get(&Some(t)).into_iter().flatten() {
            let d = edge.dependent;
            let rel = edge.base_relation();
            let clausal = CLAUSAL.contains(&rel.as_str()) || (rel == "conj" && is_verb(t));
            if clausal && is_verb(d) {
                out.push(d);
            }
            stack.push(d);
        }
    }
    out.into_iter().map(|i| (i, sentence.subtree_span(i))).collect()
}

fn constituency_heads(sentence: &SentenceAnnotation) -> Vec<(usize, Span)> {
    let mut out = Vec::new();
    if let Some(tree) = &sentence.constituency {
        collect_vp_heads(tree, sentence, &mut out);
    }
    out
}

fn collect_vp_heads(node: &Constituent, sentence: &SentenceAnnotation, out: &mut Vec<(usize, Span)>) {
    let Constituent::Node { label, children } = node else { return };
    if label == "VP" {
        let head = children.iter().find_map(|c| match c {
            Constituent::Leaf(i) if sentence.token(*i).is_some_and(|t| t.is_verb()) => Some(*i),
            _ => None,
        });
        if let Some(h) = head {
            let leaves = node.leaves();
            let span = Span::new(
                leaves.iter().copied().min().unwrap_or(h),
                leaves.iter().copied().max().unwrap_or(h),
            );
            out.push((h, span));
        }
    }
    for c in children {
        collect_vp_heads(c, sentence, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotation::load_annotations;
    use crate::annotation::testdata::*;

    fn clauses(line: &str) -> Vec<ClauseCandidate> {
        let doc = load_annotations(line.as_bytes()).unwrap();
        extract_clauses(&doc)
    }

    fn summary(c: &[ClauseCandidate]) -> Vec<(&str, &str)> {
        c.iter().map(|c| (c.lemma.as_str(), c.pos.as_str())).collect()
    }

    #[test]
    fn root_verb_and_adverbial_clause() {
        let c = clauses(HELP_SENTENCE);
        assert_eq!(summary(&c), [("help", "VB"), ("send", "VBG")]);
        assert_eq!(c[1].clause_span, Span::new(4, 7));
        assert_eq!(c[0].clause_span, Span::new(0, 8));
        assert!(c.iter().all(|c| c.source == CandidateSource::Dependency));
    }

    #[test]
    fn past_and_progressive_heads_are_still_candidates() {
        let c = clauses(SENT_SIGNING);
        assert_eq!(summary(&c), [("send", "VBD"), ("sign", "VBG")]);
    }

    #[test]
    fn no_verb_no_candidates() {
        assert!(clauses(HELLO).is_empty());
    }

    #[test]
    fn constituency_backoff_without_parse() {
        let c = clauses(CLICK_NO_DEPS);
        assert_eq!(summary(&c), [("click", "VB")]);
        assert_eq!(c[0].source, CandidateSource::Constituency);
        assert_eq!(c[0].clause_span, Span::new(0, 2));
        assert_eq!(c[0].segment_index, 1);
    }

    #[test]
    fn outer_vp_without_verb_leaf_defers_to_inner_vp() {
        let line = r#"{"segment":0,"tokens":[{"i":0,"text":"Go","lemma":"go","pos":"VB"},{"i":1,"text":"now","lemma":"now","pos":"RB"}],"constituency":["S",["VP",["VP",0],1]]}"#;
        let c = clauses(line);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].action_index, 0);
    }

    #[test]
    fn conjoined_verbs() {
        let line = r#"{"segment":0,"tokens":[{"i":0,"text":"Click","lemma":"click","pos":"VB"},{"i":1,"text":"and","lemma":"and","pos":"CC"},{"i":2,"text":"verify","lemma":"verify","pos":"VB"}],"deps":[{"head":-1,"dep":0,"rel":"root"},{"head":2,"dep":1,"rel":"cc"},{"head":0,"dep":2,"rel":"conj"}]}"#;
        assert_eq!(summary(&clauses(line)), [("click", "VB"), ("verify", "VB")]);
    }

    #[test]
    fn verbs_outside_clausal_relations_are_skipped() {
        // "the attached file": attached is an amod, not a clause head.
        let line = r#"{"segment":0,"tokens":[{"i":0,"text":"Open","lemma":"open","pos":"VB"},{"i":1,"text":"the","lemma":"the","pos":"DT"},{"i":2,"text":"attached","lemma":"attach","pos":"VBN"},{"i":3,"text":"file","lemma":"file","pos":"NN"}],"deps":[{"head":-1,"dep":0,"rel":"root"},{"head":3,"dep":1,"rel":"det"},{"head":3,"dep":2,"rel":"amod"},{"head":0,"dep":3,"rel":"obj"}]}"#;
        assert_eq!(summary(&clauses(line)), [("open", "VB")]);
    }
}
