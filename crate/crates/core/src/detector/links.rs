use crate::annotation::AnnotatedDocument;
use crate::ingest::{LinkEntry, LinkTable};
use crate::lexicon::{AskLabel, VerbLexicon};

use super::{classify_action, AskFrame, DetectorConfig, LinkMode};

/// Where a link placeholder sits in the annotations: `(sentence, token)`.
fn locate(doc: &AnnotatedDocument, link: &LinkEntry) -> Option<(usize, usize)> {
    let marker = link.placeholder();
    doc.sentences.iter().enumerate().find_map(|(si, s)| {
        s.tokens.iter().position(|t| t.text.contains(&marker)).map(|ti| (si, ti))
    })
}

/// Asks that can take a link: the lemma must carry PERFORM, since a linked
/// ask always resolves to PERFORM.
fn link_eligible(ask: &AskFrame, lex: &VerbLexicon) -> bool {
    ask.kind.is_ask() && lex.has(&ask.clause.lemma, AskLabel::Perform)
}

/// Attaches links to asks and reclassifies the asks that receive one.
///
/// Basic mode attaches a link to a link-eligible ask in the sentence that
/// holds its placeholder (the segment, when the placeholder is not found in
/// any sentence), preferring the nearest ask before the link. Advanced mode
/// then gives each still-unattached link to the nearest preceding link-less
/// eligible ask at most `advanced_window` segments back.
pub fn associate_links(
    asks: &mut [AskFrame],
    doc: &AnnotatedDocument,
    links: &LinkTable,
    lex: &VerbLexicon,
    cfg: &DetectorConfig,
) {
    if cfg.link_mode == LinkMode::None {
        return;
    }
    let mut unattached = Vec::new();
    for link in links.iter() {
        let at = locate(doc, link);
        let pos = |a: &AskFrame| (a.clause.sentence_index, a.clause.action_index);
        let same_place: Vec<usize> = (0..asks.len())
            .filter(|&i| link_eligible(&asks[i], lex))
            .filter(|&i| match at {
                Some((s, _)) => asks[i].clause.sentence_index == s,
                None => asks[i].clause.segment_index == link.segment_index,
            })
            .collect();
        let chosen = match at {
            Some(p) => same_place
                .iter()
                .copied()
                .filter(|&i| pos(&asks[i]) <= p)
                .max_by_key(|&i| pos(&asks[i]))
                .or_else(|| same_place.iter().copied().min_by_key(|&i| pos(&asks[i]))),
            None => same_place.last().copied(),
        };
        match chosen {
            Some(i) => attach(&mut asks[i], link, "basic", lex, cfg),
            None => unattached.push((link, at)),
        }
    }

    if cfg.link_mode != LinkMode::Advanced {
        return;
    }
    for (link, at) in unattached {
        let lo = link.segment_index.saturating_sub(cfg.advanced_window);
        let chosen = (0..asks.len())
            .filter(|&i| link_eligible(&asks[i], lex) && asks[i].links.is_empty())
            .filter(|&i| (lo..=link.segment_index).contains(&asks[i].clause.segment_index))
            .filter(|&i| match at {
                Some(p) => (asks[i].clause.sentence_index, asks[i].clause.action_index) < p,
                None => true,
            })
            .max_by_key(|&i| (asks[i].clause.sentence_index, asks[i].clause.action_index));
        if let Some(i) = chosen {
            attach(&mut asks[i], link, "advanced", lex, cfg);
        }
    }
}

fn attach(ask: &mut AskFrame, link: &LinkEntry, rule: &str, lex: &VerbLexicon, cfg: &DetectorConfig) {
    ask.links.push(link.clone());
    ask.evidence.push(format!("link {} -> {} attached ({rule})", link.placeholder_id, link.target));
    let kind = classify_action(&ask.clause, true, lex, cfg).unwrap_or(ask.kind);
    if kind != ask.kind {
        ask.evidence.push(format!("reclassified with link: {} -> {kind}", ask.kind));
        ask.kind = kind;
    } else {
        ask.evidence.push(format!("reclassified with link: {kind} unchanged"));
    }
}
