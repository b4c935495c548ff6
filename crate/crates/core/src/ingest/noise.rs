use once_cell::sync::Lazy;
use regex::Regex;

use super::{LinkTable, NormalizedDocument};

/// Only the last few segments are searched for a signature.
const SIGNATURE_WINDOW: usize = 6;
/// A closing phrase must start within this many lines of the end.
const CLOSING_MAX_LINES: usize = 4;

static QUOTE_HEADER: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?i)^on\b.{1,200}\bwrote:\s*$").unwrap());
static ORIGINAL_MESSAGE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)^-{2,}\s*(original message|forwarded message)\s*-{2,}$").unwrap()
});
static CLOSING_PHRASE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(
        r"(?i)^(sent from my\b.*|(best|kind|warm|warmest)\s+regards\b.{0,40}|regards[,!.]?.{0,40}|sincerely\b.{0,40}|(many\s+)?thanks[,!.]?|thank you[,!.]?|cheers[,!.]?|best[,!.]?|yours truly\b.{0,40})$",
    )
    .unwrap()
});

/// Removes quoted replies and a trailing signature block. Applied to a fixed
/// point, so the result is idempotent.
pub fn strip_noise(doc: NormalizedDocument) -> NormalizedDocument {
    let mut doc = doc;
    loop {
        let keep = noise_mask(&doc.segments);
        if keep.iter().all(|k| *k) {
            return doc;
        }
        doc = retain_segments(doc, &keep);
    }
}

fn noise_mask(segments: &[String]) -> Vec<bool> {
    let mut keep: Vec<bool> = segments
        .iter()
        .map(|s| {
            let s = s.trim();
            !(s.starts_with('>') || QUOTE_HEADER.is_match(s))
        })
        .collect();

    if let Some(i) = segments.iter().position(|s| ORIGINAL_MESSAGE.is_match(s.trim())) {
        keep[i..].iter_mut().for_each(|k| *k = false);
    }

    let n = segments.len();
    let window = n.saturating_sub(SIGNATURE_WINDOW);
    let cut = (window..n)
        .find(|&i| segments[i].trim() == "--")
        .or_else(|| {
            (n.saturating_sub(CLOSING_MAX_LINES).max(window)..n)
                .find(|&i| CLOSING_PHRASE.is_match(segments[i].trim()))
        });
    if let Some(i) = cut {
        keep[i..].iter_mut().for_each(|k| *k = false);
    }
    keep
}

fn retain_segments(doc: NormalizedDocument, keep: &[bool]) -> NormalizedDocument {
    let mut new_index = vec![None; keep.len()];
    let mut segments = Vec::new();
    for (i, segment) in doc.segments.into_iter().enumerate() {
        if keep[i] {
            new_index[i] = Some(segments.len());
            segments.push(segment);
        }
    }
    let entries = doc
        .links
        .entries
        .into_iter()
        .filter_map(|mut link| {
            let idx = new_index.get(link.segment_index).copied().flatten()?;
            link.segment_index = idx;
            Some(link)
        })
        .collect();
    NormalizedDocument { segments, links: LinkTable { entries }, provenance: doc.provenance }
}
