//! Email ingestion: MIME parsing, body selection, HTML-to-text
//! normalization with link placeholders, and signature/quote removal.

mod html;
mod mime;
mod noise;
mod plain;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use html::normalize_html;
pub use mime::{parse_mime, select_body};
pub use noise::strip_noise;
pub use plain::normalize_plain;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed MIME message: {0}")]
    MalformedMime(String),
    #[error("message has no body parts")]
    NoBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MimePart {
    pub mime_type: String,
    pub charset: String,
    pub content: String,
}

impl MimePart {
    pub fn is_html(&self) -> bool {
        self.mime_type.eq_ignore_ascii_case("text/html")
    }

    pub fn is_plain(&self) -> bool {
        self.mime_type.eq_ignore_ascii_case("text/plain")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmailDocument {
    pub message_id: String,
    /// Headers in their original order.
    pub headers: Vec<(String, String)>,
    /// Leaf parts of the MIME tree in document order.
    pub parts: Vec<MimePart>,
}

impl EmailDocument {
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(name))
            .map(|(_, v)| v.as_str())
    }
}

/// One hyperlink (or bare URL / address) lifted out of the body text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkEntry {
    #[serde(rename = "id")]
    pub placeholder_id: String,
    /// URI, or a bare email address for `mailto:` links.
    pub target: String,
    #[serde(rename = "anchor")]
    pub anchor_text: String,
    #[serde(rename = "segment")]
    pub segment_index: usize,
}

impl LinkEntry {
    /// The token inserted into the segment text, e.g. `⟦LNK_0⟧`.
    pub fn placeholder(&self) -> String {
        placeholder_token(&self.placeholder_id)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkTable {
    pub entries: Vec<LinkEntry>,
}

impl LinkTable {
    pub fn get(&self, placeholder_id: &str) -> Option<&LinkEntry> {
        self.entries.iter().find(|e| e.placeholder_id == placeholder_id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LinkEntry> {
        self.entries.iter()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedDocument {
    pub segments: Vec<String>,
    pub links: LinkTable,
    /// Which MIME part the text came from, e.g. `text/html#1`.
    pub provenance: String,
}

impl NormalizedDocument {
    /// Checks that every placeholder in the text has exactly one table entry
    /// and every entry points at an existing segment containing it.
    pub fn check_link_consistency(&self) -> Result<(), String> {
        let mut seen = std::collections::BTreeSet::new();
        for entry in &self.links.entries {
            if !seen.insert(entry.placeholder_id.as_str()) {
                return Err(format!("duplicate placeholder id {}", entry.placeholder_id));
            }
            let Some(segment) = self.segments.get(entry.segment_index) else {
                return Err(format!(
                    "{} points at missing segment {}",
                    entry.placeholder_id, entry.segment_index
                ));
            };
            if !segment.contains(&entry.placeholder()) {
                return Err(format!(
                    "{} not present in segment {}",
                    entry.placeholder_id, entry.segment_index
                ));
            }
        }
        for (i, segment) in self.segments.iter().enumerate() {
            for id in placeholder_ids(segment) {
                let owners = self
                    .links
                    .entries
                    .iter()
                    .filter(|e| e.placeholder_id == id && e.segment_index == i)
                    .count();
                if owners != 1 {
                    return Err(format!("placeholder {id} in segment {i} has {owners} entries"));
                }
            }
        }
        Ok(())
    }
}

pub const PLACEHOLDER_OPEN: char = '⟦';
pub const PLACEHOLDER_CLOSE: char = '⟧';

pub fn placeholder_token(id: &str) -> String {
    format!("{PLACEHOLDER_OPEN}{id}{PLACEHOLDER_CLOSE}")
}

/// Ids of all `⟦...⟧` placeholders occurring in `text`, in order.
pub fn placeholder_ids(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find(PLACEHOLDER_OPEN) {
        let after = &rest[start + PLACEHOLDER_OPEN.len_utf8()..];
        match after.find(PLACEHOLDER_CLOSE) {
            Some(end) => {
                out.push(&after[..end]);
                rest = &after[end + PLACEHOLDER_CLOSE.len_utf8()..];
            }
            None => break,
        }
    }
    out
}

/// Issues placeholder ids `LNK_0`, `LNK_1`, ... across one document.
#[derive(Debug, Default, Clone)]
pub struct LinkIdCounter(usize);

impl LinkIdCounter {
    pub fn new() -> Self {
        Self(0)
    }

    pub fn next_id(&mut self) -> String {
        let id = format!("LNK_{}", self.0);
        self.0 += 1;
        id
    }
}

/// Full ingestion path: parse, pick the body part, normalize and strip
/// signatures and quoted replies.
pub fn normalize_email(raw: &[u8]) -> Result<NormalizedDocument, IngestError> {
    let doc = parse_mime(raw)?;
    let (index, part) = select_body(&doc)?;
    let mut ids = LinkIdCounter::new();
    let mut normalized = if part.is_html() {
        normalize_html(part, &mut ids)
    } else {
        normalize_plain(part, &mut ids)
    };
    normalized.provenance = format!("{}#{}", part.mime_type, index);
    Ok(strip_noise(normalized))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placeholder_ids_are_found_in_order() {
        assert_eq!(placeholder_ids("a ⟦LNK_0⟧ b ⟦LNK_7⟧."), vec!["LNK_0", "LNK_7"]);
        assert!(placeholder_ids("no links [here]").is_empty());
    }

    #[test]
    fn normalized_json_uses_wire_names() {
        let doc = NormalizedDocument {
            segments: vec!["Click here ⟦LNK_0⟧".into()],
            links: LinkTable {
                entries: vec![LinkEntry {
                    placeholder_id: "LNK_0".into(),
                    target: "http://x.test".into(),
                    anchor_text: "here".into(),
                    segment_index: 0,
                }],
            },
            provenance: "text/html#0".into(),
        };
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "segments": ["Click here ⟦LNK_0⟧"],
                "links": [{"id": "LNK_0", "target": "http://x.test", "anchor": "here", "segment": 0}],
                "provenance": "text/html#0"
            })
        );
        let back: NormalizedDocument = serde_json::from_value(json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn end_to_end_prefers_html_and_strips_quotes() {
        let raw = concat!(
            "Message-ID: <a@b>\r\n",
            "MIME-Version: 1.0\r\n",
            "Content-Type: multipart/alternative; boundary=\"XX\"\r\n",
            "\r\n",
            "--XX\r\n",
            "Content-Type: text/plain; charset=utf-8\r\n",
            "\r\n",
            "Click here: http://plain.test\r\n",
            "--XX\r\n",
            "Content-Type: text/html; charset=utf-8\r\n",
            "\r\n",
            "<p>Click <a href=\"http://html.test\">here</a></p>",
            "<blockquote>old <a href=\"http://old.test\">thread</a></blockquote>\r\n",
            "--XX--\r\n",
        );
        let doc = normalize_email(raw.as_bytes()).unwrap();
        assert_eq!(doc.segments, vec!["Click here ⟦LNK_0⟧"]);
        assert_eq!(doc.links.len(), 1);
        assert_eq!(doc.links.entries[0].target, "http://html.test");
        assert_eq!(doc.provenance, "text/html#1");
        doc.check_link_consistency().unwrap();
    }
}
