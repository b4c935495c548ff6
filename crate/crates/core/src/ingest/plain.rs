use once_cell::sync::Lazy;
use regex::Regex;

use super::{placeholder_token, LinkEntry, LinkIdCounter, LinkTable, MimePart, NormalizedDocument};

static BARE_LINK: Lazy<Regex> = Lazy::new(|| {
    Regex::new(
        r#"(?i)\b(?:https?://|www\.)[^\s<>"'\]\)]+|\b[A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,}\b"#,
    )
    .expect("link pattern")
});

/// Plain-text bodies: one segment per non-blank line, bare URLs and email
/// addresses tagged with placeholders.
pub fn normalize_plain(part: &MimePart, next_id: &mut LinkIdCounter) -> NormalizedDocument {
    let mut segments = Vec::new();
    let mut links = Vec::new();

    for line in part.content.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let index = segments.len();
        let mut out = String::with_capacity(line.len());
        let mut last = 0;
        for m in BARE_LINK.find_iter(line) {
            let matched = m.as_str().trim_end_matches(['.', ',', ';', ':', '!', '?']);
            let end = m.start() + matched.len();
            out.push_str(&line[last..end]);
            let id = next_id.next_id();
            out.push(' ');
            out.push_str(&placeholder_token(&id));
            links.push(LinkEntry {
                placeholder_id: id,
                target: matched.to_string(),
                anchor_text: matched.to_string(),
                segment_index: index,
            });
            last = end;
        }
        out.push_str(&line[last..]);
        segments.push(out);
    }

    NormalizedDocument {
        segments,
        links: LinkTable { entries: links },
        provenance: part.mime_type.clone(),
    }
}
