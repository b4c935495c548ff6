//! Lenient HTML-to-text conversion. Tag soup is tolerated: unclosed tags,
//! stray `<` and unterminated comments all degrade to text or are dropped.

use super::{placeholder_token, LinkEntry, LinkIdCounter, LinkTable, MimePart, NormalizedDocument};

/// Tags that start a new text line.
const LINE_BREAKING: &[&str] = &[
    "div", "p", "br", "ul", "ol", "li", "table", "tr", "h1", "h2", "h3", "h4", "h5", "h6", "hr",
];

/// Elements dropped together with everything inside them.
const REMOVED: &[&str] = &["style", "script", "head", "title", "blockquote", "noscript", "template"];

/// Elements whose content is raw text (no nested markup).
const RAW_TEXT: &[&str] = &["style", "script"];

const VOID: &[&str] = &[
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "source", "wbr",
];

/// class/id markers that client software uses for quoted replies and
/// signatures.
const QUOTE_OR_SIGNATURE_MARKERS: &[&str] = &[
    "gmail_quote",
    "gmail_signature",
    "gmail_extra",
    "moz-cite-prefix",
    "moz-signature",
    "yahoo_quoted",
    "divrplyfwdmsg",
    "olk_src_body_section",
    "signature",
    "reply-quote",
];

pub fn normalize_html(part: &MimePart, next_id: &mut LinkIdCounter) -> NormalizedDocument {
    let mut builder = Builder::new(next_id);
    let html = part.content.as_str();
    let mut pos = 0;

    while pos < html.len() {
        let rest = &html[pos..];
        let Some(lt) = rest.find('<') else {
            builder.text(rest);
            break;
        };
        if lt > 0 {
            builder.text(&rest[..lt]);
        }
        let at = pos + lt;
        match scan_markup(html, at) {
            Markup::Comment(end) => pos = end,
            Markup::Tag(tag, end) => {
                pos = end;
                if let Some(skip_to) = builder.tag(&tag, html, end) {
                    pos = skip_to;
                }
            }
            Markup::Literal => {
                builder.text("<");
                pos = at + 1;
            }
        }
    }

    builder.finish(part)
}

#[derive(Debug)]
struct Tag {
    name: String,
    closing: bool,
    self_closing: bool,
    attrs: Vec<(String, String)>,
}

impl Tag {
    fn attr(&self, name: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    fn marks_quote_or_signature(&self) -> bool {
        ["class", "id"].iter().filter_map(|a| self.attr(a)).any(|value| {
            value.split_whitespace().any(|token| {
                let token = token.to_ascii_lowercase();
                QUOTE_OR_SIGNATURE_MARKERS.iter().any(|m| token.contains(m))
            })
        })
    }
}

enum Markup {
    Comment(usize),
    Tag(Tag, usize),
    Literal,
}

fn scan_markup(html: &str, at: usize) -> Markup {
    let rest = &html[at..];
    if let Some(body) = rest.strip_prefix("<!--") {
        let end = body.find("-->").map(|i| at + 4 + i + 3).unwrap_or(html.len());
        return Markup::Comment(end);
    }
    if rest.starts_with("<!") || rest.starts_with("<?") {
        let end = rest.find('>').map(|i| at + i + 1).unwrap_or(html.len());
        return Markup::Comment(end);
    }
    let after = &rest[1..];
    let (closing, name_start) = match after.strip_prefix('/') {
        Some(s) => (true, s),
        None => (false, after),
    };
    if !name_start.starts_with(|c: char| c.is_ascii_alphabetic()) {
        return Markup::Literal;
    }
    let Some(end) = find_tag_end(rest) else {
        return Markup::Literal;
    };
    let inner = &rest[1..end];
    let inner = inner.strip_prefix('/').unwrap_or(inner);
    let self_closing = inner.trim_end().ends_with('/');
    let inner = inner.trim_end().trim_end_matches('/');
    let name_len = inner
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == ':'))
        .unwrap_or(inner.len());
    let name = inner[..name_len].to_ascii_lowercase();
    let attrs = parse_attrs(&inner[name_len..]);
    Markup::Tag(Tag { name, closing, self_closing, attrs }, at + end + 1)
}

/// Index of the `>` closing the tag that starts at `rest[0]`, honoring quotes.
fn find_tag_end(rest: &str) -> Option<usize> {
    let mut quote: Option<char> = None;
    for (i, c) in rest.char_indices().skip(1) {
        match (quote, c) {
            (Some(q), c) if c == q => quote = None,
            (Some(_), _) => {}
            (None, '"') | (None, '\'') => quote = Some(c),
            (None, '>') => return Some(i),
            _ => {}
        }
    }
    None
}

fn parse_attrs(s: &str) -> Vec<(String, String)> {
    let mut attrs = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() || c == '/' {
            chars.next();
            continue;
        }
        let mut name_end = s.len();
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() || c == '=' || c == '/' {
                name_end = i;
                break;
            }
            chars.next();
        }
        let name = s[start..name_end.min(s.len())].to_ascii_lowercase();
        while matches!(chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            chars.next();
        }
        let mut value = String::new();
        if matches!(chars.peek(), Some(&(_, '='))) {
            chars.next();
            while matches!(chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
                chars.next();
            }
            match chars.peek().copied() {
                Some((_, q)) if q == '"' || q == '\'' => {
                    chars.next();
                    for (_, c) in chars.by_ref() {
                        if c == q {
                            break;
                        }
                        value.push(c);
                    }
                }
                _ => {
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_whitespace() {
                            break;
                        }
                        value.push(c);
                        chars.next();
                    }
                }
            }
        }
        if !name.is_empty() {
            attrs.push((name, html_escape::decode_html_entities(&value).into_owned()));
        }
    }
    attrs
}

struct OpenAnchor {
    href: String,
    text: String,
}

struct Builder<'a> {
    ids: &'a mut LinkIdCounter,
    segments: Vec<String>,
    links: Vec<LinkEntry>,
    current: String,
    /// Links whose placeholder sits in `current`; segment index is known on flush.
    pending: Vec<LinkEntry>,
    anchor: Option<OpenAnchor>,
    /// Name and nesting depth of an element being removed.
    skipping: Option<(String, usize)>,
}

impl<'a> Builder<'a> {
    fn new(ids: &'a mut LinkIdCounter) -> Self {
        Self {
            ids,
            segments: Vec::new(),
            links: Vec::new(),
            current: String::new(),
            pending: Vec::new(),
            anchor: None,
            skipping: None,
        }
    }

    fn text(&mut self, raw: &str) {
        if self.skipping.is_some() {
            return;
        }
        let decoded = html_escape::decode_html_entities(raw);
        self.current.push_str(&decoded);
        if let Some(anchor) = self.anchor.as_mut() {
            anchor.text.push_str(&decoded);
        }
    }

    /// Handles one tag. Returns a new scan position when raw-text content
    /// was skipped wholesale.
    fn tag(&mut self, tag: &Tag, html: &str, after: usize) -> Option<usize> {
        if let Some((name, depth)) = self.skipping.as_mut() {
            if tag.name == *name && !tag.self_closing {
                if tag.closing {
                    *depth -= 1;
                } else {
                    *depth += 1;
                }
                if *depth == 0 {
                    self.skipping = None;
                }
            }
            return None;
        }

        if tag.closing {
            if tag.name == "a" {
                self.close_anchor();
            } else if LINE_BREAKING.contains(&tag.name.as_str()) {
                self.flush();
            }
            return None;
        }

        let removed = REMOVED.contains(&tag.name.as_str()) || tag.marks_quote_or_signature();
        if removed && !tag.self_closing && !VOID.contains(&tag.name.as_str()) {
            if RAW_TEXT.contains(&tag.name.as_str()) {
                return Some(skip_raw_text(html, after, &tag.name));
            }
            self.skipping = Some((tag.name.clone(), 1));
            return None;
        }

        match tag.name.as_str() {
            "a" => {
                if let Some(href) = tag.attr("href").map(str::trim).filter(|h| !h.is_empty()) {
                    self.close_anchor();
                    self.anchor = Some(OpenAnchor { href: link_target(href), text: String::new() });
                }
            }
            "img" => {
                if let Some(alt) = tag.attr("alt").filter(|a| !a.trim().is_empty()) {
                    let alt = format!(" {} ", alt.trim());
                    self.current.push_str(&alt);
                    if let Some(anchor) = self.anchor.as_mut() {
                        anchor.text.push_str(&alt);
                    }
                }
            }
            name if LINE_BREAKING.contains(&name) => self.flush(),
            _ => {}
        }
        None
    }

    fn close_anchor(&mut self) {
        let Some(anchor) = self.anchor.take() else { return };
        let id = self.ids.next_id();
        self.current.push(' ');
        self.current.push_str(&placeholder_token(&id));
        self.pending.push(LinkEntry {
            placeholder_id: id,
            target: anchor.href,
            anchor_text: collapse_whitespace(&anchor.text),
            segment_index: 0,
        });
    }

    fn flush(&mut self) {
        let text = sanitize_angle_brackets(&collapse_whitespace(&self.current));
        self.current.clear();
        if text.is_empty() {
            return;
        }
        let index = self.segments.len();
        for mut link in self.pending.drain(..) {
            link.segment_index = index;
            self.links.push(link);
        }
        self.segments.push(text);
    }

    fn finish(mut self, part: &MimePart) -> NormalizedDocument {
        self.close_anchor();
        self.flush();
        NormalizedDocument {
            segments: self.segments,
            links: LinkTable { entries: self.links },
            provenance: part.mime_type.clone(),
        }
    }
}

fn skip_raw_text(html: &str, from: usize, name: &str) -> usize {
    let needle = format!("</{name}");
    let lower = html[from..].to_ascii_lowercase();
    match lower.find(&needle) {
        Some(i) => {
            let close_start = from + i;
            html[close_start..].find('>').map(|j| close_start + j + 1).unwrap_or(html.len())
        }
        None => html.len(),
    }
}

fn link_target(href: &str) -> String {
    match href.get(..7) {
        Some(scheme) if scheme.eq_ignore_ascii_case("mailto:") => {
            let addr = &href[7..];
            addr.split('?').next().unwrap_or(addr).trim().to_string()
        }
        _ => href.to_string(),
    }
}

pub(super) fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Keeps decoded `&lt;` text from looking like a tag.
fn sanitize_angle_brackets(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '<' && chars.peek().is_some_and(|n| n.is_alphabetic() || *n == '/' || *n == '!') {
            out.push(' ');
        }
    }
    out
}
