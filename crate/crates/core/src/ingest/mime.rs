use mailparse::{MailHeaderMap, ParsedMail};

use super::{EmailDocument, IngestError, MimePart};

/// Parses a raw RFC 5322 message and flattens its MIME tree into leaf parts.
///
/// Charset problems never fail the parse: undecodable bytes are replaced.
pub fn parse_mime(raw: &[u8]) -> Result<EmailDocument, IngestError> {
    if raw.iter().all(u8::is_ascii_whitespace) {
        return Err(IngestError::MalformedMime("empty input".into()));
    }
    let parsed =
        mailparse::parse_mail(raw).map_err(|e| IngestError::MalformedMime(e.to_string()))?;

    let headers: Vec<(String, String)> = parsed
        .headers
        .iter()
        .map(|h| (h.get_key(), h.get_value()))
        .collect();
    let message_id = parsed
        .headers
        .get_first_value("Message-ID")
        .map(|v| v.trim().trim_start_matches('<').trim_end_matches('>').to_string())
        .unwrap_or_default();

    let mut parts = Vec::new();
    collect_leaves(&parsed, &mut parts);
    if parts.is_empty() {
        // Multipart container with no usable children: keep whatever body
        // bytes exist as a single text part.
        let mut body = parsed.get_body_raw().unwrap_or_default();
        if body.iter().all(u8::is_ascii_whitespace) {
            body = raw_body(raw).to_vec();
        }
        parts.push(MimePart {
            mime_type: "text/plain".into(),
            charset: parsed.ctype.charset.clone(),
            content: String::from_utf8_lossy(&body).into_owned(),
        });
    }

    Ok(EmailDocument { message_id, headers, parts })
}

/// Bytes after the first blank line, i.e. the unparsed body.
fn raw_body(raw: &[u8]) -> &[u8] {
    let crlf = raw.windows(4).position(|w| w == b"\r\n\r\n").map(|i| i + 4);
    let lf = raw.windows(2).position(|w| w == b"\n\n").map(|i| i + 2);
    match (crlf, lf) {
        (Some(a), Some(b)) => &raw[a.min(b)..],
        (Some(a), None) | (None, Some(a)) => &raw[a..],
        (None, None) => &[],
    }
}

fn collect_leaves(mail: &ParsedMail<'_>, out: &mut Vec<MimePart>) {
    if mail.ctype.mimetype.starts_with("multipart/") {
        for sub in &mail.subparts {
            collect_leaves(sub, out);
        }
        return;
    }
    let content = match mail.get_body() {
        Ok(text) => text,
        Err(_) => String::from_utf8_lossy(&mail.get_body_raw().unwrap_or_default()).into_owned(),
    };
    out.push(MimePart {
        mime_type: mail.ctype.mimetype.to_ascii_lowercase(),
        charset: mail.ctype.charset.clone(),
        content,
    });
}

/// Picks the part to analyze: the first `text/html` part, else the first
/// `text/plain` part, else the first part. Returns its index with it.
pub fn select_body(doc: &EmailDocument) -> Result<(usize, &MimePart), IngestError> {
    let parts = &doc.parts;
    parts
        .iter()
        .position(MimePart::is_html)
        .or_else(|| parts.iter().position(MimePart::is_plain))
        .or(if parts.is_empty() { None } else { Some(0) })
        .map(|i| (i, &parts[i]))
        .ok_or(IngestError::NoBody)
}
