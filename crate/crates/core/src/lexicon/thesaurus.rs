use std::path::Path;

use super::{
    content_lines, normalize_lemma, read_file, AskLabel, LexiconError, LexiconManifest, LexiconSource,
    VerbLexicon,
};

/// Loads `perform.txt`, `give.txt`, `lose.txt` and `gain.txt` from `dir`.
/// When `dir/manifest.toml` exists, file checksums and label counts are
/// checked against it.
pub fn load_thesaurus(dir: &Path) -> Result<VerbLexicon, LexiconError> {
    let manifest = LexiconManifest::load_optional(dir)?;
    let mut lists = Vec::new();
    for label in AskLabel::ALL {
        let name = format!("{}.txt", label.file_stem());
        let text = read_file(&dir.join(&name))?;
        if let Some(m) = &manifest {
            m.verify_checksum(&name, text.as_bytes())?;
        }
        lists.push((label, name, text));
    }
    let lex = thesaurus_from_lists(lists.iter().map(|(l, n, t)| (*l, n.as_str(), t.as_str())))?;
    if let Some(m) = &manifest {
        m.verify_counts(&lex)?;
    }
    Ok(lex)
}

/// Builds a thesaurus lexicon from `(label, file name, contents)` triples.
pub fn thesaurus_from_lists<'a>(
    lists: impl IntoIterator<Item = (AskLabel, &'a str, &'a str)>,
) -> Result<VerbLexicon, LexiconError> {
    let mut lex = VerbLexicon::empty(LexiconSource::Thesaurus);
    for (label, file, text) in lists {
        for (line, raw) in content_lines(text) {
            let lemma = normalize_lemma(raw)
                .map_err(|message| LexiconError::Parse { file: file.to_string(), line, message })?;
            lex.insert(&lemma, label);
        }
    }
    Ok(lex)
}
