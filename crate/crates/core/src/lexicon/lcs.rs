use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use log::warn;

use super::{
    normalize_lemma, read_file, AskLabel, LcsClass, LexiconError, LexiconManifest, LexiconSource, VerbLexicon,
};

const CLASSES: &str = "classes.tsv";
const LABELS: &str = "class_labels.tsv";

/// Loads `classes.tsv` and `class_labels.tsv` from `dir`, verifying them
/// against `dir/manifest.toml` when present.
pub fn load_lcs(dir: &Path) -> Result<VerbLexicon, LexiconError> {
    let manifest = LexiconManifest::load_optional(dir)?;
    let classes = read_file(&dir.join(CLASSES))?;
    let labels = read_file(&dir.join(LABELS))?;
    if let Some(m) = &manifest {
        m.verify_checksum(CLASSES, classes.as_bytes())?;
        m.verify_checksum(LABELS, labels.as_bytes())?;
    }
    let lex = parse_lcs(&classes, &labels)?;
    if let Some(m) = &manifest {
        m.verify_counts(&lex)?;
    }
    Ok(lex)
}

/// Builds an LCS lexicon from the two TSV texts. Classes mapped to `NONE`
/// are dropped; classes with no mapping line are dropped with a warning.
pub fn parse_lcs(classes: &str, labels: &str) -> Result<VerbLexicon, LexiconError> {
    let parse_err = |file: &str, line: usize, message: String| LexiconError::Parse {
        file: file.to_string(),
        line,
        message,
    };

    let mut mapping: BTreeMap<String, Option<AskLabel>> = BTreeMap::new();
    for (line, raw) in tsv_lines(labels) {
        let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
        let [id, label] = cols[..] else {
            return Err(parse_err(LABELS, line, format!("expected 2 columns, found {}", cols.len())));
        };
        let label = if label.eq_ignore_ascii_case("NONE") {
            None
        } else {
            Some(label.parse::<AskLabel>().map_err(|m| parse_err(LABELS, line, m))?)
        };
        if mapping.insert(id.to_string(), label).is_some() {
            return Err(parse_err(LABELS, line, format!("class {id} mapped twice")));
        }
    }

    let mut lex = VerbLexicon::empty(LexiconSource::Lcs);
    let mut seen = BTreeSet::new();
    for (line, raw) in tsv_lines(classes) {
        let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
        let [id, name, members] = cols[..] else {
            return Err(parse_err(CLASSES, line, format!("expected 3 columns, found {}", cols.len())));
        };
        if !seen.insert(id.to_string()) {
            return Err(parse_err(CLASSES, line, format!("duplicate class id {id}")));
        }
        let members = members
            .split_whitespace()
            .map(normalize_lemma)
            .collect::<Result<BTreeSet<_>, _>>()
            .map_err(|m| parse_err(CLASSES, line, m))?;
        let label = match mapping.get(id) {
            Some(Some(label)) => *label,
            Some(None) => continue,
            None => {
                warn!("LCS class {id} ({name}) has no label mapping; skipped");
                continue;
            }
        };
        for m in &members {
            lex.insert(m, label);
        }
        lex.class_index.insert(id.to_string(), LcsClass { name: name.to_string(), members, label });
    }
    Ok(lex)
}

/// Non-blank lines not starting with `#`. Unlike list files, TSV rows keep
/// inner `#` characters (class ids such as `13.1#a`).
fn tsv_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CLASSES_TSV: &str = "\
# id\tname\tmembers
13.1\tGive\tgive lend pass
13.2\tContribute\tdonate contribute administer
13.3\tFuture Having\tvote offer
31.1\tAmuse\tplease annoy
37.7\tSay\tsay mention
99\tOrphan\tfloat
";
    const LABELS_TSV: &str = "13.1\tGIVE\n13.2\tGIVE\n13.3\tGIVE\n31.1\tLOSE\n37.7\tNONE\n";

    #[test]
    fn labeled_classes_populate_entries() {
        let lex = parse_lcs(CLASSES_TSV, LABELS_TSV).unwrap();
        assert_eq!(lex.source, LexiconSource::Lcs);
        assert!(lex.lookup("donate").contains(&AskLabel::Give));
        assert!(lex.lookup("vote").contains(&AskLabel::Give));
        assert!(lex.lookup("say").is_empty());
        assert!(lex.lookup("float").is_empty());
        assert_eq!(lex.class_index.len(), 4);
        assert_eq!(lex.count(AskLabel::Give), 8);
    }

    #[test]
    fn class_index_agrees_with_entries() {
        let lex = parse_lcs(CLASSES_TSV, LABELS_TSV).unwrap();
        for class in lex.class_index.values() {
            for m in &class.members {
                assert!(lex.has(m, class.label));
            }
        }
        for (lemma, labels) in &lex.entries {
            for l in labels {
                assert!(lex.class_index.values().any(|c| c.label == *l && c.members.contains(lemma)));
            }
        }
    }

    #[test]
    fn malformed_rows() {
        let err = parse_lcs("13.1\tGive\n", "13.1\tGIVE\n").unwrap_err();
        assert!(matches!(err, LexiconError::Parse { line: 1, .. }), "{err}");
        let err = parse_lcs(CLASSES_TSV, "13.1\tTAKE\n").unwrap_err();
        assert!(matches!(err, LexiconError::Parse { .. }), "{err}");
        let err = parse_lcs("1\ta\tx\n1\tb\ty\n", "1\tGIVE\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }
}
