use std::collections::BTreeSet;
use std::path::Path;

use super::{
    content_lines, normalize_lemma, read_file, AskLabel, LcsClass, LexiconError, LexiconManifest, LexiconSource,
    VerbLexicon,
};

const DELTAS: &str = "deltas.tsv";

/// Lemmas removed from and added to one label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconDelta {
    pub label: AskLabel,
    pub removed: BTreeSet<String>,
    pub added: BTreeSet<String>,
}

impl LexiconDelta {
    pub fn new(
        label: AskLabel,
        removed: BTreeSet<String>,
        added: BTreeSet<String>,
    ) -> Result<Self, LexiconError> {
        if let Some(lemma) = removed.intersection(&added).next() {
            return Err(LexiconError::DeltaOverlap { label, lemma: lemma.clone() });
        }
        Ok(Self { label, removed, added })
    }

    pub fn inverse(&self) -> Self {
        Self { label: self.label, removed: self.added.clone(), added: self.removed.clone() }
    }
}

/// Reads `dir/deltas.tsv`, verifying its checksum when a manifest exists.
pub fn load_deltas(dir: &Path) -> Result<Vec<LexiconDelta>, LexiconError> {
    let manifest = LexiconManifest::load_optional(dir)?;
    let text = read_file(&dir.join(DELTAS))?;
    if let Some(m) = &manifest {
        m.verify_checksum(DELTAS, text.as_bytes())?;
    }
    parse_deltas(&text)
}

/// Parses `LABEL <TAB> +|- <TAB> lemma` rows into one delta per label, in
/// order of first appearance.
pub fn parse_deltas(text: &str) -> Result<Vec<LexiconDelta>, LexiconError> {
    let err = |line: usize, message: String| LexiconError::Parse { file: DELTAS.into(), line, message };
    let mut out: Vec<(AskLabel, BTreeSet<String>, BTreeSet<String>)> = Vec::new();
    for (line, raw) in content_lines(text) {
        let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
        let [label, op, lemma] = cols[..] else {
            return Err(err(line, format!("expected 3 columns, found {}", cols.len())));
        };
        let label = label.parse::<AskLabel>().map_err(|m| err(line, m))?;
        let lemma = normalize_lemma(lemma).map_err(|m| err(line, m))?;
        let idx = match out.iter().position(|(l, _, _)| *l == label) {
            Some(i) => i,
            None => {
                out.push((label, BTreeSet::new(), BTreeSet::new()));
                out.len() - 1
            }
        };
        let set = match op {
            "-" => &mut out[idx].1,
            "+" => &mut out[idx].2,
            other => return Err(err(line, format!("operation must be + or -, got {other:?}"))),
        };
        if !set.insert(lemma.clone()) {
            return Err(err(line, format!("{lemma:?} listed twice for {label} {op}")));
        }
    }
    out.into_iter().map(|(label, removed, added)| LexiconDelta::new(label, removed, added)).collect()
}

/// Applies deltas to an LCS lexicon, producing LCS+.
///
/// Removed lemmas lose only the delta's label and leave the classes of
/// that label; added lemmas join a per-label class with id `+LABEL`.
pub fn apply_deltas(lex: &VerbLexicon, deltas: &[LexiconDelta]) -> Result<VerbLexicon, LexiconError> {
    if lex.source != LexiconSource::Lcs {
        return Err(LexiconError::WrongSource(lex.source));
    }
    apply_in_order(lex, deltas.iter().cloned(), LexiconSource::LcsPlus)
}

/// Undoes [`apply_deltas`]: applies the inverse deltas in reverse order and
/// tags the result LCS again. Entries come back exactly.
pub fn revert_deltas(lex: &VerbLexicon, deltas: &[LexiconDelta]) -> Result<VerbLexicon, LexiconError> {
    if lex.source != LexiconSource::LcsPlus {
        return Err(LexiconError::WrongSource(lex.source));
    }
    apply_in_order(lex, deltas.iter().rev().map(LexiconDelta::inverse), LexiconSource::Lcs)
}

fn apply_in_order(
    lex: &VerbLexicon,
    deltas: impl Iterator<Item = LexiconDelta>,
    target: LexiconSource,
) -> Result<VerbLexicon, LexiconError> {
    let mut out = lex.clone();
    out.source = target;
    for delta in deltas {
        let label = delta.label;
        for lemma in &delta.removed {
            if !out.remove(lemma, label) {
                return Err(LexiconError::RemoveMissing { label, lemma: lemma.clone() });
            }
            for class in out.class_index.values_mut().filter(|c| c.label == label) {
                class.members.remove(lemma);
            }
        }
        for lemma in &delta.added {
            if !out.insert(lemma, label) {
                return Err(LexiconError::AddPresent { label, lemma: lemma.clone() });
            }
            out.class_index
                .entry(format!("+{label}"))
                .or_insert_with(|| LcsClass { name: format!("added {label}"), members: BTreeSet::new(), label })
                .members
                .insert(lemma.clone());
        }
    }
    out.class_index.retain(|_, c| !c.members.is_empty());
    Ok(out)
}
