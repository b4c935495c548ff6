use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::{read_file, AskLabel, LexiconError, LexiconSource, VerbLexicon};

pub const MANIFEST_FILE: &str = "manifest.toml";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// The complete published resources.
    Full,
    /// A reduced, hand-assembled resource set with its own counts.
    Demo,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    provenance: Provenance,
    #[serde(default)]
    counts: BTreeMap<String, BTreeMap<String, usize>>,
    #[serde(default)]
    checksums: BTreeMap<String, String>,
}

/// Declared lemma counts per (source, label) and SHA-256 of each resource
/// file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconManifest {
    pub provenance: Provenance,
    pub counts: BTreeMap<LexiconSource, BTreeMap<AskLabel, usize>>,
    pub checksums: BTreeMap<String, String>,
}

/// Lemma counts of the complete thesaurus, LCS and LCS+ resources.
pub fn published_counts(source: LexiconSource) -> BTreeMap<AskLabel, usize> {
    let counts = match source {
        LexiconSource::Thesaurus => [44, 55, 41, 53],
        LexiconSource::Lcs => [214, 81, 615, 49],
        LexiconSource::LcsPlus => [214 - 6 + 44, 81, 615 - 174 + 11, 49],
    };
    AskLabel::ALL.into_iter().zip(counts).collect()
}

impl LexiconManifest {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let bad = |m: String| LexiconError::ManifestMismatch(m);
        let raw: RawManifest = toml::from_str(text).map_err(|e| bad(format!("unreadable manifest: {e}")))?;
        let mut counts = BTreeMap::new();
        for (key, table) in raw.counts {
            let source = LexiconSource::ALL
                .into_iter()
                .find(|s| s.manifest_key() == key)
                .ok_or_else(|| bad(format!("unknown counts table [counts.{key}]")))?;
            let mut labels = BTreeMap::new();
            for (label, n) in table {
                labels.insert(label.parse::<AskLabel>().map_err(bad)?, n);
            }
            if labels.len() != AskLabel::ALL.len() {
                return Err(bad(format!("[counts.{key}] must declare all four labels")));
            }
            counts.insert(source, labels);
        }
        if raw.provenance == Provenance::Full {
            for (source, declared) in &counts {
                if *declared != published_counts(*source) {
                    return Err(bad(format!(
                        "provenance is \"full\" but {source} counts {declared:?} differ from the published ones"
                    )));
                }
            }
        }
        Ok(Self { provenance: raw.provenance, counts, checksums: raw.checksums })
    }

    /// Reads `dir/manifest.toml` if it exists.
    pub fn load_optional(dir: &Path) -> Result<Option<Self>, LexiconError> {
        let path = dir.join(MANIFEST_FILE);
        if !path.exists() {
            return Ok(None);
        }
        Self::parse(&read_file(&path)?).map(Some)
    }

    pub fn sha256_hex(bytes: &[u8]) -> String {
        hex::encode(Sha256::digest(bytes))
    }

    pub fn verify_checksum(&self, file: &str, bytes: &[u8]) -> Result<(), LexiconError> {
        let declared = self
            .checksums
            .get(file)
            .ok_or_else(|| LexiconError::ManifestMismatch(format!("no checksum declared for {file}")))?;
        let actual = Self::sha256_hex(bytes);
        if !declared.eq_ignore_ascii_case(&actual) {
            return Err(LexiconError::ManifestMismatch(format!(
                "{file}: checksum {actual} does not match declared {declared}"
            )));
        }
        Ok(())
    }

    pub fn verify_counts(&self, lex: &VerbLexicon) -> Result<(), LexiconError> {
        let declared = self.counts.get(&lex.source).ok_or_else(|| {
            LexiconError::ManifestMismatch(format!("no [counts.{}] table", lex.source.manifest_key()))
        })?;
        for (label, expected) in declared {
            let actual = lex.count(*label);
            if actual != *expected {
                return Err(LexiconError::ManifestMismatch(format!(
                    "{} {label}: loaded {actual} lemmas, manifest declares {expected}",
                    lex.source
                )));
            }
        }
        Ok(())
    }
}
