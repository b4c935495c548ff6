//! Loading a complete resource directory: thesaurus, LCS, LCS+ deltas,
//! CATVAR and (optionally) category rules.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::detector::{CategoryError, CategoryRuleSet};
use crate::lexicon::{
    apply_deltas, load_catvar, load_deltas, load_lcs, load_thesaurus, CatVarDatabase, LexiconDelta, LexiconError,
    LexiconManifest, LexiconSource, VerbLexicon,
};

const CATVAR_FILE: &str = "catvar.txt";
const CATEGORIES_FILE: &str = "categories.toml";

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("{path}: {source}")]
    Categories {
        path: PathBuf,
        #[source]
        source: CategoryError,
    },
}

#[derive(Debug, Clone)]
pub struct Resources {
    pub root: PathBuf,
    pub manifest: Option<LexiconManifest>,
    pub thesaurus: VerbLexicon,
    pub lcs: VerbLexicon,
    pub lcs_plus: VerbLexicon,
    pub deltas: Vec<LexiconDelta>,
    pub catvar: CatVarDatabase,
    pub categories: CategoryRuleSet,
}

impl Resources {
    /// Loads every resource under `root`. When `root/manifest.toml` exists,
    /// each file must match its declared checksum and each lexicon its
    /// declared counts.
    pub fn load(root: &Path) -> Result<Self, ResourceError> {
        let manifest = LexiconManifest::load_optional(root)?;
        let thesaurus = load_thesaurus(root)?;
        let lcs = load_lcs(root)?;
        let deltas = load_deltas(root)?;
        let lcs_plus = apply_deltas(&lcs, &deltas)?;
        if let Some(m) = &manifest {
            m.verify_counts(&lcs_plus)?;
        }

        let catvar_path = root.join(CATVAR_FILE);
        if let Some(m) = &manifest {
            let bytes = std::fs::read(&catvar_path).map_err(|source| io_error(&catvar_path, source))?;
            m.verify_checksum(CATVAR_FILE, &bytes)?;
        }
        let catvar = load_catvar(&catvar_path)?;

        let categories_path = root.join(CATEGORIES_FILE);
        let categories = if categories_path.exists() {
            let text = std::fs::read_to_string(&categories_path).map_err(|source| io_error(&categories_path, source))?;
            if let Some(m) = &manifest {
                m.verify_checksum(CATEGORIES_FILE, text.as_bytes())?;
            }
            CategoryRuleSet::from_toml(&text)
                .map_err(|source| ResourceError::Categories { path: categories_path.clone(), source })?
        } else {
            CategoryRuleSet::builtin()
        };

        Ok(Self { root: root.to_path_buf(), manifest, thesaurus, lcs, lcs_plus, deltas, catvar, categories })
    }

    pub fn lexicon(&self, source: LexiconSource) -> &VerbLexicon {
        match source {
            LexiconSource::Thesaurus => &self.thesaurus,
            LexiconSource::Lcs => &self.lcs,
            LexiconSource::LcsPlus => &self.lcs_plus,
        }
    }
}

fn io_error(path: &Path, source: std::io::Error) -> ResourceError {
    if source.kind() == std::io::ErrorKind::NotFound {
        LexiconError::MissingFile(path.to_path_buf()).into()
    } else {
        LexiconError::Io { path: path.to_path_buf(), source }.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{AskLabel, Provenance};

    fn demo_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../resources/demo")
    }

    #[test]
    fn demo_resources_load_and_verify() {
        let r = Resources::load(&demo_dir()).unwrap();
        let m = r.manifest.as_ref().unwrap();
        assert_eq!(m.provenance, Provenance::Demo);
        for source in LexiconSource::ALL {
            assert_eq!(&r.lexicon(source).counts(), &m.counts[&source]);
        }
        assert_eq!(r.categories.ids().collect::<Vec<_>>(), CategoryRuleSet::builtin().ids().collect::<Vec<_>>());
    }

    #[test]
    fn demo_lexicon_memberships() {
        let r = Resources::load(&demo_dir()).unwrap();
        let labels = |lex: &VerbLexicon, w: &str| lex.lookup(w).into_iter().collect::<Vec<_>>();
        assert_eq!(labels(&r.lcs_plus, "send"), [AskLabel::Perform, AskLabel::Give]);
        assert_eq!(labels(&r.lcs_plus, "retrieve"), [AskLabel::Lose, AskLabel::Gain]);
        assert_eq!(labels(&r.lcs, "contact"), []);
        assert_eq!(labels(&r.lcs_plus, "contact"), [AskLabel::Perform]);
        assert_eq!(labels(&r.thesaurus, "donate"), [AskLabel::Give]);
        assert_eq!(labels(&r.lcs, "donate"), [AskLabel::Give]);
        assert!(r.thesaurus.lookup("get").contains(&AskLabel::Gain));
        for w in ["xylophone", "inform", "submit", "emerge", "be"] {
            assert!(r.lcs_plus.lookup(w).is_empty(), "{w}");
        }
    }

    #[test]
    fn tampered_file_fails_checksum() {
        let tmp = tempfile::tempdir().unwrap();
        for entry in std::fs::read_dir(demo_dir()).unwrap() {
            let p = entry.unwrap().path();
            std::fs::copy(&p, tmp.path().join(p.file_name().unwrap())).unwrap();
        }
        assert!(Resources::load(tmp.path()).is_ok());
        let gain = tmp.path().join("gain.txt");
        let mut text = std::fs::read_to_string(&gain).unwrap();
        text.push_str("prosper\n");
        std::fs::write(&gain, text).unwrap();
        let err = Resources::load(tmp.path()).unwrap_err();
        assert!(err.to_string().contains("gain.txt"), "{err}");
    }
}
