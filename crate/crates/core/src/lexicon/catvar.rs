use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::{read_file, LexiconError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosClass {
    N,
    V,
    AJ,
    AV,
}

impl PosClass {
    /// CATVAR class of a Penn Treebank tag.
    pub fn from_penn(tag: &str) -> Option<Self> {
        match tag {
            t if t.starts_with("NN") => Some(PosClass::N),
            t if t.starts_with("VB") => Some(PosClass::V),
            t if t.starts_with("JJ") => Some(PosClass::AJ),
            t if t.starts_with("RB") => Some(PosClass::AV),
            _ => None,
        }
    }
}

impl FromStr for PosClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N" => Ok(PosClass::N),
            "V" => Ok(PosClass::V),
            "AJ" => Ok(PosClass::AJ),
            "AV" => Ok(PosClass::AV),
            other => Err(format!("unknown POS class {other:?}")),
        }
    }
}

impl fmt::Display for PosClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PosClass::N => "N",
            PosClass::V => "V",
            PosClass::AJ => "AJ",
            PosClass::AV => "AV",
        })
    }
}

/// Clusters of morphologically related words across parts of speech.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatVarDatabase {
    pub clusters: Vec<Vec<(String, PosClass)>>,
    index: BTreeMap<(String, PosClass), Vec<usize>>,
}

impl CatVarDatabase {
    pub fn from_clusters(clusters: Vec<Vec<(String, PosClass)>>) -> Self {
        let mut index: BTreeMap<(String, PosClass), Vec<usize>> = BTreeMap::new();
        for (ci, cluster) in clusters.iter().enumerate() {
            for member in cluster {
                let slot = index.entry(member.clone()).or_default();
                if slot.last() != Some(&ci) {
                    slot.push(ci);
                }
            }
        }
        Self { clusters, index }
    }

    /// Clusters containing `(word, pos)`, in file order.
    pub fn lookup(&self, word: &str, pos: PosClass) -> Vec<&[(String, PosClass)]> {
        self.index
            .get(&(word.to_lowercase(), pos))
            .map(|ids| ids.iter().map(|&i| self.clusters[i].as_slice()).collect())
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }
}

pub fn load_catvar(path: &Path) -> Result<CatVarDatabase, LexiconError> {
    parse_catvar(&read_file(path)?)
}

/// One cluster per line, members `word#CLASS` separated by whitespace.
/// Lines starting with `#` are comments.
pub fn parse_catvar(text: &str) -> Result<CatVarDatabase, LexiconError> {
    let mut clusters = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |message: String| LexiconError::MalformedCluster { line: i + 1, message };
        let mut cluster = Vec::new();
        for member in line.split_whitespace() {
            let (word, pos) = member
                .rsplit_once('#')
                .ok_or_else(|| malformed(format!("member {member:?} lacks a #POS suffix")))?;
            if word.is_empty() {
                return Err(malformed(format!("member {member:?} has an empty word")));
            }
            let pos = pos.parse::<PosClass>().map_err(malformed)?;
            let entry = (word.to_lowercase(), pos);
            if !cluster.contains(&entry) {
                cluster.push(entry);
            }
        }
        if cluster.len() < 2 {
            return Err(malformed("a cluster needs at least two members".into()));
        }
        clusters.push(cluster);
    }
    Ok(CatVarDatabase::from_clusters(clusters))
}

/// Verb related to `word` (tagged `pos`): the word itself for verb tags,
/// otherwise the first V member of the first cluster holding one.
pub fn catvar_verbalize(db: &CatVarDatabase, word: &str, pos: &str) -> Option<String> {
    let class = PosClass::from_penn(pos)?;
    let word = word.to_lowercase();
    if class == PosClass::V {
        return Some(word);
    }
    db.lookup(&word, class)
        .into_iter()
        .find_map(|c| c.iter().find(|(_, p)| *p == PosClass::V).map(|(w, _)| w.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SAMPLE: &str = "\
# word#POS members
develop#V developer#N developing#AJ development#N developed#AJ developmental#AJ
win#V winner#N winning#AJ
refer#V reference#N referral#N
quick#AJ quickly#AV quickness#N
";

    #[test]
    fn verbalize_nominals() {
        let db = parse_catvar(SAMPLE).unwrap();
        assert_eq!(catvar_verbalize(&db, "winner", "NN").as_deref(), Some("win"));
        assert_eq!(catvar_verbalize(&db, "reference", "NN").as_deref(), Some("refer"));
        assert_eq!(catvar_verbalize(&db, "Development", "NNS").as_deref(), Some("develop"));
        assert_eq!(catvar_verbalize(&db, "quickly", "RB"), None);
        assert_eq!(catvar_verbalize(&db, "xylophone", "NN"), None);
        assert_eq!(catvar_verbalize(&db, "winner", "DT"), None);
    }

    #[test]
    fn lookup_is_by_word_and_class() {
        let db = parse_catvar(SAMPLE).unwrap();
        assert_eq!(db.lookup("development", PosClass::N).len(), 1);
        assert!(db.lookup("development", PosClass::V).is_empty());
        assert!(db.lookup("nothing", PosClass::N).is_empty());
    }

    #[test]
    fn malformed_clusters() {
        assert!(matches!(parse_catvar("win#V\n"), Err(LexiconError::MalformedCluster { line: 1, .. })));
        assert!(matches!(parse_catvar("win#V winner\n"), Err(LexiconError::MalformedCluster { .. })));
        assert!(matches!(parse_catvar("\nwin#V winner#X\n"), Err(LexiconError::MalformedCluster { line: 2, .. })));
    }

    #[test]
    fn penn_mapping() {
        assert_eq!(PosClass::from_penn("NNPS"), Some(PosClass::N));
        assert_eq!(PosClass::from_penn("JJR"), Some(PosClass::AJ));
        assert_eq!(PosClass::from_penn("RBS"), Some(PosClass::AV));
        assert_eq!(PosClass::from_penn("VBZ"), Some(PosClass::V));
        assert_eq!(PosClass::from_penn("IN"), None);
    }

    proptest! {
        #[test]
        fn verbs_verbalize_to_themselves(word in "[a-z]{1,12}", tag in prop::sample::select(vec!["VB", "VBD", "VBG", "VBN", "VBP", "VBZ"])) {
            let db = parse_catvar(SAMPLE).unwrap();
            prop_assert_eq!(catvar_verbalize(&db, &word, tag), Some(word.clone()));
        }
    }
}
