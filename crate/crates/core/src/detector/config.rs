use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::CategoryRuleSet;
use crate::lexicon::LexiconSource;

/// Number of cumulative experiment configurations (cases 0 through 6).
pub const CASE_COUNT: u8 = 7;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("no case {0}; cases run from 0 to 6")]
    UnknownCase(u8),
    #[error("confidence table: {0}")]
    Confidence(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkMode {
    None,
    Basic,
    /// Basic attachment plus the cross-sentence window.
    Advanced,
}

impl fmt::Display for LinkMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkMode::None => "none",
            LinkMode::Basic => "basic",
            LinkMode::Advanced => "advanced",
        })
    }
}

impl FromStr for LinkMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(LinkMode::None),
            "basic" => Ok(LinkMode::Basic),
            "advanced" => Ok(LinkMode::Advanced),
            _ => Err(format!("unknown link mode {s:?} (expected none, basic or advanced)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceTable {
    pub ask_with_link: f64,
    pub perform_with_category: f64,
    pub give_with_category: f64,
    pub give_plain: f64,
    pub perform_plain: f64,
    pub past_tense_ask: f64,
}

impl Default for ConfidenceTable {
    fn default() -> Self {
        Self {
            ask_with_link: 0.9,
            perform_with_category: 0.8,
            give_with_category: 0.75,
            give_plain: 0.6,
            perform_plain: 0.7,
            past_tense_ask: 0.0,
        }
    }
}

impl ConfidenceTable {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let cells = [
            ("ask_with_link", self.ask_with_link),
            ("perform_with_category", self.perform_with_category),
            ("give_with_category", self.give_with_category),
            ("give_plain", self.give_plain),
            ("perform_plain", self.perform_plain),
            ("past_tense_ask", self.past_tense_ask),
        ];
        for (name, v) in cells {
            if !(0.0..=1.0).contains(&v) {
                return Err(ConfigError::Confidence(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        let chain = [
            ("ask_with_link", self.ask_with_link),
            ("perform_with_category", self.perform_with_category),
            ("give_with_category", self.give_with_category),
            ("give_plain", self.give_plain),
        ];
        for pair in chain.windows(2) {
            if pair[0].1 < pair[1].1 {
                return Err(ConfigError::Confidence(format!("{} must be >= {}", pair[0].0, pair[1].0)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct DetectorConfig {
    pub lexicon_source: LexiconSource,
    /// Rule out VBD/VBG actions as asks.
    pub verbal_processing: bool,
    pub catvar: bool,
    pub link_mode: LinkMode,
    /// How many segments back an advanced-mode link may reach.
    pub advanced_window: usize,
    pub confidence: ConfidenceTable,
    pub categories: CategoryRuleSet,
}

impl Default for DetectorConfig {
    /// The full configuration (case 6).
    fn default() -> Self {
        Self::case(6).expect("case 6 exists")
    }
}

impl DetectorConfig {
    /// Cumulative experiment configurations: 0 thesaurus, 1 LCS, 2 LCS+,
    /// 3 verbal processing, 4 CATVAR, 5 basic links, 6 advanced links.
    pub fn case(n: u8) -> Result<Self, ConfigError> {
        if n >= CASE_COUNT {
            return Err(ConfigError::UnknownCase(n));
        }
        Ok(Self {
            lexicon_source: match n {
                0 => LexiconSource::Thesaurus,
                1 => LexiconSource::Lcs,
                _ => LexiconSource::LcsPlus,
            },
            verbal_processing: n >= 3,
            catvar: n >= 4,
            link_mode: match n {
                0..=4 => LinkMode::None,
                5 => LinkMode::Basic,
                _ => LinkMode::Advanced,
            },
            advanced_window: 2,
            confidence: ConfidenceTable::default(),
            categories: CategoryRuleSet::builtin(),
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.confidence.validate()
    }

    /// Feature switches, for comparing configurations.
    pub fn features(&self) -> (LexiconSource, bool, bool, LinkMode) {
        (self.lexicon_source, self.verbal_processing, self.catvar, self.link_mode)
    }
}
