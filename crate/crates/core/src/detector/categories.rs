use std::collections::BTreeSet;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::Deserialize;
use thiserror::Error;

use crate::annotation::Argument;

/// Number of nodes in the category taxonomy.
pub const TAXONOMY_SIZE: usize = 13;

const DEFAULT_RULES: &str = include_str!("default_categories.toml");

static BUILTIN: Lazy<CategoryRuleSet> =
    Lazy::new(|| CategoryRuleSet::from_toml(DEFAULT_RULES).expect("bundled category rules are valid"));

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("unreadable category rules: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("category {id}: bad pattern: {source}")]
    Pattern {
        id: String,
        #[source]
        source: regex::Error,
    },
    #[error("category taxonomy must have {TAXONOMY_SIZE} nodes, found {0}")]
    Size(usize),
    #[error("category id {0:?} is empty or duplicated")]
    BadId(String),
}

#[derive(Debug, Clone)]
pub struct CategoryNode {
    pub id: String,
    pub patterns: Vec<Regex>,
}

/// Ordered argument-category rules; the first node with a matching pattern
/// wins.
#[derive(Debug, Clone)]
pub struct CategoryRuleSet {
    pub nodes: Vec<CategoryNode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRules {
    category: Vec<RawNode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    id: String,
    #[serde(default)]
    patterns: Vec<String>,
}

impl CategoryRuleSet {
    pub fn builtin() -> Self {
        BUILTIN.clone()
    }

    pub fn from_toml(text: &str) -> Result<Self, CategoryError> {
        let raw: RawRules = toml::from_str(text)?;
        if raw.category.len() != TAXONOMY_SIZE {
            return Err(CategoryError::Size(raw.category.len()));
        }
        let mut seen = BTreeSet::new();
        let mut nodes = Vec::with_capacity(raw.category.len());
        for node in raw.category {
            let id = node.id.trim().to_string();
            if id.is_empty() || !seen.insert(id.clone()) {
                return Err(CategoryError::BadId(node.id));
            }
            let patterns = node
                .patterns
                .iter()
                .map(|p| Regex::new(p).map_err(|source| CategoryError::Pattern { id: id.clone(), source }))
                .collect::<Result<_, _>>()?;
            nodes.push(CategoryNode { id, patterns });
        }
        Ok(Self { nodes })
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.id.as_str())
    }

    pub fn categorize(&self, text: &str) -> Option<&str> {
        self.nodes
            .iter()
            .find(|n| n.patterns.iter().any(|p| p.is_match(text)))
            .map(|n| n.id.as_str())
    }
}

impl Default for CategoryRuleSet {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Category of each argument, by position.
pub fn assign_category(args: &[Argument], rules: &CategoryRuleSet) -> Vec<Option<String>> {
    args.iter().map(|a| rules.categorize(&a.text).map(str::to_string)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotation::{ArgumentSource, Span};

    fn cat(text: &str) -> Option<String> {
        CategoryRuleSet::builtin().categorize(text).map(str::to_string)
    }

    #[test]
    fn named_nodes() {
        assert_eq!(cat("$500").as_deref(), Some("finance_money"));
        assert_eq!(cat("by sending $500").as_deref(), Some("finance_money"));
        assert_eq!(cat("$1.5M").as_deref(), Some("finance_money"));
        assert_eq!(cat("your gift card").as_deref(), Some("scam_gift"));
        assert_eq!(cat("your login and password").as_deref(), Some("credentials"));
        assert_eq!(cat("your phone number").as_deref(), Some("personal"));
        assert_eq!(cat("the weather"), None);
    }

    #[test]
    fn pronouns_are_not_personal_data() {
        assert_eq!(cat("me"), None);
        assert_eq!(cat("you"), None);
    }

    #[test]
    fn earlier_node_wins() {
        assert_eq!(cat("a $50 gift card").as_deref(), Some("finance_money"));
    }

    #[test]
    fn builtin_taxonomy_has_thirteen_nodes() {
        let rules = CategoryRuleSet::builtin();
        let ids: Vec<_> = rules.ids().collect();
        assert_eq!(ids.len(), TAXONOMY_SIZE);
        assert_eq!(&ids[..4], ["finance_money", "scam_gift", "credentials", "personal"]);
    }

    #[test]
    fn rule_file_validation() {
        assert!(matches!(
            CategoryRuleSet::from_toml("[[category]]\nid = \"a\"\n"),
            Err(CategoryError::Size(1))
        ));
        let dup = "[[category]]\nid = \"a\"\n".repeat(TAXONOMY_SIZE);
        assert!(matches!(CategoryRuleSet::from_toml(&dup), Err(CategoryError::BadId(_))));
        let mut bad = String::from("[[category]]\nid = \"x\"\npatterns = ['(']\n");
        for i in 1..TAXONOMY_SIZE {
            bad.push_str(&format!("[[category]]\nid = \"n{i}\"\n"));
        }
        assert!(matches!(CategoryRuleSet::from_toml(&bad), Err(CategoryError::Pattern { .. })));
    }

    #[test]
    fn assigns_per_argument() {
        let arg = |text: &str| Argument {
            role: "ARG1".into(),
            span: Span::single(0),
            text: text.into(),
            source: ArgumentSource::Srl,
        };
        let cats = assign_category(&[arg("me"), arg("$500.")], &CategoryRuleSet::builtin());
        assert_eq!(cats, [None, Some("finance_money".to_string())]);
    }
}
