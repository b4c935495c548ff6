use serde::{Deserialize, Serialize};

use crate::lexicon::AskLabel;

use super::{AskFrame, EmailAnalysis};

/// JSON form of an [`EmailAnalysis`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub email: String,
    pub asks: Vec<FrameJson>,
    pub framings: Vec<FrameJson>,
    /// Indices into `asks`.
    pub top_asks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub kind: AskLabel,
    /// Action lemma.
    pub action: String,
    pub surface: String,
    pub sentence: usize,
    pub token: usize,
    pub args: Vec<ArgumentJson>,
    /// Link targets.
    pub links: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
    pub evidence: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgumentJson {
    pub text: String,
    pub role: String,
    pub category: Option<String>,
}

impl From<&AskFrame> for FrameJson {
    fn from(f: &AskFrame) -> Self {
        Self {
            kind: f.kind,
            action: f.clause.lemma.clone(),
            surface: f.surface.clone(),
            sentence: f.clause.sentence_index,
            token: f.clause.action_index,
            args: f
                .arguments
                .iter()
                .map(|a| ArgumentJson { text: a.text.clone(), role: a.role.clone(), category: a.category.clone() })
                .collect(),
            links: f.links.iter().map(|l| l.target.clone()).collect(),
            confidence: f.confidence,
            evidence: f.evidence.clone(),
        }
    }
}

impl From<&EmailAnalysis> for AnalysisJson {
    fn from(a: &EmailAnalysis) -> Self {
        Self {
            email: a.email_id.clone(),
            asks: a.asks.iter().map(FrameJson::from).collect(),
            framings: a.framings.iter().map(FrameJson::from).collect(),
            top_asks: a.top_asks.clone(),
        }
    }
}
