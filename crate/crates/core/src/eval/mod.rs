//! Clause-level evaluation against gold labels, the seven-case experiment
//! ladder and McNemar significance tests between consecutive cases.

mod experiment;
mod mcnemar;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::BufRead;
use std::path::PathBuf;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detector::EmailAnalysis;
use crate::lexicon::AskLabel;

pub use experiment::{
    analyze_email, annotation_path, case_name, check_segments, load_corpus, run_cases, run_configs, AspectReport, CaseReport, Comparison, Corpus, CorpusEmail,
    ExperimentReport,
};
pub use mcnemar::{exact_binomial_p, mcnemar, McNemarResult};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("validation line {line}: {message}")]
    Validation { line: usize, message: String },
    #[error("alignment failed: {message}; unmatched: {}", unmatched.join(", "))]
    Alignment { message: String, unmatched: Vec<String> },
    #[error("paired vectors differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{path}: {message}")]
    Corpus { path: PathBuf, message: String },
    #[error(transparent)]
    Config(#[from] crate::detector::ConfigError),
}

/// One gold-labeled clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationRecord {
    #[serde(rename = "email")]
    pub email_id: String,
    #[serde(rename = "sent")]
    pub sentence: usize,
    #[serde(rename = "tok")]
    pub token: usize,
    #[serde(rename = "text", default)]
    pub clause_text: String,
    #[serde(rename = "gold", with = "gold_kind")]
    pub gold_kind: Option<AskLabel>,
    #[serde(rename = "top", default)]
    pub gold_top_ask: bool,
}

impl ValidationRecord {
    pub fn clause_id(&self) -> String {
        format!("{}:{}:{}", self.email_id, self.sentence, self.token)
    }

    fn gold_ask(&self) -> Option<AskLabel> {
        self.gold_kind.filter(|k| k.is_ask())
    }

    fn gold_framing(&self) -> Option<AskLabel> {
        self.gold_kind.filter(|k| k.is_framing())
    }
}

mod gold_kind {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::lexicon::AskLabel;

    pub fn serialize<S: Serializer>(kind: &Option<AskLabel>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(kind.map_or("NONE", |k| k.as_str()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<AskLabel>, D::Error> {
        let text = String::deserialize(d)?;
        if text == "NONE" {
            return Ok(None);
        }
        text.parse().map(Some).map_err(serde::de::Error::custom)
    }
}

/// Reads a JSON-lines validation set. Blank lines are skipped.
pub fn load_validation<R: BufRead>(reader: R) -> Result<Vec<ValidationRecord>, EvalError> {
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|source| EvalError::Io { path: PathBuf::from("<validation>"), source })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ValidationRecord = serde_json::from_str(&line)
            .map_err(|e| EvalError::Validation { line: line_no, message: e.to_string() })?;
        if record.gold_top_ask && record.gold_ask().is_none() {
            return Err(EvalError::Validation {
                line: line_no,
                message: format!("{} is marked top ask but its gold kind is not an ask", record.clause_id()),
            });
        }
        if !seen.insert((record.email_id.clone(), record.sentence, record.token)) {
            return Err(EvalError::Validation { line: line_no, message: format!("duplicate clause {}", record.clause_id()) });
        }
        records.push(record);
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Aspect {
    Ask,
    Framing,
    TopAsk,
}

impl Aspect {
    pub const ALL: [Aspect; 3] = [Aspect::Ask, Aspect::Framing, Aspect::TopAsk];
}

impl fmt::Display for Aspect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aspect::Ask => "Ask",
            Aspect::Framing => "Framing",
            Aspect::TopAsk => "TopAsk",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Tp,
    Tn,
    Fp,
    Fn,
}

impl Outcome {
    pub fn is_correct(self) -> bool {
        matches!(self, Outcome::Tp | Outcome::Tn)
    }
}

/// Outcome of one clause for a labeled aspect. A predicted kind that
/// differs from the gold kind counts as a false positive.
pub fn label_outcome(gold: Option<AskLabel>, predicted: Option<AskLabel>) -> Outcome {
    match (gold, predicted) {
        (Some(g), Some(p)) if g == p => Outcome::Tp,
        (Some(_), Some(_)) => Outcome::Fp,
        (None, Some(_)) => Outcome::Fp,
        (Some(_), None) => Outcome::Fn,
        (None, None) => Outcome::Tn,
    }
}

pub fn flag_outcome(gold: bool, predicted: bool) -> Outcome {
    match (gold, predicted) {
        (true, true) => Outcome::Tp,
        (false, false) => Outcome::Tn,
        (false, true) => Outcome::Fp,
        (true, false) => Outcome::Fn,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        Self { tp, tn, fp, fn_ }
    }

    pub fn add(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Tp => self.tp += 1,
            Outcome::Tn => self.tn += 1,
            Outcome::Fp => self.fp += 1,
            Outcome::Fn => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    pub precision: Ratio<u64>,
    pub recall: Ratio<u64>,
    pub f1: Ratio<u64>,
}

fn ratio_or_zero(num: u64, den: u64) -> Ratio<u64> {
    if den == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(num, den)
    }
}

pub fn metrics(c: &ConfusionCounts) -> Metrics {
    let precision = ratio_or_zero(c.tp, c.tp + c.fp);
    let recall = ratio_or_zero(c.tp, c.tp + c.fn_);
    let sum = precision + recall;
    let f1 = if sum == Ratio::from_integer(0) {
        Ratio::from_integer(0)
    } else {
        Ratio::from_integer(2) * precision * recall / sum
    };
    Metrics { precision, recall, f1 }
}

pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Three-decimal display of a metric, e.g. `0.482`.
pub fn format_metric(r: Ratio<u64>) -> String {
    format!("{:.3}", ratio_to_f64(r))
}

/// Per-clause outcomes for one aspect, in gold order, plus false positives
/// from predictions that could not be aligned to any gold clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AspectScore {
    pub outcomes: Vec<Outcome>,
    pub unaligned_fp: u64,
}

impl AspectScore {
    pub fn counts(&self) -> ConfusionCounts {
        let mut c = ConfusionCounts::default();
        for &o in &self.outcomes {
            c.add(o);
        }
        c.fp += self.unaligned_fp;
        c
    }

    pub fn correct(&self) -> Vec<bool> {
        self.outcomes.iter().map(|o| o.is_correct()).collect()
    }
}

/// Where the predicted frames of one email landed among its gold clauses.
#[derive(Debug, Default)]
struct FrameAlignment {
    /// gold index -> frame index
    assigned: BTreeMap<usize, usize>,
    unaligned: Vec<usize>,
}

/// Aligns each frame to the gold clause at the same position, else to the
/// nearest gold clause in the same sentence. When several frames land on one
/// clause the closest (then earliest) one represents it.
fn align_frames(positions: &[(usize, usize)], gold: &[(usize, (usize, usize))]) -> FrameAlignment {
    let mut best: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut unaligned = Vec::new();
    for (fi, &(sent, tok)) in positions.iter().enumerate() {
        let nearest = gold
            .iter()
            .filter(|(_, (s, _))| *s == sent)
            .map(|&(gi, (_, t))| (t.abs_diff(tok), gi))
            .min();
        match nearest {
            Some((dist, gi)) => {
                let entry = best.entry(gi).or_insert((dist, fi));
                if (dist, fi) < *entry {
                    *entry = (dist, fi);
                }
            }
            None => unaligned.push(fi),
        }
    }
    FrameAlignment { assigned: best.into_iter().map(|(gi, (_, fi))| (gi, fi)).collect(), unaligned }
}

/// Scores one aspect over a set of analyses. Every email in `gold` must have
/// an analysis and vice versa.
pub fn score_aspect(
    preds: &[EmailAnalysis],
    gold: &[ValidationRecord],
    aspect: Aspect,
) -> Result<AspectScore, EvalError> {
    let by_email = index_predictions(preds, gold)?;
    let mut outcomes = vec![Outcome::Tn; gold.len()];
    let mut unaligned_fp = 0;

    let mut gold_by_email: BTreeMap<&str, Vec<(usize, (usize, usize))>> = BTreeMap::new();
    for (gi, r) in gold.iter().enumerate() {
        gold_by_email.entry(r.email_id.as_str()).or_default().push((gi, (r.sentence, r.token)));
    }

    for (email, clauses) in &gold_by_email {
        let analysis = by_email[email];
        let frames = match aspect {
            Aspect::Framing => &analysis.framings,
            Aspect::Ask | Aspect::TopAsk => &analysis.asks,
        };
        let positions: Vec<_> = frames.iter().map(|f| f.position()).collect();
        let alignment = align_frames(&positions, clauses);

        for &(gi, _) in clauses {
            let record = &gold[gi];
            let frame = alignment.assigned.get(&gi).copied();
            outcomes[gi] = match aspect {
                Aspect::Ask => label_outcome(record.gold_ask(), frame.map(|fi| frames[fi].kind)),
                Aspect::Framing => label_outcome(record.gold_framing(), frame.map(|fi| frames[fi].kind)),
                Aspect::TopAsk => {
                    flag_outcome(record.gold_top_ask, frame.is_some_and(|fi| analysis.top_asks.contains(&fi)))
                }
            };
        }
        unaligned_fp += match aspect {
            Aspect::TopAsk => alignment.unaligned.iter().filter(|fi| analysis.top_asks.contains(fi)).count(),
            _ => alignment.unaligned.len(),
        } as u64;
    }
    Ok(AspectScore { outcomes, unaligned_fp })
}

fn index_predictions<'a>(
    preds: &'a [EmailAnalysis],
    gold: &[ValidationRecord],
) -> Result<BTreeMap<&'a str, &'a EmailAnalysis>, EvalError> {
    let mut by_email = BTreeMap::new();
    for p in preds {
        if by_email.insert(p.email_id.as_str(), p).is_some() {
            return Err(EvalError::Alignment {
                message: format!("email {} analyzed more than once", p.email_id),
                unmatched: Vec::new(),
            });
        }
    }
    let gold_emails: BTreeSet<&str> = gold.iter().map(|r| r.email_id.as_str()).collect();
    let missing: Vec<String> =
        gold.iter().filter(|r| !by_email.contains_key(r.email_id.as_str())).map(|r| r.clause_id()).collect();
    if !missing.is_empty() {
        return Err(EvalError::Alignment { message: "gold clauses for emails without predictions".into(), unmatched: missing });
    }
    let extra: Vec<String> =
        by_email.keys().filter(|e| !gold_emails.contains(*e)).map(|e| e.to_string()).collect();
    if !extra.is_empty() {
        return Err(EvalError::Alignment { message: "predicted emails absent from the gold set".into(), unmatched: extra });
    }
    Ok(by_email)
}

#[cfg(test)]
mod tests;
