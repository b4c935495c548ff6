use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::annotation::{load_annotations, AnnotatedDocument};
use crate::detector::{detect, DetectorConfig, EmailAnalysis};
use crate::ingest::{normalize_email, NormalizedDocument};
use crate::resources::Resources;

use super::{
    format_metric, mcnemar, metrics, ratio_to_f64, score_aspect, Aspect, ConfusionCounts, EvalError,
    ValidationRecord,
};

pub const ANNOTATION_SUFFIX: &str = ".ann.jsonl";

#[derive(Debug, Clone)]
pub struct CorpusEmail {
    /// File stem of the `.eml` file; gold records refer to it.
    pub id: String,
    pub path: PathBuf,
    pub document: NormalizedDocument,
    pub annotations: AnnotatedDocument,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub emails: Vec<CorpusEmail>,
}

/// Annotation sidecar path for an email: `x.eml` -> `x.ann.jsonl`.
pub fn annotation_path(email: &Path) -> PathBuf {
    let stem = email.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    email.with_file_name(format!("{stem}{ANNOTATION_SUFFIX}"))
}

impl CorpusEmail {
    /// Loads `path` and its annotation sidecar.
    pub fn load(path: &Path) -> Result<Self, EvalError> {
        let raw = fs::read(path).map_err(|source| EvalError::Io { path: path.to_path_buf(), source })?;
        let ann_path = annotation_path(path);
        let file = fs::File::open(&ann_path).map_err(|source| EvalError::Io { path: ann_path.clone(), source })?;
        let annotations = load_annotations(BufReader::new(file))
            .map_err(|e| EvalError::Corpus { path: ann_path.clone(), message: e.to_string() })?;
        Self::from_parts(path, &raw, annotations).map_err(|message| EvalError::Corpus { path: path.to_path_buf(), message })
    }

    pub fn from_parts(path: &Path, raw: &[u8], annotations: AnnotatedDocument) -> Result<Self, String> {
        let document = normalize_email(raw).map_err(|e| e.to_string())?;
        check_segments(&document, &annotations)?;
        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok(Self { id, path: path.to_path_buf(), document, annotations })
    }
}

/// Every annotated sentence must point at a segment of the normalized text.
pub fn check_segments(document: &NormalizedDocument, annotations: &AnnotatedDocument) -> Result<(), String> {
    for (i, s) in annotations.sentences.iter().enumerate() {
        if s.segment_index >= document.segments.len() {
            return Err(format!(
                "annotation sentence {i} refers to segment {} but the email has {} segments",
                s.segment_index,
                document.segments.len()
            ));
        }
    }
    Ok(())
}

/// Loads every `*.eml` under `dir` (sorted by file name) with its sidecar.
pub fn load_corpus(dir: &Path) -> Result<Corpus, EvalError> {
    let entries = fs::read_dir(dir).map_err(|source| EvalError::Io { path: dir.to_path_buf(), source })?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| EvalError::Io { path: dir.to_path_buf(), source })?;
        let path = entry.path();
        if path.extension().is_some_and(|e| e == "eml") {
            paths.push(path);
        }
    }
    paths.sort();
    let emails = paths.iter().map(|p| CorpusEmail::load(p)).collect::<Result<_, _>>()?;
    Ok(Corpus { emails })
}

pub fn analyze_email(email: &CorpusEmail, resources: &Resources, cfg: &DetectorConfig) -> EmailAnalysis {
    detect(
        &email.id,
        &email.annotations,
        &email.document.links,
        resources.lexicon(cfg.lexicon_source),
        &resources.catvar,
        cfg,
    )
}

pub fn case_name(case: u8) -> &'static str {
    match case {
        0 => "Thesaurus only",
        1 => "LCS",
        2 => "LCS+",
        3 => "+Verbal processing",
        4 => "+CATVAR",
        5 => "+Basic links",
        6 => "+Advanced links",
        _ => "custom",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AspectReport {
    pub aspect: Aspect,
    #[serde(flatten)]
    pub counts: ConfusionCounts,
    /// Rounded to three decimals.
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Exact values as `numer/denom`.
    pub precision_exact: String,
    pub recall_exact: String,
    pub f1_exact: String,
}

impl AspectReport {
    pub fn new(aspect: Aspect, counts: ConfusionCounts) -> Self {
        let m = metrics(&counts);
        let round = |r| (ratio_to_f64(r) * 1000.0).round() / 1000.0;
        Self {
            aspect,
            counts,
            precision: round(m.precision),
            recall: round(m.recall),
            f1: round(m.f1),
            precision_exact: m.precision.to_string(),
            recall_exact: m.recall.to_string(),
            f1_exact: m.f1.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: u8,
    pub name: String,
    pub aspects: Vec<AspectReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub from: u8,
    pub to: u8,
    pub aspect: Aspect,
    pub b: u64,
    pub c: u64,
    pub p_value: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub clauses: usize,
    pub cases: Vec<CaseReport>,
    /// McNemar tests between consecutive reported cases.
    pub comparisons: Vec<Comparison>,
}

/// Runs the given case presets (category rules taken from `resources`).
pub fn run_cases(
    corpus: &Corpus,
    gold: &[ValidationRecord],
    resources: &Resources,
    cases: &[u8],
) -> Result<ExperimentReport, EvalError> {
    let configs = cases
        .iter()
        .map(|&n| {
            let mut cfg = DetectorConfig::case(n)?;
            cfg.categories = resources.categories.clone();
            Ok((n, cfg))
        })
        .collect::<Result<Vec<_>, EvalError>>()?;
    run_configs(corpus, gold, resources, &configs)
}

/// Runs arbitrary configurations, each labeled with a case number.
pub fn run_configs(
    corpus: &Corpus,
    gold: &[ValidationRecord],
    resources: &Resources,
    configs: &[(u8, DetectorConfig)],
) -> Result<ExperimentReport, EvalError> {
    let mut cases = Vec::new();
    let mut correctness: Vec<Vec<Vec<bool>>> = Vec::new();
    for (n, cfg) in configs {
        cfg.validate()?;
        let preds: Vec<EmailAnalysis> = corpus.emails.iter().map(|e| analyze_email(e, resources, cfg)).collect();
        let mut aspects = Vec::new();
        let mut correct = Vec::new();
        for aspect in Aspect::ALL {
            let score = score_aspect(&preds, gold, aspect)?;
            aspects.push(AspectReport::new(aspect, score.counts()));
            correct.push(score.correct());
        }
        let preset = DetectorConfig::case(*n).ok();
        let name = if preset.is_some_and(|p| p.features() == cfg.features() && p.advanced_window == cfg.advanced_window) {
            case_name(*n).to_string()
        } else {
            format!("{} (overridden)", case_name(*n))
        };
        cases.push(CaseReport { case: *n, name, aspects });
        correctness.push(correct);
    }

    let mut comparisons = Vec::new();
    for i in 1..cases.len() {
        for (ai, aspect) in Aspect::ALL.into_iter().enumerate() {
            let r = mcnemar(&correctness[i - 1][ai], &correctness[i][ai])?;
            comparisons.push(Comparison {
                from: cases[i - 1].case,
                to: cases[i].case,
                aspect,
                b: r.b,
                c: r.c,
                p_value: r.p_value,
                significant: r.significant,
            });
        }
    }
    Ok(ExperimentReport { clauses: gold.len(), cases, comparisons })
}

impl ExperimentReport {
    /// Whether the transition into `case` was significant for `aspect`.
    pub fn significant_into(&self, case: u8, aspect: Aspect) -> bool {
        self.comparisons.iter().any(|c| c.to == case && c.aspect == aspect && c.significant)
    }

    /// Aligned plain-text table, one block per case. A `*` after the type
    /// marks a significant change from the previous case.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            let _ = writeln!(out, "Case {}: {}", case.case, case.name);
            let _ = writeln!(
                out,
                "{:<9} {:>5} {:>5} {:>5} {:>5} {:>6} {:>6} {:>6}",
                "Type", "TP", "TN", "FP", "FN", "P", "R", "F"
            );
            for a in &case.aspects {
                let m = metrics(&a.counts);
                let star = if self.significant_into(case.case, a.aspect) { "*" } else { "" };
                let _ = writeln!(
                    out,
                    "{:<9} {:>5} {:>5} {:>5} {:>5} {:>6} {:>6} {:>6}",
                    format!("{}{star}", a.aspect),
                    a.counts.tp,
                    a.counts.tn,
                    a.counts.fp,
                    a.counts.fn_,
                    format_metric(m.precision),
                    format_metric(m.recall),
                    format_metric(m.f1)
                );
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} gold clauses; * = McNemar p < 0.05 against the previous case", self.clauses);
        out
    }
}
