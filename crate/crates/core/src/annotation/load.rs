use std::io::BufRead;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    AnnotatedDocument, AnnotationError, Constituent, Dependency, SentenceAnnotation, Span, SrlArg,
    SrlFrame, Token,
};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSentence {
    segment: usize,
    tokens: Vec<RawToken>,
    #[serde(default)]
    deps: Vec<RawDep>,
    #[serde(default)]
    constituency: Option<Value>,
    #[serde(default)]
    srl: Vec<RawFrame>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawToken {
    i: usize,
    text: String,
    lemma: String,
    pos: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDep {
    head: i64,
    dep: usize,
    rel: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawFrame {
    pred: usize,
    args: Vec<RawArg>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawArg {
    role: String,
    span: [usize; 2],
}

/// Reads sentence annotations, one JSON object per line. Blank lines and
/// lines starting with `#` (tool provenance headers) are skipped.
pub fn load_annotations<R: BufRead>(reader: R) -> Result<AnnotatedDocument, AnnotationError> {
    let mut sentences = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        sentences.push(parse_sentence(trimmed, n + 1)?);
    }
    Ok(AnnotatedDocument { sentences })
}

/// Parses and validates one sentence object. `line` is only used in errors.
pub fn parse_sentence(json: &str, line: usize) -> Result<SentenceAnnotation, AnnotationError> {
    let raw: RawSentence = serde_json::from_str(json).map_err(|source| {
        if source.classify() == serde_json::error::Category::Data {
            AnnotationError::Schema { line, message: source.to_string() }
        } else {
            AnnotationError::Json { line, source }
        }
    })?;
    let schema = |message: String| AnnotationError::Schema { line, message };
    let graph = |message: String| AnnotationError::Graph { line, message };

    let n = raw.tokens.len();
    if n == 0 {
        return Err(schema("sentence has no tokens".into()));
    }
    let mut tokens = Vec::with_capacity(n);
    for (pos, t) in raw.tokens.into_iter().enumerate() {
        if t.i != pos {
            return Err(schema(format!("token index {} at position {pos}; indices must run 0..{n}", t.i)));
        }
        if t.pos.trim().is_empty() {
            return Err(schema(format!("token {pos} has an empty POS tag")));
        }
        tokens.push(Token { index: t.i, text: t.text, lemma: t.lemma, pos: t.pos });
    }

    let mut dependencies = Vec::with_capacity(raw.deps.len());
    for d in raw.deps {
        if d.dep >= n {
            return Err(schema(format!("dependency on missing token {}", d.dep)));
        }
        let head = match d.head {
            -1 => None,
            h if h >= 0 && (h as usize) < n => Some(h as usize),
            h => return Err(schema(format!("dependency head {h} out of range"))),
        };
        if head == Some(d.dep) {
            return Err(graph(format!("token {} is its own head", d.dep)));
        }
        dependencies.push(Dependency { head, dependent: d.dep, relation: d.rel });
    }
    check_tree(&dependencies, n).map_err(graph)?;

    let constituency = match raw.constituency {
        None | Some(Value::Null) => None,
        Some(v) => {
            let tree = parse_constituent(&v).map_err(schema)?;
            let leaves = tree.leaves();
            if leaves != (0..n).collect::<Vec<_>>() {
                return Err(schema(format!(
                    "constituency leaves {leaves:?} do not cover tokens 0..{n} in order"
                )));
            }
            Some(tree)
        }
    };

    let mut srl_frames = Vec::with_capacity(raw.srl.len());
    for (fi, f) in raw.srl.into_iter().enumerate() {
        let name = format!("srl frame {fi} (predicate {})", f.pred);
        if f.pred >= n {
            return Err(schema(format!("{name}: predicate out of range")));
        }
        let mut args = Vec::with_capacity(f.args.len());
        for a in f.args {
            let [start, end] = a.span;
            if a.role.trim().is_empty() {
                return Err(schema(format!("{name}: empty role")));
            }
            if end < start {
                return Err(schema(format!("{name}: {} span end {end} < start {start}", a.role)));
            }
            if end >= n {
                return Err(schema(format!("{name}: {} span [{start}, {end}] exceeds sentence", a.role)));
            }
            args.push(SrlArg { role: a.role, span: Span::new(start, end) });
        }
        srl_frames.push(SrlFrame { predicate_index: f.pred, args });
    }

    Ok(SentenceAnnotation { segment_index: raw.segment, tokens, dependencies, constituency, srl_frames })
}

/// Single ROOT, one head per token, no cycles. An empty edge list is
/// accepted (no parse available for the sentence).
fn check_tree(deps: &[Dependency], n: usize) -> Result<(), String> {
    if deps.is_empty() {
        return Ok(());
    }
    let mut head: Vec<Option<Option<usize>>> = vec![None; n];
    for d in deps {
        if head[d.dependent].replace(d.head).is_some() {
            return Err(format!("token {} has more than one head", d.dependent));
        }
    }
    let roots = deps.iter().filter(|d| d.head.is_none()).count();
    if roots != 1 {
        return Err(format!("expected exactly one ROOT attachment, found {roots}"));
    }
    for start in 0..n {
        let mut cur = start;
        for _ in 0..=n {
            match head[cur] {
                Some(Some(h)) => cur = h,
                _ => break,
            }
            if cur == start {
                return Err(format!("cycle through token {start}"));
            }
        }
    }
    Ok(())
}

fn parse_constituent(v: &Value) -> Result<Constituent, String> {
    match v {
        Value::Number(num) => num
            .as_u64()
            .map(|i| Constituent::Leaf(i as usize))
            .ok_or_else(|| format!("constituency leaf {num} is not a token index")),
        Value::Array(items) => {
            let label = items
                .first()
                .and_then(Value::as_str)
                .ok_or("constituency node must start with a label string")?;
            let children = items[1..].iter().map(parse_constituent).collect::<Result<Vec<_>, _>>()?;
            if children.is_empty() {
                return Err(format!("constituency node {label} has no children"));
            }
            Ok(Constituent::Node { label: label.to_string(), children })
        }
        other => Err(format!("unexpected constituency element {other}")),
    }
}

fn constituent_to_json(c: &Constituent) -> Value {
    match c {
        Constituent::Leaf(i) => Value::from(*i),
        Constituent::Node { label, children } => {
            let mut items = vec![Value::from(label.as_str())];
            items.extend(children.iter().map(constituent_to_json));
            Value::Array(items)
        }
    }
}

/// Serializes a sentence back to the JSON-lines schema.
pub fn sentence_to_json(s: &SentenceAnnotation) -> Value {
    let raw = RawSentence {
        segment: s.segment_index,
        tokens: s
            .tokens
            .iter()
            .map(|t| RawToken { i: t.index, text: t.text.clone(), lemma: t.lemma.clone(), pos: t.pos.clone() })
            .collect(),
        deps: s
            .dependencies
            .iter()
            .map(|d| RawDep {
                head: d.head.map(|h| h as i64).unwrap_or(-1),
                dep: d.dependent,
                rel: d.relation.clone(),
            })
            .collect(),
        constituency: s.constituency.as_ref().map(constituent_to_json),
        srl: s
            .srl_frames
            .iter()
            .map(|f| RawFrame {
                pred: f.predicate_index,
                args: f.args.iter().map(|a| RawArg { role: a.role.clone(), span: [a.span.start, a.span.end] }).collect(),
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("sentence serializes")
}
