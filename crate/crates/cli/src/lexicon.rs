use askdetect::lexicon::{diff_label, AskLabel, LexiconSource};
use askdetect::Resources;
use serde_json::json;

use crate::args::{Format, LexiconCommand};
use crate::{input_error, CliError};

pub fn run(resources: &Resources, cmd: &LexiconCommand) -> Result<(), CliError> {
    let text = match cmd {
        LexiconCommand::Lookup { lemma, source, format } => lookup(resources, lemma, *source, *format),
        LexiconCommand::Diff { from, to, label, format } => diff(resources, *from, *to, *label, *format),
        LexiconCommand::Counts { source, format } => counts(resources, *source, *format),
    }
    .map_err(input_error)?;
    print!("{text}");
    Ok(())
}

fn lookup(r: &Resources, lemma: &str, source: LexiconSource, format: Format) -> serde_json::Result<String> {
    let mut labels: Vec<&str> = r.lexicon(source).lookup(&lemma.trim().to_lowercase()).iter().map(|l| l.as_str()).collect();
    labels.sort_unstable();
    Ok(match format {
        Format::Json => format!("{}\n", json!({ "lemma": lemma, "source": source, "labels": labels })),
        Format::Table => format!("{}\n", labels.join(", ")),
    })
}

fn diff(
    r: &Resources,
    from: LexiconSource,
    to: LexiconSource,
    label: Option<AskLabel>,
    format: Format,
) -> serde_json::Result<String> {
    let labels: Vec<AskLabel> = label.map_or_else(|| AskLabel::ALL.to_vec(), |l| vec![l]);
    let (a, b) = (r.lexicon(from), r.lexicon(to));
    let mut out = String::new();
    let mut entries = Vec::new();
    for l in labels {
        let (added, removed) = diff_label(a, b, l);
        let net = added.len() as i64 - removed.len() as i64;
        match format {
            Format::Json => entries.push(json!({
                "label": l, "removed": removed, "added": added, "net": net
            })),
            Format::Table => {
                out.push_str(&format!("{l}: {} removed, {} added (net {net:+})\n", removed.len(), added.len()));
                if !removed.is_empty() {
                    out.push_str(&format!("  - {}\n", removed.join(" ")));
                }
                if !added.is_empty() {
                    out.push_str(&format!("  + {}\n", added.join(" ")));
                }
            }
        }
    }
    if format == Format::Json {
        out = format!("{}\n", serde_json::to_string_pretty(&json!({ "from": from, "to": to, "labels": entries }))?);
    }
    Ok(out)
}

fn counts(r: &Resources, source: Option<LexiconSource>, format: Format) -> serde_json::Result<String> {
    let sources: Vec<LexiconSource> = source.map_or_else(|| LexiconSource::ALL.to_vec(), |s| vec![s]);
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = sources
                .iter()
                .map(|s| (s.as_str().to_string(), serde_json::to_value(r.lexicon(*s).counts()).unwrap_or_default()))
                .collect();
            Ok(format!("{}\n", serde_json::to_string_pretty(&map)?))
        }
        Format::Table => {
            let mut out = format!("{:<10}", "Source");
            for l in AskLabel::ALL {
                out.push_str(&format!(" {:>7}", l.as_str()));
            }
            out.push('\n');
            for s in sources {
                out.push_str(&format!("{:<10}", s.as_str()));
                for l in AskLabel::ALL {
                    out.push_str(&format!(" {:>7}", r.lexicon(s).count(l)));
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}
