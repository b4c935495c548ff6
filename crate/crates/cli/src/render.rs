use askdetect::{AskFrame, EmailAnalysis};

fn categories(frame: &AskFrame) -> String {
    let mut cats: Vec<&str> = frame.categories().collect();
    cats.dedup();
    cats.iter().map(|c| format!(" [{c}]")).collect()
}

/// e.g. `GAIN won() [finance_money]`
pub fn framing_cell(frame: &AskFrame) -> String {
    format!("{} {}(){}", frame.kind, frame.surface.to_lowercase(), categories(frame))
}

/// e.g. `PERFORM contact (link)`
pub fn ask_cell(frame: &AskFrame) -> String {
    let link = if frame.links.is_empty() { "" } else { " (link)" };
    format!("{} {}{link}{}", frame.kind, frame.surface.to_lowercase(), categories(frame))
}

fn join_or_dash(items: Vec<String>) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.join("; ")
    }
}

/// One row per email: Email | Framing | Ask | Conf. The Conf column is the
/// top-ask confidence.
pub fn analysis_table(analyses: &[EmailAnalysis]) -> String {
    let header = ["Email".to_string(), "Framing".into(), "Ask".into(), "Conf".into()];
    let rows: Vec<[String; 4]> = analyses
        .iter()
        .map(|a| {
            [
                a.email_id.clone(),
                join_or_dash(a.framings.iter().map(framing_cell).collect()),
                join_or_dash(a.asks.iter().map(ask_cell).collect()),
                a.top_confidence().map_or_else(|| "-".into(), |c| format!("{c}")),
            ]
        })
        .collect();

    let mut widths = header.each_ref().map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (cell, w))| if i == 3 { cell.clone() } else { format!("{cell:<w$}") })
            .collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
    }
    out
}
