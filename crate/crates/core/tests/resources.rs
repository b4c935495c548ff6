use std::path::{Path, PathBuf};

use askdetect::lexicon::{diff_label, revert_deltas, AskLabel, LexiconSource, Provenance};
use askdetect::Resources;

fn demo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../resources/demo")
}

/// (label, sign) line counts read straight from the delta file.
fn delta_lines(label: &str, sign: &str) -> i64 {
    std::fs::read_to_string(demo().join("deltas.tsv"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            cols.len() == 3 && cols[0] == label && cols[1] == sign
        })
        .count() as i64
}

#[test]
fn delta_arithmetic_matches_the_delta_file() {
    let r = Resources::load(&demo()).unwrap();
    for label in AskLabel::ALL {
        let net = r.lcs_plus.count(label) as i64 - r.lcs.count(label) as i64;
        assert_eq!(net, delta_lines(label.as_str(), "+") - delta_lines(label.as_str(), "-"), "{label}");
    }
    assert_eq!(r.lcs_plus.count(AskLabel::Perform) as i64 - r.lcs.count(AskLabel::Perform) as i64, 38);
    assert_eq!(r.lcs_plus.count(AskLabel::Lose) as i64 - r.lcs.count(AskLabel::Lose) as i64, -163);
    let (added, removed) = diff_label(&r.lcs, &r.lcs_plus, AskLabel::Perform);
    assert_eq!((added.len(), removed.len()), (44, 6));
}

#[test]
fn inverse_delta_restores_lcs() {
    let r = Resources::load(&demo()).unwrap();
    let restored = revert_deltas(&r.lcs_plus, &r.deltas).unwrap();
    assert_eq!(restored.source, LexiconSource::Lcs);
    assert_eq!(restored.entries, r.lcs.entries);
}

#[test]
fn thesaurus_counts_match_published_lists() {
    let r = Resources::load(&demo()).unwrap();
    let counts: Vec<usize> = AskLabel::ALL.iter().map(|l| r.thesaurus.count(*l)).collect();
    assert_eq!(counts, [44, 55, 41, 53]);
    assert_eq!(r.manifest.unwrap().provenance, Provenance::Demo);
}
