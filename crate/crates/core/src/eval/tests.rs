use proptest::prelude::*;

use super::*;
use crate::annotation::{CandidateSource, ClauseCandidate, Span};
use crate::detector::AskFrame;

/// Published result rows: (tp, tn, fp, fn, P, R, F) with metrics in
/// thousandths, cases 0 to 6, aspects Ask, Framing, TopAsk.
const TABLE: [(u64, u64, u64, u64, u64, u64, u64); 21] = [
    (3, 392, 8, 69, 273, 42, 72),
    (9, 422, 25, 16, 265, 360, 305),
    (3, 411, 8, 50, 273, 57, 94),
    (8, 378, 28, 58, 222, 121, 157),
    (14, 420, 30, 8, 318, 636, 424),
    (9, 409, 10, 44, 474, 170, 250),
    (34, 365, 34, 39, 500, 466, 482),
    (15, 437, 10, 10, 600, 600, 600),
    (14, 401, 18, 39, 438, 264, 329),
    (29, 384, 15, 44, 659, 397, 496),
    (15, 437, 10, 10, 600, 600, 600),
    (13, 407, 12, 40, 520, 245, 333),
    (30, 384, 15, 43, 667, 411, 508),
    (15, 437, 10, 10, 600, 600, 600),
    (13, 407, 12, 40, 520, 245, 333),
    (30, 384, 15, 43, 667, 411, 508),
    (15, 437, 10, 10, 600, 600, 600),
    (17, 411, 8, 36, 680, 321, 436),
    (30, 384, 15, 43, 667, 411, 508),
    (15, 437, 10, 10, 600, 600, 600),
    (18, 411, 8, 35, 692, 340, 456),
];

#[test]
fn published_rows_reproduce_within_half_a_thousandth() {
    let tol = Ratio::new(5u64, 10_000);
    let close = |a: Ratio<u64>, b: Ratio<u64>| if a > b { a - b <= tol } else { b - a <= tol };
    for (tp, tn, fp, fn_, p, r, f) in TABLE {
        let c = ConfusionCounts::new(tp, tn, fp, fn_);
        assert_eq!(c.total(), 472);
        let m = metrics(&c);
        for (got, want) in [(m.precision, p), (m.recall, r), (m.f1, f)] {
            assert!(close(got, Ratio::new(want, 1000)), "{c:?}: {got} vs {want}/1000");
        }
    }
}

#[test]
fn f1_matches_count_form() {
    for (tp, tn, fp, fn_, ..) in TABLE {
        let m = metrics(&ConfusionCounts::new(tp, tn, fp, fn_));
        assert_eq!(m.f1, Ratio::new(2 * tp, 2 * tp + fp + fn_));
    }
}

#[test]
fn metric_display() {
    let m = metrics(&ConfusionCounts::new(34, 365, 34, 39));
    assert_eq!(
        [format_metric(m.precision), format_metric(m.recall), format_metric(m.f1)],
        ["0.500", "0.466", "0.482"]
    );
    let zero = metrics(&ConfusionCounts::new(0, 10, 0, 0));
    assert_eq!((zero.precision, zero.recall, zero.f1), (Ratio::from_integer(0), Ratio::from_integer(0), Ratio::from_integer(0)));
}

#[test]
fn label_truth_table() {
    use AskLabel::{Give, Perform};
    let cases = [
        (Some(Perform), Some(Perform), Outcome::Tp),
        (Some(Give), Some(Give), Outcome::Tp),
        (Some(Give), Some(Perform), Outcome::Fp),
        (Some(Perform), Some(Give), Outcome::Fp),
        (None, Some(Perform), Outcome::Fp),
        (None, Some(Give), Outcome::Fp),
        (Some(Perform), None, Outcome::Fn),
        (Some(Give), None, Outcome::Fn),
        (None, None, Outcome::Tn),
    ];
    for (gold, pred, want) in cases {
        assert_eq!(label_outcome(gold, pred), want, "{gold:?} {pred:?}");
    }
    assert_eq!(flag_outcome(true, false), Outcome::Fn);
    assert_eq!(flag_outcome(false, true), Outcome::Fp);
}

fn frame(kind: AskLabel, sent: usize, tok: usize) -> AskFrame {
    AskFrame {
        kind,
        clause: ClauseCandidate {
            sentence_index: sent,
            segment_index: 0,
            action_index: tok,
            lemma: "x".into(),
            pos: "VB".into(),
            clause_span: Span::single(tok),
            source: CandidateSource::Dependency,
        },
        surface: "x".into(),
        arguments: Vec::new(),
        links: Vec::new(),
        confidence: kind.is_ask().then_some(0.7),
        evidence: Vec::new(),
    }
}

fn analysis(email: &str, frames: Vec<AskFrame>, top: Vec<usize>) -> EmailAnalysis {
    let (asks, framings) = frames.into_iter().partition(|f| f.kind.is_ask());
    EmailAnalysis { email_id: email.into(), asks, framings, top_asks: top }
}

fn record(email: &str, sent: usize, tok: usize, gold: Option<AskLabel>, top: bool) -> ValidationRecord {
    ValidationRecord { email_id: email.into(), sentence: sent, token: tok, clause_text: String::new(), gold_kind: gold, gold_top_ask: top }
}

#[test]
fn single_clause_kind_mismatch_is_fp() {
    let gold = [record("e", 0, 1, Some(AskLabel::Give), false)];
    let preds = [analysis("e", vec![frame(AskLabel::Perform, 0, 1)], vec![])];
    assert_eq!(score_aspect(&preds, &gold, Aspect::Ask).unwrap().counts(), ConfusionCounts::new(0, 0, 1, 0));
}

#[test]
fn alignment_exact_nearest_and_unaligned() {
    use AskLabel::*;
    let gold = [
        record("e", 0, 2, Some(Perform), true),
        record("e", 0, 9, Some(Gain), false),
        record("e", 1, 0, None, false),
    ];
    let preds = [analysis(
        "e",
        vec![
            frame(Perform, 0, 3), // nearest: (0, 2)
            frame(Gain, 0, 9),    // exact
            frame(Lose, 0, 8),    // loses to the exact GAIN
            frame(Give, 2, 4),    // no gold clause in sentence 2
        ],
        vec![0],
    )];
    let ask = score_aspect(&preds, &gold, Aspect::Ask).unwrap();
    assert_eq!(ask.outcomes, [Outcome::Tp, Outcome::Tn, Outcome::Tn]);
    assert_eq!(ask.unaligned_fp, 1);
    assert_eq!(ask.counts(), ConfusionCounts::new(1, 2, 1, 0));

    let framing = score_aspect(&preds, &gold, Aspect::Framing).unwrap();
    assert_eq!(framing.counts(), ConfusionCounts::new(1, 2, 0, 0));

    let top = score_aspect(&preds, &gold, Aspect::TopAsk).unwrap();
    assert_eq!(top.counts(), ConfusionCounts::new(1, 2, 0, 0));
}

#[test]
fn missed_and_spurious() {
    use AskLabel::*;
    let gold = [record("a", 0, 0, Some(Give), true), record("b", 0, 4, None, false)];
    let preds = [analysis("a", vec![], vec![]), analysis("b", vec![frame(Lose, 0, 4), frame(Perform, 0, 4)], vec![0])];
    assert_eq!(score_aspect(&preds, &gold, Aspect::Ask).unwrap().counts(), ConfusionCounts::new(0, 0, 1, 1));
    assert_eq!(score_aspect(&preds, &gold, Aspect::Framing).unwrap().counts(), ConfusionCounts::new(0, 1, 1, 0));
    assert_eq!(score_aspect(&preds, &gold, Aspect::TopAsk).unwrap().counts(), ConfusionCounts::new(0, 0, 1, 1));
}

#[test]
fn email_mismatch_is_an_alignment_error() {
    let gold = [record("a", 0, 0, None, false), record("a", 1, 2, None, false)];
    let err = score_aspect(&[analysis("b", vec![], vec![])], &gold, Aspect::Ask).unwrap_err();
    match err {
        EvalError::Alignment { unmatched, .. } => assert_eq!(unmatched, ["a:0:0", "a:1:2"]),
        other => panic!("{other}"),
    }
    let preds = [analysis("a", vec![], vec![]), analysis("z", vec![], vec![])];
    assert!(matches!(score_aspect(&preds, &gold, Aspect::Ask), Err(EvalError::Alignment { .. })));
}

#[test]
fn validation_lines() {
    let text = r#"{"email":"e1","sent":0,"tok":3,"text":"help me","gold":"PERFORM","top":true}

{"email":"e1","sent":1,"tok":0,"text":"stuck","gold":"NONE","top":false}
"#;
    let records = load_validation(text.as_bytes()).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].gold_kind, Some(AskLabel::Perform));
    assert_eq!(records[1].gold_kind, None);
    let back = serde_json::to_string(&records[1]).unwrap();
    assert_eq!(back, r#"{"email":"e1","sent":1,"tok":0,"text":"stuck","gold":"NONE","top":false}"#);

    for bad in [
        r#"{"email":"e","sent":0,"tok":0,"text":"","gold":"LOSE","top":true}"#,
        r#"{"email":"e","sent":0,"tok":0,"text":"","gold":"MAYBE","top":false}"#,
        "{\"email\":\"e\",\"sent\":0,\"tok\":0,\"gold\":\"NONE\"}\n{\"email\":\"e\",\"sent\":0,\"tok\":0,\"gold\":\"GIVE\"}",
        "not json",
    ] {
        assert!(load_validation(bad.as_bytes()).is_err(), "{bad}");
    }
}

fn arb_label() -> impl Strategy<Value = Option<AskLabel>> {
    prop_oneof![Just(None), proptest::sample::select(AskLabel::ALL.to_vec()).prop_map(Some)]
}

proptest! {
    #[test]
    fn perfect_predictions_have_no_errors(labels in proptest::collection::vec(arb_label(), 1..30)) {
        let gold: Vec<_> = labels.iter().enumerate().map(|(i, l)| record("e", i / 4, i % 4, *l, false)).collect();
        let frames = gold.iter().filter_map(|r| r.gold_kind.map(|k| frame(k, r.sentence, r.token))).collect();
        let preds = [analysis("e", frames, vec![])];
        for aspect in Aspect::ALL {
            let c = score_aspect(&preds, &gold, aspect).unwrap().counts();
            prop_assert_eq!(c.fp + c.fn_, 0);
            prop_assert_eq!(c.total(), gold.len() as u64);
        }
    }

    #[test]
    fn aligned_predictions_keep_one_cell_per_clause(
        labels in proptest::collection::vec(arb_label(), 1..20),
        preds in proptest::collection::vec((proptest::sample::select(AskLabel::ALL.to_vec()), 0usize..20), 0..20),
    ) {
        let gold: Vec<_> = labels.iter().enumerate().map(|(i, l)| record("e", 0, i * 2, *l, false)).collect();
        let frames = preds.iter().map(|(k, t)| frame(*k, 0, *t)).collect();
        let analysis = [analysis("e", frames, vec![])];
        for aspect in Aspect::ALL {
            let s = score_aspect(&analysis, &gold, aspect).unwrap();
            prop_assert_eq!(s.unaligned_fp, 0);
            prop_assert_eq!(s.counts().total(), gold.len() as u64);
        }
    }

    #[test]
    fn metrics_stay_in_unit_interval(tp in 0u64..500, tn in 0u64..500, fp in 0u64..500, fn_ in 0u64..500) {
        let m = metrics(&ConfusionCounts::new(tp, tn, fp, fn_));
        let one = Ratio::from_integer(1);
        prop_assert!(m.precision <= one && m.recall <= one && m.f1 <= one);
        prop_assert!(m.f1 <= m.precision.max(m.recall));
        prop_assert!(m.f1 >= m.precision.min(m.recall));
    }
}
