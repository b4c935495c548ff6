use serde::{Deserialize, Serialize};

use super::{SentenceAnnotation, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArgumentSource {
    Srl,
    Dependency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    /// PropBank-style role (`ARG1`, `ARGM-MNR`, ...).
    pub role: String,
    pub span: Span,
    pub text: String,
    pub source: ArgumentSource,
}

/// Arguments of the action at `action_index`.
///
/// An SRL frame for the predicate wins. Without one, direct objects,
/// indirect objects and obliques of the action become ARG1, ARG2 and ARGM.
pub fn extract_arguments(sentence: &SentenceAnnotation, action_index: usize) -> Vec<Argument> {
    if let Some(frame) = sentence.srl_frames.iter().find(|f| f.predicate_index == action_index) {
        return frame
            .args
            .iter()
            .map(|a| Argument {
                role: a.role.clone(),
                span: a.span,
                text: sentence.text(a.span),
                source: ArgumentSource::Srl,
            })
            .collect();
    }

    let children = sentence.children();
    let Some(deps) = children.get(&Some(action_index)) else { return Vec::new() };
    deps.iter()
        .filter_map(|d| {
            let role = match d.base_relation().as_str() {
                "obj" | "dobj" => "ARG1",
                "iobj" => "ARG2",
                "obl" | "nmod" | "prep" => "ARGM",
                _ => return None,
            };
            let span = sentence.subtree_span(d.dependent);
            Some(Argument {
                role: role.to_string(),
                span,
                text: sentence.text(span),
                source: ArgumentSource::Dependency,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotation::load_annotations;
    use crate::annotation::testdata::*;

    fn sentence(line: &str) -> SentenceAnnotation {
        load_annotations(line.as_bytes()).unwrap().sentences.remove(0)
    }

    fn roles(args: &[Argument]) -> Vec<(&str, &str)> {
        args.iter().map(|a| (a.role.as_str(), a.text.as_str())).collect()
    }

    #[test]
    fn srl_frame_is_used_when_present() {
        let s = sentence(HELP_SENTENCE);
        let help = extract_arguments(&s, 1);
        assert_eq!(roles(&help), [("ARG1", "me"), ("ARGM-MNR", "by sending $500")]);
        let send = extract_arguments(&s, 5);
        assert_eq!(roles(&send), [("ARG1", "$500.")]);
        assert!(send.iter().all(|a| a.source == ArgumentSource::Srl));
    }

    #[test]
    fn dependency_fallback() {
        let s = sentence(SEND_MONEY);
        let args = extract_arguments(&s, 0);
        assert_eq!(roles(&args), [("ARG1", "the money"), ("ARGM", "to Bob")]);
        assert!(args.iter().all(|a| a.source == ArgumentSource::Dependency));

        let s = sentence(SENT_SIGNING);
        assert_eq!(roles(&extract_arguments(&s, 1)), [("ARG2", "you"), ("ARG1", "this email")]);
    }

    #[test]
    fn srl_wins_over_dependents() {
        let s = sentence(HELP_SENTENCE);
        // help has an obj dependent ("me") too; the frame's ARGM must survive.
        assert!(extract_arguments(&s, 1).iter().any(|a| a.role == "ARGM-MNR"));
    }

    #[test]
    fn nothing_to_extract() {
        let s = sentence(HELLO);
        assert!(extract_arguments(&s, 0).is_empty());
        let s = sentence(CLICK_NO_DEPS);
        assert!(extract_arguments(&s, 0).is_empty());
    }
}
