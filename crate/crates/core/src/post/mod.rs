//! Post's special semigroup `Γ(T)` of a Turing machine: encoding, derivations
//! compiled from halting runs, an exact derivation verifier and a bounded
//! derivation search.

mod derivation;
mod encode;
mod semigroup;

pub use derivation::{
    apply_step, check_derivation, format_derivation, parse_derivation, rewrite_search,
    step_sides, successors, verify_derivation, Derivation, Direction, RewriteStep, SearchMode,
    SearchOutcome,
};
pub use encode::{derive_from_trace, post_encode, PostEncoding, QuadRelations, POST_SCHEMA};
pub use semigroup::{
    format_semigroup, parse_semigroup, LetterKind, PositiveWord, Relation, SemigroupPresentation,
    SpecialWord,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{phi_input, run, zoo};

    fn halt1_derivation() -> (PostEncoding, Derivation) {
        let m = zoo::halt1();
        let enc = post_encode(&m).unwrap();
        let t = run(&m, &[1], 10).unwrap();
        let d = derive_from_trace(&enc, &m, &t).unwrap();
        (enc, d)
    }

    #[test]
    fn relation_counts() {
        assert_eq!(post_encode(&zoo::halt1()).unwrap().presentation.relations().len(), 7);
        assert_eq!(post_encode(&zoo::loop_machine()).unwrap().presentation.relations().len(), 12);
    }

    #[test]
    fn letters() {
        let p = post_encode(&zoo::halt1()).unwrap().presentation;
        assert_eq!(p.generators(), ["h", "s0", "s1", "q", "qhat", "q1", "qh"]);
        assert_eq!(p.s_letters().count(), 3);
        assert_eq!(p.q_letters().count(), 4);
    }

    #[test]
    fn halt1_text() {
        let p = post_encode(&zoo::halt1()).unwrap().presentation;
        assert_eq!(
            format_semigroup(&p),
            "semigroup POST-HALT1\nsletters h s0 s1\nqletters q qhat q1 qh\n\
             rel q1 s1 = qh s1\nrel qh s0 = qh\nrel qh s1 = qh\nrel qh h = qhat h\n\
             rel s0 qhat = qhat\nrel s1 qhat = qhat\nrel h qhat h = q\n"
        );
    }

    #[test]
    fn every_zoo_encoding_is_special() {
        for m in zoo::all() {
            let enc = post_encode(&m).unwrap();
            enc.presentation.check_special().unwrap();
            let text = format_semigroup(&enc.presentation);
            assert_eq!(parse_semigroup(&text).unwrap(), enc.presentation);
        }
    }

    #[test]
    fn special_form_violation_reported() {
        let g = vec!["s".to_string(), "q".to_string(), "p".to_string()];
        let kinds = vec![LetterKind::S, LetterKind::Q, LetterKind::Q];
        let rels = vec![
            Relation { lhs: vec![1], rhs: vec![2] },
            Relation { lhs: vec![1, 2], rhs: vec![0, 1] },
        ];
        let s = SemigroupPresentation::new("S", g, kinds, rels).unwrap();
        assert!(matches!(s.check_special(), Err(crate::Error::NotSpecial { index: 1, .. })));
    }

    #[test]
    fn halt1_derivation_by_hand() {
        let (enc, d) = halt1_derivation();
        let p = &enc.presentation;
        let words: Vec<String> = {
            let mut w = d.start.clone();
            let mut out = vec![p.format_word(&w)];
            for st in &d.steps {
                w = apply_step(p, &w, st).unwrap();
                out.push(p.format_word(&w));
            }
            out
        };
        assert_eq!(words, ["h q1 s1 h", "h qh s1 h", "h qh h", "h qhat h", "q"]);
        assert!(verify_derivation(p, &d));
    }

    #[test]
    fn step_count_formula() {
        for m in zoo::all() {
            let enc = post_encode(&m).unwrap();
            for n in 0..=5 {
                let t = run(&m, &phi_input(n), 50).unwrap();
                if !t.halted() {
                    continue;
                }
                let d = derive_from_trace(&enc, &m, &t).unwrap();
                let last = t.last();
                assert_eq!(d.len(), t.steps() + last.left.len() + last.right.len() + 2);
                assert!(verify_derivation(&enc.presentation, &d));
            }
        }
    }

    #[test]
    fn non_halted_trace_rejected() {
        let m = zoo::loop_machine();
        let enc = post_encode(&m).unwrap();
        let t = run(&m, &[1], 5).unwrap();
        assert!(derive_from_trace(&enc, &m, &t).is_err());
    }

    #[test]
    fn search_finds_halt1() {
        let (enc, d) = halt1_derivation();
        for mode in [SearchMode::Deterministic, SearchMode::Parallel] {
            let SearchOutcome::Found(found) =
                rewrite_search(&enc.presentation, &d.start, &[enc.q], 10_000, mode)
            else {
                panic!("not found");
            };
            assert_eq!(found.len(), 4);
            assert!(verify_derivation(&enc.presentation, &found));
        }
    }

    #[test]
    fn search_modes_agree() {
        let m = zoo::scan();
        let enc = post_encode(&m).unwrap();
        let start = enc.start_word(&m, &phi_input(1));
        let a = rewrite_search(&enc.presentation, &start, &[enc.q], 5_000, SearchMode::Deterministic);
        let b = rewrite_search(&enc.presentation, &start, &[enc.q], 5_000, SearchMode::Parallel);
        assert_eq!(a, b);
        assert!(matches!(a, SearchOutcome::Found(_)));
    }

    #[test]
    fn search_trivial_and_unknown() {
        let m = zoo::loop_machine();
        let enc = post_encode(&m).unwrap();
        let start = enc.start_word(&m, &[1]);
        let same = rewrite_search(&enc.presentation, &start, &start, 0, SearchMode::Deterministic);
        assert!(matches!(same, SearchOutcome::Found(d) if d.is_empty()));
        let out = rewrite_search(&enc.presentation, &start, &[enc.q], 500, SearchMode::Deterministic);
        assert!(matches!(out, SearchOutcome::Unknown { .. }));
    }

    #[test]
    fn mutations_rejected() {
        let (enc, d) = halt1_derivation();
        let p = &enc.presentation;
        let mut shifted = d.clone();
        shifted.steps[0].offset += 1;
        assert!(!verify_derivation(p, &shifted));
        let mut flipped = d.clone();
        flipped.steps[1].direction = flipped.steps[1].direction.flip();
        assert!(!verify_derivation(p, &flipped));
        let mut bad_index = d.clone();
        bad_index.steps[2].relation = 99;
        assert!(!verify_derivation(p, &bad_index));
        let mut wrong_end = d.clone();
        wrong_end.end = vec![enc.qhat];
        assert!(!verify_derivation(p, &wrong_end));
        let empty = Derivation { start: d.start.clone(), steps: vec![], end: d.start.clone() };
        assert!(verify_derivation(p, &empty));
    }

    #[test]
    fn derivation_text_round_trip() {
        let (enc, d) = halt1_derivation();
        let text = format_derivation(&enc.presentation, &d);
        assert_eq!(
            text,
            "derivation POST-HALT1\nstart h q1 s1 h\nend q\nstep 0 LR 1\nstep 2 LR 1\nstep 3 LR 1\nstep 6 LR 0\n"
        );
        assert_eq!(parse_derivation(&enc.presentation, &text).unwrap(), d);
        let e = parse_derivation(&enc.presentation, "start h\nend q\nstep 0 UP 1\n").unwrap_err();
        assert!(matches!(e, crate::Error::Parse { line: 3, .. }));
    }
}
