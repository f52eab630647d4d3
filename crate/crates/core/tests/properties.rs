//! Property tests over randomly generated presentations, words and zoo inputs.

use proptest::prelude::*;

use fpgroups::abelian::{abelian_invariants, abelian_word_problem, is_perfect};
use fpgroups::boone::{beta, boone_encode, verify_certificate};
use fpgroups::core::format_presentation;
use fpgroups::engines::{prove_word, triviality_semi, Budget, ExecMode, WordVerdict};
use fpgroups::gadgets::{phi_family, pi, psi};
use fpgroups::gordon::gordon;
use fpgroups::machine::{phi_input, run, zoo};
use fpgroups::post::{post_encode, rewrite_search, verify_derivation, SearchMode, SearchOutcome};
use fpgroups::{abelianize, free_product, GroupPresentation, Letter, Word};

fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect())
}

fn arb_presentation() -> impl Strategy<Value = GroupPresentation> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(arb_word(n, 8), 0..=4).prop_map(move |rels| {
            GroupPresentation::from_names("P", &["x", "y", "z"][..n], rels).unwrap()
        })
    })
}

fn arb_presentation_and_word() -> impl Strategy<Value = (GroupPresentation, Word)> {
    arb_presentation().prop_flat_map(|p| {
        let n = p.num_generators();
        (Just(p), arb_word(n, 8))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_product_counts_and_invariants(p in arb_presentation(), q in arb_presentation()) {
        let pq = free_product(&p, &q);
        prop_assert_eq!(pq.num_generators(), p.num_generators() + q.num_generators());
        prop_assert_eq!(pq.num_relators(), p.num_relators() + q.num_relators());
        prop_assert_eq!(abelian_invariants(&pq), abelian_invariants(&p).direct_sum(&abelian_invariants(&q)));
    }

    #[test]
    fn abelianize_adds_commutators(p in arb_presentation()) {
        let n = p.num_generators();
        prop_assert_eq!(abelianize(&p).num_relators(), p.num_relators() + n * (n - 1) / 2);
    }

    /// `Z^r ⊕ ⊕ Z/dᵢ` given by power relators and commutators; a word is
    /// trivial exactly when each torsion coordinate vanishes mod `dᵢ` and each
    /// free coordinate vanishes.
    #[test]
    fn abelian_wp_matches_residues(
        orders in prop::collection::vec(prop_oneof![Just(0i64), 2i64..=20], 1..=3),
        w in arb_word(3, 12),
    ) {
        let n = orders.len();
        prop_assume!(orders.iter().filter(|&&d| d == 0).count() <= 2);
        let w: Word = w.letters().iter().filter(|l| l.generator() < n).copied().collect();
        let mut rels: Vec<Word> = orders.iter().enumerate().filter(|(_, &d)| d > 0).map(|(g, &d)| Word::power(g, d)).collect();
        for i in 0..n {
            for j in i + 1..n {
                rels.push(fpgroups::commutator(&Word::generator(i), &Word::generator(j)));
            }
        }
        let p = GroupPresentation::from_names("A", &["a", "b", "c"][..n], rels).unwrap();
        let e = w.exponent_sums(n);
        let truth = e.iter().zip(&orders).all(|(&x, &d)| if d == 0 { x == 0 } else { x.rem_euclid(d) == 0 });
        prop_assert_eq!(abelian_word_problem(&p, &w), truth);
    }

    #[test]
    fn gordon_counts_perfect_uniform((p, w) in arb_presentation_and_word()) {
        let g = gordon(&p, &w).unwrap();
        prop_assert_eq!(g.num_generators(), p.num_generators() + 3);
        prop_assert_eq!(g.num_relators(), p.num_relators() + p.num_generators() + 3);
        prop_assert!(is_perfect(&g));
        prop_assert_eq!(format_presentation(&g), format_presentation(&gordon(&p, &w).unwrap()));
    }

    #[test]
    fn gordon_commutes_with_renaming((p, w) in arb_presentation_and_word()) {
        let n = p.num_generators();
        let renamed = GroupPresentation::from_names("P", &["u", "v", "s"][..n], p.relators().to_vec()).unwrap();
        let g = gordon(&p, &w).unwrap();
        let h = gordon(&renamed, &w).unwrap();
        prop_assert_eq!(g.relators(), h.relators());
        prop_assert_eq!(&h.generators()[..n], renamed.generators());
        prop_assert_eq!(&g.generators()[n..], &h.generators()[n..]);
    }

    /// Anything the engine proves is checked; deterministic runs repeat; a
    /// larger budget never loses an answer.
    #[test]
    fn prove_word_sound_deterministic_monotone((p, w) in arb_presentation_and_word()) {
        let small = Budget::steps(2_000);
        let m = ExecMode::Deterministic;
        let a = prove_word(&p, &w, &small, m);
        let b = prove_word(&p, &w, &small, m);
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
        if let WordVerdict::Trivial(c) = &a {
            prop_assert!(verify_certificate(&p, c, &w));
        }
        let big = prove_word(&p, &w, &Budget::steps(20_000), m);
        prop_assert!(a.is_unknown() || big.is_trivial() == a.is_trivial() && !big.is_unknown());
    }

    #[test]
    fn triviality_proofs_verify(p in arb_presentation()) {
        let m = ExecMode::Deterministic;
        let a = triviality_semi(&p, &Budget::steps(5_000), m);
        if let Some(tp) = &a {
            prop_assert!(tp.verify(&p));
            prop_assert!(abelian_invariants(&p).is_trivial());
        }
        let b = triviality_semi(&p, &Budget::steps(50_000), m);
        prop_assert!(a.is_none() || b.is_some());
    }

    #[test]
    fn traces_are_deterministic(mi in 0usize..5, n in 0usize..6, budget in 0usize..60) {
        let m = &zoo::all()[mi];
        let t = run(m, &phi_input(n), budget).unwrap();
        prop_assert_eq!(&t, &run(m, &phi_input(n), budget).unwrap());
        prop_assert!(t.configurations.len() == t.steps() + 1 && t.steps() <= budget);
    }

    #[test]
    fn gadget_outputs_are_perfect_and_uniform(mi in 0usize..5, n in 0usize..3) {
        let m = &zoo::all()[mi];
        for p in [pi(m, n).unwrap(), psi(m, n).unwrap(), phi_family(m, n).unwrap()] {
            prop_assert!(is_perfect(&p));
        }
        prop_assert_eq!(format_presentation(&pi(m, n).unwrap()), format_presentation(&pi(m, n).unwrap()));
    }
}

#[test]
fn post_encodings_are_special_and_searches_verify() {
    for m in zoo::all() {
        let enc = post_encode(&m).unwrap();
        enc.presentation.check_special().unwrap();
        let t = run(&m, &phi_input(0), 50).unwrap();
        if !t.halted() {
            continue;
        }
        let from = enc.start_word(&m, &phi_input(0));
        match rewrite_search(&enc.presentation, &from, &enc.target_word(), 20_000, SearchMode::Deterministic) {
            SearchOutcome::Found(d) => assert!(verify_derivation(&enc.presentation, &d), "{}", m.name()),
            SearchOutcome::Unknown { .. } => {}
        }
    }
}

#[test]
fn boone_encoding_is_uniform() {
    for m in zoo::all() {
        let a = boone_encode(&m).unwrap();
        let b = boone_encode(&m).unwrap();
        assert_eq!(format_presentation(&a.presentation), format_presentation(&b.presentation));
        let w = Word::positive(&phi_input(2));
        assert_eq!(beta(&a, &w).unwrap(), beta(&b, &w).unwrap());
    }
}
