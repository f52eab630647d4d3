use crate::abelian::AbelianSolver;
use crate::core::{GroupPresentation, Word};

use super::budget::Budget;
use super::dovetail::{SliceResult, Strategy, SLICE};
use super::prove::{triviality_strategies, TrivialProof};
use super::words::ReducedWords;

struct Candidate<'a> {
    word: Word,
    strategies: Vec<Box<dyn Strategy<TrivialProof> + 'a>>,
    live: Vec<bool>,
}

/// Searches for a word `w` whose normal closure is the whole group, i.e. with
/// `P + w` trivial. Candidates are reduced words by length, then
/// lexicographically. Round `k` admits the candidates of length at most `k`
/// and gives each live candidate one slice of `SLICE·2^k` steps per
/// triviality strategy; the first candidate (in candidate order) proven
/// within a round is returned. Candidates with `P + w` nontrivial in the
/// abelianization are dropped at once.
pub fn normal_generator_search(p: &GroupPresentation, budget: &Budget) -> Option<(Word, TrivialProof)> {
    let n = p.num_generators();
    let mut meter = budget.meter();
    let mut words = ReducedWords::new(n).peekable();
    let mut pool: Vec<Candidate> = Vec::new();
    for k in 0usize.. {
        while let Some(w) = words.next_if(|w| w.len() <= k) {
            meter.charge(1);
            if meter.exhausted() {
                return None;
            }
            let pw = p.with_relator(w.clone()).expect("word over P's generators");
            if !AbelianSolver::new(&pw).invariants().is_trivial() {
                continue;
            }
            let strategies = triviality_strategies(&pw, "");
            let live = vec![true; strategies.len()];
            pool.push(Candidate { word: w, strategies, live });
        }
        let slice = SLICE << k.min(16);
        for c in pool.iter_mut() {
            for (i, s) in c.strategies.iter_mut().enumerate() {
                if !c.live[i] {
                    continue;
                }
                let g = meter.grant(slice);
                if g == 0 {
                    return None;
                }
                meter.charge(g);
                match s.run_slice(g) {
                    SliceResult::Found(tp) => {
                        let pw = p.with_relator(c.word.clone()).expect("checked");
                        if tp.verify(&pw) {
                            return Some((c.word.clone(), tp));
                        }
                        c.live[i] = false;
                    }
                    SliceResult::Continue => {}
                    SliceResult::Exhausted => c.live[i] = false,
                }
            }
        }
        pool.retain(|c| c.live.iter().any(|&l| l));
        if meter.exhausted() || (n == 0 && pool.is_empty()) {
            return None;
        }
    }
    None
}

/// The first generator that is nontrivial in the abelianization, a length-1
/// witness that `P` is nontrivial; `None` when `P` is perfect.
pub fn abelianization_pipeline(p: &GroupPresentation) -> Option<Word> {
    let s = AbelianSolver::new(p);
    (0..p.num_generators()).map(Word::generator).find(|g| !s.is_trivial(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::parse_presentation;
    use crate::gordon::gordon;

    #[test]
    fn cyclic_three() {
        let p = parse_presentation("group C3\ngens a\nrel a^3\n").unwrap();
        let (w, tp) = normal_generator_search(&p, &Budget::default()).unwrap();
        assert_eq!(w, Word::generator(0));
        assert!(tp.verify(&p.with_relator(w).unwrap()));
    }

    #[test]
    fn free_rank_two_stays_unknown() {
        let p = parse_presentation("group F2\ngens a b\n").unwrap();
        assert!(normal_generator_search(&p, &Budget::steps(20_000)).is_none());
    }

    #[test]
    fn monotone() {
        let p = parse_presentation("group C3\ngens a\nrel a^3\n").unwrap();
        let small = normal_generator_search(&p, &Budget::steps(5_000)).map(|r| r.0);
        let big = normal_generator_search(&p, &Budget::steps(50_000)).map(|r| r.0);
        if small.is_some() {
            assert_eq!(small, big);
        }
    }

    #[test]
    fn pipeline() {
        let c2 = parse_presentation("group C2\ngens a\nrel a^2\n").unwrap();
        assert_eq!(abelianization_pipeline(&c2), Some(Word::generator(0)));
        let z2 = parse_presentation("group Z2\ngens a b\nrel a b a^-1 b^-1\n").unwrap();
        assert_eq!(abelianization_pipeline(&z2), Some(Word::generator(0)));
        let g = gordon(&c2, &Word::generator(0)).unwrap();
        assert_eq!(abelianization_pipeline(&g), None);
    }
}
