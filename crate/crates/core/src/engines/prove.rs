use std::fmt::Write as _;

use crate::abelian::AbelianSolver;
use crate::boone::{format_certificate, parse_certificate, verify_certificate, TrivialityCertificate};
use crate::core::{free_reduce, GroupPresentation, Word};
use crate::error::{Error, Result};

use super::budget::Budget;
use super::coset::{CosetEnumerator, CosetTable, EnumStatus, MAX_COSETS};
use super::dovetail::{dovetail, ExecMode, SliceResult, Strategy};
use super::eliminate::{ElimStatus, Eliminator};
use super::words::{relator_conjugate_certificate, TrivialWordEnumerator};

/// Why a word is nontrivial.
#[derive(Debug, Clone)]
pub enum Refutation {
    /// Nontrivial in the abelianization.
    Abelian,
    /// A closed table on which the word moves coset 0.
    Action(CosetTable),
    /// Adding the word as a relator gives the trivial group; this refutes the
    /// word only when the group is known to be nontrivial and simple.
    QuotientTrivial(TrivialProof),
}

#[derive(Debug, Clone)]
pub enum WordVerdict {
    Trivial(TrivialityCertificate),
    Nontrivial(Refutation),
    Unknown,
}

impl WordVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, WordVerdict::Trivial(_))
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, WordVerdict::Nontrivial(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, WordVerdict::Unknown)
    }
}

/// Evidence that a presentation defines the trivial group: certificates for
/// every generator, or a closed one-row coset table, or both.
#[derive(Debug, Clone)]
pub struct TrivialProof {
    pub strategy: String,
    pub table: Option<CosetTable>,
    /// One per generator when present.
    pub certificates: Vec<TrivialityCertificate>,
}

impl TrivialProof {
    pub fn verify(&self, p: &GroupPresentation) -> bool {
        let certs_ok = self.certificates.len() == p.num_generators()
            && self
                .certificates
                .iter()
                .enumerate()
                .all(|(i, c)| verify_certificate(p, c, &Word::generator(i)));
        if !self.certificates.is_empty() || self.table.is_none() {
            return certs_ok;
        }
        let t = self.table.as_ref().expect("checked");
        t.len() == 1 && t.verify(p, &[]).is_ok()
    }
}

/// Text form: a header, then either one certificate block per generator or
/// the line `coset-table 1`.
pub fn format_trivial_proof(p: &GroupPresentation, tp: &TrivialProof) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "trivial {} {}", p.name(), tp.strategy);
    if tp.certificates.is_empty() {
        s.push_str("coset-table 1\n");
    }
    for (i, c) in tp.certificates.iter().enumerate() {
        s.push_str(&format_certificate(p, &Word::generator(i), c));
    }
    s
}

/// Parses [`format_trivial_proof`] output. A table-only proof comes back
/// with `table = None` and no certificates; re-run the enumeration to
/// rebuild the table.
pub fn parse_trivial_proof(p: &GroupPresentation, text: &str) -> Result<TrivialProof> {
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "empty proof".into() })?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "trivial" {
        return Err(Error::Parse { line: 1, msg: "expected `trivial <name> <strategy>`".into() });
    }
    let rest: Vec<&str> = lines.collect();
    let mut blocks: Vec<String> = Vec::new();
    for (i, l) in rest.iter().enumerate() {
        if l.starts_with("target") {
            blocks.push(String::new());
        } else if blocks.is_empty() && !l.trim().is_empty() && l.trim() != "coset-table 1" {
            return Err(Error::Parse { line: i + 2, msg: format!("unexpected line `{l}`") });
        }
        if let Some(b) = blocks.last_mut() {
            b.push_str(l);
            b.push('\n');
        }
    }
    let mut certificates = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let (target, c) = parse_certificate(p, b)?;
        if target != Word::generator(i) {
            return Err(Error::Parse { line: 0, msg: format!("block {i} does not target generator {i}") });
        }
        certificates.push(c);
    }
    Ok(TrivialProof { strategy: toks[2].to_string(), table: None, certificates })
}

struct CosetSearch<F> {
    name: String,
    e: CosetEnumerator,
    on_close: F,
}

impl<T, F: FnMut(&CosetTable) -> Option<T> + Send> Strategy<T> for CosetSearch<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn run_slice(&mut self, steps: u64) -> SliceResult<T> {
        match self.e.run(steps) {
            EnumStatus::Running => SliceResult::Continue,
            EnumStatus::Overflow => SliceResult::Exhausted,
            EnumStatus::Closed => match self.e.table().and_then(|t| (self.on_close)(&t)) {
                Some(v) => SliceResult::Found(v),
                None => SliceResult::Exhausted,
            },
        }
    }
}

struct BlindSearch<F> {
    name: String,
    e: TrivialWordEnumerator,
    on_word: F,
}

impl<T, F: FnMut(&Word, &TrivialityCertificate) -> Option<T> + Send> Strategy<T> for BlindSearch<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn run_slice(&mut self, steps: u64) -> SliceResult<T> {
        for _ in 0..steps {
            let Some(c) = self.e.next_certificate() else { return SliceResult::Exhausted };
            let w = self.e.value(&c);
            if let Some(v) = (self.on_word)(&w, &c) {
                return SliceResult::Found(v);
            }
        }
        SliceResult::Continue
    }
}

struct ElimSearch {
    name: String,
    e: Eliminator,
    generators: usize,
}

impl Strategy<TrivialProof> for ElimSearch {
    fn name(&self) -> &str {
        &self.name
    }

    fn run_slice(&mut self, steps: u64) -> SliceResult<TrivialProof> {
        match self.e.run(steps) {
            ElimStatus::Running => SliceResult::Continue,
            ElimStatus::Stuck => SliceResult::Exhausted,
            ElimStatus::AllKilled => {
                let certificates = (0..self.generators)
                    .map(|g| self.e.certificate(g).expect("every generator killed"))
                    .collect();
                SliceResult::Found(TrivialProof { strategy: self.name.clone(), table: None, certificates })
            }
        }
    }
}

/// Closed one-row table to a proof, attaching certificates when they expand
/// to a reasonable size.
fn proof_from_table(t: &CosetTable, strategy: &str) -> Option<TrivialProof> {
    if t.len() != 1 {
        return None;
    }
    let certs: Option<Vec<_>> = (0..t.generators).map(|g| t.certificate(&Word::generator(g))).collect();
    Some(TrivialProof { strategy: strategy.into(), table: Some(t.clone()), certificates: certs.unwrap_or_default() })
}

pub(crate) fn triviality_strategies<'a>(p: &GroupPresentation, tag: &str) -> Vec<Box<dyn Strategy<TrivialProof> + 'a>> {
    let n = p.num_generators();
    let coset_name = format!("coset{tag}");
    let mut found: Vec<Option<TrivialityCertificate>> = vec![None; n];
    let words_name = format!("words{tag}");
    let words_strategy = words_name.clone();
    vec![
        Box::new(ElimSearch { name: format!("eliminate{tag}"), e: Eliminator::new(p), generators: n }),
        Box::new(CosetSearch {
            name: coset_name.clone(),
            e: CosetEnumerator::new(p, &[], MAX_COSETS),
            on_close: move |t: &CosetTable| proof_from_table(t, &coset_name),
        }),
        Box::new(BlindSearch {
            name: words_name,
            e: TrivialWordEnumerator::new(p),
            on_word: move |w: &Word, c: &TrivialityCertificate| {
                if w.len() == 1 && !w.letters()[0].is_inverse() {
                    let g = w.letters()[0].generator();
                    if found[g].is_none() {
                        found[g] = Some(c.clone());
                    }
                }
                if w.len() == 1 && w.letters()[0].is_inverse() {
                    let g = w.letters()[0].generator();
                    if found[g].is_none() {
                        // g = (g⁻¹)⁻¹: negate every entry and reverse.
                        let mut entries = c.entries.clone();
                        entries.reverse();
                        for e in &mut entries {
                            e.sign = -e.sign;
                        }
                        found[g] = Some(TrivialityCertificate { entries });
                    }
                }
                found.iter().all(Option::is_some).then(|| TrivialProof {
                    strategy: words_strategy.clone(),
                    table: None,
                    certificates: found.iter().map(|c| c.clone().expect("all found")).collect(),
                })
            },
        }),
    ]
}

/// Searches for a proof that `P` is trivial. Strategies, in slice order:
/// generator elimination, coset enumeration over the trivial subgroup, and
/// blind enumeration of trivial words looking for every generator.
pub fn triviality_semi(p: &GroupPresentation, budget: &Budget, mode: ExecMode) -> Option<TrivialProof> {
    if p.num_generators() == 0 {
        return Some(TrivialProof { strategy: "empty".into(), table: None, certificates: Vec::new() });
    }
    let win = dovetail(triviality_strategies(p, ""), budget, mode)?;
    let tp = win.value;
    tp.verify(p).then_some(tp)
}

fn quick_verdict(p: &GroupPresentation, w: &Word) -> Option<WordVerdict> {
    if free_reduce(w).is_empty() {
        return Some(WordVerdict::Trivial(TrivialityCertificate { entries: Vec::new() }));
    }
    if !AbelianSolver::new(p).is_trivial(w) {
        return Some(WordVerdict::Nontrivial(Refutation::Abelian));
    }
    relator_conjugate_certificate(p, w).map(WordVerdict::Trivial)
}

fn decide_by_table(t: &CosetTable, w: &Word) -> Option<WordVerdict> {
    if t.trace(0, w) == Some(0) {
        t.certificate(w).map(WordVerdict::Trivial)
    } else {
        Some(WordVerdict::Nontrivial(Refutation::Action(t.clone())))
    }
}

fn word_strategies<'a>(p: &GroupPresentation, w: &Word) -> Vec<Box<dyn Strategy<WordVerdict> + 'a>> {
    let target = free_reduce(w);
    let w2 = w.clone();
    vec![
        Box::new(CosetSearch {
            name: "coset".into(),
            e: CosetEnumerator::new(p, &[], MAX_COSETS),
            on_close: move |t: &CosetTable| decide_by_table(t, &w2),
        }),
        Box::new(BlindSearch {
            name: "words".into(),
            e: TrivialWordEnumerator::new(p),
            on_word: move |u: &Word, c: &TrivialityCertificate| (*u == target).then(|| WordVerdict::Trivial(c.clone())),
        }),
    ]
}

fn checked(p: &GroupPresentation, w: &Word, v: WordVerdict) -> WordVerdict {
    match &v {
        WordVerdict::Trivial(c) if !verify_certificate(p, c, w) => WordVerdict::Unknown,
        WordVerdict::Nontrivial(Refutation::Action(t)) if t.verify(p, &[]).is_err() || t.trace(0, w) == Some(0) => {
            WordVerdict::Unknown
        }
        _ => v,
    }
}

/// Decides `w = 1` in `P` when a proof or a refutation turns up: free
/// reduction, the abelianization, conjugates of relators, then coset
/// enumeration dovetailed with blind enumeration of trivial words.
pub fn prove_word(p: &GroupPresentation, w: &Word, budget: &Budget, mode: ExecMode) -> WordVerdict {
    if let Some(v) = quick_verdict(p, w) {
        return checked(p, w, v);
    }
    match dovetail(word_strategies(p, w), budget, mode) {
        Some(win) => checked(p, w, win.value),
        None => WordVerdict::Unknown,
    }
}

/// Word problem in a presentation the caller asserts is of a nontrivial
/// simple group. Searches for a proof of `w = 1` in `P` against a proof that
/// `P + w` is trivial. Slice order: coset enumeration of `P`, the triviality
/// strategies of `P + w`, blind enumeration in `P`.
pub fn simple_wp(p: &GroupPresentation, w: &Word, budget: &Budget, mode: ExecMode) -> Result<WordVerdict> {
    p.check_word(w)?;
    if let Some(v) = quick_verdict(p, w) {
        return Ok(checked(p, w, v));
    }
    let pw = p.with_relator(w.clone())?;
    let [coset, words]: [Box<dyn Strategy<WordVerdict>>; 2] =
        word_strategies(p, w).try_into().unwrap_or_else(|_| unreachable!("two word strategies"));
    let mut strategies: Vec<Box<dyn Strategy<WordVerdict>>> = vec![coset];
    for s in triviality_strategies(&pw, "+w") {
        strategies.push(Box::new(Quotient { inner: s }));
    }
    strategies.push(words);
    let Some(win) = dovetail(strategies, budget, mode) else { return Ok(WordVerdict::Unknown) };
    Ok(match win.value {
        WordVerdict::Nontrivial(Refutation::QuotientTrivial(tp)) if !tp.verify(&pw) => WordVerdict::Unknown,
        v => checked(p, w, v),
    })
}

struct Quotient<'a> {
    inner: Box<dyn Strategy<TrivialProof> + 'a>,
}

impl Strategy<WordVerdict> for Quotient<'_> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn run_slice(&mut self, steps: u64) -> SliceResult<WordVerdict> {
        match self.inner.run_slice(steps) {
            SliceResult::Found(tp) => SliceResult::Found(WordVerdict::Nontrivial(Refutation::QuotientTrivial(tp))),
            SliceResult::Continue => SliceResult::Continue,
            SliceResult::Exhausted => SliceResult::Exhausted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{parse_presentation, parse_word};
    use crate::gordon::gordon;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Perm = [u8; 5];

    fn compose(p: &Perm, q: &Perm) -> Perm {
        // apply p, then q
        let mut r = [0; 5];
        for i in 0..5 {
            r[i] = q[p[i] as usize];
        }
        r
    }

    fn inverse(p: &Perm) -> Perm {
        let mut r = [0; 5];
        for i in 0..5 {
            r[p[i] as usize] = i as u8;
        }
        r
    }

    fn eval(gens: &[Perm], w: &Word) -> Perm {
        w.letters().iter().fold([0, 1, 2, 3, 4], |acc, l| {
            let g = gens[l.generator()];
            compose(&acc, &if l.is_inverse() { inverse(&g) } else { g })
        })
    }

    fn a5() -> (GroupPresentation, Vec<Perm>) {
        let p = parse_presentation("group A5\ngens a b\nrel a^2\nrel b^3\nrel a b a b a b a b a b\n").unwrap();
        // a = (0 1)(2 3), b = (0 2 4)
        (p, vec![[1, 0, 3, 2, 4], [2, 1, 4, 3, 0]])
    }

    #[test]
    fn permutation_oracle_is_faithful() {
        let (p, gens) = a5();
        for r in p.relators() {
            assert_eq!(eval(&gens, r), [0, 1, 2, 3, 4]);
        }
        let mut seen = std::collections::HashSet::from([[0u8, 1, 2, 3, 4]]);
        let mut frontier = vec![[0u8, 1, 2, 3, 4]];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = compose(&x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(seen.len(), 60);
    }

    #[test]
    fn simple_wp_agrees_with_permutations() {
        let (p, gens) = a5();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen_trivial = 0;
        for _ in 0..200 {
            let len = rng.gen_range(0..12);
            let w: Word = (0..len).map(|_| crate::core::Letter::new(rng.gen_range(0..2), rng.gen())).collect();
            let v = simple_wp(&p, &w, &Budget::default(), ExecMode::Deterministic).unwrap();
            let truth = eval(&gens, &w) == [0, 1, 2, 3, 4];
            assert!(!v.is_unknown(), "{w:?}");
            assert_eq!(v.is_trivial(), truth, "{w:?}");
            if let WordVerdict::Trivial(c) = &v {
                assert!(verify_certificate(&p, c, &w));
                seen_trivial += 1;
            }
        }
        assert!(seen_trivial > 0);
        let a2 = parse_word(&p, "a^2").unwrap();
        assert!(simple_wp(&p, &a2, &Budget::default(), ExecMode::Deterministic).unwrap().is_trivial());
        let a = parse_word(&p, "a").unwrap();
        assert!(simple_wp(&p, &a, &Budget::default(), ExecMode::Deterministic).unwrap().is_nontrivial());
    }

    #[test]
    fn parallel_mode_agrees() {
        let (p, gens) = a5();
        for text in ["a b a b^-1", "a b a b a b a b a b", "b a b a b", "a b^-1 a b a b^-1 a b"] {
            let w = parse_word(&p, text).unwrap();
            let v = simple_wp(&p, &w, &Budget::default(), ExecMode::Parallel).unwrap();
            assert_eq!(v.is_trivial(), eval(&gens, &w) == [0, 1, 2, 3, 4], "{text}");
            assert!(!v.is_unknown());
        }
    }

    #[test]
    fn triviality() {
        let p = parse_presentation("group T\ngens a b\nrel a\nrel b\n").unwrap();
        assert!(triviality_semi(&p, &Budget::default(), ExecMode::Deterministic).unwrap().verify(&p));
        let x = parse_presentation("group X\ngens x\nrel x\n").unwrap();
        let g = gordon(&x, &Word::generator(0)).unwrap();
        let tp = triviality_semi(&g, &Budget::default(), ExecMode::Deterministic).unwrap();
        assert!(tp.verify(&g));
        let c2 = parse_presentation("group C2\ngens a\nrel a^2\n").unwrap();
        assert!(triviality_semi(&c2, &Budget::steps(100_000), ExecMode::Deterministic).is_none());
    }

    #[test]
    fn trivial_proof_text_round_trip() {
        let x = parse_presentation("group X\ngens x\nrel x\n").unwrap();
        let g = gordon(&x, &Word::generator(0)).unwrap();
        let tp = triviality_semi(&g, &Budget::default(), ExecMode::Deterministic).unwrap();
        let text = format_trivial_proof(&g, &tp);
        let back = parse_trivial_proof(&g, &text).unwrap();
        assert_eq!(back.certificates, tp.certificates);
        assert!(back.verify(&g));
        assert!(parse_trivial_proof(&g, "nonsense").is_err());
    }

    #[test]
    fn prove_word_basics() {
        let p = parse_presentation("group S3\ngens a b\nrel a^2\nrel b^3\nrel a b a b\n").unwrap();
        let d = Budget::default();
        let m = ExecMode::Deterministic;
        assert!(prove_word(&p, &parse_word(&p, "b a b a").unwrap(), &d, m).is_trivial());
        assert!(prove_word(&p, &parse_word(&p, "a b").unwrap(), &d, m).is_nontrivial());
        assert!(prove_word(&p, &parse_word(&p, "b").unwrap(), &d, m).is_nontrivial());
        let f = parse_presentation("group BS\ngens a b\nrel b a b^-1 a^-2\n").unwrap();
        let w = parse_word(&f, "a b a^-1 b^-1 a b a^-1 b^-1").unwrap();
        assert!(prove_word(&f, &w, &Budget::steps(20_000), m).is_unknown());
    }
}
