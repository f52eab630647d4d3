//! Enumeration of reduced words and of products of conjugates of relators.

use std::collections::HashSet;

use crate::boone::{check_certificate, CertEntry, TrivialityCertificate};
use crate::core::{GroupPresentation, Letter, Reducer, Word};

use super::budget::Budget;

/// Reduced words over `n` generators, by length and then lexicographically
/// in column order `g₀, g₀⁻¹, g₁, …`.
#[derive(Debug, Clone)]
pub struct ReducedWords {
    width: usize,
    cur: Option<Vec<usize>>,
    started: bool,
}

impl ReducedWords {
    pub fn new(generators: usize) -> Self {
        ReducedWords { width: 2 * generators, cur: Some(Vec::new()), started: false }
    }

    /// Starts at the first word of length `len`.
    pub fn from_length(generators: usize, len: usize) -> Self {
        let cur = (generators > 0 || len == 0).then(|| vec![0; len]);
        ReducedWords { width: 2 * generators, cur, started: false }
    }

    fn fill_min(v: &mut [usize], from: usize) {
        for i in from..v.len() {
            v[i] = if i > 0 && v[i - 1] == 1 { 1 } else { 0 };
        }
    }

    fn advance(&mut self) {
        let Some(v) = self.cur.as_mut() else { return };
        let mut i = v.len();
        while i > 0 {
            i -= 1;
            let mut c = v[i] + 1;
            while c < self.width && i > 0 && c == v[i - 1] ^ 1 {
                c += 1;
            }
            if c < self.width {
                v[i] = c;
                Self::fill_min(v, i + 1);
                return;
            }
        }
        if self.width == 0 {
            self.cur = None;
            return;
        }
        let len = v.len() + 1;
        *v = vec![0; len];
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.started {
            self.advance();
        }
        self.started = true;
        self.cur.as_ref().map(|v| v.iter().map(|&c| Letter::from_column(c)).collect())
    }
}

/// All reduced words of length exactly `len`.
pub fn reduced_words_of_length(generators: usize, len: usize) -> Vec<Word> {
    ReducedWords::from_length(generators, len).take_while(|w| w.len() == len).collect()
}

#[derive(Debug, Clone)]
struct Atom {
    conjugator: Word,
    relator: usize,
    sign: i8,
}

/// Products of conjugates `u r^±1 u⁻¹`, enumerated by total size (each
/// entry costs `|u| + 1`), then by the sizes of the entries in order, then
/// lexicographically by entry (conjugator, relator, sign `+` before `-`).
#[derive(Debug, Clone)]
pub struct TrivialWordEnumerator {
    generators: usize,
    relators: Vec<(usize, Word)>,
    atoms: Vec<Vec<Atom>>,
    size: usize,
    parts: Vec<usize>,
    odometer: Vec<usize>,
    started: bool,
    done: bool,
}

impl TrivialWordEnumerator {
    pub fn new(p: &GroupPresentation) -> Self {
        let relators: Vec<(usize, Word)> = p
            .relators()
            .iter()
            .enumerate()
            .filter(|(_, r)| !crate::core::free_reduce(r).is_empty())
            .map(|(i, r)| (i, r.clone()))
            .collect();
        TrivialWordEnumerator {
            generators: p.num_generators(),
            relators,
            atoms: vec![Vec::new()],
            size: 0,
            parts: Vec::new(),
            odometer: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn atoms_of(&mut self, k: usize) -> usize {
        while self.atoms.len() <= k {
            let len = self.atoms.len() - 1;
            let mut v = Vec::new();
            for u in reduced_words_of_length(self.generators, len) {
                for &(i, _) in &self.relators {
                    for sign in [1i8, -1] {
                        v.push(Atom { conjugator: u.clone(), relator: i, sign });
                    }
                }
            }
            self.atoms.push(v);
        }
        self.atoms[k].len()
    }

    fn next_composition(&mut self) -> bool {
        // Lexicographic successor among compositions of `size`.
        if self.parts.len() <= 1 {
            return false;
        }
        let last = self.parts.pop().expect("nonempty");
        *self.parts.last_mut().expect("nonempty") += 1;
        self.parts.extend(std::iter::repeat_n(1, last - 1));
        true
    }

    fn composition_usable(&mut self) -> bool {
        let parts = self.parts.clone();
        parts.iter().all(|&k| self.atoms_of(k) > 0)
    }

    fn advance(&mut self) -> bool {
        if self.relators.is_empty() {
            return false;
        }
        // Odometer over the current composition.
        let mut i = self.odometer.len();
        while i > 0 {
            i -= 1;
            self.odometer[i] += 1;
            if self.odometer[i] < self.atoms[self.parts[i]].len() {
                return true;
            }
            self.odometer[i] = 0;
        }
        loop {
            if !self.next_composition() {
                self.size += 1;
                self.parts = vec![1; self.size];
            }
            if self.composition_usable() {
                self.odometer = vec![0; self.parts.len()];
                return true;
            }
        }
    }

    /// The next certificate, or `None` once the enumeration is finished
    /// (only when there are no nontrivial relators).
    pub fn next_certificate(&mut self) -> Option<TrivialityCertificate> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(TrivialityCertificate { entries: Vec::new() });
        }
        if !self.advance() {
            self.done = true;
            return None;
        }
        let entries = self
            .parts
            .iter()
            .zip(&self.odometer)
            .map(|(&k, &j)| {
                let a = &self.atoms[k][j];
                CertEntry { relator: a.relator, sign: a.sign, conjugator: a.conjugator.clone() }
            })
            .collect();
        Some(TrivialityCertificate { entries })
    }

    /// Freely reduced product of a certificate produced by this enumerator.
    pub fn value(&self, c: &TrivialityCertificate) -> Word {
        let mut r = Reducer::new();
        for e in &c.entries {
            let rel = &self.relators.iter().find(|(i, _)| *i == e.relator).expect("own relator").1;
            r.push_word(&e.conjugator);
            if e.sign > 0 {
                r.push_word(rel);
            } else {
                r.push_inverse(rel);
            }
            r.push_inverse(&e.conjugator);
        }
        r.finish()
    }
}

/// Distinct trivial words with their certificates, in enumeration order, for
/// as many candidates as the budget allows (one step per candidate).
pub fn enumerate_trivial_words(p: &GroupPresentation, budget: &Budget) -> Vec<(Word, TrivialityCertificate)> {
    let mut e = TrivialWordEnumerator::new(p);
    let mut meter = budget.meter();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    while !meter.exhausted() {
        meter.charge(1);
        let Some(c) = e.next_certificate() else { break };
        let w = e.value(&c);
        if seen.insert(w.clone()) {
            out.push((w, c));
        }
    }
    out
}

/// A one-entry certificate when `w` is freely a conjugate of a relator or
/// its inverse.
pub fn relator_conjugate_certificate(p: &GroupPresentation, w: &Word) -> Option<TrivialityCertificate> {
    let (c, u) = w.cyclic_core();
    if c.is_empty() {
        return None;
    }
    let ci = c.inverse();
    for (j, r) in p.relators().iter().enumerate() {
        let (core, v) = r.cyclic_core();
        if core.len() != c.len() {
            continue;
        }
        let letters = core.letters();
        for k in 0..letters.len() {
            let rot: Word = letters[k..].iter().chain(&letters[..k]).copied().collect();
            let sign = if rot == c {
                1
            } else if rot == ci {
                -1
            } else {
                continue;
            };
            // w = u x⁻¹ v⁻¹ r^±1 v x u⁻¹ with x = core[..k]
            let x = Word::from_letters(letters[..k].to_vec());
            let conj = crate::core::free_reduce(&u.concat(&x.inverse()).concat(&v.inverse()));
            let cert = TrivialityCertificate { entries: vec![CertEntry { relator: j, sign, conjugator: conj }] };
            if check_certificate(p, &cert, w).is_ok() {
                return Some(cert);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boone::verify_certificate;
    use crate::core::{free_reduce, parse_presentation, parse_word};

    #[test]
    fn reduced_word_order() {
        let ws: Vec<Word> = ReducedWords::new(1).take(5).collect();
        assert_eq!(ws, vec![Word::empty(), Word::power(0, 1), Word::power(0, -1), Word::power(0, 2), Word::power(0, -2)]);
        // 2 generators: 1 + 4 + 12 + 36 reduced words up to length 3.
        let ws: Vec<Word> = ReducedWords::new(2).take_while(|w| w.len() <= 3).collect();
        assert_eq!(ws.len(), 1 + 4 + 12 + 36);
        assert!(ws.iter().all(Word::is_reduced));
        let set: HashSet<_> = ws.iter().cloned().collect();
        assert_eq!(set.len(), ws.len());
        assert_eq!(ReducedWords::new(0).collect::<Vec<_>>(), vec![Word::empty()]);
        assert_eq!(reduced_words_of_length(2, 2).len(), 12);
    }

    #[test]
    fn one_relator_one_generator() {
        let p = parse_presentation("group C1\ngens a\nrel a\n").unwrap();
        let out = enumerate_trivial_words(&p, &Budget::steps(10));
        assert_eq!(out[0].0, Word::empty());
        assert_eq!(out[1].0, Word::generator(0));
        assert_eq!(out[1].1.len(), 1);
    }

    #[test]
    fn free_group_only_empty() {
        let p = parse_presentation("group F\ngens a\n").unwrap();
        let out = enumerate_trivial_words(&p, &Budget::steps(1000));
        assert_eq!(out.len(), 1);
        assert!(out[0].0.is_empty());
    }

    #[test]
    fn every_emitted_pair_verifies() {
        let p = parse_presentation("group S3\ngens a b\nrel a^2\nrel b^3\nrel a b a b\n").unwrap();
        let out = enumerate_trivial_words(&p, &Budget::steps(3000));
        assert!(out.len() > 50);
        for (w, c) in &out {
            assert!(verify_certificate(&p, c, w));
            assert_eq!(*w, free_reduce(w));
        }
        let again = enumerate_trivial_words(&p, &Budget::steps(3000));
        assert_eq!(out.len(), again.len());
        assert!(out.iter().zip(&again).all(|(a, b)| a.0 == b.0));
        // Larger budgets extend the sequence.
        let more = enumerate_trivial_words(&p, &Budget::steps(6000));
        assert!(more.len() >= out.len() && more[..out.len()].iter().zip(&out).all(|(a, b)| a.0 == b.0));
    }

    #[test]
    fn conjugate_match() {
        let p = parse_presentation("group P\ngens a b\nrel a b a^-1 b^-2\n").unwrap();
        for text in ["a b a^-1 b^-2", "b^-2 a b a^-1", "b^2 a b^-1 a^-1", "a a b a^-1 b^-2 a^-1", "b a^-1 b^-2 a b b^-1"] {
            let w = parse_word(&p, text).unwrap();
            let c = relator_conjugate_certificate(&p, &w).unwrap();
            assert!(verify_certificate(&p, &c, &w), "{text}");
        }
        assert!(relator_conjugate_certificate(&p, &parse_word(&p, "a b").unwrap()).is_none());
        assert!(relator_conjugate_certificate(&p, &Word::empty()).is_none());
    }
}
