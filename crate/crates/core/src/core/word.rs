//! Signed generator sequences and free reduction.

use std::fmt;

/// A generator or its formal inverse, packed as `generator << 1 | inverse`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u32) << 1) | inverse as u32)
    }

    pub fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Column index in a coset table: `2 * generator + inverse`.
    pub fn column(self) -> usize {
        self.0 as usize
    }

    pub fn from_column(column: usize) -> Self {
        Letter(column as u32)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// A word over generators and their inverses.
///
/// Words are never reduced implicitly: `len` is the raw symbol count as the
/// word was built, and [`free_reduce`] produces the reduced representative.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Builds a word from `(generator, exponent)` pairs; `(g, -2)` is `g^-1 g^-1`.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(g, e) in powers {
            let l = Letter::new(g, e < 0);
            letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        Word { letters }
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![Letter::pos(g)] }
    }

    pub fn power(g: usize, e: i64) -> Self {
        Self::from_powers(&[(g, e)])
    }

    /// Positive word from generator indices.
    pub fn positive(gens: &[usize]) -> Self {
        Word { letters: gens.iter().map(|&g| Letter::pos(g)).collect() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// Raw length: symbol count before any free reduction.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.is_inverse())
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Plain concatenation, no reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        self.letters.extend_from_slice(&other.letters);
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    /// Exponent sum of each generator, over `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for l in &self.letters {
            v[l.generator()] += l.sign();
        }
        v
    }

    pub fn uses_generator(&self, g: usize) -> bool {
        self.letters.iter().any(|l| l.generator() == g)
    }

    /// Rewrites generator indices through `map`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(map(l.generator()), l.is_inverse()))
                .collect(),
        }
    }

    /// Cyclically reduced core `c` and conjugator `u` with `self ≡ u c u⁻¹` freely.
    pub fn cyclic_core(&self) -> (Word, Word) {
        let r = free_reduce(self);
        let l = &r.letters;
        let mut i = 0;
        let mut j = l.len();
        while j - i >= 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        (Word::from_letters(l[i..j].to_vec()), Word::from_letters(l[..i].to_vec()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:?}", l)?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

/// Stack-based reducer; pushing letters keeps the buffer freely reduced.
#[derive(Default, Clone, Debug)]
pub struct Reducer {
    stack: Vec<Letter>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, l: Letter) {
        if self.stack.last() == Some(&l.inverse()) {
            self.stack.pop();
        } else {
            self.stack.push(l);
        }
    }

    pub fn push_word(&mut self, w: &Word) {
        for &l in w.letters() {
            self.push(l);
        }
    }

    pub fn push_inverse(&mut self, w: &Word) {
        for &l in w.letters().iter().rev() {
            self.push(l.inverse());
        }
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.stack
    }

    pub fn finish(self) -> Word {
        Word::from_letters(self.stack)
    }
}

/// The unique freely reduced word freely equal to `w`.
pub fn free_reduce(w: &Word) -> Word {
    let mut r = Reducer::new();
    r.push_word(w);
    r.finish()
}

/// Reduced product `u·v`.
pub fn reduced_product(u: &Word, v: &Word) -> Word {
    let mut r = Reducer::new();
    r.push_word(u);
    r.push_word(v);
    r.finish()
}

/// Commutator `[u,v] = u⁻¹ v⁻¹ u v`, unreduced.
pub fn commutator(u: &Word, v: &Word) -> Word {
    let mut w = u.inverse();
    w.extend(&v.inverse());
    w.extend(u);
    w.extend(v);
    w
}

/// Free equality.
pub fn freely_equal(u: &Word, v: &Word) -> bool {
    free_reduce(u) == free_reduce(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a() -> Letter {
        Letter::pos(0)
    }
    fn b() -> Letter {
        Letter::pos(1)
    }

    #[test]
    fn cancels_inverse_pair() {
        let w = Word::from_letters(vec![a(), a().inverse()]);
        assert!(free_reduce(&w).is_empty());
    }

    #[test]
    fn cancels_inner_pair() {
        let w = Word::from_letters(vec![a(), b(), b().inverse(), a()]);
        assert_eq!(free_reduce(&w), Word::from_letters(vec![a(), a()]));
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn empty_stays_empty() {
        assert!(free_reduce(&Word::empty()).is_empty());
    }

    #[test]
    fn commutator_convention() {
        let c = commutator(&Word::generator(0), &Word::generator(1));
        assert_eq!(c, Word::from_letters(vec![a().inverse(), b().inverse(), a(), b()]));
    }

    #[test]
    fn cyclic_core_recovers_conjugate() {
        let w = Word::from_letters(vec![b(), a(), a(), b().inverse()]);
        let (core, u) = w.cyclic_core();
        assert_eq!(core, Word::from_letters(vec![a(), a()]));
        let back = u.concat(&core).concat(&u.inverse());
        assert!(freely_equal(&back, &w));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..24)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(w in arb_word()) {
            let r = free_reduce(&w);
            prop_assert!(r.is_reduced());
            prop_assert_eq!(free_reduce(&r.clone()), r.clone());
            prop_assert!(r.len() <= w.len());
        }

        #[test]
        fn reduced_input_is_fixed(w in arb_word()) {
            let r = free_reduce(&w);
            prop_assert_eq!(free_reduce(&r), r);
        }

        #[test]
        fn inverse_cancels(w in arb_word()) {
            prop_assert!(free_reduce(&w.concat(&w.inverse())).is_empty());
        }
    }
}
