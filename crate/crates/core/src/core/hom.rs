use super::word::{Reducer, Word};
use crate::error::{Error, Result};

/// A map from source generators to words over a target generating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    images: Vec<Word>,
}

impl Homomorphism {
    pub fn new(images: Vec<Word>) -> Self {
        Homomorphism { images }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism { images: (0..n).map(Word::generator).collect() }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn source_rank(&self) -> usize {
        self.images.len()
    }

    /// Sum of image lengths.
    pub fn total_length(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }

    /// `h ∘ self`: first apply `self`, then `h`.
    pub fn then(&self, h: &Homomorphism) -> Result<Homomorphism> {
        self.images.iter().map(|w| apply_hom(h, w)).collect::<Result<Vec<_>>>().map(Homomorphism::new)
    }
}

/// Substitutes every letter by its image (inverted for inverse letters) and freely reduces.
pub fn apply_hom(h: &Homomorphism, w: &Word) -> Result<Word> {
    let mut r = Reducer::new();
    for l in w.letters() {
        let img = h.images.get(l.generator()).ok_or(Error::GeneratorOutOfRange {
            index: l.generator(),
            count: h.images.len(),
        })?;
        if l.is_inverse() {
            r.push_inverse(img);
        } else {
            r.push_word(img);
        }
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::word::{free_reduce, Letter};
    use proptest::prelude::*;

    #[test]
    fn identity_map() {
        let w = Word::positive(&[0, 1]);
        assert_eq!(apply_hom(&Homomorphism::identity(2), &w).unwrap(), w);
    }

    #[test]
    fn inverse_image() {
        // a ↦ b c over target {a, b, c}
        let h = Homomorphism::new(vec![Word::positive(&[1, 2])]);
        let got = apply_hom(&h, &Word::power(0, -1)).unwrap();
        assert_eq!(got, Word::from_letters(vec![Letter::neg(2), Letter::neg(1)]));
    }

    #[test]
    fn swap() {
        let h = Homomorphism::new(vec![Word::generator(1), Word::generator(0)]);
        let got = apply_hom(&h, &Word::positive(&[0, 1, 0])).unwrap();
        assert_eq!(got, Word::positive(&[1, 0, 1]));
    }

    #[test]
    fn out_of_domain() {
        let h = Homomorphism::new(vec![Word::generator(0)]);
        assert!(apply_hom(&h, &Word::generator(3)).is_err());
    }

    fn arb_word(n: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..n, any::<bool>()), 0..10)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    proptest! {
        #[test]
        fn respects_concatenation(
            imgs in prop::collection::vec(arb_word(3), 3),
            u in arb_word(3),
            v in arb_word(3),
        ) {
            let h = Homomorphism::new(imgs);
            let lhs = apply_hom(&h, &u.concat(&v)).unwrap();
            let rhs = apply_hom(&h, &u).unwrap().concat(&apply_hom(&h, &v).unwrap());
            prop_assert_eq!(lhs, free_reduce(&rhs));
        }
    }
}
