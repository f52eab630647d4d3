//! Word and isomorphism problems for finitely presented abelian groups,
//! decided through the Smith normal form of the relation matrix.

mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

use crate::core::{abelianize, GroupPresentation, Word};

/// One row per relator, one column per generator: exponent sums.
pub fn relation_matrix(p: &GroupPresentation) -> IntMatrix {
    let n = p.num_generators();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(n)).collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows(&rows)
    }
}

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub factors: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, factors: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders: drops 1s and restores
    /// the divisibility chain by repeated gcd/lcm exchange.
    pub fn from_parts(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut f: Vec<BigInt> = orders.into_iter().filter(|d| !d.is_one()).collect();
        assert!(f.iter().all(|d| d > &BigInt::zero()), "cyclic orders must be positive");
        loop {
            f.sort();
            let mut changed = false;
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    if !f[j].is_multiple_of(&f[i]) {
                        let g = f[i].gcd(&f[j]);
                        let l = f[i].lcm(&f[j]);
                        f[i] = g;
                        f[j] = l;
                        changed = true;
                    }
                }
            }
            f.retain(|d| !d.is_one());
            if !changed {
                break;
            }
        }
        AbelianInvariants { free_rank, factors: f }
    }

    /// Invariants of the direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_parts(
            self.free_rank + other.free_rank,
            self.factors.iter().chain(&other.factors).cloned(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.factors.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}", self.free_rank)?;
        write!(f, " factors")?;
        if self.factors.is_empty() {
            write!(f, " none")?;
        }
        for d in &self.factors {
            write!(f, " {d}")?;
        }
        Ok(())
    }
}

/// Precomputed Smith form for repeated word-problem queries on one presentation.
#[derive(Debug, Clone)]
pub struct AbelianSolver {
    generators: usize,
    snf: SmithForm,
}

impl AbelianSolver {
    pub fn new(p: &GroupPresentation) -> Self {
        let m = relation_matrix(&abelianize(p));
        AbelianSolver { generators: p.num_generators(), snf: smith_normal_form(&m) }
    }

    pub fn smith_form(&self) -> &SmithForm {
        &self.snf
    }

    pub fn invariants(&self) -> AbelianInvariants {
        let diag = self.snf.d.diagonal_entries();
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        AbelianInvariants::from_parts(
            self.generators - nonzero,
            diag.into_iter().filter(|d| !d.is_zero()),
        )
    }

    /// Whether an exponent vector lies in the row lattice of the relation matrix.
    ///
    /// With `U·M·V = D`, `e = y·M` has an integer solution iff `e·V = z·D` does,
    /// which is checked coordinate-wise against the diagonal.
    pub fn in_lattice(&self, exponents: &[i64]) -> bool {
        assert_eq!(exponents.len(), self.generators);
        let e: Vec<BigInt> = exponents.iter().map(|&x| BigInt::from(x)).collect();
        let ev = self.snf.v.left_apply(&e);
        let d = &self.snf.d;
        ev.iter().enumerate().all(|(j, c)| {
            if j < d.rows() && !d.get(j, j).is_zero() {
                c.is_multiple_of(d.get(j, j))
            } else {
                c.is_zero()
            }
        })
    }

    /// True iff `w` is trivial in the abelianization.
    pub fn is_trivial(&self, w: &Word) -> bool {
        self.in_lattice(&w.exponent_sums(self.generators))
    }
}

pub fn abelian_invariants(p: &GroupPresentation) -> AbelianInvariants {
    AbelianSolver::new(p).invariants()
}

/// True iff `w` is trivial in the abelianization of the presented group.
pub fn abelian_word_problem(p: &GroupPresentation, w: &Word) -> bool {
    AbelianSolver::new(p).is_trivial(w)
}

/// Trivial abelianization.
pub fn is_perfect(p: &GroupPresentation) -> bool {
    abelian_invariants(p).is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{commutator, free_product};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn relation_matrices() {
        let p = GroupPresentation::from_names("P", &["a"], vec![Word::power(0, 2)]).unwrap();
        assert_eq!(relation_matrix(&p), IntMatrix::from_rows(&[vec![2]]));
        let c = commutator(&Word::generator(0), &Word::generator(1));
        let q = GroupPresentation::from_names("Q", &["a", "b"], vec![c]).unwrap();
        assert_eq!(relation_matrix(&q), IntMatrix::from_rows(&[vec![0, 0]]));
        let r = GroupPresentation::from_names(
            "R",
            &["a", "b"],
            vec![Word::from_powers(&[(0, 2), (1, -3)])],
        )
        .unwrap();
        assert_eq!(relation_matrix(&r), IntMatrix::from_rows(&[vec![2, -3]]));
    }

    #[test]
    fn invariants_examples() {
        let c2 = GroupPresentation::from_names("C2", &["a"], vec![Word::power(0, 2)]).unwrap();
        assert_eq!(abelian_invariants(&c2), AbelianInvariants { free_rank: 0, factors: big(&[2]) });
        let f2 = GroupPresentation::from_names("F2", &["a", "b"], vec![]).unwrap();
        assert_eq!(abelian_invariants(&f2), AbelianInvariants { free_rank: 2, factors: vec![] });
        let c6 = GroupPresentation::from_names(
            "C6",
            &["a", "b"],
            vec![
                Word::power(0, 2),
                Word::power(1, 3),
                commutator(&Word::generator(0), &Word::generator(1)),
            ],
        )
        .unwrap();
        assert_eq!(abelian_invariants(&c6), AbelianInvariants { free_rank: 0, factors: big(&[6]) });
    }

    #[test]
    fn word_problem_examples() {
        let f2 = GroupPresentation::from_names("F2", &["a", "b"], vec![]).unwrap();
        let c = commutator(&Word::generator(0), &Word::generator(1));
        assert!(abelian_word_problem(&f2, &c));
        let c2 = GroupPresentation::from_names("C2", &["a"], vec![Word::power(0, 2)]).unwrap();
        assert!(!abelian_word_problem(&c2, &Word::generator(0)));
        assert!(abelian_word_problem(&c2, &Word::power(0, 2)));
    }

    #[test]
    fn perfectness() {
        let t = GroupPresentation::from_names("T", &["a"], vec![Word::generator(0)]).unwrap();
        assert!(is_perfect(&t));
        let c2 = GroupPresentation::from_names("C2", &["a"], vec![Word::power(0, 2)]).unwrap();
        assert!(!is_perfect(&c2));
    }

    #[test]
    fn rechaining() {
        let inv = AbelianInvariants::from_parts(1, big(&[4, 6, 1, 10]));
        assert_eq!(inv.factors, big(&[2, 2, 60]));
        assert_eq!(inv.free_rank, 1);
    }

    #[test]
    fn free_product_invariants_merge() {
        let c4 = GroupPresentation::from_names("A", &["a"], vec![Word::power(0, 4)]).unwrap();
        let c6 = GroupPresentation::from_names("B", &["b"], vec![Word::power(0, 6)]).unwrap();
        let f1 = GroupPresentation::from_names("F", &["c"], vec![]).unwrap();
        let p = free_product(&free_product(&c4, &c6), &f1);
        let want = abelian_invariants(&c4)
            .direct_sum(&abelian_invariants(&c6))
            .direct_sum(&abelian_invariants(&f1));
        assert_eq!(abelian_invariants(&p), want);
        assert_eq!(want, AbelianInvariants { free_rank: 1, factors: big(&[2, 12]) });
    }
}
