//! The presentation families Π, Ψ, Φ built from a machine and an input, and
//! free products of them used as adversary inputs.

use std::fmt::Write as _;

use crate::boone::{beta, boone_encode};
use crate::core::{direct_product_with_cyclic, free_product, GroupPresentation, Word};
use crate::error::{Error, Result};
use crate::gordon::{gordon, gordon_shape};
use crate::machine::{phi_input, TuringMachine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Pi,
    Psi,
    Phi,
}

/// What a gadget was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetDescriptor {
    pub machine: String,
    pub n: usize,
    pub family: Family,
    pub provenance: String,
}

impl GadgetDescriptor {
    pub fn new(m: &TuringMachine, n: usize, family: Family) -> Self {
        let provenance = match family {
            Family::Pi => format!("gordon(boone({}), beta(s1^{}))", m.name(), n + 1),
            Family::Psi => {
                format!("gordon(pi({}, {n}) x C{}, b)", m.name(), nth_prime(n))
            }
            Family::Phi => format!("gordon(pi({}, {n}) x C2, b)", m.name()),
        };
        GadgetDescriptor { machine: m.name().to_string(), n, family, provenance }
    }

    pub fn build(&self, m: &TuringMachine) -> Result<GroupPresentation> {
        if m.name() != self.machine {
            return Err(Error::InvalidArgument(format!(
                "descriptor is for machine `{}`, got `{}`",
                self.machine,
                m.name()
            )));
        }
        match self.family {
            Family::Pi => pi(m, self.n),
            Family::Psi => psi(m, self.n),
            Family::Phi => phi_family(m, self.n),
        }
    }
}

/// `Π(M, n) = gordon(B(M), β(s₁ⁿ⁺¹))`: trivial iff `M` halts on `s₁ⁿ⁺¹`.
pub fn pi(m: &TuringMachine, n: usize) -> Result<GroupPresentation> {
    let b = boone_encode(m)?;
    let w = beta(&b, &Word::positive(&phi_input(n)))?;
    Ok(gordon(&b.presentation, &w)?.with_name(format!("PI-{}-{n}", m.name())))
}

/// `p_i` by trial division, `p₀ = 2`.
pub fn nth_prime(i: usize) -> u64 {
    let mut count = 0;
    let mut c: u64 = 1;
    loop {
        c += 1;
        if (2..).take_while(|d: &u64| d * d <= c).all(|d| !c.is_multiple_of(d)) {
            if count == i {
                return c;
            }
            count += 1;
        }
    }
}

fn wrap(m: &TuringMachine, i: usize, modulus: u64, tag: &str) -> Result<GroupPresentation> {
    let inner = pi(m, i)?;
    let (_, b, _) = gordon_shape(&inner)?;
    let prod = direct_product_with_cyclic(&inner, modulus)?;
    Ok(gordon(&prod, &Word::generator(b))?.with_name(format!("{tag}-{}-{i}", m.name())))
}

/// `Ψ(M, i) = gordon(Π(M, i) × C_{p_i}, b)`.
pub fn psi(m: &TuringMachine, i: usize) -> Result<GroupPresentation> {
    wrap(m, i, nth_prime(i), "PSI")
}

/// `Φ(M, i) = gordon(Π(M, i) × C₂, b)`.
pub fn phi_family(m: &TuringMachine, i: usize) -> Result<GroupPresentation> {
    wrap(m, i, 2, "PHI")
}

/// Left fold of [`free_product`].
pub fn free_product_family(ps: &[GroupPresentation]) -> Result<GroupPresentation> {
    let (first, rest) = ps
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("free product of an empty family".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, p| free_product(&acc, p)))
}

#[derive(Debug, Clone)]
pub struct AdversaryReport {
    pub factors: Vec<GroupPresentation>,
    pub product: GroupPresentation,
    /// Generator range of each factor inside the product.
    pub ranges: Vec<std::ops::Range<usize>>,
    /// Factor left untouched by the sample word, if one was given.
    pub untouched: Option<usize>,
    pub narrative: String,
}

/// Builds `Π₀ * … * Π_k` for `k + 1` (machine, input) pairs and explains
/// why a procedure that always names a nontrivial word of length at most `k`
/// would decide halting. With a sample word over the product, reports a
/// factor none of whose generators the word uses.
pub fn adversary_demo(
    k: usize,
    factors: &[(TuringMachine, usize)],
    sample: Option<&Word>,
) -> Result<AdversaryReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if factors.len() != k + 1 {
        return Err(Error::InvalidArgument(format!(
            "need k + 1 = {} factors, got {}",
            k + 1,
            factors.len()
        )));
    }
    let pis = factors.iter().map(|(m, n)| pi(m, *n)).collect::<Result<Vec<_>>>()?;
    let product = free_product_family(&pis)?;
    let mut ranges = Vec::new();
    let mut start = 0;
    for p in &pis {
        ranges.push(start..start + p.num_generators());
        start += p.num_generators();
    }
    let untouched = match sample {
        Some(w) => {
            product.check_word(w)?;
            ranges.iter().position(|r| r.clone().all(|g| !w.uses_generator(g)))
        }
        None => None,
    };

    let mut s = String::new();
    let _ = writeln!(s, "adversary input: free product of {} factors", k + 1);
    for (i, ((m, n), p)) in factors.iter().zip(&pis).enumerate() {
        let _ = writeln!(
            s,
            "  factor {i}: PI({}, {n}), {} generators, {} relators, generators {}..{}",
            m.name(),
            p.num_generators(),
            p.num_relators(),
            ranges[i].start,
            ranges[i].end
        );
    }
    let _ = writeln!(
        s,
        "each factor is trivial exactly when its machine halts on its input, and is a perfect group either way."
    );
    let _ = writeln!(
        s,
        "a word of length at most {k} mentions generators of at most {k} factors, so at least one factor is untouched."
    );
    let _ = writeln!(
        s,
        "if a procedure always returned a nontrivial word of length at most {k} for nontrivial inputs, the factors it touches could not all be trivial; running it on such products would separate halting from non-halting inputs, which no procedure can do."
    );
    match (sample, untouched) {
        (Some(w), Some(i)) => {
            let _ = writeln!(s, "sample word of length {}: factor {i} is untouched", w.len());
        }
        (Some(w), None) => {
            let _ = writeln!(s, "sample word of length {}: touches every factor", w.len());
        }
        (None, _) => {}
    }
    Ok(AdversaryReport { factors: pis, product, ranges, untouched, narrative: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{abelian_invariants, is_perfect};
    use crate::boone::boone_encode;
    use crate::core::format_presentation;
    use crate::machine::zoo;

    fn trial_division_oracle(i: usize) -> u64 {
        let mut primes: Vec<u64> = Vec::new();
        let mut c = 2;
        while primes.len() <= i {
            if primes.iter().all(|p| c % p != 0) {
                primes.push(c);
            }
            c += 1;
        }
        primes[i]
    }

    #[test]
    fn primes() {
        assert_eq!(nth_prime(0), 2);
        assert_eq!(nth_prime(1), 3);
        assert_eq!(nth_prime(5), 13);
        for i in 0..200 {
            assert_eq!(nth_prime(i), trial_division_oracle(i));
        }
    }

    #[test]
    fn pi_counts_and_perfectness() {
        let m = zoo::loop_machine();
        let p = pi(&m, 0).unwrap();
        let b = boone_encode(&m).unwrap().presentation;
        assert_eq!(p.num_generators(), b.num_generators() + 3);
        assert_eq!(p.num_relators(), b.num_relators() + b.num_generators() + 3);
        assert!(is_perfect(&p));
        assert_eq!(format_presentation(&p), format_presentation(&pi(&m, 0).unwrap()));
    }

    #[test]
    fn psi_phi_counts() {
        let m = zoo::halt1();
        let p = pi(&m, 1).unwrap();
        let (g, r) = (p.num_generators(), p.num_relators());
        let s = psi(&m, 1).unwrap();
        // × C_p adds z, z^p and g commutators; gordon adds 3 generators and (g + 1) + 3 relators.
        assert_eq!(s.num_generators(), g + 1 + 3);
        assert_eq!(s.num_relators(), r + 1 + g + (g + 1) + 3);
        assert!(s.relators().contains(&Word::power(g, 3)));
        let f = phi_family(&m, 1).unwrap();
        assert!(f.relators().contains(&Word::power(g, 2)));
        assert!(is_perfect(&s) && is_perfect(&f));
    }

    #[test]
    fn free_product_family_folds() {
        let m = zoo::halt1();
        let ps: Vec<_> = (0..3).map(|n| pi(&m, n).unwrap()).collect();
        let q = free_product_family(&ps).unwrap();
        assert_eq!(q.num_generators(), ps.iter().map(|p| p.num_generators()).sum::<usize>());
        assert!(abelian_invariants(&q).is_trivial());
        assert_eq!(free_product_family(&ps[..1]).unwrap(), ps[0]);
        assert!(free_product_family(&[]).is_err());
    }

    #[test]
    fn adversary() {
        let f = vec![(zoo::loop_machine(), 0), (zoo::loop_machine(), 0)];
        let r = adversary_demo(1, &f, Some(&Word::generator(0))).unwrap();
        assert_eq!(r.factors.len(), 2);
        assert_eq!(r.untouched, Some(1));
        assert!(r.narrative.contains("factor 1 is untouched"));
        assert!(r.factors.iter().all(is_perfect));
        assert!(adversary_demo(2, &f, None).is_err());
        assert!(adversary_demo(0, &f[..1], None).is_err());
    }

    #[test]
    fn descriptors() {
        let m = zoo::halt1();
        let d = GadgetDescriptor::new(&m, 2, Family::Psi);
        assert!(d.provenance.contains("C5"));
        assert_eq!(d.build(&m).unwrap(), psi(&m, 2).unwrap());
        assert!(d.build(&zoo::scan()).is_err());
    }
}
