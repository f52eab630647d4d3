use std::collections::{HashMap, HashSet};

use crate::abelian::AbelianSolver;
use crate::boone::{verify_certificate, TrivialityCertificate};
use crate::core::{apply_hom, free_reduce, GroupPresentation, Homomorphism, Word};

use super::budget::Budget;
use super::coset::{CosetEnumerator, CosetTable, EnumStatus, MAX_COSETS};
use super::words::{reduced_words_of_length, relator_conjugate_certificate, TrivialWordEnumerator};

/// A pair of mutually inverse homomorphisms with every required identity
/// certified.
#[derive(Debug, Clone)]
pub struct IsoWitness {
    pub forward: Homomorphism,
    pub backward: Homomorphism,
    /// `φ(r) = 1` in `Q` for each relator `r` of `P`.
    pub forward_relators: Vec<TrivialityCertificate>,
    /// `ψ(s) = 1` in `P` for each relator `s` of `Q`.
    pub backward_relators: Vec<TrivialityCertificate>,
    /// `ψ(φ(x))·x⁻¹ = 1` in `P` for each generator `x` of `P`.
    pub forward_inverse: Vec<TrivialityCertificate>,
    /// `φ(ψ(y))·y⁻¹ = 1` in `Q` for each generator `y` of `Q`.
    pub backward_inverse: Vec<TrivialityCertificate>,
}

fn round_trip(f: &Homomorphism, g: &Homomorphism, x: usize) -> Word {
    let img = apply_hom(g, &f.images()[x]).unwrap_or_default();
    free_reduce(&img.concat(&Word::generator(x).inverse()))
}

impl IsoWitness {
    pub fn verify(&self, p: &GroupPresentation, q: &GroupPresentation) -> bool {
        let (f, g) = (&self.forward, &self.backward);
        if f.source_rank() != p.num_generators() || g.source_rank() != q.num_generators() {
            return false;
        }
        if f.images().iter().any(|w| q.check_word(w).is_err()) || g.images().iter().any(|w| p.check_word(w).is_err()) {
            return false;
        }
        let all = |certs: &[TrivialityCertificate], pres: &GroupPresentation, words: Vec<Word>| {
            certs.len() == words.len() && certs.iter().zip(&words).all(|(c, w)| verify_certificate(pres, c, w))
        };
        let img = |h: &Homomorphism, ws: &[Word]| ws.iter().map(|w| apply_hom(h, w).unwrap_or_default()).collect();
        all(&self.forward_relators, q, img(f, p.relators()))
            && all(&self.backward_relators, p, img(g, q.relators()))
            && all(&self.forward_inverse, p, (0..p.num_generators()).map(|x| round_trip(f, g, x)).collect())
            && all(&self.backward_inverse, q, (0..q.num_generators()).map(|y| round_trip(g, f, y)).collect())
    }
}

#[derive(Debug, Clone)]
enum Decision {
    Trivial(TrivialityCertificate),
    Nontrivial,
    Pending,
}

/// Shared search state for many word-problem queries over one presentation:
/// one coset enumeration and one blind enumeration serve every query.
struct WordOracle {
    p: GroupPresentation,
    abelian: AbelianSolver,
    coset: CosetEnumerator,
    table: Option<CosetTable>,
    coset_live: bool,
    blind: TrivialWordEnumerator,
    blind_live: bool,
    known: HashMap<Word, TrivialityCertificate>,
    cache: HashMap<Word, Decision>,
}

impl WordOracle {
    fn new(p: &GroupPresentation) -> Self {
        WordOracle {
            p: p.clone(),
            abelian: AbelianSolver::new(p),
            coset: CosetEnumerator::new(p, &[], MAX_COSETS),
            table: None,
            coset_live: true,
            blind: TrivialWordEnumerator::new(p),
            blind_live: true,
            known: HashMap::new(),
            cache: HashMap::new(),
        }
    }

    fn advance(&mut self, steps: u64) {
        let half = steps.div_ceil(2);
        if self.coset_live {
            match self.coset.run(half) {
                EnumStatus::Running => {}
                EnumStatus::Overflow => self.coset_live = false,
                EnumStatus::Closed => {
                    self.table = self.coset.table();
                    self.coset_live = false;
                }
            }
        }
        if self.blind_live {
            for _ in 0..half {
                let Some(c) = self.blind.next_certificate() else {
                    self.blind_live = false;
                    break;
                };
                let w = self.blind.value(&c);
                self.known.entry(w).or_insert(c);
            }
        }
        self.cache.retain(|_, d| !matches!(d, Decision::Pending));
    }

    fn decide(&mut self, w: &Word) -> Decision {
        let w = free_reduce(w);
        if let Some(d) = self.cache.get(&w) {
            return d.clone();
        }
        let d = self.decide_uncached(&w);
        self.cache.insert(w, d.clone());
        d
    }

    fn decide_uncached(&self, w: &Word) -> Decision {
        if w.is_empty() {
            return Decision::Trivial(TrivialityCertificate { entries: Vec::new() });
        }
        if !self.abelian.is_trivial(w) {
            return Decision::Nontrivial;
        }
        if let Some(c) = relator_conjugate_certificate(&self.p, w) {
            return Decision::Trivial(c);
        }
        if let Some(t) = &self.table {
            if t.trace(0, w) != Some(0) {
                return Decision::Nontrivial;
            }
            if let Some(c) = t.certificate(w) {
                return Decision::Trivial(c);
            }
        }
        match self.known.get(w) {
            Some(c) => Decision::Trivial(c.clone()),
            None => Decision::Pending,
        }
    }

    /// Certificates for all words, `None` if one is refuted, `Some(None)` if
    /// still open.
    fn decide_all(&mut self, ws: &[Word]) -> Option<Option<Vec<TrivialityCertificate>>> {
        let mut out = Vec::new();
        let mut open = false;
        for w in ws {
            match self.decide(w) {
                Decision::Nontrivial => return None,
                Decision::Pending => open = true,
                Decision::Trivial(c) => out.push(c),
            }
        }
        Some((!open).then_some(out))
    }
}

/// Maps from `n` generators into words over `m` generators with total image
/// length exactly `total`. Order: the vector of image lengths
/// lexicographically, then the images lexicographically.
fn maps_of_total_length(n: usize, m: usize, total: usize) -> Vec<Homomorphism> {
    fn length_vectors(n: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let min = if prefix.len() + 1 == n { total } else { 0 };
        for l in min..=total {
            prefix.push(l);
            length_vectors(n, total - l, prefix, out);
            prefix.pop();
        }
    }
    let mut vecs = Vec::new();
    length_vectors(n, total, &mut Vec::new(), &mut vecs);
    let mut out = Vec::new();
    for lens in vecs {
        let pools: Vec<Vec<Word>> = lens.iter().map(|&l| reduced_words_of_length(m, l)).collect();
        if pools.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0; n];
        loop {
            out.push(Homomorphism::new(idx.iter().zip(&pools).map(|(&i, p)| p[i].clone()).collect()));
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < pools[k].len() {
                    break;
                }
                idx[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX || n == 0 {
                break;
            }
        }
    }
    out
}

#[derive(Debug)]
struct Candidate {
    hom: Homomorphism,
    certs: Option<Vec<TrivialityCertificate>>,
    dead: bool,
}

struct Side {
    n: usize,
    m: usize,
    next_total: usize,
    seen: HashSet<Homomorphism>,
    list: Vec<Candidate>,
}

impl Side {
    fn new(n: usize, m: usize) -> Self {
        let mut s = Side { n, m, next_total: 0, seen: HashSet::new(), list: Vec::new() };
        if n == m {
            s.push(Homomorphism::identity(n));
        }
        s
    }

    fn push(&mut self, h: Homomorphism) {
        if self.seen.insert(h.clone()) {
            self.list.push(Candidate { hom: h, certs: None, dead: false });
        }
    }

    fn extend_to(&mut self, total: usize) -> u64 {
        let mut added = 0;
        while self.next_total <= total {
            for h in maps_of_total_length(self.n, self.m, self.next_total) {
                self.push(h);
                added += 1;
            }
            self.next_total += 1;
        }
        added
    }

    fn check(&mut self, src: &GroupPresentation, tgt: &mut WordOracle) -> u64 {
        let mut work = 0;
        for c in self.list.iter_mut().filter(|c| !c.dead && c.certs.is_none()) {
            let imgs: Vec<Word> = src.relators().iter().map(|r| apply_hom(&c.hom, r).unwrap_or_default()).collect();
            work += imgs.len() as u64 + 1;
            match tgt.decide_all(&imgs) {
                None => c.dead = true,
                Some(Some(certs)) => c.certs = Some(certs),
                Some(None) => {}
            }
        }
        work
    }
}

/// Searches for an isomorphism `P ≅ Q` given by generator maps.
///
/// Round `k` enumerates maps in both directions with total image length at
/// most `k` (the positional map first when the ranks agree), advances a
/// shared word oracle for each presentation by `256·2^k` steps, and checks
/// relator images and then mutual inverses of every pair of homomorphisms.
pub fn iso_search(p: &GroupPresentation, q: &GroupPresentation, budget: &Budget) -> Option<IsoWitness> {
    let mut op = WordOracle::new(p);
    let mut oq = WordOracle::new(q);
    let mut fwd = Side::new(p.num_generators(), q.num_generators());
    let mut bwd = Side::new(q.num_generators(), p.num_generators());
    let mut dead_pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut meter = budget.meter();
    for k in 1usize.. {
        let allowance = 256u64 << k.min(20);
        meter.charge(fwd.extend_to(k) + bwd.extend_to(k));
        for o in [&mut op, &mut oq] {
            let g = meter.grant(allowance);
            meter.charge(g);
            o.advance(g);
        }
        meter.charge(fwd.check(p, &mut oq) + bwd.check(q, &mut op));
        if meter.exhausted() {
            return None;
        }
        let homs_f: Vec<usize> = (0..fwd.list.len()).filter(|&i| fwd.list[i].certs.is_some()).collect();
        let homs_b: Vec<usize> = (0..bwd.list.len()).filter(|&i| bwd.list[i].certs.is_some()).collect();
        for &i in &homs_f {
            for &j in &homs_b {
                if dead_pairs.contains(&(i, j)) {
                    continue;
                }
                meter.charge(1);
                if meter.exhausted() {
                    return None;
                }
                let (f, g) = (&fwd.list[i].hom, &bwd.list[j].hom);
                let fi: Vec<Word> = (0..p.num_generators()).map(|x| round_trip(f, g, x)).collect();
                let bi: Vec<Word> = (0..q.num_generators()).map(|y| round_trip(g, f, y)).collect();
                let (Some(a), Some(b)) = (op.decide_all(&fi), oq.decide_all(&bi)) else {
                    dead_pairs.insert((i, j));
                    continue;
                };
                if let (Some(a), Some(b)) = (a, b) {
                    let w = IsoWitness {
                        forward: f.clone(),
                        backward: g.clone(),
                        forward_relators: fwd.list[i].certs.clone().expect("hom"),
                        backward_relators: bwd.list[j].certs.clone().expect("hom"),
                        forward_inverse: a,
                        backward_inverse: b,
                    };
                    if w.verify(p, q) {
                        return Some(w);
                    }
                    dead_pairs.insert((i, j));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::parse_presentation;

    #[test]
    fn map_order() {
        let ms = maps_of_total_length(2, 1, 1);
        assert_eq!(ms.len(), 4);
        assert_eq!(ms[0].images(), &[Word::empty(), Word::generator(0)]);
        assert_eq!(ms[3].images(), &[Word::power(0, -1), Word::empty()]);
        assert_eq!(maps_of_total_length(2, 2, 2).len(), 12 + 16 + 12);
        assert_eq!(maps_of_total_length(1, 0, 0).len(), 1);
        assert!(maps_of_total_length(1, 0, 1).is_empty());
    }

    #[test]
    fn identity_on_same_presentation() {
        let p = parse_presentation("group S3\ngens a b\nrel a^2\nrel b^3\nrel a b a b\n").unwrap();
        let w = iso_search(&p, &p, &Budget::default()).unwrap();
        assert_eq!(w.forward, Homomorphism::identity(2));
        assert!(w.verify(&p, &p));
    }

    #[test]
    fn cyclic_two_presentations() {
        let p = parse_presentation("group C2\ngens a\nrel a^2\n").unwrap();
        let q = parse_presentation("group C2'\ngens b\nrel b^2\nrel b^6\n").unwrap();
        let w = iso_search(&p, &q, &Budget::default()).unwrap();
        assert_eq!(w.forward.images(), &[Word::generator(0)]);
        assert!(w.verify(&p, &q));
        let mut bad = w.clone();
        bad.backward_relators[1].entries.clear();
        assert!(!bad.verify(&p, &q));
    }

    #[test]
    fn nonisomorphic_stays_unknown() {
        let p = parse_presentation("group C2\ngens a\nrel a^2\n").unwrap();
        let q = parse_presentation("group C3\ngens b\nrel b^3\n").unwrap();
        assert!(iso_search(&p, &q, &Budget::steps(200_000)).is_none());
    }

    #[test]
    fn finds_a_non_positional_map() {
        // Z with generators swapped roles: ⟨a, b | b⟩ ≅ ⟨c, d | c⟩.
        let p = parse_presentation("group P\ngens a b\nrel b\n").unwrap();
        let q = parse_presentation("group Q\ngens c d\nrel c\n").unwrap();
        let w = iso_search(&p, &q, &Budget::default()).unwrap();
        assert!(w.verify(&p, &q));
    }
}
