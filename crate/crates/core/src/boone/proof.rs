//! Shared proof terms for products of conjugates of relators, and an
//! equational layer on top of them.
//!
//! A [`Proof`] denotes a word in the free group that lies in the normal
//! closure of the relators. An [`Eqn`] `lhs = rhs` carries a proof whose
//! value freely equals `lhs · rhs⁻¹`. Terms are shared through `Arc`, so large
//! derivations can reuse sub-proofs; [`flatten`] expands a term into a
//! [`TrivialityCertificate`].

use std::collections::HashMap;
use std::sync::Arc;

use super::certificate::{CertEntry, TrivialityCertificate};
use crate::core::word::reduced_product;
use crate::core::{Letter, Word};

#[derive(Debug)]
pub enum Proof {
    Empty,
    /// The `i`-th relator.
    Relator(usize),
    /// `u · p · u⁻¹`.
    Conj(Word, Arc<Proof>),
    /// `u · p · u⁻¹` with `u` given as a shared path.
    ConjPath(RepPath, Arc<Proof>),
    Inv(Arc<Proof>),
    /// Product in order.
    Concat(Vec<Arc<Proof>>),
}

impl Proof {
    fn take_children(&mut self, out: &mut Vec<Arc<Proof>>) {
        match self {
            Proof::Empty | Proof::Relator(_) => {}
            Proof::Conj(_, p) | Proof::ConjPath(_, p) | Proof::Inv(p) => {
                out.push(std::mem::replace(p, Arc::new(Proof::Empty)));
            }
            Proof::Concat(v) => out.append(v),
        }
    }
}

// Proof chains get deep; dropping them recursively would overflow the stack.
impl Drop for Proof {
    fn drop(&mut self) {
        let mut stack = Vec::new();
        self.take_children(&mut stack);
        while let Some(p) = stack.pop() {
            if let Ok(mut inner) = Arc::try_unwrap(p) {
                inner.take_children(&mut stack);
            }
        }
    }
}

/// A word stored as a chain of letters sharing prefixes with other words.
pub type RepPath = Option<Arc<PathNode>>;

#[derive(Debug)]
pub struct PathNode {
    prev: RepPath,
    letter: Letter,
}

pub fn path_push(prev: &RepPath, letter: Letter) -> RepPath {
    Some(Arc::new(PathNode { prev: prev.clone(), letter }))
}

pub fn path_word(p: &RepPath) -> Word {
    let mut letters = Vec::new();
    let mut cur = p;
    while let Some(node) = cur {
        letters.push(node.letter);
        cur = &node.prev;
    }
    letters.reverse();
    Word::from_letters(letters)
}

impl Drop for PathNode {
    fn drop(&mut self) {
        let mut next = self.prev.take();
        while let Some(node) = next {
            next = match Arc::try_unwrap(node) {
                Ok(mut inner) => inner.prev.take(),
                Err(_) => None,
            };
        }
    }
}

pub fn conj_path(u: &RepPath, p: Arc<Proof>) -> Arc<Proof> {
    match u {
        None => p,
        Some(_) => Arc::new(Proof::ConjPath(u.clone(), p)),
    }
}

pub fn empty() -> Arc<Proof> {
    Arc::new(Proof::Empty)
}

pub fn relator(i: usize) -> Arc<Proof> {
    Arc::new(Proof::Relator(i))
}

pub fn conj(u: &Word, p: Arc<Proof>) -> Arc<Proof> {
    if u.is_empty() {
        p
    } else {
        Arc::new(Proof::Conj(u.clone(), p))
    }
}

pub fn inv(p: Arc<Proof>) -> Arc<Proof> {
    Arc::new(Proof::Inv(p))
}

pub fn concat(parts: Vec<Arc<Proof>>) -> Arc<Proof> {
    let parts: Vec<_> = parts.into_iter().filter(|p| !matches!(**p, Proof::Empty)).collect();
    match parts.len() {
        0 => empty(),
        1 => parts.into_iter().next().expect("one part"),
        _ => Arc::new(Proof::Concat(parts)),
    }
}

/// Number of relator occurrences in the expansion of `p`, saturating.
pub fn proof_size(p: &Arc<Proof>) -> u64 {
    let mut memo: HashMap<*const Proof, u64> = HashMap::new();
    let mut stack: Vec<(&Proof, bool)> = vec![(p, false)];
    while let Some((node, expanded)) = stack.pop() {
        let key = node as *const Proof;
        if memo.contains_key(&key) {
            continue;
        }
        let children: Vec<&Proof> = match node {
            Proof::Empty | Proof::Relator(_) => vec![],
            Proof::Conj(_, q) | Proof::ConjPath(_, q) | Proof::Inv(q) => vec![&**q],
            Proof::Concat(v) => v.iter().map(|q| &**q).collect(),
        };
        if !expanded {
            stack.push((node, true));
            stack.extend(children.into_iter().filter(|c| !memo.contains_key(&(*c as *const Proof))).map(|c| (c, false)));
        } else {
            let own = u64::from(matches!(node, Proof::Relator(_)));
            let total = children.iter().fold(own, |acc, c| acc.saturating_add(memo[&(*c as *const Proof)]));
            memo.insert(key, total);
        }
    }
    memo[&(&**p as *const Proof)]
}

/// Expands a term into certificate entries, then cancels adjacent entries
/// that are inverse to each other.
pub fn flatten(p: &Arc<Proof>) -> TrivialityCertificate {
    let mut out: Vec<CertEntry> = Vec::new();
    let mut stack: Vec<(&Proof, Arc<Word>, bool)> = vec![(p, Arc::new(Word::empty()), false)];
    while let Some((node, prefix, inverted)) = stack.pop() {
        match node {
            Proof::Empty => {}
            Proof::Relator(i) => {
                let entry = CertEntry {
                    relator: *i,
                    sign: if inverted { -1 } else { 1 },
                    conjugator: (*prefix).clone(),
                };
                match out.last() {
                    Some(last)
                        if last.relator == entry.relator
                            && last.sign == -entry.sign
                            && last.conjugator == entry.conjugator =>
                    {
                        out.pop();
                    }
                    _ => out.push(entry),
                }
            }
            Proof::Conj(u, q) => {
                stack.push((q, Arc::new(reduced_product(&prefix, u)), inverted));
            }
            Proof::ConjPath(path, q) => {
                let u = path_word(path);
                stack.push((q, Arc::new(reduced_product(&prefix, &u)), inverted));
            }
            Proof::Inv(q) => stack.push((q, prefix, !inverted)),
            Proof::Concat(parts) => {
                if inverted {
                    stack.extend(parts.iter().map(|q| (&**q, prefix.clone(), inverted)));
                } else {
                    stack.extend(parts.iter().rev().map(|q| (&**q, prefix.clone(), inverted)));
                }
            }
        }
    }
    TrivialityCertificate { entries: out }
}

/// `lhs = rhs` with a proof of `lhs · rhs⁻¹`. Both sides are kept reduced.
#[derive(Debug, Clone)]
pub struct Eqn {
    pub lhs: Word,
    pub rhs: Word,
    pub proof: Arc<Proof>,
}

fn red(w: &Word) -> Word {
    reduced_product(w, &Word::empty())
}

fn red3(a: &Word, b: &Word, c: &Word) -> Word {
    reduced_product(&reduced_product(a, b), c)
}

impl Eqn {
    /// Relator `i` read as `lhs = rhs`; the caller guarantees that the
    /// relator freely equals `lhs · rhs⁻¹`.
    pub fn axiom(i: usize, lhs: &Word, rhs: &Word) -> Eqn {
        Eqn { lhs: red(lhs), rhs: red(rhs), proof: relator(i) }
    }

    pub fn refl(w: &Word) -> Eqn {
        let w = red(w);
        Eqn { lhs: w.clone(), rhs: w, proof: empty() }
    }

    pub fn sym(&self) -> Eqn {
        Eqn { lhs: self.rhs.clone(), rhs: self.lhs.clone(), proof: inv(self.proof.clone()) }
    }

    pub fn trans(&self, next: &Eqn) -> Eqn {
        debug_assert_eq!(self.rhs, next.lhs, "trans: middle terms differ");
        Eqn {
            lhs: self.lhs.clone(),
            rhs: next.rhs.clone(),
            proof: concat(vec![self.proof.clone(), next.proof.clone()]),
        }
    }

    /// `a · lhs · b = a · rhs · b`.
    pub fn ctx(a: &Word, e: &Eqn, b: &Word) -> Eqn {
        Eqn {
            lhs: red3(a, &e.lhs, b),
            rhs: red3(a, &e.rhs, b),
            proof: conj(a, e.proof.clone()),
        }
    }

    /// `lhs₁·lhs₂ = rhs₁·rhs₂`.
    pub fn mul(&self, other: &Eqn) -> Eqn {
        Eqn::ctx(&self.lhs, other, &Word::empty()).trans(&Eqn::ctx(&Word::empty(), self, &other.rhs))
    }

    /// `lhs⁻¹ = rhs⁻¹`.
    pub fn inv(&self) -> Eqn {
        let li = self.lhs.inverse();
        Eqn { lhs: li.clone(), rhs: self.rhs.inverse(), proof: conj(&li, inv(self.proof.clone())) }
    }

    /// Chains `self.trans(e₁).trans(e₂)…`.
    pub fn then_all<'a>(&self, rest: impl IntoIterator<Item = &'a Eqn>) -> Eqn {
        rest.into_iter().fold(self.clone(), |acc, e| acc.trans(e))
    }
}
