//! Proof-carrying elimination of generators.
//!
//! A relator whose image, after deleting generators already shown trivial,
//! is freely a conjugate of a single letter `g^±1` shows `g = 1`. Repeating
//! this until nothing changes kills every generator of presentations such as
//! `gordon(⟨x | x⟩, x)` with short certificates.

use crate::boone::proof::{flatten, Eqn};
use crate::boone::TrivialityCertificate;
use crate::core::{GroupPresentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElimStatus {
    Running,
    /// Every generator was shown trivial.
    AllKilled,
    /// A full pass made no progress.
    Stuck,
}

#[derive(Debug, Clone)]
pub struct Eliminator {
    relators: Vec<Word>,
    killed: Vec<Option<Eqn>>,
    next: usize,
    progress: bool,
    status: ElimStatus,
}

impl Eliminator {
    pub fn new(p: &GroupPresentation) -> Self {
        let n = p.num_generators();
        Eliminator {
            relators: p.relators().to_vec(),
            killed: vec![None; n],
            next: 0,
            progress: false,
            status: if n == 0 { ElimStatus::AllKilled } else { ElimStatus::Running },
        }
    }

    pub fn status(&self) -> ElimStatus {
        self.status
    }

    pub fn killed(&self, g: usize) -> bool {
        self.killed[g].is_some()
    }

    /// `relator_i = 1` rewritten to `r' = 1`, where `r'` drops killed letters.
    fn reduced_relator(&self, i: usize) -> Eqn {
        let r = &self.relators[i];
        let mut cur = r.letters().to_vec();
        let mut eq = Eqn::refl(r);
        for pos in (0..cur.len()).rev() {
            let l = cur[pos];
            let Some(kill) = &self.killed[l.generator()] else { continue };
            let kill = if l.is_inverse() { kill.inv() } else { kill.clone() };
            let prefix = Word::from_letters(cur[..pos].to_vec());
            let suffix = Word::from_letters(cur[pos + 1..].to_vec());
            eq = eq.trans(&Eqn::ctx(&prefix, &kill, &suffix));
            cur.remove(pos);
        }
        eq.sym().trans(&Eqn::axiom(i, r, &Word::empty()))
    }

    /// Processes about `steps` relators.
    pub fn run(&mut self, steps: u64) -> ElimStatus {
        for _ in 0..steps {
            if self.status != ElimStatus::Running {
                break;
            }
            if self.next == self.relators.len() {
                if !self.progress {
                    self.status = ElimStatus::Stuck;
                    break;
                }
                self.next = 0;
                self.progress = false;
            }
            let i = self.next;
            self.next += 1;
            let eq = self.reduced_relator(i);
            let (c, u) = eq.lhs.cyclic_core();
            if c.len() != 1 {
                continue;
            }
            let l = c.letters()[0];
            if self.killed[l.generator()].is_some() {
                continue;
            }
            let e = Eqn::ctx(&u.inverse(), &eq, &u);
            let e = if l.is_inverse() { e.inv() } else { e };
            debug_assert!(e.lhs == Word::generator(l.generator()) && e.rhs.is_empty());
            self.killed[l.generator()] = Some(e);
            self.progress = true;
            if self.killed.iter().all(Option::is_some) {
                self.status = ElimStatus::AllKilled;
            }
        }
        self.status
    }

    /// Certificate for generator `g`, if it was killed.
    pub fn certificate(&self, g: usize) -> Option<TrivialityCertificate> {
        self.killed[g].as_ref().map(|e| flatten(&e.proof))
    }
}
