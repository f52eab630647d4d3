//! HLT coset enumeration that can carry proofs.
//!
//! Every coset `i` has a representative word `u_i` (the path along which it
//! was defined). With proofs switched on, each table entry `i·y = j` carries a
//! proof term whose value freely equals `u_i y u_j⁻¹`, and each union-find link
//! `c → p` one whose value freely equals `u_c u_p⁻¹`. Deductions and
//! coincidences come from scanning a relator `r` at a coset `c`, which
//! contributes `u_c r u_c⁻¹`. When the subgroup is trivial, reading a word
//! through a closed table therefore yields a triviality certificate.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::boone::proof::{
    concat, conj, conj_path, empty, flatten, inv, path_push, path_word, proof_size, relator, Proof, RepPath,
};
use crate::boone::TrivialityCertificate;
use crate::core::{GroupPresentation, Letter, Word};

use super::budget::Budget;

const NONE: u32 = u32::MAX;

/// Largest certificate expanded from a table's edge proofs.
pub const CERT_CAP: u64 = 1_000_000;

/// Default cap on allocated cosets.
pub const MAX_COSETS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumStatus {
    Running,
    Closed,
    /// The coset cap was hit; the enumeration cannot continue.
    Overflow,
}

struct Scanned {
    cols: Vec<usize>,
    /// Value freely equals the scanned word.
    proof: Option<Arc<Proof>>,
}

pub struct CosetEnumerator {
    ngens: usize,
    width: usize,
    relators: Vec<Scanned>,
    subgroup: Vec<Vec<usize>>,
    track: bool,
    table: Vec<u32>,
    proofs: Vec<Option<Arc<Proof>>>,
    reps: Vec<RepPath>,
    parent: Vec<u32>,
    link: Vec<Option<Arc<Proof>>>,
    queue: VecDeque<usize>,
    live: usize,
    next: usize,
    next_rel: usize,
    subgroup_done: bool,
    max_cosets: usize,
    status: EnumStatus,
    steps: u64,
}

fn cols_of(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

impl CosetEnumerator {
    /// Proofs are tracked only for the trivial subgroup.
    pub fn new(p: &GroupPresentation, subgroup: &[Word], max_cosets: usize) -> Self {
        let track = subgroup.is_empty();
        let relators = p
            .relators()
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let (core, u) = r.cyclic_core();
                if core.is_empty() {
                    return None;
                }
                // core = u⁻¹ r u
                let proof = track.then(|| conj(&u.inverse(), relator(i)));
                Some(Scanned { cols: cols_of(&core), proof })
            })
            .collect();
        let ngens = p.num_generators();
        let mut e = CosetEnumerator {
            ngens,
            width: 2 * ngens,
            relators,
            subgroup: subgroup.iter().map(cols_of).collect(),
            track,
            table: Vec::new(),
            proofs: Vec::new(),
            reps: Vec::new(),
            parent: Vec::new(),
            link: Vec::new(),
            queue: VecDeque::new(),
            live: 0,
            next: 0,
            next_rel: 0,
            subgroup_done: false,
            max_cosets: max_cosets.max(1),
            status: EnumStatus::Running,
            steps: 0,
        };
        e.new_coset(None);
        e
    }

    pub fn status(&self) -> EnumStatus {
        self.status
    }

    pub fn live_cosets(&self) -> usize {
        self.live
    }

    pub fn allocated(&self) -> usize {
        self.parent.len()
    }

    pub fn steps_used(&self) -> u64 {
        self.steps
    }

    fn new_coset(&mut self, rep: Option<(usize, usize)>) -> Option<usize> {
        let c = self.parent.len();
        if c >= self.max_cosets || c >= NONE as usize {
            self.status = EnumStatus::Overflow;
            return None;
        }
        self.table.extend(std::iter::repeat_n(NONE, self.width));
        if self.track {
            self.proofs.extend(std::iter::repeat_with(|| None).take(self.width));
        }
        let path = match rep {
            None => None,
            Some((f, col)) => path_push(&self.reps[f], Letter::from_column(col)),
        };
        self.reps.push(path);
        self.parent.push(c as u32);
        self.link.push(None);
        self.live += 1;
        self.steps += 1;
        Some(c)
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.width + col]
    }

    fn proof(&self, c: usize, col: usize) -> Arc<Proof> {
        self.proofs[c * self.width + col].clone().unwrap_or_else(empty)
    }

    fn set(&mut self, c: usize, col: usize, d: usize, p: Option<Arc<Proof>>) {
        self.table[c * self.width + col] = d as u32;
        if self.track {
            self.proofs[c * self.width + col] = p;
        }
    }

    fn unset(&mut self, c: usize, col: usize) {
        self.table[c * self.width + col] = NONE;
        if self.track {
            self.proofs[c * self.width + col] = None;
        }
    }

    /// Sets `c·col = d` and `d·col⁻¹ = c`; `p` has value `u_c y u_d⁻¹`.
    fn set_pair(&mut self, c: usize, col: usize, d: usize, p: Option<Arc<Proof>>) {
        let back = p.as_ref().map(|p| inv(p.clone()));
        self.set(c, col, d, p);
        self.set(d, col ^ 1, c, back);
    }

    fn define(&mut self, f: usize, col: usize) -> Option<usize> {
        let d = self.new_coset(Some((f, col)))?;
        self.set_pair(f, col, d, self.track.then(empty));
        Some(d)
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    /// Root of `c` and a proof with value `u_c u_root⁻¹`.
    fn find(&mut self, c: usize) -> (usize, Option<Arc<Proof>>) {
        let mut path = Vec::new();
        let mut r = c;
        while self.parent[r] as usize != r {
            path.push(r);
            r = self.parent[r] as usize;
        }
        let mut acc = self.track.then(empty);
        for &n in path.iter().rev() {
            if self.track {
                let own = self.link[n].clone().unwrap_or_else(empty);
                acc = Some(concat(vec![own, acc.expect("tracked")]));
                self.link[n] = acc.clone();
            }
            self.parent[n] = r as u32;
        }
        (r, acc)
    }

    /// Records `u_k = u_l` (proof value `u_k u_l⁻¹`) and queues the loser.
    fn merge(&mut self, k: usize, l: usize, m: Option<Arc<Proof>>) {
        let (a, pk) = self.find(k);
        let (b, pl) = self.find(l);
        if a == b {
            return;
        }
        // u_a u_b⁻¹ = (u_a u_k⁻¹)(u_k u_l⁻¹)(u_l u_b⁻¹)
        let ab = self.track.then(|| {
            concat(vec![inv(pk.expect("tracked")), m.expect("tracked"), pl.expect("tracked")])
        });
        let (keep, lose, lose_link) = if a < b {
            (a, b, ab.map(inv))
        } else {
            (b, a, ab)
        };
        self.parent[lose] = keep as u32;
        self.link[lose] = lose_link;
        self.live -= 1;
        self.queue.push_back(lose);
    }

    fn coincidence(&mut self, a: usize, b: usize, m: Option<Arc<Proof>>) {
        self.merge(a, b, m);
        while let Some(g) = self.queue.pop_front() {
            for col in 0..self.width {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                let e = self.track.then(|| self.proof(g, col));
                if self.get(d, col ^ 1) as usize == g {
                    self.unset(d, col ^ 1);
                }
                self.unset(g, col);
                let (mu, pg) = self.find(g);
                let (nu, pd) = self.find(d);
                // u_mu y u_nu⁻¹ = (u_mu u_g⁻¹)(u_g y u_d⁻¹)(u_d u_nu⁻¹)
                let dp = self.track.then(|| {
                    concat(vec![inv(pg.expect("tracked")), e.expect("tracked"), pd.expect("tracked")])
                });
                let mu_x = self.get(mu, col);
                let nu_xi = self.get(nu, col ^ 1);
                if mu_x != NONE {
                    let ep = self.track.then(|| self.proof(mu, col));
                    let m = self.track.then(|| concat(vec![inv(dp.expect("tracked")), ep.expect("tracked")]));
                    self.merge(nu, mu_x as usize, m);
                } else if nu_xi != NONE {
                    let ep = self.track.then(|| self.proof(nu, col ^ 1));
                    let m = self.track.then(|| concat(vec![dp.expect("tracked"), ep.expect("tracked")]));
                    self.merge(mu, nu_xi as usize, m);
                } else {
                    self.set_pair(mu, col, nu, dp);
                }
            }
            self.reps[g] = None;
        }
    }

    /// HLT scan of `word` at coset `c`, defining cosets to close the cycle.
    /// `rel` has value `word`.
    fn scan_and_fill(&mut self, c: usize, word: &[usize], rel: Option<&Arc<Proof>>) {
        let n = word.len();
        let (mut f, mut i) = (c, 0);
        let (mut b, mut j) = (c, n);
        let mut fparts: Vec<Arc<Proof>> = Vec::new();
        let mut bparts: Vec<Arc<Proof>> = Vec::new();
        loop {
            while i < j {
                let nx = self.get(f, word[i]);
                if nx == NONE {
                    break;
                }
                if self.track {
                    fparts.push(self.proof(f, word[i]));
                }
                f = nx as usize;
                i += 1;
            }
            if i < j {
                while j > i {
                    let col = word[j - 1] ^ 1;
                    let nx = self.get(b, col);
                    if nx == NONE {
                        break;
                    }
                    if self.track {
                        bparts.push(self.proof(b, col));
                    }
                    b = nx as usize;
                    j -= 1;
                }
            }
            // u_f·word[i..j]·u_b⁻¹ = (u_c word[..i] u_f⁻¹)⁻¹ (u_c word u_c⁻¹) (u_b word[j..] u_c⁻¹)⁻¹
            let closing = |s: &Self| {
                s.track.then(|| {
                    concat(vec![
                        inv(concat(fparts.clone())),
                        conj_path(&s.reps[c], rel.expect("tracked").clone()),
                        concat(bparts.clone()),
                    ])
                })
            };
            if i == j {
                if f != b {
                    let m = closing(self);
                    self.coincidence(f, b, m);
                }
                return;
            }
            if j == i + 1 {
                let p = closing(self);
                self.set_pair(f, word[i], b, p);
                return;
            }
            if self.define(f, word[i]).is_none() {
                return;
            }
        }
    }

    /// Runs for about `steps` steps.
    pub fn run(&mut self, steps: u64) -> EnumStatus {
        let stop = self.steps.saturating_add(steps);
        while self.status == EnumStatus::Running && self.steps < stop {
            if !self.subgroup_done {
                for k in 0..self.subgroup.len() {
                    let w = self.subgroup[k].clone();
                    let (c, _) = self.find(0);
                    self.scan_and_fill(c, &w, None);
                    self.steps += 1;
                    if self.status != EnumStatus::Running {
                        return self.status;
                    }
                }
                self.subgroup_done = true;
                continue;
            }
            if self.next >= self.parent.len() {
                if self.consistent() {
                    self.status = EnumStatus::Closed;
                } else {
                    // Rescan from the start; cheap when almost everything holds.
                    self.next = 0;
                    self.next_rel = 0;
                }
                continue;
            }
            let c = self.next;
            if !self.is_live(c) {
                self.next += 1;
                self.next_rel = 0;
                continue;
            }
            if self.next_rel < self.relators.len() {
                let r = self.next_rel;
                self.next_rel += 1;
                let cols = std::mem::take(&mut self.relators[r].cols);
                let proof = self.relators[r].proof.clone();
                self.scan_and_fill(c, &cols, proof.as_ref());
                self.relators[r].cols = cols;
                self.steps += 1;
                continue;
            }
            for col in 0..self.width {
                if !self.is_live(c) || self.status != EnumStatus::Running {
                    break;
                }
                if self.get(c, col) == NONE && self.define(c, col).is_none() {
                    break;
                }
            }
            self.next += 1;
            self.next_rel = 0;
        }
        self.status
    }

    /// All live rows complete and every relator and subgroup word loops.
    fn consistent(&self) -> bool {
        let live: Vec<usize> = (0..self.parent.len()).filter(|&c| self.is_live(c)).collect();
        let trace = |mut c: usize, w: &[usize]| -> Option<usize> {
            for &col in w {
                let d = self.get(c, col);
                if d == NONE || !self.is_live(d as usize) {
                    return None;
                }
                c = d as usize;
            }
            Some(c)
        };
        for &c in &live {
            for col in 0..self.width {
                let d = self.get(c, col);
                if d == NONE || !self.is_live(d as usize) || self.get(d as usize, col ^ 1) as usize != c {
                    return false;
                }
            }
            for r in &self.relators {
                if trace(c, &r.cols) != Some(c) {
                    return false;
                }
            }
        }
        self.subgroup.iter().all(|h| trace(0, h) == Some(0))
    }

    /// The compacted table, once closed.
    pub fn table(&self) -> Option<CosetTable> {
        if self.status != EnumStatus::Closed {
            return None;
        }
        let live: Vec<usize> = (0..self.parent.len()).filter(|&c| self.is_live(c)).collect();
        let mut index = vec![usize::MAX; self.parent.len()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        let rows = live
            .iter()
            .map(|&c| (0..self.width).map(|col| Some(index[self.get(c, col) as usize])).collect())
            .collect();
        let edge_proofs = self.track.then(|| {
            live.iter().map(|&c| (0..self.width).map(|col| self.proof(c, col)).collect()).collect()
        });
        Some(CosetTable {
            generators: self.ngens,
            rows,
            closed: true,
            reps: live.iter().map(|&c| path_word(&self.reps[c])).collect(),
            edge_proofs,
        })
    }
}

/// Rows are cosets, columns are `g₀, g₀⁻¹, g₁, g₁⁻¹, …`. Row 0 is the
/// subgroup coset.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub generators: usize,
    pub rows: Vec<Vec<Option<usize>>>,
    pub closed: bool,
    /// Word leading from coset 0 to each coset.
    pub reps: Vec<Word>,
    edge_proofs: Option<Vec<Vec<Arc<Proof>>>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_proofs(&self) -> bool {
        self.edge_proofs.is_some()
    }

    /// `from · w`, or `None` at an undefined entry.
    pub fn trace(&self, from: usize, w: &Word) -> Option<usize> {
        let mut c = from;
        for l in w.letters() {
            c = (*self.rows.get(c)?.get(l.column())?)?;
        }
        Some(c)
    }

    /// A closed permutation table in which every relator and subgroup word
    /// fixes the relevant cosets.
    pub fn verify(&self, p: &GroupPresentation, subgroup: &[Word]) -> Result<(), String> {
        if self.generators != p.num_generators() {
            return Err("generator count differs".into());
        }
        if self.rows.is_empty() {
            return Err("empty table".into());
        }
        let width = 2 * self.generators;
        for (c, row) in self.rows.iter().enumerate() {
            if row.len() != width {
                return Err(format!("row {c} has {} columns", row.len()));
            }
            for (col, e) in row.iter().enumerate() {
                let d = e.ok_or_else(|| format!("entry ({c}, {col}) undefined"))?;
                if self.rows.get(d).and_then(|r| r[col ^ 1]) != Some(c) {
                    return Err(format!("entry ({c}, {col}) has no matching inverse"));
                }
            }
        }
        for (i, r) in p.relators().iter().enumerate() {
            for c in 0..self.rows.len() {
                if self.trace(c, r) != Some(c) {
                    return Err(format!("relator {i} does not loop at coset {c}"));
                }
            }
        }
        for (i, h) in subgroup.iter().enumerate() {
            if self.trace(0, h) != Some(0) {
                return Err(format!("subgroup generator {i} does not fix coset 0"));
            }
        }
        Ok(())
    }

    /// Certificate for `w` when `0 · w = 0`, read off the edge proofs. `None`
    /// when `w` does not loop, proofs were not kept, or the expansion would
    /// exceed [`CERT_CAP`] entries.
    pub fn certificate(&self, w: &Word) -> Option<TrivialityCertificate> {
        let proofs = self.edge_proofs.as_ref()?;
        let mut c = 0;
        let mut parts = Vec::new();
        for l in w.letters() {
            parts.push(proofs.get(c)?.get(l.column())?.clone());
            c = (*self.rows.get(c)?.get(l.column())?)?;
        }
        if c != 0 {
            return None;
        }
        let p = concat(parts);
        (proof_size(&p) <= CERT_CAP).then(|| flatten(&p))
    }
}

/// Enumerates cosets of `⟨subgroup⟩` until the table closes or the budget runs
/// out. One step is one coset definition or one relator scan.
pub fn coset_enumerate(p: &GroupPresentation, subgroup: &[Word], budget: &Budget) -> Option<CosetTable> {
    let mut e = CosetEnumerator::new(p, subgroup, MAX_COSETS);
    let mut meter = budget.meter();
    while !meter.exhausted() {
        let grant = meter.grant(4096);
        let before = e.steps_used();
        match e.run(grant) {
            EnumStatus::Closed => return e.table(),
            EnumStatus::Overflow => return None,
            EnumStatus::Running => meter.charge((e.steps_used() - before).max(1)),
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boone::verify_certificate;
    use crate::core::{parse_presentation, parse_word};
    use crate::gordon::gordon;

    fn a5() -> GroupPresentation {
        parse_presentation("group A5\ngens a b\nrel a^2\nrel b^3\nrel a b a b a b a b a b\n").unwrap()
    }

    #[test]
    fn orders() {
        let cases = [
            ("group C5\ngens a\nrel a^5\n", 5),
            ("group T\ngens a b\nrel a\nrel b\n", 1),
            ("group S3\ngens a b\nrel a^2\nrel b^3\nrel a b a b\n", 6),
            ("group Q8\ngens i j\nrel i^4\nrel i^2 j^-2\nrel j^-1 i j i\n", 8),
        ];
        for (text, n) in cases {
            let p = parse_presentation(text).unwrap();
            let t = coset_enumerate(&p, &[], &Budget::default()).unwrap();
            assert_eq!(t.len(), n, "{text}");
            t.verify(&p, &[]).unwrap();
        }
        let t = coset_enumerate(&a5(), &[], &Budget::default()).unwrap();
        assert_eq!(t.len(), 60);
        t.verify(&a5(), &[]).unwrap();
    }

    #[test]
    fn subgroup_index() {
        let p = a5();
        let h = vec![parse_word(&p, "a").unwrap(), parse_word(&p, "b").unwrap()];
        assert_eq!(coset_enumerate(&p, &h[..1], &Budget::default()).unwrap().len(), 30);
        assert_eq!(coset_enumerate(&p, &h[1..], &Budget::default()).unwrap().len(), 20);
        let t = coset_enumerate(&p, &h, &Budget::default()).unwrap();
        assert_eq!(t.len(), 1);
        t.verify(&p, &h).unwrap();
        assert!(!t.has_proofs());
    }

    #[test]
    fn certificates_from_table() {
        let p = a5();
        let t = coset_enumerate(&p, &[], &Budget::default()).unwrap();
        for text in ["a^2", "b^-3", "a b a b a b a b a b", "b a b a b a b a b a", "a b^-1 a b a^-1 b^-1 a^-1 b a b^-1 a b"] {
            let w = parse_word(&p, text).unwrap();
            match t.certificate(&w) {
                Some(c) => assert!(verify_certificate(&p, &c, &w), "{text}"),
                None => assert_ne!(t.trace(0, &w), Some(0)),
            }
        }
        // (a b)^5 = 1 conjugated
        let w = parse_word(&p, "b a b a b a b a b a").unwrap();
        assert!(t.certificate(&w).is_some());
        assert!(t.certificate(&parse_word(&p, "a").unwrap()).is_none());
    }

    #[test]
    fn gordon_of_trivial_word_closes() {
        let p = parse_presentation("group X\ngens x\nrel x\n").unwrap();
        let g = gordon(&p, &Word::generator(0)).unwrap();
        let t = coset_enumerate(&g, &[], &Budget::default()).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.certificate(&Word::generator(0)).is_some());
        for i in 0..g.num_generators() {
            if let Some(c) = t.certificate(&Word::generator(i)) {
                assert!(verify_certificate(&g, &c, &Word::generator(i)));
            }
        }
    }

    #[test]
    fn budget_and_overflow() {
        let p = a5();
        assert!(coset_enumerate(&p, &[], &Budget::steps(10)).is_none());
        let mut e = CosetEnumerator::new(&p, &[], 20);
        assert_eq!(e.run(1_000_000), EnumStatus::Overflow);
        let free = parse_presentation("group F\ngens a\n").unwrap();
        assert!(coset_enumerate(&free, &[], &Budget::steps(10_000)).is_none());
    }
}
