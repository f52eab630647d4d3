//! Lifting a semigroup derivation `h q₁ w h ⇒ q` to a certificate that
//! `β(w)` is trivial in `B(T)`.
//!
//! For a step `X F q G Y → X H q' K Y` by relation `i`, the relators give
//!
//! ```text
//! (X F q G Y)# = (x^a r x^a) · (X H q' K Y)# · (x^-b r⁻¹ x^-b)
//! a = 2^|X| - 1,  b = 2^|Y| - 1
//! ```
//!
//! using `F# q G = r (H# q' K) r⁻¹` and moving `r` across s-letters with
//! `s⁻¹ x s = x²`, `s⁻¹ r s = x r x`. Chaining the steps gives `Σ# = L q R`
//! with `L`, `R` words in `x` and the `r_i`; since `t` and `k` commute with
//! those letters and `k` commutes with `q⁻¹ t q`, the commutator collapses.
//! Every block is an [`Eqn`] and the final term is flattened and re-checked.

use std::collections::HashMap;

use super::proof::{flatten, Eqn};
use super::schema::{K_Q, K_R, K_X, MAIN, R_S, T_R, T_X, X_S};
use super::{check_certificate, BooneOutput, TrivialityCertificate};
use crate::core::word::reduced_product;
use crate::core::{Letter, Word};
use crate::error::{Error, Result};
use crate::post::{check_derivation, step_sides, Derivation, Direction};

struct Lifter<'a> {
    b: &'a BooneOutput,
    pull: HashMap<(usize, Vec<usize>), Eqn>,
    xpow: HashMap<(usize, usize), Eqn>,
}

impl<'a> Lifter<'a> {
    fn new(b: &'a BooneOutput) -> Self {
        Lifter { b, pull: HashMap::new(), xpow: HashMap::new() }
    }

    fn ax(&self, family: &str, binding: &[usize]) -> Eqn {
        let i = self.b.relator_index(family, binding).expect("schema family present");
        let (l, r) = self.b.relator_sides(i);
        Eqn::axiom(i, l, r)
    }

    fn x_pow(&self, e: i64) -> Word {
        Word::power(self.b.x, e)
    }

    fn r(&self, i: usize) -> Word {
        Word::generator(self.b.relation_gens[i])
    }

    /// `s⁻¹ x^m s = x^{2m}`.
    fn conj_x_power(&mut self, s: usize, m: usize) -> Eqn {
        if let Some(e) = self.xpow.get(&(s, m)) {
            return e.clone();
        }
        let si = Word::generator(s).inverse();
        let base = Eqn::ctx(&si, &self.ax(X_S, &[s]), &Word::empty());
        let mut e = Eqn::refl(&Word::empty());
        for _ in 0..m {
            e = e.mul(&base);
        }
        self.xpow.insert((s, m), e.clone());
        e
    }

    /// `seq⁻¹ r_i seq = x^m r_i x^m` with `m = 2^|seq| - 1`.
    fn pull_through(&mut self, i: usize, seq: &[usize]) -> Eqn {
        let key = (i, seq.to_vec());
        if let Some(e) = self.pull.get(&key) {
            return e.clone();
        }
        let e = match seq.split_last() {
            None => Eqn::refl(&self.r(i)),
            Some((&c, rest)) => {
                let inner = self.pull_through(i, rest);
                let m = (1usize << rest.len()) - 1;
                let cw = Word::generator(c);
                let ci = cw.inverse();
                // c⁻¹ (rest⁻¹ r rest) c = c⁻¹ x^m r x^m c
                let outer = Eqn::ctx(&ci, &inner, &cw);
                let xm = self.conj_x_power(c, m);
                let rc = Eqn::ctx(&ci, &self.ax(R_S, &[i, c]), &Word::empty());
                outer.trans(&xm.mul(&rc.mul(&xm)))
            }
        };
        self.pull.insert(key, e.clone());
        e
    }

    fn sharp_s(&self, w: &[usize]) -> Word {
        w.iter().map(|&g| Letter::neg(self.b.letter_gen(g))).collect()
    }

    /// `(X F q G Y)# = A · (X H q' K Y)# · B` for a forward application of
    /// relation `i` with context `X`, `Y`; returns the equation with `A`, `B`.
    fn forward_step(&mut self, i: usize, xs: &[usize], ys: &[usize]) -> (Eqn, Word, Word) {
        let r = self.r(i);
        let ri = r.inverse();
        let x_sharp = self.sharp_s(xs);
        let y = Word::positive(&ys.iter().map(|&g| self.b.letter_gen(g)).collect::<Vec<_>>());
        let a = (1i64 << xs.len()) - 1;
        let bexp = (1i64 << ys.len()) - 1;
        let big_a = self.x_pow(a).concat(&r).concat(&self.x_pow(a));
        let big_b = self.x_pow(-bexp).concat(&ri).concat(&self.x_pow(-bexp));

        // F# q G = r (H# q' K) r⁻¹
        let main = self.ax(MAIN, &[i]);
        let hqk = main.rhs.clone();
        let core = Eqn::ctx(&r, &main, &ri);
        let e1 = Eqn::ctx(&x_sharp, &core, &y);

        // X# r = x^a r x^a X#
        let rev: Vec<usize> = xs.iter().rev().map(|&g| self.b.letter_gen(g)).collect();
        let p = self.pull_through(i, &rev);
        let e2 = Eqn::ctx(&Word::empty(), &p, &x_sharp);
        let tail = hqk.concat(&ri).concat(&y);
        let e2 = Eqn::ctx(&Word::empty(), &e2, &tail);

        // r⁻¹ Y = Y x^-b r⁻¹ x^-b
        let ys_gens: Vec<usize> = ys.iter().map(|&g| self.b.letter_gen(g)).collect();
        let q = self.pull_through(i, &ys_gens).inv();
        let e3 = Eqn::ctx(&y, &q, &Word::empty());
        let head = big_a.concat(&x_sharp).concat(&hqk);
        let e3 = Eqn::ctx(&head, &e3, &Word::empty());

        (e1.trans(&e2).trans(&e3), big_a, big_b)
    }

    /// `g · W = W · g` where `g` commutes with `x` and every `r_i`.
    fn commute(&self, g: usize, w: &Word) -> Eqn {
        let (fam_r, fam_x) = if g == self.b.t { (T_R, T_X) } else { (K_R, K_X) };
        let gw = Word::generator(g);
        let mut e = Eqn::refl(&gw);
        let mut prefix = Word::empty();
        for &l in w.letters() {
            let y = Word::generator(l.generator());
            let base = if l.generator() == self.b.x {
                self.ax(fam_x, &[])
            } else {
                let i = self
                    .b
                    .relation_gens
                    .iter()
                    .position(|&r| r == l.generator())
                    .expect("letter is x or some r_i");
                self.ax(fam_r, &[i])
            };
            let step = if l.is_inverse() {
                let yi = y.inverse();
                Eqn::ctx(&yi, &base, &yi).sym()
            } else {
                base
            };
            let lw = Word::from_letters(vec![l]);
            e = Eqn::ctx(&Word::empty(), &e, &lw).trans(&Eqn::ctx(&prefix, &step, &Word::empty()));
            prefix.push(l);
        }
        e
    }
}

/// Equation `Σ# = L q R` for the derivation's start word `Σ`.
fn sigma_equation(l: &mut Lifter<'_>, d: &Derivation) -> Result<(Eqn, Word, Word)> {
    let sg = &l.b.post.presentation;
    let mut word = d.start.clone();
    let mut eqn = Eqn::refl(&l.b.sharp(&word)?);
    let mut left = Word::empty();
    let mut right = Word::empty();
    for step in &d.steps {
        let (from, to) = step_sides(sg, step).map_err(Error::InvalidDerivation)?;
        let xs = &word[..step.offset];
        let ys = &word[step.offset + from.len()..];
        let (e, a, b) = match step.direction {
            Direction::Forward => l.forward_step(step.relation, xs, ys),
            Direction::Backward => {
                let (e, a, b) = l.forward_step(step.relation, xs, ys);
                // (X H q' K Y)# = A⁻¹ (X F q G Y)# B⁻¹
                let (ai, bi) = (a.inverse(), b.inverse());
                (Eqn::ctx(&ai, &e.sym(), &bi), ai, bi)
            }
        };
        eqn = eqn.trans(&Eqn::ctx(&left, &e, &right));
        left = reduced_product(&left, &a);
        right = reduced_product(&b, &right);
        let mut next = xs.to_vec();
        next.extend_from_slice(to);
        next.extend_from_slice(ys);
        word = next;
    }
    Ok((eqn, left, right))
}

/// Equation `β = 1` for the start word of a verified derivation ending at `q`.
pub fn beta_equation(b: &BooneOutput, d: &Derivation) -> Result<Eqn> {
    let sg = &b.post.presentation;
    check_derivation(sg, d).map_err(Error::InvalidDerivation)?;
    if d.end != [b.post.q] {
        return Err(Error::InvalidDerivation("derivation must end at q".into()));
    }
    let start_ok = d.start.len() >= 3
        && d.start[0] == b.post.h
        && d.start[1] == b.post.states[0]
        && *d.start.last().expect("nonempty") == b.post.h
        && d.start[2..d.start.len() - 1].iter().all(|g| b.post.symbols.contains(g));
    if !start_ok {
        return Err(Error::InvalidDerivation("derivation must start at h q1 w h".into()));
    }

    let mut l = Lifter::new(b);
    let (e_sigma, left, right) = sigma_equation(&mut l, d)?;
    let e = Word::empty();
    let t = Word::generator(b.t);
    let k = Word::generator(b.k);
    let q = Word::generator(b.post.q);
    let u = q.inverse().concat(&t).concat(&q);

    // Σ#⁻¹ t Σ# = R⁻¹ U R
    let s_inv = e_sigma.inv();
    let big = s_inv.mul(&Eqn::refl(&t).mul(&e_sigma));
    let tl = Eqn::ctx(&left.inverse(), &l.commute(b.t, &left), &e);
    let qr = q.concat(&right);
    let collapse = Eqn::ctx(&reduced_product(&right.inverse(), &q.inverse()), &tl, &qr);
    let e_t = big.trans(&collapse);

    // β = k⁻¹ T⁻¹ k T = k⁻¹ R⁻¹ U⁻¹ R k R⁻¹ U R
    let ki = k.inverse();
    let expanded = Eqn::refl(&ki).mul(&e_t.inv().mul(&Eqn::refl(&k).mul(&e_t)));
    let kr = l.commute(b.k, &right);
    let rkr = Eqn::ctx(&e, &kr, &right.inverse()).sym();
    let pre = ki.concat(&right.inverse()).concat(&u.inverse());
    let s1 = Eqn::ctx(&pre, &rkr, &u.concat(&right));
    let ku = Eqn::ctx(&u.inverse(), &l.ax(K_Q, &[]), &e);
    let s2 = Eqn::ctx(&ki.concat(&right.inverse()), &ku, &right);
    let s3 = Eqn::ctx(&ki.concat(&right.inverse()), &kr, &e);
    let chain = expanded.then_all([&s1, &s2, &s3]);

    let beta = b.beta_of_special(&d.start)?;
    if chain.lhs != reduced_product(&beta, &e) || !chain.rhs.is_empty() {
        return Err(Error::InvalidDerivation("lifted equation does not close".into()));
    }
    Ok(chain)
}

/// Certificate that `β(w)` is trivial in `B(T)`, where `h q₁ w h` is the
/// derivation's start. The result is checked before it is returned.
pub fn certificate_from_derivation(b: &BooneOutput, d: &Derivation) -> Result<TrivialityCertificate> {
    let eqn = beta_equation(b, d)?;
    let cert = flatten(&eqn.proof);
    let beta = b.beta_of_special(&d.start)?;
    check_certificate(&b.presentation, &cert, &beta)
        .map_err(|e| Error::InvalidDerivation(format!("lifted certificate rejected: {e}")))?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boone::{beta, boone_encode, verify_certificate};
    use crate::machine::{phi_input, run, zoo};
    use crate::post::derive_from_trace;

    fn pipeline(m: &crate::machine::TuringMachine, n: usize) -> (BooneOutput, Derivation) {
        let b = boone_encode(m).unwrap();
        let t = run(m, &phi_input(n), 100).unwrap();
        let d = derive_from_trace(&b.post, m, &t).unwrap();
        (b, d)
    }

    #[test]
    fn halt1_certificate() {
        let (b, d) = pipeline(&zoo::halt1(), 0);
        let c = certificate_from_derivation(&b, &d).unwrap();
        let target = beta(&b, &Word::positive(&[1])).unwrap();
        assert!(verify_certificate(&b.presentation, &c, &target));
        let mut bad = c.clone();
        bad.entries[0].sign = -bad.entries[0].sign;
        assert!(!verify_certificate(&b.presentation, &bad, &target));
    }

    #[test]
    fn backward_steps_lift() {
        // Insert a detour: apply the first step forward, undo it, then continue.
        let (b, d) = pipeline(&zoo::halt1(), 0);
        let mut steps = vec![d.steps[0]];
        let mut back = d.steps[0];
        back.direction = Direction::Backward;
        steps.push(back);
        steps.extend(d.steps.iter().copied());
        let detour = Derivation { start: d.start.clone(), steps, end: d.end.clone() };
        let c = certificate_from_derivation(&b, &detour).unwrap();
        let target = b.beta_of_special(&d.start).unwrap();
        assert!(verify_certificate(&b.presentation, &c, &target));
    }

    #[test]
    fn rejects_bad_derivations() {
        let (b, d) = pipeline(&zoo::halt1(), 0);
        let empty = Derivation { start: d.start.clone(), steps: vec![], end: d.start.clone() };
        assert!(certificate_from_derivation(&b, &empty).is_err());
        let mut broken = d.clone();
        broken.steps[1].offset = 0;
        assert!(certificate_from_derivation(&b, &broken).is_err());
    }
}
