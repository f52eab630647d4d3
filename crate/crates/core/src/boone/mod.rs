//! Boone's group `B(T)` over Post's semigroup `Γ(T)`, the word `β(w)`, and
//! triviality certificates lifted from semigroup derivations.

mod certificate;
mod lift;
pub mod proof;
mod schema;

use std::collections::{HashMap, HashSet};

pub use certificate::{
    check_certificate, format_certificate, parse_certificate, verify_certificate, CertEntry,
    TrivialityCertificate,
};
pub use lift::{beta_equation, certificate_from_derivation};
pub use schema::{boone_schema_checksum, post_schema_checksum, Bound, SchemaRow, BOONE_SCHEMA};

use crate::core::presentation::fresh_name;
use crate::core::{commutator, GroupPresentation, Letter, Word};
use crate::error::{Error, Result};
use crate::machine::TuringMachine;
use crate::post::{post_encode, PositiveWord, PostEncoding};

/// `B(T)` with the bookkeeping needed to build `β(w)` and lift derivations.
///
/// Generators: the letters of `Γ(T)` in their semigroup order (s-letters,
/// then q-letters), then one `r_i` per relation, then `x`, `t`, `k`.
#[derive(Debug, Clone)]
pub struct BooneOutput {
    pub presentation: GroupPresentation,
    pub post: PostEncoding,
    /// Generator of `r_i` for each relation `i` of `Γ(T)`.
    pub relation_gens: Vec<usize>,
    pub x: usize,
    pub t: usize,
    pub k: usize,
    /// `(lhs, rhs)` of every relator, with `relator = lhs · rhs⁻¹`.
    sides: Vec<(Word, Word)>,
    lookup: HashMap<(&'static str, Vec<usize>), usize>,
}

impl BooneOutput {
    /// Group generator of a semigroup letter.
    pub fn letter_gen(&self, letter: usize) -> usize {
        letter
    }

    /// Relator index of a schema family at a binding.
    pub fn relator_index(&self, family: &str, binding: &[usize]) -> Option<usize> {
        self.lookup.get(&(family_key(family)?, binding.to_vec())).copied()
    }

    pub fn relator_sides(&self, i: usize) -> &(Word, Word) {
        &self.sides[i]
    }

    /// `X#·q·Y` for a special semigroup word `X q Y`.
    pub fn sharp(&self, w: &[usize]) -> Result<Word> {
        let sp = self.post.presentation.split_special(w).ok_or_else(|| {
            Error::InvalidArgument("word must contain exactly one q-letter".into())
        })?;
        let mut out: Word = sp.left.iter().map(|&g| Letter::neg(self.letter_gen(g))).collect();
        out.push(Letter::pos(self.letter_gen(sp.q)));
        for &g in sp.right {
            out.push(Letter::pos(self.letter_gen(g)));
        }
        Ok(out)
    }

    /// `[k, Σ#⁻¹ t Σ#]` for a special word `Σ`.
    pub fn beta_of_special(&self, sigma: &[usize]) -> Result<Word> {
        let s = self.sharp(sigma)?;
        let inner = s.inverse().concat(&Word::generator(self.t)).concat(&s);
        Ok(commutator(&Word::generator(self.k), &inner))
    }

    /// `Σ = h q₁ w h` for a tape `w` (the empty tape is one blank).
    pub fn sigma(&self, tape: &[usize]) -> PositiveWord {
        let enc = &self.post;
        let mut w = vec![enc.h, enc.states[0]];
        if tape.is_empty() {
            w.push(enc.symbols[0]);
        }
        w.extend(tape.iter().map(|&s| enc.symbols[s]));
        w.push(enc.h);
        w
    }
}

fn family_key(family: &str) -> Option<&'static str> {
    BOONE_SCHEMA.iter().map(|r| r.family).find(|f| *f == family)
}

/// Builds `B(T)` from `Γ(T)` by interpreting [`BOONE_SCHEMA`].
pub fn boone_encode(m: &TuringMachine) -> Result<BooneOutput> {
    boone_from_post(post_encode(m)?)
}

pub fn boone_from_post(post: PostEncoding) -> Result<BooneOutput> {
    let sg = &post.presentation;
    sg.check_special()?;
    let mut names: Vec<String> = sg.generators().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut add = |base: &str, names: &mut Vec<String>| {
        let n = fresh_name(base, &taken);
        taken.insert(n.clone());
        names.push(n);
        names.len() - 1
    };
    let relation_gens: Vec<usize> =
        (0..sg.relations().len()).map(|i| add(&format!("r{i}"), &mut names)).collect();
    let x = add("x", &mut names);
    let t = add("t", &mut names);
    let k = add("k", &mut names);
    let s_letters: Vec<usize> = sg.s_letters().collect();

    let mut sides = Vec::new();
    let mut lookup = HashMap::new();
    for row in BOONE_SCHEMA {
        let mut bindings: Vec<Vec<usize>> = vec![vec![]];
        for b in row.over {
            let range: Vec<usize> = match b {
                Bound::S => s_letters.clone(),
                Bound::R => (0..sg.relations().len()).collect(),
            };
            bindings = bindings
                .into_iter()
                .flat_map(|prefix| {
                    range.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        for binding in bindings {
            let env = Env { row, binding: &binding, post: &post, relation_gens: &relation_gens, x, t, k };
            let lhs = env.expand(row.lhs)?;
            let rhs = env.expand(row.rhs)?;
            lookup.insert((row.family, binding), sides.len());
            sides.push((lhs, rhs));
        }
    }
    let relators = sides.iter().map(|(l, r)| l.concat(&r.inverse())).collect();
    let name = format!("BOONE-{}", sg.name().strip_prefix("POST-").unwrap_or(sg.name()));
    let presentation = GroupPresentation::new(name, names, relators)?;
    Ok(BooneOutput { presentation, post, relation_gens, x, t, k, sides, lookup })
}

struct Env<'a> {
    row: &'a SchemaRow,
    binding: &'a [usize],
    post: &'a PostEncoding,
    relation_gens: &'a [usize],
    x: usize,
    t: usize,
    k: usize,
}

impl Env<'_> {
    fn var(&self, b: Bound) -> Result<usize> {
        self.row
            .over
            .iter()
            .position(|&v| v == b)
            .map(|p| self.binding[p])
            .ok_or_else(|| Error::InvalidArgument(format!("schema row `{}` uses an unbound variable", self.row.family)))
    }

    fn expand(&self, template: &str) -> Result<Word> {
        let mut out = Word::empty();
        for tok in template.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let piece: Word = match name {
                "x" => Word::generator(self.x),
                "t" => Word::generator(self.t),
                "k" => Word::generator(self.k),
                "q" => Word::generator(self.post.q),
                "s" => Word::generator(self.var(Bound::S)?),
                "r" => Word::generator(self.relation_gens[self.var(Bound::R)?]),
                "F#" | "G" | "q_l" | "H#" | "K" | "q_r" => {
                    let rel = &self.post.presentation.relations()[self.var(Bound::R)?];
                    let side = if matches!(name, "F#" | "G" | "q_l") { &rel.lhs } else { &rel.rhs };
                    let sp = self.post.presentation.split_special(side).ok_or_else(|| {
                        Error::NotSpecial { index: self.var(Bound::R).unwrap_or(0), msg: "no unique q-letter".into() }
                    })?;
                    match name {
                        "F#" | "H#" => sp.left.iter().map(|&g| Letter::neg(g)).collect(),
                        "G" | "K" => Word::positive(sp.right),
                        _ => Word::generator(sp.q),
                    }
                }
                other => {
                    return Err(Error::InvalidArgument(format!("unknown schema token `{other}`")))
                }
            };
            out.extend(&if inverse { piece.inverse() } else { piece });
        }
        Ok(out)
    }
}

/// `β(w)` for a positive word `w` over the machine alphabet: `[k, Σ#⁻¹ t Σ#]`
/// with `Σ = h q₁ w h` and `Σ# = h⁻¹ q₁ w h`.
pub fn beta(b: &BooneOutput, w: &Word) -> Result<Word> {
    if !w.is_positive() {
        return Err(Error::InvalidArgument("beta needs a positive word".into()));
    }
    let symbols = b.post.symbols.len();
    if let Some(g) = w.max_generator().filter(|&g| g >= symbols) {
        return Err(Error::GeneratorOutOfRange { index: g, count: symbols });
    }
    let tape: Vec<usize> = w.letters().iter().map(|l| l.generator()).collect();
    b.beta_of_special(&b.sigma(&tape))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelian_invariants;
    use crate::core::format_presentation;
    use crate::machine::{phi_input, zoo};

    #[test]
    fn generator_and_relator_counts() {
        for m in zoo::all() {
            let b = boone_encode(&m).unwrap();
            let sg = &b.post.presentation;
            let s = sg.s_letters().count();
            let q = sg.q_letters().count();
            let i = sg.relations().len();
            assert_eq!(b.presentation.num_generators(), s + q + i + 3);
            assert_eq!(b.presentation.num_relators(), s * (1 + i) + 3 * i + 3);
        }
        // HALT1: 3 s-letters, 4 q-letters, 7 relations.
        let b = boone_encode(&zoo::halt1()).unwrap();
        assert_eq!(b.presentation.num_generators(), 17);
        assert_eq!(b.presentation.num_relators(), 3 * 8 + 21 + 3);
    }

    #[test]
    fn halt1_main_relator() {
        let b = boone_encode(&zoo::halt1()).unwrap();
        let i = b.relator_index("main", &[0]).unwrap();
        let text = format_presentation(&b.presentation);
        let line = text.lines().filter(|l| l.starts_with("rel ")).nth(i).unwrap();
        // r0⁻¹ q1 s1 r0 = qh s1
        assert_eq!(line, "rel r0^-1 q1 s1 r0 s1^-1 qh^-1");
        let j = b.relator_index("main", &[6]).unwrap();
        let line = text.lines().filter(|l| l.starts_with("rel ")).nth(j).unwrap();
        // r6⁻¹ h⁻¹ qhat h r6 = q
        assert_eq!(line, "rel r6^-1 h^-1 qhat h r6 q^-1");
    }

    #[test]
    fn uniform() {
        let a = format_presentation(&boone_encode(&zoo::scan()).unwrap().presentation);
        let b = format_presentation(&boone_encode(&zoo::scan()).unwrap().presentation);
        assert_eq!(a, b);
    }

    #[test]
    fn abelianization_smoke() {
        let b = boone_encode(&zoo::halt1()).unwrap();
        let inv = abelian_invariants(&b.presentation);
        assert!(inv.free_rank > 0);
    }

    #[test]
    fn beta_length_slope() {
        let b = boone_encode(&zoo::halt1()).unwrap();
        for n in 0..6 {
            let w = Word::positive(&phi_input(n));
            let bw = beta(&b, &w).unwrap();
            assert_eq!(bw.len(), 4 * n + 20);
            assert!(bw.is_reduced());
            assert_eq!(bw, beta(&b, &w).unwrap());
        }
        assert!(beta(&b, &Word::power(1, -1)).is_err());
        assert!(beta(&b, &Word::generator(5)).is_err());
    }
}
