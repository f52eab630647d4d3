//! Group presentations and the product constructions built on them.

use std::collections::{HashMap, HashSet};

use super::word::{commutator, Word};
use crate::error::{Error, Result};

/// A generator of a presentation: its dense index and display name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorId {
    pub index: usize,
    pub name: String,
}

/// `⟨X | R⟩` with named generators and relators kept in construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    name: String,
    generators: Vec<String>,
    relators: Vec<Word>,
}

/// Names usable in the text formats: no whitespace, `^`, `=` or `#`, and not `1`.
pub fn is_valid_token(s: &str) -> bool {
    !s.is_empty()
        && s != "1"
        && !s.starts_with('-')
        && s.chars().all(|c| !c.is_whitespace() && c != '^' && c != '=' && c != '#')
}

/// Appends prime marks to `base` until it is not in `taken`.
pub fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

impl GroupPresentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self> {
        let name = name.into();
        if !is_valid_token(&name) {
            return Err(Error::InvalidArgument(format!("bad presentation name `{name}`")));
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if !is_valid_token(g) {
                return Err(Error::InvalidArgument(format!("bad generator name `{g}`")));
            }
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            check_word(r, generators.len())?;
        }
        Ok(GroupPresentation { name, generators, relators })
    }

    /// Generator names from string literals, handy in tests.
    pub fn from_names(name: &str, gens: &[&str], relators: Vec<Word>) -> Result<Self> {
        Self::new(name, gens.iter().map(|s| s.to_string()).collect(), relators)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        if is_valid_token(&name) {
            self.name = name;
        }
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> Option<GeneratorId> {
        self.generators.get(index).map(|n| GeneratorId { index, name: n.clone() })
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn name_map(&self) -> HashMap<&str, usize> {
        self.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect()
    }

    /// Validates that `w` only uses generators of this presentation.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        check_word(w, self.generators.len())
    }

    /// Same generators, one extra relator appended.
    pub fn with_relator(&self, w: Word) -> Result<Self> {
        self.check_word(&w)?;
        let mut p = self.clone();
        p.relators.push(w);
        Ok(p)
    }

    /// Same generators, extra relators appended in order.
    pub fn with_relators(&self, ws: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut p = self.clone();
        for w in ws {
            p.check_word(&w)?;
            p.relators.push(w);
        }
        Ok(p)
    }

    /// Appends a generator with a fresh (prime-suffixed on clash) name; returns its index.
    pub(crate) fn push_fresh_generator(&mut self, base: &str) -> usize {
        let taken: HashSet<String> = self.generators.iter().cloned().collect();
        self.generators.push(fresh_name(base, &taken));
        self.generators.len() - 1
    }

    pub(crate) fn push_relator_unchecked(&mut self, w: Word) {
        self.relators.push(w);
    }
}

pub(crate) fn check_word(w: &Word, count: usize) -> Result<()> {
    match w.max_generator() {
        Some(g) if g >= count => Err(Error::GeneratorOutOfRange { index: g, count }),
        _ => Ok(()),
    }
}

/// `P * Q`: generators of `P` then `Q` (shifted, renamed with primes on clash),
/// relators of `P` then `Q`.
pub fn free_product(p: &GroupPresentation, q: &GroupPresentation) -> GroupPresentation {
    let shift = p.num_generators();
    let mut taken: HashSet<String> = p.generators.iter().cloned().collect();
    let mut generators = p.generators.clone();
    for g in &q.generators {
        let n = fresh_name(g, &taken);
        taken.insert(n.clone());
        generators.push(n);
    }
    let mut relators = p.relators.clone();
    relators.extend(q.relators.iter().map(|r| r.relabel(|g| g + shift)));
    GroupPresentation {
        name: format!("{}*{}", p.name, q.name),
        generators,
        relators,
    }
}

/// `P × C_p`: a fresh generator `z` with `z^p` and `[x, z]` for every generator `x`.
pub fn direct_product_with_cyclic(p: &GroupPresentation, order: u64) -> Result<GroupPresentation> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!("cyclic factor order must be >= 2, got {order}")));
    }
    let mut out = p.clone();
    out.name = format!("{}xC{}", p.name, order);
    let z = out.push_fresh_generator("z");
    out.relators.push(Word::power(z, order as i64));
    for x in 0..p.num_generators() {
        out.relators.push(commutator(&Word::generator(x), &Word::generator(z)));
    }
    Ok(out)
}

/// `P^ab`: appends `[x_i, x_j]` for every pair `i < j`.
pub fn abelianize(p: &GroupPresentation) -> GroupPresentation {
    let mut out = p.clone();
    out.name = format!("{}.ab", p.name);
    let n = p.num_generators();
    for i in 0..n {
        for j in (i + 1)..n {
            out.relators.push(commutator(&Word::generator(i), &Word::generator(j)));
        }
    }
    out
}
