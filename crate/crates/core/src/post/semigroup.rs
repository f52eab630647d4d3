//! Semigroup presentations over s-letters and q-letters, and their text format.
//!
//! ```text
//! semigroup POST-HALT1
//! sletters h s0 s1
//! qletters q qhat q1 qh
//! rel q1 s1 = qh s1
//! ```

use std::collections::{HashMap, HashSet};

use crate::core::presentation::is_valid_token;
use crate::error::{Error, Result};

/// A positive word as a list of generator indices.
pub type PositiveWord = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterKind {
    S,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: PositiveWord,
    pub rhs: PositiveWord,
}

/// Special form of one side: `F · q · G` with `F`, `G` s-words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialWord<'a> {
    pub left: &'a [usize],
    pub q: usize,
    pub right: &'a [usize],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupPresentation {
    name: String,
    generators: Vec<String>,
    kinds: Vec<LetterKind>,
    relations: Vec<Relation>,
}

impl SemigroupPresentation {
    /// Generators must list all s-letters before all q-letters.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        kinds: Vec<LetterKind>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        let name = name.into();
        if !is_valid_token(&name) {
            return Err(Error::InvalidArgument(format!("bad semigroup name `{name}`")));
        }
        if generators.len() != kinds.len() {
            return Err(Error::InvalidArgument("one kind per generator required".into()));
        }
        if kinds.windows(2).any(|w| w[0] == LetterKind::Q && w[1] == LetterKind::S) {
            return Err(Error::InvalidArgument("s-letters must precede q-letters".into()));
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if !is_valid_token(g) {
                return Err(Error::InvalidArgument(format!("bad letter name `{g}`")));
            }
            if !seen.insert(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len();
        for (i, r) in relations.iter().enumerate() {
            if r.lhs.iter().chain(&r.rhs).any(|&g| g >= n) {
                return Err(Error::InvalidArgument(format!("relation {i} uses an unknown letter")));
            }
        }
        Ok(SemigroupPresentation { name, generators, kinds, relations })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn kind(&self, g: usize) -> LetterKind {
        self.kinds[g]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn s_letters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.generators.len()).filter(|&g| self.kinds[g] == LetterKind::S)
    }

    pub fn q_letters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.generators.len()).filter(|&g| self.kinds[g] == LetterKind::Q)
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Splits a word as `F · q · G`; fails unless there is exactly one q-letter.
    pub fn split_special<'a>(&self, w: &'a [usize]) -> Option<SpecialWord<'a>> {
        let mut qs = w.iter().enumerate().filter(|(_, &g)| self.kinds[g] == LetterKind::Q);
        let (pos, &q) = qs.next()?;
        if qs.next().is_some() {
            return None;
        }
        Some(SpecialWord { left: &w[..pos], q, right: &w[pos + 1..] })
    }

    /// Every relation side contains exactly one q-letter.
    pub fn check_special(&self) -> Result<()> {
        for (index, r) in self.relations.iter().enumerate() {
            for (side, w) in [("left", &r.lhs), ("right", &r.rhs)] {
                if self.split_special(w).is_none() {
                    return Err(Error::NotSpecial {
                        index,
                        msg: format!("{side} side must contain exactly one q-letter"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&g| self.generators[g].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_word(&self, text: &str, line: usize) -> Result<PositiveWord> {
        let text = text.trim();
        if text == "1" {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|t| {
                self.letter_index(t).ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("unknown letter `{t}`"),
                })
            })
            .collect()
    }
}

pub fn format_semigroup(s: &SemigroupPresentation) -> String {
    let names = |k: LetterKind| {
        (0..s.generators.len())
            .filter(|&g| s.kinds[g] == k)
            .map(|g| format!(" {}", s.generators[g]))
            .collect::<String>()
    };
    let mut out = format!(
        "semigroup {}\nsletters{}\nqletters{}\n",
        s.name,
        names(LetterKind::S),
        names(LetterKind::Q)
    );
    for r in &s.relations {
        out.push_str(&format!("rel {} = {}\n", s.format_word(&r.lhs), s.format_word(&r.rhs)));
    }
    out
}

pub fn parse_semigroup(text: &str) -> Result<SemigroupPresentation> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut name = None;
    let mut sl: Option<Vec<String>> = None;
    let mut ql: Option<Vec<String>> = None;
    let mut raw_rels: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "semigroup" => name = Some(rest.to_string()),
            "sletters" => sl = Some(rest.split_whitespace().map(str::to_string).collect()),
            "qletters" => ql = Some(rest.split_whitespace().map(str::to_string).collect()),
            "rel" => {
                let (a, b) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(line, "relation needs `=`".into()))?;
                raw_rels.push((line, a.to_string(), b.to_string()));
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| perr(0, "missing `semigroup` line".into()))?;
    let sl = sl.ok_or_else(|| perr(0, "missing `sletters` line".into()))?;
    let ql = ql.ok_or_else(|| perr(0, "missing `qletters` line".into()))?;
    let kinds = std::iter::repeat_n(LetterKind::S, sl.len())
        .chain(std::iter::repeat_n(LetterKind::Q, ql.len()))
        .collect();
    let generators: Vec<String> = sl.into_iter().chain(ql).collect();
    let index: HashMap<&str, usize> =
        generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let word = |t: &str, line: usize| -> Result<PositiveWord> {
        let t = t.trim();
        if t == "1" {
            return Ok(Vec::new());
        }
        t.split_whitespace()
            .map(|x| index.get(x).copied().ok_or_else(|| perr(line, format!("unknown letter `{x}`"))))
            .collect()
    };
    let relations = raw_rels
        .iter()
        .map(|(line, a, b)| Ok(Relation { lhs: word(a, *line)?, rhs: word(b, *line)? }))
        .collect::<Result<Vec<_>>>()?;
    SemigroupPresentation::new(name, generators, kinds, relations)
}
