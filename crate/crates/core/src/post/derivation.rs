//! Replayable rewrite derivations over a semigroup presentation, their
//! verifier, breadth-first derivation search and the text format:
//!
//! ```text
//! derivation POST-HALT1
//! start h q1 s1 h
//! end q
//! step 0 LR 1
//! ```

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::semigroup::{PositiveWord, SemigroupPresentation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Left side replaced by right side.
    Forward,
    /// Right side replaced by left side.
    Backward,
}

impl Direction {
    pub fn token(self) -> &'static str {
        match self {
            Direction::Forward => "LR",
            Direction::Backward => "RL",
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Rewrite `relation` in `direction` where the matched side starts at `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub relation: usize,
    pub direction: Direction,
    pub offset: usize,
}

impl RewriteStep {
    pub fn forward(relation: usize, offset: usize) -> Self {
        RewriteStep { relation, direction: Direction::Forward, offset }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub start: PositiveWord,
    pub steps: Vec<RewriteStep>,
    pub end: PositiveWord,
}

impl Derivation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Sides `(from, to)` of a relation for a step direction.
pub fn step_sides<'a>(
    s: &'a SemigroupPresentation,
    step: &RewriteStep,
) -> std::result::Result<(&'a [usize], &'a [usize]), String> {
    let r = s
        .relations()
        .get(step.relation)
        .ok_or_else(|| format!("relation index {} out of range", step.relation))?;
    Ok(match step.direction {
        Direction::Forward => (&r.lhs, &r.rhs),
        Direction::Backward => (&r.rhs, &r.lhs),
    })
}

/// Applies one step, or explains why it does not match.
pub fn apply_step(
    s: &SemigroupPresentation,
    w: &[usize],
    step: &RewriteStep,
) -> std::result::Result<PositiveWord, String> {
    let (from, to) = step_sides(s, step)?;
    let end = step.offset + from.len();
    if end > w.len() || &w[step.offset..end] != from {
        return Err(format!(
            "relation {} {} does not match at offset {}",
            step.relation,
            step.direction.token(),
            step.offset
        ));
    }
    let mut out = Vec::with_capacity(w.len() + to.len() - from.len());
    out.extend_from_slice(&w[..step.offset]);
    out.extend_from_slice(to);
    out.extend_from_slice(&w[end..]);
    Ok(out)
}

/// Replays `d`, reporting the first failing step.
pub fn check_derivation(s: &SemigroupPresentation, d: &Derivation) -> std::result::Result<(), String> {
    let n = s.generators().len();
    if d.start.iter().chain(&d.end).any(|&g| g >= n) {
        return Err("endpoint uses an unknown letter".into());
    }
    let mut w = d.start.clone();
    for (i, step) in d.steps.iter().enumerate() {
        w = apply_step(s, &w, step).map_err(|e| format!("step {i}: {e}"))?;
    }
    if w != d.end {
        return Err(format!(
            "replay ends at `{}`, expected `{}`",
            s.format_word(&w),
            s.format_word(&d.end)
        ));
    }
    Ok(())
}

pub fn verify_derivation(s: &SemigroupPresentation, d: &Derivation) -> bool {
    check_derivation(s, d).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    Deterministic,
    /// Layers are expanded on the rayon pool.
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Derivation),
    Unknown { expanded: usize },
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchOutcome::Found(d) => write!(f, "found ({} steps)", d.len()),
            SearchOutcome::Unknown { expanded } => write!(f, "unknown after {expanded} expansions"),
        }
    }
}

/// All one-step rewrites of `w`: offsets left to right, then relations by
/// index, then `LR` before `RL`.
pub fn successors(s: &SemigroupPresentation, w: &[usize]) -> Vec<(RewriteStep, PositiveWord)> {
    let mut out = Vec::new();
    for offset in 0..w.len() {
        for relation in 0..s.relations().len() {
            for direction in [Direction::Forward, Direction::Backward] {
                let step = RewriteStep { relation, direction, offset };
                if let Ok(next) = apply_step(s, w, &step) {
                    out.push((step, next));
                }
            }
        }
    }
    out
}

/// Breadth-first search for a derivation `from ⇒ to`, expanding at most
/// `budget` words. Both modes return the same (shortest, first in successor
/// order) derivation; the result is verified before it is returned.
pub fn rewrite_search(
    s: &SemigroupPresentation,
    from: &[usize],
    to: &[usize],
    budget: usize,
    mode: SearchMode,
) -> SearchOutcome {
    if from == to {
        return SearchOutcome::Found(Derivation {
            start: from.to_vec(),
            steps: Vec::new(),
            end: to.to_vec(),
        });
    }
    // (word, parent node, step from parent)
    let mut nodes: Vec<(PositiveWord, usize, Option<RewriteStep>)> = vec![(from.to_vec(), 0, None)];
    let mut seen: HashMap<PositiveWord, usize> = HashMap::from([(from.to_vec(), 0)]);
    let mut layer = 0..1;
    let mut expanded = 0;
    while !layer.is_empty() && expanded < budget {
        let take = layer.len().min(budget - expanded);
        let frontier = layer.start..layer.start + take;
        expanded += take;
        let expand = |i: usize| successors(s, &nodes[i].0);
        let children: Vec<Vec<(RewriteStep, PositiveWord)>> = match mode {
            SearchMode::Deterministic => frontier.clone().map(expand).collect(),
            SearchMode::Parallel => frontier.clone().into_par_iter().map(expand).collect(),
        };
        let next_start = nodes.len();
        for (parent, kids) in frontier.zip(children) {
            for (step, w) in kids {
                if seen.contains_key(&w) {
                    continue;
                }
                seen.insert(w.clone(), nodes.len());
                let hit = w == to;
                nodes.push((w, parent, Some(step)));
                if hit {
                    let d = rebuild(&nodes, nodes.len() - 1);
                    debug_assert!(verify_derivation(s, &d));
                    if verify_derivation(s, &d) {
                        return SearchOutcome::Found(d);
                    }
                }
            }
        }
        layer = next_start..nodes.len();
    }
    SearchOutcome::Unknown { expanded }
}

fn rebuild(nodes: &[(PositiveWord, usize, Option<RewriteStep>)], mut i: usize) -> Derivation {
    let end = nodes[i].0.clone();
    let mut steps = Vec::new();
    while let Some(step) = nodes[i].2 {
        steps.push(step);
        i = nodes[i].1;
    }
    steps.reverse();
    Derivation { start: nodes[0].0.clone(), steps, end }
}

pub fn format_derivation(s: &SemigroupPresentation, d: &Derivation) -> String {
    let mut out = format!(
        "derivation {}\nstart {}\nend {}\n",
        s.name(),
        s.format_word(&d.start),
        s.format_word(&d.end)
    );
    for st in &d.steps {
        out.push_str(&format!("step {} {} {}\n", st.relation, st.direction.token(), st.offset));
    }
    out
}

/// Parses the derivation format against `s`. The `derivation` name line is
/// optional; when present it must name `s`.
pub fn parse_derivation(s: &SemigroupPresentation, text: &str) -> Result<Derivation> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut start = None;
    let mut end = None;
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match kw {
            "derivation" => {
                if rest.trim() != s.name() {
                    return Err(perr(line, format!("derivation is for `{}`", rest.trim())));
                }
            }
            "start" => start = Some(s.parse_word(rest, line)?),
            "end" => end = Some(s.parse_word(rest, line)?),
            "step" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [rel, dir, off] = toks.as_slice() else {
                    return Err(perr(line, "expected `step <rel> <LR|RL> <offset>`".into()));
                };
                let relation = rel.parse().map_err(|_| perr(line, format!("bad index `{rel}`")))?;
                let direction = match *dir {
                    "LR" => Direction::Forward,
                    "RL" => Direction::Backward,
                    _ => return Err(perr(line, format!("bad direction `{dir}`"))),
                };
                let offset = off.parse().map_err(|_| perr(line, format!("bad offset `{off}`")))?;
                steps.push(RewriteStep { relation, direction, offset });
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(Derivation {
        start: start.ok_or_else(|| perr(0, "missing `start` line".into()))?,
        steps,
        end: end.ok_or_else(|| perr(0, "missing `end` line".into()))?,
    })
}
