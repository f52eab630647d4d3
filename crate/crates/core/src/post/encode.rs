//! Post's semigroup `Γ(T)` of a machine and the compilation of halting runs
//! into derivations `h q₁ w h ⇒ q`.

use std::collections::HashSet;

use super::derivation::{Derivation, Direction, RewriteStep};
use super::semigroup::{LetterKind, PositiveWord, Relation, SemigroupPresentation};
use crate::core::presentation::fresh_name;
use crate::error::{Error, Result};
use crate::machine::{Action, Configuration, RunTrace, TuringMachine};

/// Relation families, in emission order. The rows are the authoritative
/// description of the encoding; `--version` prints a digest of this table.
///
/// `i`, `l` range over states, `j`, `k`, `b` over tape symbols; `h` is the
/// tape delimiter, `qh` the halt state, `qhat` the left-sweep letter and `q`
/// the terminal letter.
pub const POST_SCHEMA: &[(&str, &str)] = &[
    ("write", "per (qi,sj) -> write(sk, ql): qi sj = ql sk"),
    ("right", "per (qi,sj) -> R(ql), every b: qi sj sb = sj ql sb"),
    ("right-edge", "per (qi,sj) -> R(ql): qi sj h = sj ql s0 h"),
    ("left", "per (qi,sj) -> L(ql), every b: sb qi sj = ql sb sj"),
    ("left-edge", "per (qi,sj) -> L(ql): h qi sj = h ql s0 sj"),
    ("absorb-right", "every b: qh sb = qh"),
    ("turn", "qh h = qhat h"),
    ("absorb-left", "every b: sb qhat = qhat"),
    ("finish", "h qhat h = q"),
];

/// Indices into the relation list for one quadruple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadRelations {
    Write(usize),
    /// `per_symbol[b]` for interior moves, then the boundary variant.
    Move { per_symbol: Vec<usize>, edge: usize },
}

/// `Γ(T)` together with the letter and relation bookkeeping needed to
/// compile runs into derivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostEncoding {
    pub presentation: SemigroupPresentation,
    pub h: usize,
    pub q: usize,
    pub qhat: usize,
    /// Letter of each tape symbol.
    pub symbols: Vec<usize>,
    /// Letter of each machine state.
    pub states: Vec<usize>,
    pub quad_relations: Vec<QuadRelations>,
    pub absorb_right: Vec<usize>,
    pub turn: usize,
    pub absorb_left: Vec<usize>,
    pub finish: usize,
}

/// Builds `Γ(T)`. Letters: `h, s₀…s_M` (s-letters) then `q, qhat, q₁…q_h`
/// (q-letters), renamed with primes if a machine name collides.
pub fn post_encode(m: &TuringMachine) -> Result<PostEncoding> {
    let mut names = Vec::new();
    let mut kinds = Vec::new();
    let mut taken = HashSet::new();
    let mut add = |base: &str, kind: LetterKind| {
        let n = fresh_name(base, &taken);
        taken.insert(n.clone());
        names.push(n);
        kinds.push(kind);
        names.len() - 1
    };
    let h = add("h", LetterKind::S);
    let symbols: Vec<usize> = m.alphabet().iter().map(|s| add(s, LetterKind::S)).collect();
    let q = add("q", LetterKind::Q);
    let qhat = add("qhat", LetterKind::Q);
    let states: Vec<usize> = m.states().iter().map(|s| add(s, LetterKind::Q)).collect();

    let mut rels: Vec<Relation> = Vec::new();
    let mut push = |lhs: PositiveWord, rhs: PositiveWord| {
        rels.push(Relation { lhs, rhs });
        rels.len() - 1
    };
    let s0 = symbols[m.blank()];
    let mut quad_relations = Vec::new();
    for quad in m.quadruples() {
        let qi = states[quad.state];
        let sj = symbols[quad.symbol];
        let qr = match quad.action {
            Action::Write { symbol, next } => {
                QuadRelations::Write(push(vec![qi, sj], vec![states[next], symbols[symbol]]))
            }
            Action::Right { next } => {
                let ql = states[next];
                let per_symbol =
                    symbols.iter().map(|&sb| push(vec![qi, sj, sb], vec![sj, ql, sb])).collect();
                let edge = push(vec![qi, sj, h], vec![sj, ql, s0, h]);
                QuadRelations::Move { per_symbol, edge }
            }
            Action::Left { next } => {
                let ql = states[next];
                let per_symbol =
                    symbols.iter().map(|&sb| push(vec![sb, qi, sj], vec![ql, sb, sj])).collect();
                let edge = push(vec![h, qi, sj], vec![h, ql, s0, sj]);
                QuadRelations::Move { per_symbol, edge }
            }
        };
        quad_relations.push(qr);
    }
    let qh = states[m.halt()];
    let absorb_right = symbols.iter().map(|&sb| push(vec![qh, sb], vec![qh])).collect();
    let turn = push(vec![qh, h], vec![qhat, h]);
    let absorb_left = symbols.iter().map(|&sb| push(vec![sb, qhat], vec![qhat])).collect();
    let finish = push(vec![h, qhat, h], vec![q]);

    let presentation = SemigroupPresentation::new(format!("POST-{}", m.name()), names, kinds, rels)?;
    presentation.check_special()?;
    Ok(PostEncoding {
        presentation,
        h,
        q,
        qhat,
        symbols,
        states,
        quad_relations,
        absorb_right,
        turn,
        absorb_left,
        finish,
    })
}

impl PostEncoding {
    /// `h · left · state · right · h`.
    pub fn config_word(&self, c: &Configuration) -> PositiveWord {
        let mut w = vec![self.h];
        w.extend(c.left.iter().map(|&s| self.symbols[s]));
        w.push(self.states[c.state]);
        w.extend(c.right.iter().map(|&s| self.symbols[s]));
        w.push(self.h);
        w
    }

    /// `h q₁ w h` for a tape `w` (a blank is materialized for the empty tape).
    pub fn start_word(&self, m: &TuringMachine, input: &[usize]) -> PositiveWord {
        self.config_word(&Configuration::initial(m, input))
    }

    pub fn target_word(&self) -> PositiveWord {
        vec![self.q]
    }
}

/// Compiles a halted run into a derivation ending at `q`: one rewrite per
/// machine step, then `|right|` right absorptions, the turn, `|left|` left
/// absorptions and the finishing rewrite.
pub fn derive_from_trace(
    enc: &PostEncoding,
    m: &TuringMachine,
    trace: &RunTrace,
) -> Result<Derivation> {
    if !trace.halted() {
        return Err(Error::InvalidTrace("trace did not halt".into()));
    }
    let start = enc.config_word(&trace.configurations[0]);
    let mut steps = Vec::new();
    let mut word = start.clone();
    for pair in trace.configurations.windows(2) {
        let (c, next) = (&pair[0], &pair[1]);
        let sym = c.right[0];
        let qi = m
            .rule(c.state, sym)
            .ok_or_else(|| Error::InvalidTrace("no quadruple for a traced step".into()))?;
        let head = 1 + c.left.len();
        let step = match &enc.quad_relations[qi] {
            QuadRelations::Write(r) => RewriteStep::forward(*r, head),
            QuadRelations::Move { per_symbol, edge } => match m.quadruples()[qi].action {
                Action::Right { .. } => match c.right.get(1) {
                    Some(&b) => RewriteStep::forward(per_symbol[b], head),
                    None => RewriteStep::forward(*edge, head),
                },
                Action::Left { .. } => match c.left.last() {
                    Some(&b) => RewriteStep::forward(per_symbol[b], head - 1),
                    None => RewriteStep::forward(*edge, 0),
                },
                Action::Write { .. } => unreachable!("write quadruples map to Write relations"),
            },
        };
        word = super::derivation::apply_step(&enc.presentation, &word, &step)
            .map_err(Error::InvalidTrace)?;
        if word != enc.config_word(next) {
            return Err(Error::InvalidTrace("trace step disagrees with the machine".into()));
        }
        steps.push(step);
    }
    let last = trace.last();
    let head = 1 + last.left.len();
    for &s in &last.right {
        steps.push(RewriteStep::forward(enc.absorb_right[s], head));
    }
    steps.push(RewriteStep::forward(enc.turn, head));
    for (k, &s) in last.left.iter().enumerate().rev() {
        steps.push(RewriteStep::forward(enc.absorb_left[s], 1 + k));
    }
    steps.push(RewriteStep { relation: enc.finish, direction: Direction::Forward, offset: 0 });
    let d = Derivation { start, steps, end: enc.target_word() };
    super::derivation::check_derivation(&enc.presentation, &d)
        .map_err(|e| Error::InvalidDerivation(format!("compiled derivation rejected: {e}")))?;
    Ok(d)
}
