//! Deterministic quadruple Turing machines, run traces, and Cantor pairing.
//!
//! A machine has a tape alphabet whose first symbol is the blank `s₀`, a
//! list of states whose first entry is the start state `q₁` and whose last
//! entry is the halt state `q_h`, and quadruples `(state, symbol) → action`
//! where the action either writes a symbol or moves the head one cell.

mod cantor;
mod text;
pub mod zoo;

use std::collections::HashMap;

pub use cantor::{cantor_pair, cantor_tuple, cantor_unpair};
pub use text::{format_machine, parse_machine};

use crate::core::presentation::is_valid_token;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Write { symbol: usize, next: usize },
    Left { next: usize },
    Right { next: usize },
}

impl Action {
    pub fn next_state(self) -> usize {
        match self {
            Action::Write { next, .. } | Action::Left { next } | Action::Right { next } => next,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quadruple {
    pub state: usize,
    pub symbol: usize,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    quads: Vec<Quadruple>,
    table: HashMap<(usize, usize), usize>,
}

impl TuringMachine {
    /// Validates and builds a machine. Rejects nondeterminism, quadruples
    /// leaving the halt state, out-of-range indices and bad or duplicate names.
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        states: Vec<String>,
        quads: Vec<Quadruple>,
    ) -> Result<Self> {
        let name = name.into();
        let bad = |m: String| Err(Error::InvalidMachine(m));
        if !is_valid_token(&name) {
            return bad(format!("bad machine name `{name}`"));
        }
        if alphabet.is_empty() {
            return bad("alphabet must contain at least the blank symbol".into());
        }
        if states.is_empty() {
            return bad("at least one state is required".into());
        }
        for list in [&alphabet, &states] {
            let mut seen = std::collections::HashSet::new();
            for t in list {
                if !is_valid_token(t) {
                    return bad(format!("bad name `{t}`"));
                }
                if !seen.insert(t) {
                    return bad(format!("duplicate name `{t}`"));
                }
            }
        }
        let halt = states.len() - 1;
        let mut table = HashMap::new();
        for (i, q) in quads.iter().enumerate() {
            let sym_ok = |s: usize| s < alphabet.len();
            let st_ok = |s: usize| s < states.len();
            let action_ok = match q.action {
                Action::Write { symbol, next } => sym_ok(symbol) && st_ok(next),
                Action::Left { next } | Action::Right { next } => st_ok(next),
            };
            if !sym_ok(q.symbol) || !st_ok(q.state) || !action_ok {
                return bad(format!("quadruple {i} refers to an unknown state or symbol"));
            }
            if q.state == halt {
                return bad(format!("quadruple {i} leaves the halt state `{}`", states[halt]));
            }
            if table.insert((q.state, q.symbol), i).is_some() {
                return bad(format!(
                    "nondeterministic: two quadruples for ({}, {})",
                    states[q.state], alphabet[q.symbol]
                ));
            }
        }
        Ok(TuringMachine { name, alphabet, states, quads, table })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn quadruples(&self) -> &[Quadruple] {
        &self.quads
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn halt(&self) -> usize {
        self.states.len() - 1
    }

    pub fn blank(&self) -> usize {
        0
    }

    /// Index of the quadruple for `(state, symbol)`.
    pub fn rule(&self, state: usize, symbol: usize) -> Option<usize> {
        self.table.get(&(state, symbol)).copied()
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// The `{s₀, s₁}` alphabet that natural-number inputs are written in.
    pub fn is_binary(&self) -> bool {
        self.alphabet.len() == 2
    }
}

/// `left · state · right`; the head reads `right[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub left: Vec<usize>,
    pub state: usize,
    pub right: Vec<usize>,
}

impl Configuration {
    pub fn initial(m: &TuringMachine, input: &[usize]) -> Self {
        let mut right = input.to_vec();
        if right.is_empty() {
            right.push(m.blank());
        }
        Configuration { left: Vec::new(), state: m.start(), right }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Halted,
    Stuck,
}

/// One quadruple application. Blanks are materialized at either boundary.
pub fn step(m: &TuringMachine, c: &Configuration) -> Step {
    if c.state == m.halt() {
        return Step::Halted;
    }
    let sym = c.right.first().copied().unwrap_or(m.blank());
    let Some(i) = m.rule(c.state, sym) else {
        return Step::Stuck;
    };
    let mut next = c.clone();
    if next.right.is_empty() {
        next.right.push(m.blank());
    }
    match m.quads[i].action {
        Action::Write { symbol, next: q } => {
            next.right[0] = symbol;
            next.state = q;
        }
        Action::Right { next: q } => {
            let s = next.right.remove(0);
            next.left.push(s);
            if next.right.is_empty() {
                next.right.push(m.blank());
            }
            next.state = q;
        }
        Action::Left { next: q } => {
            let s = next.left.pop().unwrap_or(m.blank());
            next.right.insert(0, s);
            next.state = q;
        }
    }
    Step::Next(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    Halted,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub configurations: Vec<Configuration>,
    pub outcome: RunOutcome,
}

impl RunTrace {
    pub fn steps(&self) -> usize {
        self.configurations.len() - 1
    }

    pub fn halted(&self) -> bool {
        self.outcome == RunOutcome::Halted
    }

    pub fn last(&self) -> &Configuration {
        self.configurations.last().expect("trace has an initial configuration")
    }
}

/// Runs from `[ε, q₁, input]` for at most `budget` steps.
pub fn run(m: &TuringMachine, input: &[usize], budget: usize) -> Result<RunTrace> {
    if let Some(&s) = input.iter().find(|&&s| s >= m.alphabet.len()) {
        return Err(Error::InvalidArgument(format!("input symbol {s} not in the alphabet")));
    }
    let mut configurations = vec![Configuration::initial(m, input)];
    loop {
        let c = configurations.last().expect("nonempty");
        if c.state == m.halt() {
            return Ok(RunTrace { configurations, outcome: RunOutcome::Halted });
        }
        if configurations.len() > budget {
            return Ok(RunTrace { configurations, outcome: RunOutcome::BudgetExhausted });
        }
        match step(m, c) {
            Step::Next(n) => configurations.push(n),
            Step::Halted => unreachable!("halt state checked above"),
            Step::Stuck => {
                let sym = c.right.first().copied().unwrap_or(m.blank());
                return Err(Error::Stuck {
                    state: m.states[c.state].clone(),
                    symbol: m.alphabet[sym].clone(),
                    steps: configurations.len() - 1,
                });
            }
        }
    }
}

/// `s₁^(n+1)`, the tape encoding of the natural number `n`.
pub fn phi_input(n: usize) -> Vec<usize> {
    vec![1; n + 1]
}

#[cfg(test)]
mod tests {
    use super::zoo;
    use super::*;

    /// Independent single-step checker: recomputes the successor from the
    /// quadruple table by splicing the tape as one string.
    fn independent_step(m: &TuringMachine, c: &Configuration) -> Option<Configuration> {
        let mut tape: Vec<usize> = c.left.clone();
        let mut head = tape.len();
        tape.extend(&c.right);
        let q = m.quadruples().iter().find(|q| q.state == c.state && q.symbol == tape[head])?;
        match q.action {
            Action::Write { symbol, .. } => tape[head] = symbol,
            Action::Right { .. } => {
                head += 1;
                if head == tape.len() {
                    tape.push(0);
                }
            }
            Action::Left { .. } => {
                if head == 0 {
                    tape.insert(0, 0);
                } else {
                    head -= 1;
                }
            }
        }
        let state = q.action.next_state();
        Some(Configuration { left: tape[..head].to_vec(), state, right: tape[head..].to_vec() })
    }

    #[test]
    fn write_then_halt() {
        let m = zoo::halt1();
        let c = Configuration::initial(&m, &[1]);
        let Step::Next(n) = step(&m, &c) else { panic!() };
        assert_eq!(n.state, m.halt());
        assert_eq!(step(&m, &n), Step::Halted);
    }

    #[test]
    fn right_move_appends_blank() {
        let m = zoo::loop_machine();
        let c = Configuration::initial(&m, &[1]);
        let Step::Next(n) = step(&m, &c) else { panic!() };
        assert_eq!(n, Configuration { left: vec![1], state: 0, right: vec![0] });
    }

    #[test]
    fn halt1_trace() {
        let t = run(&zoo::halt1(), &[1], 100).unwrap();
        assert!(t.halted());
        assert_eq!(t.configurations.len(), 2);
    }

    #[test]
    fn loop_trace_exhausts() {
        let t = run(&zoo::loop_machine(), &[1], 100).unwrap();
        assert_eq!(t.outcome, RunOutcome::BudgetExhausted);
        assert_eq!(t.configurations.len(), 101);
    }

    #[test]
    fn zero_budget() {
        let t = run(&zoo::loop_machine(), &[1], 0).unwrap();
        assert_eq!(t.outcome, RunOutcome::BudgetExhausted);
        assert_eq!(t.configurations.len(), 1);
        let only_halt = TuringMachine::new("H", vec!["s0".into()], vec!["qh".into()], vec![]).unwrap();
        assert!(run(&only_halt, &[], 0).unwrap().halted());
    }

    #[test]
    fn stuck_is_an_error() {
        let err = run(&zoo::halt1(), &[0], 10).unwrap_err();
        assert!(matches!(err, Error::Stuck { steps: 0, .. }));
    }

    #[test]
    fn phi_inputs() {
        assert_eq!(phi_input(0), vec![1]);
        assert_eq!(phi_input(2), vec![1, 1, 1]);
        assert_eq!(phi_input(5).len(), 6);
    }

    #[test]
    fn validation() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let dup = vec![
            Quadruple { state: 0, symbol: 1, action: Action::Right { next: 0 } },
            Quadruple { state: 0, symbol: 1, action: Action::Left { next: 0 } },
        ];
        assert!(TuringMachine::new("M", s(&["s0", "s1"]), s(&["q1", "qh"]), dup).is_err());
        let from_halt = vec![Quadruple { state: 1, symbol: 0, action: Action::Right { next: 0 } }];
        assert!(TuringMachine::new("M", s(&["s0", "s1"]), s(&["q1", "qh"]), from_halt).is_err());
    }

    #[test]
    fn traces_agree_with_independent_stepper() {
        for m in zoo::all() {
            for n in 0..=5 {
                let t = run(&m, &phi_input(n), 60).unwrap();
                for w in t.configurations.windows(2) {
                    assert_eq!(independent_step(&m, &w[0]).as_ref(), Some(&w[1]), "{}", m.name());
                }
                let again = run(&m, &phi_input(n), 60).unwrap();
                assert_eq!(t, again);
            }
        }
    }
}
