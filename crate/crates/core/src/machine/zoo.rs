//! Small reference machines over `{s0, s1}` used by tests, demos and the CLI.

use super::{Action, Quadruple, TuringMachine};

fn build(name: &str, states: &[&str], quads: &[(usize, usize, Action)]) -> TuringMachine {
    TuringMachine::new(
        name,
        vec!["s0".into(), "s1".into()],
        states.iter().map(|s| s.to_string()).collect(),
        quads
            .iter()
            .map(|&(state, symbol, action)| Quadruple { state, symbol, action })
            .collect(),
    )
    .expect("zoo machines are valid")
}

/// Writes `s1` over the first cell and halts: one step on any `s1`-prefixed tape.
pub fn halt1() -> TuringMachine {
    build("HALT1", &["q1", "qh"], &[(0, 1, Action::Write { symbol: 1, next: 1 })])
}

/// Moves right forever.
pub fn loop_machine() -> TuringMachine {
    build(
        "LOOP",
        &["q1", "qh"],
        &[(0, 1, Action::Right { next: 0 }), (0, 0, Action::Right { next: 0 })],
    )
}

/// Scans right over the `s1` block and halts on the first blank.
pub fn scan() -> TuringMachine {
    build(
        "SCAN",
        &["q1", "qh"],
        &[(0, 1, Action::Right { next: 0 }), (0, 0, Action::Write { symbol: 0, next: 1 })],
    )
}

/// Steps off the left end of the tape, writes `s1` on the fresh blank and halts.
pub fn bounce() -> TuringMachine {
    build(
        "BOUNCE",
        &["q1", "q2", "qh"],
        &[(0, 1, Action::Left { next: 1 }), (1, 0, Action::Write { symbol: 1, next: 2 })],
    )
}

/// Scans right to the first blank, then walks back erasing the block, halting
/// on a blank materialized past the left end.
pub fn erase_back() -> TuringMachine {
    build(
        "ERASE",
        &["q1", "q2", "q3", "qh"],
        &[
            (0, 1, Action::Right { next: 0 }),
            (0, 0, Action::Left { next: 1 }),
            (1, 1, Action::Write { symbol: 0, next: 2 }),
            (2, 0, Action::Left { next: 1 }),
            (1, 0, Action::Write { symbol: 0, next: 3 }),
        ],
    )
}

pub fn all() -> Vec<TuringMachine> {
    vec![halt1(), loop_machine(), scan(), bounce(), erase_back()]
}

/// Looks a zoo machine up by name (case-insensitive).
pub fn by_name(name: &str) -> Option<TuringMachine> {
    all().into_iter().find(|m| m.name().eq_ignore_ascii_case(name))
}
