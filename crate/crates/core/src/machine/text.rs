//! Machine text format:
//!
//! ```text
//! machine SCAN
//! alphabet s0 s1
//! states q1 qh
//! quad q1 s1 R q1
//! quad q1 s0 write s0 qh
//! ```
//!
//! The first alphabet symbol is the blank, the first state is the start
//! state and the last state is the halt state.

use std::collections::HashMap;

use super::{Action, Quadruple, TuringMachine};
use crate::error::{Error, Result};

pub fn format_machine(m: &TuringMachine) -> String {
    let mut s = format!(
        "machine {}\nalphabet {}\nstates {}\n",
        m.name(),
        m.alphabet().join(" "),
        m.states().join(" ")
    );
    let st = |i: usize| m.states()[i].as_str();
    let sy = |i: usize| m.alphabet()[i].as_str();
    for q in m.quadruples() {
        let action = match q.action {
            Action::Write { symbol, next } => format!("write {} {}", sy(symbol), st(next)),
            Action::Left { next } => format!("L {}", st(next)),
            Action::Right { next } => format!("R {}", st(next)),
        };
        s.push_str(&format!("quad {} {} {}\n", st(q.state), sy(q.symbol), action));
    }
    s
}

pub fn parse_machine(text: &str) -> Result<TuringMachine> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut name = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut states: Option<Vec<String>> = None;
    let mut quads = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "machine" if toks.len() == 2 => name = Some(toks[1].to_string()),
            "alphabet" => alphabet = Some(toks[1..].iter().map(|s| s.to_string()).collect()),
            "states" => states = Some(toks[1..].iter().map(|s| s.to_string()).collect()),
            "quad" => {
                let (Some(a), Some(s)) = (&alphabet, &states) else {
                    return Err(perr(line, "`quad` before `alphabet` and `states`".into()));
                };
                let amap: HashMap<&str, usize> =
                    a.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect();
                let smap: HashMap<&str, usize> =
                    s.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect();
                let state = |t: &str| {
                    smap.get(t).copied().ok_or_else(|| perr(line, format!("unknown state `{t}`")))
                };
                let sym = |t: &str| {
                    amap.get(t).copied().ok_or_else(|| perr(line, format!("unknown symbol `{t}`")))
                };
                let q = match toks.as_slice() {
                    [_, q, a, "write", b, r] => Quadruple {
                        state: state(q)?,
                        symbol: sym(a)?,
                        action: Action::Write { symbol: sym(b)?, next: state(r)? },
                    },
                    [_, q, a, "L", r] => Quadruple {
                        state: state(q)?,
                        symbol: sym(a)?,
                        action: Action::Left { next: state(r)? },
                    },
                    [_, q, a, "R", r] => Quadruple {
                        state: state(q)?,
                        symbol: sym(a)?,
                        action: Action::Right { next: state(r)? },
                    },
                    _ => return Err(perr(line, format!("malformed quadruple `{l}`"))),
                };
                quads.push(q);
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| perr(0, "missing `machine` line".into()))?;
    let alphabet = alphabet.ok_or_else(|| perr(0, "missing `alphabet` line".into()))?;
    let states = states.ok_or_else(|| perr(0, "missing `states` line".into()))?;
    TuringMachine::new(name, alphabet, states, quads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::zoo;

    #[test]
    fn zoo_round_trips() {
        for m in zoo::all() {
            let text = format_machine(&m);
            let back = parse_machine(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(format_machine(&back), text);
        }
    }

    #[test]
    fn halt1_text() {
        assert_eq!(
            format_machine(&zoo::halt1()),
            "machine HALT1\nalphabet s0 s1\nstates q1 qh\nquad q1 s1 write s1 qh\n"
        );
    }

    #[test]
    fn errors_carry_line() {
        let e = parse_machine("machine M\nalphabet s0 s1\nstates q1 qh\nquad q1 s2 R q1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        let e = parse_machine("machine M\nalphabet s0\nstates q1 qh\nquad q1 s0 jump qh\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
    }
}
