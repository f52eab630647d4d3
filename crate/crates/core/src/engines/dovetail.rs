use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use super::budget::Budget;

/// Steps handed to a strategy per turn.
pub const SLICE: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Round-robin on the calling thread; results depend only on inputs and budget.
    #[default]
    Deterministic,
    /// One thread per strategy; the first verified answer wins.
    Parallel,
}

#[derive(Debug)]
pub enum SliceResult<T> {
    Found(T),
    /// Ran out of the granted steps without an answer.
    Continue,
    /// Will never produce an answer.
    Exhausted,
}

/// A resumable search. `run_slice(n)` does about `n` steps of work and must
/// depend only on the strategy's state and `n`.
pub trait Strategy<T>: Send {
    fn name(&self) -> &str;
    fn run_slice(&mut self, steps: u64) -> SliceResult<T>;
}

#[derive(Debug)]
pub struct Win<T> {
    pub strategy: String,
    pub value: T,
}

/// Runs the strategies fairly until one answers or the budget is spent.
///
/// Deterministic mode visits the strategies in the given order, each getting
/// [`SLICE`] steps per round. Parallel mode gives each strategy an equal share
/// of the budget on its own thread and stops the others once one answers.
pub fn dovetail<T: Send>(
    mut strategies: Vec<Box<dyn Strategy<T> + '_>>,
    budget: &Budget,
    mode: ExecMode,
) -> Option<Win<T>> {
    if strategies.is_empty() {
        return None;
    }
    match mode {
        ExecMode::Deterministic => {
            let mut meter = budget.meter();
            let mut live: Vec<bool> = vec![true; strategies.len()];
            while !meter.exhausted() && live.iter().any(|&l| l) {
                for (i, s) in strategies.iter_mut().enumerate() {
                    if !live[i] {
                        continue;
                    }
                    let steps = meter.grant(SLICE);
                    if steps == 0 || meter.exhausted() {
                        return None;
                    }
                    meter.charge(steps);
                    match s.run_slice(steps) {
                        SliceResult::Found(value) => {
                            return Some(Win { strategy: s.name().to_string(), value })
                        }
                        SliceResult::Continue => {}
                        SliceResult::Exhausted => live[i] = false,
                    }
                }
            }
            None
        }
        ExecMode::Parallel => {
            let share = budget.steps.div_ceil(strategies.len() as u64);
            let per = Budget { steps: share, wall: budget.wall };
            let stop = AtomicBool::new(false);
            let winner: Mutex<Option<Win<T>>> = Mutex::new(None);
            std::thread::scope(|scope| {
                for s in strategies.iter_mut() {
                    let (stop, winner) = (&stop, &winner);
                    scope.spawn(move || {
                        let mut meter = per.meter();
                        while !stop.load(Ordering::Relaxed) && !meter.exhausted() {
                            let steps = meter.grant(SLICE);
                            meter.charge(steps);
                            match s.run_slice(steps) {
                                SliceResult::Found(value) => {
                                    let mut w = winner.lock().expect("winner lock");
                                    if w.is_none() {
                                        *w = Some(Win { strategy: s.name().to_string(), value });
                                    }
                                    stop.store(true, Ordering::Relaxed);
                                    return;
                                }
                                SliceResult::Continue => {}
                                SliceResult::Exhausted => return,
                            }
                        }
                    });
                }
            });
            winner.into_inner().expect("winner lock")
        }
    }
}
