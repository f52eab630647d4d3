use std::time::{Duration, Instant};

pub const DEFAULT_STEPS: u64 = 1_000_000;

/// A step ceiling and an optional wall-clock ceiling.
///
/// Searches consume steps in fixed-size slices that do not depend on the
/// ceiling, so a larger ceiling replays the same prefix of work and can only
/// add answers. The wall-clock ceiling breaks that guarantee and is meant for
/// interactive use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub steps: u64,
    pub wall: Option<Duration>,
}

impl Budget {
    pub fn steps(steps: u64) -> Self {
        Budget { steps, wall: None }
    }

    pub fn with_wall(mut self, wall: Duration) -> Self {
        self.wall = Some(wall);
        self
    }

    pub fn meter(&self) -> Meter {
        Meter { budget: *self, used: 0, started: Instant::now() }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::steps(DEFAULT_STEPS)
    }
}

#[derive(Debug, Clone)]
pub struct Meter {
    budget: Budget,
    used: u64,
    started: Instant,
}

impl Meter {
    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.budget.steps.saturating_sub(self.used)
    }

    pub fn charge(&mut self, steps: u64) {
        self.used = self.used.saturating_add(steps);
    }

    pub fn exhausted(&self) -> bool {
        self.remaining() == 0 || self.budget.wall.is_some_and(|w| self.started.elapsed() >= w)
    }

    /// Steps for the next slice: `slice`, capped by what is left.
    pub fn grant(&self, slice: u64) -> u64 {
        slice.min(self.remaining())
    }
}
