//! Depth-first letter search with a lookahead buffer.
//!
//! A [`DfsStream`] emits letters one at a time, smallest candidate first.
//! Before a letter is handed out, the search must have found a valid
//! continuation `slack` letters beyond it, so dead ends shorter than the
//! slack are absorbed by backtracking inside the speculative region.

use crate::error::{Error, Result};
use crate::generators::{RightInfiniteWord, WindowConfig};
use crate::repetition::{has_violating_suffix, is_power_free};
use crate::words::{encode, PowerBound};

#[derive(Debug, Clone)]
pub(crate) enum Constraint {
    /// Every prefix avoids the bound.
    PowerFree(PowerBound),
    /// Every prefix, read backwards, is a factor of `word`.
    MirroredFactorOf {
        word: Box<RightInfiniteWord>,
        window: WindowConfig,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct DfsStream {
    path: Vec<u8>,
    committed: usize,
    seed_len: usize,
    candidates: Vec<u8>,
    constraint: Constraint,
    slack: usize,
    budget: u64,
    side: &'static str,
}

impl DfsStream {
    pub(crate) fn new(
        seed: Vec<u8>,
        candidates: Vec<u8>,
        mut constraint: Constraint,
        slack: usize,
        budget: u64,
        side: &'static str,
    ) -> Result<Self> {
        let seed_ok = match &mut constraint {
            Constraint::PowerFree(bound) => is_power_free(&seed, *bound),
            Constraint::MirroredFactorOf { word, window } => {
                let mut rev = seed.clone();
                rev.reverse();
                word.factor_in(&rev, window)?
            }
        };
        if !seed_ok {
            return Err(Error::Precondition(format!(
                "search seed {} violates its constraint",
                encode(&seed)
            )));
        }
        let seed_len = seed.len();
        Ok(DfsStream {
            path: seed,
            committed: seed_len,
            seed_len,
            candidates,
            constraint,
            slack,
            budget,
            side,
        })
    }

    fn accepts_path(&mut self) -> Result<bool> {
        match &mut self.constraint {
            Constraint::PowerFree(bound) => Ok(!has_violating_suffix(&self.path, *bound)),
            Constraint::MirroredFactorOf { word, window } => {
                let mut rev = self.path.clone();
                rev.reverse();
                word.factor_in(&rev, window)
            }
        }
    }

    /// Extends the speculative path to `target` letters.
    pub(crate) fn grow(&mut self, target: usize) -> Result<()> {
        let mut next = 0;
        while self.path.len() < target {
            let mut placed = false;
            while next < self.candidates.len() {
                if self.budget == 0 {
                    return Err(Error::Undecided(format!(
                        "search budget exhausted at depth {}",
                        self.path.len()
                    )));
                }
                self.budget -= 1;
                self.path.push(self.candidates[next]);
                if self.accepts_path()? {
                    placed = true;
                    break;
                }
                self.path.pop();
                next += 1;
            }
            if placed {
                next = 0;
                continue;
            }
            if self.path.len() <= self.committed {
                if self.committed == self.seed_len {
                    return Err(Error::NotExtendable {
                        side: self.side,
                        word: encode(&self.path[..self.seed_len]),
                        depth: target - self.seed_len,
                    });
                }
                return Err(Error::Undecided(format!(
                    "dead end below committed position {}; increase the lookahead slack",
                    self.committed
                )));
            }
            let last = self.path.pop().expect("speculative letter");
            next = self
                .candidates
                .iter()
                .position(|&c| c == last)
                .expect("letter came from the candidates")
                + 1;
        }
        Ok(())
    }

    /// Appends committed letters to `memo` until it holds `n` letters.
    pub(crate) fn fill(&mut self, memo: &mut Vec<u8>, n: usize) -> Result<()> {
        if memo.len() >= n {
            return Ok(());
        }
        self.grow(n.max(self.seed_len) + self.slack)?;
        memo.extend_from_slice(&self.path[memo.len()..n]);
        self.committed = self.committed.max(n);
        Ok(())
    }
}
