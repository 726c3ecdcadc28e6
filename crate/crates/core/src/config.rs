//! Tunable limits for the construction pipeline.
//!
//! Every certificate records the configuration that produced it.

use std::fmt;

use crate::generators::WindowConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Prefix windows for factor membership in uniformly recurrent words.
    pub window: WindowConfig,
    /// Depth of the extendability probes run on `u` and `v`.
    pub probe_depth: usize,
    /// Letters of verified continuation required behind every emitted
    /// letter of a search stream.
    pub slack: usize,
    /// Node budget of each depth-first search.
    pub search_budget: u64,
    /// Letters inspected after `u` when choosing a pivot letter.
    pub pivot_probe: usize,
    /// First sampling window (beyond `|u|`) used when only a search stream
    /// is available for recurrence questions.
    pub recurrence_window: usize,
    /// Largest sampling window before giving up.
    pub recurrence_window_cap: usize,
    /// Longest prefix of `xt` probed for membership before taking the
    /// unbounded branch.
    pub omega_cap: usize,
    /// Letters of `t` beyond the witness checked by the Γ property report.
    pub gamma_window: usize,
    /// Longest scan for occurrences in a stream.
    pub scan_cap: usize,
    /// Forces the shared recurrent letter instead of the largest letter.
    pub x_override: Option<u8>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            window: WindowConfig::default(),
            probe_depth: 64,
            slack: 32,
            search_budget: 10_000_000,
            pivot_probe: 256,
            recurrence_window: 64,
            recurrence_window_cap: 4096,
            omega_cap: 1024,
            gamma_window: 512,
            scan_cap: 1 << 16,
            x_override: None,
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window={}..{} probe-depth={} slack={} budget={} pivot-probe={} recurrence-window={}..{} omega-cap={} gamma-window={} scan-cap={}",
            self.window.start,
            self.window.cap,
            self.probe_depth,
            self.slack,
            self.search_budget,
            self.pivot_probe,
            self.recurrence_window,
            self.recurrence_window_cap,
            self.omega_cap,
            self.gamma_window,
            self.scan_cap,
        )?;
        if let Some(x) = self.x_override {
            write!(f, " x={}", crate::words::letter_char(x))?;
        }
        Ok(())
    }
}
