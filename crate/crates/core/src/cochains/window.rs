use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation of the grading: indices `|n| <= n`, with an interior core.
///
/// The library accepts any `0 <= core <= n`; front ends that want the
/// six-step insulation margin enforce it themselves (see [`Window::MARGIN`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    n: i64,
    core: i64,
}

impl Window {
    /// Default distance between the window bound and the core bound.
    pub const MARGIN: i64 = 6;

    pub fn new(n: i64, core: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidWindow(format!("N = {n} must be positive")));
        }
        if core < 0 || core > n {
            return Err(Error::InvalidWindow(format!("N_core = {core} must lie in [0, {n}]")));
        }
        Ok(Window { n, core })
    }

    /// Window with the core as large as the margin allows (at least 0).
    pub fn with_default_core(n: i64) -> Result<Self> {
        Window::new(n, (n - Self::MARGIN).max(0))
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn core(&self) -> i64 {
        self.core
    }

    pub fn has_margin(&self) -> bool {
        self.n >= self.core + Self::MARGIN
    }

    pub fn contains(&self, k: i64) -> bool {
        k.abs() <= self.n
    }

    /// `|n|, |p|, |n+p| <= N`.
    pub fn pair_in(&self, n: i64, p: i64) -> bool {
        n.abs() <= self.n && p.abs() <= self.n && (n + p).abs() <= self.n
    }

    pub fn pair_in_core(&self, n: i64, p: i64) -> bool {
        n.abs() <= self.core && p.abs() <= self.core && (n + p).abs() <= self.core
    }

    /// The same window with a different bound, keeping the core.
    pub fn with_n(&self, n: i64) -> Result<Self> {
        Window::new(n, self.core)
    }

    /// The core viewed as a window of its own.
    pub fn core_window(&self) -> Option<Window> {
        Window::new(self.core, self.core).ok()
    }
}
