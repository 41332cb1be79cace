use std::fmt;

/// Closed interval `[lo, hi]` on the real line. `hi` may be `f64::INFINITY`
/// for half-lines; `lo` is always finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Panics on NaN bounds, non-finite `lo`, or `lo > hi`; those are
    /// programming errors, not data errors.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(
            lo.is_finite() && !hi.is_nan() && lo <= hi,
            "invalid interval [{lo}, {hi}]"
        );
        Self { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.lo >= self.lo && other.hi <= self.hi
    }

    /// `n` evenly spaced points including both endpoints. Requires a bounded
    /// interval and `n >= 2`.
    pub fn uniform_points(&self, n: usize) -> Vec<f64> {
        assert!(self.is_bounded(), "cannot grid an unbounded interval");
        assert!(n >= 2, "need at least two grid points");
        let step = self.length() / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.hi
                } else {
                    self.lo + i as f64 * step
                }
            })
            .collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hi.is_finite() {
            write!(f, "[{}, {}]", self.lo, self.hi)
        } else {
            write!(f, "[{}, inf)", self.lo)
        }
    }
}
