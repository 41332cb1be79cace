//! Result type shared by every inequality check, plus the internal
//! accumulator that folds a stream of pointwise gaps into one report.

use crate::interval::Interval;

/// Default absolute and relative tolerance for all inequality checks.
pub const DEFAULT_ATOL: f64 = 1e-9;
pub const DEFAULT_RTOL: f64 = 1e-9;

/// Outcome of checking one inequality over a family of configurations.
///
/// `min_gap` is the most adverse value of `LHS - RHS` seen, oriented so the
/// inequality asserts `gap >= 0`; a slightly negative `min_gap` can still
/// pass when it is within tolerance of zero at the witness scale. `witness`
/// records the configuration attaining (up to tolerance slack) the worst
/// gap: its meaning depends on the check (e.g. `[x, y]` for a two-point
/// check, `[x, y, t]` for a chord check).
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub name: String,
    /// Short formula of what was checked, e.g.
    /// `"f(y) >= f(x) + C_x*(y-x) + f(|y-x|)"`.
    pub rule: String,
    pub checks_run: usize,
    pub min_gap: f64,
    pub witness: Vec<f64>,
    /// Effective tolerance at the witness: `atol + rtol * scale`.
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl InequalityReport {
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Fold single-configuration reports into one family report: checks
/// accumulate and the entry with the worst margin (`min_gap + tolerance`)
/// supplies the gap, witness and tolerance. First-seen wins ties, so the
/// result does not depend on how a caller batches the inputs. Returns
/// `None` for an empty list.
pub fn merge_reports(reports: Vec<InequalityReport>) -> Option<InequalityReport> {
    // NaN gaps mean a failed configuration; rank them below everything.
    fn margin_of(r: &InequalityReport) -> f64 {
        let m = r.min_gap + r.tolerance;
        if m.is_nan() {
            f64::NEG_INFINITY
        } else {
            m
        }
    }
    let mut iter = reports.into_iter();
    let mut merged = iter.next()?;
    let mut worst = margin_of(&merged);
    for r in iter {
        merged.checks_run += r.checks_run;
        let margin = margin_of(&r);
        if margin < worst {
            worst = margin;
            merged.min_gap = r.min_gap;
            merged.witness = r.witness;
            merged.tolerance = r.tolerance;
            merged.note = r.note;
        }
    }
    merged.passed = worst >= 0.0;
    Some(merged)
}

/// Scale/tolerance policy for the pass decision: a gap passes when
/// `gap >= -(atol + rtol * scale)` with `scale = max(|lhs|, |rhs|)`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            atol: DEFAULT_ATOL,
            rtol: DEFAULT_RTOL,
        }
    }
}

impl Tolerance {
    pub fn new(atol: f64, rtol: f64) -> Self {
        assert!(atol >= 0.0 && rtol >= 0.0);
        Self { atol, rtol }
    }

    pub fn at_scale(&self, scale: f64) -> f64 {
        self.atol + self.rtol * scale
    }
}

/// Folds pointwise gaps into the worst witness. The winner is the entry with
/// the smallest margin `gap + tol(scale)`, not the smallest raw gap, so that
/// a barely-passing large-scale configuration does not shadow a clear
/// failure at small scale. Ties keep the first entry seen.
pub(crate) struct GapScan {
    name: String,
    rule: String,
    tol: Tolerance,
    checks_run: usize,
    min_margin: f64,
    min_gap: f64,
    witness: Vec<f64>,
    witness_tol: f64,
}

impl GapScan {
    pub(crate) fn new(name: impl Into<String>, rule: impl Into<String>, tol: Tolerance) -> Self {
        Self {
            name: name.into(),
            rule: rule.into(),
            tol,
            checks_run: 0,
            min_margin: f64::INFINITY,
            min_gap: f64::INFINITY,
            witness: Vec::new(),
            witness_tol: tol.at_scale(0.0),
        }
    }

    /// Record one configuration with `gap = lhs - rhs` oriented as `>= 0`.
    pub(crate) fn record(&mut self, lhs: f64, rhs: f64, witness: &[f64]) {
        self.checks_run += 1;
        let gap = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs());
        let tol = self.tol.at_scale(scale);
        // NaN gaps (from inf - inf etc.) must fail, so treat them as the
        // worst possible margin.
        let margin = if gap.is_nan() {
            f64::NEG_INFINITY
        } else {
            gap + tol
        };
        if margin < self.min_margin {
            self.min_margin = margin;
            self.min_gap = gap;
            self.witness = witness.to_vec();
            self.witness_tol = tol;
        }
    }

    pub(crate) fn checks_run(&self) -> usize {
        self.checks_run
    }

    /// Final report; an empty scan passes vacuously with `min_gap = inf`.
    pub(crate) fn finish(self) -> InequalityReport {
        InequalityReport {
            name: self.name,
            rule: self.rule,
            checks_run: self.checks_run,
            min_gap: self.min_gap,
            witness: self.witness,
            tolerance: self.witness_tol,
            passed: self.min_margin >= 0.0,
            note: None,
        }
    }
}

/// Grid used by the classification checkers: `point_count` uniform sample
/// points on `interval` and `t_count` interior chord parameters
/// `t = (j + 1/2) / t_count`.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub interval: Interval,
    pub point_count: usize,
    pub t_count: usize,
    pub tol: Tolerance,
}

impl GridSpec {
    pub fn new(interval: Interval) -> Self {
        assert!(
            interval.is_bounded() && !interval.is_degenerate(),
            "grids need a bounded, nondegenerate interval"
        );
        Self {
            interval,
            point_count: 64,
            t_count: 16,
            tol: Tolerance::default(),
        }
    }

    pub fn with_points(mut self, point_count: usize) -> Self {
        assert!(point_count >= 2);
        self.point_count = point_count;
        self
    }

    pub fn with_t_count(mut self, t_count: usize) -> Self {
        assert!(t_count >= 2);
        self.t_count = t_count;
        self
    }

    pub fn with_tol(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn points(&self) -> Vec<f64> {
        self.interval.uniform_points(self.point_count)
    }

    /// Interior chord parameters, midpoints of `t_count` equal slots of
    /// `(0, 1)`; the endpoints `t = 0, 1` are always trivial.
    pub fn t_values(&self) -> Vec<f64> {
        (0..self.t_count)
            .map(|j| (j as f64 + 0.5) / self.t_count as f64)
            .collect()
    }
}
