//! Deviation bounds: how far the most extreme sample point can sit from the
//! weighted mean, given how strongly the function bends. Each bound compares
//! a certified ceiling against the deviation actually realised by the sample
//! and reports the slack.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::function::{powx, CertKind, ErrorOrModulus, ScalarFn};
use crate::report::Tolerance;
use crate::weights::ConvexWeights;

/// Positive sample points with strictly interior weights; the shape every
/// deviation bound expects. Two points minimum, so a deviation exists.
#[derive(Debug, Clone)]
pub struct WeightedSample {
    points: Vec<f64>,
    weights: ConvexWeights,
}

impl WeightedSample {
    pub fn new(points: Vec<f64>, weights: ConvexWeights) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::Weight(format!(
                "sample has {} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if points.len() < 2 {
            return Err(Error::Precondition(
                "deviation bounds need at least two sample points".into(),
            ));
        }
        for &x in &points {
            if !x.is_finite() || x <= 0.0 {
                return Err(Error::Precondition(format!(
                    "sample points must be positive and finite, got {x}"
                )));
            }
        }
        for &w in weights.values() {
            if !(w > 0.0 && w < 1.0) {
                return Err(Error::Weight(format!(
                    "every weight must lie strictly inside (0, 1), got {w}"
                )));
            }
        }
        Ok(Self { points, weights })
    }

    /// Equal weights `1/n`.
    pub fn equal(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Precondition(
                "deviation bounds need at least two sample points".into(),
            ));
        }
        let weights = ConvexWeights::equal(points.len());
        Self::new(points, weights)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &ConvexWeights {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        // Always false; the constructors insist on two points.
        self.points.is_empty()
    }

    pub fn weighted_mean(&self) -> f64 {
        self.points
            .iter()
            .zip(self.weights.values())
            .map(|(x, w)| x * w)
            .sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.min()
    }

    /// Largest `|x_k - mean|` over the sample.
    pub fn max_abs_deviation(&self) -> f64 {
        let a = self.weighted_mean();
        self.points
            .iter()
            .map(|x| (x - a).abs())
            .fold(0.0, f64::max)
    }

    pub fn has_equal_weights(&self) -> bool {
        let w = self.weights.values();
        let spread = w.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v))
            - w.iter().fold(f64::INFINITY, |m, v| m.min(*v));
        spread <= 1e-12
    }

    /// `sum w_k * g(x_k)` with evaluation failures propagated.
    fn weighted_apply(&self, g: impl Fn(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.points.iter().zip(self.weights.values()) {
            acc += w * g(x)?;
        }
        Ok(acc)
    }
}

/// One evaluated deviation bound. `slack = bound_value - actual_value`, and
/// `passed` means the slack clears the tolerance at the scale of the larger
/// side. `intermediates` exposes every quantity the bound was assembled
/// from, keyed by name.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub rule: String,
    pub bound_value: f64,
    pub actual_value: f64,
    pub slack: f64,
    pub intermediates: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

fn assemble(
    name: String,
    rule: &str,
    bound_value: f64,
    actual_value: f64,
    intermediates: BTreeMap<String, f64>,
    tol: Tolerance,
    note: Option<String>,
) -> BoundReport {
    let slack = bound_value - actual_value;
    let tolerance = tol.at_scale(bound_value.abs().max(actual_value.abs()));
    let passed = slack >= -tolerance;
    BoundReport {
        name,
        rule: rule.to_string(),
        bound_value,
        actual_value,
        slack,
        intermediates,
        tolerance,
        passed,
        note,
    }
}

/// Difference `minuend - subtrahend` that is nonnegative in exact
/// arithmetic; rounding noise up to `1e-15` at the minuend's scale is
/// clamped to zero, anything worse is a genuine violation.
fn radicand(minuend: f64, subtrahend: f64) -> Result<f64> {
    let v = minuend - subtrahend;
    if v >= 0.0 {
        return Ok(v);
    }
    if v >= -1e-15 * minuend.abs().max(1.0) {
        return Ok(0.0);
    }
    Err(Error::Precondition(format!(
        "expected a nonnegative gap, got {minuend} - {subtrahend} = {v}"
    )))
}

fn require_equal_weights(sample: &WeightedSample, what: &str) -> Result<()> {
    if !sample.has_equal_weights() {
        return Err(Error::Weight(format!(
            "the {what} bound is stated for equal weights only"
        )));
    }
    Ok(())
}

/// Extremal-deviation coefficient
/// `T(a0, p) = (1-a0)^(1-1/p) / (a0^(1/p) * (a0^(p-1) + (1-a0)^(p-1))^(1/p))`
/// for the smallest weight `a0` in a sample; `T(1/n, 2) = sqrt(n-1)`.
pub fn t_coefficient(alpha0: f64, p: f64) -> Result<f64> {
    if !(alpha0 > 0.0 && alpha0 < 1.0) {
        return Err(Error::Domain {
            id: "alpha0".into(),
            x: alpha0,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if !p.is_finite() || p < 2.0 {
        return Err(Error::Domain {
            id: "p".into(),
            x: p,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let b = 1.0 - alpha0;
    let inner = alpha0.powf(p - 1.0) + b.powf(p - 1.0);
    Ok(b.powf(1.0 - 1.0 / p) / (alpha0.powf(1.0 / p) * inner.powf(1.0 / p)))
}

/// The equal-weight power coefficient computed two ways: `T(1/n, p)^p` and
/// its closed form `(n-1)^p * n / ((n-1) + (n-1)^p)`. The two must agree;
/// returning both lets callers assert that.
pub fn cross_check_coefficients(n: usize, p: f64) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "the coefficient cross-check needs n >= 2 points, got {n}"
        )));
    }
    let t = t_coefficient(1.0 / n as f64, p)?;
    let q = (n - 1) as f64;
    let closed = q.powf(p) * n as f64 / (q + q.powf(p));
    Ok((t.powf(p), closed))
}

/// Variance-based deviation ceiling for equal weights:
/// `max|x_k - mean| <= sqrt((n-1) * (mean of squares - mean^2))`.
pub fn cipu_bound(sample: &WeightedSample, tol: Tolerance) -> Result<BoundReport> {
    require_equal_weights(sample, "cipu")?;
    let n = sample.len() as f64;
    let mean = sample.weighted_mean();
    let m2 = sample.weighted_apply(|x| Ok(x * x))?;
    let variance = radicand(m2, mean * mean)?;
    let bound = ((n - 1.0) * variance).sqrt();
    let actual = sample.max_abs_deviation();
    let mut mid = BTreeMap::new();
    mid.insert("n".into(), n);
    mid.insert("mean".into(), mean);
    mid.insert("second_moment".into(), m2);
    mid.insert("variance".into(), variance);
    Ok(assemble(
        "cipu".into(),
        "max|x - mean| <= sqrt((n-1)*(avg x^2 - mean^2))",
        bound,
        actual,
        mid,
        tol,
        None,
    ))
}

/// Power-moment deviation ceiling for arbitrary interior weights:
/// `max|x_k - mean| <= T(a0, p) * (sum w*x^p - mean^p)^(1/p)`.
pub fn deviation_bound_power(
    sample: &WeightedSample,
    p: f64,
    tol: Tolerance,
) -> Result<BoundReport> {
    let alpha0 = sample.min_weight();
    let t = t_coefficient(alpha0, p)?;
    let mean = sample.weighted_mean();
    let moment = sample.weighted_apply(|x| Ok(powx(x, p)))?;
    let gap = radicand(moment, powx(mean, p))?;
    let bound = t * gap.powf(1.0 / p);
    let actual = sample.max_abs_deviation();
    let mut mid = BTreeMap::new();
    mid.insert("p".into(), p);
    mid.insert("alpha0".into(), alpha0);
    mid.insert("t_coefficient".into(), t);
    mid.insert("mean".into(), mean);
    mid.insert("p_moment".into(), moment);
    mid.insert("moment_gap".into(), gap);
    Ok(assemble(
        format!("power(p={p})"),
        "max|x - mean| <= T(alpha0,p) * (sum w*x^p - mean^p)^(1/p)",
        bound,
        actual,
        mid,
        tol,
        None,
    ))
}

const SUBMULT_GRID: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

/// Spot check on a small grid that `g` is positive, non-decreasing, and
/// submultiplicative (`g(xy) <= g(x)g(y)`) as far as its domain allows.
fn submultiplicative_precheck(
    label: &str,
    g: &dyn Fn(f64) -> Result<f64>,
    hi: f64,
    tol: Tolerance,
) -> Result<()> {
    let mut prev: Option<f64> = None;
    for &x in SUBMULT_GRID.iter().filter(|&&x| x <= hi) {
        let gx = g(x)?;
        if gx <= 0.0 {
            return Err(Error::Precondition(format!(
                "`{label}` must be positive on the spot-check grid, got {gx} at {x}"
            )));
        }
        if let Some(p) = prev {
            if gx < p - tol.at_scale(p.abs()) {
                return Err(Error::Precondition(format!(
                    "`{label}` must be non-decreasing, but drops to {gx} at {x}"
                )));
            }
        }
        prev = Some(gx);
    }
    let mut pairs = 0usize;
    for &x in &SUBMULT_GRID {
        for &y in &SUBMULT_GRID {
            if x > hi || y > hi || x * y > hi {
                continue;
            }
            let product = g(x)? * g(y)?;
            let composed = g(x * y)?;
            if composed > product + tol.at_scale(product.abs().max(composed.abs())) {
                return Err(Error::Precondition(format!(
                    "`{label}` is not submultiplicative: g({x})*g({y}) = {product} \
                     but g({}) = {composed}",
                    x * y
                )));
            }
            pairs += 1;
        }
    }
    if pairs == 0 {
        return Err(Error::Precondition(format!(
            "`{label}` lives on [0, {hi}], too short to spot-check submultiplicativity"
        )));
    }
    Ok(())
}

/// Deviation ceiling through the function itself, for equal weights and a
/// positive, non-decreasing, submultiplicative `f` with `f(0) = 0`:
/// `f(max|x_k - mean|) <= n*f(n-1)/((n-1) + f(n-1)) * (avg f(x) - f(mean))`.
pub fn deviation_bound_submultiplicative(
    f: &ScalarFn,
    sample: &WeightedSample,
    tol: Tolerance,
) -> Result<BoundReport> {
    require_equal_weights(sample, "submultiplicative")?;
    let d = f.domain();
    if d.contains(0.0) {
        let f0 = f.evaluate(0.0)?;
        if f0.abs() > tol.atol {
            return Err(Error::Precondition(format!(
                "`{}` must vanish at zero, got {f0}",
                f.id()
            )));
        }
    }
    submultiplicative_precheck(f.id(), &|x| f.evaluate(x), d.hi(), tol)?;
    let n = sample.len() as f64;
    let f_shift = f.evaluate(n - 1.0)?;
    if f_shift <= 0.0 {
        return Err(Error::Precondition(format!(
            "`{}` must be positive at n-1 = {}, got {f_shift}",
            f.id(),
            n - 1.0
        )));
    }
    let mean = sample.weighted_mean();
    let avg_value = sample.weighted_apply(|x| f.evaluate(x))?;
    let f_mean = f.evaluate(mean)?;
    let gap = radicand(avg_value, f_mean)?;
    let coefficient = n * f_shift / ((n - 1.0) + f_shift);
    let bound = coefficient * gap;
    let deviation = sample.max_abs_deviation();
    let actual = f.evaluate(deviation)?;
    let mut mid = BTreeMap::new();
    mid.insert("n".into(), n);
    mid.insert("mean".into(), mean);
    mid.insert("avg_value".into(), avg_value);
    mid.insert("f_mean".into(), f_mean);
    mid.insert("f_at_n_minus_1".into(), f_shift);
    mid.insert("coefficient".into(), coefficient);
    mid.insert("max_deviation".into(), deviation);
    Ok(assemble(
        format!("submult({})", f.id()),
        "f(max|x - mean|) <= n*f(n-1)/((n-1)+f(n-1)) * (avg f(x) - f(mean))",
        bound,
        actual,
        mid,
        tol,
        None,
    ))
}

/// Deviation ceiling from a strong-convexity witness `m*x^p`:
/// `max|x_k - mean| <= T(a0, p) * ((sum w*f(x) - f(mean))/m)^(1/p)`.
///
/// The pair `(m, p)` must match a strong-convexity certificate carried by
/// `f`; an unwitnessed modulus would make the ceiling unsound.
pub fn deviation_bound_strong(
    f: &ScalarFn,
    sample: &WeightedSample,
    m: f64,
    p: f64,
    tol: Tolerance,
) -> Result<BoundReport> {
    let witnessed = f.certificates().iter().any(|c| {
        c.kind() == CertKind::StronglyConvex
            && c.strong_params()
                .is_some_and(|(cm, cp)| (cm - m).abs() <= 1e-12 && (cp - p).abs() <= 1e-12)
    });
    if !witnessed {
        return Err(Error::Certificate(format!(
            "`{}` carries no strong-convexity certificate with modulus {m}*x^{p}",
            f.id()
        )));
    }
    let alpha0 = sample.min_weight();
    let t = t_coefficient(alpha0, p)?;
    let mean = sample.weighted_mean();
    let avg_value = sample.weighted_apply(|x| f.evaluate(x))?;
    let f_mean = f.evaluate(mean)?;
    let gap = radicand(avg_value, f_mean)? / m;
    let bound = t * gap.powf(1.0 / p);
    let actual = sample.max_abs_deviation();
    let mut mid = BTreeMap::new();
    mid.insert("m".into(), m);
    mid.insert("p".into(), p);
    mid.insert("alpha0".into(), alpha0);
    mid.insert("t_coefficient".into(), t);
    mid.insert("mean".into(), mean);
    mid.insert("avg_value".into(), avg_value);
    mid.insert("f_mean".into(), f_mean);
    mid.insert("scaled_gap".into(), gap);
    Ok(assemble(
        format!("strong({})", f.id()),
        "max|x - mean| <= T(alpha0,p) * ((sum w*f(x) - f(mean))/m)^(1/p)",
        bound,
        actual,
        mid,
        tol,
        Some(format!(
            "convexity gap divided by the modulus coefficient m = {m} before the 1/{p} root"
        )),
    ))
}

/// Deviation ceiling through a convexity modulus, for equal weights and a
/// convex, vanishing, submultiplicative modulus:
/// `M(max|x_k - mean|) <= n*M(n-1)/((n-1) + M(n-1)) * (avg f(x) - f(mean))`.
pub fn deviation_bound_modulus(
    f: &ScalarFn,
    modulus: &ErrorOrModulus,
    sample: &WeightedSample,
    tol: Tolerance,
) -> Result<BoundReport> {
    require_equal_weights(sample, "modulus")?;
    if !modulus.nonnegative() || !modulus.is_convex() || !modulus.vanishes_at_zero() {
        return Err(Error::Precondition(format!(
            "`{}` must be flagged nonnegative, convex, and vanishing at zero",
            modulus.id()
        )));
    }
    submultiplicative_precheck(modulus.id(), &|x| modulus.eval(x), modulus.length(), tol)?;
    let n = sample.len() as f64;
    let m_shift = modulus.eval(n - 1.0)?;
    if m_shift <= 0.0 {
        return Err(Error::Precondition(format!(
            "`{}` must be positive at n-1 = {}, got {m_shift}",
            modulus.id(),
            n - 1.0
        )));
    }
    let mean = sample.weighted_mean();
    let avg_value = sample.weighted_apply(|x| f.evaluate(x))?;
    let f_mean = f.evaluate(mean)?;
    let gap = radicand(avg_value, f_mean)?;
    let coefficient = n * m_shift / ((n - 1.0) + m_shift);
    let bound = coefficient * gap;
    let deviation = sample.max_abs_deviation();
    let actual = modulus.eval(deviation)?;
    let mut mid = BTreeMap::new();
    mid.insert("n".into(), n);
    mid.insert("mean".into(), mean);
    mid.insert("avg_value".into(), avg_value);
    mid.insert("f_mean".into(), f_mean);
    mid.insert("modulus_at_n_minus_1".into(), m_shift);
    mid.insert("coefficient".into(), coefficient);
    mid.insert("max_deviation".into(), deviation);
    Ok(assemble(
        format!("modulus({})", f.id()),
        "M(max|x - mean|) <= n*M(n-1)/((n-1)+M(n-1)) * (avg f(x) - f(mean))",
        bound,
        actual,
        mid,
        tol,
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn t_coefficient_reference_values() {
        assert_relative_eq!(t_coefficient(0.5, 2.0).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(
            t_coefficient(1.0 / 3.0, 2.0).unwrap(),
            2.0_f64.sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            t_coefficient(0.25, 2.0).unwrap(),
            3.0_f64.sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            t_coefficient(1.0 / 3.0, 3.0).unwrap(),
            1.338865900164339,
            max_relative = 1e-12
        );
        assert!(matches!(t_coefficient(0.5, 1.5), Err(Error::Domain { .. })));
        assert!(matches!(t_coefficient(1.0, 2.0), Err(Error::Domain { .. })));
        assert!(matches!(t_coefficient(0.0, 2.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn coefficient_cross_check_agrees() {
        for n in 2..=6 {
            for p in [2.0, 2.5, 3.0, 4.0] {
                let (lhs, rhs) = cross_check_coefficients(n, p).unwrap();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
        }
        let (lhs, rhs) = cross_check_coefficients(3, 3.0).unwrap();
        assert_relative_eq!(lhs, 2.4, max_relative = 1e-12);
        assert_relative_eq!(rhs, 2.4, max_relative = 1e-15);
    }

    #[test]
    fn sample_validation() {
        assert!(matches!(
            WeightedSample::new(vec![1.0, 2.0], ConvexWeights::equal(3)),
            Err(Error::Weight(_))
        ));
        assert!(matches!(
            WeightedSample::equal(vec![1.0]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            WeightedSample::equal(vec![1.0, -2.0]),
            Err(Error::Precondition(_))
        ));
        let degenerate = ConvexWeights::new(vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            WeightedSample::new(vec![1.0, 2.0], degenerate),
            Err(Error::Weight(_))
        ));
        let s = WeightedSample::equal(vec![1.0, 2.0, 3.0]).unwrap();
        assert_relative_eq!(s.weighted_mean(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(s.max_abs_deviation(), 1.0, max_relative = 1e-12);
        assert!(s.has_equal_weights());
        assert!(!s.is_empty());
    }

    #[test]
    fn variance_bound_examples() {
        let s = WeightedSample::equal(vec![1.0, 2.0, 3.0]).unwrap();
        let r = cipu_bound(&s, tol()).unwrap();
        assert_relative_eq!(r.bound_value, 1.1547005383792515, max_relative = 1e-12);
        assert_relative_eq!(r.actual_value, 1.0, max_relative = 1e-12);
        assert!(r.passed && r.slack > 0.15);

        // One outlier against n-1 equal points is the equality case.
        let s = WeightedSample::equal(vec![1.0, 1.0, 4.0]).unwrap();
        let r = cipu_bound(&s, tol()).unwrap();
        assert!(r.passed);
        assert!(r.slack.abs() <= 1e-12, "slack {}", r.slack);

        let skewed =
            WeightedSample::new(vec![1.0, 2.0], ConvexWeights::new(vec![0.3, 0.7]).unwrap())
                .unwrap();
        assert!(matches!(cipu_bound(&skewed, tol()), Err(Error::Weight(_))));
    }

    #[test]
    fn power_bound_examples() {
        let s = WeightedSample::equal(vec![1.0, 1.0, 4.0]).unwrap();
        let r = deviation_bound_power(&s, 2.0, tol()).unwrap();
        assert!(r.passed);
        assert!(r.slack.abs() <= 1e-12, "slack {}", r.slack);
        assert_relative_eq!(
            r.intermediates["t_coefficient"],
            2.0_f64.sqrt(),
            max_relative = 1e-12
        );

        // Two points attain equality for p = 2 at any weight split.
        let s = WeightedSample::new(vec![1.0, 4.0], ConvexWeights::new(vec![0.3, 0.7]).unwrap())
            .unwrap();
        let r = deviation_bound_power(&s, 2.0, tol()).unwrap();
        assert!(r.passed);
        assert!(r.slack.abs() <= 1e-12, "slack {}", r.slack);

        let s = WeightedSample::new(
            vec![1.0, 2.0, 4.0],
            ConvexWeights::new(vec![0.5, 0.25, 0.25]).unwrap(),
        )
        .unwrap();
        let r = deviation_bound_power(&s, 2.0, tol()).unwrap();
        assert_relative_eq!(r.bound_value, 4.5_f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(r.actual_value, 2.0, max_relative = 1e-12);

        assert!(matches!(
            deviation_bound_power(&s, 1.5, tol()),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn constant_samples_collapse_the_power_bound() {
        let s = WeightedSample::equal(vec![2.0, 2.0, 2.0]).unwrap();
        let r = deviation_bound_power(&s, 2.0, tol()).unwrap();
        assert!(r.passed);
        assert!(r.bound_value <= 1e-7);
        assert!(r.actual_value <= 1e-15);
    }

    #[test]
    fn submultiplicative_bound_examples() {
        let f = lookup("pow:2").unwrap();
        let s = WeightedSample::equal(vec![1.0, 1.0, 4.0]).unwrap();
        let r = deviation_bound_submultiplicative(&f, &s, tol()).unwrap();
        assert!(r.passed);
        assert!(r.slack.abs() <= 1e-12, "slack {}", r.slack);
        assert_relative_eq!(r.intermediates["coefficient"], 2.0, max_relative = 1e-12);

        // x^2 ln x is negative below 1, so the positivity spot check trips.
        let f = lookup("xsq_ln").unwrap();
        assert!(matches!(
            deviation_bound_submultiplicative(&f, &s, tol()),
            Err(Error::Precondition(_))
        ));

        // Domain [0, 1/e] cannot host any spot-check pair.
        let f = lookup("xsqrt_neglog").unwrap();
        assert!(matches!(
            deviation_bound_submultiplicative(&f, &s, tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn strong_bound_examples() {
        let f = lookup("pow:2").unwrap();
        let s = WeightedSample::equal(vec![1.0, 1.0, 4.0]).unwrap();
        let r = deviation_bound_strong(&f, &s, 1.0, 2.0, tol()).unwrap();
        assert!(r.passed);
        assert!(r.slack.abs() <= 1e-12, "slack {}", r.slack);
        assert!(r.note.is_some());

        assert!(matches!(
            deviation_bound_strong(&f, &s, 3.0, 2.0, tol()),
            Err(Error::Certificate(_))
        ));
        let f = lookup("pow:1.5").unwrap();
        assert!(matches!(
            deviation_bound_strong(&f, &s, 1.0, 2.0, tol()),
            Err(Error::Certificate(_))
        ));

        // 2x^2 is exactly strongly convex with modulus 2x^2, and two points
        // attain equality for p = 2.
        let f = lookup("two_pow:2").unwrap();
        let s = WeightedSample::equal(vec![1.0, 2.0]).unwrap();
        let r = deviation_bound_strong(&f, &s, 2.0, 2.0, tol()).unwrap();
        assert!(r.passed);
        assert!(r.slack.abs() <= 1e-12, "slack {}", r.slack);
    }

    #[test]
    fn modulus_bound_examples() {
        let f = lookup("pow:4").unwrap();
        let phi = ErrorOrModulus::power(1.0, 4.0, 10.0);
        let s = WeightedSample::equal(vec![1.0, 1.0, 4.0]).unwrap();
        let r = deviation_bound_modulus(&f, &phi, &s, tol()).unwrap();
        assert!(r.passed);
        assert_relative_eq!(
            r.intermediates["coefficient"],
            8.0 / 3.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(r.actual_value, 16.0, max_relative = 1e-9);

        // p = 0.5 is not convex, so the flags reject it outright.
        let bad = ErrorOrModulus::power(1.0, 0.5, 10.0);
        assert!(matches!(
            deviation_bound_modulus(&f, &bad, &s, tol()),
            Err(Error::Precondition(_))
        ));

        // The zero modulus is degenerate: positivity fails on the grid.
        let zero = ErrorOrModulus::zero(10.0);
        assert!(matches!(
            deviation_bound_modulus(&f, &zero, &s, tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn radicand_clamps_noise_and_rejects_violations() {
        assert_eq!(radicand(1.0, 1.0).unwrap(), 0.0);
        assert_eq!(radicand(1.0, 1.0 + 1e-16).unwrap(), 0.0);
        assert!(radicand(2.0, 1.5).unwrap() == 0.5);
        assert!(matches!(radicand(1.0, 1.1), Err(Error::Precondition(_))));
    }
}
