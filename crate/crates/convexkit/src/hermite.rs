//! Integral-mean sandwich bounds: the classical midpoint/endpoint bracket
//! of the average of a convex function, sharpened or loosened by the
//! self-correcting, modulus, and error-function terms.
//!
//! All three abscissas (lower bound, integral mean, upper bound) are
//! computed by adaptive quadrature to `quad_tol`, which should sit well
//! below the comparison tolerance so that quadrature noise never decides
//! the verdict. Correction integrands with a kink at the window midpoint
//! are split there before integrating.

use crate::error::{Error, Result};
use crate::function::{ErrorOrModulus, ScalarFn};
use crate::quad::integrate;
use crate::report::{InequalityReport, Tolerance};

/// One evaluated sandwich `lower <= middle <= upper` with its two oriented
/// gaps. `passed` requires both gaps to clear the tolerance at the scale of
/// the largest abscissa.
#[derive(Debug, Clone)]
pub struct HHReport {
    pub name: String,
    pub rule: &'static str,
    pub a: f64,
    pub b: f64,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    /// `middle - lower`.
    pub lower_gap: f64,
    /// `upper - middle`.
    pub upper_gap: f64,
    pub evaluations: usize,
    pub tolerance: f64,
    pub passed: bool,
}

impl HHReport {
    /// Flattens the sandwich into the common report shape, with the window
    /// endpoints as witness and the worse of the two gaps as the headline.
    pub fn to_report(&self) -> InequalityReport {
        let min_gap = if self.lower_gap.is_nan() || self.upper_gap.is_nan() {
            f64::NAN
        } else {
            self.lower_gap.min(self.upper_gap)
        };
        InequalityReport {
            name: self.name.clone(),
            rule: self.rule.to_string(),
            checks_run: 2,
            min_gap,
            witness: vec![self.a, self.b],
            tolerance: self.tolerance,
            passed: self.passed,
            note: None,
        }
    }
}

fn window_check(f: &ScalarFn, a: f64, b: f64, from_zero: bool) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::Precondition(format!(
            "need a window a < b with finite endpoints, got [{a}, {b}]"
        )));
    }
    let d = f.domain();
    let lo_needed = if from_zero { 0.0 } else { a };
    if !d.contains(lo_needed) || !d.contains(b) {
        return Err(Error::Precondition(format!(
            "`{}` lives on {:?} and cannot cover [{lo_needed}, {b}]",
            f.id(),
            d
        )));
    }
    Ok(())
}

fn reach_check(e: &ErrorOrModulus, width: f64) -> Result<()> {
    if width > e.length() {
        return Err(Error::Precondition(format!(
            "`{}` lives on [0, {}] and cannot take arguments up to the window \
             width {width}",
            e.id(),
            e.length()
        )));
    }
    Ok(())
}

/// Integral of `g` over `[a, b]` split at the midpoint, for integrands with
/// a kink there.
fn split_integral<G>(g: G, a: f64, b: f64, quad_tol: f64) -> Result<(f64, usize)>
where
    G: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let left = integrate(&g, a, m, 0.5 * quad_tol)?;
    let right = integrate(&g, m, b, 0.5 * quad_tol)?;
    Ok((
        left.value + right.value,
        left.evaluations + right.evaluations,
    ))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    name: String,
    rule: &'static str,
    a: f64,
    b: f64,
    lower: f64,
    middle: f64,
    upper: f64,
    evaluations: usize,
    tol: Tolerance,
) -> HHReport {
    let scale = lower.abs().max(middle.abs()).max(upper.abs());
    let tolerance = tol.at_scale(scale);
    let lower_gap = middle - lower;
    let upper_gap = upper - middle;
    let passed = lower_gap >= -tolerance && upper_gap >= -tolerance;
    HHReport {
        name,
        rule,
        a,
        b,
        lower,
        middle,
        upper,
        lower_gap,
        upper_gap,
        evaluations,
        tolerance,
        passed,
    }
}

/// Self-correcting sandwich for superquadratic functions:
/// `f(mid) + avg f(|t - mid|)  <=  avg f  <=
///  (f(a)+f(b))/2 - avg ((b-t) f(t-a) + (t-a) f(b-t)) / (b-a)`.
///
/// The corrections feed `f` arguments down to `0`, so the whole of `[0, b]`
/// must lie in the domain.
pub fn hh_superquadratic(
    f: &ScalarFn,
    a: f64,
    b: f64,
    quad_tol: f64,
    tol: Tolerance,
) -> Result<HHReport> {
    window_check(f, a, b, true)?;
    let w = b - a;
    let m = 0.5 * (a + b);
    let mean_q = integrate(|t| f.evaluate(t), a, b, quad_tol)?;
    let middle = mean_q.value / w;
    let (corr, corr_ev) = split_integral(|t| f.evaluate((t - m).abs()), a, b, quad_tol)?;
    let lower = f.evaluate(m)? + corr / w;
    let edge_q = integrate(
        |t| Ok((b - t) * f.evaluate(t - a)? + (t - a) * f.evaluate(b - t)?),
        a,
        b,
        quad_tol,
    )?;
    let upper = 0.5 * (f.evaluate(a)? + f.evaluate(b)?) - edge_q.value / (w * w);
    Ok(assemble(
        format!("hh({})", f.id()),
        "f(mid) + avg[f(|t-mid|)] <= avg[f] <= (f(a)+f(b))/2 - avg[((b-t)*f(t-a)+(t-a)*f(b-t))/(b-a)]",
        a,
        b,
        lower,
        middle,
        upper,
        mean_q.evaluations + corr_ev + edge_q.evaluations,
        tol,
    ))
}

/// Error-function sandwich for phi-convex functions; the corrections point
/// the other way, widening the classical bracket:
/// `f(mid) - avg phi(|t - mid|)  <=  avg f  <=
///  (f(a)+f(b))/2 + avg ((b-t) phi(t-a) + (t-a) phi(b-t)) / (b-a)`.
pub fn hh_phi(
    f: &ScalarFn,
    err: &ErrorOrModulus,
    a: f64,
    b: f64,
    quad_tol: f64,
    tol: Tolerance,
) -> Result<HHReport> {
    window_check(f, a, b, false)?;
    if !err.nonnegative() {
        return Err(Error::Precondition(format!(
            "the error-function sandwich needs a nonnegative error function, \
             `{}` is not flagged so",
            err.id()
        )));
    }
    let w = b - a;
    reach_check(err, w)?;
    let m = 0.5 * (a + b);
    let mean_q = integrate(|t| f.evaluate(t), a, b, quad_tol)?;
    let middle = mean_q.value / w;
    let (corr, corr_ev) = split_integral(|t| err.eval((t - m).abs()), a, b, quad_tol)?;
    let lower = f.evaluate(m)? - corr / w;
    let edge_q = integrate(
        |t| Ok((b - t) * err.eval(t - a)? + (t - a) * err.eval(b - t)?),
        a,
        b,
        quad_tol,
    )?;
    let upper = 0.5 * (f.evaluate(a)? + f.evaluate(b)?) + edge_q.value / (w * w);
    Ok(assemble(
        format!("hh-phi({})", f.id()),
        "f(mid) - avg[phi(|t-mid|)] <= avg[f] <= (f(a)+f(b))/2 + avg[((b-t)*phi(t-a)+(t-a)*phi(b-t))/(b-a)]",
        a,
        b,
        lower,
        middle,
        upper,
        mean_q.evaluations + corr_ev + edge_q.evaluations,
        tol,
    ))
}

/// Modulus sandwich for uniformly convex functions:
/// `f(mid) + avg M(|t - mid|)  <=  avg f  <=  (f(a)+f(b))/2 - M(b-a)/6`.
pub fn hh_uniform(
    f: &ScalarFn,
    modulus: &ErrorOrModulus,
    a: f64,
    b: f64,
    quad_tol: f64,
    tol: Tolerance,
) -> Result<HHReport> {
    window_check(f, a, b, false)?;
    let w = b - a;
    reach_check(modulus, w)?;
    let m = 0.5 * (a + b);
    let mean_q = integrate(|t| f.evaluate(t), a, b, quad_tol)?;
    let middle = mean_q.value / w;
    let (corr, corr_ev) = split_integral(|t| modulus.eval((t - m).abs()), a, b, quad_tol)?;
    let lower = f.evaluate(m)? + corr / w;
    let upper = 0.5 * (f.evaluate(a)? + f.evaluate(b)?) - modulus.eval(w)? / 6.0;
    Ok(assemble(
        format!("hh-uniform({})", f.id()),
        "f(mid) + avg[M(|t-mid|)] <= avg[f] <= (f(a)+f(b))/2 - M(b-a)/6",
        a,
        b,
        lower,
        middle,
        upper,
        mean_q.evaluations + corr_ev,
        tol,
    ))
}
