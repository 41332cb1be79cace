//! Grid checkers for the convexity classes and for the structural criteria
//! implying them.
//!
//! Every checker samples a bounded grid and folds the pointwise inequality
//! gaps into an [`InequalityReport`]; passing is a sampled statement, not a
//! proof. Orientation is uniform: gap = satisfied side minus other side, so
//! `min_gap >= -tolerance` means the inequality held everywhere sampled.
//! Pair-based checks that need `x + y` (or `|y - x|`) inside the domain skip
//! the grid pairs that would leave it and error out only when nothing at all
//! can be sampled.

use crate::error::{Error, Result};
use crate::function::{CertKind, ErrorFnFlags, ErrorOrModulus, ScalarFn};
use crate::interval::Interval;
use crate::report::{GapScan, GridSpec, InequalityReport, Tolerance};

/// `t*x + (1-t)*y` clamped into `[min(x,y), max(x,y)]` so rounding cannot
/// push a chord point out of the domain.
fn chord(x: f64, y: f64, t: f64) -> f64 {
    (t * x + (1.0 - t) * y).clamp(x.min(y), x.max(y))
}

fn domain_err(f: &ScalarFn, x: f64) -> Error {
    Error::Domain {
        id: f.id().to_string(),
        x,
        lo: f.domain().lo(),
        hi: f.domain().hi(),
    }
}

fn companion_domain_err(m: &ErrorOrModulus, x: f64) -> Error {
    Error::Domain {
        id: m.id().to_string(),
        x,
        lo: 0.0,
        hi: m.length(),
    }
}

fn values_at(f: &ScalarFn, points: &[f64]) -> Result<Vec<f64>> {
    points.iter().map(|&x| f.evaluate(x)).collect()
}

/// Check `f(y) >= f(x) + C_x*(y-x) + f(|y-x|)` over all grid pairs. The
/// slope is `c_rule` when supplied, else the function's own support slope
/// (registered rule, analytic derivative, or a difference stencil).
pub fn check_superquadratic(
    f: &ScalarFn,
    grid: &GridSpec,
    c_rule: Option<&dyn Fn(f64) -> f64>,
) -> Result<InequalityReport> {
    quadratic_core(f, grid, c_rule, true)
}

/// Reversed orientation of [`check_superquadratic`].
pub fn check_subquadratic(
    f: &ScalarFn,
    grid: &GridSpec,
    c_rule: Option<&dyn Fn(f64) -> f64>,
) -> Result<InequalityReport> {
    quadratic_core(f, grid, c_rule, false)
}

fn quadratic_core(
    f: &ScalarFn,
    grid: &GridSpec,
    c_rule: Option<&dyn Fn(f64) -> f64>,
    super_side: bool,
) -> Result<InequalityReport> {
    let iv = grid.interval;
    if !f.domain().contains_interval(&iv) {
        return Err(domain_err(f, iv.lo()));
    }
    // Pairwise differences sweep all of [0, interval length] and the
    // definition evaluates f there, so that whole range must be in-domain.
    for probe in [0.0, iv.length()] {
        if !f.domain().contains(probe) {
            return Err(domain_err(f, probe));
        }
    }
    let pts = grid.points();
    let vals = values_at(f, &pts)?;
    let (name, rule) = if super_side {
        (
            format!("superquadratic({})", f.id()),
            "f(y) >= f(x) + C_x*(y-x) + f(|y-x|)",
        )
    } else {
        (
            format!("subquadratic({})", f.id()),
            "f(y) <= f(x) + C_x*(y-x) + f(|y-x|)",
        )
    };
    let mut scan = GapScan::new(name, rule, grid.tol);
    for (i, &x) in pts.iter().enumerate() {
        let cx = match c_rule {
            Some(c) => c(x),
            None => f.support_slope(x)?,
        };
        for (j, &y) in pts.iter().enumerate() {
            let shifted = vals[i] + cx * (y - x) + f.evaluate((y - x).abs())?;
            if super_side {
                scan.record(vals[j], shifted, &[x, y]);
            } else {
                scan.record(shifted, vals[j], &[x, y]);
            }
        }
    }
    Ok(scan.finish())
}

/// Structural consequences of superquadraticity: `f(0) <= 0` always; and
/// when `f` is nonnegative on the sampled grid it must additionally be
/// midpoint convex with `f(0) = 0`. Requires the certificate, since the
/// point is to sanity-check a claim, not to classify.
pub fn check_superquadratic_sanity(f: &ScalarFn, grid: &GridSpec) -> Result<InequalityReport> {
    if !f.domain().contains(0.0) {
        return Err(domain_err(f, 0.0));
    }
    if !f.has_certificate(CertKind::Superquadratic) {
        return Err(Error::Certificate(format!(
            "`{}` carries no superquadratic certificate to sanity-check",
            f.id()
        )));
    }
    let pts = grid.points();
    let vals = values_at(f, &pts)?;
    let f0 = f.evaluate(0.0)?;
    let mut scan = GapScan::new(
        format!("superquadratic-sanity({})", f.id()),
        "f(0) <= 0; if f >= 0 on the grid also midpoint convexity and f(0) = 0",
        grid.tol,
    );
    scan.record(0.0, f0, &[0.0]);
    let note = if vals.iter().all(|&v| v >= 0.0) {
        scan.record(f0, 0.0, &[0.0]);
        for (i, &x) in pts.iter().enumerate() {
            for (j, &y) in pts.iter().enumerate().skip(i + 1) {
                let fm = f.evaluate(chord(x, y, 0.5))?;
                scan.record(0.5 * (vals[i] + vals[j]), fm, &[x, y]);
            }
        }
        "nonnegative on the grid: midpoint convexity and f(0) = 0 included"
    } else {
        "changes sign or is nonpositive on the grid: only f(0) <= 0 checked"
    };
    Ok(scan.finish().with_note(note))
}

/// Sufficient criterion: a nonpositive, non-increasing, superadditive
/// function is superquadratic. Three sub-scans (sign, monotonicity,
/// superadditivity) folded into one report; superadditivity samples only
/// the pairs whose sum stays inside the domain.
pub fn check_superadditive_criterion(f: &ScalarFn, grid: &GridSpec) -> Result<InequalityReport> {
    let iv = grid.interval;
    if !f.domain().contains_interval(&iv) {
        return Err(domain_err(f, iv.lo()));
    }
    let pts = grid.points();
    let vals = values_at(f, &pts)?;
    let mut scan = GapScan::new(
        format!("superadditive-criterion({})", f.id()),
        "f <= 0; f non-increasing; f(x+y) >= f(x) + f(y)",
        grid.tol,
    );
    for (i, &x) in pts.iter().enumerate() {
        scan.record(0.0, vals[i], &[x]);
    }
    for i in 0..pts.len() - 1 {
        scan.record(vals[i], vals[i + 1], &[pts[i], pts[i + 1]]);
    }
    let mut sum_pairs = 0usize;
    for (i, &x) in pts.iter().enumerate() {
        for (j, &y) in pts.iter().enumerate().skip(i) {
            let s = x + y;
            if !f.domain().contains(s) {
                continue;
            }
            scan.record(f.evaluate(s)?, vals[i] + vals[j], &[x, y]);
            sum_pairs += 1;
        }
    }
    if sum_pairs == 0 {
        return Err(domain_err(f, 2.0 * iv.lo()));
    }
    let note = format!("{sum_pairs} in-domain superadditivity pairs");
    Ok(scan.finish().with_note(note))
}

/// Sufficient criterion via the slope ratio: when `f(0) = 0` and the
/// derivative vanishes at `0+`, a nondecreasing `f'(x)/x` implies
/// superquadraticity. A nonzero `f(0)` is a hard precondition failure; the
/// near-zero derivative gate at `x = 1e-6` is the report's first sample.
pub fn check_derivative_ratio(f: &ScalarFn, grid: &GridSpec) -> Result<InequalityReport> {
    const EPS: f64 = 1e-6;
    const SLOPE_GATE: f64 = 1e-4;
    if !f.domain().contains(0.0) {
        return Err(domain_err(f, 0.0));
    }
    let f0 = f.evaluate(0.0)?;
    if f0.abs() > grid.tol.atol {
        return Err(Error::Precondition(format!(
            "derivative-ratio criterion needs f(0) = 0, got f(0) = {f0} for `{}`",
            f.id()
        )));
    }
    let mut scan = GapScan::new(
        format!("derivative-ratio({})", f.id()),
        "|f'(1e-6)| <= 1e-4; f'(x)/x nondecreasing",
        grid.tol,
    );
    scan.record(SLOPE_GATE, f.derivative_at(EPS)?.abs(), &[EPS]);
    let mut prev: Option<(f64, f64)> = None;
    for x in grid.points() {
        if x <= f.domain().lo() || x <= 0.0 || x >= f.domain().hi() {
            continue;
        }
        let r = f.derivative_at(x)? / x;
        if let Some((px, pr)) = prev {
            scan.record(r, pr, &[px, x]);
        }
        prev = Some((x, r));
    }
    Ok(scan.finish())
}

#[derive(Clone, Copy)]
enum ChordForm<'a> {
    Plain,
    Uniform(&'a ErrorOrModulus),
    Phi(&'a ErrorOrModulus),
}

/// Check `t*f(x) + (1-t)*f(y) >= f(t*x + (1-t)*y) + t*(1-t)*M(|x-y|)` over
/// the full `(x, y, t)` grid.
pub fn check_uniform_convexity(
    f: &ScalarFn,
    modulus: &ErrorOrModulus,
    grid: &GridSpec,
) -> Result<InequalityReport> {
    chord_core(
        f,
        ChordForm::Uniform(modulus),
        grid,
        format!("uniformly-convex({})", f.id()),
        "t*f(x) + (1-t)*f(y) >= f(t*x+(1-t)*y) + t*(1-t)*M(|x-y|)",
    )
}

/// Plain convexity: the uniform check with the zero modulus dropped.
pub fn check_convexity(f: &ScalarFn, grid: &GridSpec) -> Result<InequalityReport> {
    chord_core(
        f,
        ChordForm::Plain,
        grid,
        format!("convex({})", f.id()),
        "t*f(x) + (1-t)*f(y) >= f(t*x+(1-t)*y)",
    )
}

/// Check the error-compensated convexity inequality
/// `t*f(x) + (1-t)*f(y) + t*phi((1-t)*|x-y|) + (1-t)*phi(t*|x-y|) >= f(chord)`.
pub fn check_phi_convexity(
    f: &ScalarFn,
    err: &ErrorOrModulus,
    grid: &GridSpec,
) -> Result<InequalityReport> {
    if !err.nonnegative() {
        return Err(Error::Precondition(format!(
            "phi-convexity needs a nonnegative error function, `{}` is not flagged so",
            err.id()
        )));
    }
    chord_core(
        f,
        ChordForm::Phi(err),
        grid,
        format!("phi-convex({})", f.id()),
        "t*f(x) + (1-t)*f(y) + t*phi((1-t)*|x-y|) + (1-t)*phi(t*|x-y|) >= f(t*x+(1-t)*y)",
    )
}

fn chord_core(
    f: &ScalarFn,
    form: ChordForm,
    grid: &GridSpec,
    name: String,
    rule: &str,
) -> Result<InequalityReport> {
    let iv = grid.interval;
    if !f.domain().contains_interval(&iv) {
        return Err(domain_err(f, iv.lo()));
    }
    if let ChordForm::Uniform(m) | ChordForm::Phi(m) = form {
        if m.length() + 1e-12 < iv.length() {
            return Err(Error::Precondition(format!(
                "companion `{}` lives on [0, {}], too short for {}",
                m.id(),
                m.length(),
                iv
            )));
        }
    }
    let pts = grid.points();
    let vals = values_at(f, &pts)?;
    let ts = grid.t_values();
    let mut scan = GapScan::new(name, rule, grid.tol);
    for (i, &x) in pts.iter().enumerate() {
        for (j, &y) in pts.iter().enumerate() {
            let d = (x - y).abs();
            for &t in &ts {
                let fm = f.evaluate(chord(x, y, t))?;
                let combination = t * vals[i] + (1.0 - t) * vals[j];
                // min() guards the companion's closed right endpoint against
                // one-ulp overshoot when the interval spans its whole domain.
                let (lhs, rhs) = match form {
                    ChordForm::Plain => (combination, fm),
                    ChordForm::Uniform(m) => {
                        (combination, fm + t * (1.0 - t) * m.eval(d.min(m.length()))?)
                    }
                    ChordForm::Phi(p) => (
                        combination
                            + t * p.eval(((1.0 - t) * d).min(p.length()))?
                            + (1.0 - t) * p.eval((t * d).min(p.length()))?,
                        fm,
                    ),
                };
                scan.record(lhs, rhs, &[x, y, t]);
            }
        }
    }
    Ok(scan.finish())
}

/// The overshoot bound on error functions:
/// `phi(x+y) <= phi(x) + phi(y) + 2*(x/y)*phi(y)`, sampled over grid pairs
/// with `y > 0` whose sum stays inside `[0, L]`.
pub fn check_gamma(err: &ErrorOrModulus, grid: &GridSpec) -> Result<InequalityReport> {
    gamma_scan(err, grid, format!("gamma({})", err.id()))
}

fn gamma_scan(err: &ErrorOrModulus, grid: &GridSpec, name: String) -> Result<InequalityReport> {
    let hi = err.length();
    if grid.interval.lo() < 0.0 || grid.interval.hi() > hi {
        return Err(companion_domain_err(err, grid.interval.hi()));
    }
    let pts = grid.points();
    let mut scan = GapScan::new(
        name,
        "phi(x+y) <= phi(x) + phi(y) + 2*(x/y)*phi(y)",
        grid.tol,
    );
    for &x in &pts {
        for &y in &pts {
            if y <= 0.0 || x + y > hi {
                continue;
            }
            let (lhs, rhs) = gamma_sides_unchecked(err, x, y)?;
            scan.record(rhs, lhs, &[x, y]);
        }
    }
    if scan.checks_run() == 0 {
        return Err(Error::Precondition(format!(
            "no grid pair with y > 0 and x + y <= {hi} to sample for `{}`",
            err.id()
        )));
    }
    Ok(scan.finish())
}

/// Both sides of the overshoot bound at a single pair, for spot checks:
/// `(phi(x+y), phi(x) + phi(y) + 2*(x/y)*phi(y))`.
pub fn gamma_sides(err: &ErrorOrModulus, x: f64, y: f64) -> Result<(f64, f64)> {
    if y <= 0.0 {
        return Err(Error::Precondition(
            "the overshoot bound divides by y, need y > 0".into(),
        ));
    }
    gamma_sides_unchecked(err, x, y)
}

fn gamma_sides_unchecked(err: &ErrorOrModulus, x: f64, y: f64) -> Result<(f64, f64)> {
    let vy = err.eval(y)?;
    Ok((err.eval(x + y)?, err.eval(x)? + vy + 2.0 * (x / y) * vy))
}

/// The reversed overshoot bounds satisfied by superquadratic functions:
/// for grid pairs `(a, b)` with `a + b` in the domain, both
/// `f(a) + f(b) <= f(a+b) - (2a/(a+b))*f(b) - (2b/(a+b))*f(a)` (a+b > 0)
/// and `f(a+b) >= f(a) + f(b) + 2*(a/b)*f(b)` (b > 0).
pub fn check_minus_gamma(f: &ScalarFn, grid: &GridSpec) -> Result<InequalityReport> {
    let iv = grid.interval;
    if !f.domain().contains_interval(&iv) {
        return Err(domain_err(f, iv.lo()));
    }
    let pts = grid.points();
    let vals = values_at(f, &pts)?;
    let mut scan = GapScan::new(
        format!("minus-gamma({})", f.id()),
        "f(a)+f(b) <= f(a+b) - (2a/(a+b))*f(b) - (2b/(a+b))*f(a); \
         f(a+b) >= f(a) + f(b) + 2*(a/b)*f(b)",
        grid.tol,
    );
    for (i, &a) in pts.iter().enumerate() {
        for (j, &b) in pts.iter().enumerate() {
            let s = a + b;
            if !f.domain().contains(s) {
                continue;
            }
            let fs = f.evaluate(s)?;
            if s > 0.0 {
                let shaved = fs - 2.0 * a / s * vals[j] - 2.0 * b / s * vals[i];
                scan.record(shaved, vals[i] + vals[j], &[a, b]);
            }
            if b > 0.0 {
                scan.record(fs, vals[i] + vals[j] + 2.0 * (a / b) * vals[j], &[a, b]);
            }
        }
    }
    if scan.checks_run() == 0 {
        return Err(domain_err(f, 2.0 * iv.lo()));
    }
    Ok(scan.finish())
}

/// Consequences of the overshoot bound: both `sqrt(phi)` and `phi(t)/t`
/// are subadditive.
pub fn check_subadditive_consequences(
    err: &ErrorOrModulus,
    grid: &GridSpec,
) -> Result<InequalityReport> {
    if !err.has_gamma() || !err.nonnegative() {
        return Err(Error::Precondition(format!(
            "subadditivity consequences need a nonnegative error function with the \
             overshoot bound; `{}` is not flagged so",
            err.id()
        )));
    }
    let hi = err.length();
    if grid.interval.lo() < 0.0 || grid.interval.hi() > hi {
        return Err(companion_domain_err(err, grid.interval.hi()));
    }
    let pts = grid.points();
    let mut scan = GapScan::new(
        format!("subadditive({})", err.id()),
        "sqrt(phi(x+y)) <= sqrt(phi(x)) + sqrt(phi(y)); phi(x+y)/(x+y) <= phi(x)/x + phi(y)/y",
        grid.tol,
    );
    // Sampled-nonnegative values can still round a hair below zero; clamp
    // before taking roots.
    let root = |v: f64| v.max(0.0).sqrt();
    for (i, &x) in pts.iter().enumerate() {
        for &y in pts.iter().skip(i) {
            if x + y > hi {
                continue;
            }
            let (vx, vy, vs) = (err.eval(x)?, err.eval(y)?, err.eval(x + y)?);
            scan.record(root(vx) + root(vy), root(vs), &[x, y]);
            if x > 0.0 {
                scan.record(vx / x + vy / y, vs / (x + y), &[x, y]);
            }
        }
    }
    if scan.checks_run() == 0 {
        return Err(Error::Precondition(format!(
            "no grid pair with x + y <= {hi} to sample for `{}`",
            err.id()
        )));
    }
    Ok(scan.finish())
}

/// Closure of the overshoot family under decreasing multipliers: when `psi`
/// is nonnegative and non-increasing on `[0, L]`, the product `psi * phi`
/// keeps the bound. Gates on `psi` are prechecked on a sample grid, then
/// the product runs through [`check_gamma`].
pub fn check_gamma_closure(
    err: &ErrorOrModulus,
    psi: &ScalarFn,
    grid: &GridSpec,
) -> Result<InequalityReport> {
    if !err.has_gamma() {
        return Err(Error::Precondition(format!(
            "gamma closure needs the overshoot bound on `{}`",
            err.id()
        )));
    }
    let len = err.length();
    if !psi.domain().contains_interval(&Interval::new(0.0, len)) {
        return Err(Error::Domain {
            id: psi.id().to_string(),
            x: len,
            lo: psi.domain().lo(),
            hi: psi.domain().hi(),
        });
    }
    let mut prev = f64::INFINITY;
    for x in Interval::new(0.0, len).uniform_points(grid.point_count) {
        let v = psi.evaluate(x)?;
        if v < -1e-12 {
            return Err(Error::Precondition(format!(
                "multiplier `{}` must be nonnegative, got {v} at {x}",
                psi.id()
            )));
        }
        if v > prev + 1e-12 {
            return Err(Error::Precondition(format!(
                "multiplier `{}` must be non-increasing, rises to {v} at {x}",
                psi.id()
            )));
        }
        prev = v;
    }
    let pf = psi.clone();
    let ef = err.scalar_fn().clone();
    let composed = ErrorOrModulus::from_rule(
        format!("{}*{}", psi.id(), err.id()),
        len,
        move |x| pf.raw(x) * ef.raw(x),
        ErrorFnFlags {
            nonnegative: true,
            ..Default::default()
        },
    )?;
    let name = format!("gamma-closure({})", composed.id());
    gamma_scan(&composed, grid, name)
}

/// Re-check every certificate a function claims, each on its pinned interval
/// (falling back to the function's test interval). This is the verifying
/// half of the registry contract: a registered claim failing its own check
/// here is a bug in the registry, not an input error.
pub fn verify_certificates(
    f: &ScalarFn,
    point_count: usize,
    t_count: usize,
    tol: Tolerance,
) -> Result<Vec<InequalityReport>> {
    let mut reports = Vec::new();
    for cert in f.certificates() {
        let iv = cert.check_interval().unwrap_or_else(|| f.test_interval());
        let grid = GridSpec::new(iv)
            .with_points(point_count)
            .with_t_count(t_count)
            .with_tol(tol);
        let companion = || {
            cert.companion()
                .expect("companion-kind certificates always carry one")
        };
        let report = match cert.kind() {
            CertKind::Superquadratic => check_superquadratic(f, &grid, None)?,
            CertKind::Subquadratic => check_subquadratic(f, &grid, None)?,
            CertKind::Convex => check_convexity(f, &grid)?,
            CertKind::PhiConvex => check_phi_convexity(f, companion(), &grid)?,
            CertKind::UniformlyConvex => check_uniform_convexity(f, companion(), &grid)?,
            CertKind::StronglyConvex => {
                let mut r = check_uniform_convexity(f, companion(), &grid)?;
                r.name = format!("strongly-convex({})", f.id());
                r
            }
        };
        reports.push(report);
        if cert.kind() == CertKind::Superquadratic && f.domain().contains(0.0) {
            reports.push(check_superquadratic_sanity(f, &grid)?);
        }
    }
    Ok(reports)
}
