//! Jensen-type inequalities for weighted point sets: the self-correcting
//! superquadratic form, its modulus and error-function variants, and the
//! external-weight reversals.
//!
//! Each evaluator checks one configuration and reports the oriented gap;
//! sampling whole families is the caller's job (see the CLI harness), which
//! keeps everything here deterministic per call. Witnesses list the points
//! followed by the weights, or `[a, b, nu]` for the two-point forms.

use crate::error::{Error, Result};
use crate::function::{ErrorOrModulus, ScalarFn};
use crate::report::{GapScan, InequalityReport, Tolerance};
use crate::weights::{ConvexWeights, ExternalWeights};

fn dot(points: &[f64], weights: &[f64]) -> f64 {
    points.iter().zip(weights).map(|(x, w)| x * w).sum()
}

fn matched(points: &[f64], weights: usize, what: &str) -> Result<()> {
    if points.len() != weights {
        return Err(Error::Weight(format!(
            "{what}: {} points but {} weights",
            points.len(),
            weights
        )));
    }
    Ok(())
}

fn witness_of(points: &[f64], weights: &[f64]) -> Vec<f64> {
    let mut w = points.to_vec();
    w.extend_from_slice(weights);
    w
}

fn non_affine_note(report: InequalityReport, weights: &ExternalWeights) -> InequalityReport {
    if weights.affine() {
        report
    } else {
        report.with_note(format!(
            "weights sum to {} instead of 1; the bound is printed as stated but only \
             guaranteed for affine combinations",
            weights.sum()
        ))
    }
}

/// Self-correcting Jensen bound for superquadratic functions:
/// `f(mean) <= sum w_r*(f(x_r) - f(|x_r - mean|))`.
pub fn jensen_superquadratic(
    f: &ScalarFn,
    points: &[f64],
    weights: &ConvexWeights,
    tol: Tolerance,
) -> Result<InequalityReport> {
    matched(points, weights.len(), "jensen")?;
    let mean = dot(points, weights.values());
    let lhs = f.evaluate(mean)?;
    let mut rhs = 0.0;
    for (&x, &w) in points.iter().zip(weights.values()) {
        rhs += w * (f.evaluate(x)? - f.evaluate((x - mean).abs())?);
    }
    let mut scan = GapScan::new(
        format!("jensen({})", f.id()),
        "f(mean) <= sum w*(f(x) - f(|x - mean|))",
        tol,
    );
    scan.record(rhs, lhs, &witness_of(points, weights.values()));
    Ok(scan.finish())
}

/// Jensen bound strengthened by a convexity modulus:
/// `f(mean) <= sum w_r*(f(x_r) - M(|x_r - mean|))`.
pub fn jensen_uniform(
    f: &ScalarFn,
    modulus: &ErrorOrModulus,
    points: &[f64],
    weights: &ConvexWeights,
    tol: Tolerance,
) -> Result<InequalityReport> {
    matched(points, weights.len(), "jensen-uniform")?;
    let mean = dot(points, weights.values());
    let lhs = f.evaluate(mean)?;
    let mut rhs = 0.0;
    for (&x, &w) in points.iter().zip(weights.values()) {
        rhs += w * (f.evaluate(x)? - modulus.eval((x - mean).abs())?);
    }
    let mut scan = GapScan::new(
        format!("jensen-uniform({})", f.id()),
        "f(mean) <= sum w*(f(x) - M(|x - mean|))",
        tol,
    );
    scan.record(rhs, lhs, &witness_of(points, weights.values()));
    Ok(scan.finish())
}

/// Jensen bound loosened by an error function:
/// `f(mean) <= sum w_r*(f(x_r) + phi(|x_r - mean|))`.
pub fn jensen_phi(
    f: &ScalarFn,
    err: &ErrorOrModulus,
    points: &[f64],
    weights: &ConvexWeights,
    tol: Tolerance,
) -> Result<InequalityReport> {
    matched(points, weights.len(), "jensen-phi")?;
    if !err.nonnegative() {
        return Err(Error::Precondition(format!(
            "the error-function Jensen form needs a nonnegative error function, \
             `{}` is not flagged so",
            err.id()
        )));
    }
    let mean = dot(points, weights.values());
    let lhs = f.evaluate(mean)?;
    let mut rhs = 0.0;
    for (&x, &w) in points.iter().zip(weights.values()) {
        rhs += w * (f.evaluate(x)? + err.eval((x - mean).abs())?);
    }
    let mut scan = GapScan::new(
        format!("jensen-phi({})", f.id()),
        "f(mean) <= sum w*(f(x) + phi(|x - mean|))",
        tol,
    );
    scan.record(rhs, lhs, &witness_of(points, weights.values()));
    Ok(scan.finish())
}

/// External Jensen reversal for superquadratic functions:
/// `f(sum nu*x) >= sum nu_i*f(x_i) + f(|sum nu*x - x_n|)
///  - sum_{i<n} nu_i*f(|x_i - x_n|)`.
pub fn external_jensen_superquadratic(
    f: &ScalarFn,
    points: &[f64],
    weights: &ExternalWeights,
    tol: Tolerance,
) -> Result<InequalityReport> {
    matched(points, weights.len(), "ext-jensen")?;
    let nu = weights.values();
    let bary = dot(points, nu);
    if bary <= 0.0 {
        return Err(Error::Precondition(format!(
            "the external combination must be positive, got {bary}"
        )));
    }
    let last = *points.last().expect("weights are never empty");
    let lhs = f.evaluate(bary)?;
    let mut rhs = f.evaluate((bary - last).abs())?;
    for (i, (&x, &v)) in points.iter().zip(nu).enumerate() {
        rhs += v * f.evaluate(x)?;
        if i + 1 < points.len() {
            rhs -= v * f.evaluate((x - last).abs())?;
        }
    }
    let mut scan = GapScan::new(
        format!("ext-jensen({})", f.id()),
        "f(sum nu*x) >= sum nu*f(x) + f(|sum nu*x - x_n|) - sum_(i<n) nu_i*f(|x_i - x_n|)",
        tol,
    );
    scan.record(lhs, rhs, &witness_of(points, nu));
    Ok(non_affine_note(scan.finish(), weights))
}

/// Two-point external reversal, split by the sign regime of `nu`. Inside
/// `[0, 1]` the combination is ordinary Jensen and rejected here.
pub fn external_jensen_n2(
    f: &ScalarFn,
    a: f64,
    b: f64,
    nu: f64,
    tol: Tolerance,
) -> Result<InequalityReport> {
    if (0.0..=1.0).contains(&nu) || !nu.is_finite() {
        return Err(Error::Precondition(format!(
            "nu = {nu} lies in [0, 1]: that regime is ordinary Jensen, not the external form"
        )));
    }
    let z = (1.0 - nu) * a + nu * b;
    if z <= 0.0 {
        return Err(Error::Precondition(format!(
            "the external combination must be positive, got {z}"
        )));
    }
    let comb = (1.0 - nu) * f.evaluate(a)? + nu * f.evaluate(b)?;
    let d = (a - b).abs();
    let name = format!("ext-jensen-n2({})", f.id());
    if nu < 0.0 {
        let rhs = f.evaluate(z)? + nu * f.evaluate(d)? - f.evaluate(nu.abs() * d)?;
        let mut scan = GapScan::new(
            name,
            "(1-nu)*f(a) + nu*f(b) <= f((1-nu)*a+nu*b) + nu*f(|a-b|) - f(|nu|*|a-b|)",
            tol,
        );
        scan.record(rhs, comb, &[a, b, nu]);
        // The last correction is stated at nu*|a-b| < 0, outside any domain
        // in [0, inf); |nu| restores the absolute-value convention of the
        // general form.
        Ok(scan
            .finish()
            .with_note("negative-weight correction evaluated at |nu|*|a-b|"))
    } else {
        let rhs = f.evaluate(z)? + (1.0 - nu) * f.evaluate(d)? - f.evaluate((nu - 1.0) * d)?;
        let mut scan = GapScan::new(
            name,
            "(1-nu)*f(a) + nu*f(b) <= f((1-nu)*a+nu*b) + (1-nu)*f(|a-b|) - f((nu-1)*|a-b|)",
            tol,
        );
        scan.record(rhs, comb, &[a, b, nu]);
        Ok(scan.finish())
    }
}

/// External reversal for phi-convex functions:
/// `f(sum nu*x) >= sum nu_i*f(x_i) - phi(|sum nu*x - x_n|)
///  + sum_{i<n} nu_i*phi(|x_i - x_n|)`.
pub fn external_jensen_phi(
    f: &ScalarFn,
    err: &ErrorOrModulus,
    points: &[f64],
    weights: &ExternalWeights,
    tol: Tolerance,
) -> Result<InequalityReport> {
    matched(points, weights.len(), "ext-jensen-phi")?;
    if !err.nonnegative() {
        return Err(Error::Precondition(format!(
            "the external error-function form needs a nonnegative error function, \
             `{}` is not flagged so",
            err.id()
        )));
    }
    let nu = weights.values();
    let bary = dot(points, nu);
    let last = *points.last().expect("weights are never empty");
    let lhs = f.evaluate(bary)?;
    let mut rhs = -err.eval((bary - last).abs())?;
    for (i, (&x, &v)) in points.iter().zip(nu).enumerate() {
        rhs += v * f.evaluate(x)?;
        if i + 1 < points.len() {
            rhs += v * err.eval((x - last).abs())?;
        }
    }
    let mut scan = GapScan::new(
        format!("ext-jensen-phi({})", f.id()),
        "f(sum nu*x) >= sum nu*f(x) - phi(|sum nu*x - x_n|) + sum_(i<n) nu_i*phi(|x_i - x_n|)",
        tol,
    );
    scan.record(lhs, rhs, &witness_of(points, nu));
    Ok(non_affine_note(scan.finish(), weights))
}

/// Two-point convenience wrapper of [`external_jensen_phi`] with weights
/// `(1-nu, nu)`; needs `nu >= 1` for those to be valid external weights.
pub fn external_jensen_phi_n2(
    f: &ScalarFn,
    err: &ErrorOrModulus,
    a: f64,
    b: f64,
    nu: f64,
    tol: Tolerance,
) -> Result<InequalityReport> {
    if nu.is_nan() || nu < 1.0 {
        return Err(Error::Precondition(format!(
            "the two-point error-function form needs nu >= 1, got {nu}"
        )));
    }
    let weights = ExternalWeights::new(vec![1.0 - nu, nu])?;
    let mut report = external_jensen_phi(f, err, &[a, b], &weights, tol)?;
    report.name = format!("ext-jensen-phi-n2({})", f.id());
    Ok(report)
}

/// External reversal for uniformly convex functions. With three or more
/// points this is the general modulus-corrected form; with exactly two it
/// is the sharper bound
/// `f(nu1*x1 + nu2*x2) >= nu1*f(x1) + nu2*f(x2) - (nu1/nu2)*M(nu2*|x2-x1|)`,
/// which requires affine weights with `nu2 > 1`.
pub fn external_jensen_uniform(
    f: &ScalarFn,
    modulus: &ErrorOrModulus,
    points: &[f64],
    weights: &ExternalWeights,
    tol: Tolerance,
) -> Result<InequalityReport> {
    matched(points, weights.len(), "ext-jensen-uniform")?;
    let nu = weights.values();
    let bary = dot(points, nu);
    let name = format!("ext-jensen-uniform({})", f.id());
    if points.len() == 2 {
        let (nu1, nu2) = (nu[0], nu[1]);
        if !weights.affine() || nu2 <= 1.0 {
            return Err(Error::Precondition(format!(
                "the two-point modulus form needs affine weights with nu2 > 1, \
                 got ({nu1}, {nu2})"
            )));
        }
        let arg = nu2 * (points[1] - points[0]).abs();
        if arg > modulus.length() {
            return Err(Error::Precondition(format!(
                "modulus `{}` lives on [0, {}] and cannot take nu2*|x2-x1| = {arg}",
                modulus.id(),
                modulus.length()
            )));
        }
        let rhs = nu1 * f.evaluate(points[0])? + nu2 * f.evaluate(points[1])?
            - nu1 / nu2 * modulus.eval(arg)?;
        let mut scan = GapScan::new(
            name,
            "f(nu1*x1+nu2*x2) >= nu1*f(x1) + nu2*f(x2) - (nu1/nu2)*M(nu2*|x2-x1|)",
            tol,
        );
        scan.record(f.evaluate(bary)?, rhs, &witness_of(points, nu));
        return Ok(scan.finish());
    }
    let last = *points.last().expect("weights are never empty");
    let lhs = f.evaluate(bary)?;
    let mut rhs = modulus.eval((bary - last).abs())?;
    for (i, (&x, &v)) in points.iter().zip(nu).enumerate() {
        rhs += v * f.evaluate(x)?;
        if i + 1 < points.len() {
            rhs -= v * modulus.eval((x - last).abs())?;
        }
    }
    let mut scan = GapScan::new(
        name,
        "f(sum nu*x) >= sum nu*f(x) + M(|sum nu*x - x_n|) - sum_(i<n) nu_i*M(|x_i - x_n|)",
        tol,
    );
    scan.record(lhs, rhs, &witness_of(points, nu));
    Ok(non_affine_note(scan.finish(), weights))
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
    fn jensen_on_the_square_is_exact() {
        let f = lookup("pow:2").unwrap();
        let w = ConvexWeights::new(vec![0.5, 0.5]).unwrap();
        let r = jensen_superquadratic(&f, &[1.0, 3.0], &w, tol()).unwrap();
        assert!(r.passed);
        assert_eq!(r.min_gap, 0.0);
        assert_eq!(r.checks_run, 1);
        assert_eq!(r.witness, vec![1.0, 3.0, 0.5, 0.5]);
    }

    #[test]
    fn jensen_on_the_cube_leaves_slack() {
        let f = lookup("pow:3").unwrap();
        let w = ConvexWeights::equal(3);
        let r = jensen_superquadratic(&f, &[1.0, 2.0, 3.0], &w, tol()).unwrap();
        assert_relative_eq!(r.min_gap, 10.0 / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn jensen_on_a_constant_sample_isolates_f_at_zero() {
        // All corrections hit f(|c - c|) = f(0), so the gap is -f(0).
        let f = lookup("lp_root:2").unwrap();
        let w = ConvexWeights::equal(3);
        let r = jensen_superquadratic(&f, &[1.0, 1.0, 1.0], &w, tol()).unwrap();
        assert_relative_eq!(r.min_gap, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn jensen_rejects_mismatched_lengths() {
        let f = lookup("pow:2").unwrap();
        let w = ConvexWeights::equal(3);
        let res = jensen_superquadratic(&f, &[1.0, 2.0], &w, tol());
        assert!(matches!(res, Err(Error::Weight(_))));
    }

    #[test]
    fn modulus_jensen_examples() {
        let f = lookup("two_pow:2").unwrap();
        let m = ErrorOrModulus::power(2.0, 2.0, 10.0);
        let w = ConvexWeights::new(vec![0.5, 0.5]).unwrap();
        let r = jensen_uniform(&f, &m, &[1.0, 3.0], &w, tol()).unwrap();
        assert_eq!(r.min_gap, 0.0);

        let f = lookup("pow:3").unwrap();
        let m = ErrorOrModulus::power(1.0, 3.0, 10.0);
        let r = jensen_uniform(&f, &m, &[1.0, 2.0, 3.0], &ConvexWeights::equal(3), tol()).unwrap();
        assert!(r.passed);
        assert_relative_eq!(r.min_gap, 10.0 / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn error_jensen_matches_the_expected_slack() {
        let f = lookup("neg_pow:1.5").unwrap();
        let phi = ErrorOrModulus::power(1.0, 1.5, 10.0);
        let w = ConvexWeights::new(vec![0.5, 0.5]).unwrap();
        let r = jensen_phi(&f, &phi, &[1.0, 4.0], &w, tol()).unwrap();
        assert!(r.passed);
        assert_relative_eq!(r.min_gap, 1.2899643822978581, max_relative = 1e-12);
    }

    #[test]
    fn external_jensen_examples() {
        let w = ExternalWeights::new(vec![-1.0, 2.0]).unwrap();
        let r = external_jensen_superquadratic(&lookup("pow:2").unwrap(), &[1.0, 2.0], &w, tol())
            .unwrap();
        assert_eq!(r.min_gap, 0.0);
        assert!(r.note.is_none());

        let r = external_jensen_superquadratic(&lookup("pow:3").unwrap(), &[1.0, 2.0], &w, tol())
            .unwrap();
        assert_eq!(r.min_gap, 10.0);
    }

    #[test]
    fn degenerate_external_weights_isolate_f_at_zero() {
        let w = ExternalWeights::new(vec![0.0, 1.0]).unwrap();
        let f = lookup("lp_root:2").unwrap();
        let r = external_jensen_superquadratic(&f, &[2.0, 3.0], &w, tol()).unwrap();
        assert_relative_eq!(r.min_gap, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn non_affine_external_weights_are_flagged() {
        let w = ExternalWeights::new(vec![-2.0, 2.0]).unwrap();
        let f = lookup("pow:3").unwrap();
        let r = external_jensen_superquadratic(&f, &[1.0, 2.0], &w, tol()).unwrap();
        assert!(r.note.as_deref().unwrap().contains("affine"));
    }

    #[test]
    fn two_point_external_form_in_both_regimes() {
        let f = lookup("pow:2").unwrap();
        let r = external_jensen_n2(&f, 1.0, 2.0, 2.0, tol()).unwrap();
        assert_eq!(r.min_gap, 0.0);
        let r = external_jensen_n2(&lookup("pow:3").unwrap(), 1.0, 2.0, 2.0, tol()).unwrap();
        assert_eq!(r.min_gap, 10.0);
        let r = external_jensen_n2(&f, 2.0, 1.0, -1.0, tol()).unwrap();
        assert_eq!(r.min_gap, 0.0);
        assert!(r.note.is_some());
        assert!(matches!(
            external_jensen_n2(&f, 1.0, 2.0, 0.5, tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn two_point_form_agrees_with_the_general_form() {
        let f = lookup("pow:3").unwrap();
        for nu in [1.5, 2.0, 2.5, 4.0] {
            let direct = external_jensen_n2(&f, 1.0, 2.5, nu, tol()).unwrap();
            let w = ExternalWeights::new(vec![1.0 - nu, nu]).unwrap();
            let general = external_jensen_superquadratic(&f, &[1.0, 2.5], &w, tol()).unwrap();
            assert_relative_eq!(direct.min_gap, general.min_gap, max_relative = 1e-12);
        }
    }

    #[test]
    fn external_error_form_examples() {
        let phi = ErrorOrModulus::power(1.0, 1.5, 10.0);
        let w = ExternalWeights::new(vec![-1.0, 2.0]).unwrap();
        let f = lookup("neg_pow:1.5").unwrap();
        let r = external_jensen_phi(&f, &phi, &[1.0, 2.0], &w, tol()).unwrap();
        assert!(r.passed);
        assert_relative_eq!(r.min_gap, 1.460701826785749, max_relative = 1e-12);

        let sq = ErrorOrModulus::power(1.0, 2.0, 10.0);
        let f = lookup("neg_pow:2").unwrap();
        let r = external_jensen_phi(&f, &sq, &[1.0, 2.0], &w, tol()).unwrap();
        assert!(r.min_gap.abs() <= 1e-12);
    }

    #[test]
    fn external_error_two_point_wrapper_delegates() {
        let phi = ErrorOrModulus::power(1.0, 1.5, 10.0);
        let f = lookup("neg_pow:1.5").unwrap();
        let direct = external_jensen_phi_n2(&f, &phi, 1.0, 2.0, 2.0, tol()).unwrap();
        assert_relative_eq!(direct.min_gap, 1.460701826785749, max_relative = 1e-12);
        assert!(matches!(
            external_jensen_phi_n2(&f, &phi, 1.0, 2.0, 0.5, tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn external_modulus_form_two_points() {
        let f = lookup("two_pow:2").unwrap();
        let m = ErrorOrModulus::power(2.0, 2.0, 10.0);
        let w = ExternalWeights::new(vec![-1.0, 2.0]).unwrap();
        let r = external_jensen_uniform(&f, &m, &[1.0, 2.0], &w, tol()).unwrap();
        assert_eq!(r.min_gap, 0.0);

        let f = lookup("pow:4").unwrap();
        let m = ErrorOrModulus::power(1.0, 4.0, 10.0);
        let r = external_jensen_uniform(&f, &m, &[1.0, 2.0], &w, tol()).unwrap();
        assert_eq!(r.min_gap, 42.0);

        let r = external_jensen_uniform(&f, &m, &[2.0, 2.0], &w, tol()).unwrap();
        assert_eq!(r.min_gap, 0.0);
    }

    #[test]
    fn external_modulus_form_general_n() {
        let f = lookup("pow:4").unwrap();
        let m = ErrorOrModulus::power(1.0, 4.0, 10.0);
        let w = ExternalWeights::new(vec![-1.0, -1.0, 3.0]).unwrap();
        let r = external_jensen_uniform(&f, &m, &[1.0, 2.0, 3.0], &w, tol()).unwrap();
        assert_eq!(r.min_gap, 972.0);
    }

    #[test]
    fn external_modulus_form_guards_its_domain() {
        let f = lookup("two_pow:2").unwrap();
        let m = ErrorOrModulus::power(2.0, 2.0, 1.0);
        let w = ExternalWeights::new(vec![-1.0, 2.0]).unwrap();
        // nu2*|x2-x1| = 2 exceeds the modulus domain [0, 1].
        let res = external_jensen_uniform(&f, &m, &[1.0, 2.0], &w, tol());
        assert!(matches!(res, Err(Error::Precondition(_))));
    }
}
