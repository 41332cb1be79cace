//! Registry of the stock functions exercised throughout the crate.
//!
//! Ids are parsed, not listed: `pow:<p>`, `neg_pow:<p>`, `lp_root:<p>`,
//! `two_pow:<n>`, `x_shift_even:<n>`, `x_shift_odd:<n>` accept a numeric
//! parameter, the rest are fixed. Each entry fixes a bounded test interval
//! (default `[0, 10]`) used by grid checks and randomized verification, and
//! carries the convexity certificates it is known to satisfy; the classifier
//! re-verifies those claims, so a registered certificate failing its own
//! check is a bug, not an input error.

use crate::error::{Error, Result};
use crate::function::{powx, ClassCertificate, ErrorOrModulus, ScalarFn};
use crate::interval::Interval;

const HALF_LINE: f64 = f64::INFINITY;

/// Look up a catalog id, e.g. `"pow:2.5"` or `"xsq_ln"`.
pub fn lookup(id: &str) -> Result<ScalarFn> {
    let unknown = || Error::UnknownFunction(id.to_string());
    let (family, param) = match id.split_once(':') {
        Some((f, p)) => (f, Some(p)),
        None => (id, None),
    };
    let num = |p: Option<&str>| -> Result<f64> {
        p.and_then(|s| s.parse::<f64>().ok())
            .filter(|v| v.is_finite())
            .ok_or_else(unknown)
    };
    let int = |p: Option<&str>| -> Result<u32> {
        p.and_then(|s| s.parse::<u32>().ok()).ok_or_else(unknown)
    };
    match family {
        "pow" => {
            let p = num(param)?;
            if p < 0.0 {
                return Err(unknown());
            }
            Ok(pow_fn(id, p))
        }
        "neg_pow" => {
            let p = num(param)?;
            if p < 0.0 {
                return Err(unknown());
            }
            Ok(neg_pow_fn(id, p))
        }
        "lp_root" => {
            let p = num(param)?;
            if p <= 0.0 {
                return Err(unknown());
            }
            Ok(lp_root_fn(id, p))
        }
        "two_pow" => {
            let n = int(param)?;
            if n < 2 {
                return Err(unknown());
            }
            Ok(two_pow_fn(id, n))
        }
        "x_shift_even" => {
            let n = int(param)?;
            if n < 1 {
                return Err(unknown());
            }
            Ok(x_shift_even_fn(id, n))
        }
        "x_shift_odd" => {
            let n = int(param)?;
            if n < 1 {
                return Err(unknown());
            }
            Ok(x_shift_odd_fn(id, n))
        }
        "xsq_ln" if param.is_none() => Ok(xsq_ln_fn()),
        "atan_neg" if param.is_none() => Ok(atan_neg_fn()),
        "cipu_int" if param.is_none() => Ok(cipu_int_fn()),
        "xsqrt_neglog" if param.is_none() => Ok(xsqrt_neglog_fn()),
        _ => Err(unknown()),
    }
}

/// One row of the human-readable catalog listing.
#[derive(Debug, Clone)]
pub struct CatalogLine {
    pub id: &'static str,
    pub formula: &'static str,
    pub domain: &'static str,
    pub certificates: &'static str,
}

/// Family summaries in lexicographic id order, for the `catalog` command.
pub fn listing() -> Vec<CatalogLine> {
    let line = |id, formula, domain, certificates| CatalogLine {
        id,
        formula,
        domain,
        certificates,
    };
    vec![
        line(
            "atan_neg",
            "ln(1+x^2)/2 - x*atan(x)",
            "[0, inf), test [0, 10]",
            "superquadratic; phi-convex with phi = -f",
        ),
        line(
            "cipu_int",
            "x*sqrt(x^2+1)/2 - 2*sqrt(x^2+1) - ln(x+sqrt(x^2+1))/2 + 2",
            "[0, inf), test [0, 10]",
            "superquadratic; phi-convex with phi = -f on [0, 1]",
        ),
        line(
            "lp_root:<p>",
            "-(1+x^p)^(1/p), any p > 0",
            "[0, inf), test [0, 10]",
            "superquadratic; phi-convex with phi = -f",
        ),
        line(
            "neg_pow:<p>",
            "-x^p, p >= 0",
            "[0, inf), test [0, 10]",
            "superquadratic and phi-convex with phi = x^p for p <= 2; subquadratic for p >= 2",
        ),
        line(
            "pow:<p>",
            "x^p, p >= 0",
            "[0, inf), test [0, 10]",
            "superquadratic for p >= 2; subquadratic for p <= 2; convex for p >= 1; \
             uniformly convex with modulus x^n and strongly convex (m=1) for integer n >= 2",
        ),
        line(
            "two_pow:<n>",
            "2*x^n, integer n >= 2",
            "[0, inf), test [1, 2]",
            "uniformly convex with modulus x^n*(3x-x^3) on [0, 1] over [1, 2]; \
             strongly convex with modulus 2*x^n",
        ),
        line(
            "x_shift_even:<n>",
            "x*(x-1)^(2n), integer n >= 1",
            "[0, inf), test [0, 10]",
            "phi-convex with phi = 2n*x^2",
        ),
        line(
            "x_shift_odd:<n>",
            "x*(x-1)^(2n+1), integer n >= 1",
            "[0, inf), test [2, 10]",
            "strongly convex with modulus (2n+1)*x^2 on [2, 10]",
        ),
        line(
            "xsq_ln",
            "x^2*ln(x), extended by 0 at x = 0",
            "[0, inf), test [0, 1]",
            "superquadratic; phi-convex with phi = -f on [0, 1]",
        ),
        line(
            "xsqrt_neglog",
            "-x*sqrt(-ln(x)), extended by 0 at x = 0",
            "[0, 1/e]",
            "superquadratic; phi-convex with phi = -f",
        ),
    ]
}

fn pow_fn(id: &str, p: f64) -> ScalarFn {
    let domain = Interval::new(0.0, HALF_LINE);
    let mut f = ScalarFn::new(id, domain, move |x| powx(x, p))
        .with_derivative(move |x| pow_deriv(1.0, p, x))
        .with_c_rule(move |x| pow_slope(1.0, p, x));
    if p >= 2.0 {
        f = f.with_certificate(ClassCertificate::superquadratic());
    }
    if p <= 2.0 {
        f = f.with_certificate(ClassCertificate::subquadratic());
    }
    if p >= 1.0 {
        f = f.with_certificate(ClassCertificate::convex());
    }
    if p >= 2.0 && p == p.trunc() {
        let len = f.test_interval().length();
        f = f
            .with_certificate(ClassCertificate::uniformly_convex(ErrorOrModulus::power(
                1.0, p, len,
            )))
            .with_certificate(ClassCertificate::strongly_convex(1.0, p, len));
    }
    f
}

fn neg_pow_fn(id: &str, p: f64) -> ScalarFn {
    let domain = Interval::new(0.0, HALF_LINE);
    let mut f = ScalarFn::new(id, domain, move |x| -powx(x, p))
        .with_derivative(move |x| pow_deriv(-1.0, p, x))
        .with_c_rule(move |x| pow_slope(-1.0, p, x));
    if p <= 2.0 {
        let len = f.test_interval().length();
        f = f
            .with_certificate(ClassCertificate::superquadratic())
            .with_certificate(ClassCertificate::phi_convex(ErrorOrModulus::power(
                1.0, p, len,
            )));
    }
    if p >= 2.0 {
        f = f.with_certificate(ClassCertificate::subquadratic());
    }
    f
}

fn pow_deriv(sign: f64, p: f64, x: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else if x == 0.0 && p == 1.0 {
        sign
    } else {
        sign * p * powx(x, p - 1.0)
    }
}

/// Support slope for the power families. At `x = 0` the derivative blows up
/// for `p < 1`; zero is a valid slope there, since `x^p >= 0` vanishes at 0.
fn pow_slope(sign: f64, p: f64, x: f64) -> f64 {
    if x == 0.0 && p < 1.0 {
        0.0
    } else {
        pow_deriv(sign, p, x)
    }
}

fn xsq_ln_fn() -> ScalarFn {
    let f = ScalarFn::new("xsq_ln", Interval::new(0.0, HALF_LINE), |x| {
        if x == 0.0 {
            0.0
        } else {
            x * x * x.ln()
        }
    })
    .with_derivative(|x| if x == 0.0 { 0.0 } else { 2.0 * x * x.ln() + x })
    .with_test_interval(Interval::new(0.0, 1.0))
    .with_certificate(ClassCertificate::superquadratic());
    let phi = ErrorOrModulus::negation_of(&f, 1.0).expect("-x^2 ln x >= 0 on [0, 1]");
    f.with_certificate(ClassCertificate::phi_convex(phi).on_interval(Interval::new(0.0, 1.0)))
}

fn lp_root_fn(id: &str, p: f64) -> ScalarFn {
    let f = ScalarFn::new(id, Interval::new(0.0, HALF_LINE), move |x| {
        -(1.0 + powx(x, p)).powf(1.0 / p)
    })
    .with_derivative(move |x| {
        if x == 0.0 {
            if p > 1.0 {
                0.0
            } else if p == 1.0 {
                -1.0
            } else {
                f64::NEG_INFINITY
            }
        } else {
            -powx(x, p - 1.0) * (1.0 + powx(x, p)).powf((1.0 - p) / p)
        }
    })
    .with_c_rule(move |x| {
        if x == 0.0 {
            // Zero is a valid slope at 0 even when p < 1 and the true
            // derivative diverges, because f(0) = -1 < 0 absorbs the error.
            if p == 1.0 {
                -1.0
            } else {
                0.0
            }
        } else {
            -powx(x, p - 1.0) * (1.0 + powx(x, p)).powf((1.0 - p) / p)
        }
    })
    .with_certificate(ClassCertificate::superquadratic());
    let len = f.test_interval().length();
    let phi = ErrorOrModulus::negation_of(&f, len).expect("(1+x^p)^(1/p) > 0");
    f.with_certificate(ClassCertificate::phi_convex(phi))
}

fn atan_neg_fn() -> ScalarFn {
    let f = ScalarFn::new("atan_neg", Interval::new(0.0, HALF_LINE), |x| {
        0.5 * x.mul_add(x, 1.0).ln() - x * x.atan()
    })
    .with_derivative(|x| -x.atan())
    .with_certificate(ClassCertificate::superquadratic());
    let len = f.test_interval().length();
    let phi = ErrorOrModulus::negation_of(&f, len).expect("x atan x - ln(1+x^2)/2 >= 0");
    f.with_certificate(ClassCertificate::phi_convex(phi))
}

fn cipu_int_fn() -> ScalarFn {
    let f = ScalarFn::new("cipu_int", Interval::new(0.0, HALF_LINE), |x| {
        let s = x.mul_add(x, 1.0).sqrt();
        0.5 * x * s - 2.0 * s - 0.5 * (x + s).ln() + 2.0
    })
    .with_derivative(|x| x * (x - 2.0) / x.mul_add(x, 1.0).sqrt())
    .with_certificate(ClassCertificate::superquadratic());
    // f stays nonpositive well past 1, so -f is a valid error function on
    // [0, 1] and the phi-convexity claim holds on unit subintervals.
    let phi = ErrorOrModulus::negation_of(&f, 1.0).expect("-f >= 0 on [0, 1]");
    f.with_certificate(ClassCertificate::phi_convex(phi).on_interval(Interval::new(0.0, 1.0)))
}

fn two_pow_fn(id: &str, n: u32) -> ScalarFn {
    let p = f64::from(n);
    let f = ScalarFn::new(id, Interval::new(0.0, HALF_LINE), move |x| 2.0 * powx(x, p))
        .with_derivative(move |x| 2.0 * p * powx(x, p - 1.0))
        .with_test_interval(Interval::new(1.0, 2.0));
    let modulus = ErrorOrModulus::from_rule(
        format!("x^{n}*(3x-x^3)"),
        1.0,
        move |x| powx(x, p) * (3.0 - x * x) * x,
        crate::function::ErrorFnFlags {
            nonnegative: true,
            has_gamma: false,
            is_convex: false,
            vanishes_at_zero: true,
        },
    )
    .expect("x^n(3x-x^3) >= 0 on [0, 1]");
    f.with_certificate(
        ClassCertificate::uniformly_convex(modulus).on_interval(Interval::new(1.0, 2.0)),
    )
    .with_certificate(ClassCertificate::strongly_convex(2.0, p, 1.0))
}

fn x_shift_even_fn(id: &str, n: u32) -> ScalarFn {
    let k = 2 * n as i32;
    let f = ScalarFn::new(id, Interval::new(0.0, HALF_LINE), move |x| {
        x * (x - 1.0).powi(k)
    })
    .with_derivative(move |x| (x - 1.0).powi(k) + f64::from(k) * x * (x - 1.0).powi(k - 1));
    let len = f.test_interval().length();
    f.with_certificate(ClassCertificate::phi_convex(ErrorOrModulus::power(
        f64::from(k),
        2.0,
        len,
    )))
}

fn x_shift_odd_fn(id: &str, n: u32) -> ScalarFn {
    let k = 2 * n as i32 + 1;
    // The (2n+1)x^2 modulus fails near the flat spot at x = 1; it is valid
    // once the inner factor's slope clears 2n+1, i.e. from x = 2 on.
    let f = ScalarFn::new(id, Interval::new(0.0, HALF_LINE), move |x| {
        x * (x - 1.0).powi(k)
    })
    .with_derivative(move |x| (x - 1.0).powi(k) + f64::from(k) * x * (x - 1.0).powi(k - 1))
    .with_test_interval(Interval::new(2.0, 10.0));
    let len = f.test_interval().length();
    f.with_certificate(ClassCertificate::strongly_convex(f64::from(k), 2.0, len))
}

fn xsqrt_neglog_fn() -> ScalarFn {
    let domain = Interval::new(0.0, (-1.0f64).exp());
    let f = ScalarFn::new("xsqrt_neglog", domain, |x| {
        if x == 0.0 {
            0.0
        } else {
            -x * (-x.ln()).sqrt()
        }
    })
    .with_derivative(|x| {
        if x == 0.0 {
            f64::NEG_INFINITY
        } else {
            let s = (-x.ln()).sqrt();
            0.5 / s - s
        }
    })
    // The derivative diverges at 0, but zero is a global support slope: for
    // nonpositive, non-increasing, superadditive f the defining inequality
    // holds with C_x = 0 everywhere.
    .with_c_rule(|_| 0.0)
    .with_certificate(ClassCertificate::superquadratic());
    let len = f.domain().length();
    let phi = ErrorOrModulus::negation_of(&f, len).expect("x sqrt(-ln x) >= 0 on [0, 1/e]");
    f.with_certificate(ClassCertificate::phi_convex(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::CertKind;

    #[test]
    fn evaluate_catalog_samples() {
        assert_eq!(lookup("pow:2").unwrap().evaluate(3.0).unwrap(), 9.0);
        assert_eq!(lookup("xsq_ln").unwrap().evaluate(1.0).unwrap(), 0.0);
        assert_eq!(lookup("xsq_ln").unwrap().evaluate(0.0).unwrap(), 0.0);
        assert_eq!(lookup("cipu_int").unwrap().evaluate(0.0).unwrap(), 0.0);
        assert_eq!(lookup("two_pow:3").unwrap().evaluate(2.0).unwrap(), 16.0);
        let v = lookup("neg_pow:1.5").unwrap().evaluate(4.0).unwrap();
        assert!((v + 8.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_samples() {
        let d = lookup("pow:3").unwrap().derivative_at(2.0).unwrap();
        assert!((d - 12.0).abs() < 1e-12);
        let d = lookup("atan_neg").unwrap().derivative_at(1.0).unwrap();
        assert!((d + std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        let d = lookup("xsq_ln").unwrap().derivative_at(1.0).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lookup_rejects_unknown_ids() {
        for id in [
            "pow",
            "pow:",
            "pow:abc",
            "pow:-1",
            "nope",
            "two_pow:1",
            "lp_root:0",
            "xsq_ln:3",
            "x_shift_even:0",
        ] {
            assert!(
                matches!(lookup(id), Err(Error::UnknownFunction(_))),
                "id {id} should be rejected"
            );
        }
    }

    #[test]
    fn certificates_match_the_registry() {
        let f = lookup("pow:3").unwrap();
        assert!(f.has_certificate(CertKind::Superquadratic));
        assert!(f.has_certificate(CertKind::UniformlyConvex));
        assert!(f.has_certificate(CertKind::StronglyConvex));
        assert!(!f.has_certificate(CertKind::Subquadratic));

        let f = lookup("pow:1.5").unwrap();
        assert!(f.has_certificate(CertKind::Subquadratic));
        assert!(!f.has_certificate(CertKind::Superquadratic));

        let f = lookup("pow:2").unwrap();
        assert!(f.has_certificate(CertKind::Superquadratic));
        assert!(f.has_certificate(CertKind::Subquadratic));

        let f = lookup("neg_pow:1.5").unwrap();
        let cert = f.certificate(CertKind::PhiConvex).unwrap();
        let phi = cert.companion().unwrap();
        assert!((phi.eval(4.0).unwrap() - 8.0).abs() < 1e-12);

        let f = lookup("two_pow:4").unwrap();
        let cert = f.certificate(CertKind::UniformlyConvex).unwrap();
        let m = cert.companion().unwrap();
        assert_eq!(m.eval(1.0).unwrap(), 2.0);
        assert_eq!(
            f.certificate(CertKind::StronglyConvex)
                .unwrap()
                .strong_params(),
            Some((2.0, 4.0))
        );
    }

    #[test]
    fn test_intervals_follow_the_registry() {
        assert_eq!(
            lookup("xsq_ln").unwrap().test_interval(),
            Interval::new(0.0, 1.0)
        );
        assert_eq!(
            lookup("two_pow:2").unwrap().test_interval(),
            Interval::new(1.0, 2.0)
        );
        assert_eq!(
            lookup("x_shift_odd:1").unwrap().test_interval(),
            Interval::new(2.0, 10.0)
        );
        let iv = lookup("xsqrt_neglog").unwrap().test_interval();
        assert!((iv.hi() - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn listing_is_sorted_and_complete() {
        let lines = listing();
        assert_eq!(lines.len(), 10);
        assert!(lines.windows(2).all(|w| w[0].id < w[1].id));
        assert!(lines
            .iter()
            .any(|l| l.id == "lp_root:<p>" && l.formula.contains("p > 0")));
    }

    #[test]
    fn cipu_closed_form_matches_its_integrand() {
        // d/dx of the closed form is x(x-2)/sqrt(x^2+1); spot check by
        // comparing a central difference of evaluate against derivative_at.
        let f = lookup("cipu_int").unwrap();
        for &x in &[0.5, 1.0, 2.0, 3.0, 5.0] {
            let h = 1e-6;
            let fd = (f.evaluate(x + h).unwrap() - f.evaluate(x - h).unwrap()) / (2.0 * h);
            let an = f.derivative_at(x).unwrap();
            assert!((fd - an).abs() < 1e-8, "x={x}: {fd} vs {an}");
        }
    }

    #[test]
    fn analytic_and_difference_derivatives_agree_on_interior_grids() {
        // 100 interior points of each test interval, relative 1e-5.
        let ids = [
            "pow:2",
            "pow:2.5",
            "pow:3",
            "pow:4",
            "neg_pow:1.5",
            "xsq_ln",
            "lp_root:2",
            "atan_neg",
            "cipu_int",
            "two_pow:2",
            "two_pow:4",
            "x_shift_even:1",
            "x_shift_odd:1",
            "xsqrt_neglog",
        ];
        for id in ids {
            let f = lookup(id).unwrap();
            let iv = f.test_interval();
            for i in 0..100 {
                let x = iv.lo() + iv.length() * (i as f64 + 1.0) / 101.0;
                let an = f.derivative_at(x).unwrap();
                let h = 1e-6f64.max(1e-6 * x.abs());
                let fd = (f.evaluate(x + h).unwrap() - f.evaluate(x - h).unwrap()) / (2.0 * h);
                let tol = 1e-5 * an.abs().max(1.0);
                assert!(
                    (an - fd).abs() <= tol,
                    "{id} at x={x}: analytic {an} vs difference {fd}"
                );
            }
        }
    }
}
