//! Scalar functions on `[0, b]` or `[0, inf)` together with the convexity
//! certificates they claim and the companion error/modulus functions those
//! claims need.
//!
//! A `ScalarFn` is immutable after construction and every operation on it is
//! pure, so values can be shared freely across threads.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Shared evaluation rule. Rules are total on the declared domain; domain
/// checks happen in [`ScalarFn::evaluate`], not inside the rule.
pub type EvalRule = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Convexity classes a function can claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertKind {
    Superquadratic,
    Subquadratic,
    Convex,
    PhiConvex,
    UniformlyConvex,
    StronglyConvex,
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertKind::Superquadratic => "superquadratic",
            CertKind::Subquadratic => "subquadratic",
            CertKind::Convex => "convex",
            CertKind::PhiConvex => "phi-convex",
            CertKind::UniformlyConvex => "uniformly-convex",
            CertKind::StronglyConvex => "strongly-convex",
        };
        f.write_str(s)
    }
}

/// A claimed convexity class. Phi-convex and uniformly convex claims always
/// carry their companion function; strongly convex claims fix the companion
/// to `m*x^p` and remember `(m, p)`. A certificate may pin the interval on
/// which the claim is meant to be checked; otherwise the owning function's
/// test interval applies.
#[derive(Clone)]
pub struct ClassCertificate {
    kind: CertKind,
    companion: Option<ErrorOrModulus>,
    strong_params: Option<(f64, f64)>,
    check_interval: Option<Interval>,
}

impl ClassCertificate {
    pub fn superquadratic() -> Self {
        Self::bare(CertKind::Superquadratic)
    }

    pub fn subquadratic() -> Self {
        Self::bare(CertKind::Subquadratic)
    }

    pub fn convex() -> Self {
        Self::bare(CertKind::Convex)
    }

    fn bare(kind: CertKind) -> Self {
        Self {
            kind,
            companion: None,
            strong_params: None,
            check_interval: None,
        }
    }

    pub fn phi_convex(companion: ErrorOrModulus) -> Self {
        Self {
            kind: CertKind::PhiConvex,
            companion: Some(companion),
            strong_params: None,
            check_interval: None,
        }
    }

    pub fn uniformly_convex(modulus: ErrorOrModulus) -> Self {
        Self {
            kind: CertKind::UniformlyConvex,
            companion: Some(modulus),
            strong_params: None,
            check_interval: None,
        }
    }

    /// Strong convexity with modulus `m*x^p` on `[0, len]`. Requires
    /// `m > 0` and `p >= 2`.
    pub fn strongly_convex(m: f64, p: f64, len: f64) -> Self {
        assert!(m > 0.0 && p >= 2.0, "strong convexity needs m > 0, p >= 2");
        Self {
            kind: CertKind::StronglyConvex,
            companion: Some(ErrorOrModulus::power(m, p, len)),
            strong_params: Some((m, p)),
            check_interval: None,
        }
    }

    /// Restrict the claim to a specific subinterval of the function's domain.
    pub fn on_interval(mut self, iv: Interval) -> Self {
        self.check_interval = Some(iv);
        self
    }

    pub fn kind(&self) -> CertKind {
        self.kind
    }

    pub fn companion(&self) -> Option<&ErrorOrModulus> {
        self.companion.as_ref()
    }

    pub fn strong_params(&self) -> Option<(f64, f64)> {
        self.strong_params
    }

    pub fn check_interval(&self) -> Option<Interval> {
        self.check_interval
    }
}

impl fmt::Debug for ClassCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("ClassCertificate");
        d.field("kind", &self.kind);
        if let Some(c) = &self.companion {
            d.field("companion", &c.id());
        }
        if let Some(p) = self.strong_params {
            d.field("strong_params", &p);
        }
        if let Some(iv) = self.check_interval {
            d.field("check_interval", &iv);
        }
        d.finish()
    }
}

/// A scalar function with an explicit domain, an optional analytic
/// derivative, an optional canonical support-slope rule `x -> C_x` used by
/// the superquadratic checkers, and the certificates it claims.
#[derive(Clone)]
pub struct ScalarFn {
    id: String,
    domain: Interval,
    test_interval: Interval,
    eval: EvalRule,
    derivative: Option<EvalRule>,
    c_rule: Option<EvalRule>,
    certificates: Vec<ClassCertificate>,
}

impl ScalarFn {
    /// New function on `domain` (which must start at a nonnegative point).
    /// The default test interval is the domain clipped to length 10.
    pub fn new(
        id: impl Into<String>,
        domain: Interval,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        assert!(domain.lo() >= 0.0, "domains start at a nonnegative point");
        let hi = domain.hi().min(domain.lo() + 10.0);
        Self {
            id: id.into(),
            domain,
            test_interval: Interval::new(domain.lo(), hi),
            eval: Arc::new(eval),
            derivative: None,
            c_rule: None,
            certificates: Vec::new(),
        }
    }

    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// Canonical `C_x` witness for the superquadratic inequality, for
    /// functions where the derivative blows up somewhere (typically at 0).
    pub fn with_c_rule(mut self, c: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.c_rule = Some(Arc::new(c));
        self
    }

    pub fn with_test_interval(mut self, iv: Interval) -> Self {
        assert!(
            iv.is_bounded() && self.domain.contains_interval(&iv),
            "test interval must be a bounded subset of the domain"
        );
        self.test_interval = iv;
        self
    }

    pub fn with_certificate(mut self, cert: ClassCertificate) -> Self {
        self.certificates.push(cert);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Bounded interval used by grid checks and randomized verification.
    pub fn test_interval(&self) -> Interval {
        self.test_interval
    }

    pub fn certificates(&self) -> &[ClassCertificate] {
        &self.certificates
    }

    pub fn certificate(&self, kind: CertKind) -> Option<&ClassCertificate> {
        self.certificates.iter().find(|c| c.kind() == kind)
    }

    pub fn has_certificate(&self, kind: CertKind) -> bool {
        self.certificate(kind).is_some()
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// Evaluate with domain and finiteness checks.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::Domain {
                id: self.id.clone(),
                x,
                lo: self.domain.lo(),
                hi: self.domain.hi(),
            });
        }
        let v = (self.eval)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                id: self.id.clone(),
                x,
            })
        }
    }

    /// Rule value without the domain check, for hot loops that validated
    /// their arguments up front. Finiteness is still the caller's problem.
    pub(crate) fn raw(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Derivative strictly inside the domain: the analytic rule when present,
    /// otherwise a central difference with step `max(1e-6, 1e-6*|x|)`
    /// (second-order accurate).
    pub fn derivative_at(&self, x: f64) -> Result<f64> {
        if x <= self.domain.lo() || x >= self.domain.hi() {
            return Err(Error::Domain {
                id: self.id.clone(),
                x,
                lo: self.domain.lo(),
                hi: self.domain.hi(),
            });
        }
        let v = match &self.derivative {
            Some(d) => d(x),
            None => {
                let h = self.fd_step(x);
                ((self.eval)(x + h) - (self.eval)(x - h)) / (2.0 * h)
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                id: format!("{}'", self.id),
                x,
            })
        }
    }

    fn fd_step(&self, x: f64) -> f64 {
        let h = 1e-6f64.max(1e-6 * x.abs());
        // Shrink near a boundary so both stencil points stay in-domain.
        let room = (x - self.domain.lo()).min(self.domain.hi() - x);
        if room < h {
            0.5 * room
        } else {
            h
        }
    }

    /// Support slope `C_x` used by the superquadratic/subquadratic checkers:
    /// the registered `c_rule` if any, else the analytic derivative (valid at
    /// domain endpoints too), else a finite difference that falls back to a
    /// one-sided second-order stencil at the boundary.
    pub(crate) fn support_slope(&self, x: f64) -> Result<f64> {
        let v = if let Some(c) = &self.c_rule {
            c(x)
        } else if let Some(d) = &self.derivative {
            d(x)
        } else {
            let h = 1e-6f64.max(1e-6 * x.abs());
            let f = |t: f64| (self.eval)(t);
            if x - h >= self.domain.lo() && x + h <= self.domain.hi() {
                (f(x + h) - f(x - h)) / (2.0 * h)
            } else if x + 2.0 * h <= self.domain.hi() {
                (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)
            } else if x - 2.0 * h >= self.domain.lo() {
                (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)
            } else {
                return Err(Error::Precondition(format!(
                    "domain of `{}` too short for a difference stencil at {x}",
                    self.id
                )));
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                id: format!("C_x[{}]", self.id),
                x,
            })
        }
    }
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFn")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("test_interval", &self.test_interval)
            .field("certificates", &self.certificates)
            .finish()
    }
}

/// Declared properties of an error/modulus function; each set flag is
/// validated on a sample grid at construction time.
#[derive(Debug, Clone, Copy, Default)]
pub struct ErrorFnFlags {
    pub nonnegative: bool,
    pub has_gamma: bool,
    pub is_convex: bool,
    pub vanishes_at_zero: bool,
}

/// A nonnegative-error or convexity-modulus function on `[0, L]`. These are
/// the `phi` of phi-convexity and the `Phi` of uniform convexity.
#[derive(Clone)]
pub struct ErrorOrModulus {
    f: ScalarFn,
    flags: ErrorFnFlags,
}

const FLAG_SAMPLE_POINTS: usize = 129;

impl ErrorOrModulus {
    /// Wrap `f` (which must live on a bounded `[0, L]`) and validate the
    /// declared flags on a sample grid.
    pub fn new(f: ScalarFn, flags: ErrorFnFlags) -> Result<Self> {
        if f.domain().lo() != 0.0 || !f.domain().is_bounded() {
            return Err(Error::Precondition(format!(
                "error/modulus `{}` must live on a bounded [0, L], got {}",
                f.id(),
                f.domain()
            )));
        }
        if flags.nonnegative {
            for x in f.domain().uniform_points(FLAG_SAMPLE_POINTS) {
                let v = f.evaluate(x)?;
                if v < -1e-12 {
                    return Err(Error::Precondition(format!(
                        "`{}` flagged nonnegative but f({x}) = {v}",
                        f.id()
                    )));
                }
            }
        }
        if flags.vanishes_at_zero {
            let v = f.evaluate(0.0)?;
            if v != 0.0 {
                return Err(Error::Precondition(format!(
                    "`{}` flagged as vanishing at zero but f(0) = {v}",
                    f.id()
                )));
            }
        }
        Ok(Self { f, flags })
    }

    /// `coeff * x^p` on `[0, len]` with its known properties filled in:
    /// it has the growth-bounded overshoot property exactly for `0 <= p <= 2`
    /// and is convex for `p >= 1`.
    pub fn power(coeff: f64, p: f64, len: f64) -> Self {
        assert!(coeff >= 0.0 && p >= 0.0 && len > 0.0);
        let id = if coeff == 1.0 {
            format!("x^{p}")
        } else {
            format!("{coeff}*x^{p}")
        };
        let f = ScalarFn::new(id, Interval::new(0.0, len), move |x| coeff * powx(x, p));
        let df = move |x: f64| {
            if p == 0.0 {
                0.0
            } else if x == 0.0 {
                if p == 1.0 {
                    coeff
                } else {
                    0.0
                }
            } else {
                coeff * p * powx(x, p - 1.0)
            }
        };
        let f = f.with_derivative(df);
        let flags = ErrorFnFlags {
            nonnegative: true,
            has_gamma: p <= 2.0,
            is_convex: p >= 1.0,
            vanishes_at_zero: p > 0.0,
        };
        Self::new(f, flags).expect("power modulus is always well-formed")
    }

    /// The zero modulus on `[0, len]`; turns uniform convexity into plain
    /// convexity.
    pub fn zero(len: f64) -> Self {
        let f = ScalarFn::new("0", Interval::new(0.0, len), |_| 0.0).with_derivative(|_| 0.0);
        let flags = ErrorFnFlags {
            nonnegative: true,
            has_gamma: true,
            is_convex: true,
            vanishes_at_zero: true,
        };
        Self::new(f, flags).expect("zero modulus is always well-formed")
    }

    /// `phi = -f` restricted to `[0, len]`. The natural companion of a
    /// nonpositive superquadratic function; such a negation always satisfies
    /// the growth-bounded overshoot property, so the flag is inherited from
    /// the source's superquadratic certificate. Fails if `-f` is not
    /// nonnegative on the sample grid.
    pub fn negation_of(src: &ScalarFn, len: f64) -> Result<Self> {
        if !src.domain().contains_interval(&Interval::new(0.0, len)) {
            return Err(Error::Precondition(format!(
                "cannot restrict `{}` to [0, {len}]: outside its domain",
                src.id()
            )));
        }
        let inner = src.clone();
        let f = ScalarFn::new(
            format!("-({})", src.id()),
            Interval::new(0.0, len),
            move |x| -inner.raw(x),
        );
        let f = if let Some(d) = src.derivative.clone() {
            f.with_derivative(move |x| -d(x))
        } else {
            f
        };
        let has_gamma = src.has_certificate(CertKind::Superquadratic);
        let vanishes = src.evaluate(0.0).map(|v| v == 0.0).unwrap_or(false);
        Self::new(
            f,
            ErrorFnFlags {
                nonnegative: true,
                has_gamma,
                is_convex: false,
                vanishes_at_zero: vanishes,
            },
        )
    }

    /// Arbitrary rule on `[0, len]` with caller-declared flags.
    pub fn from_rule(
        id: impl Into<String>,
        len: f64,
        rule: impl Fn(f64) -> f64 + Send + Sync + 'static,
        flags: ErrorFnFlags,
    ) -> Result<Self> {
        Self::new(ScalarFn::new(id, Interval::new(0.0, len), rule), flags)
    }

    pub fn id(&self) -> &str {
        self.f.id()
    }

    /// Upper end `L` of the `[0, L]` domain.
    pub fn length(&self) -> f64 {
        self.f.domain().hi()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.f.evaluate(x)
    }

    pub fn scalar_fn(&self) -> &ScalarFn {
        &self.f
    }

    pub fn nonnegative(&self) -> bool {
        self.flags.nonnegative
    }

    /// Whether the overshoot bound `phi(x+y) <= phi(x) + phi(y) + 2(x/y)phi(y)`
    /// has been verified for this function.
    pub fn has_gamma(&self) -> bool {
        self.flags.has_gamma
    }

    pub fn is_convex(&self) -> bool {
        self.flags.is_convex
    }

    pub fn vanishes_at_zero(&self) -> bool {
        self.flags.vanishes_at_zero
    }
}

impl fmt::Debug for ErrorOrModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ErrorOrModulus")
            .field("id", &self.f.id())
            .field("domain", &self.f.domain())
            .field("flags", &self.flags)
            .finish()
    }
}

/// `x^p` for `x >= 0`, routed through `powi` for integer exponents so that
/// small integer powers are exact.
pub(crate) fn powx(x: f64, p: f64) -> f64 {
    if p == p.trunc() && p.abs() <= 64.0 {
        x.powi(p as i32)
    } else {
        x.powf(p)
    }
}
