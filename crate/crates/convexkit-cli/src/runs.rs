//! Command drivers: turn parsed arguments into library calls, fold the
//! per-trial reports, and assemble the JSON bundle. Everything here is
//! sequential and seeded, so a (command, config, input) triple always
//! produces the same bytes.

use std::fmt::Write as _;
use std::path::Path;

use convexkit::bounds::{
    cipu_bound, deviation_bound_modulus, deviation_bound_power, deviation_bound_strong,
    deviation_bound_submultiplicative, BoundReport, WeightedSample,
};
use convexkit::catalog::{listing, lookup};
use convexkit::classify::{
    check_gamma, check_minus_gamma, check_subadditive_consequences, check_subquadratic,
    check_superquadratic, verify_certificates,
};
use convexkit::function::{CertKind, ErrorFnFlags, ErrorOrModulus, ScalarFn};
use convexkit::hermite::{hh_phi, hh_superquadratic, hh_uniform};
use convexkit::interval::Interval;
use convexkit::jensen::{
    external_jensen_n2, external_jensen_phi, external_jensen_superquadratic,
    external_jensen_uniform, jensen_phi, jensen_superquadratic, jensen_uniform,
};
use convexkit::report::{merge_reports, GridSpec, InequalityReport, Tolerance};
use convexkit::weights::{ConvexWeights, ExternalWeights};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::json::Json;

/// Exit codes promised by the interface contract.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Per-trial generators give up after this many rejected draws; hitting the
/// cap means the requested combination has no valid configurations, which
/// is an input problem rather than a failed check.
const DRAW_CAP: usize = 400;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input that violates a documented invariant.
    Usage(String),
    /// Unreadable files and rows that do not parse.
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<convexkit::Error> for CliError {
    fn from(e: convexkit::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub grid_points: usize,
    pub tol: Tolerance,
    pub quad_tol: f64,
}

impl RunConfig {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn grid_on(&self, iv: Interval) -> GridSpec {
        GridSpec::new(iv)
            .with_points(self.grid_points)
            .with_tol(self.tol)
    }
}

pub enum Report {
    Ineq(InequalityReport),
    Bound(BoundReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Ineq(r) => r.passed,
            Report::Bound(r) => r.passed,
        }
    }

    pub fn human_line(&self) -> String {
        let mut line = match self {
            Report::Ineq(r) => format!(
                "{}: {} min_gap={:.6e} tolerance={:.3e} checks={} witness={:?}",
                r.name,
                if r.passed { "pass" } else { "FAIL" },
                r.min_gap,
                r.tolerance,
                r.checks_run,
                r.witness,
            ),
            Report::Bound(r) => format!(
                "{}: {} bound={:.9} actual={:.9} slack={:.6e}",
                r.name,
                if r.passed { "pass" } else { "FAIL" },
                r.bound_value,
                r.actual_value,
                r.slack,
            ),
        };
        let note = match self {
            Report::Ineq(r) => r.note.as_deref(),
            Report::Bound(r) => r.note.as_deref(),
        };
        if let Some(note) = note {
            let _ = write!(line, "\n  note: {note}");
        }
        line
    }

    fn to_json(&self) -> Json {
        let mut obj = Json::obj();
        match self {
            Report::Ineq(r) => {
                obj.push("name", Json::from(r.name.as_str()));
                obj.push("rule", Json::from(r.rule.as_str()));
                obj.push("passed", Json::Bool(r.passed));
                obj.push("checks_run", Json::from(r.checks_run));
                obj.push("min_gap", Json::from(r.min_gap));
                obj.push(
                    "witness",
                    Json::Arr(r.witness.iter().map(|&x| Json::from(x)).collect()),
                );
                obj.push("tolerance", Json::from(r.tolerance));
                obj.push("note", note_json(r.note.as_deref()));
            }
            Report::Bound(r) => {
                obj.push("name", Json::from(r.name.as_str()));
                obj.push("rule", Json::from(r.rule.as_str()));
                obj.push("passed", Json::Bool(r.passed));
                obj.push("bound_value", Json::from(r.bound_value));
                obj.push("actual_value", Json::from(r.actual_value));
                obj.push("slack", Json::from(r.slack));
                let mut inter = Json::obj();
                // BTreeMap iteration is key-sorted, hence stable.
                for (k, v) in &r.intermediates {
                    inter.push(k, Json::from(*v));
                }
                obj.push("intermediates", inter);
                obj.push("tolerance", Json::from(r.tolerance));
                obj.push("note", note_json(r.note.as_deref()));
            }
        }
        obj
    }
}

fn note_json(note: Option<&str>) -> Json {
    note.map_or(Json::Null, Json::from)
}

pub fn bundle(cfg: &RunConfig, reports: &[Report]) -> Json {
    let mut config = Json::obj();
    config.push("seed", Json::Int(cfg.seed));
    config.push("trials", Json::from(cfg.trials));
    config.push("grid_points", Json::from(cfg.grid_points));
    config.push("tolerance", Json::from(cfg.tol.atol));
    config.push("quad_tol", Json::from(cfg.quad_tol));

    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut summary = Json::obj();
    summary.push("passed", Json::from(passed));
    summary.push("failed", Json::from(reports.len() - passed));

    let mut root = Json::obj();
    root.push("version", Json::from(env!("CARGO_PKG_VERSION")));
    root.push("config", config);
    root.push(
        "reports",
        Json::Arr(reports.iter().map(Report::to_json).collect()),
    );
    root.push("summary", summary);
    root
}

pub fn catalog_text() -> String {
    let rows = listing();
    let id_w = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let formula_w = rows.iter().map(|r| r.formula.len()).max().unwrap_or(0);
    let domain_w = rows.iter().map(|r| r.domain.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(
            out,
            "{:id_w$}  {:formula_w$}  {:domain_w$}  {}",
            r.id, r.formula, r.domain, r.certificates
        );
    }
    out
}

pub fn cmd_classify(
    function: &str,
    forced: Option<&str>,
    cfg: &RunConfig,
) -> Result<Vec<Report>, CliError> {
    let f = lookup(function)?;
    let reports = match forced {
        None => verify_certificates(&f, cfg.grid_points, 16, cfg.tol)?,
        Some(check) => {
            let grid = cfg.grid_on(f.test_interval());
            let report = match check {
                "superquadratic" => check_superquadratic(&f, &grid, None)?,
                "subquadratic" => check_subquadratic(&f, &grid, None)?,
                other => {
                    return Err(usage(format!(
                        "unknown check `{other}`; --check takes superquadratic or subquadratic"
                    )))
                }
            };
            vec![report]
        }
    };
    if reports.is_empty() {
        return Err(usage(format!(
            "`{function}` carries no certificates to re-check"
        )));
    }
    Ok(reports.into_iter().map(Report::Ineq).collect())
}

/// First registered error-function companion, for the phi-convexity forms.
fn phi_companion(f: &ScalarFn, wanted: &str) -> Result<ErrorOrModulus, CliError> {
    f.certificates()
        .iter()
        .find(|c| c.kind() == CertKind::PhiConvex)
        .and_then(|c| c.companion())
        .cloned()
        .ok_or_else(|| {
            usage(format!(
                "`{}` has no error-function certificate, which {wanted} needs",
                f.id()
            ))
        })
}

/// First registered convexity modulus, preferring the uniform certificate
/// over the strong one.
fn modulus_companion(f: &ScalarFn, wanted: &str) -> Result<ErrorOrModulus, CliError> {
    let pick = |kind: CertKind| {
        f.certificates()
            .iter()
            .find(|c| c.kind() == kind)
            .and_then(|c| c.companion())
    };
    pick(CertKind::UniformlyConvex)
        .or_else(|| pick(CertKind::StronglyConvex))
        .cloned()
        .ok_or_else(|| {
            usage(format!(
                "`{}` has no convexity-modulus certificate, which {wanted} needs",
                f.id()
            ))
        })
}

/// The function itself viewed as an error function on `[0, L]`, with `L`
/// wide enough that grid pairs `(x, y)` keep `x + y` inside. Construction
/// verifies nonnegativity; `claim_gamma` is the hypothesis under test for
/// the subadditivity consequences, not a verified fact.
fn as_error_fn(f: &ScalarFn, claim_gamma: bool) -> Result<ErrorOrModulus, CliError> {
    let iv = f.test_interval();
    let len = (2.0 * iv.hi()).min(f.domain().hi());
    if len <= 0.0 {
        return Err(usage(format!(
            "`{}` has no positive window to use as an error function",
            f.id()
        )));
    }
    let inner = f.clone();
    let wrapped = ErrorOrModulus::from_rule(
        f.id(),
        len,
        move |x| inner.evaluate(x).unwrap_or(f64::NAN),
        ErrorFnFlags {
            nonnegative: true,
            has_gamma: claim_gamma,
            is_convex: false,
            vanishes_at_zero: false,
        },
    )?;
    Ok(wrapped)
}

fn interior_points(rng: &mut ChaCha8Rng, n: usize, iv: Interval) -> Vec<f64> {
    (0..n)
        .map(|_| iv.lo() + rng.gen_range(1e-3..0.999) * iv.length())
        .collect()
}

fn convex_weights(rng: &mut ChaCha8Rng, n: usize) -> ConvexWeights {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    ConvexWeights::normalized(raw).expect("positive raws normalize cleanly")
}

/// Affine external weights: last weight `1 + t`, the rest negative and
/// rescaled so the vector sums to one.
fn external_weights(rng: &mut ChaCha8Rng, n: usize) -> ExternalWeights {
    let t: f64 = rng.gen_range(0.5..2.5);
    let raw: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut nu: Vec<f64> = raw.iter().map(|r| -r * t / total).collect();
    nu.push(1.0 + t);
    ExternalWeights::new(nu).expect("constructed external weights are valid")
}

fn random_window(rng: &mut ChaCha8Rng, iv: Interval) -> (f64, f64) {
    let min_len = 0.02 * iv.length();
    let a = rng.gen_range(iv.lo()..iv.hi() - min_len);
    let b = rng.gen_range(a + min_len..iv.hi());
    (a, b)
}

/// Runs one family for `cfg.trials` valid configurations. Draws that the
/// evaluator rejects (combination outside the domain, modulus too short)
/// are redrawn; only genuine gap verdicts count as trials.
fn stress<G>(cfg: &RunConfig, mut attempt: G) -> Result<Vec<Report>, CliError>
where
    G: FnMut(&mut ChaCha8Rng) -> convexkit::Result<InequalityReport>,
{
    let mut rng = cfg.rng();
    let mut reports = Vec::with_capacity(cfg.trials);
    for _ in 0..cfg.trials {
        let mut last = None;
        for _ in 0..DRAW_CAP {
            match attempt(&mut rng) {
                Ok(r) => {
                    last = Some(r);
                    break;
                }
                Err(e) => {
                    last = match e {
                        // Rejected draw: try another configuration.
                        convexkit::Error::Precondition(_)
                        | convexkit::Error::Domain { .. }
                        | convexkit::Error::Weight(_) => None,
                        other => return Err(other.into()),
                    }
                }
            }
        }
        match last {
            Some(r) => reports.push(Report::Ineq(r)),
            None => {
                return Err(usage(format!(
                    "no valid configuration found in {DRAW_CAP} draws; \
                     the requested combination cannot be sampled"
                )))
            }
        }
    }
    let merged = merge_reports(
        reports
            .into_iter()
            .map(|r| match r {
                Report::Ineq(r) => r,
                Report::Bound(_) => unreachable!("stress only builds inequality reports"),
            })
            .collect(),
    )
    .expect("trials >= 1");
    Ok(vec![Report::Ineq(merged)])
}

pub fn cmd_verify(
    function: &str,
    inequality: &str,
    cfg: &RunConfig,
) -> Result<Vec<Report>, CliError> {
    let f = lookup(function)?;
    let iv = f.test_interval();
    let tol = cfg.tol;
    match inequality {
        "jensen" => stress(cfg, |rng| {
            let n = rng.gen_range(2..=5usize);
            let pts = interior_points(rng, n, iv);
            let w = convex_weights(rng, n);
            jensen_superquadratic(&f, &pts, &w, tol)
        }),
        "jensen-uniform" => {
            let modulus = modulus_companion(&f, "jensen-uniform")?;
            stress(cfg, |rng| {
                let n = rng.gen_range(2..=5usize);
                let pts = interior_points(rng, n, iv);
                let w = convex_weights(rng, n);
                jensen_uniform(&f, &modulus, &pts, &w, tol)
            })
        }
        "jensen-phi" => {
            let err = phi_companion(&f, "jensen-phi")?;
            stress(cfg, |rng| {
                let n = rng.gen_range(2..=5usize);
                let pts = interior_points(rng, n, iv);
                let w = convex_weights(rng, n);
                jensen_phi(&f, &err, &pts, &w, tol)
            })
        }
        "ext-jensen" => stress(cfg, |rng| {
            let n = rng.gen_range(2..=5usize);
            let pts = interior_points(rng, n, iv);
            let w = external_weights(rng, n);
            external_jensen_superquadratic(&f, &pts, &w, tol)
        }),
        "ext-jensen-n2" => stress(cfg, |rng| {
            let pts = interior_points(rng, 2, iv);
            let (lo, hi) = (pts[0].min(pts[1]), pts[0].max(pts[1]));
            if rng.gen_bool(0.5) {
                let nu = rng.gen_range(1.05..3.5);
                external_jensen_n2(&f, lo, hi, nu, tol)
            } else {
                // a > b keeps the combination a + |nu|*(a - b) positive.
                let nu = rng.gen_range(-2.5..-0.05);
                external_jensen_n2(&f, hi, lo, nu, tol)
            }
        }),
        "ext-jensen-phi" => {
            let err = phi_companion(&f, "ext-jensen-phi")?;
            stress(cfg, |rng| {
                let n = rng.gen_range(2..=5usize);
                let pts = interior_points(rng, n, iv);
                let w = external_weights(rng, n);
                external_jensen_phi(&f, &err, &pts, &w, tol)
            })
        }
        "ext-jensen-uniform" => {
            let modulus = modulus_companion(&f, "ext-jensen-uniform")?;
            stress(cfg, |rng| {
                let n = rng.gen_range(2..=5usize);
                let pts = interior_points(rng, n, iv);
                let w = external_weights(rng, n);
                external_jensen_uniform(&f, &modulus, &pts, &w, tol)
            })
        }
        "hh" => stress(cfg, |rng| {
            let (a, b) = random_window(rng, iv);
            hh_superquadratic(&f, a, b, cfg.quad_tol, tol).map(|r| r.to_report())
        }),
        "hh-phi" => {
            let err = phi_companion(&f, "hh-phi")?;
            stress(cfg, |rng| {
                let (a, b) = random_window(rng, iv);
                hh_phi(&f, &err, a, b, cfg.quad_tol, tol).map(|r| r.to_report())
            })
        }
        "hh-uniform" => {
            let modulus = modulus_companion(&f, "hh-uniform")?;
            stress(cfg, |rng| {
                let (a, b) = random_window(rng, iv);
                hh_uniform(&f, &modulus, a, b, cfg.quad_tol, tol).map(|r| r.to_report())
            })
        }
        "gamma" => {
            let err = as_error_fn(&f, false)?;
            let r = check_gamma(&err, &cfg.grid_on(iv))?;
            Ok(vec![Report::Ineq(r)])
        }
        "minus-gamma" => {
            let r = check_minus_gamma(&f, &cfg.grid_on(iv))?;
            Ok(vec![Report::Ineq(r)])
        }
        "subadditive" => {
            let err = as_error_fn(&f, true)?;
            let r = check_subadditive_consequences(&err, &cfg.grid_on(iv))?;
            Ok(vec![Report::Ineq(r)])
        }
        other => Err(usage(format!(
            "unknown inequality `{other}`; expected one of jensen, jensen-uniform, \
             jensen-phi, ext-jensen, ext-jensen-n2, ext-jensen-phi, ext-jensen-uniform, \
             hh, hh-phi, hh-uniform, gamma, minus-gamma, subadditive"
        ))),
    }
}

#[derive(Debug, Default)]
pub struct BoundParams {
    pub function: Option<String>,
    pub p: Option<f64>,
    pub m: Option<f64>,
}

impl BoundParams {
    fn function(&self, wanted: &str) -> Result<ScalarFn, CliError> {
        let id = self
            .function
            .as_deref()
            .ok_or_else(|| usage(format!("the {wanted} bound needs --function <id>")))?;
        Ok(lookup(id)?)
    }

    fn p(&self, wanted: &str) -> Result<f64, CliError> {
        self.p
            .ok_or_else(|| usage(format!("the {wanted} bound needs --p <exponent>")))
    }

    fn m(&self, wanted: &str) -> Result<f64, CliError> {
        self.m
            .ok_or_else(|| usage(format!("the {wanted} bound needs --m <coefficient>")))
    }
}

pub fn cmd_bound(
    data: &Path,
    name: &str,
    params: &BoundParams,
    cfg: &RunConfig,
) -> Result<Vec<Report>, CliError> {
    let text = std::fs::read_to_string(data)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", data.display())))?;
    let sample = parse_sample(&text, &data.display().to_string())?;
    let tol = cfg.tol;
    let report = match name {
        "cipu" => cipu_bound(&sample, tol)?,
        "power" => deviation_bound_power(&sample, params.p("power")?, tol)?,
        "submult" => deviation_bound_submultiplicative(&params.function("submult")?, &sample, tol)?,
        "strong" => deviation_bound_strong(
            &params.function("strong")?,
            &sample,
            params.m("strong")?,
            params.p("strong")?,
            tol,
        )?,
        "modulus" => {
            let f = params.function("modulus")?;
            let modulus = modulus_companion(&f, "the modulus bound")?;
            deviation_bound_modulus(&f, &modulus, &sample, tol)?
        }
        other => {
            return Err(usage(format!(
                "unknown bound `{other}`; expected one of cipu, power, submult, strong, modulus"
            )))
        }
    };
    Ok(vec![Report::Bound(report)])
}

/// Header-less CSV rows `x` or `x,weight`. The first data row fixes which
/// shape the file uses; rows that break the shape or do not parse are I/O
/// errors with their row number, while rows that parse into invalid samples
/// (nonpositive points, weights off the simplex) are usage errors.
fn parse_sample(text: &str, origin: &str) -> Result<WeightedSample, CliError> {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut shape: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let row = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() > 2 {
            return Err(CliError::Io(format!(
                "{origin} row {row}: expected `x` or `x,weight`, got {} fields",
                fields.len()
            )));
        }
        let shape = *shape.get_or_insert(fields.len());
        if fields.len() != shape {
            return Err(CliError::Io(format!(
                "{origin} row {row}: the weight column must be present on every row or none"
            )));
        }
        points.push(parse_field(fields[0], origin, row, "x")?);
        if let Some(w) = fields.get(1) {
            weights.push(parse_field(w, origin, row, "weight")?);
        }
    }
    if points.is_empty() {
        return Err(CliError::Io(format!("{origin}: no data rows")));
    }
    let sample = if weights.is_empty() {
        WeightedSample::equal(points)
    } else {
        WeightedSample::new(points, ConvexWeights::new(weights)?)
    };
    Ok(sample?)
}

fn parse_field(field: &str, origin: &str, row: usize, what: &str) -> Result<f64, CliError> {
    field.trim().parse().map_err(|_| {
        CliError::Io(format!(
            "{origin} row {row}: cannot parse {what} value `{}`",
            field.trim()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(trials: usize) -> RunConfig {
        RunConfig {
            seed: 11,
            trials,
            grid_points: 32,
            tol: Tolerance::default(),
            quad_tol: 1e-9,
        }
    }

    #[test]
    fn csv_without_weights_is_equal_weighted() {
        let s = parse_sample("1\n2\n\n3\r\n", "t").unwrap();
        assert_eq!(s.points(), [1.0, 2.0, 3.0]);
        assert!(s.has_equal_weights());
    }

    #[test]
    fn csv_with_weights_keeps_them() {
        let s = parse_sample("1, 0.25\n3 ,0.75\n", "t").unwrap();
        assert_eq!(s.weights().values(), [0.25, 0.75]);
        assert!((s.weighted_mean() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn malformed_rows_name_their_line() {
        for (text, needle) in [
            ("1,0.5\noops,0.5\n", "row 2"),
            ("1,0.5,9\n", "got 3 fields"),
            ("1,0.5\n2\n", "every row or none"),
            ("", "no data rows"),
        ] {
            match parse_sample(text, "t") {
                Err(CliError::Io(m)) => assert!(m.contains(needle), "{m}"),
                other => panic!(
                    "expected an I/O error for {text:?}, got {:?}",
                    other.err().map(|e| e.message().to_string())
                ),
            }
        }
    }

    #[test]
    fn invalid_sample_values_are_usage_errors() {
        for text in ["0,0.5\n3,0.5\n", "1,0.6\n3,0.6\n", "5\n"] {
            match parse_sample(text, "t") {
                Err(CliError::Usage(_)) => {}
                _ => panic!("expected a usage error for {text:?}"),
            }
        }
    }

    #[test]
    fn verify_is_deterministic_per_seed() {
        let a = cmd_verify("pow:3", "ext-jensen", &cfg(40)).unwrap();
        let b = cmd_verify("pow:3", "ext-jensen", &cfg(40)).unwrap();
        let render = |r: &[Report]| bundle(&cfg(40), r).render();
        assert_eq!(render(&a), render(&b));
        assert!(a[0].passed());
    }

    #[test]
    fn verify_gamma_rejects_a_cube() {
        let r = cmd_verify("pow:3", "gamma", &cfg(1)).unwrap();
        assert!(!r[0].passed());
    }

    #[test]
    fn every_inequality_name_dispatches_for_the_square() {
        for name in [
            "jensen",
            "jensen-uniform",
            "jensen-phi",
            "ext-jensen",
            "ext-jensen-n2",
            "ext-jensen-phi",
            "ext-jensen-uniform",
            "hh",
            "hh-phi",
            "hh-uniform",
            "gamma",
            "minus-gamma",
            "subadditive",
        ] {
            // pow:2 has no phi companion; neg_pow:2 carries one. Route each
            // name to a function that supports it.
            let function = match name {
                "jensen-phi" | "ext-jensen-phi" | "hh-phi" => "neg_pow:2",
                _ => "pow:2",
            };
            let r = cmd_verify(function, name, &cfg(8))
                .unwrap_or_else(|e| panic!("{name}: {}", e.message()));
            assert!(r[0].passed(), "{name} failed for {function}");
        }
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        assert!(matches!(
            cmd_verify("pow:2", "nosuch", &cfg(1)),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cmd_verify("nosuchfn", "jensen", &cfg(1)),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cmd_classify("nosuchfn", None, &cfg(1)),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn classify_runs_all_certificates() {
        let reports = cmd_classify("pow:3", None, &cfg(1)).unwrap();
        assert!(reports.len() >= 2);
        assert!(reports.iter().all(Report::passed));
        let forced = cmd_classify("pow:1.5", Some("superquadratic"), &cfg(1)).unwrap();
        assert!(!forced[0].passed());
    }

    #[test]
    fn catalog_text_is_lexicographic_and_complete() {
        let text = catalog_text();
        let ids: Vec<&str> = text
            .lines()
            .map(|l| l.split_whitespace().next().unwrap())
            .collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
        assert!(text.contains("xsq_ln"));
        assert!(text.contains("phi-convex with phi = -f on [0, 1]"));
    }
}
