//! Adaptive Simpson quadrature with Richardson correction.
//!
//! A panel is accepted when the two-half Simpson refinement agrees with the
//! single-panel value to `15 * tol`; the accepted value includes the
//! `(S2 - S1)/15` extrapolation term, so the reported error estimate is a
//! conservative bound on the extrapolated result. The tolerance budget is
//! halved on each split, keeping the accumulated estimate under the
//! requested total.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 40;

/// Outcome of one integration: the extrapolated value, the accumulated
/// Richardson error estimate, and how many integrand samples were taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Integrates `g` over `[a, b]` to the requested absolute tolerance.
///
/// The orientation is signed: swapping the endpoints negates the value.
/// Integrand failures propagate, non-finite samples are rejected, and a
/// panel that refuses to settle within [`MAX_DEPTH`] splits reports the
/// offending subinterval.
pub fn integrate<G>(g: G, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Result<f64>,
{
    if !a.is_finite() || !b.is_finite() || !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Precondition(format!(
            "integration needs finite endpoints and a positive tolerance, \
             got [{a}, {b}] at {tol}"
        )));
    }
    let mut engine = Engine {
        g: &g,
        evaluations: 0,
        error_estimate: 0.0,
    };
    if a == b {
        return Ok(engine.done(0.0));
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (engine.sample(a)?, engine.sample(m)?, engine.sample(b)?);
    let whole = simpson(a, b, fa, fm, fb);
    let value = engine.refine(a, b, fa, fm, fb, whole, tol, 0)?;
    Ok(engine.done(value))
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

struct Engine<'g, G> {
    g: &'g G,
    evaluations: usize,
    error_estimate: f64,
}

impl<G: Fn(f64) -> Result<f64>> Engine<'_, G> {
    fn sample(&mut self, x: f64) -> Result<f64> {
        let v = (self.g)(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite {
                id: "integrand".into(),
                x,
            });
        }
        self.evaluations += 1;
        Ok(v)
    }

    fn done(&self, value: f64) -> QuadratureResult {
        QuadratureResult {
            value,
            error_estimate: self.error_estimate,
            evaluations: self.evaluations,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (self.sample(lm)?, self.sample(rm)?);
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            self.error_estimate += delta.abs() / 15.0;
            return Ok(left + right + delta / 15.0);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::NonConvergence { a, b, depth });
        }
        let half = 0.5 * tol;
        Ok(self.refine(a, m, fa, flm, fm, left, half, depth + 1)?
            + self.refine(m, b, fm, frm, fb, right, half, depth + 1)?)
    }
}
