//! Weight vectors for the Jensen-type inequalities: ordinary convex weights
//! and the external kind with one leading coefficient and nonpositive rest.

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-12;

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexWeights(Vec<f64>);

impl ConvexWeights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Weight("need at least one weight".into()));
        }
        if let Some(&w) = values.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::Weight(format!(
                "convex weights must be finite and nonnegative, got {w}"
            )));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Weight(format!(
                "convex weights must sum to 1, got {sum}"
            )));
        }
        Ok(Self(values))
    }

    /// `n` equal weights `1/n`.
    pub fn equal(n: usize) -> Self {
        assert!(n >= 1);
        Self::new(vec![1.0 / n as f64; n]).expect("equal weights sum to 1")
    }

    /// Scale nonnegative raw values by their sum.
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        if raw.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Weight(
                "raw weights must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(Error::Weight(format!(
                "raw weights must have a positive sum, got {sum}"
            )));
        }
        Self::new(raw.into_iter().map(|w| w / sum).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; the constructors reject empty vectors.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn min(&self) -> f64 {
        self.0.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// External weights: the last coefficient is at least one, all others are
/// nonpositive. The sum is deliberately unconstrained; [`Self::affine`]
/// tells whether it is one, which the two-point forms require and the
/// general forms flag.
#[derive(Debug, Clone, PartialEq)]
pub struct ExternalWeights(Vec<f64>);

impl ExternalWeights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let Some((&last, rest)) = values.split_last() else {
            return Err(Error::Weight("need at least one weight".into()));
        };
        if values.iter().any(|w| !w.is_finite()) {
            return Err(Error::Weight("external weights must be finite".into()));
        }
        if last < 1.0 {
            return Err(Error::Weight(format!(
                "the last external weight must be >= 1, got {last}"
            )));
        }
        if let Some(&w) = rest.iter().find(|w| **w > 0.0) {
            return Err(Error::Weight(format!(
                "external weights before the last must be <= 0, got {w}"
            )));
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; the constructors reject empty vectors.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn affine(&self) -> bool {
        (self.sum() - 1.0).abs() <= SUM_TOL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_weights_validate() {
        assert!(ConvexWeights::new(vec![0.5, 0.5]).is_ok());
        assert!(ConvexWeights::new(vec![1.0]).is_ok());
        assert!(matches!(
            ConvexWeights::new(vec![0.5, 0.6]),
            Err(Error::Weight(_))
        ));
        assert!(matches!(
            ConvexWeights::new(vec![-0.5, 1.5]),
            Err(Error::Weight(_))
        ));
        assert!(matches!(ConvexWeights::new(vec![]), Err(Error::Weight(_))));
    }

    #[test]
    fn equal_and_normalized_weights() {
        let w = ConvexWeights::equal(3);
        assert_eq!(w.len(), 3);
        assert!((w.values()[0] - 1.0 / 3.0).abs() < 1e-15);
        let w = ConvexWeights::normalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(w.values(), &[0.25, 0.75]);
        assert_eq!(w.min(), 0.25);
        assert!(ConvexWeights::normalized(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn external_weights_validate() {
        let v = ExternalWeights::new(vec![-1.0, 2.0]).unwrap();
        assert!(v.affine());
        let v = ExternalWeights::new(vec![-2.0, 2.0]).unwrap();
        assert!(!v.affine());
        assert_eq!(v.sum(), 0.0);
        assert!(ExternalWeights::new(vec![0.0, 1.0]).is_ok());
        assert!(matches!(
            ExternalWeights::new(vec![-1.0, 0.5]),
            Err(Error::Weight(_))
        ));
        assert!(matches!(
            ExternalWeights::new(vec![0.5, 2.0]),
            Err(Error::Weight(_))
        ));
    }
}
