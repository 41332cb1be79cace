//! Numerical toolkit for superquadratic, subquadratic, phi-convex and
//! uniformly/strongly convex scalar functions: grid-based class checkers,
//! Jensen-type and Hermite-Hadamard inequality evaluators, and closed-form
//! deviation-from-mean bounds on weighted samples.

pub mod bounds;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod function;
pub mod hermite;
pub mod interval;
pub mod jensen;
pub mod quad;
pub mod report;
pub mod weights;

pub use bounds::{BoundReport, WeightedSample};
pub use error::{Error, Result};
pub use function::{CertKind, ClassCertificate, ErrorFnFlags, ErrorOrModulus, ScalarFn};
pub use hermite::HHReport;
pub use interval::Interval;
pub use quad::QuadratureResult;
pub use report::{GridSpec, InequalityReport, Tolerance};
pub use weights::{ConvexWeights, ExternalWeights};
