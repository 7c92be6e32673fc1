//! Numerical operator calculus for Gaussian harmonic analysis.

pub mod catalog;
pub mod error;
pub mod field;
pub mod forward_diff;
pub mod fractional;
pub mod hermite;
pub mod lipschitz;
pub mod quadrature;
pub mod report;
pub mod semigroup;
pub mod suites;

pub use error::{Error, Result};
pub use field::{FnField, ScalarField};
pub use hermite::{hermite_eval, project, HermiteExpansion, MultiIndex};
pub use quadrature::{
    gauss_hermite_rule, integrate_gaussian, integrate_halfline, HalflineTransform, QuadratureRule,
};
pub use catalog::CatalogEntry;
pub use forward_diff::{forward_difference, ForwardDifferenceQuery};
pub use fractional::{FractionalKind, FractionalSpec, Representation};
pub use lipschitz::{LipschitzEstimate, XGrid};
pub use report::{write_report, ReportFormat, ReportRow, VerificationReport};
pub use semigroup::{Method, Operand, Semigroup, SemigroupQuery};
pub use suites::{run_suite, RunConfig, Suite};
