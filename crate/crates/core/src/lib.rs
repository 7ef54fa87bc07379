//! Simultaneous root finding with known multiplicities for algebraic,
//! trigonometric and exponential polynomials.
//!
//! Every algorithm is generic over [`numeric::Scalar`]; [`numeric::Real`]
//! gives configurable decimal precision and `f64`/`f32` work for quick
//! experiments. The aliases below fix the scalar to `Real`.

pub mod fixtures;
pub mod ingest;
pub mod numeric;
pub mod polys;
pub mod solver;
pub mod theory;

pub use numeric::{PrecisionConfig, Real, Scalar};
pub use polys::Family;
pub use solver::Method;

pub type RealPolynomial = polys::Polynomial<Real>;
pub type RealFactoredPoly = polys::FactoredPoly<Real>;
pub type RealEstimates = solver::EstimateVector<Real>;
pub type RealSolveConfig = solver::SolveConfig<Real>;
pub type RealSolveReport = solver::SolveReport<Real>;
pub type RealTheoremReport = theory::TheoremReport<Real>;

pub type F64Polynomial = polys::Polynomial<f64>;
pub type F64SolveReport = solver::SolveReport<f64>;
