//! Coordinate charts for the model Einstein manifolds and numerical curvature on them.

pub mod chart;
pub mod conformal;
pub mod models;

pub use chart::{
    christoffel_at, curvature_operator_at, laplacian_at, metric_jet, orthonormal_frame, riemann_at, Chart,
    Christoffel, FiniteDifference, MetricFn, MetricJet, ScalarFn,
};
pub use conformal::{conformal_law_convergence, conformal_law_residual, conformal_rescale, frak_s_at, ConvergenceStudy};
pub use models::{catalog, flat_torus, fubini_study, product_spheres, round_sphere, Cover, ModelKind, ModelManifold, ReferenceData};
