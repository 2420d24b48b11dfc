//! Parametrized characteristic varieties, univariate root finding, and
//! intersection of plane curves.

mod chart;
mod intersect;
mod roots;

use thiserror::Error;

use crate::polyhom::PolyError;
use crate::scalar::C64;

pub use chart::{
    generic_plane_chart, preset_chart, CurveChart, Domain, GenericPlane, IntegrationPath, Preset, FERMAT_SERIES_ORDER,
};
pub use intersect::{
    intersect_plane_curves, resultant_polynomial, sylvester_resultant, IntersectionSet, ResultantPoly, POINT_TOLERANCE,
};
pub use roots::{horner, poly_from_roots, roots_univariate, Roots, CLUSTER_TOLERANCE};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("root finder did not converge")]
    NonConvergence { partial: Vec<C64> },
    #[error("curves share a common component")]
    CommonComponent,
    #[error("intersection failed: {0}")]
    IntersectionFailed(String),
    #[error("{0}")]
    OutsideDomain(String),
    #[error("branch point trouble: {0}")]
    BranchPoint(String),
    #[error("root tracking failed: {0}")]
    Tracking(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
