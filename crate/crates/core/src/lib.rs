//! Integral representations of solutions to constant-coefficient homogeneous
//! PDEs `F(∂)φ = 0`, built from points on the characteristic variety `{F = 0}`,
//! together with the plane-curve machinery (syzygies among powers of linear
//! forms, Cayley–Bacharach, kernel dimension counts) that justifies them.

pub mod scalar;
pub mod polyhom;
pub mod linear;
pub mod kernelspace;
pub mod curves;
pub mod dixon;
pub mod quadrature;
pub mod powerbasis;
pub mod incidence;
pub mod integralrep;
pub mod minitwistor;

pub use curves::{CurveChart, IntersectionSet, Preset};
pub use linear::{Field, Matrix, RankResult, TolerancePolicy};
pub use polyhom::{monomial_basis, AnyPoly, HomogeneousPoly, Monomial, ProjPoint};
pub use powerbasis::PowerBasis;
pub use quadrature::QuadratureRule;
pub use scalar::{FieldTag, Scalar, C64, QC};
