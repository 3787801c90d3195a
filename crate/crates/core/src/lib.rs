//! Weighted Bergman kernels on bounded Reinhardt domains.
//!
//! `bergman-lab` computes, in a truncated monomial basis, the weighted Bergman
//! kernel of a ball, polydisc or diagonal ellipsoid together with everything
//! built on top of it:
//!
//! - moments `‖z^α‖²` of the weight, in closed form where one exists and by
//!   adaptive Gauss–Legendre quadrature otherwise ([`moments`]);
//! - exact mixed derivative jets of the kernel, the Kähler metric
//!   `g = ∂∂̄ log K`, bisectional / holomorphic sectional / Ricci curvature and
//!   the canonical functions `J`, `J̃` ([`kernel`], [`metric`], [`curvature`]);
//! - Bergman's minimum integrals `I⁰, I¹, I²`, solved by orthogonal
//!   projection of representation vectors, plus an independent least-norm
//!   solver used as an oracle ([`min_integrals`]);
//! - closed forms on the ball with Kähler–Einstein weights, ball
//!   automorphisms, and the squeezing-number curvature bounds ([`ball`]).
//!
//! A model is built once from a [`ModelConfig`] and is immutable afterwards;
//! every evaluation is a pure function of the model and the point, so models
//! can be shared across threads freely.
//!
//! ```
//! use bergman_lab::{BergmanModel, ModelConfig};
//! use num_complex::Complex64;
//!
//! let model = BergmanModel::build(&ModelConfig::ball(1, 1.0, 1)).unwrap();
//! let jet = model.kernel_jet(&[Complex64::new(0.0, 0.0)]).unwrap();
//! assert!((jet.k() - 1.0 / std::f64::consts::PI).abs() < 1e-14);
//! ```

pub mod adaptive;
pub mod ball;
pub mod cli;
pub mod curvature;
pub mod domain;
mod error;
pub mod kernel;
pub mod metric;
pub mod min_integrals;
pub mod moments;
pub mod multiindex;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod special;
pub mod suites;

pub use adaptive::{Converged, Converging};
pub use ball::{BallAutomorphism, BallClosedForms, BoundsReport, SqueezingBound};
pub use curvature::CurvatureReport;
pub use domain::{DomainSpec, ModelConfig, PointVec, RadialProfile, WeightKind, WeightSpec};
pub use error::{Error, Result};
pub use kernel::{BergmanModel, Functional, KernelJet};
pub use metric::MetricData;
pub use min_integrals::{Constraint, MinIntegralReport, RepresentationVectors};
pub use moments::{MomentTable, Provenance};
pub use multiindex::MultiIndex;

pub use num_complex::Complex64;
