#![forbid(unsafe_code)]

//! Equiangular and self-similar surface families.
//!
//! A surface is *equiangular* when the angle between its normal and its
//! radius vector is the same everywhere, and *self-similar* when its polar
//! radius is `rho0 e^{mu theta + b psi}`, so that shifting either angular
//! parameter rescales the shape. In the plane the two notions coincide (the
//! logarithmic spiral); in space they split apart, and this crate builds
//! the families that witness every combination:
//!
//! - spheres (`beta = 0`), cones and planes through the origin (`beta = pi/2`),
//! - the surface of revolution of a logarithmic spiral (both properties),
//! - general self-similar surfaces (self-similar, usually not equiangular),
//! - the general equiangular solution `rho = rho0 e^{+-mu theta +- h(psi)}`
//!   (equiangular, not self-similar for `mu > 0`).
//!
//! The crate evaluates these families and their analytic derivatives
//! ([`family`]), builds differential frames ([`frame`]), evaluates the
//! latitude exponent `h` three independent ways ([`special`]), quantifies
//! the defining properties over grids ([`verify`]), and tessellates and
//! exports meshes and cross-section polylines ([`mesh`], [`export`],
//! [`section`]).

pub mod error;
pub mod export;
pub mod family;
pub mod frame;
pub mod geom;
pub mod mesh;
pub mod section;
pub mod special;
pub mod spiral2d;
pub mod verify;

pub use error::{Error, Result};
pub use family::{eval_rho, eval_rho_partials, Sign, SurfaceFamily};
pub use frame::{angle_beta, surface_sample, SurfaceSample};
pub use geom::{to_cartesian, Angle, CartesianPoint, PolarPoint};
pub use mesh::{tessellate, TriangleMesh};
pub use section::{cross_section, Polyline, SectionPlane};
pub use special::{
    beta_from_mu_a, h_closed, h_mu_zero, h_quadrature, h_series, psi_domain, DomainInterval,
    HParams,
};
pub use spiral2d::{spiral2d_point, spiral2d_velocity};
pub use verify::{
    check_conchospiral_level_curve, check_equiangular, check_pde_residual, check_self_similar,
    classify_self_similar_equiangular, pde_residual, spiral2d_equiangular_check, Grid,
    SelfSimilarClass, VerificationReport, Verdict,
};
