//! The first-order differential frame of a polar surface.
//!
//! At a domain point the frame consists of the position `X`, the tangents
//! `X_theta` and `X_psi`, and the normal `N = X_theta x X_psi`. For any
//! polar surface the normal satisfies three closed-form identities:
//!
//! ```text
//! N . X   = rho^3 cos(psi)
//! |X|^2   = rho^2
//! |N|^2   = rho^2 (rho_psi^2 cos^2 psi + rho^2 cos^2 psi + rho_theta^2)
//! ```
//!
//! which pin the angle between `N` and `X` to
//! `cos(beta) = rho cos(psi) / sqrt(rho_psi^2 cos^2 psi + rho^2 cos^2 psi + rho_theta^2)`.

use crate::error::{Error, Result};
use crate::family::{eval_rho, eval_rho_partials, SurfaceFamily};
use crate::geom::{to_cartesian, Angle, CartesianPoint, PolarPoint};

/// Position, tangents, normal, and the radius data they were built from.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceSample {
    pub p: PolarPoint,
    pub rho: f64,
    pub rho_theta: f64,
    pub rho_psi: f64,
    pub x: CartesianPoint,
    pub x_theta: CartesianPoint,
    pub x_psi: CartesianPoint,
    /// `X_theta x X_psi`, exactly as computed by the cross product.
    pub normal: CartesianPoint,
}

impl SurfaceSample {
    /// The normal assembled from its closed-form components
    /// instead of the numeric cross product. Agrees with `normal` up to
    /// floating-point rearrangement; kept as an independent route for
    /// verification.
    pub fn normal_closed_form(&self) -> CartesianPoint {
        closed_form_normal(self.p, self.rho, self.rho_theta, self.rho_psi)
    }
}

/// Normal components written out in terms of `(rho, rho_theta, rho_psi)`.
pub fn closed_form_normal(
    p: PolarPoint,
    rho: f64,
    rho_theta: f64,
    rho_psi: f64,
) -> CartesianPoint {
    let (sin_t, cos_t) = p.theta.sin_cos();
    let (sin_p, cos_p) = p.psi.sin_cos();
    CartesianPoint::new(
        rho_psi * rho * cos_t * cos_p * sin_p + rho_theta * rho * sin_t
            + rho * rho * cos_t * cos_p * cos_p,
        rho_psi * rho * sin_t * cos_p * sin_p - rho_theta * rho * cos_t
            + rho * rho * sin_t * cos_p * cos_p,
        -rho_psi * rho * cos_p * cos_p + rho * rho * cos_p * sin_p,
    )
}

/// Build the frame at a domain point.
///
/// Requires `cos(psi) > 0`; outside that band the latitude circles reverse
/// orientation and the frame is rejected rather than silently degenerate.
pub fn surface_sample(family: &SurfaceFamily, p: PolarPoint) -> Result<SurfaceSample> {
    if !(p.psi.cos() > 0.0) {
        return Err(Error::FrameDomain { psi: p.psi });
    }
    let rho = eval_rho(family, p)?;
    let (rho_theta, rho_psi) = eval_rho_partials(family, p)?;

    let (sin_t, cos_t) = p.theta.sin_cos();
    let (sin_p, cos_p) = p.psi.sin_cos();

    let x = to_cartesian(p, rho);
    let x_theta = CartesianPoint::new(
        cos_p * (rho_theta * cos_t - rho * sin_t),
        cos_p * (rho_theta * sin_t + rho * cos_t),
        rho_theta * sin_p,
    );
    let x_psi = CartesianPoint::new(
        cos_t * (rho_psi * cos_p - rho * sin_p),
        sin_t * (rho_psi * cos_p - rho * sin_p),
        rho_psi * sin_p + rho * cos_p,
    );
    let normal = x_theta.cross(x_psi);

    debug_assert!({
        let closed = closed_form_normal(p, rho, rho_theta, rho_psi);
        (normal - closed).norm() <= 1e-10 * normal.norm().max(1e-300)
    });

    Ok(SurfaceSample { p, rho, rho_theta, rho_psi, x, x_theta, x_psi, normal })
}

/// Characteristic angle of a sample: the angle between `N` and `X`,
/// folded into `[0, pi/2]` so the orientation of `N` (a parametrization
/// artifact) cannot flip the answer. The cosine is clamped to `[-1, 1]`
/// before `acos` to absorb rounding near `beta = 0`.
pub fn angle_beta(s: &SurfaceSample) -> Result<Angle> {
    let n_norm = s.normal.norm();
    let x_norm = s.x.norm();
    if n_norm == 0.0 {
        return Err(Error::DegenerateFrame { theta: s.p.theta, psi: s.p.psi });
    }
    let cos_beta = (s.normal.dot(s.x) / (n_norm * x_norm)).clamp(-1.0, 1.0);
    let beta = cos_beta.acos();
    Ok(Angle::from_radians(beta.min(std::f64::consts::PI - beta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Sign;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn unit_sphere_frame_at_origin_direction() {
        let fam = SurfaceFamily::sphere(1.0).unwrap();
        let s = surface_sample(&fam, PolarPoint::new(0.0, 0.0)).unwrap();
        assert_eq!(s.x, CartesianPoint::new(1.0, 0.0, 0.0));
        assert_eq!(s.x_theta, CartesianPoint::new(0.0, 1.0, 0.0));
        assert_eq!(s.x_psi, CartesianPoint::new(0.0, 0.0, 1.0));
        assert_eq!(s.normal, CartesianPoint::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn sphere_beta_is_zero() {
        let fam = SurfaceFamily::sphere(2.0).unwrap();
        for (theta, psi) in [(0.3, 0.1), (2.0, -1.2), (5.5, 1.5)] {
            let s = surface_sample(&fam, PolarPoint::new(theta, psi)).unwrap();
            let beta = angle_beta(&s).unwrap();
            assert_abs_diff_eq!(beta.radians(), 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn rotational_spiral_beta_is_arctan_k() {
        let fam = SurfaceFamily::rotational_spiral(1.0, 0.2).unwrap();
        for (theta, psi) in [(0.0, 0.0), (1.0, 0.7), (4.0, -1.1)] {
            let s = surface_sample(&fam, PolarPoint::new(theta, psi)).unwrap();
            let beta = angle_beta(&s).unwrap();
            assert_abs_diff_eq!(beta.radians(), 0.2f64.atan(), epsilon = 1e-12);
        }
    }

    #[test]
    fn equiangular_beta_matches_parameter_inversion() {
        // tan(beta) = mu sqrt(a^2 + 1); constancy over a small sweep.
        let fam = SurfaceFamily::equiangular(1.0, 0.1, 2.0, Sign::Plus, Sign::Plus).unwrap();
        let expected = (0.1 * 5.0f64.sqrt()).atan();
        for i in 0..20 {
            let theta = 4.0 * PI * (i as f64) / 19.0;
            let psi = -1.0 + 2.0 * (i as f64) / 19.0;
            let s = surface_sample(&fam, PolarPoint::new(theta, psi)).unwrap();
            assert_abs_diff_eq!(angle_beta(&s).unwrap().radians(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn frame_rejected_on_far_side() {
        let fam = SurfaceFamily::rotational_spiral(1.0, 0.2).unwrap();
        assert!(matches!(
            surface_sample(&fam, PolarPoint::new(0.0, PI)),
            Err(Error::FrameDomain { .. })
        ));
    }

    #[test]
    fn proof_identities_hold_on_a_sample() {
        let fam = SurfaceFamily::self_similar(1.0, 0.5, 0.2).unwrap();
        let s = surface_sample(&fam, PolarPoint::new(1.3, 0.4)).unwrap();
        let rho = s.rho;
        let cos_p = s.p.psi.cos();

        let ndx = s.normal.dot(s.x);
        assert_abs_diff_eq!(ndx, rho.powi(3) * cos_p, epsilon = 1e-10 * ndx.abs());

        assert_abs_diff_eq!(s.x.norm_squared(), rho * rho, epsilon = 1e-10 * rho * rho);

        let n2 = s.normal.norm_squared();
        let expected = rho * rho
            * (s.rho_psi * s.rho_psi * cos_p * cos_p + rho * rho * cos_p * cos_p
                + s.rho_theta * s.rho_theta);
        assert_abs_diff_eq!(n2, expected, epsilon = 1e-10 * expected);
    }

    #[test]
    fn cross_product_matches_closed_form() {
        let fam = SurfaceFamily::equiangular(1.0, 0.5, 2.0, Sign::Minus, Sign::Plus).unwrap();
        let s = surface_sample(&fam, PolarPoint::new(2.0, -0.8)).unwrap();
        let closed = s.normal_closed_form();
        assert!((s.normal - closed).norm() <= 1e-12 * s.normal.norm());
    }
}
