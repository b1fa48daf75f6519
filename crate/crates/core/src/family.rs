//! Surface families and their polar radius functions.
//!
//! Every variant that admits a polar equation `rho = rho(theta, psi)` is the
//! single source of both `rho` and its analytic partial derivatives. Cones
//! and planes through the origin are carried as distinct variants because
//! they have no such equation; they participate only in classification.

use crate::error::{Error, Result};
use crate::geom::{Angle, CartesianPoint, PolarPoint};
use crate::special::{self, DomainInterval, HParams};

/// Branch sign of an exponent term, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        if v == 1.0 {
            Ok(Sign::Plus)
        } else if v == -1.0 {
            Ok(Sign::Minus)
        } else {
            Err(Error::invalid("sign must be +1 or -1"))
        }
    }
}

/// All surface (and curve) families handled by the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceFamily {
    /// Planar logarithmic spiral `r = r0 e^{k theta}`. As a surface it is
    /// read as `rho(theta, psi) = r0 e^{k theta}`, independent of latitude.
    LogSpiral2D { r0: f64, k: f64 },
    /// Self-similar surface `rho = rho0 e^{mu theta + b psi}`.
    SelfSimilar { rho0: f64, mu: f64, b: f64 },
    /// Surface of revolution of a logarithmic spiral: `rho = r0 e^{k psi}`.
    RotationalSpiral { r0: f64, k: f64 },
    /// General equiangular solution `rho = rho0 e^{+-mu theta +- h(psi)}`
    /// with `mu > 0`, defined for `psi` in `[-arctan a, arctan a]`.
    EquiangularGeneral {
        rho0: f64,
        mu: f64,
        a: f64,
        sign_theta: Sign,
        sign_psi: Sign,
    },
    /// Sphere centered at the origin (`beta = 0`).
    Sphere { radius: f64 },
    /// Cone with vertex at the origin and axis z (`beta = pi/2`).
    /// Not polar-representable.
    Cone { half_angle: f64 },
    /// Plane through the origin (`beta = pi/2`). Not polar-representable.
    PlaneThroughOrigin { unit_normal: CartesianPoint },
}

impl SurfaceFamily {
    pub fn log_spiral_2d(r0: f64, k: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::invalid("r0 must be > 0"));
        }
        if !k.is_finite() {
            return Err(Error::invalid("k must be finite"));
        }
        Ok(SurfaceFamily::LogSpiral2D { r0, k })
    }

    pub fn self_similar(rho0: f64, mu: f64, b: f64) -> Result<Self> {
        if !(rho0 >= 0.0) || !rho0.is_finite() {
            return Err(Error::invalid("rho0 must be >= 0"));
        }
        if !mu.is_finite() || !b.is_finite() {
            return Err(Error::invalid("mu and b must be finite"));
        }
        Ok(SurfaceFamily::SelfSimilar { rho0, mu, b })
    }

    pub fn rotational_spiral(r0: f64, k: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::invalid("r0 must be > 0"));
        }
        if !k.is_finite() {
            return Err(Error::invalid("k must be finite"));
        }
        Ok(SurfaceFamily::RotationalSpiral { r0, k })
    }

    pub fn equiangular(
        rho0: f64,
        mu: f64,
        a: f64,
        sign_theta: Sign,
        sign_psi: Sign,
    ) -> Result<Self> {
        if !(rho0 >= 0.0) || !rho0.is_finite() {
            return Err(Error::invalid("rho0 must be >= 0"));
        }
        // HParams repeats the mu/a bounds and checks tan(beta) finiteness.
        HParams::new(mu, a)?;
        Ok(SurfaceFamily::EquiangularGeneral { rho0, mu, a, sign_theta, sign_psi })
    }

    pub fn sphere(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid("radius must be > 0"));
        }
        Ok(SurfaceFamily::Sphere { radius })
    }

    pub fn cone(half_angle: f64) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::invalid("half_angle must be in (0, pi/2)"));
        }
        Ok(SurfaceFamily::Cone { half_angle })
    }

    pub fn plane_through_origin(normal: CartesianPoint) -> Result<Self> {
        let unit_normal = normal
            .normalized()
            .ok_or_else(|| Error::invalid("plane normal must be nonzero"))?;
        Ok(SurfaceFamily::PlaneThroughOrigin { unit_normal })
    }

    /// Whether the family admits a polar equation `rho(theta, psi)`.
    pub fn is_polar_representable(&self) -> bool {
        !matches!(
            self,
            SurfaceFamily::Cone { .. } | SurfaceFamily::PlaneThroughOrigin { .. }
        )
    }

    /// Short lowercase name, used in error messages and CLI output.
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceFamily::LogSpiral2D { .. } => "log-spiral-2d",
            SurfaceFamily::SelfSimilar { .. } => "self-similar",
            SurfaceFamily::RotationalSpiral { .. } => "rotational-spiral",
            SurfaceFamily::EquiangularGeneral { .. } => "equiangular",
            SurfaceFamily::Sphere { .. } => "sphere",
            SurfaceFamily::Cone { .. } => "cone",
            SurfaceFamily::PlaneThroughOrigin { .. } => "plane",
        }
    }

    /// Latitude interval on which `rho` is defined, when restricted.
    /// `None` means every finite latitude is allowed (or the family is not
    /// polar-representable and has no latitude at all).
    pub fn psi_domain(&self) -> Option<DomainInterval> {
        match self {
            SurfaceFamily::EquiangularGeneral { a, .. } => Some(special::psi_domain(*a)),
            _ => None,
        }
    }

    /// The exact characteristic angle for families that are equiangular by
    /// construction; `None` for families that are not equiangular.
    pub fn characteristic_beta(&self) -> Option<Angle> {
        match *self {
            SurfaceFamily::Sphere { .. } => Some(Angle::ZERO),
            SurfaceFamily::Cone { .. } | SurfaceFamily::PlaneThroughOrigin { .. } => {
                Some(Angle::from_radians(std::f64::consts::FRAC_PI_2))
            }
            SurfaceFamily::RotationalSpiral { k, .. } => {
                Some(Angle::from_radians(k.abs().atan()))
            }
            SurfaceFamily::EquiangularGeneral { mu, a, .. } => {
                Some(special::beta_from_mu_a(mu, a))
            }
            SurfaceFamily::SelfSimilar { mu, b, .. } => {
                if mu == 0.0 {
                    Some(Angle::from_radians(b.abs().atan()))
                } else {
                    None
                }
            }
            SurfaceFamily::LogSpiral2D { .. } => None,
        }
    }

    fn h_params(&self) -> Option<HParams> {
        match *self {
            SurfaceFamily::EquiangularGeneral { mu, a, .. } => {
                Some(HParams::new(mu, a).expect("validated at construction"))
            }
            _ => None,
        }
    }
}

/// `rho0 * exp(c1*x1 + c2*x2)` with the exponent assembled in double-double
/// (exact products via fma, exact sum via two-sum) and the low part folded
/// back multiplicatively. This keeps evaluation within a couple of ulp of
/// the true value, so the exponential shift identities of the families
/// survive at the ulp level instead of drifting with the exponent size.
fn exp_form(rho0: f64, c1: f64, x1: f64, c2: f64, x2: f64) -> f64 {
    let p1 = c1 * x1;
    let e1 = c1.mul_add(x1, -p1);
    let p2 = c2 * x2;
    let e2 = c2.mul_add(x2, -p2);
    let s = p1 + p2;
    let t = s - p1;
    let e3 = (p1 - (s - t)) + (p2 - t);
    rho0 * s.exp() * (1.0 + (e1 + e2 + e3))
}

/// Evaluate the polar radius of a family at a domain point.
///
/// Errors with [`Error::UnsupportedFamily`] for cones and planes and with
/// [`Error::Domain`] when an equiangular latitude leaves `[-arctan a, arctan a]`.
pub fn eval_rho(family: &SurfaceFamily, p: PolarPoint) -> Result<f64> {
    match *family {
        SurfaceFamily::LogSpiral2D { r0, k } => Ok(exp_form(r0, k, p.theta, 0.0, 0.0)),
        SurfaceFamily::SelfSimilar { rho0, mu, b } => {
            Ok(exp_form(rho0, mu, p.theta, b, p.psi))
        }
        SurfaceFamily::RotationalSpiral { r0, k } => Ok(exp_form(r0, k, p.psi, 0.0, 0.0)),
        SurfaceFamily::EquiangularGeneral { rho0, mu, sign_theta, sign_psi, .. } => {
            let params = family.h_params().expect("equiangular variant");
            let h = special::h_closed(params, p.psi)?;
            Ok(exp_form(rho0, sign_theta.factor() * mu, p.theta, sign_psi.factor(), h))
        }
        SurfaceFamily::Sphere { radius } => Ok(radius),
        SurfaceFamily::Cone { .. } | SurfaceFamily::PlaneThroughOrigin { .. } => {
            Err(Error::UnsupportedFamily(family.name()))
        }
    }
}

/// Analytic partial derivatives `(rho_theta, rho_psi)` at a domain point.
///
/// Same domain restrictions as [`eval_rho`]. The formulas per family:
/// self-similar `(mu rho, b rho)`; rotational spiral `(0, k rho)`;
/// equiangular `(+-mu rho, +-mu sqrt(a^2 - tan^2 psi) rho)`.
pub fn eval_rho_partials(family: &SurfaceFamily, p: PolarPoint) -> Result<(f64, f64)> {
    let rho = eval_rho(family, p)?;
    match *family {
        SurfaceFamily::LogSpiral2D { k, .. } => Ok((k * rho, 0.0)),
        SurfaceFamily::SelfSimilar { mu, b, .. } => Ok((mu * rho, b * rho)),
        SurfaceFamily::RotationalSpiral { k, .. } => Ok((0.0, k * rho)),
        SurfaceFamily::EquiangularGeneral { mu, a, sign_theta, sign_psi, .. } => {
            let t = p.psi.tan();
            let h_prime = mu * (a * a - t * t).max(0.0).sqrt();
            Ok((
                sign_theta.factor() * mu * rho,
                sign_psi.factor() * h_prime * rho,
            ))
        }
        SurfaceFamily::Sphere { .. } => Ok((0.0, 0.0)),
        SurfaceFamily::Cone { .. } | SurfaceFamily::PlaneThroughOrigin { .. } => {
            Err(Error::UnsupportedFamily(family.name()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn constant_surface_is_rho0() {
        let fam = SurfaceFamily::self_similar(1.0, 0.0, 0.0).unwrap();
        for (theta, psi) in [(0.0, 0.0), (3.0, -1.0), (-7.0, 0.4)] {
            assert_eq!(eval_rho(&fam, PolarPoint::new(theta, psi)).unwrap(), 1.0);
        }
    }

    #[test]
    fn equiangular_at_origin_is_rho0() {
        // h(0) = 0, so the exponent vanishes.
        let fam = SurfaceFamily::equiangular(1.0, 0.1, 2.0, Sign::Plus, Sign::Plus).unwrap();
        assert_eq!(eval_rho(&fam, PolarPoint::new(0.0, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn self_similar_full_turn() {
        // Direct scalar exponential: exponent 0.5 * 2pi at psi = 0.
        let fam = SurfaceFamily::self_similar(1.0, 0.5, 0.2).unwrap();
        let got = eval_rho(&fam, PolarPoint::new(2.0 * PI, 0.0)).unwrap();
        assert_relative_eq!(got, PI.exp(), max_relative = 1e-15);
    }

    #[test]
    fn partials_at_origin() {
        let fam = SurfaceFamily::self_similar(1.0, 0.5, 0.2).unwrap();
        let (rt, rp) = eval_rho_partials(&fam, PolarPoint::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(rt, 0.5);
        assert_abs_diff_eq!(rp, 0.2);
    }

    #[test]
    fn equiangular_partials_at_equator() {
        // rho_psi / rho = mu * sqrt(a^2 - 0) = mu * a.
        let fam = SurfaceFamily::equiangular(1.0, 0.1, 2.0, Sign::Plus, Sign::Plus).unwrap();
        let (_, rp) = eval_rho_partials(&fam, PolarPoint::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(rp, 0.2, epsilon = 1e-15);
    }

    #[test]
    fn cone_and_plane_reject_polar_evaluation() {
        let cone = SurfaceFamily::cone(0.5).unwrap();
        let plane =
            SurfaceFamily::plane_through_origin(CartesianPoint::new(0.0, 0.0, 2.0)).unwrap();
        for fam in [cone, plane] {
            assert!(!fam.is_polar_representable());
            assert!(matches!(
                eval_rho(&fam, PolarPoint::new(0.0, 0.0)),
                Err(Error::UnsupportedFamily(_))
            ));
            assert!(eval_rho_partials(&fam, PolarPoint::new(0.0, 0.0)).is_err());
        }
    }

    #[test]
    fn equiangular_outside_domain_errors() {
        let fam = SurfaceFamily::equiangular(1.0, 0.1, 2.0, Sign::Plus, Sign::Plus).unwrap();
        let bad = PolarPoint::new(0.0, 2.0f64.atan() + 0.01);
        assert!(matches!(eval_rho(&fam, bad), Err(Error::Domain { .. })));
    }

    #[test]
    fn constructor_bounds() {
        assert!(SurfaceFamily::equiangular(1.0, 0.0, 2.0, Sign::Plus, Sign::Plus).is_err());
        assert!(SurfaceFamily::equiangular(1.0, 0.1, -2.0, Sign::Plus, Sign::Plus).is_err());
        assert!(SurfaceFamily::sphere(0.0).is_err());
        assert!(SurfaceFamily::rotational_spiral(-1.0, 0.2).is_err());
        assert!(SurfaceFamily::cone(2.0).is_err());
        assert!(SurfaceFamily::self_similar(-0.5, 0.1, 0.1).is_err());
    }

    #[test]
    fn rotational_spiral_matches_mu_zero_convention() {
        // rho = r0 e^{k psi} must equal r0 e^{h(psi)} with h = psi tan(beta),
        // beta = arctan k: the two code paths for the mu = 0 case.
        let (r0, k) = (1.3, 0.2);
        let fam = SurfaceFamily::rotational_spiral(r0, k).unwrap();
        let beta = Angle::from_radians(k.atan());
        for psi in [-1.0, -0.3, 0.0, 0.6, 1.4] {
            let via_family = eval_rho(&fam, PolarPoint::new(0.7, psi)).unwrap();
            let via_h = r0 * crate::special::h_mu_zero(beta, psi).exp();
            assert_relative_eq!(via_family, via_h, max_relative = 1e-15);
        }
    }

    #[test]
    fn characteristic_beta_values() {
        let sphere = SurfaceFamily::sphere(2.0).unwrap();
        assert_eq!(sphere.characteristic_beta().unwrap().radians(), 0.0);

        let rot = SurfaceFamily::rotational_spiral(1.0, 0.2).unwrap();
        assert_abs_diff_eq!(rot.characteristic_beta().unwrap().radians(), 0.2f64.atan());

        let eq = SurfaceFamily::equiangular(1.0, 0.1, 2.0, Sign::Plus, Sign::Plus).unwrap();
        assert_abs_diff_eq!(
            eq.characteristic_beta().unwrap().radians(),
            (0.1 * 5.0f64.sqrt()).atan()
        );

        let ss = SurfaceFamily::self_similar(1.0, 0.5, 0.2).unwrap();
        assert!(ss.characteristic_beta().is_none());
        let ss0 = SurfaceFamily::self_similar(1.0, 0.0, 0.3).unwrap();
        assert_abs_diff_eq!(ss0.characteristic_beta().unwrap().radians(), 0.3f64.atan());
    }
}
