//! Cross sections of polar surfaces by planes containing the z axis.
//!
//! A plane through the z axis meets the surface along the pair of constant-
//! longitude curves `psi -> X(theta0, psi)` and `psi -> X(theta0 + pi, psi)`.
//! For the surface of revolution of a logarithmic spiral these arms are the
//! generating spiral itself, which is how the nested-shell section picture
//! arises.

use crate::error::{Error, Result};
use crate::family::{eval_rho, SurfaceFamily};
use crate::geom::{to_cartesian, CartesianPoint, PolarPoint};
use crate::verify::linspace;
use std::f64::consts::{FRAC_PI_2, PI};

/// Supported section planes (both contain the z axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionPlane {
    /// The plane x = 0, i.e. longitudes pi/2 and 3 pi/2.
    XZero,
    /// The plane y = 0, i.e. longitudes 0 and pi.
    YZero,
}

impl SectionPlane {
    fn longitudes(self) -> [f64; 2] {
        match self {
            SectionPlane::XZero => [FRAC_PI_2, 3.0 * FRAC_PI_2],
            SectionPlane::YZero => [0.0, PI],
        }
    }
}

/// An ordered run of at least two points; consecutive points are distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<CartesianPoint>,
}

impl Polyline {
    pub fn new(points: Vec<CartesianPoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("polyline needs at least 2 points"));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("polyline has coincident consecutive points"));
        }
        Ok(Polyline { points })
    }

    pub fn points(&self) -> &[CartesianPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Latitude range swept by the section arms of one family.
fn psi_range(family: &SurfaceFamily) -> Result<(f64, f64)> {
    match family {
        // Fig. 2 portion of the nested-shell surface.
        SurfaceFamily::RotationalSpiral { .. } => Ok((-FRAC_PI_2, 3.0 * FRAC_PI_2)),
        SurfaceFamily::Sphere { .. }
        | SurfaceFamily::SelfSimilar { .. }
        | SurfaceFamily::LogSpiral2D { .. } => Ok((-FRAC_PI_2, FRAC_PI_2)),
        SurfaceFamily::EquiangularGeneral { a, .. } => {
            let lim = a.atan();
            Ok((-lim, lim))
        }
        SurfaceFamily::Cone { .. } | SurfaceFamily::PlaneThroughOrigin { .. } => {
            Err(Error::UnsupportedFamily(family.name()))
        }
    }
}

/// Cut the surface with an axis-aligned plane through the origin, sampling
/// each arm at `n` latitudes. Spheres return the two arms joined into a
/// single circular polyline; every other family returns one polyline per
/// half-plane.
pub fn cross_section(
    family: &SurfaceFamily,
    plane: SectionPlane,
    n: usize,
) -> Result<Vec<Polyline>> {
    if n < 2 {
        return Err(Error::invalid("need at least 2 samples"));
    }
    let (psi_lo, psi_hi) = psi_range(family)?;
    let psis = linspace(psi_lo, psi_hi, n);
    let [theta_a, theta_b] = plane.longitudes();

    let arm = |theta: f64, reversed: bool| -> Result<Vec<CartesianPoint>> {
        let mut pts = Vec::with_capacity(n);
        let iter: Box<dyn Iterator<Item = &f64>> = if reversed {
            Box::new(psis.iter().rev())
        } else {
            Box::new(psis.iter())
        };
        for &psi in iter {
            let p = PolarPoint::new(theta, psi);
            let rho = eval_rho(family, p)?;
            pts.push(to_cartesian(p, rho));
        }
        Ok(pts)
    };

    if matches!(family, SurfaceFamily::Sphere { .. }) {
        // The arms meet at the poles; walking one up and the other down
        // traces the full great circle.
        let mut pts = arm(theta_a, false)?;
        pts.extend(arm(theta_b, true)?);
        pts.dedup();
        return Ok(vec![Polyline::new(pts)?]);
    }

    Ok(vec![
        Polyline::new(arm(theta_a, false)?)?,
        Polyline::new(arm(theta_b, false)?)?,
    ])
}
