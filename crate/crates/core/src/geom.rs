//! Coordinates, angles, and the polar-to-Cartesian map.
//!
//! The surface parametrization used throughout the crate is
//!
//! ```text
//! x = rho cos(psi) cos(theta)
//! y = rho cos(psi) sin(theta)
//! z = rho sin(psi)
//! ```
//!
//! with `theta` the azimuthal rotation angle and `psi` the latitude.

use std::ops::{Add, Mul, Neg, Sub};

/// An angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Wrap a finite radian value.
    pub fn from_radians(radians: f64) -> Self {
        assert!(radians.is_finite(), "angle must be finite");
        Angle(radians)
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Self::from_radians(degrees.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn tan(self) -> f64 {
        self.0.tan()
    }
}

/// A point of the parameter domain: longitude `theta`, latitude `psi`, both radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub theta: f64,
    pub psi: f64,
}

impl PolarPoint {
    pub fn new(theta: f64, psi: f64) -> Self {
        PolarPoint { theta, psi }
    }
}

/// A point (or vector) in image space.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CartesianPoint {
    pub const ORIGIN: CartesianPoint = CartesianPoint { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        CartesianPoint { x, y, z }
    }

    pub fn dot(self, rhs: Self) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Self) -> Self {
        CartesianPoint {
            x: self.y * rhs.z - self.z * rhs.y,
            y: self.z * rhs.x - self.x * rhs.z,
            z: self.x * rhs.y - self.y * rhs.x,
        }
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Unit vector in the same direction, or `None` when the length vanishes.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > 0.0 {
            Some(self * (1.0 / n))
        } else {
            None
        }
    }
}

impl Add for CartesianPoint {
    type Output = CartesianPoint;
    fn add(self, rhs: Self) -> Self {
        CartesianPoint::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for CartesianPoint {
    type Output = CartesianPoint;
    fn sub(self, rhs: Self) -> Self {
        CartesianPoint::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for CartesianPoint {
    type Output = CartesianPoint;
    fn mul(self, s: f64) -> Self {
        CartesianPoint::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for CartesianPoint {
    type Output = CartesianPoint;
    fn neg(self) -> Self {
        self * -1.0
    }
}

/// Map a domain point and polar radius to image space.
///
/// The result has |X| = rho for any (theta, psi).
pub fn to_cartesian(p: PolarPoint, rho: f64) -> CartesianPoint {
    let (sin_t, cos_t) = p.theta.sin_cos();
    let (sin_p, cos_p) = p.psi.sin_cos();
    CartesianPoint::new(rho * cos_p * cos_t, rho * cos_p * sin_t, rho * sin_p)
}
