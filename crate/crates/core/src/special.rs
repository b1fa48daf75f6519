//! The latitude exponent function `h(psi)` and its parameter algebra.
//!
//! For `mu > 0` the general equiangular solution carries the exponent
//! `h(psi) = mu * integral_0^psi sqrt(a^2 - tan^2(lambda)) d lambda` on the
//! latitude interval `[-arctan a, arctan a]`, where `a` ties `mu` to the
//! characteristic angle via `tan(beta) = mu * sqrt(a^2 + 1)`.
//!
//! Three independent evaluations are provided:
//! - [`h_closed`]: the arctangent closed form (production path),
//! - [`h_quadrature`]: adaptive numeric integration (independent oracle),
//! - [`h_series`]: the degree-5 Maclaurin polynomial (small-`psi` check).

use crate::error::{Error, Result};
use crate::geom::Angle;
use std::f64::consts::FRAC_PI_2;

/// How close to `arctan a` a latitude may sit before the closed form
/// switches to its analytic endpoint limit, and before a latitude is
/// considered out of domain.
pub const ENDPOINT_TOL: f64 = 1e-9;

/// Parameters of the general equiangular exponent: growth rate `mu` and
/// domain parameter `a`, both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HParams {
    mu: f64,
    a: f64,
}

impl HParams {
    pub fn new(mu: f64, a: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::invalid("mu must be > 0"));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::invalid("a must be > 0"));
        }
        let tan_beta = mu * (a * a + 1.0).sqrt();
        if !tan_beta.is_finite() {
            return Err(Error::invalid("mu * sqrt(a^2 + 1) must be finite"));
        }
        Ok(HParams { mu, a })
    }

    pub fn mu(self) -> f64 {
        self.mu
    }

    pub fn a(self) -> f64 {
        self.a
    }

    /// The characteristic angle, `arctan(mu * sqrt(a^2 + 1))`.
    pub fn beta(self) -> Angle {
        beta_from_mu_a(self.mu, self.a)
    }

    /// The latitude interval on which `h` is defined.
    pub fn domain(self) -> DomainInterval {
        psi_domain(self.a)
    }

    /// Value of `h` at the upper domain endpoint:
    /// `mu * (pi/2) * (sqrt(a^2 + 1) - 1)`.
    pub fn endpoint_limit(self) -> f64 {
        self.mu * FRAC_PI_2 * ((self.a * self.a + 1.0).sqrt() - 1.0)
    }

    /// Membership test with the endpoint tolerance baked in.
    pub fn contains(self, psi: f64) -> bool {
        psi.is_finite() && psi.abs() <= self.a.atan() + ENDPOINT_TOL
    }

    fn check_domain(self, psi: f64) -> Result<()> {
        if self.contains(psi) {
            Ok(())
        } else {
            let lim = self.a.atan();
            Err(Error::Domain { psi, lo: -lim, hi: lim })
        }
    }
}

/// A symmetric latitude interval `[lo, hi]`, radians.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DomainInterval {
    pub lo: f64,
    pub hi: f64,
}

impl DomainInterval {
    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    /// The interval scaled by `factor` about its midpoint.
    pub fn shrunk(self, factor: f64) -> Self {
        let mid = 0.5 * (self.lo + self.hi);
        let half = 0.5 * (self.hi - self.lo) * factor;
        DomainInterval { lo: mid - half, hi: mid + half }
    }
}

/// The latitude interval `[-arctan a, arctan a]` for `a > 0`.
pub fn psi_domain(a: f64) -> DomainInterval {
    let hi = a.atan();
    DomainInterval { lo: -hi, hi }
}

/// Characteristic angle from `(mu, a)`: `arctan(mu * sqrt(a^2 + 1))`,
/// always in `(0, pi/2)`.
pub fn beta_from_mu_a(mu: f64, a: f64) -> Angle {
    Angle::from_radians((mu * (a * a + 1.0).sqrt()).atan())
}

/// Closed-form `h`:
///
/// ```text
/// h(psi) = mu [ sqrt(a^2+1) arctan( sqrt(a^2+1) tan(psi) / sqrt(a^2 - tan^2(psi)) )
///               - arctan( tan(psi) / sqrt(a^2 - tan^2(psi)) ) ]
/// ```
///
/// Odd in `psi`, zero at the origin, strictly increasing on the domain. At
/// the endpoints both arctangent arguments diverge; within [`ENDPOINT_TOL`]
/// of `arctan a` the finite limit `mu (pi/2) (sqrt(a^2+1) - 1)` is returned
/// instead of evaluating the singular expression.
pub fn h_closed(params: HParams, psi: f64) -> Result<f64> {
    params.check_domain(psi)?;
    let psi_max = params.a.atan();
    if psi.abs() >= psi_max - ENDPOINT_TOL {
        return Ok(params.endpoint_limit() * psi.signum());
    }
    let t = psi.tan();
    let root = (params.a * params.a - t * t).max(0.0).sqrt();
    let c = (params.a * params.a + 1.0).sqrt();
    Ok(params.mu * (c * (c * t / root).atan() - (t / root).atan()))
}

/// Quadrature `h`: `mu * integral_0^psi sqrt(a^2 - tan^2(lambda)) d lambda`,
/// evaluated by adaptive bisection with a 15-point Gauss rule per panel.
///
/// Serves as the independent oracle for [`h_closed`] and [`h_series`].
/// Absolute accuracy is driven to ~1e-12; the integrand has a square-root
/// zero at the domain endpoints, which the bisection handles by splitting
/// rather than by assuming smoothness.
pub fn h_quadrature(params: HParams, psi: f64) -> Result<f64> {
    params.check_domain(psi)?;
    let a2 = params.a * params.a;
    let integrand = |lambda: f64| {
        let t = lambda.tan();
        (a2 - t * t).max(0.0).sqrt()
    };
    // Integrate over [0, |psi|]; the integrand is even, so oddness is exact.
    let upper = psi.abs().min(params.a.atan());
    let value = adaptive_gauss(&integrand, 0.0, upper, PANEL_TOL, PANEL_BUDGET)?;
    Ok(params.mu * value * psi.signum())
}

/// Maclaurin `h`: the three displayed terms,
/// `(mu a) psi - mu/(6a) psi^3 - (mu/a)(1/15 + 1/(40 a^2)) psi^5`,
/// truncation order O(psi^7). No domain restriction; accuracy is only
/// guaranteed for small `|psi|`.
pub fn h_series(params: HParams, psi: f64) -> f64 {
    let (mu, a) = (params.mu, params.a);
    let psi2 = psi * psi;
    let c1 = mu * a;
    let c3 = -mu / (6.0 * a);
    let c5 = -(mu / a) * (1.0 / 15.0 + 1.0 / (40.0 * a * a));
    psi * (c1 + psi2 * (c3 + psi2 * c5))
}

/// The `mu = 0` convention: `h(psi) = psi tan(beta)`, valid for all `psi`
/// and any `beta != pi/2`.
pub fn h_mu_zero(beta: Angle, psi: f64) -> f64 {
    psi * beta.tan()
}

/// Per-panel acceptance tolerance of the adaptive splitter.
const PANEL_TOL: f64 = 1e-13;
/// Total panel budget before the quadrature gives up.
const PANEL_BUDGET: usize = 10_000;

/// 15-point Gauss-Legendre nodes on [-1, 1].
const GL15_NODES: [f64; 15] = [
    -0.98799251802048542849,
    -0.93727339240070590431,
    -0.84820658341042721620,
    -0.72441773136017004742,
    -0.57097217260853884754,
    -0.39415134707756336990,
    -0.20119409399743452230,
    0.0,
    0.20119409399743452230,
    0.39415134707756336990,
    0.57097217260853884754,
    0.72441773136017004742,
    0.84820658341042721620,
    0.93727339240070590431,
    0.98799251802048542849,
];

/// Weights matching [`GL15_NODES`].
const GL15_WEIGHTS: [f64; 15] = [
    0.030753241996117268355,
    0.070366047488108124709,
    0.107159220467171935010,
    0.139570677926154314450,
    0.166269205816993933550,
    0.186161000015562211030,
    0.198431485327111576460,
    0.202578241925561272880,
    0.198431485327111576460,
    0.186161000015562211030,
    0.166269205816993933550,
    0.139570677926154314450,
    0.107159220467171935010,
    0.070366047488108124709,
    0.030753241996117268355,
];

fn gauss15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut acc = 0.0;
    for (&x, &w) in GL15_NODES.iter().zip(GL15_WEIGHTS.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive interval-halving quadrature. A panel is accepted when splitting
/// it changes the estimate by at most `panel_tol`; otherwise both halves are
/// queued. Fails with [`Error::Convergence`] once `budget` panels have been
/// examined.
fn adaptive_gauss<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    panel_tol: f64,
    budget: usize,
) -> Result<f64> {
    if lo == hi {
        return Ok(0.0);
    }
    let mut total = 0.0;
    let mut panels = 0usize;
    let mut stack = vec![(lo, hi, gauss15(f, lo, hi))];
    while let Some((p_lo, p_hi, whole)) = stack.pop() {
        panels += 1;
        if panels > budget {
            return Err(Error::Convergence { budget });
        }
        let mid = 0.5 * (p_lo + p_hi);
        let left = gauss15(f, p_lo, mid);
        let right = gauss15(f, mid, p_hi);
        let refined = left + right;
        if (refined - whole).abs() <= panel_tol || mid <= p_lo || mid >= p_hi {
            total += refined;
        } else {
            stack.push((p_lo, mid, left));
            stack.push((mid, p_hi, right));
        }
    }
    Ok(total)
}
