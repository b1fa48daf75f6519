//! Property checkers: equiangularity, self-similarity, the classification
//! dichotomy, conchospiral level curves, and the 2D spiral angle law.
//!
//! Each checker sweeps a sampling grid (or curve), reduces to summary
//! statistics, and returns a [`VerificationReport`] whose verdict is
//! `pass` exactly when `max_abs_deviation <= tolerance`.

use crate::error::{Error, Result};
use crate::family::{eval_rho, eval_rho_partials, SurfaceFamily};
use crate::frame::{angle_beta, surface_sample};
use crate::geom::{Angle, PolarPoint};
use crate::special::HParams;
use crate::spiral2d::{spiral2d_point, spiral2d_velocity};
use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

/// Cone-membership tolerance of the conchospiral check.
pub const CONE_RATIO_TOL: f64 = 1e-12;
/// Log-linearity (least-squares residual and slope) tolerance of the
/// conchospiral check.
pub const FIT_RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance on `cot(alpha) = k` for the 2D spiral check.
pub const SPIRAL2D_TOL: f64 = 1e-9;

/// A tensor-product sampling lattice, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub psi_lo: f64,
    pub psi_hi: f64,
    pub n_theta: usize,
    pub n_psi: usize,
}

impl Grid {
    pub fn new(
        theta_lo: f64,
        theta_hi: f64,
        psi_lo: f64,
        psi_hi: f64,
        n_theta: usize,
        n_psi: usize,
    ) -> Result<Self> {
        if !(theta_lo.is_finite() && theta_hi.is_finite() && theta_lo < theta_hi) {
            return Err(Error::invalid("grid requires theta_lo < theta_hi"));
        }
        if !(psi_lo.is_finite() && psi_hi.is_finite() && psi_lo < psi_hi) {
            return Err(Error::invalid("grid requires psi_lo < psi_hi"));
        }
        if n_theta < 2 || n_psi < 2 {
            return Err(Error::invalid("grid counts must be >= 2"));
        }
        Ok(Grid { theta_lo, theta_hi, psi_lo, psi_hi, n_theta, n_psi })
    }

    pub fn theta_values(&self) -> Vec<f64> {
        linspace(self.theta_lo, self.theta_hi, self.n_theta)
    }

    pub fn psi_values(&self) -> Vec<f64> {
        linspace(self.psi_lo, self.psi_hi, self.n_psi)
    }

    pub fn n_samples(&self) -> usize {
        self.n_theta * self.n_psi
    }

    /// The same lattice with the psi extent scaled by `factor` about its
    /// midpoint. Used to keep grids away from singular domain endpoints.
    pub fn shrunk_psi(&self, factor: f64) -> Grid {
        let mid = 0.5 * (self.psi_lo + self.psi_hi);
        let half = 0.5 * (self.psi_hi - self.psi_lo) * factor;
        Grid { psi_lo: mid - half, psi_hi: mid + half, ..*self }
    }
}

/// Evenly spaced values including both endpoints.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (hi - lo) / ((n - 1) as f64);
    let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    v[n - 1] = hi;
    v
}

/// Pass/fail outcome of a checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Summary statistics of one property sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerificationReport {
    pub property_name: String,
    pub n_samples: usize,
    pub mean: f64,
    pub max_abs_deviation: f64,
    pub rms: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub per_family_metadata: BTreeMap<String, f64>,
}

impl VerificationReport {
    fn from_stats(
        property_name: &str,
        n_samples: usize,
        mean: f64,
        max_abs_deviation: f64,
        rms: f64,
        tolerance: f64,
        per_family_metadata: BTreeMap<String, f64>,
    ) -> Self {
        let verdict = if max_abs_deviation <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            property_name: property_name.to_owned(),
            n_samples,
            mean,
            max_abs_deviation,
            rms,
            tolerance,
            verdict,
            per_family_metadata,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Parameter echo included in every report.
fn family_metadata(family: &SurfaceFamily) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    match *family {
        SurfaceFamily::LogSpiral2D { r0, k } => {
            m.insert("r0".into(), r0);
            m.insert("k".into(), k);
        }
        SurfaceFamily::SelfSimilar { rho0, mu, b } => {
            m.insert("rho0".into(), rho0);
            m.insert("mu".into(), mu);
            m.insert("b".into(), b);
        }
        SurfaceFamily::RotationalSpiral { r0, k } => {
            m.insert("r0".into(), r0);
            m.insert("k".into(), k);
        }
        SurfaceFamily::EquiangularGeneral { rho0, mu, a, sign_theta, sign_psi } => {
            m.insert("rho0".into(), rho0);
            m.insert("mu".into(), mu);
            m.insert("a".into(), a);
            m.insert("sign_theta".into(), sign_theta.factor());
            m.insert("sign_psi".into(), sign_psi.factor());
        }
        SurfaceFamily::Sphere { radius } => {
            m.insert("radius".into(), radius);
        }
        SurfaceFamily::Cone { half_angle } => {
            m.insert("half_angle".into(), half_angle);
        }
        SurfaceFamily::PlaneThroughOrigin { unit_normal } => {
            m.insert("normal_x".into(), unit_normal.x);
            m.insert("normal_y".into(), unit_normal.y);
            m.insert("normal_z".into(), unit_normal.z);
        }
    }
    m
}

/// Normalized residual of the equiangularity equation
/// `rho_theta^2 + rho_psi^2 cos^2 psi = rho^2 cos^2 psi tan^2 beta`
/// at one point: `(lhs - rhs) / rhs` when `tan beta != 0`, otherwise the
/// raw left-hand side over `rho^2`. Zero for exact solutions.
pub fn pde_residual(family: &SurfaceFamily, p: PolarPoint, beta: Angle) -> Result<f64> {
    if beta.radians() == FRAC_PI_2 {
        return Err(Error::invalid("beta must differ from pi/2"));
    }
    let cos_p = p.psi.cos();
    if cos_p == 0.0 {
        return Err(Error::FrameDomain { psi: p.psi });
    }
    let rho = eval_rho(family, p)?;
    let (rho_theta, rho_psi) = eval_rho_partials(family, p)?;
    let tan_b = beta.tan();
    let lhs = rho_theta * rho_theta + rho_psi * rho_psi * cos_p * cos_p;
    let rhs = rho * rho * cos_p * cos_p * tan_b * tan_b;
    if rhs != 0.0 {
        Ok((lhs - rhs) / rhs)
    } else {
        Ok(lhs / (rho * rho))
    }
}

/// Sweep [`pde_residual`] over a grid. The verdict compares the worst
/// absolute normalized residual against `tol`.
pub fn check_pde_residual(
    family: &SurfaceFamily,
    grid: &Grid,
    beta: Angle,
    tol: f64,
) -> Result<VerificationReport> {
    let mut sum = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut sq_sum = 0.0f64;
    let n = grid.n_samples();
    for &theta in &grid.theta_values() {
        for &psi in &grid.psi_values() {
            let r = pde_residual(family, PolarPoint::new(theta, psi), beta)?;
            sum += r;
            max_abs = max_abs.max(r.abs());
            sq_sum += r * r;
        }
    }
    let mut meta = family_metadata(family);
    meta.insert("beta_radians".into(), beta.radians());
    Ok(VerificationReport::from_stats(
        "pde_residual",
        n,
        sum / n as f64,
        max_abs,
        (sq_sum / n as f64).sqrt(),
        tol,
        meta,
    ))
}

/// Measure the normal-to-radius angle over a grid. The report's `mean` is
/// the angle estimate; the verdict compares the worst deviation from that
/// mean against `tol`.
pub fn check_equiangular(
    family: &SurfaceFamily,
    grid: &Grid,
    tol: f64,
) -> Result<VerificationReport> {
    let mut angles = Vec::with_capacity(grid.n_samples());
    for &theta in &grid.theta_values() {
        for &psi in &grid.psi_values() {
            let sample = surface_sample(family, PolarPoint::new(theta, psi))?;
            angles.push(angle_beta(&sample)?.radians());
        }
    }
    let n = angles.len();
    let mean = angles.iter().sum::<f64>() / n as f64;
    let mut max_dev = 0.0f64;
    let mut sq_sum = 0.0f64;
    for &a in &angles {
        let d = (a - mean).abs();
        max_dev = max_dev.max(d);
        sq_sum += d * d;
    }
    let mut meta = family_metadata(family);
    meta.insert("beta_estimate".into(), mean);
    Ok(VerificationReport::from_stats(
        "equiangular",
        n,
        mean,
        max_dev,
        (sq_sum / n as f64).sqrt(),
        tol,
        meta,
    ))
}

/// Check the exponential shift law: for each `(d_theta, d_psi)` the ratio
/// `rho(p + shift) / rho(p)` must be the same at every grid point. The
/// report's deviation is the worst relative spread of any shift's ratios;
/// per-shift proportionality constants land in the metadata as `ratio_i`.
pub fn check_self_similar(
    family: &SurfaceFamily,
    shifts: &[(f64, f64)],
    grid: &Grid,
    tol: f64,
) -> Result<VerificationReport> {
    if shifts.is_empty() {
        return Err(Error::invalid("at least one shift is required"));
    }
    let thetas = grid.theta_values();
    let psis = grid.psi_values();
    let mut meta = family_metadata(family);
    let mut worst_spread = 0.0f64;
    let mut sq_sum = 0.0f64;
    let mut mean_of_means = 0.0f64;
    let mut n_total = 0usize;

    for (i, &(d_theta, d_psi)) in shifts.iter().enumerate() {
        let mut ratios = Vec::with_capacity(grid.n_samples());
        for &theta in &thetas {
            for &psi in &psis {
                let here = eval_rho(family, PolarPoint::new(theta, psi))?;
                let there = eval_rho(family, PolarPoint::new(theta + d_theta, psi + d_psi))?;
                ratios.push(there / here);
            }
        }
        let n = ratios.len();
        let mean = ratios.iter().sum::<f64>() / n as f64;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &r in &ratios {
            lo = lo.min(r);
            hi = hi.max(r);
            let d = (r - mean) / mean;
            sq_sum += d * d;
        }
        let spread = (hi - lo) / mean;
        worst_spread = worst_spread.max(spread);
        mean_of_means += mean;
        n_total += n;
        meta.insert(format!("dtheta_{i}"), d_theta);
        meta.insert(format!("dpsi_{i}"), d_psi);
        meta.insert(format!("ratio_{i}"), mean);
    }
    mean_of_means /= shifts.len() as f64;

    Ok(VerificationReport::from_stats(
        "self_similar",
        n_total,
        mean_of_means,
        worst_spread,
        (sq_sum / n_total as f64).sqrt(),
        tol,
        meta,
    ))
}

/// Outcome of the exact self-similar/equiangular dichotomy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelfSimilarClass {
    /// `mu = 0`: the surface is equiangular with `beta = arctan|b|`.
    Equiangular { beta: Angle },
    /// `mu != 0`: no constant angle exists. The two latitudes witness the
    /// failure: no single `beta` can satisfy the angle equation at both.
    NotEquiangular { witness_psi: [f64; 2] },
}

/// Classify a self-similar surface `rho = rho0 e^{mu theta + b psi}`.
///
/// The dichotomy is exact in `mu`: callers doing numeric classification
/// must threshold before calling.
pub fn classify_self_similar_equiangular(mu: f64, b: f64) -> SelfSimilarClass {
    if mu == 0.0 {
        SelfSimilarClass::Equiangular { beta: Angle::from_radians(b.abs().atan()) }
    } else {
        // Substituting the family into the angle equation forces
        // mu^2 = (tan^2 beta - b^2) cos^2 psi; a beta fitted at psi = 0
        // cannot also work at psi = 1 once mu != 0.
        SelfSimilarClass::NotEquiangular { witness_psi: [0.0, 1.0] }
    }
}

/// Verify that a latitude level curve `psi = psi_c` of the general
/// equiangular surface is a conchospiral: it lies on the cone
/// `z / sqrt(x^2+y^2) = tan(psi_c)` and its cylindrical log-radius is an
/// affine function of `theta` with slope `sign_theta * mu`.
///
/// The combined deviation folds the cone check (tolerance
/// [`CONE_RATIO_TOL`]) and the fit checks (tolerance [`FIT_RESIDUAL_TOL`])
/// into a single number on the fit scale, so the usual
/// `max_abs_deviation <= tolerance` verdict covers both. Raw values are
/// reported in the metadata.
pub fn check_conchospiral_level_curve(
    family: &SurfaceFamily,
    psi_c: f64,
    thetas: &[f64],
) -> Result<VerificationReport> {
    let SurfaceFamily::EquiangularGeneral { mu, a, sign_theta, .. } = *family else {
        return Err(Error::invalid(
            "conchospiral level curves require the equiangular family",
        ));
    };
    let params = HParams::new(mu, a).expect("validated at construction");
    if !params.contains(psi_c) {
        let lim = a.atan();
        return Err(Error::Domain { psi: psi_c, lo: -lim, hi: lim });
    }
    if thetas.len() < 2 {
        return Err(Error::invalid("need at least 2 theta samples"));
    }

    let expected_ratio = psi_c.tan();
    let expected_slope = sign_theta.factor() * mu;
    let n = thetas.len();

    let mut log_radii = Vec::with_capacity(n);
    let mut cone_dev = 0.0f64;
    for &theta in thetas {
        let p = PolarPoint::new(theta, psi_c);
        let rho = eval_rho(family, p)?;
        let x = crate::geom::to_cartesian(p, rho);
        let r_cyl = x.x.hypot(x.y);
        cone_dev = cone_dev.max((x.z / r_cyl - expected_ratio).abs());
        log_radii.push(r_cyl.ln());
    }

    let (slope, intercept) = fit_line(thetas, &log_radii)?;
    let mut fit_residual = 0.0f64;
    let mut sq_sum = 0.0f64;
    for (&theta, &lr) in thetas.iter().zip(&log_radii) {
        let d = lr - (intercept + slope * theta);
        fit_residual = fit_residual.max(d.abs());
        sq_sum += d * d;
    }
    let slope_dev = (slope - expected_slope).abs();

    let combined = (cone_dev * (FIT_RESIDUAL_TOL / CONE_RATIO_TOL))
        .max(fit_residual)
        .max(slope_dev);

    let mut meta = family_metadata(family);
    meta.insert("psi_c".into(), psi_c);
    meta.insert("cone_ratio".into(), expected_ratio);
    meta.insert("cone_ratio_max_dev".into(), cone_dev);
    meta.insert("fit_slope".into(), slope);
    meta.insert("fit_intercept".into(), intercept);
    meta.insert("fit_residual".into(), fit_residual);
    meta.insert("slope_expected".into(), expected_slope);

    Ok(VerificationReport::from_stats(
        "conchospiral",
        n,
        slope,
        combined,
        (sq_sum / n as f64).sqrt(),
        FIT_RESIDUAL_TOL,
        meta,
    ))
}

/// Ordinary unweighted least squares of `y` on `x`.
fn fit_line(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mean_x) * (xi - mean_x);
        sxy += (xi - mean_x) * (yi - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::invalid("theta samples must not all coincide"));
    }
    let slope = sxy / sxx;
    Ok((slope, mean_y - slope * mean_x))
}

/// Verify `cot(alpha) = k` for the planar spiral: at each `theta` the angle
/// `alpha` between the position and the analytic velocity is measured and
/// its cotangent compared against `k`. The report's `mean` is the mean
/// measured cotangent.
pub fn spiral2d_equiangular_check(r0: f64, k: f64, thetas: &[f64]) -> VerificationReport {
    let n = thetas.len();
    let mut cots = Vec::with_capacity(n);
    let mut alpha_sum = 0.0f64;
    for &theta in thetas {
        let (px, py) = spiral2d_point(r0, k, theta);
        let (vx, vy) = spiral2d_velocity(r0, k, theta);
        let dot = px * vx + py * vy;
        let cross = px * vy - py * vx;
        cots.push(dot / cross.abs());
        alpha_sum += cross.abs().atan2(dot);
    }
    let mean = cots.iter().sum::<f64>() / n as f64;
    let mut max_dev = 0.0f64;
    let mut sq_sum = 0.0f64;
    for &c in &cots {
        let d = (c - k).abs();
        max_dev = max_dev.max(d);
        sq_sum += d * d;
    }
    let mut meta = BTreeMap::new();
    meta.insert("r0".into(), r0);
    meta.insert("k".into(), k);
    meta.insert("alpha_mean".into(), alpha_sum / n as f64);

    VerificationReport::from_stats(
        "spiral2d_equiangular",
        n,
        mean,
        max_dev,
        (sq_sum / n as f64).sqrt(),
        SPIRAL2D_TOL,
        meta,
    )
}
