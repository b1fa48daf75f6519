//! The planar logarithmic spiral `r = r0 e^{k theta}`.

/// Point of the spiral at polar angle `theta`: `(r cos theta, r sin theta)`
/// with `r = r0 e^{k theta}`.
pub fn spiral2d_point(r0: f64, k: f64, theta: f64) -> (f64, f64) {
    let r = r0 * (k * theta).exp();
    let (sin_t, cos_t) = theta.sin_cos();
    (r * cos_t, r * sin_t)
}

/// Analytic velocity d/dtheta of [`spiral2d_point`]:
/// `(r' cos theta - r sin theta, r' sin theta + r cos theta)` with `r' = k r`.
pub fn spiral2d_velocity(r0: f64, k: f64, theta: f64) -> (f64, f64) {
    let r = r0 * (k * theta).exp();
    let dr = k * r;
    let (sin_t, cos_t) = theta.sin_cos();
    (dr * cos_t - r * sin_t, dr * sin_t + r * cos_t)
}
