//! Error types shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by surface evaluation, verification, and export.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A coordinate left the domain on which the surface is defined.
    #[error("psi = {psi} outside domain [{lo}, {hi}]")]
    Domain { psi: f64, lo: f64, hi: f64 },

    /// The frame is undefined where the latitude circle degenerates.
    #[error("frame undefined at psi = {psi}: cos(psi) <= 0")]
    FrameDomain { psi: f64 },

    /// The family has no polar equation rho(theta, psi).
    #[error("{0} has no polar representation")]
    UnsupportedFamily(&'static str),

    /// |N| vanished, so no angle can be measured.
    #[error("degenerate frame at theta = {theta}, psi = {psi}: |N| = 0")]
    DegenerateFrame { theta: f64, psi: f64 },

    /// Adaptive quadrature exhausted its panel budget.
    #[error("quadrature did not converge within {budget} panels")]
    Convergence { budget: usize },

    /// A constructor or operation was handed an out-of-bounds parameter.
    /// The message names the violated bound, e.g. "mu must be > 0".
    #[error("{0}")]
    InvalidParameter(String),

    /// Tessellation hit a cell that collapses to a point (rho = 0).
    #[error("mesh cell degenerates at theta = {theta}, psi = {psi}: rho = 0")]
    DegenerateCell { theta: f64, psi: f64 },

    /// A writer was handed a mesh with no faces.
    #[error("mesh has no faces")]
    EmptyMesh,

    /// Cross sections support only planes containing the z axis.
    #[error("unsupported section plane: {0}")]
    UnsupportedPlane(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
