//! Built-in parameter sets reproducing the reference figures.
//!
//! Recipes are compiled in rather than read from a config file so that
//! the parameter sets cannot drift; explicit flags override individual
//! fields at resolution time.

use crate::args::FigureName;
use equisurf::{Grid, Sign, SurfaceFamily};
use std::f64::consts::{FRAC_PI_2, PI};

/// Default tessellation density: lattice points per 2 pi of longitude.
pub const THETA_POINTS_PER_TURN: usize = 128;
/// Default lattice points across the latitude range.
pub const PSI_POINTS: usize = 65;

/// Margin factor keeping latitude grids off singular endpoints (the poles
/// for open-interval figures, the domain boundary for the general
/// equiangular solution).
pub const PSI_MARGIN: f64 = 0.99;

#[derive(Debug, Clone)]
pub struct FigureRecipe {
    pub name: &'static str,
    pub family: SurfaceFamily,
    pub grid: Grid,
    /// Parameters that are implementation defaults rather than
    /// figure-specified values.
    pub default_note: Option<&'static str>,
}

/// Lattice points for a longitude range at the default density.
pub fn theta_points(theta_lo: f64, theta_hi: f64) -> usize {
    let turns = (theta_hi - theta_lo) / (2.0 * PI);
    ((THETA_POINTS_PER_TURN as f64 * turns).round() as usize).max(2) + 1
}

pub fn figure_recipe(name: FigureName) -> FigureRecipe {
    match name {
        // Surface of revolution of a logarithmic spiral, one nested shell
        // plus the start of the next: t in [-pi/2, 3pi/2]. The figure does
        // not specify r0 or k.
        FigureName::Fig2 => {
            let family = SurfaceFamily::rotational_spiral(1.0, 0.2).unwrap();
            let grid = Grid::new(
                0.0,
                2.0 * PI,
                -FRAC_PI_2,
                3.0 * FRAC_PI_2,
                theta_points(0.0, 2.0 * PI),
                PSI_POINTS,
            )
            .unwrap();
            FigureRecipe {
                name: "fig2",
                family,
                grid,
                default_note: Some("r0 = 1 and k = 0.2 are implementation defaults"),
            }
        }
        // Self-similar but not equiangular: mu = 0.5, b = 0.2 over one
        // full turn, latitudes strictly inside (-pi/2, pi/2).
        FigureName::Fig3 => {
            let family = SurfaceFamily::self_similar(1.0, 0.5, 0.2).unwrap();
            let grid = Grid::new(
                0.0,
                2.0 * PI,
                -FRAC_PI_2 * PSI_MARGIN,
                FRAC_PI_2 * PSI_MARGIN,
                theta_points(0.0, 2.0 * PI),
                PSI_POINTS,
            )
            .unwrap();
            FigureRecipe { name: "fig3", family, grid, default_note: None }
        }
        FigureName::Fig4 => equiangular_recipe("fig4", 0.1, 2.0),
        // fig4 with a widened latitude domain: a = 20.
        FigureName::Fig5 => equiangular_recipe("fig5", 0.1, 20.0),
        // fig4 with fast growth: mu = 1.
        FigureName::Fig6 => equiangular_recipe("fig6", 1.0, 2.0),
    }
}

/// Equiangular figures share rho0 = 1, theta in [0, 4 pi], and a latitude
/// grid at 0.99 of the domain.
fn equiangular_recipe(name: &'static str, mu: f64, a: f64) -> FigureRecipe {
    let family = SurfaceFamily::equiangular(1.0, mu, a, Sign::Plus, Sign::Plus).unwrap();
    let dom = equisurf::psi_domain(a).shrunk(PSI_MARGIN);
    let grid = Grid::new(
        0.0,
        4.0 * PI,
        dom.lo,
        dom.hi,
        theta_points(0.0, 4.0 * PI),
        PSI_POINTS,
    )
    .unwrap();
    FigureRecipe { name, family, grid, default_note: None }
}
