//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "equisurf",
    version,
    about = "Equiangular and self-similar surfaces: mesh export, cross sections, \
             and numerical verification of their defining properties"
)]
pub struct Cli {
    /// Worker threads for grid evaluation (default: available parallelism).
    /// Results do not depend on the thread count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Interpret angle-valued arguments (half-angle, psi-c, beta, grid
    /// bounds) as degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tessellate a surface and write an OBJ or STL mesh.
    Generate(GenerateArgs),
    /// Check a property over a sampling grid and print a JSON report.
    /// Exits 0 on pass, 1 on fail.
    Verify(VerifyArgs),
    /// Print derived quantities (characteristic angle, latitude domain,
    /// classification) as JSON.
    Info(InfoArgs),
    /// Cut the surface with a plane through the z axis and write the
    /// section polylines as CSV.
    Section(SectionArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureName {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Planar logarithmic spiral r = r0 e^{k theta}.
    LogSpiral2d,
    /// rho = rho0 e^{mu theta + b psi}.
    SelfSimilar,
    /// Surface of revolution of a logarithmic spiral: rho = r0 e^{k psi}.
    Rotational,
    /// General equiangular solution rho = rho0 e^{+-mu theta +- h(psi)}.
    Equiangular,
    Sphere,
    Cone,
    Plane,
}

/// Which surface to operate on: a built-in figure recipe, an explicit
/// family, or a recipe with individual fields overridden.
#[derive(Args, Debug, Default)]
pub struct FamilySelection {
    /// Built-in parameter set reproducing one of the reference figures.
    #[arg(long, value_enum)]
    pub figure: Option<FigureName>,

    /// Surface family (required unless --figure is given).
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,

    /// Scale factor rho0 (self-similar, equiangular). Default 1.
    #[arg(long)]
    pub rho0: Option<f64>,

    /// Longitudinal growth rate mu.
    #[arg(long)]
    pub mu: Option<f64>,

    /// Latitudinal growth rate b (self-similar).
    #[arg(long)]
    pub b: Option<f64>,

    /// Domain parameter a (equiangular); tan(beta) = mu sqrt(a^2+1).
    #[arg(long)]
    pub a: Option<f64>,

    /// Sign of the theta exponent, +1 or -1 (equiangular). Default +1.
    #[arg(long, allow_hyphen_values = true)]
    pub sign_theta: Option<f64>,

    /// Sign of the h(psi) exponent, +1 or -1 (equiangular). Default +1.
    #[arg(long, allow_hyphen_values = true)]
    pub sign_psi: Option<f64>,

    /// Base radius r0 (log spirals). Default 1.
    #[arg(long)]
    pub r0: Option<f64>,

    /// Spiral growth rate k (log spirals).
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,

    /// Sphere radius.
    #[arg(long)]
    pub radius: Option<f64>,

    /// Cone half-angle, in (0, pi/2).
    #[arg(long)]
    pub half_angle: Option<f64>,

    /// Plane normal components.
    #[arg(long, allow_hyphen_values = true)]
    pub nx: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ny: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nz: Option<f64>,
}

/// Sampling lattice overrides; unset fields fall back to the recipe grid
/// or to family-appropriate defaults.
#[derive(Args, Debug, Default)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub psi_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub psi_max: Option<f64>,
    /// Lattice points along theta.
    #[arg(long)]
    pub n_theta: Option<usize>,
    /// Lattice points along psi.
    #[arg(long)]
    pub n_psi: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Stl,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub selection: FamilySelection,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Output path.
    #[arg(long)]
    pub out: std::path::PathBuf,

    /// Mesh file format.
    #[arg(long, value_enum)]
    pub format: MeshFormat,

    /// Merge coincident seam vertices (tolerance 1e-9) after tessellation.
    #[arg(long)]
    pub weld: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// Constancy of the normal-to-radius angle over the grid.
    Equiangular,
    /// Exponential shift law of the polar radius.
    SelfSimilar,
    /// Residual of the angle equation with the family's own beta.
    Pde,
    /// Level curve psi = C lies on a cone with log-linear radius.
    Conchospiral,
    /// cot(alpha) = k for the planar spiral.
    Spiral2d,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub selection: FamilySelection,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Property to check.
    #[arg(long, value_enum)]
    pub property: Property,

    /// Pass/fail tolerance for equiangular, self-similar, and pde checks.
    /// Conchospiral and spiral2d use their fixed tolerances.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Latitude of the level curve for the conchospiral check.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub psi_c: f64,

    /// Longitude shift for the self-similar check.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub dtheta: f64,

    /// Latitude shift for the self-similar check.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub dpsi: f64,

    /// Curve sample count for conchospiral and spiral2d checks.
    #[arg(long, default_value_t = 200)]
    pub n: usize,

    /// Characteristic angle for the pde check; defaults to the family's own.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
}

#[derive(Args, Debug)]
pub struct InfoArgs {
    #[command(flatten)]
    pub selection: FamilySelection,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneArg {
    /// The plane x = 0.
    X0,
    /// The plane y = 0.
    Y0,
}

#[derive(Args, Debug)]
pub struct SectionArgs {
    #[command(flatten)]
    pub selection: FamilySelection,

    /// Section plane.
    #[arg(long, value_enum)]
    pub plane: PlaneArg,

    /// Samples per section arm.
    #[arg(long, default_value_t = 400)]
    pub n: usize,

    /// Output CSV path.
    #[arg(long)]
    pub out: std::path::PathBuf,
}
