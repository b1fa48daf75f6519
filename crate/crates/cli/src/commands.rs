//! Subcommand implementations and the flag-to-library resolution layer.

use crate::args::{
    FamilyKind, FamilySelection, GenerateArgs, GridArgs, InfoArgs, MeshFormat, PlaneArg,
    Property, SectionArgs, VerifyArgs,
};
use crate::recipes::{figure_recipe, theta_points, PSI_MARGIN, PSI_POINTS};
use equisurf::verify::linspace;
use equisurf::{
    check_conchospiral_level_curve, check_equiangular, check_pde_residual, check_self_similar,
    classify_self_similar_equiangular, cross_section, psi_domain, spiral2d_equiangular_check,
    tessellate, Angle, CartesianPoint, Error, Grid, SectionPlane, SelfSimilarClass, Sign,
    SurfaceFamily, VerificationReport,
};
use serde_json::{json, Map, Value};
use std::f64::consts::{FRAC_PI_2, PI};

/// Failure categories mapped to the exit-code contract: usage errors exit
/// with 2, I/O errors with 3.
#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Io(String),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(io) => CmdError::Io(io.to_string()),
            other => CmdError::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn angle_in(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

struct Resolved {
    family: SurfaceFamily,
    recipe_grid: Option<Grid>,
    figure: Option<&'static str>,
    note: Option<&'static str>,
}

fn require(value: Option<f64>, msg: &str) -> Result<f64, CmdError> {
    value.ok_or_else(|| usage(msg))
}

fn sign_flag(value: Option<f64>) -> Result<Sign, CmdError> {
    match value {
        None => Ok(Sign::Plus),
        Some(v) => Sign::from_f64(v).map_err(CmdError::from),
    }
}

/// Build the surface from the selection flags. A `--figure` recipe seeds
/// the parameters; explicit flags override individual fields.
fn resolve_family(sel: &FamilySelection, degrees: bool) -> Result<Resolved, CmdError> {
    if let Some(fig) = sel.figure {
        let recipe = figure_recipe(fig);
        let family = apply_overrides(recipe.family, sel, degrees)?;
        return Ok(Resolved {
            family,
            recipe_grid: Some(recipe.grid),
            note: recipe.default_note,
        });
    }
    let kind = sel
        .family
        .ok_or_else(|| usage("either --figure or --family is required"))?;
    let family = build_family(kind, sel, degrees)?;
    Ok(Resolved { family, recipe_grid: None, note: None })
}

fn build_family(
    kind: FamilyKind,
    sel: &FamilySelection,
    degrees: bool,
) -> Result<SurfaceFamily, CmdError> {
    let rho0 = sel.rho0.unwrap_or(1.0);
    let r0 = sel.r0.unwrap_or(1.0);
    match kind {
        FamilyKind::LogSpiral2d => {
            let k = require(sel.k, "log-spiral-2d requires --k")?;
            Ok(SurfaceFamily::log_spiral_2d(r0, k)?)
        }
        FamilyKind::SelfSimilar => {
            let mu = require(sel.mu, "self-similar requires --mu")?;
            let b = require(sel.b, "self-similar requires --b")?;
            Ok(SurfaceFamily::self_similar(rho0, mu, b)?)
        }
        FamilyKind::Rotational => {
            let k = require(sel.k, "rotational requires --k")?;
            Ok(SurfaceFamily::rotational_spiral(r0, k)?)
        }
        FamilyKind::Equiangular => {
            let mu = require(sel.mu, "equiangular requires --mu")?;
            if !(mu > 0.0) {
                return Err(usage("mu must be > 0"));
            }
            let a = require(sel.a, "equiangular requires --a")?;
            Ok(SurfaceFamily::equiangular(
                rho0,
                mu,
                a,
                sign_flag(sel.sign_theta)?,
                sign_flag(sel.sign_psi)?,
            )?)
        }
        FamilyKind::Sphere => {
            let radius = require(sel.radius, "sphere requires --radius")?;
            Ok(SurfaceFamily::sphere(radius)?)
        }
        FamilyKind::Cone => {
            let half_angle = require(sel.half_angle, "cone requires --half-angle")?;
            Ok(SurfaceFamily::cone(angle_in(half_angle, degrees))?)
        }
        FamilyKind::Plane => {
            let normal = CartesianPoint::new(
                sel.nx.unwrap_or(0.0),
                sel.ny.unwrap_or(0.0),
                sel.nz.unwrap_or(1.0),
            );
            Ok(SurfaceFamily::plane_through_origin(normal)?)
        }
    }
}

fn apply_overrides(
    base: SurfaceFamily,
    sel: &FamilySelection,
    degrees: bool,
) -> Result<SurfaceFamily, CmdError> {
    match base {
        SurfaceFamily::LogSpiral2D { r0, k } => Ok(SurfaceFamily::log_spiral_2d(
            sel.r0.unwrap_or(r0),
            sel.k.unwrap_or(k),
        )?),
        SurfaceFamily::SelfSimilar { rho0, mu, b } => Ok(SurfaceFamily::self_similar(
            sel.rho0.unwrap_or(rho0),
            sel.mu.unwrap_or(mu),
            sel.b.unwrap_or(b),
        )?),
        SurfaceFamily::RotationalSpiral { r0, k } => Ok(SurfaceFamily::rotational_spiral(
            sel.r0.unwrap_or(r0),
            sel.k.unwrap_or(k),
        )?),
        SurfaceFamily::EquiangularGeneral { rho0, mu, a, sign_theta, sign_psi } => {
            let mu = sel.mu.unwrap_or(mu);
            if !(mu > 0.0) {
                return Err(usage("mu must be > 0"));
            }
            let st = match sel.sign_theta {
                None => sign_theta,
                Some(v) => Sign::from_f64(v)?,
            };
            let sp = match sel.sign_psi {
                None => sign_psi,
                Some(v) => Sign::from_f64(v)?,
            };
            Ok(SurfaceFamily::equiangular(
                sel.rho0.unwrap_or(rho0),
                mu,
                sel.a.unwrap_or(a),
                st,
                sp,
            )?)
        }
        SurfaceFamily::Sphere { radius } => {
            Ok(SurfaceFamily::sphere(sel.radius.unwrap_or(radius))?)
        }
        SurfaceFamily::Cone { half_angle } => Ok(SurfaceFamily::cone(
            sel.half_angle.map(|h| angle_in(h, degrees)).unwrap_or(half_angle),
        )?),
        SurfaceFamily::PlaneThroughOrigin { unit_normal } => {
            Ok(SurfaceFamily::plane_through_origin(CartesianPoint::new(
                sel.nx.unwrap_or(unit_normal.x),
                sel.ny.unwrap_or(unit_normal.y),
                sel.nz.unwrap_or(unit_normal.z),
            ))?)
        }
    }
}

/// Family-appropriate sampling window when no recipe grid applies.
fn default_grid(family: &SurfaceFamily) -> Result<Grid, CmdError> {
    let (theta_lo, theta_hi) = match family {
        SurfaceFamily::LogSpiral2D { .. } => (0.0, 4.0 * PI),
        _ => (0.0, 2.0 * PI),
    };
    let (psi_lo, psi_hi) = match family {
        SurfaceFamily::EquiangularGeneral { a, .. } => {
            let dom = psi_domain(*a).shrunk(PSI_MARGIN);
            (dom.lo, dom.hi)
        }
        SurfaceFamily::Sphere { .. } => (-FRAC_PI_2, FRAC_PI_2),
        SurfaceFamily::Cone { .. } | SurfaceFamily::PlaneThroughOrigin { .. } => {
            return Err(usage(format!("{} has no polar representation", family.name())))
        }
        _ => (-FRAC_PI_2 * PSI_MARGIN, FRAC_PI_2 * PSI_MARGIN),
    };
    Ok(Grid::new(
        theta_lo,
        theta_hi,
        psi_lo,
        psi_hi,
        theta_points(theta_lo, theta_hi),
        PSI_POINTS,
    )?)
}

fn resolve_grid(
    args: &GridArgs,
    resolved: &Resolved,
    degrees: bool,
) -> Result<Grid, CmdError> {
    let base = match resolved.recipe_grid {
        Some(g) => g,
        None => default_grid(&resolved.family)?,
    };
    let theta_lo = args.theta_min.map(|v| angle_in(v, degrees)).unwrap_or(base.theta_lo);
    let theta_hi = args.theta_max.map(|v| angle_in(v, degrees)).unwrap_or(base.theta_hi);
    let psi_lo = args.psi_min.map(|v| angle_in(v, degrees)).unwrap_or(base.psi_lo);
    let psi_hi = args.psi_max.map(|v| angle_in(v, degrees)).unwrap_or(base.psi_hi);
    let n_theta = args.n_theta.unwrap_or(base.n_theta);
    let n_psi = args.n_psi.unwrap_or(base.n_psi);
    Ok(Grid::new(theta_lo, theta_hi, psi_lo, psi_hi, n_theta, n_psi)?)
}

pub fn cmd_generate(args: &GenerateArgs, degrees: bool) -> Result<(), CmdError> {
    let resolved = resolve_family(&args.selection, degrees)?;
    let grid = resolve_grid(&args.grid, &resolved, degrees)?;
    let mut mesh = tessellate(&resolved.family, &grid)?;
    if args.weld {
        mesh = mesh.weld(1e-9);
    }

    let mut buffer = Vec::new();
    match args.format {
        MeshFormat::Obj => equisurf::export::write_obj(&mesh, &mut buffer)?,
        MeshFormat::Stl => equisurf::export::write_stl(&mesh, &mut buffer)?,
    }
    std::fs::write(&args.out, &buffer).map_err(|e| {
        CmdError::Io(format!("cannot write {}: {e}", args.out.display()))
    })?;

    let (lo, hi) = mesh.bounding_box().expect("non-empty mesh");
    println!(
        "wrote {}: {} vertices, {} faces, bbox x [{:.6}, {:.6}] y [{:.6}, {:.6}] z [{:.6}, {:.6}]",
        args.out.display(),
        mesh.vertex_count(),
        mesh.face_count(),
        lo.x,
        hi.x,
        lo.y,
        hi.y,
        lo.z,
        hi.z,
    );
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, degrees: bool) -> Result<bool, CmdError> {
    let resolved = resolve_family(&args.selection, degrees)?;
    let report = run_property(args, &resolved, degrees)?;
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(report.passed())
}

fn run_property(
    args: &VerifyArgs,
    resolved: &Resolved,
    degrees: bool,
) -> Result<VerificationReport, CmdError> {
    let family = &resolved.family;
    match args.property {
        Property::Equiangular => {
            let grid = resolve_grid(&args.grid, resolved, degrees)?;
            Ok(check_equiangular(family, &grid, args.tol.unwrap_or(1e-7))?)
        }
        Property::SelfSimilar => {
            let grid = resolve_grid(&args.grid, resolved, degrees)?;
            let shift = (angle_in(args.dtheta, degrees), angle_in(args.dpsi, degrees));
            Ok(check_self_similar(family, &[shift], &grid, args.tol.unwrap_or(1e-9))?)
        }
        Property::Pde => {
            let grid = resolve_grid(&args.grid, resolved, degrees)?;
            let beta = match args.beta {
                Some(b) => Angle::from_radians(angle_in(b, degrees)),
                None => family.characteristic_beta().ok_or_else(|| {
                    usage(format!(
                        "{} has no characteristic angle; pass --beta",
                        family.name()
                    ))
                })?,
            };
            Ok(check_pde_residual(family, &grid, beta, args.tol.unwrap_or(1e-9))?)
        }
        Property::Conchospiral => {
            let grid = resolve_grid(&args.grid, resolved, degrees)?;
            if args.n < 2 {
                return Err(usage("need at least 2 samples"));
            }
            let thetas = linspace(grid.theta_lo, grid.theta_hi, args.n);
            let psi_c = angle_in(args.psi_c, degrees);
            Ok(check_conchospiral_level_curve(family, psi_c, &thetas)?)
        }
        Property::Spiral2d => {
            let SurfaceFamily::LogSpiral2D { r0, k } = *family else {
                return Err(usage("spiral2d check requires --family log-spiral-2d"));
            };
            if args.n < 2 {
                return Err(usage("need at least 2 samples"));
            }
            let grid = resolve_grid(&args.grid, resolved, degrees)?;
            let thetas = linspace(grid.theta_lo, grid.theta_hi, args.n);
            Ok(spiral2d_equiangular_check(r0, k, &thetas))
        }
    }
}

pub fn cmd_info(args: &InfoArgs, degrees: bool) -> Result<(), CmdError> {
    let resolved = resolve_family(&args.selection, degrees)?;
    let family = &resolved.family;
    let mut out = Map::new();
    out.insert("family".into(), json!(family.name()));

    match *family {
        SurfaceFamily::LogSpiral2D { r0, k } => {
            out.insert("r0".into(), json!(r0));
            out.insert("k".into(), json!(k));
            // Constant angle between radius and tangent: cot(alpha) = k.
            let alpha = 1.0f64.atan2(k);
            out.insert("alpha_radians".into(), json!(alpha));
            out.insert("alpha_degrees".into(), json!(alpha.to_degrees()));
            out.insert("classification".into(), json!("equiangular"));
        }
        SurfaceFamily::SelfSimilar { rho0, mu, b } => {
            out.insert("rho0".into(), json!(rho0));
            out.insert("mu".into(), json!(mu));
            out.insert("b".into(), json!(b));
            match classify_self_similar_equiangular(mu, b) {
                SelfSimilarClass::Equiangular { beta } => {
                    out.insert("classification".into(), json!("equiangular"));
                    insert_beta(&mut out, beta);
                }
                SelfSimilarClass::NotEquiangular { witness_psi } => {
                    out.insert("classification".into(), json!("not_equiangular"));
                    out.insert("witness_psi_0".into(), json!(witness_psi[0]));
                    out.insert("witness_psi_1".into(), json!(witness_psi[1]));
                }
            }
        }
        SurfaceFamily::RotationalSpiral { r0, k } => {
            out.insert("r0".into(), json!(r0));
            out.insert("k".into(), json!(k));
            out.insert("classification".into(), json!("equiangular"));
            insert_beta(&mut out, family.characteristic_beta().expect("rotational"));
        }
        SurfaceFamily::EquiangularGeneral { rho0, mu, a, sign_theta, sign_psi } => {
            out.insert("rho0".into(), json!(rho0));
            out.insert("mu".into(), json!(mu));
            out.insert("a".into(), json!(a));
            out.insert("sign_theta".into(), json!(sign_theta.factor()));
            out.insert("sign_psi".into(), json!(sign_psi.factor()));
            out.insert("classification".into(), json!("equiangular"));
            insert_beta(&mut out, family.characteristic_beta().expect("equiangular"));
            let dom = psi_domain(a);
            out.insert("psi_lo".into(), json!(dom.lo));
            out.insert("psi_hi".into(), json!(dom.hi));
            let params = equisurf::HParams::new(mu, a).expect("validated");
            out.insert("h_endpoint_limit".into(), json!(params.endpoint_limit()));
        }
        SurfaceFamily::Sphere { radius } => {
            out.insert("radius".into(), json!(radius));
            out.insert("classification".into(), json!("equiangular"));
            insert_beta(&mut out, Angle::ZERO);
        }
        SurfaceFamily::Cone { half_angle } => {
            out.insert("half_angle".into(), json!(half_angle));
            out.insert("classification".into(), json!("equiangular"));
            out.insert("polar_representable".into(), json!(false));
            insert_beta(&mut out, Angle::from_radians(FRAC_PI_2));
        }
        SurfaceFamily::PlaneThroughOrigin { unit_normal } => {
            out.insert("normal_x".into(), json!(unit_normal.x));
            out.insert("normal_y".into(), json!(unit_normal.y));
            out.insert("normal_z".into(), json!(unit_normal.z));
            out.insert("classification".into(), json!("equiangular"));
            out.insert("polar_representable".into(), json!(false));
            insert_beta(&mut out, Angle::from_radians(FRAC_PI_2));
        }
    }

    if let Some(note) = resolved.note {
        out.insert("parameter_note".into(), json!(note));
    }
    println!("{}", serde_json::to_string(&Value::Object(out)).expect("info serializes"));
    Ok(())
}

fn insert_beta(out: &mut Map<String, Value>, beta: Angle) {
    out.insert("beta_radians".into(), json!(beta.radians()));
    out.insert("beta_degrees".into(), json!(beta.degrees()));
}

pub fn cmd_section(args: &SectionArgs, degrees: bool) -> Result<(), CmdError> {
    let resolved = resolve_family(&args.selection, degrees)?;
    let plane = match args.plane {
        PlaneArg::X0 => SectionPlane::XZero,
        PlaneArg::Y0 => SectionPlane::YZero,
    };
    let polylines = cross_section(&resolved.family, plane, args.n)?;

    let mut buffer = Vec::new();
    equisurf::export::write_polylines_csv(&polylines, &mut buffer)?;
    std::fs::write(&args.out, &buffer).map_err(|e| {
        CmdError::Io(format!("cannot write {}: {e}", args.out.display()))
    })?;

    let total: usize = polylines.iter().map(|p| p.len()).sum();
    println!(
        "wrote {}: {} polylines, {} points",
        args.out.display(),
        polylines.len(),
        total
    );
    Ok(())
}
