//! Tessellation of polar surfaces into indexed triangle meshes.

use crate::error::{Error, Result};
use crate::family::{eval_rho, SurfaceFamily};
use crate::frame::surface_sample;
use crate::geom::{to_cartesian, CartesianPoint, PolarPoint};
use crate::verify::Grid;
use rayon::prelude::*;
use std::collections::HashMap;

/// Faces with |cross| below this fraction of the squared local scale are
/// treated as zero-area (pole rows collapse to a point) and dropped.
const DEGENERATE_AREA_REL: f64 = 1e-12;

/// An indexed triangle mesh with per-vertex unit normals.
///
/// Faces wind counterclockwise when seen from the side the normal points
/// to; vertex normals are parallel to `X_theta x X_psi` where the frame
/// exists and are area-weighted face-normal averages elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<CartesianPoint>,
    pub normals: Vec<CartesianPoint>,
    pub faces: Vec<[u32; 3]>,
}

impl TriangleMesh {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Axis-aligned bounds as `(min, max)`, or `None` for an empty mesh.
    pub fn bounding_box(&self) -> Option<(CartesianPoint, CartesianPoint)> {
        let first = *self.vertices.first()?;
        let mut lo = first;
        let mut hi = first;
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            lo.z = lo.z.min(v.z);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
            hi.z = hi.z.max(v.z);
        }
        Some((lo, hi))
    }

    /// Unit normal of one face from its winding, `None` if the face has
    /// zero area.
    pub fn face_normal(&self, face: [u32; 3]) -> Option<CartesianPoint> {
        let a = self.vertices[face[0] as usize];
        let b = self.vertices[face[1] as usize];
        let c = self.vertices[face[2] as usize];
        (b - a).cross(c - a).normalized()
    }

    /// Merge vertices closer than `tol` (intended for grid seams, e.g. the
    /// theta = 0 and theta = 2 pi columns of a closed sweep). Faces that
    /// collapse under the merge are dropped; merged normals are re-averaged.
    pub fn weld(&self, tol: f64) -> TriangleMesh {
        assert!(tol > 0.0, "weld tolerance must be positive");
        let inv = 1.0 / tol;
        let key_of = |v: CartesianPoint| -> (i64, i64, i64) {
            ((v.x * inv).floor() as i64, (v.y * inv).floor() as i64, (v.z * inv).floor() as i64)
        };

        let mut buckets: HashMap<(i64, i64, i64), Vec<u32>> = HashMap::new();
        let mut remap = Vec::with_capacity(self.vertices.len());
        let mut vertices: Vec<CartesianPoint> = Vec::new();
        let mut normal_sums: Vec<CartesianPoint> = Vec::new();

        for (v, n) in self.vertices.iter().zip(&self.normals) {
            let (kx, ky, kz) = key_of(*v);
            let mut found = None;
            'search: for dx in -1..=1 {
                for dy in -1..=1 {
                    for dz in -1..=1 {
                        if let Some(ids) = buckets.get(&(kx + dx, ky + dy, kz + dz)) {
                            for &id in ids {
                                if (vertices[id as usize] - *v).norm() <= tol {
                                    found = Some(id);
                                    break 'search;
                                }
                            }
                        }
                    }
                }
            }
            match found {
                Some(id) => {
                    normal_sums[id as usize] = normal_sums[id as usize] + *n;
                    remap.push(id);
                }
                None => {
                    let id = vertices.len() as u32;
                    vertices.push(*v);
                    normal_sums.push(*n);
                    buckets.entry((kx, ky, kz)).or_default().push(id);
                    remap.push(id);
                }
            }
        }

        let normals = normal_sums
            .iter()
            .zip(&vertices)
            .map(|(sum, v)| {
                sum.normalized()
                    .or_else(|| v.normalized())
                    .unwrap_or(CartesianPoint::new(0.0, 0.0, 1.0))
            })
            .collect();

        let faces = self
            .faces
            .iter()
            .map(|f| [remap[f[0] as usize], remap[f[1] as usize], remap[f[2] as usize]])
            .filter(|f| f[0] != f[1] && f[1] != f[2] && f[0] != f[2])
            .collect();

        TriangleMesh { vertices, normals, faces }
    }
}

/// Tessellate a polar family over a grid.
///
/// Vertices sit on the lattice `X(theta_i, psi_j)`, two triangles per cell,
/// zero-area triangles (collapsed pole rows) dropped. Vertex normals come
/// from the analytic frame where `cos(psi) > 0`; elsewhere (the outer
/// shells of a full revolution sweep) they fall back to area-weighted
/// averages of the adjacent face normals. Rows are evaluated in parallel;
/// the result does not depend on the thread count.
pub fn tessellate(family: &SurfaceFamily, grid: &Grid) -> Result<TriangleMesh> {
    let thetas = grid.theta_values();
    let psis = grid.psi_values();
    let n_theta = thetas.len();

    let rows: Vec<Vec<(CartesianPoint, Option<CartesianPoint>)>> = psis
        .par_iter()
        .map(|&psi| -> Result<Vec<(CartesianPoint, Option<CartesianPoint>)>> {
            let mut row = Vec::with_capacity(n_theta);
            for &theta in &thetas {
                let p = PolarPoint::new(theta, psi);
                let rho = eval_rho(family, p)?;
                if rho == 0.0 {
                    return Err(Error::DegenerateCell { theta, psi });
                }
                let analytic = match surface_sample(family, p) {
                    Ok(sample) => sample.normal.normalized(),
                    Err(Error::FrameDomain { .. }) => None,
                    Err(e) => return Err(e),
                };
                row.push((to_cartesian(p, rho), analytic));
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let mut vertices = Vec::with_capacity(grid.n_samples());
    let mut analytic_normals = Vec::with_capacity(grid.n_samples());
    for row in &rows {
        for &(v, n) in row {
            vertices.push(v);
            analytic_normals.push(n);
        }
    }

    // Two triangles per cell, wound to agree with X_theta x X_psi.
    let mut faces = Vec::with_capacity(2 * (n_theta - 1) * (psis.len() - 1));
    let index = |i: usize, j: usize| (j * n_theta + i) as u32;
    for j in 0..psis.len() - 1 {
        for i in 0..n_theta - 1 {
            let v00 = index(i, j);
            let v10 = index(i + 1, j);
            let v01 = index(i, j + 1);
            let v11 = index(i + 1, j + 1);
            for tri in [[v00, v10, v11], [v00, v11, v01]] {
                if !is_degenerate(&vertices, tri) {
                    faces.push(tri);
                }
            }
        }
    }

    // Resolve vertex normals: analytic where available, otherwise
    // area-weighted face-normal average (the cross product already
    // carries the area weight).
    let mut fallback = vec![CartesianPoint::ORIGIN; vertices.len()];
    for &f in &faces {
        let a = vertices[f[0] as usize];
        let b = vertices[f[1] as usize];
        let c = vertices[f[2] as usize];
        let area_normal = (b - a).cross(c - a);
        for &vi in &f {
            fallback[vi as usize] = fallback[vi as usize] + area_normal;
        }
    }
    let normals = analytic_normals
        .iter()
        .enumerate()
        .map(|(i, maybe)| {
            maybe
                .or_else(|| fallback[i].normalized())
                .or_else(|| vertices[i].normalized())
                .unwrap_or(CartesianPoint::new(0.0, 0.0, 1.0))
        })
        .collect();

    Ok(TriangleMesh { vertices, normals, faces })
}

fn is_degenerate(vertices: &[CartesianPoint], face: [u32; 3]) -> bool {
    let a = vertices[face[0] as usize];
    let b = vertices[face[1] as usize];
    let c = vertices[face[2] as usize];
    let cross = (b - a).cross(c - a).norm();
    let scale = a.norm().max(b.norm()).max(c.norm());
    cross <= DEGENERATE_AREA_REL * scale * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Sign;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn sphere_patch_counts_and_radius() {
        let fam = SurfaceFamily::sphere(1.0).unwrap();
        let grid = Grid::new(0.0, PI, -FRAC_PI_4, FRAC_PI_4, 3, 3).unwrap();
        let mesh = tessellate(&fam, &grid).unwrap();
        assert_eq!(mesh.vertex_count(), 9);
        assert_eq!(mesh.face_count(), 8);
        for v in &mesh.vertices {
            assert_relative_eq!(v.norm(), 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn full_revolution_seam_coincides() {
        let fam = SurfaceFamily::rotational_spiral(1.0, 0.2).unwrap();
        let grid = Grid::new(0.0, 2.0 * PI, -FRAC_PI_2, 3.0 * FRAC_PI_2, 33, 33).unwrap();
        let mesh = tessellate(&fam, &grid).unwrap();
        let n_theta = 33;
        for j in 0..33 {
            let first = mesh.vertices[j * n_theta];
            let last = mesh.vertices[j * n_theta + n_theta - 1];
            assert!((first - last).norm() < 1e-12, "seam open at row {j}");
        }
        // Outer-shell rows (cos psi < 0) still carry unit normals.
        for n in &mesh.normals {
            assert!((n.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn weld_merges_seam() {
        let fam = SurfaceFamily::rotational_spiral(1.0, 0.2).unwrap();
        let grid = Grid::new(0.0, 2.0 * PI, -1.0, 1.0, 17, 9).unwrap();
        let mesh = tessellate(&fam, &grid).unwrap();
        let welded = mesh.weld(1e-9);
        assert_eq!(welded.vertex_count(), mesh.vertex_count() - 9);
        assert_eq!(welded.face_count(), mesh.face_count());
        for n in &welded.normals {
            assert!((n.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn equiangular_mesh_respects_exponent_bounds() {
        let fam = SurfaceFamily::equiangular(1.0, 0.1, 2.0, Sign::Plus, Sign::Plus).unwrap();
        let dom = crate::special::psi_domain(2.0).shrunk(0.99);
        let grid = Grid::new(0.0, 4.0 * PI, dom.lo, dom.hi, 50, 25).unwrap();
        let mesh = tessellate(&fam, &grid).unwrap();
        let h_max = 0.1 * FRAC_PI_2 * (5.0f64.sqrt() - 1.0);
        let upper = (0.4 * PI + h_max).exp();
        let lower = (-h_max).exp();
        for v in &mesh.vertices {
            let r = v.norm();
            assert!(r <= upper * (1.0 + 1e-12) && r >= lower * (1.0 - 1e-12), "radius {r}");
        }
    }

    #[test]
    fn self_similar_scaling_covariance() {
        // Shifting the theta window scales and rotates the vertex set.
        let (mu, d_theta) = (0.5, 0.7);
        let fam = SurfaceFamily::self_similar(1.0, mu, 0.2).unwrap();
        let base = Grid::new(0.0, PI, -1.0, 1.0, 12, 8).unwrap();
        let shifted = Grid::new(d_theta, PI + d_theta, -1.0, 1.0, 12, 8).unwrap();
        let mesh_a = tessellate(&fam, &base).unwrap();
        let mesh_b = tessellate(&fam, &shifted).unwrap();
        let scale = (mu * d_theta).exp();
        let (sin_d, cos_d) = d_theta.sin_cos();
        for (a, b) in mesh_a.vertices.iter().zip(&mesh_b.vertices) {
            let expected = CartesianPoint::new(
                scale * (a.x * cos_d - a.y * sin_d),
                scale * (a.x * sin_d + a.y * cos_d),
                scale * a.z,
            );
            assert!((*b - expected).norm() < 1e-10 * expected.norm().max(1.0));
        }
    }

    #[test]
    fn pole_rows_drop_degenerate_faces_only() {
        let fam = SurfaceFamily::sphere(1.0).unwrap();
        let grid = Grid::new(0.0, 2.0 * PI, -FRAC_PI_2, FRAC_PI_2, 9, 5).unwrap();
        let mesh = tessellate(&fam, &grid).unwrap();
        assert_eq!(mesh.vertex_count(), 45);
        // One triangle of each cell touching a pole row collapses.
        assert_eq!(mesh.face_count(), 2 * 8 * 4 - 2 * 8);
        for f in &mesh.faces {
            assert!(mesh.face_normal(*f).is_some());
        }
    }

    #[test]
    fn winding_matches_frame_normal() {
        let fam = SurfaceFamily::sphere(1.0).unwrap();
        let grid = Grid::new(0.0, 1.0, 0.0, 1.0, 4, 4).unwrap();
        let mesh = tessellate(&fam, &grid).unwrap();
        for f in &mesh.faces {
            let fnorm = mesh.face_normal(*f).unwrap();
            let centroid_normal = mesh.normals[f[0] as usize];
            assert!(fnorm.dot(centroid_normal) > 0.0, "winding flipped");
        }
    }
}
