//! Mesh and polyline writers: ASCII OBJ, binary STL, CSV.
//!
//! All writers are deterministic: the same input produces the same bytes.
//! Coordinates are printed with 9 significant digits, which round-trips
//! doubles to about 1e-8 relative.

use crate::error::{Error, Result};
use crate::geom::CartesianPoint;
use crate::mesh::TriangleMesh;
use crate::section::Polyline;
use std::io::{BufRead, Write};

/// Format with 9 significant digits in plain decimal notation.
fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let decimals = (8 - x.abs().log10().floor() as i32).clamp(0, 24) as usize;
    format!("{x:.decimals$}")
}

fn fmt_point(p: CartesianPoint) -> String {
    format!("{} {} {}", fmt_sig9(p.x), fmt_sig9(p.y), fmt_sig9(p.z))
}

/// Write a mesh as ASCII OBJ: `v` records, `vn` records, then `f` records
/// of the form `f i//i j//j k//k` with 1-based indices.
pub fn write_obj<W: Write>(mesh: &TriangleMesh, sink: &mut W) -> Result<()> {
    if mesh.faces.is_empty() {
        return Err(Error::EmptyMesh);
    }
    for v in &mesh.vertices {
        writeln!(sink, "v {}", fmt_point(*v))?;
    }
    for n in &mesh.normals {
        writeln!(sink, "vn {}", fmt_point(*n))?;
    }
    for f in &mesh.faces {
        let (a, b, c) = (f[0] + 1, f[1] + 1, f[2] + 1);
        writeln!(sink, "f {a}//{a} {b}//{b} {c}//{c}")?;
    }
    Ok(())
}

/// Minimal OBJ reader for round-trip checks: `v`, `vn`, and triangular `f`
/// records; anything else is ignored.
pub fn read_obj<R: BufRead>(source: R) -> Result<TriangleMesh> {
    let mut vertices = Vec::new();
    let mut normals = Vec::new();
    let mut faces = Vec::new();

    let parse3 = |parts: &[&str], line: &str| -> Result<CartesianPoint> {
        if parts.len() != 3 {
            return Err(Error::invalid(format!("malformed OBJ record: {line}")));
        }
        let mut c = [0.0f64; 3];
        for (slot, raw) in c.iter_mut().zip(parts) {
            *slot = raw
                .parse()
                .map_err(|_| Error::invalid(format!("bad number in OBJ record: {line}")))?;
        }
        Ok(CartesianPoint::new(c[0], c[1], c[2]))
    };

    for line in source.lines() {
        let line = line?;
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => vertices.push(parse3(&parts.collect::<Vec<_>>(), &line)?),
            Some("vn") => normals.push(parse3(&parts.collect::<Vec<_>>(), &line)?),
            Some("f") => {
                let idx: Vec<u32> = parts
                    .map(|tok| {
                        tok.split('/')
                            .next()
                            .unwrap_or("")
                            .parse::<u32>()
                            .map_err(|_| Error::invalid(format!("bad face index: {line}")))
                    })
                    .collect::<Result<_>>()?;
                if idx.len() != 3 {
                    return Err(Error::invalid(format!("non-triangular face: {line}")));
                }
                faces.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
            }
            _ => {}
        }
    }
    Ok(TriangleMesh { vertices, normals, faces })
}

/// Write a mesh as binary STL: an 80-byte header, a little-endian face
/// count, then 50 bytes per face (unit face normal, three vertices, zero
/// attribute). Total size is exactly `84 + 50 * faces` bytes.
pub fn write_stl<W: Write>(mesh: &TriangleMesh, sink: &mut W) -> Result<()> {
    if mesh.faces.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let mut header = [0u8; 80];
    let tag = b"equisurf binary STL";
    header[..tag.len()].copy_from_slice(tag);
    sink.write_all(&header)?;
    sink.write_all(&(mesh.faces.len() as u32).to_le_bytes())?;

    for &f in &mesh.faces {
        let normal = mesh.face_normal(f).unwrap_or(CartesianPoint::ORIGIN);
        write_vec3_f32(sink, normal)?;
        for &vi in &f {
            write_vec3_f32(sink, mesh.vertices[vi as usize])?;
        }
        sink.write_all(&0u16.to_le_bytes())?;
    }
    Ok(())
}

fn write_vec3_f32<W: Write>(sink: &mut W, v: CartesianPoint) -> Result<()> {
    for c in [v.x, v.y, v.z] {
        sink.write_all(&(c as f32).to_le_bytes())?;
    }
    Ok(())
}

/// Write polylines as CSV with an `x,y,z` header; successive polylines are
/// separated by one blank line.
pub fn write_polylines_csv<W: Write>(polylines: &[Polyline], sink: &mut W) -> Result<()> {
    writeln!(sink, "x,y,z")?;
    for (i, line) in polylines.iter().enumerate() {
        if i > 0 {
            writeln!(sink)?;
        }
        for p in line.points() {
            writeln!(sink, "{},{},{}", fmt_sig9(p.x), fmt_sig9(p.y), fmt_sig9(p.z))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SurfaceFamily;
    use crate::mesh::tessellate;
    use crate::verify::Grid;
    use std::io::Cursor;

    fn sample_mesh() -> TriangleMesh {
        let fam = SurfaceFamily::sphere(1.0).unwrap();
        let grid = Grid::new(0.0, 1.0, -0.5, 0.5, 4, 4).unwrap();
        tessellate(&fam, &grid).unwrap()
    }

    #[test]
    fn single_triangle_obj_line_counts() {
        let mesh = TriangleMesh {
            vertices: vec![
                CartesianPoint::new(0.0, 0.0, 0.0),
                CartesianPoint::new(1.0, 0.0, 0.0),
                CartesianPoint::new(0.0, 1.0, 0.0),
            ],
            normals: vec![CartesianPoint::new(0.0, 0.0, 1.0); 3],
            faces: vec![[0, 1, 2]],
        };
        let mut buf = Vec::new();
        write_obj(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert_eq!(text.lines().filter(|l| l.starts_with("vn ")).count(), 3);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 1);
        assert!(text.contains("f 1//1 2//2 3//3"));
    }

    #[test]
    fn obj_round_trip() {
        let mesh = sample_mesh();
        let mut buf = Vec::new();
        write_obj(&mesh, &mut buf).unwrap();
        let parsed = read_obj(Cursor::new(&buf)).unwrap();
        assert_eq!(parsed.vertex_count(), mesh.vertex_count());
        assert_eq!(parsed.faces, mesh.faces);
        for (a, b) in parsed.vertices.iter().zip(&mesh.vertices) {
            assert!((*a - *b).norm() < 1e-8);
        }
    }

    #[test]
    fn empty_mesh_rejected() {
        let empty = TriangleMesh { vertices: vec![], normals: vec![], faces: vec![] };
        assert!(matches!(write_obj(&empty, &mut Vec::new()), Err(Error::EmptyMesh)));
        assert!(matches!(write_stl(&empty, &mut Vec::new()), Err(Error::EmptyMesh)));
    }

    #[test]
    fn stl_size_formula() {
        let mesh = sample_mesh();
        let mut buf = Vec::new();
        write_stl(&mesh, &mut buf).unwrap();
        assert_eq!(buf.len(), 84 + 50 * mesh.face_count());
    }

    #[test]
    fn stl_face_normals_unit_on_read_back() {
        let mesh = sample_mesh();
        let mut buf = Vec::new();
        write_stl(&mesh, &mut buf).unwrap();
        let count = u32::from_le_bytes(buf[80..84].try_into().unwrap()) as usize;
        assert_eq!(count, mesh.face_count());
        for fi in 0..count {
            let off = 84 + 50 * fi;
            let mut n = [0.0f32; 3];
            for (ci, slot) in n.iter_mut().enumerate() {
                let s = off + 4 * ci;
                *slot = f32::from_le_bytes(buf[s..s + 4].try_into().unwrap());
            }
            let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            assert!((len - 1.0).abs() < 1e-6, "face {fi} normal length {len}");
        }
    }

    #[test]
    fn writers_are_deterministic() {
        let mesh = sample_mesh();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        write_obj(&mesh, &mut a).unwrap();
        write_obj(&mesh, &mut b).unwrap();
        assert_eq!(a, b);
        let (mut c, mut d) = (Vec::new(), Vec::new());
        write_stl(&mesh, &mut c).unwrap();
        write_stl(&mesh, &mut d).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn csv_layout() {
        let line = Polyline::new(vec![
            CartesianPoint::new(1.0, 0.0, 0.0),
            CartesianPoint::new(0.0, 2.0, 0.5),
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_polylines_csv(&[line.clone(), line], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y,z"));
        assert_eq!(text.lines().filter(|l| l.is_empty()).count(), 1);
        assert_eq!(text.lines().filter(|l| l.contains(',')).count(), 5);
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-0.0), "0");
        assert_eq!(fmt_sig9(1.0), "1.00000000");
        assert_eq!(fmt_sig9(0.123456789123), "0.123456789");
        assert_eq!(fmt_sig9(-12345.6789123), "-12345.6789");
        // Round-trips to ~1e-8 relative.
        for &x in &[std::f64::consts::PI, 1e-3, 123456.789, -2.5e-5] {
            let back: f64 = fmt_sig9(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-8);
        }
    }
}
