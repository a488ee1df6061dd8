//! Wavefront OBJ subset: `v`, `vn`, `f` records; polygonal faces are
//! fan-triangulated on read.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::Vec3;

pub fn read_obj(path: impl AsRef<Path>) -> Result<TriangleMesh> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);

    let mut vertices: Vec<Vec3> = Vec::new();
    let mut normals_pool: Vec<Vec3> = Vec::new();
    // per-vertex normal assignment from f v//vn corners (last one wins)
    let mut normal_of_vertex: Vec<Option<usize>> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = line_no + 1;
        let mut tokens = line.split_whitespace();
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match tokens.next() {
            Some("v") => {
                let mut coord = [0.0f64; 3];
                for c in &mut coord {
                    *c = tokens
                        .next()
                        .ok_or_else(|| parse_err("vertex needs 3 coordinates".into()))?
                        .parse()
                        .map_err(|e| parse_err(format!("bad coordinate: {e}")))?;
                }
                vertices.push(Vec3::new(coord[0], coord[1], coord[2]));
                normal_of_vertex.push(None);
            }
            Some("vn") => {
                let mut coord = [0.0f64; 3];
                for c in &mut coord {
                    *c = tokens
                        .next()
                        .ok_or_else(|| parse_err("normal needs 3 coordinates".into()))?
                        .parse()
                        .map_err(|e| parse_err(format!("bad coordinate: {e}")))?;
                }
                normals_pool.push(Vec3::new(coord[0], coord[1], coord[2]));
            }
            Some("f") => {
                let mut corners: Vec<usize> = Vec::new();
                for token in tokens {
                    let mut parts = token.split('/');
                    let v_str = parts.next().unwrap_or("");
                    let v: i64 = v_str
                        .parse()
                        .map_err(|e| parse_err(format!("bad face index '{v_str}': {e}")))?;
                    if v < 1 || v as usize > vertices.len() {
                        return Err(parse_err(format!(
                            "face index {v} out of range 1..={}",
                            vertices.len()
                        )));
                    }
                    let vi = v as usize - 1;
                    // skip the texture slot, take the normal slot if present
                    let _vt = parts.next();
                    if let Some(vn_str) = parts.next() {
                        if !vn_str.is_empty() {
                            let vn: i64 = vn_str
                                .parse()
                                .map_err(|e| parse_err(format!("bad normal index: {e}")))?;
                            if vn < 1 || vn as usize > normals_pool.len() {
                                return Err(parse_err(format!("normal index {vn} out of range")));
                            }
                            normal_of_vertex[vi] = Some(vn as usize - 1);
                        }
                    }
                    corners.push(vi);
                }
                if corners.len() < 3 {
                    return Err(parse_err("face needs at least 3 corners".into()));
                }
                for i in 1..corners.len() - 1 {
                    faces.push([corners[0], corners[i], corners[i + 1]]);
                }
            }
            // comments and unhandled records (vt, o, g, s, usemtl, ...)
            _ => {}
        }
    }

    let mut mesh = TriangleMesh::new(vertices, faces);
    if !normals_pool.is_empty() && normal_of_vertex.iter().all(|n| n.is_some()) {
        let normals: Vec<Vec3> = normal_of_vertex
            .iter()
            .map(|n| normals_pool[n.unwrap()].normalize())
            .collect();
        mesh.vertex_normals = Some(normals);
    }
    mesh.validate()?;
    Ok(mesh)
}

pub fn write_obj(path: impl AsRef<Path>, mesh: &TriangleMesh) -> Result<()> {
    mesh.validate()?;
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    for v in &mesh.vertices {
        writeln!(w, "v {:.9} {:.9} {:.9}", v.x, v.y, v.z)?;
    }
    if let Some(normals) = &mesh.vertex_normals {
        for n in normals {
            writeln!(w, "vn {:.9} {:.9} {:.9}", n.x, n.y, n.z)?;
        }
        for &[a, b, c] in &mesh.faces {
            writeln!(
                w,
                "f {}//{} {}//{} {}//{}",
                a + 1,
                a + 1,
                b + 1,
                b + 1,
                c + 1,
                c + 1
            )?;
        }
    } else {
        for &[a, b, c] in &mesh.faces {
            writeln!(w, "f {} {} {}", a + 1, b + 1, c + 1)?;
        }
    }
    w.flush()?;
    Ok(())
}
