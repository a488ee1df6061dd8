//! File formats: OBJ and PLY meshes, XYZ point clouds, CSV tables, plus the
//! color map used for curvature visualization. A UV sidecar CSV carries
//! per-vertex surface parameters next to OBJ files, which have no native
//! per-vertex parameter slot.

mod color;
mod csv;
mod obj;
mod ply;
mod xyz;

pub use color::colorize;
pub use csv::{format_sig, read_csv, write_csv};
pub use obj::{read_obj, write_obj};
pub use ply::{read_ply, write_ply, PlyFormat, PlyPayload};
pub use xyz::{read_xyz, write_xyz};

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::mesh::{PointCloud, TriangleMesh};

/// Sidecar path for a mesh's per-vertex UV table: `<stem>.uv.csv`.
pub fn uv_sidecar_path(mesh_path: impl AsRef<Path>) -> PathBuf {
    let path = mesh_path.as_ref();
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}.uv.csv"))
}

/// Write per-vertex UVs as `(id, u, v)` rows.
pub fn write_uv_sidecar(path: impl AsRef<Path>, mesh: &TriangleMesh) -> Result<()> {
    let uv = mesh.vertex_uv.as_ref().ok_or(Error::MissingUv)?;
    let rows: Vec<(u64, Vec<f64>)> = uv
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (i as u64, vec![u, v]))
        .collect();
    write_csv(path, &["id", "u", "v"], &rows)
}

/// Read a UV sidecar back onto a mesh (vertex count must match).
pub fn read_uv_sidecar(path: impl AsRef<Path>, mesh: &mut TriangleMesh) -> Result<()> {
    let (_, rows) = read_csv(path)?;
    if rows.len() != mesh.num_vertices() {
        return Err(Error::SizeMismatch {
            what: "uv sidecar rows",
            expected: mesh.num_vertices(),
            actual: rows.len(),
        });
    }
    let mut uv = vec![(0.0, 0.0); mesh.num_vertices()];
    for (id, values) in rows {
        if values.len() < 2 || id as usize >= uv.len() {
            return Err(Error::Parse {
                line: 0,
                message: "uv sidecar rows need (id, u, v)".into(),
            });
        }
        uv[id as usize] = (values[0], values[1]);
    }
    mesh.vertex_uv = Some(uv);
    Ok(())
}

/// Convert a PLY payload into a triangle mesh (requires faces).
pub fn mesh_from_ply(payload: &PlyPayload) -> Result<TriangleMesh> {
    let faces = payload.faces.clone().ok_or(Error::EmptyMesh)?;
    let mut mesh = TriangleMesh::new(payload.positions.clone(), faces);
    if let Some(normals) = &payload.normals {
        mesh.vertex_normals = Some(normals.iter().map(|n| n.normalize()).collect());
    }
    mesh.validate()?;
    Ok(mesh)
}

/// Convert a PLY payload into a point cloud.
pub fn cloud_from_ply(payload: &PlyPayload) -> Result<PointCloud> {
    let cloud = PointCloud {
        points: payload.positions.clone(),
        normals: payload
            .normals
            .as_ref()
            .map(|ns| ns.iter().map(|n| n.normalize()).collect()),
    };
    cloud.validate()?;
    Ok(cloud)
}

/// Read a point cloud from `.ply` or `.xyz`, by extension.
pub fn read_cloud(path: impl AsRef<Path>) -> Result<PointCloud> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some("xyz") => read_xyz(path),
        _ => cloud_from_ply(&read_ply(path)?),
    }
}
