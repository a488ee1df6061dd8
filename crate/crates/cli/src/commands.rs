//! Command implementations.

use std::path::{Path, PathBuf};

use anyhow::Context;
use totalcurv::curvature::{
    per_vertex_curvature_density, total_curvature_per_triangle, vertex_normals_area_weighted,
};
use totalcurv::decimation::{DecimationConfig, DecimationMethod};
use totalcurv::io;
use totalcurv::metrics;
use totalcurv::pointcloud::{estimate_normals_pca, orient_normals_mst, pointcloud_total_curvature};
use totalcurv::sampling::{self, SurfaceSample};
use totalcurv::shapes::{self, KnotCurve, ParametricSurface};
use totalcurv::{PointCloud, TriangleMesh, Vec3};

use crate::surface_spec::parse_surface;
use crate::{
    CliError, CmdResult, DecimateArgs, EvalKind, GenShape, KnotKind, MeshCurvatureArgs, Method,
    OnOff, PcdCurvatureArgs, Per, ReproScenario, SampleArgs, SampleMode,
};

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Read an input mesh; unreadable or malformed inputs are usage errors
/// (exit 2), not pipeline failures.
fn read_mesh_input(path: &Path) -> Result<TriangleMesh, CliError> {
    io::read_obj(path).map_err(|e| usage(format!("cannot read mesh {path:?}: {e}")))
}

/// Read an input cloud with the same exit-code policy as meshes.
fn read_cloud_input(path: &Path) -> Result<PointCloud, CliError> {
    io::read_cloud(path).map_err(|e| usage(format!("cannot read cloud {path:?}: {e}")))
}

// ---------------------------------------------------------------------------
// gen

pub fn gen(shape: GenShape) -> CmdResult {
    let (mesh, out) = match shape {
        GenShape::Sphere {
            subdiv,
            radius,
            out,
        } => {
            eprintln!("config: cmd=gen shape=sphere subdiv={subdiv} radius={radius} out={out:?}");
            if radius <= 0.0 {
                return Err(usage("--radius must be positive"));
            }
            (shapes::icosphere(subdiv, radius), out)
        }
        GenShape::Torus {
            major,
            minor,
            grid,
            out,
        } => {
            eprintln!("config: cmd=gen shape=torus R={major} r={minor} grid={grid} out={out:?}");
            if grid < 3 {
                return Err(usage("--grid must be at least 3"));
            }
            (shapes::torus_grid(major, minor, grid, grid)?, out)
        }
        GenShape::Knot {
            kind,
            tube_radius,
            nu,
            nv,
            out,
        } => {
            let kind_name = match kind {
                KnotKind::Torus23 => "torus23",
                KnotKind::Fig8 => "fig8",
            };
            eprintln!(
                "config: cmd=gen shape=knot kind={kind_name} tube_radius={tube_radius} nu={nu} nv={nv} out={out:?}"
            );
            if nu < 8 || nv < 8 {
                return Err(usage("--nu and --nv must be at least 8"));
            }
            let curve = match kind {
                KnotKind::Torus23 => KnotCurve::TorusKnot { p: 2, q: 3 },
                KnotKind::Fig8 => KnotCurve::FigureEight,
            };
            (shapes::tube_knot(curve, tube_radius, nu, nv)?, out)
        }
    };
    io::write_obj(&out, &mesh)?;
    if mesh.vertex_uv.is_some() {
        io::write_uv_sidecar(io::uv_sidecar_path(&out), &mesh)?;
    }
    println!("vertices={}", mesh.num_vertices());
    println!("faces={}", mesh.num_faces());
    Ok(())
}

// ---------------------------------------------------------------------------
// sample

pub fn sample(args: SampleArgs) -> CmdResult {
    let mode_name = match args.mode {
        SampleMode::Uniform => "uniform",
        SampleMode::Nonuniform => "nonuniform",
        SampleMode::Sparse => "sparse",
    };
    eprintln!(
        "config: cmd=sample mesh={:?} mode={mode_name} count={} oversample={} seed={} out={:?}",
        args.mesh, args.count, args.oversample, args.seed, args.out
    );
    if args.count == 0 {
        return Err(usage("--count must be positive"));
    }
    if args.oversample <= 1.0 {
        return Err(usage("--oversample must exceed 1"));
    }
    let mesh = read_mesh_input(&args.mesh)?;
    let cloud = match args.mode {
        SampleMode::Uniform | SampleMode::Sparse => {
            sampling::poisson_disk_sample(&mesh, args.count, args.seed)?
        }
        SampleMode::Nonuniform => {
            sampling::nonuniform_sample(&mesh, args.count, args.seed, args.oversample)?
        }
    };
    write_cloud(&args.out, &cloud, None, None)?;
    println!("points={}", cloud.len());
    Ok(())
}

fn write_cloud(
    path: &Path,
    cloud: &PointCloud,
    quality: Option<&[f64]>,
    colors: Option<&[[u8; 3]]>,
) -> Result<(), CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("xyz") => io::write_xyz(path, cloud)?,
        _ => {
            let payload = io::PlyPayload {
                positions: cloud.points.clone(),
                normals: cloud.normals.clone(),
                quality: quality.map(<[f64]>::to_vec),
                colors: colors.map(<[[u8; 3]]>::to_vec),
                faces: None,
                skipped: 0,
            };
            io::write_ply(path, &payload, io::PlyFormat::BinaryLittleEndian)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// curvature

pub fn curvature_mesh(args: MeshCurvatureArgs) -> CmdResult {
    eprintln!(
        "config: cmd=curvature-mesh mesh={:?} normals={} per={} surface={:?} csv={:?} ply={:?} clip=({},{})",
        args.mesh,
        args.normals,
        match args.per {
            Per::Triangle => "triangle",
            Per::Vertex => "vertex",
        },
        args.surface,
        args.csv,
        args.ply,
        args.clip_lo,
        args.clip_hi
    );
    if !(0.0..=100.0).contains(&args.clip_lo)
        || !(0.0..=100.0).contains(&args.clip_hi)
        || args.clip_lo >= args.clip_hi
    {
        return Err(usage("clip percentiles must satisfy 0 <= lo < hi <= 100"));
    }
    let mut mesh = read_mesh_input(&args.mesh)?;
    let surface = args.surface.as_deref().map(parse_surface).transpose()?;

    let normals: Vec<Vec3> = match args.normals.as_str() {
        "auto" => {
            let vn = vertex_normals_area_weighted(&mesh)?;
            if !vn.isolated.is_empty() {
                eprintln!("warning: {} isolated vertices", vn.isolated.len());
            }
            vn.normals
        }
        "analytic" => {
            let surface = surface
                .as_ref()
                .ok_or_else(|| usage("--normals analytic requires --surface"))?;
            attach_uv(&mut mesh, &args.mesh, args.uv.as_deref())?;
            surface.vertex_normals(&mesh)?
        }
        path => {
            let payload = io::read_ply(Path::new(path)).context("reading normals PLY")?;
            let cloud = io::cloud_from_ply(&payload)?;
            let normals = cloud
                .normals
                .ok_or_else(|| usage(format!("'{path}' carries no normals")))?;
            if normals.len() != mesh.num_vertices() {
                return Err(usage(format!(
                    "normal count {} does not match vertex count {}",
                    normals.len(),
                    mesh.num_vertices()
                )));
            }
            normals
        }
    };

    let field = total_curvature_per_triangle(&mesh, &normals)?;
    if field.degenerate_faces > 0 {
        eprintln!(
            "warning: {} degenerate faces skipped",
            field.degenerate_faces
        );
    }
    let density = per_vertex_curvature_density(&mesh, &field);

    // ground truth column when the surface and UVs are available
    let gt: Option<(Vec<f64>, Vec<f64>)> = match &surface {
        Some(surface) => {
            if mesh.vertex_uv.is_none() {
                attach_uv(&mut mesh, &args.mesh, args.uv.as_deref()).ok();
            }
            if mesh.vertex_uv.is_some() {
                let gt_field = shapes::gt_per_triangle(&mesh, surface)?;
                let gt_density = surface.vertex_densities(&mesh)?;
                Some((gt_field.per_triangle, gt_density))
            } else {
                None
            }
        }
        None => None,
    };

    if let Some(csv) = &args.csv {
        let rows: Vec<(u64, Vec<f64>)> = match args.per {
            Per::Triangle => field
                .per_triangle
                .iter()
                .enumerate()
                .map(|(i, &kappa)| {
                    let mut values = vec![kappa];
                    if let Some((gt_tri, _)) = &gt {
                        values.push(gt_tri[i]);
                    }
                    (i as u64, values)
                })
                .collect(),
            Per::Vertex => density
                .iter()
                .enumerate()
                .map(|(i, &d)| {
                    let mut values = vec![d];
                    if let Some((_, gt_density)) = &gt {
                        values.push(gt_density[i]);
                    }
                    (i as u64, values)
                })
                .collect(),
        };
        let header: &[&str] = match (args.per, gt.is_some()) {
            (Per::Triangle, false) => &["face", "kappa"],
            (Per::Triangle, true) => &["face", "kappa", "kappa_gt"],
            (Per::Vertex, false) => &["vertex", "density"],
            (Per::Vertex, true) => &["vertex", "density", "density_gt"],
        };
        io::write_csv(csv, header, &rows)?;
    }

    if let Some(ply) = &args.ply {
        let colors = io::colorize(&density, args.clip_lo, args.clip_hi)?;
        let payload = io::PlyPayload {
            positions: mesh.vertices.clone(),
            normals: Some(normals.clone()),
            quality: Some(density.clone()),
            colors: Some(colors),
            faces: Some(mesh.faces.clone()),
            skipped: 0,
        };
        io::write_ply(ply, &payload, io::PlyFormat::BinaryLittleEndian)?;
    }

    let total: f64 = field.per_triangle.iter().sum();
    println!("total_curvature={}", io::format_sig(total, 6));
    if let Some((gt_tri, gt_density)) = &gt {
        println!(
            "rmse_triangle={}",
            io::format_sig(metrics::rmse(&field.per_triangle, gt_tri)?, 6)
        );
        println!(
            "rmse_vertex_density={}",
            io::format_sig(metrics::rmse(&density, gt_density)?, 6)
        );
    }
    Ok(())
}

fn attach_uv(mesh: &mut TriangleMesh, mesh_path: &Path, uv: Option<&Path>) -> Result<(), CliError> {
    if mesh.vertex_uv.is_some() {
        return Ok(());
    }
    let uv_path = uv
        .map(PathBuf::from)
        .unwrap_or_else(|| io::uv_sidecar_path(mesh_path));
    if !uv_path.exists() {
        return Err(usage(format!(
            "no UV data: expected sidecar {uv_path:?} (or pass --uv)"
        )));
    }
    io::read_uv_sidecar(&uv_path, mesh)?;
    Ok(())
}

pub fn curvature_pcd(args: PcdCurvatureArgs) -> CmdResult {
    let cloud = read_cloud_input(&args.cloud)?;
    let k = args.k.unwrap_or(if cloud.len() >= 5000 { 20 } else { 10 });
    eprintln!(
        "config: cmd=curvature-pcd cloud={:?} k={k} normals={} csv={:?} ply={:?} clip=({},{})",
        args.cloud, args.normals, args.csv, args.ply, args.clip_lo, args.clip_hi
    );
    if k < 6 {
        return Err(usage("--k must be at least 6"));
    }
    if cloud.len() < k {
        return Err(usage(format!(
            "cloud has {} points, fewer than k={k}",
            cloud.len()
        )));
    }

    let normals: Vec<Vec3> = match args.normals.as_str() {
        "est" => {
            let est = estimate_normals_pca(&cloud, k)?;
            if !est.degenerate.is_empty() {
                eprintln!(
                    "warning: {} degenerate PCA neighborhoods",
                    est.degenerate.len()
                );
            }
            let oriented = orient_normals_mst(&cloud, &est.normals, k)?;
            if oriented.component_count > 1 {
                eprintln!(
                    "warning: kNN graph has {} components; each oriented independently",
                    oriented.component_count
                );
            }
            oriented.normals
        }
        "file" => cloud
            .normals
            .clone()
            .ok_or_else(|| usage("--normals file requires normals in the input cloud"))?,
        other => {
            return Err(usage(format!(
                "--normals must be 'est' or 'file', got '{other}'"
            )))
        }
    };

    let result = pointcloud_total_curvature(&cloud, &normals, k)?;
    eprintln!(
        "info: {} of {} points failed locally and got density 0",
        result.failed.len(),
        cloud.len()
    );

    if let Some(csv) = &args.csv {
        let rows: Vec<(u64, Vec<f64>)> = result
            .density
            .iter()
            .enumerate()
            .map(|(i, &d)| (i as u64, vec![d]))
            .collect();
        io::write_csv(csv, &["point", "density"], &rows)?;
    }
    if let Some(ply) = &args.ply {
        let colors = io::colorize(&result.density, args.clip_lo, args.clip_hi)?;
        let with_normals = PointCloud::with_normals(cloud.points.clone(), normals.clone());
        write_cloud(ply, &with_normals, Some(&result.density), Some(&colors))?;
    }
    let mean: f64 = result.density.iter().sum::<f64>() / result.density.len().max(1) as f64;
    println!("mean_density={}", io::format_sig(mean, 6));
    println!("failed_points={}", result.failed.len());
    Ok(())
}

// ---------------------------------------------------------------------------
// decimate

pub fn decimate(args: DecimateArgs) -> CmdResult {
    let method_name = match args.method {
        Method::Qslim => "qslim",
        Method::EdgeMidpoint => "edge-midpoint",
    };
    let weighting = matches!(args.curvature_weight, OnOff::On);
    eprintln!(
        "config: cmd=decimate mesh={:?} method={method_name} target_faces={} curvature_weight={} weight_floor={} out={:?}",
        args.mesh, args.target_faces, weighting, args.weight_floor, args.out
    );
    if args.target_faces < 4 {
        return Err(usage("--target-faces must be at least 4"));
    }
    let mesh = read_mesh_input(&args.mesh)?;

    let weights = if weighting {
        let normals = vertex_normals_area_weighted(&mesh)?.normals;
        let field = total_curvature_per_triangle(&mesh, &normals)?;
        per_vertex_curvature_density(&mesh, &field)
    } else {
        vec![0.0; mesh.num_vertices()]
    };

    let mut config = DecimationConfig::new(
        match args.method {
            Method::Qslim => DecimationMethod::Qslim,
            Method::EdgeMidpoint => DecimationMethod::EdgeMidpoint,
        },
        args.target_faces,
    );
    config.curvature_weighting = weighting;
    config.weight_floor = args.weight_floor;

    let outcome = totalcurv::decimation::decimate(&mesh, &weights, &config)?;
    io::write_obj(&args.out, &outcome.mesh)?;
    println!("faces_in={}", mesh.num_faces());
    println!("faces_out={}", outcome.mesh.num_faces());
    println!("collapses={}", outcome.collapses.len());
    if !outcome.reached_target {
        return Err(CliError::Runtime(anyhow::anyhow!(
            "no admissible collapse left above the target; best effort written to {:?} with {} faces",
            args.out,
            outcome.mesh.num_faces()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// eval

pub fn eval(what: EvalKind) -> CmdResult {
    match what {
        EvalKind::Rmse { estimate, truth } => {
            eprintln!("config: cmd=eval-rmse estimate={estimate:?} truth={truth:?}");
            let (_, est_rows) = io::read_csv(&estimate)?;
            let (_, gt_rows) = io::read_csv(&truth)?;
            if est_rows.len() != gt_rows.len() {
                return Err(usage(format!(
                    "row count mismatch: {} vs {}",
                    est_rows.len(),
                    gt_rows.len()
                )));
            }
            let column = |rows: &[(u64, Vec<f64>)]| -> Result<Vec<f64>, CliError> {
                rows.iter()
                    .map(|(id, values)| {
                        values
                            .first()
                            .copied()
                            .ok_or_else(|| usage(format!("row {id} has no value column")))
                    })
                    .collect()
            };
            let value = metrics::rmse(&column(&est_rows)?, &column(&gt_rows)?)?;
            println!("rmse={}", io::format_sig(value, 6));
            Ok(())
        }
        EvalKind::Hausdorff {
            mesh_a,
            mesh_b,
            samples,
            seed,
        } => {
            eprintln!(
                "config: cmd=eval-hausdorff a={mesh_a:?} b={mesh_b:?} samples={samples} seed={seed}"
            );
            if samples < 1000 {
                return Err(usage("--samples must be at least 1000"));
            }
            let a = read_mesh_input(&mesh_a)?;
            let b = read_mesh_input(&mesh_b)?;
            let h = metrics::hausdorff(&a, &b, samples, seed)?;
            // union bounding box keeps the normalization symmetric
            let diagonal = {
                let (la, ha) = a.bounds().unwrap();
                let (lb, hb) = b.bounds().unwrap();
                (ha.sup(&hb) - la.inf(&lb)).norm()
            };
            println!("rms={}", io::format_sig(h.rms, 6));
            println!("max={}", io::format_sig(h.max, 6));
            println!("rms_normalized={}", io::format_sig(h.rms / diagonal, 6));
            println!("max_normalized={}", io::format_sig(h.max / diagonal, 6));
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// repro

pub fn repro(scenario: ReproScenario) -> CmdResult {
    match scenario {
        ReproScenario::Table3 { out_dir, seed } => repro_table3(out_dir, seed),
        ReproScenario::PcdTorus {
            out_dir,
            seed,
            count,
        } => repro_pcd_torus(out_dir, seed, count),
    }
}

fn ensure_dir(dir: &Option<PathBuf>) -> Result<Option<PathBuf>, CliError> {
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).context("creating output directory")?;
    }
    Ok(dir.clone())
}

fn repro_table3(out_dir: Option<PathBuf>, seed: u64) -> CmdResult {
    eprintln!("config: cmd=repro-table3 out_dir={out_dir:?} seed={seed}");
    let out_dir = ensure_dir(&out_dir)?;
    let mut table =
        String::from("| shape | per-triangle RMSE | per-vertex density RMSE |\n|---|---|---|\n");

    let mut run = |label: &str,
                   file_stem: &str,
                   mesh: &TriangleMesh,
                   surface: &ParametricSurface|
     -> Result<(f64, f64), CliError> {
        let normals = surface.vertex_normals(mesh)?;
        let est = total_curvature_per_triangle(mesh, &normals)?;
        let gt = shapes::gt_per_triangle(mesh, surface)?;
        let rmse_tri = metrics::rmse(&est.per_triangle, &gt.per_triangle)?;
        let density = per_vertex_curvature_density(mesh, &est);
        let gt_density = surface.vertex_densities(mesh)?;
        let rmse_density = metrics::rmse(&density, &gt_density)?;
        if let Some(dir) = &out_dir {
            let rows: Vec<(u64, Vec<f64>)> = est
                .per_triangle
                .iter()
                .zip(&gt.per_triangle)
                .enumerate()
                .map(|(i, (&e, &g))| (i as u64, vec![e, g]))
                .collect();
            io::write_csv(
                dir.join(format!("{file_stem}_triangle.csv")),
                &["face", "kappa", "kappa_gt"],
                &rows,
            )?;
            let rows: Vec<(u64, Vec<f64>)> = density
                .iter()
                .zip(&gt_density)
                .enumerate()
                .map(|(i, (&e, &g))| (i as u64, vec![e, g]))
                .collect();
            io::write_csv(
                dir.join(format!("{file_stem}_vertex.csv")),
                &["vertex", "density", "density_gt"],
                &rows,
            )?;
        }
        table.push_str(&format!(
            "| {label} | {} | {} |\n",
            io::format_sig(rmse_tri, 6),
            io::format_sig(rmse_density, 6)
        ));
        Ok((rmse_tri, rmse_density))
    };

    let sphere = ParametricSurface::sphere(1.0);
    for s in [4u32, 5, 6] {
        let mesh = shapes::icosphere(s, 1.0);
        let (tri, density) = run(
            &format!("sphere s={s}"),
            &format!("sphere_s{s}"),
            &mesh,
            &sphere,
        )?;
        println!("table3.sphere{s}.rmse_triangle={}", io::format_sig(tri, 6));
        println!(
            "table3.sphere{s}.rmse_vertex_density={}",
            io::format_sig(density, 6)
        );
    }
    let torus = ParametricSurface::torus(2.0, 1.0).map_err(CliError::from)?;
    for n in [9usize, 18, 36] {
        let mesh = shapes::torus_grid(2.0, 1.0, n, n)?;
        let (tri, density) = run(
            &format!("torus {n}×{n}"),
            &format!("torus_{n}"),
            &mesh,
            &torus,
        )?;
        println!("table3.torus{n}.rmse_triangle={}", io::format_sig(tri, 6));
        println!(
            "table3.torus{n}.rmse_vertex_density={}",
            io::format_sig(density, 6)
        );
    }
    print!("{table}");
    Ok(())
}

/// Barycentric interpolation of per-vertex attributes at surface samples.
fn interpolate_at_samples(
    mesh: &TriangleMesh,
    samples: &[SurfaceSample],
    vertex_normals: &[Vec3],
    vertex_densities: &[f64],
) -> (Vec<Vec3>, Vec<f64>) {
    let mut normals = Vec::with_capacity(samples.len());
    let mut densities = Vec::with_capacity(samples.len());
    for s in samples {
        let [a, b, c] = mesh.faces[s.face];
        let [wa, wb, wc] = s.barycentric;
        normals.push(
            (vertex_normals[a] * wa + vertex_normals[b] * wb + vertex_normals[c] * wc).normalize(),
        );
        densities
            .push(vertex_densities[a] * wa + vertex_densities[b] * wb + vertex_densities[c] * wc);
    }
    (normals, densities)
}

fn repro_pcd_torus(out_dir: Option<PathBuf>, seed: u64, count: usize) -> CmdResult {
    eprintln!("config: cmd=repro-pcd-torus out_dir={out_dir:?} seed={seed} count={count}");
    if count < 100 {
        return Err(usage("--count must be at least 100"));
    }
    let out_dir = ensure_dir(&out_dir)?;
    // a fine grid so the sampled cloud tracks the smooth torus closely
    let mesh = shapes::torus_grid(2.0, 1.0, 96, 96)?;
    let surface = ParametricSurface::torus(2.0, 1.0).map_err(CliError::from)?;
    let vertex_normals = surface.vertex_normals(&mesh)?;
    let vertex_densities = surface.vertex_densities(&mesh)?;

    let mut table =
        String::from("| sampling | RMSE (est. normals) | RMSE (gt normals) |\n|---|---|---|\n");
    for (label, target) in [
        ("uniform", count),
        ("nonuniform", count),
        ("sparse", count / 10),
    ] {
        let samples = match label {
            "nonuniform" => sampling::nonuniform_sample_detailed(&mesh, target, seed, 2.0)?,
            _ => sampling::poisson_disk_sample_detailed(&mesh, target, seed)?.0,
        };
        let k = if samples.len() >= 5000 { 20 } else { 10 };
        let points: Vec<Vec3> = samples.iter().map(|s| s.position).collect();
        let cloud = PointCloud::new(points);
        let (gt_normals, gt_density) =
            interpolate_at_samples(&mesh, &samples, &vertex_normals, &vertex_densities);

        let with_gt = pointcloud_total_curvature(&cloud, &gt_normals, k)?;
        let est = estimate_normals_pca(&cloud, k)?;
        let oriented = orient_normals_mst(&cloud, &est.normals, k)?;
        let with_est = pointcloud_total_curvature(&cloud, &oriented.normals, k)?;

        let rmse_gt = metrics::rmse(&with_gt.density, &gt_density)?;
        let rmse_est = metrics::rmse(&with_est.density, &gt_density)?;
        table.push_str(&format!(
            "| {label} | {} | {} |\n",
            io::format_sig(rmse_est, 6),
            io::format_sig(rmse_gt, 6)
        ));
        println!(
            "pcd_torus.{label}.n={} pcd_torus.{label}.k={k}",
            cloud.len()
        );
        println!("pcd_torus.{label}.rmse_est={}", io::format_sig(rmse_est, 6));
        println!("pcd_torus.{label}.rmse_gt={}", io::format_sig(rmse_gt, 6));
        if let Some(dir) = &out_dir {
            for (suffix, result) in [("gt", &with_gt), ("est", &with_est)] {
                let rows: Vec<(u64, Vec<f64>)> = result
                    .density
                    .iter()
                    .zip(&gt_density)
                    .enumerate()
                    .map(|(i, (&d, &g))| (i as u64, vec![d, g]))
                    .collect();
                io::write_csv(
                    dir.join(format!("pcd_torus_{label}_{suffix}.csv")),
                    &["point", "density", "density_gt"],
                    &rows,
                )?;
            }
        }
    }
    print!("{table}");
    Ok(())
}
