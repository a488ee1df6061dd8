//! Surface sampling: area-uniform random points, seeded Poisson-disk darts
//! with radius bisection, and the nonuniform oversample-then-subsample
//! regime.
//!
//! All sampling is reproducible from `(mesh, config, seed)`; the RNG is
//! ChaCha8, which is specified to produce the same stream on every platform.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mesh::{PointCloud, TriangleMesh};
use crate::Vec3;

/// Sampling regimes used by the evaluation protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Dense Poisson-disk sampling.
    Uniform,
    /// Poisson-disk oversample followed by a random subsample.
    Nonuniform,
    /// Poisson-disk with a small target count; same algorithm as `Uniform`.
    Sparse,
}

/// Sampling parameters.
#[derive(Debug, Clone, Copy)]
pub struct SamplingConfig {
    pub mode: SamplingMode,
    pub target_count: usize,
    pub seed: u64,
    /// Oversampling factor for the nonuniform regime.
    pub oversample_factor: f64,
}

impl SamplingConfig {
    pub fn new(mode: SamplingMode, target_count: usize, seed: u64) -> Self {
        Self {
            mode,
            target_count,
            seed,
            oversample_factor: 2.0,
        }
    }
}

/// A surface sample with provenance: which face it lies on and where.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceSample {
    pub position: Vec3,
    pub face: usize,
    pub barycentric: [f64; 3],
}

/// Run the configured sampling regime.
pub fn sample_with_config(mesh: &TriangleMesh, config: &SamplingConfig) -> Result<PointCloud> {
    let samples = sample_with_config_detailed(mesh, config)?;
    Ok(to_cloud(&samples))
}

/// Like [`sample_with_config`], keeping per-sample provenance.
pub fn sample_with_config_detailed(
    mesh: &TriangleMesh,
    config: &SamplingConfig,
) -> Result<Vec<SurfaceSample>> {
    match config.mode {
        SamplingMode::Uniform | SamplingMode::Sparse => {
            Ok(poisson_disk_sample_detailed(mesh, config.target_count, config.seed)?.0)
        }
        SamplingMode::Nonuniform => nonuniform_sample_detailed(
            mesh,
            config.target_count,
            config.seed,
            config.oversample_factor,
        ),
    }
}

fn to_cloud(samples: &[SurfaceSample]) -> PointCloud {
    PointCloud::new(samples.iter().map(|s| s.position).collect())
}

/// Cumulative face-area table for area-weighted face selection.
struct AreaTable {
    cumulative: Vec<f64>,
    total: f64,
}

impl AreaTable {
    fn new(mesh: &TriangleMesh) -> Self {
        let mut cumulative = Vec::with_capacity(mesh.num_faces());
        let mut acc = 0.0;
        for f in 0..mesh.num_faces() {
            acc += mesh.face_area(f);
            cumulative.push(acc);
        }
        Self {
            cumulative,
            total: acc,
        }
    }

    fn pick_face(&self, u: f64) -> usize {
        let target = u * self.total;
        match self
            .cumulative
            .binary_search_by(|probe| probe.partial_cmp(&target).unwrap())
        {
            Ok(i) => i,
            Err(i) => i.min(self.cumulative.len() - 1),
        }
    }
}

fn random_sample(mesh: &TriangleMesh, table: &AreaTable, rng: &mut ChaCha8Rng) -> SurfaceSample {
    let face = table.pick_face(rng.random::<f64>());
    let (r1, r2): (f64, f64) = (rng.random(), rng.random());
    let sq = r1.sqrt();
    let bary = [1.0 - sq, sq * (1.0 - r2), sq * r2];
    let [a, b, c] = mesh.faces[face];
    let position =
        mesh.vertices[a] * bary[0] + mesh.vertices[b] * bary[1] + mesh.vertices[c] * bary[2];
    SurfaceSample {
        position,
        face,
        barycentric: bary,
    }
}

/// `count` points drawn uniformly over surface area: faces chosen with
/// probability proportional to area, barycentric coordinates uniform over
/// the simplex.
pub fn sample_points_on_mesh(mesh: &TriangleMesh, count: usize, seed: u64) -> PointCloud {
    to_cloud(&sample_points_on_mesh_detailed(mesh, count, seed))
}

/// Provenance-keeping variant of [`sample_points_on_mesh`].
pub fn sample_points_on_mesh_detailed(
    mesh: &TriangleMesh,
    count: usize,
    seed: u64,
) -> Vec<SurfaceSample> {
    let table = AreaTable::new(mesh);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_sample(mesh, &table, &mut rng))
        .collect()
}

/// Spatial hash over accepted darts with cell size equal to the disk radius.
struct DartGrid {
    cell: f64,
    cells: HashMap<(i64, i64, i64), Vec<Vec3>>,
}

impl DartGrid {
    fn new(radius: f64) -> Self {
        Self {
            cell: radius,
            cells: HashMap::new(),
        }
    }

    fn key(&self, p: Vec3) -> (i64, i64, i64) {
        (
            (p.x / self.cell).floor() as i64,
            (p.y / self.cell).floor() as i64,
            (p.z / self.cell).floor() as i64,
        )
    }

    fn too_close(&self, p: Vec3, radius: f64) -> bool {
        let (i, j, k) = self.key(p);
        for di in -1..=1 {
            for dj in -1..=1 {
                for dk in -1..=1 {
                    if let Some(bucket) = self.cells.get(&(i + di, j + dj, k + dk)) {
                        if bucket
                            .iter()
                            .any(|q| (p - q).norm_squared() < radius * radius)
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn insert(&mut self, p: Vec3) {
        self.cells.entry(self.key(p)).or_default().push(p);
    }
}

const POISSON_BAND: f64 = 0.10;
const POISSON_MAX_BISECTIONS: usize = 30;
const POISSON_DART_BUDGET_FACTOR: usize = 40;

/// Dart throwing at a fixed radius; the candidate stream is fully determined
/// by `seed`, so repeated attempts at different radii see identical darts.
/// Stops early once the count exceeds the acceptance band.
fn throw_darts(
    mesh: &TriangleMesh,
    table: &AreaTable,
    radius: f64,
    target: usize,
    seed: u64,
) -> Vec<SurfaceSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = DartGrid::new(radius);
    let mut accepted = Vec::new();
    let budget = POISSON_DART_BUDGET_FACTOR * target.max(100);
    let too_many = ((1.0 + POISSON_BAND) * target as f64).floor() as usize + 1;
    for _ in 0..budget {
        let s = random_sample(mesh, table, &mut rng);
        if !grid.too_close(s.position, radius) {
            grid.insert(s.position);
            accepted.push(s);
            if accepted.len() >= too_many {
                break;
            }
        }
    }
    accepted
}

/// Poisson-disk sampling by dart throwing with spatial-hash rejection.
///
/// The disk radius is bisected until the accepted count lands within ±10% of
/// `target_count`; the returned points have pairwise distance ≥ the final
/// radius. Deterministic given `seed`.
pub fn poisson_disk_sample(
    mesh: &TriangleMesh,
    target_count: usize,
    seed: u64,
) -> Result<PointCloud> {
    Ok(to_cloud(
        &poisson_disk_sample_detailed(mesh, target_count, seed)?.0,
    ))
}

/// Provenance-keeping variant of [`poisson_disk_sample`]; also returns the
/// final disk radius.
pub fn poisson_disk_sample_detailed(
    mesh: &TriangleMesh,
    target_count: usize,
    seed: u64,
) -> Result<(Vec<SurfaceSample>, f64)> {
    if target_count == 0 {
        return Err(Error::EmptyInput);
    }
    let table = AreaTable::new(mesh);
    if table.total <= 0.0 || !table.total.is_finite() {
        return Err(Error::EmptyMesh);
    }
    // saturated dart throwing reaches roughly 0.8 · A / ρ² points
    let rho0 = (0.8 * table.total / target_count as f64).sqrt();
    let mut lo = rho0 / 8.0;
    let mut hi = rho0 * 8.0;
    let lo_band = ((1.0 - POISSON_BAND) * target_count as f64).ceil() as usize;
    let hi_band = ((1.0 + POISSON_BAND) * target_count as f64).floor() as usize;
    for _ in 0..POISSON_MAX_BISECTIONS {
        let radius = 0.5 * (lo + hi);
        let samples = throw_darts(mesh, &table, radius, target_count, seed);
        let n = samples.len();
        if n >= lo_band.max(1) && n <= hi_band.max(1) {
            return Ok((samples, radius));
        }
        if n > hi_band {
            // too dense: grow the radius
            lo = radius;
        } else {
            hi = radius;
        }
    }
    Err(Error::UnreachableTarget {
        target: target_count,
        iterations: POISSON_MAX_BISECTIONS,
    })
}

/// Nonuniform regime: Poisson-disk oversample of `factor · target_count`
/// points, then a uniform random subsample of exactly `target_count` of them
/// (without replacement).
pub fn nonuniform_sample(
    mesh: &TriangleMesh,
    target_count: usize,
    seed: u64,
    oversample_factor: f64,
) -> Result<PointCloud> {
    Ok(to_cloud(&nonuniform_sample_detailed(
        mesh,
        target_count,
        seed,
        oversample_factor,
    )?))
}

/// Provenance-keeping variant of [`nonuniform_sample`].
pub fn nonuniform_sample_detailed(
    mesh: &TriangleMesh,
    target_count: usize,
    seed: u64,
    oversample_factor: f64,
) -> Result<Vec<SurfaceSample>> {
    assert!(oversample_factor > 1.0, "oversample factor must exceed 1");
    let oversampled = (oversample_factor * target_count as f64).ceil() as usize;
    let (mut pool, _) = poisson_disk_sample_detailed(mesh, oversampled, seed)?;
    if pool.len() <= target_count {
        return Ok(pool);
    }
    // partial Fisher-Yates on a stream decorrelated from the dart stream
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for i in 0..target_count {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(target_count);
    Ok(pool)
}
