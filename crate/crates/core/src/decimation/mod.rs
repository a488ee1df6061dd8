//! Curvature-weighted mesh decimation by greedy edge collapse.
//!
//! Two pipelines share the same validity rules (link condition, valence
//! floors, normal-flip veto) and differ only in cost and placement:
//!
//! - QSLIM: per-vertex plane quadrics, pre-scaled by `(ε + weight)` when
//!   curvature weighting is on, so weights persist through quadric
//!   accumulation across collapses; the collapsed vertex moves to the
//!   combined quadric's minimizer (falling back to the best of the two
//!   endpoints and the midpoint when the 3×3 system is ill-conditioned).
//! - Shortest-edge-midpoint: cost is the edge length, multiplied by
//!   `(ε + mean endpoint weight)` when weighting is on; placement is always
//!   the midpoint.

mod half_edge;
mod quadric;

pub use half_edge::EditableMesh;
pub use quadric::{vertex_quadrics, Quadric};

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::Vec3;

/// Decimation pipeline selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecimationMethod {
    Qslim,
    EdgeMidpoint,
}

/// Decimation parameters.
#[derive(Debug, Clone, Copy)]
pub struct DecimationConfig {
    pub method: DecimationMethod,
    pub target_faces: usize,
    pub curvature_weighting: bool,
    /// Floor ε added to every vertex weight so flat regions still collapse.
    pub weight_floor: f64,
}

impl DecimationConfig {
    pub fn new(method: DecimationMethod, target_faces: usize) -> Self {
        Self {
            method,
            target_faces,
            curvature_weighting: true,
            weight_floor: 1e-3,
        }
    }
}

/// Decimation output: the simplified mesh plus run diagnostics.
#[derive(Debug, Clone)]
pub struct DecimationOutcome {
    pub mesh: TriangleMesh,
    /// False when no admissible collapse remained above the face target
    /// (the mesh is still the best effort achieved).
    pub reached_target: bool,
    /// Collapsed undirected edges, in order, as (min, max) original-index
    /// pairs at the time of the collapse.
    pub collapses: Vec<(usize, usize)>,
}

const QSLIM_MAX_CONDITION: f64 = 1e8;

struct HeapEntry {
    cost: f64,
    a: u32,
    b: u32,
    ver_a: u32,
    ver_b: u32,
    placement: Vec3,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap: invert so the cheapest edge pops first,
        // with deterministic index tie-breaking
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.a.cmp(&self.a))
            .then_with(|| other.b.cmp(&self.b))
    }
}

/// QSLIM-style decimation with optional curvature weighting.
pub fn qslim_decimate(
    mesh: &TriangleMesh,
    weights: &[f64],
    config: &DecimationConfig,
) -> Result<DecimationOutcome> {
    run(mesh, weights, config, DecimationMethod::Qslim)
}

/// Successive shortest-edge-midpoint decimation with optional curvature
/// weighting.
pub fn edge_midpoint_decimate(
    mesh: &TriangleMesh,
    weights: &[f64],
    config: &DecimationConfig,
) -> Result<DecimationOutcome> {
    run(mesh, weights, config, DecimationMethod::EdgeMidpoint)
}

/// Dispatch on `config.method`.
pub fn decimate(
    mesh: &TriangleMesh,
    weights: &[f64],
    config: &DecimationConfig,
) -> Result<DecimationOutcome> {
    run(mesh, weights, config, config.method)
}

struct Driver {
    he: EditableMesh,
    method: DecimationMethod,
    /// Pre-scaled quadrics (QSLIM only).
    quadrics: Vec<Quadric>,
    weights: Vec<f64>,
    weighting: bool,
    floor: f64,
    version: Vec<u32>,
}

impl Driver {
    fn cost_and_placement(&self, a: u32, b: u32) -> (f64, Vec3) {
        let (pa, pb) = (self.he.positions[a as usize], self.he.positions[b as usize]);
        match self.method {
            DecimationMethod::Qslim => {
                let q = self.quadrics[a as usize] + self.quadrics[b as usize];
                let mid = (pa + pb) / 2.0;
                let placement = q.minimizer(QSLIM_MAX_CONDITION).unwrap_or_else(|| {
                    *[pa, pb, mid]
                        .iter()
                        .min_by(|x, y| q.error(**x).total_cmp(&q.error(**y)))
                        .unwrap()
                });
                (q.error(placement), placement)
            }
            DecimationMethod::EdgeMidpoint => {
                let len = (pa - pb).norm();
                let cost = if self.weighting {
                    len * (self.floor + 0.5 * (self.weights[a as usize] + self.weights[b as usize]))
                } else {
                    len
                };
                (cost, (pa + pb) / 2.0)
            }
        }
    }

    fn push_edge(&self, heap: &mut BinaryHeap<HeapEntry>, a: u32, b: u32) {
        let (a, b) = (a.min(b), a.max(b));
        let (cost, placement) = self.cost_and_placement(a, b);
        heap.push(HeapEntry {
            cost,
            a,
            b,
            ver_a: self.version[a as usize],
            ver_b: self.version[b as usize],
            placement,
        });
    }

    fn push_all_edges(&self, heap: &mut BinaryHeap<HeapEntry>) {
        for h in self.he.interior_edges() {
            self.push_edge(heap, self.he.origin_of(h), self.he.dest_of(h));
        }
    }

    /// Locate the live half-edge from `a` to `b`, if any.
    fn find_half_edge(&self, a: u32, b: u32) -> Option<u32> {
        self.he
            .outgoing_around(a)?
            .into_iter()
            .find(|&h| self.he.dest_of(h) == b)
    }
}

fn run(
    mesh: &TriangleMesh,
    weights: &[f64],
    config: &DecimationConfig,
    method: DecimationMethod,
) -> Result<DecimationOutcome> {
    if weights.len() != mesh.num_vertices() {
        return Err(Error::SizeMismatch {
            what: "decimation weights",
            expected: mesh.num_vertices(),
            actual: weights.len(),
        });
    }
    assert!(config.target_faces >= 4, "target_faces must be at least 4");
    let he = EditableMesh::build(mesh)?;

    let quadrics = if method == DecimationMethod::Qslim {
        let mut q = vertex_quadrics(mesh);
        if config.curvature_weighting {
            for (qi, w) in q.iter_mut().zip(weights) {
                *qi = qi.scale(config.weight_floor + w);
            }
        }
        q
    } else {
        Vec::new()
    };

    let mut driver = Driver {
        he,
        method,
        quadrics,
        weights: weights.to_vec(),
        weighting: config.curvature_weighting,
        floor: config.weight_floor,
        version: vec![0; mesh.num_vertices()],
    };

    let mut heap = BinaryHeap::new();
    driver.push_all_edges(&mut heap);
    let mut collapses = Vec::new();
    // rescans of the full edge set since the last successful collapse;
    // a drained queue after a fruitless rescan means no admissible collapse
    // remains anywhere
    let mut stalled_rescans = 0;

    while driver.he.live_faces() > config.target_faces {
        let entry = match heap.pop() {
            Some(e) => e,
            None => {
                // lazy invalidation may have starved the queue while valid
                // collapses still exist; rescan before giving up
                if stalled_rescans >= 1 {
                    break;
                }
                stalled_rescans += 1;
                driver.push_all_edges(&mut heap);
                match heap.pop() {
                    Some(e) => e,
                    None => break,
                }
            }
        };
        if entry.ver_a != driver.version[entry.a as usize]
            || entry.ver_b != driver.version[entry.b as usize]
        {
            continue;
        }
        let h = match driver.find_half_edge(entry.a, entry.b) {
            Some(h) => h,
            None => continue,
        };
        if !driver.he.collapse_allowed(h, entry.placement) {
            continue;
        }
        stalled_rescans = 0;
        let kept = driver.he.collapse(h, entry.placement);
        let removed = if kept == entry.a { entry.b } else { entry.a };
        collapses.push((entry.a.min(entry.b) as usize, entry.a.max(entry.b) as usize));
        if method == DecimationMethod::Qslim {
            let merged = driver.quadrics[entry.a as usize] + driver.quadrics[entry.b as usize];
            driver.quadrics[kept as usize] = merged;
        }
        // conservative feature preservation on merge
        driver.weights[kept as usize] =
            driver.weights[entry.a as usize].max(driver.weights[entry.b as usize]);
        driver.version[kept as usize] += 1;
        driver.version[removed as usize] += 1;
        // refresh costs of the merged vertex's incident edges
        if let Some(ring) = driver.he.ring_vertices(kept) {
            for n in ring {
                driver.push_edge(&mut heap, kept, n);
            }
        }
    }

    let out = driver.he.to_mesh();
    let reached_target = out.num_faces() <= config.target_faces;
    Ok(DecimationOutcome {
        mesh: out,
        reached_target,
        collapses,
    })
}
