//! Half-edge connectivity with manifold-preserving edge collapse.
//!
//! Half-edges are stored corner-table style: half-edge `3f + i` belongs to
//! face `f` and runs from the face's `i`-th corner to the next one, so
//! `next` and `prev` are index arithmetic and only `twin` is stored.
//!
//! Collapses touching the boundary are rejected outright: interior
//! simplification never needs them and the boundary polygon stays fixed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::stiffness::triangle_area;
use crate::Vec3;

pub const INVALID: u32 = u32::MAX;

/// An editable triangle mesh supporting edge collapses.
#[derive(Debug, Clone)]
pub struct EditableMesh {
    pub positions: Vec<Vec3>,
    /// Origin vertex of each half-edge.
    origin: Vec<u32>,
    /// Opposite half-edge, `INVALID` on the boundary.
    twin: Vec<u32>,
    /// One outgoing live half-edge per vertex, `INVALID` once isolated.
    vertex_he: Vec<u32>,
    face_alive: Vec<bool>,
    vertex_alive: Vec<bool>,
    live_faces: usize,
}

#[inline]
fn next(h: u32) -> u32 {
    if h % 3 == 2 {
        h - 2
    } else {
        h + 1
    }
}

#[inline]
fn prev(h: u32) -> u32 {
    if h.is_multiple_of(3) {
        h + 2
    } else {
        h - 1
    }
}

impl EditableMesh {
    /// Build connectivity; the input must be a manifold triangle mesh with
    /// consistent winding (each undirected edge carried by at most two
    /// faces, in opposite directions).
    pub fn build(mesh: &TriangleMesh) -> Result<Self> {
        mesh.validate()?;
        if mesh.is_empty() {
            return Err(Error::EmptyMesh);
        }
        let hc = mesh.faces.len() * 3;
        let mut origin = vec![0u32; hc];
        let mut twin = vec![INVALID; hc];
        let mut vertex_he = vec![INVALID; mesh.num_vertices()];
        let mut edge_map: HashMap<(u32, u32), u32> = HashMap::new();
        for (f, &[a, b, c]) in mesh.faces.iter().enumerate() {
            let corners = [a as u32, b as u32, c as u32];
            for i in 0..3 {
                let h = (3 * f + i) as u32;
                let from = corners[i];
                let to = corners[(i + 1) % 3];
                origin[h as usize] = from;
                vertex_he[from as usize] = h;
                if edge_map.insert((from, to), h).is_some() {
                    return Err(Error::InvalidMesh(format!(
                        "directed edge ({from}, {to}) appears twice; inconsistent winding or non-manifold"
                    )));
                }
            }
        }
        for (&(from, to), &h) in &edge_map {
            if let Some(&opp) = edge_map.get(&(to, from)) {
                twin[h as usize] = opp;
            }
        }
        Ok(Self {
            positions: mesh.vertices.clone(),
            origin,
            twin,
            vertex_he,
            face_alive: vec![true; mesh.faces.len()],
            vertex_alive: vec![true; mesh.num_vertices()],
            live_faces: mesh.faces.len(),
        })
    }

    pub fn live_faces(&self) -> usize {
        self.live_faces
    }

    #[inline]
    pub fn origin_of(&self, h: u32) -> u32 {
        self.origin[h as usize]
    }

    #[inline]
    pub fn dest_of(&self, h: u32) -> u32 {
        self.origin[next(h) as usize]
    }

    #[inline]
    fn face_of(h: u32) -> usize {
        (h / 3) as usize
    }

    /// Outgoing half-edges around `v`, rotating via `twin(prev(h))`.
    /// Returns `None` when the traversal hits a boundary (open fan).
    pub fn outgoing_around(&self, v: u32) -> Option<Vec<u32>> {
        let start = self.vertex_he[v as usize];
        if start == INVALID {
            return Some(Vec::new());
        }
        let mut result = Vec::with_capacity(8);
        let mut h = start;
        loop {
            result.push(h);
            let p = prev(h);
            let t = self.twin[p as usize];
            if t == INVALID {
                return None;
            }
            h = t;
            if h == start {
                return Some(result);
            }
            if result.len() > self.origin.len() {
                return None; // corrupt connectivity; treated as boundary
            }
        }
    }

    /// One-ring neighbor vertices of `v` (interior vertices only).
    pub fn ring_vertices(&self, v: u32) -> Option<Vec<u32>> {
        Some(
            self.outgoing_around(v)?
                .iter()
                .map(|&h| self.dest_of(h))
                .collect(),
        )
    }

    /// All live half-edges with `origin < dest` (one per undirected edge,
    /// interior edges only).
    pub fn interior_edges(&self) -> Vec<u32> {
        let mut edges = Vec::new();
        for h in 0..self.origin.len() as u32 {
            if !self.face_alive[Self::face_of(h)] {
                continue;
            }
            let t = self.twin[h as usize];
            if t == INVALID {
                continue;
            }
            if self.origin_of(h) < self.dest_of(h) {
                edges.push(h);
            }
        }
        edges
    }

    /// Check whether collapsing the edge of `h` (merging its dest into its
    /// origin, moved to `placement`) is topologically and geometrically
    /// admissible.
    pub fn collapse_allowed(&self, h: u32, placement: Vec3) -> bool {
        if !self.face_alive[Self::face_of(h)] {
            return false;
        }
        let t = self.twin[h as usize];
        if t == INVALID {
            return false;
        }
        let a = self.origin_of(h);
        let b = self.dest_of(h);
        if !self.vertex_alive[a as usize] || !self.vertex_alive[b as usize] {
            return false;
        }
        // interior vertices only
        let (ring_a, ring_b) = match (self.ring_vertices(a), self.ring_vertices(b)) {
            (Some(ra), Some(rb)) => (ra, rb),
            _ => return false,
        };
        let c = self.dest_of(next(h)); // opposite vertex in face(h)
        let d = self.dest_of(next(t)); // opposite vertex in face(twin)
        if c == d {
            return false;
        }
        // link condition: the rings must share exactly {c, d}
        let mut shared = 0usize;
        for &x in &ring_a {
            if ring_b.contains(&x) {
                if x != c && x != d {
                    return false;
                }
                shared += 1;
            }
        }
        if shared != 2 {
            return false;
        }
        // valence floors: merged vertex and the two opposite vertices must
        // keep valence >= 3
        if ring_a.len() + ring_b.len() < 7 {
            return false;
        }
        let val_c = match self.ring_vertices(c) {
            Some(r) => r.len(),
            None => return false,
        };
        let val_d = match self.ring_vertices(d) {
            Some(r) => r.len(),
            None => return false,
        };
        if val_c < 4 || val_d < 4 {
            return false;
        }
        // geometric veto: no surviving incident face may degenerate or have
        // its normal rotate by more than 90 degrees
        let dying = [Self::face_of(h), Self::face_of(t)];
        for &(v_moved, ring) in &[(a, &ring_a), (b, &ring_b)] {
            for &out in self.outgoing_around(v_moved).as_deref().unwrap_or(&[]) {
                let f = Self::face_of(out);
                if dying.contains(&f) || !self.face_alive[f] {
                    continue;
                }
                let base = (out - out % 3) as usize;
                let mut old_pts = [Vec3::zeros(); 3];
                let mut new_pts = [Vec3::zeros(); 3];
                for i in 0..3 {
                    let vert = self.origin[base + i];
                    old_pts[i] = self.positions[vert as usize];
                    new_pts[i] = if vert == a || vert == b {
                        placement
                    } else {
                        self.positions[vert as usize]
                    };
                }
                let old_n = (old_pts[1] - old_pts[0]).cross(&(old_pts[2] - old_pts[0]));
                let new_n = (new_pts[1] - new_pts[0]).cross(&(new_pts[2] - new_pts[0]));
                let scale = (new_pts[1] - new_pts[0])
                    .norm_squared()
                    .max((new_pts[2] - new_pts[0]).norm_squared());
                if new_n.norm() <= 1e-12 * scale || old_n.dot(&new_n) <= 0.0 {
                    return false;
                }
            }
            let _ = v_moved;
            let _ = ring;
        }
        true
    }

    /// Collapse the edge of `h`: its dest is merged into its origin, which
    /// moves to `placement`. The caller must have checked
    /// [`collapse_allowed`]. Returns the kept vertex.
    pub fn collapse(&mut self, h: u32, placement: Vec3) -> u32 {
        let t = self.twin[h as usize];
        let a = self.origin_of(h);
        let b = self.dest_of(h);
        debug_assert!(t != INVALID);

        // rewrite every outgoing half-edge of b to originate from a
        let around_b = self.outgoing_around(b).expect("interior vertex");
        for &out in &around_b {
            self.origin[out as usize] = a;
        }

        // stitch the twins across the two dying faces
        let (n1, p1) = (next(h), prev(h));
        let (n2, p2) = (next(t), prev(t));
        let (tn1, tp1) = (self.twin[n1 as usize], self.twin[p1 as usize]);
        let (tn2, tp2) = (self.twin[n2 as usize], self.twin[p2 as usize]);
        debug_assert!(tn1 != INVALID && tp1 != INVALID && tn2 != INVALID && tp2 != INVALID);
        self.twin[tn1 as usize] = tp1;
        self.twin[tp1 as usize] = tn1;
        self.twin[tn2 as usize] = tp2;
        self.twin[tp2 as usize] = tn2;

        let c = self.origin_of(tn1); // == dest of n1 before the surgery
        let d = self.origin_of(tn2);

        self.face_alive[Self::face_of(h)] = false;
        self.face_alive[Self::face_of(t)] = false;
        self.live_faces -= 2;
        self.vertex_alive[b as usize] = false;
        self.vertex_he[b as usize] = INVALID;
        // tn1 starts at c, tp1 at a, tn2 at d: all live after stitching
        self.vertex_he[c as usize] = tn1;
        self.vertex_he[a as usize] = tp1;
        self.vertex_he[d as usize] = tn2;
        self.positions[a as usize] = placement;
        a
    }

    /// Compact the surviving geometry into a plain mesh.
    pub fn to_mesh(&self) -> TriangleMesh {
        let mut vertex_map = vec![usize::MAX; self.positions.len()];
        let mut vertices = Vec::new();
        for (v, &alive) in self.vertex_alive.iter().enumerate() {
            if alive {
                vertex_map[v] = vertices.len();
                vertices.push(self.positions[v]);
            }
        }
        let mut faces = Vec::with_capacity(self.live_faces);
        for f in 0..self.face_alive.len() {
            if !self.face_alive[f] {
                continue;
            }
            let base = 3 * f;
            faces.push([
                vertex_map[self.origin[base] as usize],
                vertex_map[self.origin[base + 1] as usize],
                vertex_map[self.origin[base + 2] as usize],
            ]);
        }
        TriangleMesh::new(vertices, faces)
    }

    /// Internal consistency check used by tests: twin involution, origin
    /// agreement across twins, live faces referencing live vertices, and
    /// positive areas.
    pub fn check_consistency(&self) -> Result<()> {
        for f in 0..self.face_alive.len() {
            if !self.face_alive[f] {
                continue;
            }
            for i in 0..3 {
                let h = (3 * f + i) as u32;
                let o = self.origin_of(h);
                if !self.vertex_alive[o as usize] {
                    return Err(Error::InvalidMesh(format!(
                        "live face {f} references dead vertex {o}"
                    )));
                }
                let t = self.twin[h as usize];
                if t != INVALID {
                    if self.twin[t as usize] != h {
                        return Err(Error::InvalidMesh("twin involution broken".into()));
                    }
                    if !self.face_alive[Self::face_of(t)] {
                        return Err(Error::InvalidMesh("twin points at dead face".into()));
                    }
                    if self.origin_of(t) != self.dest_of(h) || self.dest_of(t) != self.origin_of(h)
                    {
                        return Err(Error::InvalidMesh("twin endpoints disagree".into()));
                    }
                }
            }
            let base = 3 * f;
            let pts = [
                self.positions[self.origin[base] as usize],
                self.positions[self.origin[base + 1] as usize],
                self.positions[self.origin[base + 2] as usize],
            ];
            if triangle_area(pts[0], pts[1], pts[2]) <= 0.0 {
                return Err(Error::InvalidMesh(format!("face {f} has zero area")));
            }
        }
        Ok(())
    }
}
