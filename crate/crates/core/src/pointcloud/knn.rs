//! Exact k-nearest-neighbor queries over a static kd-tree.

use crate::error::{Error, Result};
use crate::Vec3;

/// A static kd-tree over a point list, answering exact Euclidean kNN queries.
///
/// Construction is a single-writer phase; afterwards the index is immutable
/// and can be queried from any number of threads.
#[derive(Debug, Clone)]
pub struct KnnIndex {
    points: Vec<Vec3>,
    /// Point indices arranged in kd-tree order (median-split subranges).
    order: Vec<u32>,
}

/// A neighbor hit: original point index and distance to the query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
}

impl KnnIndex {
    /// Build the index; fails on an empty point list.
    pub fn build(points: &[Vec3]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let mut order: Vec<u32> = (0..points.len() as u32).collect();
        let mut tree = Self {
            points: points.to_vec(),
            order,
        };
        order = std::mem::take(&mut tree.order);
        tree.build_range(&mut order, 0);
        tree.order = order;
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn build_range(&self, range: &mut [u32], depth: usize) {
        if range.len() <= 1 {
            return;
        }
        let axis = depth % 3;
        let mid = range.len() / 2;
        range.select_nth_unstable_by(mid, |&a, &b| {
            self.points[a as usize][axis]
                .partial_cmp(&self.points[b as usize][axis])
                .unwrap()
        });
        let (left, rest) = range.split_at_mut(mid);
        self.build_range(left, depth + 1);
        self.build_range(&mut rest[1..], depth + 1);
    }

    /// The `min(k, n)` nearest points to `query`, sorted by ascending
    /// distance (ties broken by ascending index).
    pub fn query(&self, query: Vec3, k: usize) -> Vec<Neighbor> {
        let k = k.min(self.points.len());
        if k == 0 {
            return Vec::new();
        }
        // max-heap of the current best k, keyed by (distance², index)
        let mut heap: Vec<(f64, u32)> = Vec::with_capacity(k + 1);
        self.search(&self.order, 0, query, k, &mut heap);
        let mut result: Vec<Neighbor> = heap
            .into_iter()
            .map(|(d2, i)| Neighbor {
                index: i as usize,
                distance: d2.sqrt(),
            })
            .collect();
        result.sort_by(|a, b| {
            a.distance
                .partial_cmp(&b.distance)
                .unwrap()
                .then(a.index.cmp(&b.index))
        });
        result
    }

    fn search(
        &self,
        range: &[u32],
        depth: usize,
        query: Vec3,
        k: usize,
        heap: &mut Vec<(f64, u32)>,
    ) {
        if range.is_empty() {
            return;
        }
        let mid = range.len() / 2;
        let pivot = range[mid];
        let p = self.points[pivot as usize];
        let d2 = (p - query).norm_squared();
        push_candidate(heap, k, (d2, pivot));

        let axis = depth % 3;
        let delta = query[axis] - p[axis];
        let (near, far) = if delta < 0.0 {
            (&range[..mid], &range[mid + 1..])
        } else {
            (&range[mid + 1..], &range[..mid])
        };
        self.search(near, depth + 1, query, k, heap);
        // the far side can only help if the splitting plane is closer than
        // the current worst hit (or the heap is not full yet)
        if heap.len() < k || delta * delta < worst(heap) {
            self.search(far, depth + 1, query, k, heap);
        }
    }
}

fn worst(heap: &[(f64, u32)]) -> f64 {
    heap[0].0
}

fn push_candidate(heap: &mut Vec<(f64, u32)>, k: usize, cand: (f64, u32)) {
    let before = |a: (f64, u32), b: (f64, u32)| a.0 < b.0 || (a.0 == b.0 && a.1 < b.1);
    if heap.len() < k {
        heap.push(cand);
        // sift up
        let mut i = heap.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if before(heap[parent], heap[i]) {
                heap.swap(parent, i);
                i = parent;
            } else {
                break;
            }
        }
    } else if before(cand, heap[0]) {
        heap[0] = cand;
        // sift down
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut largest = i;
            if l < heap.len() && before(heap[largest], heap[l]) {
                largest = l;
            }
            if r < heap.len() && before(heap[largest], heap[r]) {
                largest = r;
            }
            if largest == i {
                break;
            }
            heap.swap(i, largest);
            i = largest;
        }
    }
}

/// Reference O(n) scan used by tests and by callers that want certainty.
pub fn brute_force_knn(points: &[Vec3], query: Vec3, k: usize) -> Vec<Neighbor> {
    let mut all: Vec<Neighbor> = points
        .iter()
        .enumerate()
        .map(|(i, p)| Neighbor {
            index: i,
            distance: (p - query).norm(),
        })
        .collect();
    all.sort_by(|a, b| {
        a.distance
            .partial_cmp(&b.distance)
            .unwrap()
            .then(a.index.cmp(&b.index))
    });
    all.truncate(k);
    all
}
