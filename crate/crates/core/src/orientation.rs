//! Partial and total edge orientations with running outdegree tallies.

use crate::surface_map::{EdgeId, SurfaceMap, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    ends: Vec<[VertexId; 2]>,
    tails: Vec<Option<VertexId>>,
    outdeg: Vec<usize>,
}

impl Orientation {
    /// Empty orientation over the edges of `map`.
    pub fn new(map: &SurfaceMap) -> Self {
        Orientation {
            ends: (0..map.num_edges()).map(|e| map.endpoints(e)).collect(),
            tails: vec![None; map.num_edges()],
            outdeg: vec![0; map.num_vertices()],
        }
    }

    /// Directs `e` out of `tail`, replacing any earlier direction.
    ///
    /// Panics if `tail` is not an endpoint of `e`.
    pub fn set(&mut self, e: EdgeId, tail: VertexId) {
        assert!(self.ends[e].contains(&tail), "vertex {tail} is not an end of edge {e}");
        self.clear(e);
        self.tails[e] = Some(tail);
        self.outdeg[tail] += 1;
    }

    pub fn clear(&mut self, e: EdgeId) {
        if let Some(t) = self.tails[e].take() {
            self.outdeg[t] -= 1;
        }
    }

    /// Reverses an oriented edge; unoriented edges are left alone.
    pub fn flip(&mut self, e: EdgeId) {
        if let Some(t) = self.tails[e] {
            self.set(e, self.other_end(e, t));
        }
    }

    pub fn tail(&self, e: EdgeId) -> Option<VertexId> {
        self.tails[e]
    }

    pub fn head(&self, e: EdgeId) -> Option<VertexId> {
        self.tails[e].map(|t| self.other_end(e, t))
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn outdeg(&self, v: VertexId) -> usize {
        self.outdeg[v]
    }

    pub fn outdegrees(&self) -> &[usize] {
        &self.outdeg
    }

    /// `-outdeg(v) mod 3`.
    pub fn demand(&self, v: VertexId) -> usize {
        (3 - self.outdeg[v] % 3) % 3
    }

    pub fn num_edges(&self) -> usize {
        self.tails.len()
    }

    pub fn num_oriented(&self) -> usize {
        self.tails.iter().filter(|t| t.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.tails.iter().all(Option::is_some)
    }

    pub fn tails(&self) -> &[Option<VertexId>] {
        &self.tails
    }
}
