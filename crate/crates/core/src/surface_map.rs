//! Maps on orientable and non-orientable surfaces, stored as signed rotation
//! systems over darts.
//!
//! Every edge owns two darts. `sigma` cycles the darts around each vertex,
//! `alpha` swaps the two darts of an edge and every edge carries a sign; a
//! `-` edge reverses the local orientation when a face walk crosses it.
//! Faces are traced once, at construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::MapError;

/// Directed half of an edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Reason a map fails to be a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangulationDefect {
    Loop { edge: EdgeId },
    MultiEdge { first: EdgeId, second: EdgeId },
    NonTriangularFace { face: FaceId, length: usize },
    EdgeCountMismatch { edges: usize, expected: i64 },
}

impl fmt::Display for TriangulationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangulationDefect::Loop { edge } => write!(f, "Loop (edge {edge})"),
            TriangulationDefect::MultiEdge { first, second } => {
                write!(f, "MultiEdge (edges {first} and {second})")
            }
            TriangulationDefect::NonTriangularFace { face, length } => {
                write!(f, "NonTriangularFace (face {face} has length {length})")
            }
            TriangulationDefect::EdgeCountMismatch { edges, expected } => {
                write!(f, "EdgeCountMismatch ({edges} edges, expected {expected})")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceMap {
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    alpha: Vec<usize>,
    dart_vertex: Vec<VertexId>,
    dart_edge: Vec<EdgeId>,
    /// Darts of each edge, smaller id first.
    edges: Vec<[Dart; 2]>,
    signs: Vec<Sign>,
    /// Rotation at each vertex, starting at its smallest dart.
    rotations: Vec<Vec<Dart>>,
    /// Face lying in the corner between `d` and `sigma(d)`.
    corner_face: Vec<FaceId>,
    /// One of the two traversals of each face, as the darts leaving its corners.
    faces: Vec<Vec<Dart>>,
}

impl SurfaceMap {
    /// Builds a map from a dart permutation, an edge involution and one sign
    /// per edge. Vertices are numbered by the order of their smallest dart,
    /// edges by the order of their smallest dart.
    pub fn build(sigma: &[usize], alpha: &[usize], signs: &[Sign]) -> Result<Self, MapError> {
        let n_darts = sigma.len();
        if alpha.len() != n_darts {
            return Err(MapError::DartSetMismatch(format!(
                "sigma has {} darts, alpha has {}",
                n_darts,
                alpha.len()
            )));
        }
        check_permutation(sigma, "sigma")?;
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n_darts {
                return Err(MapError::DartSetMismatch(format!("alpha maps {d} to unknown dart {a}")));
            }
            if a == d {
                return Err(MapError::FixedPointInAlpha { dart: d });
            }
            if alpha[a] != d {
                return Err(MapError::NonInvolution { dart: d });
            }
        }
        let mut edges = Vec::new();
        for d in 0..n_darts {
            if d < alpha[d] {
                edges.push((Dart(d), Dart(alpha[d])));
            }
        }
        if signs.len() != edges.len() {
            return Err(MapError::DartSetMismatch(format!(
                "{} signs given for {} edges",
                signs.len(),
                edges.len()
            )));
        }
        let mut seen = vec![false; n_darts];
        let mut rotations = Vec::new();
        for d in 0..n_darts {
            if seen[d] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut c = d;
            while !seen[c] {
                seen[c] = true;
                cycle.push(Dart(c));
                c = sigma[c];
            }
            rotations.push(cycle);
        }
        let edges = edges
            .into_iter()
            .zip(signs.iter().copied())
            .map(|((a, b), s)| (a, b, s))
            .collect::<Vec<_>>();
        Self::from_parts(rotations, edges)
    }

    /// Builds a map from explicit vertex rotations and edge records; vertex
    /// and edge ids are the positions in the two lists.
    pub fn from_parts(
        rotations: Vec<Vec<Dart>>,
        edge_list: Vec<(Dart, Dart, Sign)>,
    ) -> Result<Self, MapError> {
        let n_darts = 2 * edge_list.len();
        let mut alpha = vec![usize::MAX; n_darts];
        let mut dart_edge = vec![usize::MAX; n_darts];
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut signs = Vec::with_capacity(edge_list.len());
        for (e, &(a, b, s)) in edge_list.iter().enumerate() {
            if a == b {
                return Err(MapError::FixedPointInAlpha { dart: a.0 });
            }
            for d in [a, b] {
                if d.0 >= n_darts {
                    return Err(MapError::DartSetMismatch(format!(
                        "edge {e} uses dart {d} but only {n_darts} darts exist"
                    )));
                }
                if dart_edge[d.0] != usize::MAX {
                    return Err(MapError::NonInvolution { dart: d.0 });
                }
                dart_edge[d.0] = e;
            }
            alpha[a.0] = b.0;
            alpha[b.0] = a.0;
            edges.push(if a < b { [a, b] } else { [b, a] });
            signs.push(s);
        }
        let mut sigma = vec![usize::MAX; n_darts];
        let mut dart_vertex = vec![usize::MAX; n_darts];
        let mut normalized = Vec::with_capacity(rotations.len());
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(MapError::IsolatedVertex { vertex: v });
            }
            for (i, &d) in rot.iter().enumerate() {
                if d.0 >= n_darts {
                    return Err(MapError::DartSetMismatch(format!(
                        "vertex {v} lists dart {d} but only {n_darts} darts exist"
                    )));
                }
                if dart_vertex[d.0] != usize::MAX {
                    return Err(MapError::DartSetMismatch(format!("dart {d} listed at two vertices")));
                }
                dart_vertex[d.0] = v;
                sigma[d.0] = rot[(i + 1) % rot.len()].0;
            }
            let start = rot.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i).unwrap();
            let mut r = rot[start..].to_vec();
            r.extend_from_slice(&rot[..start]);
            normalized.push(r);
        }
        if let Some(d) = dart_vertex.iter().position(|&v| v == usize::MAX) {
            return Err(MapError::DartSetMismatch(format!("dart {d} belongs to no vertex")));
        }
        let mut sigma_inv = vec![0; n_darts];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = d;
        }
        let mut map = SurfaceMap {
            sigma,
            sigma_inv,
            alpha,
            dart_vertex,
            dart_edge,
            edges,
            signs,
            rotations: normalized,
            corner_face: vec![usize::MAX; n_darts],
            faces: Vec::new(),
        };
        map.check_connected()?;
        map.trace_faces()?;
        Ok(map)
    }

    fn check_connected(&self) -> Result<(), MapError> {
        let n = self.num_vertices();
        if n == 0 {
            return Err(MapError::DartSetMismatch("map has no darts".into()));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rotations[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(MapError::Disconnected { vertex: v }),
            None => Ok(()),
        }
    }

    /// Traces faces over flags `(dart, local orientation)`. Every face shows up
    /// as a pair of mirror orbits; one face id is assigned per pair.
    fn trace_faces(&mut self) -> Result<(), MapError> {
        let n_darts = self.sigma.len();
        let flag = |d: usize, eps: i8| 2 * d + usize::from(eps < 0);
        let mut face_of_flag = vec![usize::MAX; 2 * n_darts];
        for d0 in 0..n_darts {
            for eps0 in [1i8, -1] {
                if face_of_flag[flag(d0, eps0)] != usize::MAX {
                    continue;
                }
                let face = self.faces.len();
                let mut walk = Vec::new();
                let (mut d, mut eps) = (d0, eps0);
                loop {
                    face_of_flag[flag(d, eps)] = face;
                    walk.push(Dart(d));
                    let (nd, neps, corner) = self.face_step(d, eps);
                    self.corner_face[corner] = face;
                    // mirror flag of (d, eps) runs the same face backwards
                    let (md, meps) = (self.alpha[d], -eps * self.signs[self.dart_edge[d]].factor());
                    face_of_flag[flag(md, meps)] = face;
                    d = nd;
                    eps = neps;
                    if d == d0 && eps == eps0 {
                        break;
                    }
                    if walk.len() > 2 * n_darts {
                        return Err(MapError::DartSetMismatch("face walk does not close".into()));
                    }
                }
                self.faces.push(walk);
            }
        }
        Ok(())
    }

    /// One face-walk step: cross the edge of `d`, then turn at the far vertex.
    /// Returns the next flag and the corner passed at the far vertex.
    fn face_step(&self, d: usize, eps: i8) -> (usize, i8, usize) {
        let a = self.alpha[d];
        let neps = eps * self.signs[self.dart_edge[d]].factor();
        if neps > 0 {
            (self.sigma[a], neps, a)
        } else {
            let prev = self.sigma_inv[a];
            (prev, neps, prev)
        }
    }

    /// Builds a closed-surface triangulation from vertex triples. Vertex ids
    /// must be `0..n`. Edges are numbered by sorted endpoint pair and the
    /// dart `2e` leaves the smaller endpoint.
    pub fn from_triangles(n: usize, triangles: &[[VertexId; 3]]) -> Result<Self, MapError> {
        let mut edge_index: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        let mut edge_faces: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for t in triangles {
            if t.iter().any(|&v| v >= n) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(MapError::NotASurface(format!("bad triangle {t:?}")));
            }
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                *edge_faces.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        if let Some((e, c)) = edge_faces.iter().find(|(_, &c)| c != 2) {
            return Err(MapError::NotASurface(format!("edge {e:?} lies on {c} triangles")));
        }
        for (i, &e) in edge_faces.keys().enumerate() {
            edge_index.insert(e, i);
        }
        let dart = |a: VertexId, b: VertexId| -> Dart {
            let e = edge_index[&(a.min(b), a.max(b))];
            Dart(2 * e + usize::from(a > b))
        };
        let mut links: Vec<BTreeMap<VertexId, Vec<VertexId>>> = vec![BTreeMap::new(); n];
        for t in triangles {
            for i in 0..3 {
                let (v, a, b) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                links[v].entry(a).or_default().push(b);
                links[v].entry(b).or_default().push(a);
            }
        }
        let mut rotations = Vec::with_capacity(n);
        let mut succ: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
        for (v, link) in links.iter().enumerate() {
            let Some((&start, first)) = link.iter().next() else {
                return Err(MapError::IsolatedVertex { vertex: v });
            };
            let mut seq = vec![start];
            let (mut prev, mut cur) = (start, *first.iter().min().unwrap());
            while cur != start {
                seq.push(cur);
                let nb = &link[&cur];
                let next = if nb[0] != prev { nb[0] } else { nb[1] };
                prev = cur;
                cur = next;
                if seq.len() > link.len() {
                    break;
                }
            }
            if seq.len() != link.len() {
                return Err(MapError::NotASurface(format!("link of vertex {v} is not a single cycle")));
            }
            for i in 0..seq.len() {
                succ.insert((v, seq[i]), seq[(i + 1) % seq.len()]);
            }
            rotations.push(seq.iter().map(|&w| dart(v, w)).collect());
        }
        let edges = edge_index
            .iter()
            .map(|(&(a, b), &e)| {
                let sign = if succ[&(a, b)] != succ[&(b, a)] { Sign::Plus } else { Sign::Minus };
                (Dart(2 * e), Dart(2 * e + 1), sign)
            })
            .collect();
        Self::from_parts(rotations, edges)
    }

    /// Builds an orientable map from neighbour rotations (`rot[v]` lists the
    /// neighbours of `v` in cyclic order). Edges are numbered in order of
    /// first appearance; the dart `2e` leaves the endpoint seen first.
    pub fn from_neighbor_rotations(rot: &[Vec<VertexId>]) -> Result<Self, MapError> {
        let mut edge_of: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        let mut first_end = Vec::new();
        for (v, nbrs) in rot.iter().enumerate() {
            for &w in nbrs {
                let key = (v.min(w), v.max(w));
                if let std::collections::btree_map::Entry::Vacant(slot) = edge_of.entry(key) {
                    slot.insert(first_end.len());
                    first_end.push(v);
                }
            }
        }
        let rotations = rot
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                nbrs.iter()
                    .map(|&w| {
                        let e = edge_of[&(v.min(w), v.max(w))];
                        Dart(2 * e + usize::from(first_end[e] != v))
                    })
                    .collect()
            })
            .collect();
        let edges = (0..first_end.len()).map(|e| (Dart(2 * e), Dart(2 * e + 1), Sign::Plus)).collect();
        Self::from_parts(rotations, edges)
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// `2 - n + m - f`.
    pub fn euler_genus(&self) -> i64 {
        2 - self.num_vertices() as i64 + self.num_edges() as i64 - self.num_faces() as i64
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        Dart(self.sigma[d.0])
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        Dart(self.sigma_inv[d.0])
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        Dart(self.alpha[d.0])
    }

    pub fn vertex_of(&self, d: Dart) -> VertexId {
        self.dart_vertex[d.0]
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.dart_vertex[self.alpha[d.0]]
    }

    pub fn edge_of(&self, d: Dart) -> EdgeId {
        self.dart_edge[d.0]
    }

    pub fn edge_darts(&self, e: EdgeId) -> [Dart; 2] {
        self.edges[e]
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        let [a, b] = self.edges[e];
        [self.vertex_of(a), self.vertex_of(b)]
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signs[e]
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    /// Face in the corner between `d` and `sigma(d)`.
    pub fn corner_face(&self, d: Dart) -> FaceId {
        self.corner_face[d.0]
    }

    /// The two faces on either side of an edge (equal when the edge has the
    /// same face on both sides).
    pub fn edge_faces(&self, e: EdgeId) -> [FaceId; 2] {
        let d = self.edges[e][0];
        let (f1, f2) = (self.corner_face(self.sigma_inv(d)), self.corner_face(d));
        [f1.min(f2), f1.max(f2)]
    }

    pub fn face_darts(&self, f: FaceId) -> &[Dart] {
        &self.faces[f]
    }

    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        self.faces[f].iter().map(|&d| self.vertex_of(d)).collect()
    }

    pub fn face_edges(&self, f: FaceId) -> Vec<EdgeId> {
        self.faces[f].iter().map(|&d| self.edge_of(d)).collect()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotations[v].iter().map(move |&d| self.head(d))
    }

    /// First dart (in rotation order) from `u` to `v`.
    pub fn dart_between(&self, u: VertexId, v: VertexId) -> Option<Dart> {
        self.rotations[u].iter().copied().find(|&d| self.head(d) == v)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.dart_between(u, v).map(|d| self.edge_of(d))
    }

    /// True when some assignment of vertex flips makes every sign `+`.
    pub fn is_orientable(&self) -> bool {
        let n = self.num_vertices();
        let mut flip: Vec<Option<i8>> = vec![None; n];
        for root in 0..n {
            if flip[root].is_some() {
                continue;
            }
            flip[root] = Some(1);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let fv = flip[v].unwrap();
                for &d in &self.rotations[v] {
                    let w = self.head(d);
                    let want = fv * self.signs[self.edge_of(d)].factor();
                    match flip[w] {
                        None => {
                            flip[w] = Some(want);
                            stack.push(w);
                        }
                        Some(fw) if fw != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Reports the first reason the map is not a triangulation.
    pub fn triangulation_defect(&self) -> Option<TriangulationDefect> {
        let mut seen: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        for e in 0..self.num_edges() {
            let [a, b] = self.endpoints(e);
            if a == b {
                return Some(TriangulationDefect::Loop { edge: e });
            }
            if let Some(&first) = seen.get(&(a.min(b), a.max(b))) {
                return Some(TriangulationDefect::MultiEdge { first, second: e });
            }
            seen.insert((a.min(b), a.max(b)), e);
        }
        for (f, walk) in self.faces.iter().enumerate() {
            if walk.len() != 3 {
                return Some(TriangulationDefect::NonTriangularFace { face: f, length: walk.len() });
            }
        }
        let expected = 3 * self.num_vertices() as i64 - 6 + 3 * self.euler_genus();
        if self.num_edges() as i64 != expected {
            return Some(TriangulationDefect::EdgeCountMismatch { edges: self.num_edges(), expected });
        }
        None
    }

    pub fn is_triangulation(&self) -> bool {
        self.triangulation_defect().is_none()
    }

    /// Vertex triples of all faces (meaningful for triangulations).
    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        (0..self.num_faces())
            .map(|f| {
                let vs = self.face_vertices(f);
                [vs[0], vs[1], vs[2]]
            })
            .collect()
    }

    /// Sorted edge list as endpoint pairs.
    pub fn edge_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        (0..self.num_edges())
            .map(|e| {
                let [a, b] = self.endpoints(e);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

fn check_permutation(p: &[usize], name: &str) -> Result<(), MapError> {
    let mut seen = vec![false; p.len()];
    for (i, &x) in p.iter().enumerate() {
        if x >= p.len() || seen[x] {
            return Err(MapError::DartSetMismatch(format!("{name} is not a permutation at dart {i}")));
        }
        seen[x] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> SurfaceMap {
        SurfaceMap::from_triangles(4, &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]).unwrap()
    }

    /// Independent face count: walk faces of an orientable map with the plain
    /// `sigma . alpha` permutation.
    fn orientable_face_count(map: &SurfaceMap) -> usize {
        let n = map.num_darts();
        let mut seen = vec![false; n];
        let mut count = 0;
        for d in 0..n {
            if seen[d] {
                continue;
            }
            count += 1;
            let mut c = d;
            while !seen[c] {
                seen[c] = true;
                c = map.sigma(map.alpha(Dart(c))).0;
            }
        }
        count
    }

    fn k7() -> SurfaceMap {
        let rot: Vec<Vec<usize>> =
            (0..7).map(|i| [1, 3, 2, 6, 4, 5].iter().map(|k| (i + k) % 7).collect()).collect();
        SurfaceMap::from_neighbor_rotations(&rot).unwrap()
    }

    #[test]
    fn tetrahedron_is_a_sphere() {
        let t = tetrahedron();
        assert_eq!((t.num_vertices(), t.num_edges(), t.num_faces()), (4, 6, 4));
        assert_eq!(t.euler_genus(), 0);
        assert!(t.is_triangulation());
        assert!(t.is_orientable());
    }

    #[test]
    fn k7_traces_fourteen_faces() {
        let m = k7();
        assert_eq!(orientable_face_count(&m), 14);
        assert_eq!(m.num_faces(), 14);
        assert_eq!(m.euler_genus(), 2);
        assert!(m.is_triangulation());
    }

    #[test]
    fn fixed_point_in_alpha_is_rejected() {
        let sigma = vec![1, 0, 2, 3];
        let alpha = vec![1, 0, 2, 3];
        assert!(matches!(
            SurfaceMap::build(&sigma, &alpha, &[Sign::Plus, Sign::Plus]),
            Err(MapError::FixedPointInAlpha { dart: 2 })
        ));
    }

    #[test]
    fn non_involution_is_rejected() {
        let sigma = vec![1, 2, 3, 0];
        let alpha = vec![1, 2, 3, 0];
        assert!(matches!(
            SurfaceMap::build(&sigma, &alpha, &[Sign::Plus, Sign::Plus]),
            Err(MapError::NonInvolution { .. })
        ));
    }

    #[test]
    fn mismatched_dart_sets_are_rejected() {
        let sigma = vec![1, 0, 2];
        let alpha = vec![1, 0];
        assert!(matches!(SurfaceMap::build(&sigma, &alpha, &[Sign::Plus]), Err(MapError::DartSetMismatch(_))));
        let rotations = vec![vec![Dart(0)], vec![Dart(1)], vec![Dart(1)]];
        assert!(SurfaceMap::from_parts(rotations, vec![(Dart(0), Dart(1), Sign::Plus)]).is_err());
    }

    #[test]
    fn build_matches_from_parts() {
        let t = tetrahedron();
        let sigma: Vec<usize> = (0..t.num_darts()).map(|d| t.sigma(Dart(d)).0).collect();
        let alpha: Vec<usize> = (0..t.num_darts()).map(|d| t.alpha(Dart(d)).0).collect();
        let signs: Vec<Sign> = (0..t.num_edges()).map(|e| t.sign(e)).collect();
        let b = SurfaceMap::build(&sigma, &alpha, &signs).unwrap();
        assert_eq!(b.num_faces(), 4);
        assert_eq!(b.edge_pairs(), t.edge_pairs());
    }

    #[test]
    fn doubled_edge_is_a_multi_edge() {
        // two vertices joined by two parallel edges, with one extra vertex
        // inside each of the two digons
        let rotations = vec![
            vec![Dart(0), Dart(4), Dart(2), Dart(6)],
            vec![Dart(1), Dart(10), Dart(3), Dart(8)],
            vec![Dart(5), Dart(9)],
            vec![Dart(7), Dart(11)],
        ];
        let edges = (0..6).map(|e| (Dart(2 * e), Dart(2 * e + 1), Sign::Plus)).collect();
        let m = SurfaceMap::from_parts(rotations, edges).unwrap();
        assert!(matches!(m.triangulation_defect(), Some(TriangulationDefect::MultiEdge { .. })));
    }

    #[test]
    fn cube_has_square_faces() {
        // cube graph: vertices as 3-bit words, planar rotation
        let rot = vec![
            vec![1, 2, 4],
            vec![0, 5, 3],
            vec![0, 3, 6],
            vec![1, 7, 2],
            vec![0, 6, 5],
            vec![1, 4, 7],
            vec![2, 7, 4],
            vec![3, 5, 6],
        ];
        let m = SurfaceMap::from_neighbor_rotations(&rot).unwrap();
        assert_eq!(m.num_faces(), 6);
        assert_eq!(m.euler_genus(), 0);
        assert!(matches!(
            m.triangulation_defect(),
            Some(TriangulationDefect::NonTriangularFace { length: 4, .. })
        ));
    }

    #[test]
    fn face_tracing_is_deterministic() {
        let a = k7();
        let b = k7();
        assert_eq!(a.faces, b.faces);
        assert_eq!(a.corner_face, b.corner_face);
    }

    #[test]
    fn every_corner_gets_a_face() {
        let m = k7();
        for d in 0..m.num_darts() {
            let f = m.corner_face(Dart(d));
            assert!(f < m.num_faces());
            assert!(m.face_vertices(f).contains(&m.vertex_of(Dart(d))));
        }
    }
}
