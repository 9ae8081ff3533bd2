//! Submaps of a triangulation and their boundary structure.
//!
//! A submap is a triple of vertex, edge and face sets over a host map. Its
//! boundary is organised into angles: maximal runs of faces outside the
//! submap around a vertex, delimited by two edges of the closure. Angles
//! sharing an (edge, face) occurrence are consecutive, which chains them into
//! circular boundary sequences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::surface_map::{Dart, EdgeId, FaceId, SurfaceMap, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubmapError {
    #[error("vertex {vertex} has no incident edge in the closure")]
    IsolatedBoundaryVertex { vertex: VertexId },
    #[error("edge {edge} has no face outside the submap")]
    NoOutsideFace { edge: EdgeId },
    #[error("not a simple cycle: {0}")]
    NotACycle(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Submap {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
    pub faces: BTreeSet<FaceId>,
}

/// One side of a boundary edge: the edge together with a face outside the
/// submap that is incident to it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub edge: EdgeId,
    pub face: FaceId,
}

/// Boundary angle at `vertex`: the darts `d0, .., dt` in rotation order, where
/// `d0` and `dt` lie in the closure and the darts between them do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Angle {
    pub vertex: VertexId,
    pub darts: Vec<Dart>,
}

impl Angle {
    /// The first dart; identifies the angle among all angles of a submap.
    pub fn key(&self) -> Dart {
        self.darts[0]
    }

    pub fn last(&self) -> Dart {
        *self.darts.last().unwrap()
    }

    /// Faces swept by the angle, in rotation order.
    pub fn faces(&self, map: &SurfaceMap) -> Vec<FaceId> {
        self.darts[..self.darts.len() - 1].iter().map(|&d| map.corner_face(d)).collect()
    }

    /// Neighbours strictly inside the angle.
    pub fn inner_neighbors<'a>(&'a self, map: &'a SurfaceMap) -> impl Iterator<Item = VertexId> + 'a {
        self.darts[1..self.darts.len() - 1].iter().map(move |&d| map.head(d))
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.darts[1..self.darts.len() - 1].contains(&d)
    }

    pub fn sides(&self, map: &SurfaceMap) -> [Occurrence; 2] {
        let first = Occurrence { edge: map.edge_of(self.key()), face: map.corner_face(self.key()) };
        let pen = self.darts[self.darts.len() - 2];
        let last = Occurrence { edge: map.edge_of(self.last()), face: map.corner_face(pen) };
        [first, last]
    }
}

/// All angles at the given vertices for a submap described by two membership
/// tests. `edge_in` must describe the closure's edges.
pub fn collect_angles(
    map: &SurfaceMap,
    vertices: impl IntoIterator<Item = VertexId>,
    edge_in: impl Fn(EdgeId) -> bool,
    face_in: impl Fn(FaceId) -> bool,
) -> Vec<Angle> {
    let mut out = Vec::new();
    for v in vertices {
        for &d0 in map.rotation(v) {
            if !edge_in(map.edge_of(d0)) || face_in(map.corner_face(d0)) {
                continue;
            }
            let mut darts = vec![d0];
            let mut d = map.sigma(d0);
            loop {
                darts.push(d);
                if edge_in(map.edge_of(d)) {
                    break;
                }
                d = map.sigma(d);
            }
            out.push(Angle { vertex: v, darts });
        }
    }
    out
}

/// Angles of the induced submap on `explored`.
pub fn explored_angles(map: &SurfaceMap, explored: &[bool]) -> Vec<Angle> {
    let edge_in = |e| map.endpoints(e).iter().all(|&v| explored[v]);
    let face_in = |f| map.face_vertices(f).iter().all(|&v| explored[v]);
    collect_angles(map, (0..map.num_vertices()).filter(|&v| explored[v]), edge_in, face_in)
}

/// Circular sequences of angles linked through shared occurrences.
#[derive(Clone, Debug, Default)]
pub struct BoundarySequence {
    pub angles: Vec<Angle>,
    /// Each cycle lists angle indices in walking order.
    pub cycles: Vec<Vec<usize>>,
    /// Occurrence following each angle of each cycle.
    pub links: Vec<Vec<Occurrence>>,
}

impl BoundarySequence {
    pub fn from_angles(map: &SurfaceMap, angles: Vec<Angle>) -> Self {
        let sides: Vec<[Occurrence; 2]> = angles.iter().map(|a| a.sides(map)).collect();
        let mut by_occ: BTreeMap<Occurrence, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, s) in sides.iter().enumerate() {
            for (k, o) in s.iter().enumerate() {
                by_occ.entry(*o).or_default().push((i, k));
            }
        }
        let mut used = vec![false; angles.len()];
        let mut cycles = Vec::new();
        let mut links = Vec::new();
        for start in 0..angles.len() {
            if used[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut link = Vec::new();
            let (mut cur, mut out_side) = (start, 1);
            while !used[cur] {
                used[cur] = true;
                cycle.push(cur);
                let exit = sides[cur][out_side];
                link.push(exit);
                let Some(&(next, in_side)) = by_occ[&exit].iter().find(|&&p| p != (cur, out_side)) else {
                    break;
                };
                cur = next;
                out_side = 1 - in_side;
            }
            cycles.push(cycle);
            links.push(link);
        }
        BoundarySequence { angles, cycles, links }
    }

    /// Pairs of consecutive angles, as indices.
    pub fn consecutive_pairs(&self, map: &SurfaceMap) -> Vec<(usize, usize, Occurrence)> {
        let mut by_occ: BTreeMap<Occurrence, Vec<usize>> = BTreeMap::new();
        for (i, a) in self.angles.iter().enumerate() {
            for s in a.sides(map) {
                by_occ.entry(s).or_default().push(i);
            }
        }
        by_occ
            .into_iter()
            .filter(|(_, v)| v.len() == 2)
            .map(|(o, v)| (v[0], v[1], o))
            .collect()
    }

    /// Edge ids along each cycle; an edge may repeat.
    pub fn edge_cycles(&self) -> Vec<Vec<EdgeId>> {
        self.links.iter().map(|l| l.iter().map(|o| o.edge).collect()).collect()
    }

    /// One circular sequence per line, as `vertex[edge]` steps.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (c, l) in self.cycles.iter().zip(&self.links) {
            let parts: Vec<String> =
                c.iter().zip(l).map(|(&i, o)| format!("{}[{}]", self.angles[i].vertex, o.edge)).collect();
            writeln!(out, "{}", parts.join(" ")).unwrap();
        }
        out
    }
}

impl Submap {
    pub fn from_faces(faces: impl IntoIterator<Item = FaceId>) -> Self {
        Submap { faces: faces.into_iter().collect(), ..Default::default() }
    }

    pub fn from_edges(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        Submap { edges: edges.into_iter().collect(), ..Default::default() }
    }

    /// Induced submap on a vertex set.
    pub fn induced(map: &SurfaceMap, xs: impl IntoIterator<Item = VertexId>) -> Self {
        let vertices: BTreeSet<VertexId> = xs.into_iter().collect();
        let edges = (0..map.num_edges())
            .filter(|&e| map.endpoints(e).iter().all(|v| vertices.contains(v)))
            .collect();
        let faces = (0..map.num_faces())
            .filter(|&f| map.face_vertices(f).iter().all(|v| vertices.contains(v)))
            .collect();
        Submap { vertices, edges, faces }
    }

    pub fn is_closed(&self, map: &SurfaceMap) -> bool {
        self.edges.iter().all(|&e| map.endpoints(e).iter().all(|v| self.vertices.contains(v)))
            && self.faces.iter().all(|&f| map.face_edges(f).iter().all(|e| self.edges.contains(e)))
    }

    pub fn closure(&self, map: &SurfaceMap) -> Submap {
        let mut c = self.clone();
        for &f in &self.faces {
            c.edges.extend(map.face_edges(f));
        }
        for &e in &c.edges {
            c.vertices.extend(map.endpoints(e));
        }
        c
    }

    /// `|V| - |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Edges of the closure with at most one incident face in the submap.
    pub fn boundary_edges(&self, map: &SurfaceMap) -> BTreeSet<EdgeId> {
        let c = self.closure(map);
        c.edges
            .iter()
            .copied()
            .filter(|&e| {
                let [f1, f2] = map.edge_faces(e);
                let inside = usize::from(self.faces.contains(&f1)) + usize::from(f1 != f2 && self.faces.contains(&f2));
                inside <= 1
            })
            .collect()
    }

    pub fn boundary(&self, map: &SurfaceMap) -> Result<BoundarySequence, SubmapError> {
        let c = self.closure(map);
        let mut with_edge = BTreeSet::new();
        for &e in &c.edges {
            with_edge.extend(map.endpoints(e));
        }
        if let Some(&v) = c.vertices.iter().find(|v| !with_edge.contains(v)) {
            return Err(SubmapError::IsolatedBoundaryVertex { vertex: v });
        }
        let angles = collect_angles(
            map,
            c.vertices.iter().copied(),
            |e| c.edges.contains(&e),
            |f| self.faces.contains(&f),
        );
        Ok(BoundarySequence::from_angles(map, angles))
    }

    fn is_connected(&self, map: &SurfaceMap) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return false;
        };
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &e in &self.edges {
            let [a, b] = map.endpoints(e);
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Closed disk test: connected, at least one face, Euler characteristic 1
    /// and a boundary made of one simple cycle.
    pub fn is_disk(&self, map: &SurfaceMap) -> bool {
        let c = self.closure(map);
        if c.faces.is_empty() || c.euler_characteristic() != 1 || !c.is_connected(map) {
            return false;
        }
        let Ok(bs) = c.boundary(map) else {
            return false;
        };
        if bs.cycles.len() != 1 {
            return false;
        }
        let cycle = &bs.cycles[0];
        let verts: BTreeSet<VertexId> = cycle.iter().map(|&i| bs.angles[i].vertex).collect();
        let edges: BTreeSet<EdgeId> = bs.edge_cycles()[0].iter().copied().collect();
        verts.len() == cycle.len() && edges.len() == cycle.len() && cycle.len() >= 3
    }
}

/// Where the stacked vertex meets the explored part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Neighborhood {
    Cycle(Vec<VertexId>),
    Paths(Vec<NeighborPath>),
}

/// A run of explored neighbours around the stacked vertex, in rotation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborPath {
    pub vertices: Vec<VertexId>,
    /// Darts from the stacked vertex to each path vertex.
    pub darts: Vec<Dart>,
}

/// Neighbourhood of an unexplored vertex `x` in `T[explored]`.
pub fn neighborhood(map: &SurfaceMap, explored: &[bool], x: VertexId) -> Neighborhood {
    let rot = map.rotation(x);
    let k = rot.len();
    let inside: Vec<bool> = rot.iter().map(|&d| explored[map.head(d)]).collect();
    if inside.iter().all(|&b| b) {
        return Neighborhood::Cycle(rot.iter().map(|&d| map.head(d)).collect());
    }
    let Some(start) = (0..k).find(|&i| !inside[i]) else { unreachable!() };
    let mut paths = Vec::new();
    let mut cur: Option<NeighborPath> = None;
    for step in 1..=k {
        let i = (start + step) % k;
        if inside[i] {
            let p = cur.get_or_insert_with(|| NeighborPath { vertices: Vec::new(), darts: Vec::new() });
            p.vertices.push(map.head(rot[i]));
            p.darts.push(rot[i]);
        } else if let Some(p) = cur.take() {
            paths.push(p);
        }
    }
    if let Some(p) = cur.take() {
        paths.push(p);
    }
    Neighborhood::Paths(paths)
}

/// Stacks the apex of the outside face of `occ`: returns that vertex and its
/// neighbourhood, with the path through the occurrence's edge listed first.
pub fn stack(map: &SurfaceMap, explored: &[bool], occ: Occurrence) -> Result<(VertexId, Neighborhood), SubmapError> {
    let [a, b] = map.endpoints(occ.edge);
    let apex = map.face_vertices(occ.face).into_iter().find(|&v| v != a && v != b);
    let Some(c) = apex.filter(|&c| !explored[c]) else {
        return Err(SubmapError::NoOutsideFace { edge: occ.edge });
    };
    let nb = match neighborhood(map, explored, c) {
        Neighborhood::Paths(mut ps) => {
            if let Some(i) = ps.iter().position(|p| p.vertices.contains(&a) && p.vertices.contains(&b)) {
                let first = ps.remove(i);
                ps.insert(0, first);
            }
            Neighborhood::Paths(ps)
        }
        cyc => cyc,
    };
    Ok((c, nb))
}

/// Face set on one side of a cycle, with its Euler data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSide {
    pub faces: BTreeSet<FaceId>,
    pub interior_vertices: BTreeSet<VertexId>,
    pub interior_edges: BTreeSet<EdgeId>,
}

impl CycleSide {
    fn open_euler(&self) -> i64 {
        self.interior_vertices.len() as i64 - self.interior_edges.len() as i64 + self.faces.len() as i64
    }
}

fn cycle_edges(map: &SurfaceMap, cycle: &[VertexId]) -> Result<Vec<EdgeId>, SubmapError> {
    let k = cycle.len();
    if k < 3 || cycle.iter().collect::<BTreeSet<_>>().len() != k {
        return Err(SubmapError::NotACycle(format!("{cycle:?}")));
    }
    (0..k)
        .map(|i| {
            map.edge_between(cycle[i], cycle[(i + 1) % k])
                .ok_or_else(|| SubmapError::NotACycle(format!("{} and {} are not adjacent", cycle[i], cycle[(i + 1) % k])))
        })
        .collect()
}

/// Splits the faces along the cycle's edges and reports every side that is an
/// open disk bounded by the cycle exactly once.
pub fn disk_sides(map: &SurfaceMap, cycle: &[VertexId]) -> Result<Vec<CycleSide>, SubmapError> {
    let cut: BTreeSet<EdgeId> = cycle_edges(map, cycle)?.into_iter().collect();
    let on_cycle: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let mut comp = vec![usize::MAX; map.num_faces()];
    let mut sides: Vec<Vec<FaceId>> = Vec::new();
    for f0 in 0..map.num_faces() {
        if comp[f0] != usize::MAX {
            continue;
        }
        let id = sides.len();
        comp[f0] = id;
        let mut faces = vec![f0];
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            for e in map.face_edges(f) {
                if cut.contains(&e) {
                    continue;
                }
                for g in map.edge_faces(e) {
                    if comp[g] == usize::MAX {
                        comp[g] = id;
                        faces.push(g);
                        stack.push(g);
                    }
                }
            }
        }
        sides.push(faces);
    }
    let mut out = Vec::new();
    for (id, faces) in sides.into_iter().enumerate() {
        let once = cut.iter().all(|&e| {
            let [f1, f2] = map.edge_faces(e);
            (comp[f1] == id) != (comp[f2] == id)
        });
        if !once {
            continue;
        }
        let faces: BTreeSet<FaceId> = faces.into_iter().collect();
        let mut interior_vertices = BTreeSet::new();
        let mut interior_edges = BTreeSet::new();
        for &f in &faces {
            for v in map.face_vertices(f) {
                if !on_cycle.contains(&v) {
                    interior_vertices.insert(v);
                }
            }
            for e in map.face_edges(f) {
                if !cut.contains(&e) {
                    interior_edges.insert(e);
                }
            }
        }
        let side = CycleSide { faces, interior_vertices, interior_edges };
        if side.open_euler() == 1 {
            out.push(side);
        }
    }
    Ok(out)
}

/// True when the simple cycle bounds a disk.
pub fn is_contractible(map: &SurfaceMap, cycle: &[VertexId]) -> Result<bool, SubmapError> {
    Ok(!disk_sides(map, cycle)?.is_empty())
}

/// A disk bounded by a short cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDisk {
    pub cycle: Vec<VertexId>,
    pub side: CycleSide,
}

/// Every 3-cycle side that is a disk with at least two faces.
pub fn find_nontrivial_3disks(map: &SurfaceMap) -> Vec<CycleDisk> {
    let n = map.num_vertices();
    let adj: Vec<BTreeSet<VertexId>> = (0..n).map(|v| map.neighbors(v).collect()).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for &b in adj[a].range(a + 1..) {
            for &c in adj[b].range(b + 1..) {
                if !adj[a].contains(&c) {
                    continue;
                }
                let cycle = vec![a, b, c];
                for side in disk_sides(map, &cycle).expect("triangle is a cycle") {
                    if side.faces.len() >= 2 {
                        out.push(CycleDisk { cycle: cycle.clone(), side });
                    }
                }
            }
        }
    }
    out
}

/// 4-cycles of the disk `d` bounding a sub-disk of `d` whose interior holds
/// no edge between opposite corners. Cycles are listed as `[v1, v2, v3, v4]`
/// starting at their smallest vertex.
pub fn find_chordless_4disks(map: &SurfaceMap, d: &Submap) -> Vec<CycleDisk> {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for &e in &d.edges {
        let [a, b] = map.endpoints(e);
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut out = Vec::new();
    for (&a, na) in &adj {
        for &b in na.range(a + 1..) {
            for &dd in na.range(b + 1..) {
                for &c in adj[&b].intersection(&adj[&dd]) {
                    if c <= a {
                        continue;
                    }
                    let cycle = vec![a, b, c, dd];
                    let Ok(sides) = disk_sides(map, &cycle) else { continue };
                    for side in sides {
                        if !side.faces.is_subset(&d.faces) {
                            continue;
                        }
                        let chord = side.interior_edges.iter().any(|&e| {
                            let [x, y] = map.endpoints(e);
                            let pair = (x.min(y), x.max(y));
                            pair == (a.min(c), a.max(c)) || pair == (b.min(dd), b.max(dd))
                        });
                        if !chord {
                            out.push(CycleDisk { cycle: cycle.clone(), side });
                        }
                    }
                }
            }
        }
    }
    out
}

/// A connected component of the part of the map outside `T[explored]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnexploredComponent {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
    pub faces: BTreeSet<FaceId>,
    pub is_disk: bool,
}

/// Components of the unexplored part; faces are linked across unexplored
/// edges. A component is an open disk exactly when `V - E + F = 1`.
pub fn classify_unexplored(map: &SurfaceMap, explored: &[bool]) -> Vec<UnexploredComponent> {
    let face_open = |f: FaceId| map.face_vertices(f).iter().any(|&v| !explored[v]);
    let edge_open = |e: EdgeId| map.endpoints(e).iter().any(|&v| !explored[v]);
    let mut comp = vec![usize::MAX; map.num_faces()];
    let mut out = Vec::new();
    for f0 in 0..map.num_faces() {
        if comp[f0] != usize::MAX || !face_open(f0) {
            continue;
        }
        let id = out.len();
        comp[f0] = id;
        let mut c = UnexploredComponent {
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
            faces: BTreeSet::new(),
            is_disk: false,
        };
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            c.faces.insert(f);
            for v in map.face_vertices(f) {
                if !explored[v] {
                    c.vertices.insert(v);
                }
            }
            for e in map.face_edges(f) {
                if !edge_open(e) {
                    continue;
                }
                c.edges.insert(e);
                for g in map.edge_faces(e) {
                    if comp[g] == usize::MAX {
                        comp[g] = id;
                        stack.push(g);
                    }
                }
            }
        }
        c.is_disk = c.vertices.len() as i64 - c.edges.len() as i64 + c.faces.len() as i64 == 1;
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn tetrahedron() -> SurfaceMap {
        SurfaceMap::from_triangles(4, &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]).unwrap()
    }

    #[test]
    fn closure_of_a_face_adds_its_edges_and_corners() {
        let t = tetrahedron();
        let c = Submap::from_faces([0]).closure(&t);
        assert_eq!(c.vertices.len(), 3);
        assert_eq!(c.edges.len(), 3);
        assert_eq!(c.closure(&t), c);
    }

    #[test]
    fn closure_of_an_edge() {
        let t = tetrahedron();
        let c = Submap::from_edges([0]).closure(&t);
        assert_eq!(c.vertices.len(), 2);
        assert!(c.faces.is_empty());
    }

    #[test]
    fn single_edge_has_two_angles_in_one_sequence() {
        let k7 = instances::k7_torus();
        let bs = Submap::from_edges([0]).boundary(&k7).unwrap();
        assert_eq!(bs.angles.len(), 2);
        assert_eq!(bs.cycles, vec![vec![0, 1]]);
        for a in &bs.angles {
            assert_eq!(a.key(), a.last());
        }
    }

    #[test]
    fn whole_map_has_empty_boundary() {
        let k7 = instances::k7_torus();
        let all = Submap::induced(&k7, 0..7);
        assert!(all.boundary(&k7).unwrap().angles.is_empty());
        assert!(!all.is_disk(&k7));
    }

    #[test]
    fn one_face_of_tetrahedron_has_three_angles() {
        let t = tetrahedron();
        let bs = Submap::from_faces([0]).closure(&t).boundary(&t).unwrap();
        assert_eq!(bs.angles.len(), 3);
        assert_eq!(bs.cycles.len(), 1);
        assert_eq!(bs.cycles[0].len(), 3);
    }

    #[test]
    fn isolated_vertex_has_no_angle() {
        let t = tetrahedron();
        let m = Submap { vertices: BTreeSet::from([0]), ..Default::default() };
        assert_eq!(m.boundary(&t).unwrap_err(), SubmapError::IsolatedBoundaryVertex { vertex: 0 });
    }

    #[test]
    fn disk_predicate() {
        let k7 = instances::k7_torus();
        assert!(Submap::from_faces([0]).is_disk(&k7));
        let v0 = k7.face_vertices(0);
        let other = (0..k7.num_faces())
            .find(|&f| {
                let vs = k7.face_vertices(f);
                vs.iter().filter(|v| v0.contains(v)).count() == 1
            })
            .unwrap();
        assert!(!Submap::from_faces([0, other]).is_disk(&k7));
    }

    #[test]
    fn k7_has_no_nontrivial_3disk() {
        assert!(find_nontrivial_3disks(&instances::k7_torus()).is_empty());
    }

    #[test]
    fn subdivided_face_gives_one_3disk() {
        let m = instances::subdivide_face(&instances::k7_torus(), 0, 1);
        let found = find_nontrivial_3disks(&m);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].side.interior_vertices, BTreeSet::from([7]));
        assert!(is_contractible(&m, &found[0].cycle).unwrap());
    }

    #[test]
    fn tetrahedron_3disks_are_face_complements() {
        let found = find_nontrivial_3disks(&tetrahedron());
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|d| d.side.faces.len() == 3));
    }

    #[test]
    fn non_contractible_triangle_on_k7() {
        let k7 = instances::k7_torus();
        let faces: BTreeSet<Vec<usize>> = k7
            .triangles()
            .into_iter()
            .map(|t| {
                let mut v = t.to_vec();
                v.sort();
                v
            })
            .collect();
        let tri = (0..7)
            .flat_map(|a| (a + 1..7).flat_map(move |b| (b + 1..7).map(move |c| vec![a, b, c])))
            .find(|t| !faces.contains(t))
            .unwrap();
        assert!(!is_contractible(&k7, &tri).unwrap());
    }

    #[test]
    fn not_a_cycle_is_reported() {
        let k7 = instances::k7_torus();
        assert!(is_contractible(&k7, &[0, 1]).is_err());
    }

    #[test]
    fn stacking_on_a_face_of_k7() {
        let k7 = instances::k7_torus();
        let mut explored = vec![false; 7];
        for v in k7.face_vertices(0) {
            explored[v] = true;
        }
        let angles = explored_angles(&k7, &explored);
        assert_eq!(angles.len(), 3);
        let occ = angles[0].sides(&k7)[0];
        let (c, nb) = stack(&k7, &explored, occ).unwrap();
        assert!(!explored[c]);
        let Neighborhood::Paths(ps) = nb else { panic!("expected paths") };
        let [a, b] = k7.endpoints(occ.edge);
        assert!(ps[0].vertices.contains(&a) && ps[0].vertices.contains(&b));
    }

    #[test]
    fn fan_disk_has_no_chordless_4disk() {
        let k7 = instances::k7_torus();
        let d = Submap::induced(&k7, k7.face_vertices(0));
        assert!(find_chordless_4disks(&k7, &d).is_empty());
    }

    #[test]
    fn wheel_center_yields_a_chordless_4disk() {
        // octahedron: the link of every vertex is a chordless 4-cycle
        let tris = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 2, 1], [5, 3, 2], [5, 4, 3], [5, 1, 4]];
        let oct = SurfaceMap::from_triangles(6, &tris).unwrap();
        let star: Vec<FaceId> = (0..oct.num_faces()).filter(|&f| oct.face_vertices(f).contains(&0)).collect();
        let d = Submap::from_faces(star).closure(&oct);
        let found = find_chordless_4disks(&oct, &d);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].side.interior_vertices, BTreeSet::from([0]));
    }

    #[test]
    fn unexplored_components_after_face_on_k7() {
        let k7 = instances::k7_torus();
        let mut explored = vec![false; 7];
        for v in k7.face_vertices(0) {
            explored[v] = true;
        }
        let comps = classify_unexplored(&k7, &explored);
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].is_disk);
        assert!(classify_unexplored(&k7, &[true; 7]).is_empty());
    }
}
