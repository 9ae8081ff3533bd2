//! The initial graph `I`: an induced submap made of a disk plus one stacked
//! apex, containing a non-contractible cycle, together with the edge `e*`
//! whose removal leaves a maximal outerplanar disk `D`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{SolveError, SolveResult};
use crate::submap::{
    disk_sides, explored_angles, find_chordless_4disks, is_contractible, neighborhood, CycleDisk, Neighborhood,
    NeighborPath, Submap,
};
use crate::surface_map::{EdgeId, FaceId, SurfaceMap, VertexId};

/// A disk `base` with an apex stacked on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub base: BTreeSet<VertexId>,
    pub apex: VertexId,
}

impl Candidate {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut s = self.base.clone();
        s.insert(self.apex);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialGraph {
    pub vertices: BTreeSet<VertexId>,
    pub u: VertexId,
    pub v: VertexId,
    pub e_star: EdgeId,
    /// `D = I - e*`.
    pub disk: Submap,
    /// The two `(u, v)`-paths of the boundary of `D`.
    pub paths: [Vec<VertexId>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialOutcome {
    Ready(InitialGraph),
    /// `D` has an interior vertex; the disk must be reduced first. `ends` are
    /// the ends of `e*`.
    FourDiskFound { disk: CycleDisk, ends: [VertexId; 2] },
}

/// How often each shrink rule fired while minimising.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinimizeStats {
    pub path_removals: usize,
    pub chord_shrinks: usize,
    pub generic_removals: usize,
}

fn mask(map: &SurfaceMap, set: &BTreeSet<VertexId>) -> Vec<bool> {
    let mut m = vec![false; map.num_vertices()];
    for &v in set {
        m[v] = true;
    }
    m
}

/// Grows an induced disk from face 0, stacking the first boundary apex whose
/// neighbourhood is a single path, until no stacking keeps a disk.
pub fn maximal_induced_disk(map: &SurfaceMap) -> BTreeSet<VertexId> {
    let mut xs: BTreeSet<VertexId> = map.face_vertices(0).into_iter().collect();
    'grow: loop {
        let explored = mask(map, &xs);
        for a in explored_angles(map, &explored) {
            for c in a.inner_neighbors(map).collect::<Vec<_>>() {
                let Neighborhood::Paths(ps) = neighborhood(map, &explored, c) else { continue };
                if ps.len() != 1 || ps[0].vertices.len() < 2 {
                    continue;
                }
                let mut bigger = xs.clone();
                bigger.insert(c);
                if Submap::induced(map, bigger.iter().copied()).is_disk(map) {
                    xs = bigger;
                    continue 'grow;
                }
            }
        }
        return xs;
    }
}

fn apex_paths(map: &SurfaceMap, base: &BTreeSet<VertexId>, apex: VertexId) -> Option<Vec<NeighborPath>> {
    match neighborhood(map, &mask(map, base), apex) {
        Neighborhood::Paths(ps) => Some(ps),
        Neighborhood::Cycle(_) => None,
    }
}

/// Shortest path inside `T[set]`, ties broken by rotation order.
fn path_within(map: &SurfaceMap, set: &BTreeSet<VertexId>, a: VertexId, b: VertexId) -> Option<Vec<VertexId>> {
    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([a]);
    prev.insert(a, a);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            while *path.last().unwrap() != a {
                path.push(prev[path.last().unwrap()]);
            }
            path.reverse();
            return Some(path);
        }
        for w in map.neighbors(x) {
            if set.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    None
}

/// The base is an induced disk, the apex has at least two neighbouring
/// paths (one with an edge) and every cycle through the apex entering and
/// leaving by different paths is non-contractible.
pub fn has_noncontractible_cycle(map: &SurfaceMap, cand: &Candidate) -> bool {
    if cand.base.contains(&cand.apex) || !Submap::induced(map, cand.base.iter().copied()).is_disk(map) {
        return false;
    }
    let Some(ps) = apex_paths(map, &cand.base, cand.apex) else {
        return false;
    };
    if ps.len() < 2 || ps.iter().all(|p| p.vertices.len() < 2) {
        return false;
    }
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let (a, b) = (ps[i].vertices[0], ps[j].vertices[0]);
            let Some(path) = path_within(map, &cand.base, a, b) else {
                return false;
            };
            let mut cycle = vec![cand.apex];
            cycle.extend(path);
            if is_contractible(map, &cycle).unwrap_or(true) {
                return false;
            }
        }
    }
    true
}

/// First boundary apex of the disk satisfying [`has_noncontractible_cycle`].
pub fn build_i_candidate(map: &SurfaceMap, base: &BTreeSet<VertexId>) -> SolveResult<Candidate> {
    let explored = mask(map, base);
    let mut tried = BTreeSet::new();
    for a in explored_angles(map, &explored) {
        for c in a.inner_neighbors(map).collect::<Vec<_>>() {
            if !tried.insert(c) {
                continue;
            }
            let cand = Candidate { base: base.clone(), apex: c };
            if has_noncontractible_cycle(map, &cand) {
                return Ok(cand);
            }
        }
    }
    Err(SolveError::internal("no boundary apex of the maximal disk closes a non-contractible cycle"))
}

/// Boundary cycle of the disk `D~ + apex` (apex fan over the first path with
/// an edge), as a vertex sequence.
fn boundary_cycle(map: &SurfaceMap, faces: &BTreeSet<FaceId>) -> Option<Vec<VertexId>> {
    let sub = Submap::from_faces(faces.iter().copied()).closure(map);
    let bs = sub.boundary(map).ok()?;
    if bs.cycles.len() != 1 {
        return None;
    }
    Some(bs.cycles[0].iter().map(|&i| bs.angles[i].vertex).collect())
}

fn apex_disk_faces(map: &SurfaceMap, cand: &Candidate, w: &NeighborPath) -> BTreeSet<FaceId> {
    let mut faces = Submap::induced(map, cand.base.iter().copied()).faces;
    for k in 0..w.darts.len() - 1 {
        faces.insert(map.corner_face(w.darts[k]));
    }
    faces
}

/// Splits a cycle at two of its vertices into the two open paths between them.
fn split_cycle(cycle: &[VertexId], a: VertexId, b: VertexId) -> Option<[Vec<VertexId>; 2]> {
    let k = cycle.len();
    let ia = cycle.iter().position(|&x| x == a)?;
    let ib = cycle.iter().position(|&x| x == b)?;
    let walk = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut i = (from + 1) % k;
        while i != to {
            out.push(cycle[i]);
            i = (i + 1) % k;
        }
        out
    };
    Some([walk(ia, ib), walk(ib, ia)])
}

/// Vertices removable as a whole neighbouring path: inner vertices of a
/// `(v, u_j)`-path of the boundary with no neighbour inside the other path.
fn path_removal_targets(map: &SurfaceMap, cand: &Candidate) -> Vec<VertexId> {
    let Some(ps) = apex_paths(map, &cand.base, cand.apex) else { return Vec::new() };
    let Some(wi) = ps.iter().position(|p| p.vertices.len() >= 2) else { return Vec::new() };
    let faces = apex_disk_faces(map, cand, &ps[wi]);
    let Some(cycle) = boundary_cycle(map, &faces) else { return Vec::new() };
    let mut out = Vec::new();
    for (j, p) in ps.iter().enumerate() {
        if j == wi {
            continue;
        }
        for &uj in &p.vertices {
            let Some([p1, p2]) = split_cycle(&cycle, cand.apex, uj) else { continue };
            for (mine, other) in [(&p1, &p2), (&p2, &p1)] {
                let others: BTreeSet<VertexId> = other.iter().copied().collect();
                for &x in mine {
                    if !map.neighbors(x).any(|y| others.contains(&y)) && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

/// Vertex sets cut off by chords of the base boundary:
/// the side whose boundary path holds an apex-fan edge and another neighbour.
fn chord_shrink_targets(map: &SurfaceMap, cand: &Candidate) -> Vec<BTreeSet<VertexId>> {
    let Some(ps) = apex_paths(map, &cand.base, cand.apex) else { return Vec::new() };
    let Some(wi) = ps.iter().position(|p| p.vertices.len() >= 2) else { return Vec::new() };
    let w = &ps[wi].vertices;
    let us: BTreeSet<VertexId> =
        ps.iter().enumerate().filter(|(j, _)| *j != wi).flat_map(|(_, p)| p.vertices.iter().copied()).collect();
    let base_sub = Submap::induced(map, cand.base.iter().copied());
    let Some(cycle) = boundary_cycle(map, &base_sub.faces) else { return Vec::new() };
    let on: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let bedges: BTreeSet<EdgeId> = base_sub.boundary_edges(map);
    let mut out = Vec::new();
    for &e in &base_sub.edges {
        let [x, y] = map.endpoints(e);
        if bedges.contains(&e) || !on.contains(&x) || !on.contains(&y) {
            continue;
        }
        let Some(halves) = split_cycle(&cycle, x, y) else { continue };
        for half in halves {
            let mut seq = vec![x];
            seq.extend(&half);
            seq.push(y);
            let has_w_edge = seq.windows(2).any(|p| {
                w.windows(2).any(|q| (q[0] == p[0] && q[1] == p[1]) || (q[0] == p[1] && q[1] == p[0]))
            });
            let has_u = half.iter().any(|h| us.contains(h));
            if !(has_w_edge && has_u) {
                continue;
            }
            // the sub-disk bounded by this half and the chord
            let side_of_half: BTreeSet<VertexId> = half.iter().copied().collect();
            let cut = seq;
            let Ok(sides) = disk_sides(map, &cut) else { continue };
            for s in sides {
                if !s.faces.is_subset(&base_sub.faces) {
                    continue;
                }
                let mut verts: BTreeSet<VertexId> = s.interior_vertices.clone();
                verts.extend(cut.iter().copied());
                if side_of_half.iter().all(|h| verts.contains(h)) && verts.len() < cand.base.len() {
                    out.push(verts);
                }
            }
        }
    }
    out
}

/// Shrinks a candidate to a fixpoint of the path and chord rules, falling back to
/// any single-vertex removal that keeps a non-contractible cycle.
pub fn minimize_i(map: &SurfaceMap, mut cand: Candidate) -> SolveResult<(Candidate, MinimizeStats)> {
    if !has_noncontractible_cycle(map, &cand) {
        return Err(SolveError::internal("candidate does not close a non-contractible cycle"));
    }
    let mut stats = MinimizeStats::default();
    'shrink: loop {
        for x in path_removal_targets(map, &cand) {
            let mut next = cand.clone();
            if !next.base.remove(&x) {
                continue;
            }
            if has_noncontractible_cycle(map, &next) {
                cand = next;
                stats.path_removals += 1;
                continue 'shrink;
            }
        }
        for verts in chord_shrink_targets(map, &cand) {
            let next = Candidate { base: verts, apex: cand.apex };
            if has_noncontractible_cycle(map, &next) {
                cand = next;
                stats.chord_shrinks += 1;
                continue 'shrink;
            }
        }
        for &x in &cand.base {
            let mut next = cand.clone();
            next.base.remove(&x);
            if has_noncontractible_cycle(map, &next) {
                cand = next;
                stats.generic_removals += 1;
                continue 'shrink;
            }
        }
        return Ok((cand, stats));
    }
}

/// Names `u`, `v` and `e*` on a minimal candidate and checks that `D` is
/// maximal outerplanar with exactly `u` and `v` of degree 2.
pub fn extract_uv_and_d(map: &SurfaceMap, cand: &Candidate) -> SolveResult<InitialOutcome> {
    let ps = apex_paths(map, &cand.base, cand.apex).ok_or_else(|| SolveError::internal("apex closes a cycle"))?;
    let singles: Vec<&NeighborPath> = ps.iter().filter(|p| p.vertices.len() == 1).collect();
    if ps.len() != 2 || singles.len() != 1 {
        let shape: Vec<usize> = ps.iter().map(|p| p.vertices.len()).collect();
        return Err(SolveError::internal(format!("minimal candidate has neighbouring paths of sizes {shape:?}, expected one edge path and one vertex")));
    }
    let v = cand.apex;
    let u = singles[0].vertices[0];
    let e_star = map.edge_between(u, v).expect("apex is adjacent to its neighbours");
    let vertices = cand.vertices();
    let induced = Submap::induced(map, vertices.iter().copied());
    if induced.faces.iter().any(|&f| map.face_edges(f).contains(&e_star)) {
        return Err(SolveError::internal("e* lies on a face of I"));
    }
    let mut disk = induced.clone();
    disk.edges.remove(&e_star);
    if !disk.is_disk(map) {
        return Err(SolveError::internal("I - e* is not a disk"));
    }
    let bs = disk.boundary(map).map_err(|e| SolveError::internal(e.to_string()))?;
    let on_boundary: BTreeSet<VertexId> = bs.angles.iter().map(|a| a.vertex).collect();
    if let Some(&z) = vertices.iter().find(|z| !on_boundary.contains(z)) {
        let mut found: Vec<CycleDisk> = find_chordless_4disks(map, &disk)
            .into_iter()
            .filter(|d| d.side.interior_vertices.contains(&z))
            .collect();
        found.sort_by_key(|d| d.side.faces.len());
        return match found.into_iter().next() {
            Some(disk) => Ok(InitialOutcome::FourDiskFound { disk, ends: [u, v] }),
            None => Err(SolveError::internal(format!("D has interior vertex {z} but no chordless 4-disk around it"))),
        };
    }
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &e in &disk.edges {
        for w in map.endpoints(e) {
            *deg.entry(w).or_default() += 1;
        }
    }
    let twos: BTreeSet<VertexId> = deg.iter().filter(|(_, &d)| d == 2).map(|(&w, _)| w).collect();
    if twos != BTreeSet::from([u, v]) {
        return Err(SolveError::internal(format!("degree-2 vertices of D are {twos:?}, expected {{{u}, {v}}}")));
    }
    let cycle: Vec<VertexId> = bs.cycles[0].iter().map(|&i| bs.angles[i].vertex).collect();
    let [p1, p2] = split_cycle(&cycle, u, v).ok_or_else(|| SolveError::internal("u or v missing from boundary"))?;
    let full = |mid: Vec<VertexId>| {
        let mut p = vec![u];
        p.extend(mid);
        p.push(v);
        p
    };
    let mut p2 = p2;
    p2.reverse();
    Ok(InitialOutcome::Ready(InitialGraph { vertices, u, v, e_star, disk, paths: [full(p1), full(p2)] }))
}

/// Runs the whole construction: maximal disk, candidate, minimisation and
/// extraction.
pub fn build_initial_graph(map: &SurfaceMap) -> SolveResult<(InitialOutcome, MinimizeStats)> {
    let base = maximal_induced_disk(map);
    let cand = build_i_candidate(map, &base)?;
    let (cand, stats) = minimize_i(map, cand)?;
    Ok((extract_uv_and_d(map, &cand)?, stats))
}
