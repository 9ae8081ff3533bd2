//! Turns a finished exploration into an orientation: `B` is reoriented
//! backwards along its acyclic order, then `G`, `e*` and `I` are fixed.

use std::collections::BTreeSet;

use crate::error::{SolveError, SolveResult};
use crate::exploration::{EdgeClass, ExplorationState};
use crate::initial::InitialGraph;
use crate::orientation::Orientation;
use crate::surface_map::{EdgeId, SurfaceMap, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finish {
    pub orientation: Orientation,
    /// Order of the non-`I` vertices used for the `B` pass.
    pub b_order: Vec<VertexId>,
    /// Every vertex outside `I` had demand 0 right after the `B` pass.
    pub demand_zero_off_i: bool,
    pub g_forward: bool,
    pub e_star_tail: VertexId,
}

fn b_heads(map: &SurfaceMap, s: &ExplorationState, w: VertexId) -> Vec<(EdgeId, VertexId)> {
    map.rotation(w)
        .iter()
        .map(|&d| (map.edge_of(d), map.head(d)))
        .filter(|&(e, _)| s.class[e] == Some(EdgeClass::B) && s.tail[e] == Some(w))
        .collect()
}

/// Non-`I` vertices ordered so each one's `B`-heads come earlier or lie in
/// `I`; ties go to exploration order.
pub fn topo_order_b(map: &SurfaceMap, s: &ExplorationState) -> SolveResult<Vec<VertexId>> {
    let mut placed: Vec<bool> = s.in_i.clone();
    let mut order = Vec::with_capacity(s.order.len());
    let mut pending: Vec<VertexId> = s.order.clone();
    while !pending.is_empty() {
        let Some(i) = pending.iter().position(|&w| b_heads(map, s, w).iter().all(|&(_, h)| placed[h])) else {
            return Err(SolveError::internal(format!("B has a cycle through {pending:?}")));
        };
        let w = pending.remove(i);
        placed[w] = true;
        order.push(w);
    }
    Ok(order)
}

/// The `G` path from `u` to `v` as `(edge, tail when oriented forward)`.
pub fn g_path(map: &SurfaceMap, s: &ExplorationState) -> SolveResult<Vec<(EdgeId, VertexId)>> {
    let mut out = Vec::new();
    let mut used = BTreeSet::new();
    let mut cur = s.u;
    while cur != s.v {
        let step = map
            .rotation(cur)
            .iter()
            .map(|&d| (map.edge_of(d), map.head(d)))
            .find(|&(e, _)| s.class[e] == Some(EdgeClass::G) && !used.contains(&e));
        let Some((e, h)) = step else {
            return Err(SolveError::internal(format!("G stops at {cur} before reaching {}", s.v)));
        };
        used.insert(e);
        out.push((e, cur));
        cur = h;
    }
    if used.len() != s.g_edges().len() {
        return Err(SolveError::internal("G has edges off the u-v path"));
    }
    Ok(out)
}

/// Processes `order` from last to first, flipping as many of each vertex's
/// own `B`-arcs as its outdegree residue demands.
pub fn reorient_b(map: &SurfaceMap, s: &ExplorationState, order: &[VertexId], o: &mut Orientation) {
    for &w in order.iter().rev() {
        let mut own: Vec<EdgeId> = b_heads(map, s, w).into_iter().map(|(e, _)| e).collect();
        own.sort();
        let k = o.outdeg(w) % 3;
        for &e in own.iter().take(k) {
            o.flip(e);
        }
    }
}

fn base_orientation(map: &SurfaceMap, s: &ExplorationState, g: &[(EdgeId, VertexId)], forward: bool) -> Orientation {
    let mut o = Orientation::new(map);
    for e in 0..map.num_edges() {
        if matches!(s.class[e], Some(EdgeClass::B | EdgeClass::R)) {
            o.set(e, s.tail[e].unwrap());
        }
    }
    for &(e, t) in g {
        o.set(e, if forward { t } else { o.other_end(e, t) });
    }
    o
}

/// Orients the two remaining edges of each peeled vertex, then the last
/// triangle by enumeration.
fn orient_i(map: &SurfaceMap, ig: &InitialGraph, o: &mut Orientation) -> SolveResult<()> {
    let mut left: BTreeSet<EdgeId> = ig.disk.edges.clone();
    let delta = ig
        .disk
        .faces
        .iter()
        .copied()
        .find(|&f| map.face_vertices(f).contains(&ig.v))
        .ok_or_else(|| SolveError::internal("v lies on no face of D"))?;
    let keep: BTreeSet<VertexId> = map.face_vertices(delta).into_iter().collect();
    let mut alive: BTreeSet<VertexId> = ig.vertices.clone();
    loop {
        let deg = |w: VertexId, left: &BTreeSet<EdgeId>| left.iter().filter(|&&e| map.endpoints(e).contains(&w)).count();
        let Some(x) = alive.iter().copied().find(|&w| !keep.contains(&w) && deg(w, &left) == 2) else { break };
        let mine: Vec<EdgeId> = left.iter().copied().filter(|&e| map.endpoints(e).contains(&x)).collect();
        let k = o.demand(x);
        for (i, &e) in mine.iter().enumerate() {
            let t = if i < k { x } else { o.other_end(e, x) };
            o.set(e, t);
            left.remove(&e);
        }
        alive.remove(&x);
    }
    if alive != keep || left.len() != 3 {
        return Err(SolveError::internal(format!("peeling D stopped at {alive:?}")));
    }
    let tri: Vec<EdgeId> = left.into_iter().collect();
    for mask in 0..8u32 {
        for (i, &e) in tri.iter().enumerate() {
            let [a, b] = map.endpoints(e);
            o.set(e, if mask >> i & 1 == 0 { a } else { b });
        }
        if keep.iter().all(|&w| o.demand(w) == 0) {
            return Ok(());
        }
    }
    Err(SolveError::internal(format!("no orientation of the last triangle meets the demands of {keep:?}")))
}

/// Completes the orientation after exploration.
pub fn finish(map: &SurfaceMap, s: &ExplorationState, ig: &InitialGraph) -> SolveResult<Finish> {
    if !s.is_complete() {
        return Err(SolveError::internal("exploration did not reach every vertex"));
    }
    let b_order = topo_order_b(map, s)?;
    let g = g_path(map, s)?;
    for (g_forward, e_star_tail) in [(true, ig.v), (true, ig.u), (false, ig.v), (false, ig.u)] {
        let mut o = base_orientation(map, s, &g, g_forward);
        reorient_b(map, s, &b_order, &mut o);
        let demand_zero_off_i = b_order.iter().all(|&w| o.demand(w) == 0);
        o.set(ig.e_star, e_star_tail);
        if o.demand(ig.v) != 1 {
            continue;
        }
        orient_i(map, ig, &mut o)?;
        return Ok(Finish { orientation: o, b_order, demand_zero_off_i, g_forward, e_star_tail });
    }
    Err(SolveError::internal("no choice of G and e* gives v demand 1"))
}
