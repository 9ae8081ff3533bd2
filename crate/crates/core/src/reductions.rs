//! Reductions of separating short cycles and the top-level solver.
//!
//! A non-trivial 3-disk is replaced by a single face, a chordless 4-disk by
//! two faces sharing a new diagonal. The smaller map is solved and the
//! removed interior is refilled by a planar orientation.

use std::collections::BTreeSet;

use crate::error::{SolveError, SolveResult};
use crate::exploration::{explore_logged, EdgeClass, ExploreOptions};
use crate::finishing::finish;
use crate::initial::{build_initial_graph, InitialOutcome, MinimizeStats};
use crate::oracle::verify;
use crate::orientation::Orientation;
use crate::planar::{orient_4disk_variant, orient_disk_interior};
use crate::submap::{find_nontrivial_3disks, CycleDisk};
use crate::surface_map::{SurfaceMap, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    ThreeDisk,
    FourDisk,
}

/// Everything needed to lift an orientation of the reduced map back.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub original: SurfaceMap,
    /// Original id of each vertex of the reduced map.
    pub old_of_new: Vec<VertexId>,
    /// Boundary cycle in original ids; for 4-disks the diagonal is `[1]-[3]`.
    pub cycle: Vec<VertexId>,
    pub interior_faces: Vec<[VertexId; 3]>,
}

fn rebuild(map: &SurfaceMap, disk: &CycleDisk, added: &[[VertexId; 3]]) -> SolveResult<(SurfaceMap, Vec<VertexId>)> {
    let old_of_new: Vec<VertexId> =
        (0..map.num_vertices()).filter(|w| !disk.side.interior_vertices.contains(w)).collect();
    let mut new_of_old = vec![usize::MAX; map.num_vertices()];
    for (i, &w) in old_of_new.iter().enumerate() {
        new_of_old[w] = i;
    }
    let mut tris: Vec<[VertexId; 3]> = map
        .triangles()
        .into_iter()
        .enumerate()
        .filter(|(f, _)| !disk.side.faces.contains(f))
        .map(|(_, t)| t)
        .collect();
    tris.extend_from_slice(added);
    let tris: Vec<[VertexId; 3]> = tris.iter().map(|t| t.map(|w| new_of_old[w])).collect();
    let reduced = SurfaceMap::from_triangles(old_of_new.len(), &tris)
        .map_err(|e| SolveError::internal(format!("reduced map is invalid: {e}")))?;
    if !reduced.is_triangulation() {
        return Err(SolveError::internal("reduced map is not a simple triangulation"));
    }
    Ok((reduced, old_of_new))
}

fn interior_triangles(map: &SurfaceMap, disk: &CycleDisk) -> Vec<[VertexId; 3]> {
    let tris = map.triangles();
    disk.side.faces.iter().map(|&f| tris[f]).collect()
}

/// Replaces the inside of a 3-disk by one face.
pub fn reduce_3disk(map: &SurfaceMap, disk: &CycleDisk) -> SolveResult<(SurfaceMap, Reduction)> {
    let c = [disk.cycle[0], disk.cycle[1], disk.cycle[2]];
    let (reduced, old_of_new) = rebuild(map, disk, &[c])?;
    let r = Reduction {
        kind: ReductionKind::ThreeDisk,
        original: map.clone(),
        old_of_new,
        cycle: c.to_vec(),
        interior_faces: interior_triangles(map, disk),
    };
    Ok((reduced, r))
}

/// Replaces the inside of a chordless 4-disk by two faces on a diagonal that
/// is not already an edge and does not join `avoid`.
pub fn reduce_4disk(map: &SurfaceMap, disk: &CycleDisk, avoid: [VertexId; 2]) -> SolveResult<(SurfaceMap, Reduction)> {
    let c = &disk.cycle;
    let avoid: BTreeSet<VertexId> = avoid.into_iter().collect();
    let usable = |a: VertexId, b: VertexId| map.edge_between(a, b).is_none() && avoid != BTreeSet::from([a, b]);
    let cycle = if usable(c[1], c[3]) {
        vec![c[0], c[1], c[2], c[3]]
    } else if usable(c[2], c[0]) {
        vec![c[1], c[2], c[3], c[0]]
    } else {
        return Err(SolveError::internal(format!("4-cycle {c:?} has no usable diagonal")));
    };
    let (v1, v2, v3, v4) = (cycle[0], cycle[1], cycle[2], cycle[3]);
    let (reduced, old_of_new) = rebuild(map, disk, &[[v1, v2, v4], [v2, v3, v4]])?;
    let r = Reduction {
        kind: ReductionKind::FourDisk,
        original: map.clone(),
        old_of_new,
        cycle,
        interior_faces: interior_triangles(map, disk),
    };
    Ok((reduced, r))
}

/// Lifts an orientation of the reduced map to the original map.
pub fn glue(reduced: &SurfaceMap, o: &Orientation, r: &Reduction) -> SolveResult<Orientation> {
    let orig = &r.original;
    let mut out = Orientation::new(orig);
    let diagonal = (r.kind == ReductionKind::FourDisk).then(|| BTreeSet::from([r.cycle[1], r.cycle[3]]));
    let mut diagonal_tail = None;
    for e in 0..reduced.num_edges() {
        let [a, b] = reduced.endpoints(e).map(|w| r.old_of_new[w]);
        let t = r.old_of_new[o.tail(e).ok_or_else(|| SolveError::internal("reduced orientation is partial"))?];
        if diagonal.as_ref() == Some(&BTreeSet::from([a, b])) {
            diagonal_tail = Some(t);
            continue;
        }
        let oe = orig.edge_between(a, b).ok_or_else(|| SolveError::internal("reduced edge missing from original"))?;
        out.set(oe, t);
    }
    let arcs = match r.kind {
        ReductionKind::ThreeDisk => orient_disk_interior(&r.interior_faces, [r.cycle[0], r.cycle[1], r.cycle[2]]),
        ReductionKind::FourDisk => {
            let c = &r.cycle;
            let boundary =
                if diagonal_tail == Some(c[1]) { [c[0], c[1], c[2], c[3]] } else { [c[2], c[3], c[0], c[1]] };
            orient_4disk_variant(&r.interior_faces, boundary)
        }
    }
    .map_err(|e| SolveError::internal(format!("planar refill failed: {e}")))?;
    for (t, h) in arcs {
        let e = orig.edge_between(t, h).ok_or_else(|| SolveError::internal("planar arc is not an edge"))?;
        out.set(e, t);
    }
    if !out.is_total() {
        return Err(SolveError::internal("glued orientation leaves edges unoriented"));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub check_invariants: bool,
    pub trace: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub orientation: Orientation,
    pub reductions: Vec<ReductionKind>,
    pub steps: usize,
    pub fallbacks: usize,
    pub invariant_checks: usize,
    /// Demand was 0 off `V(I)` right after the `B` pass.
    pub demand_zero_off_i: bool,
    pub minimize: MinimizeStats,
    /// Exploration class of each input edge; `None` for edges refilled by a
    /// reduction.
    pub classes: Vec<Option<EdgeClass>>,
    pub trace: Vec<String>,
}

impl SolveReport {
    pub fn count(&self, kind: ReductionKind) -> usize {
        self.reductions.iter().filter(|&&k| k == kind).count()
    }
}

/// Checks the preconditions shared by the solver and the command line.
pub fn check_input(map: &SurfaceMap) -> SolveResult<()> {
    if let Some(d) = map.triangulation_defect() {
        return Err(SolveError::NotATriangulation(d));
    }
    let genus = map.euler_genus();
    if genus < 2 {
        return Err(SolveError::GenusTooSmall { genus });
    }
    Ok(())
}

/// Orients a triangulation of Euler genus at least 2 so that every
/// outdegree is a positive multiple of 3.
pub fn solve(map: &SurfaceMap, opts: SolveOptions) -> SolveResult<SolveReport> {
    let mut trace = Vec::new();
    let mut report = solve_logged(map, opts, &mut trace)?;
    report.trace = trace;
    Ok(report)
}

/// [`solve`] writing trace lines into `trace` as they are produced, so the
/// log survives a failure. The returned report's `trace` is left empty.
pub fn solve_logged(map: &SurfaceMap, opts: SolveOptions, trace: &mut Vec<String>) -> SolveResult<SolveReport> {
    check_input(map)?;
    let mut cur = map.clone();
    let mut stack: Vec<(SurfaceMap, Reduction)> = Vec::new();
    let (ig, minimize) = loop {
        let mut disks = find_nontrivial_3disks(&cur);
        disks.sort_by_key(|d| d.side.faces.len());
        if let Some(d) = disks.first() {
            let (next, r) = reduce_3disk(&cur, d)?;
            if opts.trace {
                trace.push(format!("reduce 3-disk {:?} faces {}", r.cycle, d.side.faces.len()));
            }
            stack.push((next.clone(), r));
            cur = next;
            continue;
        }
        match build_initial_graph(&cur)? {
            (InitialOutcome::Ready(ig), stats) => break (ig, stats),
            (InitialOutcome::FourDiskFound { disk, ends }, _) => {
                let (next, r) = reduce_4disk(&cur, &disk, ends)?;
                if opts.trace {
                    trace.push(format!("reduce 4-disk {:?} faces {}", r.cycle, disk.side.faces.len()));
                }
                stack.push((next.clone(), r));
                cur = next;
            }
        }
    };
    if opts.trace {
        trace.push(format!("initial u {} v {} e* {} vertices {:?}", ig.u, ig.v, ig.e_star, ig.vertices));
    }
    let ex_opts = ExploreOptions { check_invariants: opts.check_invariants };
    let ex = explore_logged(&cur, &ig, ex_opts, opts.trace.then_some(&mut *trace))?;
    let fin = finish(&cur, &ex.state, &ig)?;
    if opts.trace {
        let dir = if fin.g_forward { "forward" } else { "backward" };
        trace.push(format!("finish G {dir} e* tail {}", fin.e_star_tail));
    }
    let mut input_of_core: Vec<VertexId> = (0..cur.num_vertices()).collect();
    for (_, r) in stack.iter().rev() {
        input_of_core = input_of_core.iter().map(|&w| r.old_of_new[w]).collect();
    }
    let mut classes = vec![None; map.num_edges()];
    for e in 0..cur.num_edges() {
        let [a, b] = cur.endpoints(e).map(|w| input_of_core[w]);
        if let Some(ie) = map.edge_between(a, b) {
            classes[ie] = ex.state.class[e];
        }
    }
    let mut o = fin.orientation;
    let reductions: Vec<ReductionKind> = stack.iter().map(|(_, r)| r.kind).collect();
    while let Some((reduced, r)) = stack.pop() {
        o = glue(&reduced, &o, &r)?;
    }
    let report = verify(map, &o).map_err(|e| SolveError::internal(e.to_string()))?;
    if let Some(v) = report.violations.first() {
        return Err(SolveError::internal(format!("final orientation fails: {v:?}")));
    }
    Ok(SolveReport {
        orientation: o,
        reductions,
        steps: ex.steps.len(),
        fallbacks: ex.fallbacks,
        invariant_checks: ex.invariant_checks,
        demand_zero_off_i: fin.demand_zero_off_i,
        minimize,
        classes,
        trace: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn corpus_solves() {
        for (name, map) in instances::corpus() {
            let r = solve(&map, SolveOptions { check_invariants: true, trace: false })
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(verify(&map, &r.orientation).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn subdivisions_are_reduced_one_by_one() {
        let map = instances::subdivide_face(&instances::k7_torus(), 2, 4);
        let r = solve(&map, SolveOptions::default()).unwrap();
        assert_eq!(r.count(ReductionKind::ThreeDisk), 4);
        assert_eq!(r.count(ReductionKind::FourDisk), 0);
    }

    #[test]
    fn small_genus_is_rejected() {
        assert_eq!(
            solve(&instances::tetrahedron(), SolveOptions::default()).unwrap_err(),
            SolveError::GenusTooSmall { genus: 0 }
        );
        assert_eq!(
            solve(&instances::projective_plane_6(), SolveOptions::default()).unwrap_err(),
            SolveError::GenusTooSmall { genus: 1 }
        );
    }

    #[test]
    fn four_disk_round_trip() {
        let k7 = instances::k7_torus();
        let sub = instances::subdivide_edge(&k7, 0);
        let whole = crate::submap::Submap::induced(&sub, 0..8);
        let disks: Vec<CycleDisk> = crate::submap::find_chordless_4disks(&sub, &whole)
            .into_iter()
            .filter(|d| d.side.interior_vertices == BTreeSet::from([7]))
            .collect();
        assert_eq!(disks.len(), 1);
        let (reduced, r) = reduce_4disk(&sub, &disks[0], [0, 0]).unwrap();
        assert_eq!(reduced.num_edges(), 21);
        let base = solve(&reduced, SolveOptions::default()).unwrap();
        let lifted = glue(&reduced, &base.orientation, &r).unwrap();
        let report = verify(&sub, &lifted).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn three_disk_round_trip() {
        let k7 = instances::k7_torus();
        let sub = instances::subdivide_face(&k7, 0, 1);
        let disks = find_nontrivial_3disks(&sub);
        assert_eq!(disks.len(), 1);
        let (reduced, r) = reduce_3disk(&sub, &disks[0]).unwrap();
        assert_eq!(reduced.num_vertices(), 7);
        let base = solve(&reduced, SolveOptions::default()).unwrap();
        let lifted = glue(&reduced, &base.orientation, &r).unwrap();
        assert!(verify(&sub, &lifted).unwrap().passed());
    }
}
