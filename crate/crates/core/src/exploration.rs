//! Stacking exploration: grows the explored set from `I` one vertex at a
//! time, sorting every new edge into `B`, `G` or `R` and keeping requests on
//! the boundary angles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{SolveError, SolveResult};
use crate::initial::InitialGraph;
use crate::submap::{
    classify_unexplored, explored_angles, neighborhood, Angle, BoundarySequence, Neighborhood, NeighborPath,
    Occurrence,
};
use crate::surface_map::{Dart, EdgeId, SurfaceMap, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeClass {
    I,
    B,
    G,
    R,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EdgeClass::I => "I",
            EdgeClass::B => "B",
            EdgeClass::G => "G",
            EdgeClass::R => "R",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Request {
    R,
    G,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationState {
    pub explored: Vec<bool>,
    pub in_i: Vec<bool>,
    /// Stacked vertices in order.
    pub order: Vec<VertexId>,
    pub class: Vec<Option<EdgeClass>>,
    /// Tails of `B` and `R` edges.
    pub tail: Vec<Option<VertexId>>,
    /// Requests keyed by the first dart of their angle.
    pub requests: BTreeMap<Dart, Request>,
    pub u: VertexId,
    pub v: VertexId,
    pub e_star: EdgeId,
}

/// What one stacking step added.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepRecord {
    pub x: VertexId,
    pub edge: EdgeId,
    pub case: u8,
    pub b: Vec<(VertexId, VertexId)>,
    pub g: Vec<(VertexId, VertexId)>,
    pub r: Vec<(VertexId, VertexId)>,
    /// `(vertex, angle key, request)` placed on new angles.
    pub requests: Vec<(VertexId, Dart, Request)>,
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items.iter().map(f).collect::<Vec<_>>().join(",")
    }
}

impl StepRecord {
    pub fn trace_line(&self, index: usize) -> String {
        let arc = |&(a, b): &(VertexId, VertexId)| format!("{a}>{b}");
        let g = |&(a, b): &(VertexId, VertexId)| format!("{a}-{b}");
        let req = |&(w, k, r): &(VertexId, Dart, Request)| format!("{w}@{k}={r:?}");
        format!(
            "step {index} stack {} on {} case {} B+{} G+{} R+{} requests {}",
            self.x,
            self.edge,
            self.case,
            join(&self.b, arc),
            join(&self.g, g),
            join(&self.r, arc),
            join(&self.requests, req)
        )
    }
}

/// A vertex that may be stacked next, with the boundary occurrence it sits on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackCandidate {
    pub x: VertexId,
    pub occ: Occurrence,
    pub in_disk: bool,
    /// Faces of the unexplored disks the step would create.
    pub created_faces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantViolation {
    pub invariant: &'static str,
    pub detail: String,
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.invariant, self.detail)
    }
}

fn shares_occurrence(map: &SurfaceMap, a: &Angle, b: &Angle) -> Option<Occurrence> {
    let sa = a.sides(map);
    let sb = b.sides(map);
    sa.iter().find(|o| sb.contains(o)).copied()
}

/// Scratch space for one step.
struct Step<'a> {
    map: &'a SurfaceMap,
    old: &'a ExplorationState,
    next: ExplorationState,
    rec: StepRecord,
    x: VertexId,
    old_angles: Vec<Angle>,
    new_angles: Vec<Angle>,
}

impl<'a> Step<'a> {
    fn host(&self, p: VertexId) -> Result<&Angle, String> {
        let d = self.map.dart_between(p, self.x).ok_or("not adjacent")?;
        self.old_angles
            .iter()
            .find(|a| a.vertex == p && a.contains_dart(d))
            .ok_or_else(|| format!("no angle at {p} holds the edge to {}", self.x))
    }

    fn req(&self, p: VertexId) -> Result<Option<Request>, String> {
        Ok(self.old.requests.get(&self.host(p)?.key()).copied())
    }

    fn children(&self, p: VertexId) -> Result<Vec<Angle>, String> {
        let k = self.host(p)?.key();
        let dx = self.map.dart_between(p, self.x).unwrap();
        Ok(self.new_angles.iter().filter(|a| a.vertex == p && (a.key() == k || a.key() == dx)).cloned().collect())
    }

    fn x_angles(&self) -> Vec<Angle> {
        self.new_angles.iter().filter(|a| a.vertex == self.x).cloned().collect()
    }

    fn edge(&self, p: VertexId) -> EdgeId {
        self.map.edge_between(p, self.x).unwrap()
    }

    fn arc(&mut self, class: EdgeClass, tail: VertexId, head: VertexId) -> Result<(), String> {
        let e = self.map.edge_between(tail, head).ok_or("arc between non-neighbours")?;
        if self.next.class[e].is_some() {
            return Err(format!("edge {tail}-{head} assigned twice"));
        }
        self.next.class[e] = Some(class);
        self.next.tail[e] = Some(tail);
        match class {
            EdgeClass::B => self.rec.b.push((tail, head)),
            EdgeClass::R => self.rec.r.push((tail, head)),
            _ => unreachable!(),
        }
        Ok(())
    }

    fn g_edge(&mut self, p: VertexId) -> Result<(), String> {
        let e = self.edge(p);
        if self.next.class[e].is_some() {
            return Err(format!("edge {p}-{} assigned twice", self.x));
        }
        self.next.class[e] = Some(EdgeClass::G);
        self.rec.g.push((p, self.x));
        Ok(())
    }

    fn request(&mut self, a: &Angle, r: Request) {
        self.next.requests.insert(a.key(), r);
        self.rec.requests.push((a.vertex, a.key(), r));
    }

    fn b_count(&self) -> usize {
        self.rec.b.iter().filter(|(t, _)| *t == self.x).count()
    }

    /// Preprocessing shared by the path cases: requests on inner angles are
    /// met by the edge to `x`.
    fn satisfy_inner(&mut self, paths: &[NeighborPath], free_as_r: bool) -> Result<(), String> {
        for p in paths {
            let s = p.vertices.len();
            for &w in p.vertices.iter().take(s.saturating_sub(1)).skip(1) {
                let r = self.req(w)?.or(free_as_r.then_some(Request::R));
                match r {
                    Some(Request::R) => self.arc(EdgeClass::R, w, self.x)?,
                    Some(Request::G) => self.g_edge(w)?,
                    None => {}
                }
            }
        }
        Ok(())
    }

    fn case_cycle(&mut self, rim: &[VertexId]) -> Result<(), String> {
        let mut free = 0;
        for &p in rim {
            match self.req(p)? {
                None => {
                    let class = if free < 2 { EdgeClass::B } else { EdgeClass::R };
                    self.arc(class, self.x, p)?;
                    free += 1;
                }
                Some(Request::R) => self.arc(EdgeClass::R, p, self.x)?,
                Some(Request::G) => self.g_edge(p)?,
            }
        }
        if free < 3 {
            return Err(format!("only {free} free angles around the last vertex of a disk"));
        }
        Ok(())
    }

    fn case_outside_disk(&mut self, paths: &[NeighborPath]) -> Result<(), String> {
        let mut reqs: BTreeMap<VertexId, Request> = BTreeMap::new();
        let mut g_pos: Vec<(VertexId, bool)> = Vec::new();
        for p in paths {
            let s = p.vertices.len();
            for (i, &w) in p.vertices.iter().enumerate() {
                let r = self.req(w)?.unwrap_or(Request::R);
                reqs.insert(w, r);
                if r == Request::G {
                    g_pos.push((w, i > 0 && i + 1 < s));
                }
            }
        }
        self.satisfy_inner(paths, true)?;
        let xs = self.x_angles();
        let lowest_x = xs.first().cloned().ok_or("stacked vertex has no angle")?;
        // outer vertices whose child carries a G-request
        let mut g_children: Vec<(VertexId, Angle)> = Vec::new();
        let mut settled: BTreeSet<VertexId> = BTreeSet::new();
        match g_pos.as_slice() {
            [] => self.request(&lowest_x, Request::R),
            [(up, false)] => {
                let up = *up;
                let kids = self.children(up)?;
                let kid = if kids.len() == 1 {
                    kids[0].clone()
                } else {
                    let partner = self
                        .old
                        .requests
                        .iter()
                        .find(|(k, r)| **r == Request::G && self.old_angles.iter().any(|a| a.key() == **k && a.vertex != up))
                        .and_then(|(k, _)| self.new_angles.iter().find(|a| a.key() == *k))
                        .ok_or("G partner angle vanished")?
                        .clone();
                    kids.iter()
                        .find(|c| shares_occurrence(self.map, c, &partner).is_some())
                        .cloned()
                        .ok_or("no child of the G end is next to its partner")?
                };
                self.request(&kid, Request::G);
                g_children.push((up, kid));
                self.request(&lowest_x, Request::R);
            }
            [(a, ia), (b, ib)] if ia != ib => {
                let up = if *ia { *b } else { *a };
                let kids = self.children(up)?;
                let [kid] = kids.as_slice() else {
                    return Err("outer G end next to an inner one has two children".into());
                };
                let xa = xs
                    .iter()
                    .find(|a| shares_occurrence(self.map, a, kid).is_some())
                    .cloned()
                    .ok_or("no angle at the stacked vertex next to the G child")?;
                self.request(kid, Request::G);
                self.request(&xa, Request::G);
                g_children.push((up, kid.clone()));
            }
            [(_, true), (_, true)] => {}
            [(a, false), (b, false)] => {
                let (a, b) = (*a, *b);
                let ha = self.host(a)?.clone();
                let hb = self.host(b)?.clone();
                let shared = shares_occurrence(self.map, &ha, &hb).ok_or("G ends are not consecutive")?;
                if self.map.face_vertices(shared.face).contains(&self.x) {
                    self.g_edge(a)?;
                    self.g_edge(b)?;
                    settled.insert(a);
                    settled.insert(b);
                } else {
                    for w in [a, b] {
                        let kid = self
                            .children(w)?
                            .into_iter()
                            .find(|c| c.sides(self.map).contains(&shared))
                            .ok_or("G child lost its shared occurrence")?;
                        self.request(&kid, Request::G);
                        g_children.push((w, kid));
                    }
                    self.request(&lowest_x, Request::R);
                }
            }
            other => return Err(format!("unexpected G-requests on neighbouring paths: {other:?}")),
        }
        // final step: B-arcs
        let mut outer: Vec<VertexId> = Vec::new();
        for p in paths {
            outer.push(p.vertices[0]);
            if p.vertices.len() > 1 {
                outer.push(*p.vertices.last().unwrap());
            }
        }
        outer.retain(|w| !settled.contains(w));
        let mut targets: Vec<VertexId> = g_children.iter().map(|(w, _)| *w).collect();
        let mut by_dart: Vec<(Dart, VertexId)> =
            outer.iter().map(|&w| (self.map.dart_between(self.x, w).unwrap(), w)).collect();
        by_dart.sort();
        for (_, w) in by_dart {
            if targets.len() >= 2 {
                break;
            }
            if !targets.contains(&w) {
                targets.push(w);
            }
        }
        if targets.len() < 2 {
            return Err("fewer than two outer vertices for B-arcs".into());
        }
        for &w in &outer {
            if targets.contains(&w) {
                self.arc(EdgeClass::B, self.x, w)?;
                if !g_children.iter().any(|(g, _)| *g == w) && reqs[&w] == Request::R {
                    let kid = self.children(w)?.into_iter().next().ok_or("B target has no child angle")?;
                    self.request(&kid, Request::R);
                }
            } else {
                self.arc(EdgeClass::R, w, self.x)?;
            }
        }
        Ok(())
    }

    fn case_disk_path(&mut self, path: &NeighborPath) -> Result<(), String> {
        let mut p: Vec<VertexId> = path.vertices.clone();
        let s = p.len();
        if s < 2 {
            return Err("single-vertex path inside a disk".into());
        }
        let reqs0: Vec<Option<Request>> = p.iter().map(|&w| self.req(w)).collect::<Result<_, _>>()?;
        if reqs0[s - 1] == Some(Request::G) && reqs0[0] != Some(Request::G) {
            p.reverse();
        }
        let reqs: Vec<Option<Request>> = p.iter().map(|&w| self.req(w)).collect::<Result<_, _>>()?;
        let t = reqs.iter().filter(|r| r.is_none()).count();
        let (p1, ps) = (p[0], p[s - 1]);
        let g_inner: Vec<usize> = (1..s - 1).filter(|&i| reqs[i] == Some(Request::G)).collect();
        let g_outer: Vec<usize> = [0, s - 1].into_iter().filter(|&i| reqs[i] == Some(Request::G)).collect();
        self.satisfy_inner(std::slice::from_ref(path), false)?;
        let mut free_seen = 0;
        for (i, &w) in p.iter().enumerate() {
            if reqs[i].is_none() {
                let class = if free_seen < 2 { EdgeClass::B } else { EdgeClass::R };
                self.arc(class, self.x, w)?;
                free_seen += 1;
            }
        }
        let xs = self.x_angles();
        let [xhat] = xs.as_slice() else {
            return Err(format!("stacked vertex has {} angles in a disk", xs.len()));
        };
        let xhat = xhat.clone();
        let child = |st: &Self, w: VertexId| -> Result<Angle, String> {
            st.children(w)?.into_iter().next().ok_or_else(|| format!("outer vertex {w} kept no angle"))
        };
        // `ps` in the cases with a G-request at `p1`
        let far_end = |st: &mut Self| -> Result<(), String> {
            if t == 0 {
                st.arc(EdgeClass::B, st.x, ps)?;
                let c = child(st, ps)?;
                st.request(&c, Request::R);
            } else if reqs[s - 1] == Some(Request::R) {
                st.arc(EdgeClass::R, ps, st.x)?;
            }
            Ok(())
        };
        match (g_outer.as_slice(), g_inner.as_slice()) {
            ([], []) => {
                if t <= 2 {
                    self.request(&xhat, Request::R);
                }
                let mut need_b = 2usize.saturating_sub(t);
                for i in [0, s - 1] {
                    if reqs[i].is_none() {
                        continue;
                    }
                    if need_b > 0 {
                        need_b -= 1;
                        self.arc(EdgeClass::B, self.x, p[i])?;
                        let c = child(self, p[i])?;
                        self.request(&c, Request::R);
                    } else {
                        self.arc(EdgeClass::R, p[i], self.x)?;
                    }
                }
            }
            ([0], []) => {
                let c = child(self, p1)?;
                self.request(&c, Request::G);
                let class = if t <= 1 { EdgeClass::B } else { EdgeClass::R };
                self.arc(class, self.x, p1)?;
                far_end(self)?;
                if t <= 1 {
                    self.request(&xhat, Request::R);
                }
            }
            ([0], [_]) => {
                if t <= 1 {
                    let c = child(self, p1)?;
                    self.request(&c, Request::G);
                    self.request(&xhat, Request::G);
                    self.arc(EdgeClass::B, self.x, p1)?;
                } else {
                    self.g_edge(p1)?;
                }
                far_end(self)?;
            }
            ([], [_, _]) => {
                let mut need_b = 2usize.saturating_sub(t);
                for i in [0, s - 1] {
                    if reqs[i].is_none() {
                        continue;
                    }
                    if need_b > 0 {
                        need_b -= 1;
                        self.arc(EdgeClass::B, self.x, p[i])?;
                        let c = child(self, p[i])?;
                        self.request(&c, Request::R);
                    } else {
                        self.arc(EdgeClass::R, p[i], self.x)?;
                    }
                }
            }
            (o, i) => return Err(format!("G-requests at outer {o:?} and inner {i:?} of the only path")),
        }
        Ok(())
    }
}

impl ExplorationState {
    /// Starts from `I` with G-requests on one consecutive appearance of `u`
    /// and `v` and R-requests on every other angle.
    pub fn init(map: &SurfaceMap, ig: &InitialGraph) -> Self {
        let n = map.num_vertices();
        let mut explored = vec![false; n];
        for &w in &ig.vertices {
            explored[w] = true;
        }
        let mut class = vec![None; map.num_edges()];
        for &e in ig.disk.edges.iter().chain([&ig.e_star]) {
            class[e] = Some(EdgeClass::I);
        }
        let angles = explored_angles(map, &explored);
        let occ = map
            .edge_faces(ig.e_star)
            .into_iter()
            .min()
            .map(|face| Occurrence { edge: ig.e_star, face })
            .unwrap();
        let mut requests = BTreeMap::new();
        for a in &angles {
            let g = (a.vertex == ig.u || a.vertex == ig.v) && a.sides(map).contains(&occ);
            requests.insert(a.key(), if g { Request::G } else { Request::R });
        }
        ExplorationState {
            in_i: explored.clone(),
            explored,
            order: Vec::new(),
            class,
            tail: vec![None; map.num_edges()],
            requests,
            u: ig.u,
            v: ig.v,
            e_star: ig.e_star,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.explored.iter().all(|&b| b)
    }

    pub fn g_edges(&self) -> Vec<EdgeId> {
        (0..self.class.len()).filter(|&e| self.class[e] == Some(EdgeClass::G)).collect()
    }

    pub fn g_complete(&self) -> bool {
        !self.requests.values().any(|&r| r == Request::G)
    }

    /// Vertices reachable from `start` along `G` and the far end.
    pub fn g_end(&self, map: &SurfaceMap, start: VertexId) -> VertexId {
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = map.neighbors(cur).find(|&w| {
                w != prev && self.class[map.edge_between(cur, w).unwrap()] == Some(EdgeClass::G)
            });
            match next {
                Some(w) if w != start => {
                    prev = cur;
                    cur = w;
                }
                _ => return cur,
            }
        }
    }

    /// Stackable vertices in preference order: disk vertices first, then
    /// vertices creating no disk, then by the size of the created disks.
    pub fn candidates(&self, map: &SurfaceMap) -> Vec<StackCandidate> {
        let angles = explored_angles(map, &self.explored);
        let bs = BoundarySequence::from_angles(map, angles);
        let comps = classify_unexplored(map, &self.explored);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, j, occ) in bs.consecutive_pairs(map) {
            let gi = self.requests.get(&bs.angles[i].key()) == Some(&Request::G);
            let gj = self.requests.get(&bs.angles[j].key()) == Some(&Request::G);
            if gi && gj {
                continue;
            }
            let [a, b] = map.endpoints(occ.edge);
            let Some(x) = map.face_vertices(occ.face).into_iter().find(|&w| w != a && w != b && !self.explored[w])
            else {
                continue;
            };
            if !seen.insert(x) {
                continue;
            }
            let Some(comp) = comps.iter().find(|c| c.vertices.contains(&x)) else { continue };
            let nb = neighborhood(map, &self.explored, x);
            if comp.is_disk {
                let ok = match &nb {
                    Neighborhood::Cycle(_) => true,
                    Neighborhood::Paths(ps) if ps.len() == 1 => {
                        let on_path: BTreeSet<Dart> = ps[0]
                            .vertices
                            .iter()
                            .filter_map(|&w| {
                                let d = map.dart_between(w, x)?;
                                bs.angles.iter().find(|a| a.vertex == w && a.contains_dart(d)).map(|a| a.key())
                            })
                            .collect();
                        bs.angles.iter().any(|a| {
                            comp.faces.contains(&map.corner_face(a.key()))
                                && !self.requests.contains_key(&a.key())
                                && !on_path.contains(&a.key())
                        })
                    }
                    Neighborhood::Paths(_) => false,
                };
                if ok {
                    out.push(StackCandidate { x, occ, in_disk: true, created_faces: 0 });
                }
            } else {
                let mut after = self.explored.clone();
                after[x] = true;
                let created: usize = classify_unexplored(map, &after)
                    .iter()
                    .filter(|c| c.is_disk && c.faces.is_subset(&comp.faces))
                    .map(|c| c.faces.len())
                    .sum();
                out.push(StackCandidate { x, occ, in_disk: false, created_faces: created });
            }
        }
        out.sort_by_key(|c| (!c.in_disk, c.created_faces > 0, c.created_faces));
        out
    }

    /// Stacks `x`, returning the new state; errors when no rule applies.
    pub fn stack(&self, map: &SurfaceMap, x: VertexId, occ: Occurrence) -> Result<(ExplorationState, StepRecord), String> {
        if self.explored[x] {
            return Err(format!("{x} is already explored"));
        }
        let comps = classify_unexplored(map, &self.explored);
        let in_disk = comps.iter().find(|c| c.vertices.contains(&x)).ok_or("x lies in no component")?.is_disk;
        let nb = neighborhood(map, &self.explored, x);
        let mut next = self.clone();
        next.explored[x] = true;
        next.order.push(x);
        let old_angles = explored_angles(map, &self.explored);
        let new_angles = explored_angles(map, &next.explored);
        let mut st = Step {
            map,
            old: self,
            next,
            rec: StepRecord { x, edge: occ.edge, ..StepRecord::default() },
            x,
            old_angles,
            new_angles,
        };
        let nbrs: Vec<VertexId> = match &nb {
            Neighborhood::Cycle(rim) => rim.clone(),
            Neighborhood::Paths(ps) => ps.iter().flat_map(|p| p.vertices.iter().copied()).collect(),
        };
        for &w in &nbrs {
            let k = st.host(w)?.key();
            st.next.requests.remove(&k);
        }
        match &nb {
            Neighborhood::Cycle(rim) => {
                st.rec.case = 1;
                st.case_cycle(rim)?;
            }
            Neighborhood::Paths(ps) if !in_disk => {
                st.rec.case = 2;
                st.case_outside_disk(ps)?;
            }
            Neighborhood::Paths(ps) => {
                st.rec.case = 3;
                let [p] = ps.as_slice() else {
                    return Err(format!("{} neighbouring paths inside a disk", ps.len()));
                };
                st.case_disk_path(p)?;
            }
        }
        if st.b_count() != 2 {
            return Err(format!("stacked vertex {x} got {} B-arcs", st.b_count()));
        }
        if let Some(&w) = nbrs.iter().find(|&&w| st.next.class[st.edge(w)].is_none()) {
            return Err(format!("edge {w}-{x} left unassigned"));
        }
        Ok((st.next, st.rec))
    }
}

/// Options and results of a whole exploration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExploreOptions {
    /// Run the invariant checker after every step.
    pub check_invariants: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    pub state: ExplorationState,
    pub steps: Vec<StepRecord>,
    /// Candidates skipped because their step could not be carried out.
    pub fallbacks: usize,
    pub invariant_checks: usize,
}

/// Explores the whole map starting from `I`.
pub fn explore(map: &SurfaceMap, ig: &InitialGraph, opts: ExploreOptions) -> SolveResult<Exploration> {
    explore_logged(map, ig, opts, None)
}

/// [`explore`] that appends each step's trace line to `log` as it happens.
pub fn explore_logged(
    map: &SurfaceMap,
    ig: &InitialGraph,
    opts: ExploreOptions,
    mut log: Option<&mut Vec<String>>,
) -> SolveResult<Exploration> {
    let mut state = ExplorationState::init(map, ig);
    let mut steps = Vec::new();
    let mut fallbacks = 0;
    let mut checks = 0;
    let check = |state: &ExplorationState, checks: &mut usize| -> SolveResult<()> {
        *checks += 1;
        match check_invariants(map, state).into_iter().next() {
            Some(v) => Err(SolveError::internal(format!("after {} steps: {v}", state.order.len()))),
            None => Ok(()),
        }
    };
    if opts.check_invariants {
        check(&state, &mut checks)?;
    }
    while !state.is_complete() {
        let mut errors = Vec::new();
        let mut advanced = None;
        for c in state.candidates(map) {
            match state.stack(map, c.x, c.occ) {
                Ok(r) => {
                    advanced = Some(r);
                    break;
                }
                Err(e) => {
                    fallbacks += 1;
                    errors.push(format!("{}: {e}", c.x));
                }
            }
        }
        let Some((next, rec)) = advanced else {
            return Err(SolveError::internal(format!("exploration stuck: {}", errors.join("; "))));
        };
        state = next;
        if let Some(log) = log.as_deref_mut() {
            log.push(rec.trace_line(steps.len()));
        }
        steps.push(rec);
        if opts.check_invariants {
            check(&state, &mut checks)?;
        }
    }
    check(&state, &mut checks)?;
    Ok(Exploration { state, steps, fallbacks, invariant_checks: checks })
}

fn violation(invariant: &'static str, detail: String) -> InvariantViolation {
    InvariantViolation { invariant, detail }
}

/// Checks invariants (I) to (VI) on a state; returns every violation found.
pub fn check_invariants(map: &SurfaceMap, s: &ExplorationState) -> Vec<InvariantViolation> {
    let mut out = Vec::new();
    let inside = |e: EdgeId| map.endpoints(e).iter().all(|&w| s.explored[w]);
    // (I)
    for e in 0..map.num_edges() {
        if inside(e) != s.class[e].is_some() {
            out.push(violation("I", format!("edge {e} classification does not match the explored set")));
        }
        if s.class[e] == Some(EdgeClass::I) && !map.endpoints(e).iter().all(|&w| s.in_i[w]) {
            out.push(violation("I", format!("edge {e} marked I outside I")));
        }
    }
    let angles = explored_angles(map, &s.explored);
    let on_boundary: BTreeSet<VertexId> = angles.iter().map(|a| a.vertex).collect();
    let mut r_out = vec![0usize; map.num_vertices()];
    let mut b_out = vec![0usize; map.num_vertices()];
    let mut g_deg = vec![0usize; map.num_vertices()];
    for e in 0..map.num_edges() {
        match s.class[e] {
            Some(EdgeClass::R) => r_out[s.tail[e].unwrap()] += 1,
            Some(EdgeClass::B) => b_out[s.tail[e].unwrap()] += 1,
            Some(EdgeClass::G) => {
                for w in map.endpoints(e) {
                    g_deg[w] += 1;
                }
            }
            _ => {}
        }
    }
    // (II)
    for w in (0..map.num_vertices()).filter(|&w| s.explored[w] && !on_boundary.contains(&w)) {
        if r_out[w] == 0 && g_deg[w] < 2 {
            out.push(violation("II", format!("interior vertex {w} has no R out-arc and {} G-edges", g_deg[w])));
        }
    }
    // (III)
    for w in (0..map.num_vertices()).filter(|&w| s.explored[w]) {
        let want = if s.in_i[w] { 0 } else { 2 };
        if b_out[w] != want {
            out.push(violation("III", format!("vertex {w} has B-outdegree {}, expected {want}", b_out[w])));
        }
    }
    if !b_acyclic(map, s) {
        out.push(violation("III", "B has a directed cycle".into()));
    }
    // requests refer to live angles
    let keys: BTreeSet<Dart> = angles.iter().map(|a| a.key()).collect();
    for k in s.requests.keys() {
        if !keys.contains(k) {
            out.push(violation("IV", format!("request on vanished angle {k}")));
        }
    }
    let has_req = |w: VertexId, r: Request| angles.iter().any(|a| a.vertex == w && s.requests.get(&a.key()) == Some(&r));
    let complete = s.g_complete();
    let (ue, ve) = (s.g_end(map, s.u), s.g_end(map, s.v));
    // (IV)
    let mut must: BTreeSet<VertexId> = on_boundary.clone();
    if !complete {
        must.remove(&ue);
        must.remove(&ve);
    }
    for &w in &must {
        if g_deg[w] >= 2 && w != s.u && w != s.v {
            continue;
        }
        if r_out[w] == 0 && !has_req(w, Request::R) {
            out.push(violation("IV", format!("vertex {w} has neither an R out-arc nor an R-request")));
        }
    }
    for w in [s.u, s.v] {
        if r_out[w] == 0 && !has_req(w, Request::R) {
            out.push(violation("IV", format!("vertex {w} has neither an R out-arc nor an R-request")));
        }
    }
    // (V)
    if g_deg.iter().any(|&d| d > 2) {
        out.push(violation("V", "G has a vertex of degree above 2".into()));
    }
    let g_reqs: Vec<&Angle> =
        angles.iter().filter(|a| s.requests.get(&a.key()) == Some(&Request::G)).collect();
    if complete {
        if ue != s.v {
            out.push(violation("V", format!("G is complete but the path from {} ends at {ue}", s.u)));
        }
    } else {
        let ok = g_reqs.len() == 2 && {
            let ends: BTreeSet<VertexId> = g_reqs.iter().map(|a| a.vertex).collect();
            ends == BTreeSet::from([ue, ve]) && ue != ve && shares_occurrence(map, g_reqs[0], g_reqs[1]).is_some()
        };
        if !ok {
            let at: Vec<VertexId> = g_reqs.iter().map(|a| a.vertex).collect();
            out.push(violation("V", format!("G ends {ue},{ve} but G-requests at {at:?}")));
        }
    }
    // (VI)
    for c in classify_unexplored(map, &s.explored).iter().filter(|c| c.is_disk) {
        let free = angles
            .iter()
            .filter(|a| c.faces.contains(&map.corner_face(a.key())) && !s.requests.contains_key(&a.key()))
            .count();
        if free < 3 {
            let first = c.vertices.iter().next().copied().unwrap_or(0);
            out.push(violation("VI", format!("unexplored disk around {first} has {free} free angles")));
        }
    }
    out
}

fn b_acyclic(map: &SurfaceMap, s: &ExplorationState) -> bool {
    let n = map.num_vertices();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in 0..map.num_edges() {
        if s.class[e] == Some(EdgeClass::B) {
            let t = s.tail[e].unwrap();
            let [a, b] = map.endpoints(e);
            let h = if a == t { b } else { a };
            out[t].push(h);
            indeg[h] += 1;
        }
    }
    let mut stack: Vec<VertexId> = (0..n).filter(|&w| indeg[w] == 0).collect();
    let mut seen = 0;
    while let Some(w) = stack.pop() {
        seen += 1;
        for &h in &out[w] {
            indeg[h] -= 1;
            if indeg[h] == 0 {
                stack.push(h);
            }
        }
    }
    seen == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::{build_initial_graph, InitialOutcome};
    use crate::instances;

    fn start(map: &SurfaceMap) -> InitialGraph {
        match build_initial_graph(map).unwrap().0 {
            InitialOutcome::Ready(ig) => ig,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn initial_state_satisfies_invariants() {
        for map in [instances::k7_torus(), instances::klein_8(), instances::genus2_orientable()] {
            let ig = start(&map);
            let s = ExplorationState::init(&map, &ig);
            assert_eq!(check_invariants(&map, &s), Vec::new());
            assert_eq!(s.requests.values().filter(|&&r| r == Request::G).count(), 2);
        }
    }

    #[test]
    fn k7_explores_with_invariants() {
        let k7 = instances::k7_torus();
        let ig = start(&k7);
        let ex = explore(&k7, &ig, ExploreOptions { check_invariants: true }).unwrap();
        assert_eq!(ex.steps.len(), 3);
        assert!(ex.state.g_complete());
    }

    #[test]
    fn trace_line_shape() {
        let rec = StepRecord { x: 4, edge: 7, case: 2, b: vec![(4, 1), (4, 2)], ..StepRecord::default() };
        assert_eq!(rec.trace_line(0), "step 0 stack 4 on 7 case 2 B+4>1,4>2 G+- R+- requests -");
    }
}
