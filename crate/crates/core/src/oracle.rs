//! Ground truth: the validator for finished orientations and an exhaustive
//! backtracking search for small maps.

use std::thread;

use thiserror::Error;

use crate::orientation::Orientation;
use crate::surface_map::{EdgeId, SurfaceMap, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("edge {edge} is not oriented")]
    IncompleteOrientation { edge: EdgeId },
    #[error("{edges} edges exceed the search limit of {limit}")]
    LimitExceeded { edges: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Outdegree below 3.
    TooSmall { vertex: VertexId, outdeg: usize },
    NotDivisible { vertex: VertexId, outdeg: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub outdegrees: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every vertex has outdegree at least 3 and divisible by 3.
pub fn verify(map: &SurfaceMap, o: &Orientation) -> Result<VerifyReport, OracleError> {
    if let Some(edge) = (0..map.num_edges()).find(|&e| o.tail(e).is_none()) {
        return Err(OracleError::IncompleteOrientation { edge });
    }
    let mut outdegrees = vec![0; map.num_vertices()];
    for e in 0..map.num_edges() {
        outdegrees[o.tail(e).unwrap()] += 1;
    }
    let mut violations = Vec::new();
    for (vertex, &outdeg) in outdegrees.iter().enumerate() {
        if outdeg < 3 {
            violations.push(Violation::TooSmall { vertex, outdeg });
        } else if outdeg % 3 != 0 {
            violations.push(Violation::NotDivisible { vertex, outdeg });
        }
    }
    Ok(VerifyReport { outdegrees, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Orientation),
    Unsatisfiable,
}

pub const DEFAULT_EDGE_LIMIT: usize = 26;

struct Search<'a> {
    ends: Vec<[VertexId; 2]>,
    cur: Vec<usize>,
    rem: Vec<usize>,
    tails: Vec<VertexId>,
    map: &'a SurfaceMap,
}

impl Search<'_> {
    fn new(map: &SurfaceMap) -> Search<'_> {
        let ends: Vec<[VertexId; 2]> = (0..map.num_edges()).map(|e| map.endpoints(e)).collect();
        let mut rem = vec![0; map.num_vertices()];
        for [a, b] in &ends {
            rem[*a] += 1;
            rem[*b] += 1;
        }
        Search { cur: vec![0; map.num_vertices()], rem, tails: Vec::new(), ends, map }
    }

    /// Some completion of `v` reaches a positive multiple of 3.
    fn viable(&self, v: VertexId) -> bool {
        let (c, r) = (self.cur[v], self.rem[v]);
        let target = if c <= 3 { 3 } else { c.div_ceil(3) * 3 };
        c + r >= target
    }

    fn push(&mut self, e: EdgeId, tail: VertexId) -> bool {
        let [a, b] = self.ends[e];
        self.rem[a] -= 1;
        self.rem[b] -= 1;
        self.cur[tail] += 1;
        self.tails.push(tail);
        self.viable(a) && self.viable(b)
    }

    fn pop(&mut self, e: EdgeId) {
        let [a, b] = self.ends[e];
        let tail = self.tails.pop().unwrap();
        self.cur[tail] -= 1;
        self.rem[a] += 1;
        self.rem[b] += 1;
    }

    fn run(&mut self, e: EdgeId) -> bool {
        if e == self.ends.len() {
            return true;
        }
        for tail in self.ends[e] {
            let ok = self.push(e, tail);
            if ok && self.run(e + 1) {
                return true;
            }
            self.pop(e);
        }
        false
    }

    fn orientation(&self) -> Orientation {
        let mut o = Orientation::new(self.map);
        for (e, &t) in self.tails.iter().enumerate() {
            o.set(e, t);
        }
        o
    }
}

fn globally_feasible(map: &SurfaceMap) -> bool {
    let m = map.num_edges();
    m.is_multiple_of(3) && m >= 3 * map.num_vertices()
}

/// First valid orientation in lexicographic order over edge ids, where each
/// edge tries its lower-dart end as tail first.
pub fn brute_force_orient(map: &SurfaceMap, edge_limit: usize) -> Result<SearchOutcome, OracleError> {
    brute_force_orient_jobs(map, edge_limit, 1)
}

/// Same result as [`brute_force_orient`], with the first few edge choices
/// split across `jobs` threads.
pub fn brute_force_orient_jobs(map: &SurfaceMap, edge_limit: usize, jobs: usize) -> Result<SearchOutcome, OracleError> {
    let m = map.num_edges();
    if m > edge_limit {
        return Err(OracleError::LimitExceeded { edges: m, limit: edge_limit });
    }
    if !globally_feasible(map) {
        return Ok(SearchOutcome::Unsatisfiable);
    }
    let split = if jobs <= 1 { 0 } else { (usize::BITS - (jobs - 1).leading_zeros()) as usize }.min(m);
    let run_prefix = |prefix: usize| -> Option<Orientation> {
        let mut s = Search::new(map);
        for e in 0..split {
            let tail = s.ends[e][(prefix >> (split - 1 - e)) & 1];
            if !s.push(e, tail) {
                return None;
            }
        }
        s.run(split).then(|| s.orientation())
    };
    let found: Vec<Option<Orientation>> = if split == 0 {
        vec![run_prefix(0)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..1usize << split).map(|p| scope.spawn(move || run_prefix(p))).collect();
            handles.into_iter().map(|h| h.join().expect("search worker")).collect()
        })
    };
    Ok(match found.into_iter().flatten().next() {
        Some(o) => SearchOutcome::Found(o),
        None => SearchOutcome::Unsatisfiable,
    })
}
