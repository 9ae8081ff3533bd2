//! Planar refills: orientations of the interior edges of a triangulated disk.
//!
//! Disks are given as vertex triples plus their boundary cycle. The
//! orientation comes from peeling a canonical ordering off the disk: each
//! removed vertex points at its two contour neighbours, and the vertices it
//! uncovers point at it.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::surface_map::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("faces do not form a disk bounded by the given cycle: {0}")]
    NotADisk(String),
    #[error("boundary is not a 4-cycle: {0}")]
    NotA4Disk(String),
    #[error("chord {0}-{1} joins opposite boundary vertices")]
    ChordPresent(VertexId, VertexId),
}

/// Directed edge `(tail, head)`.
pub type Arc = (VertexId, VertexId);

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

fn edge_counts(faces: &[[VertexId; 3]]) -> BTreeMap<(VertexId, VertexId), usize> {
    let mut count = BTreeMap::new();
    for t in faces {
        for i in 0..3 {
            *count.entry(key(t[i], t[(i + 1) % 3])).or_insert(0) += 1;
        }
    }
    count
}

fn check_disk(faces: &[[VertexId; 3]], boundary: &[VertexId]) -> Result<(), PlanarError> {
    let k = boundary.len();
    let cycle: BTreeSet<_> = (0..k).map(|i| key(boundary[i], boundary[(i + 1) % k])).collect();
    if cycle.len() != k || boundary.iter().collect::<BTreeSet<_>>().len() != k {
        return Err(PlanarError::NotADisk(format!("boundary {boundary:?} is not a simple cycle")));
    }
    let count = edge_counts(faces);
    for (e, c) in &count {
        let want = if cycle.contains(e) { 1 } else { 2 };
        if *c != want {
            return Err(PlanarError::NotADisk(format!("edge {e:?} lies on {c} faces")));
        }
    }
    if let Some(e) = cycle.iter().find(|e| !count.contains_key(e)) {
        return Err(PlanarError::NotADisk(format!("boundary edge {e:?} lies on no face")));
    }
    let verts: BTreeSet<VertexId> = faces.iter().flatten().copied().collect();
    let chi = verts.len() as i64 - count.len() as i64 + faces.len() as i64;
    if chi != 1 {
        return Err(PlanarError::NotADisk(format!("Euler characteristic {chi}")));
    }
    Ok(())
}

/// Link of `z` among the live triangles, as a path from `from` to `to`.
fn link_path(tris: &[[VertexId; 3]], live: &[bool], z: VertexId, from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
    let mut nb: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (t, &alive) in tris.iter().zip(live) {
        if !alive || !t.contains(&z) {
            continue;
        }
        let others: Vec<VertexId> = t.iter().copied().filter(|&v| v != z).collect();
        nb.entry(others[0]).or_default().push(others[1]);
        nb.entry(others[1]).or_default().push(others[0]);
    }
    let mut path = vec![from];
    let (mut prev, mut cur) = (usize::MAX, from);
    while cur != to {
        let next = nb.get(&cur)?.iter().copied().find(|&w| w != prev)?;
        prev = cur;
        cur = next;
        path.push(cur);
        if path.len() > nb.len() + 1 {
            return None;
        }
    }
    (path.len() == nb.len()).then_some(path)
}

/// Orients the interior edges of a triangulated disk with boundary triangle
/// `boundary` so that every interior vertex has outdegree 3 and the boundary
/// vertices have outdegree 0.
pub fn orient_disk_interior(faces: &[[VertexId; 3]], boundary: [VertexId; 3]) -> Result<Vec<Arc>, PlanarError> {
    check_disk(faces, &boundary)?;
    if faces.len() == 1 {
        return Ok(Vec::new());
    }
    peel(faces, boundary)
}

fn peel(faces: &[[VertexId; 3]], [a, b, c]: [VertexId; 3]) -> Result<Vec<Arc>, PlanarError> {
    let mut live = vec![true; faces.len()];
    let mut arcs = Vec::new();
    let stuck = |z| PlanarError::NotADisk(format!("link of {z} is not a path"));
    let first = link_path(faces, &live, c, a, b).ok_or_else(|| stuck(c))?;
    for &w in &first[1..first.len() - 1] {
        arcs.push((w, c));
    }
    kill(faces, &mut live, c);
    let mut contour = first;
    while contour.len() > 2 {
        let adj = live_adjacency(faces, &live);
        let on: BTreeSet<VertexId> = contour.iter().copied().collect();
        let pick = (1..contour.len() - 1).find(|&i| {
            let z = contour[i];
            adj[&z].iter().all(|w| !on.contains(w) || *w == contour[i - 1] || *w == contour[i + 1])
        });
        let Some(i) = pick else {
            return Err(PlanarError::NotADisk(format!("no removable vertex on contour {contour:?}")));
        };
        let (left, z, right) = (contour[i - 1], contour[i], contour[i + 1]);
        let link = link_path(faces, &live, z, left, right).ok_or_else(|| stuck(z))?;
        arcs.push((z, left));
        arcs.push((z, right));
        for &w in &link[1..link.len() - 1] {
            arcs.push((w, z));
        }
        kill(faces, &mut live, z);
        contour.splice(i - 1..=i + 1, link);
    }
    Ok(arcs)
}

fn kill(faces: &[[VertexId; 3]], live: &mut [bool], z: VertexId) {
    for (t, alive) in faces.iter().zip(live.iter_mut()) {
        if t.contains(&z) {
            *alive = false;
        }
    }
}

fn live_adjacency(faces: &[[VertexId; 3]], live: &[bool]) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for (t, _) in faces.iter().zip(live).filter(|(_, &l)| l) {
        for i in 0..3 {
            let (x, y) = (t[i], t[(i + 1) % 3]);
            adj.entry(x).or_default().insert(y);
            adj.entry(y).or_default().insert(x);
        }
    }
    adj
}

/// Orients the interior edges of a disk with chordless boundary
/// `[v1, v2, v3, v4]`: interior vertices get outdegree 3, `v2` outdegree 1 and
/// `v1`, `v3`, `v4` outdegree 0.
pub fn orient_4disk_variant(faces: &[[VertexId; 3]], boundary: [VertexId; 4]) -> Result<Vec<Arc>, PlanarError> {
    let [v1, v2, v3, v4] = boundary;
    check_disk(faces, &boundary).map_err(|e| PlanarError::NotA4Disk(e.to_string()))?;
    let count = edge_counts(faces);
    for (x, y) in [(v1, v3), (v2, v4)] {
        if count.contains_key(&key(x, y)) {
            return Err(PlanarError::ChordPresent(x, y));
        }
    }
    let mut with_scratch = faces.to_vec();
    with_scratch.push([v1, v2, v3]);
    let arcs = peel(&with_scratch, [v1, v3, v4])?;
    let forced = [(v2, v1), (v2, v3)];
    for f in forced {
        assert!(arcs.contains(&f), "scratch face forces {f:?}");
    }
    Ok(arcs.into_iter().filter(|a| !forced.contains(a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outdeg(arcs: &[Arc]) -> BTreeMap<VertexId, usize> {
        let mut d = BTreeMap::new();
        for &(t, _) in arcs {
            *d.entry(t).or_insert(0) += 1;
        }
        d
    }

    #[test]
    fn single_face_needs_nothing() {
        assert!(orient_disk_interior(&[[0, 1, 2]], [0, 1, 2]).unwrap().is_empty());
    }

    #[test]
    fn one_interior_vertex_points_out() {
        let arcs = orient_disk_interior(&[[0, 1, 3], [1, 2, 3], [2, 0, 3]], [0, 1, 2]).unwrap();
        let mut sorted = arcs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![(3, 0), (3, 1), (3, 2)]);
    }

    #[test]
    fn square_with_center() {
        let faces = [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]];
        let mut arcs = orient_4disk_variant(&faces, [0, 1, 2, 3]).unwrap();
        arcs.sort();
        assert_eq!(arcs, vec![(1, 4), (4, 0), (4, 2), (4, 3)]);
    }

    #[test]
    fn chord_is_rejected() {
        let faces = [[0, 1, 2], [0, 2, 3]];
        assert_eq!(orient_4disk_variant(&faces, [0, 1, 2, 3]), Err(PlanarError::ChordPresent(0, 2)));
    }

    #[test]
    fn non_disk_is_rejected() {
        let faces = [[0, 1, 2], [0, 2, 3]];
        assert!(matches!(orient_disk_interior(&faces, [0, 1, 2]), Err(PlanarError::NotADisk(_))));
    }

    #[test]
    fn octahedron_minus_face() {
        // octahedron with face 1-2-5 as the outer triangle
        let faces = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 3, 2], [5, 4, 3], [5, 1, 4]];
        let arcs = orient_disk_interior(&faces, [1, 2, 5]).unwrap();
        let d = outdeg(&arcs);
        assert_eq!(d.get(&0), Some(&3));
        assert_eq!(d.get(&3), Some(&3));
        assert_eq!(d.get(&4), Some(&3));
        assert!(!d.contains_key(&1) && !d.contains_key(&2) && !d.contains_key(&5));
        assert_eq!(arcs.len(), 9);
    }

    #[test]
    fn deterministic() {
        let faces = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1], [5, 3, 2], [5, 4, 3], [5, 1, 4]];
        assert_eq!(orient_disk_interior(&faces, [1, 2, 5]), orient_disk_interior(&faces, [1, 2, 5]));
    }
}
