#![allow(dead_code)]

use mod3orient::{instances, Orientation, SurfaceMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outdegrees recounted from the raw tail list.
pub fn recount(map: &SurfaceMap, o: &Orientation) -> Vec<usize> {
    let mut d = vec![0; map.num_vertices()];
    for e in 0..map.num_edges() {
        let t = o.tail(e).expect("total orientation");
        let [a, b] = map.endpoints(e);
        assert!(t == a || t == b);
        d[t] += 1;
    }
    d
}

pub fn all_good(d: &[usize]) -> bool {
    d.iter().all(|&x| x >= 3 && x % 3 == 0)
}

/// A base fixture altered by random face subdivisions, edge subdivisions and
/// edge flips.
pub fn random_map(seed: u64, max_ops: usize) -> SurfaceMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = [instances::k7_torus(), instances::klein_8(), instances::genus2_orientable(), instances::genus2_sum()];
    let mut m = bases[rng.gen_range(0..bases.len())].clone();
    for _ in 0..rng.gen_range(0..=max_ops) {
        match rng.gen_range(0..4) {
            0 => m = instances::subdivide_face(&m, rng.gen_range(0..m.num_faces()), 1),
            1 => m = instances::subdivide_edge(&m, rng.gen_range(0..m.num_edges())),
            _ => {
                for _ in 0..3 {
                    if let Some(f) = instances::flip_edge(&m, rng.gen_range(0..m.num_edges())) {
                        m = f;
                    }
                }
            }
        }
    }
    m
}

/// Random stacked triangulation of the disk bounded by `0 1 2` with `n`
/// vertices in total.
pub fn stacked_triangle(seed: u64, n: usize) -> Vec<[usize; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces = vec![[0, 1, 2]];
    for x in 3..n {
        let [a, b, c] = faces.swap_remove(rng.gen_range(0..faces.len()));
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    faces
}

/// Random stacked filling of the square `0 1 2 3` around centre 4, with `n`
/// vertices in total; no chord joins opposite corners.
pub fn stacked_square(seed: u64, n: usize) -> Vec<[usize; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces = vec![[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]];
    for x in 5..n {
        let [a, b, c] = faces.swap_remove(rng.gen_range(0..faces.len()));
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    faces
}

/// Outdegrees from an arc list, after checking each edge of the faces off
/// the boundary appears exactly once.
pub fn arc_outdegrees(faces: &[[usize; 3]], boundary: &[usize], arcs: &[(usize, usize)]) -> Vec<usize> {
    use std::collections::BTreeSet;
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let k = boundary.len();
    let outer: BTreeSet<_> = (0..k).map(|i| key(boundary[i], boundary[(i + 1) % k])).collect();
    let inner: BTreeSet<_> = faces
        .iter()
        .flat_map(|t| [key(t[0], t[1]), key(t[1], t[2]), key(t[2], t[0])])
        .filter(|e| !outer.contains(e))
        .collect();
    let got: Vec<_> = arcs.iter().map(|&(a, b)| key(a, b)).collect();
    assert_eq!(got.len(), inner.len(), "one arc per interior edge");
    assert_eq!(got.iter().copied().collect::<BTreeSet<_>>(), inner);
    let n = faces.iter().flatten().max().unwrap() + 1;
    let mut d = vec![0; n];
    for &(t, _) in arcs {
        d[t] += 1;
    }
    d
}
