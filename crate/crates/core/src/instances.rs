//! Built-in triangulations and the subdivision generator.
//!
//! Fixture maps are certified when loaded; a transcription error panics
//! instead of producing a silently different surface.

use crate::format::parse_smap;
use crate::surface_map::{SurfaceMap, VertexId};

const KLEIN8: &str = include_str!("../fixtures/klein8.smap");
const GENUS2: &str = include_str!("../fixtures/genus2.smap");
const GENUS2_SUM: &str = include_str!("../fixtures/genus2_sum.smap");
const RP2: &str = include_str!("../fixtures/rp2.smap");
const TETRAHEDRON: &str = include_str!("../fixtures/tetrahedron.smap");

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: [&str; 6] = ["k7", "klein8", "genus2", "genus2-sum", "rp2", "tetrahedron"];

fn certified(text: &str, n: usize, genus: i64, orientable: bool) -> SurfaceMap {
    let map = parse_smap(text).expect("fixture parses");
    assert_eq!(map.num_vertices(), n, "fixture vertex count");
    assert_eq!(map.euler_genus(), genus, "fixture genus");
    assert_eq!(map.is_orientable(), orientable, "fixture orientability");
    assert!(map.is_triangulation(), "fixture is a triangulation: {:?}", map.triangulation_defect());
    map
}

/// The 7-vertex torus: vertex `i` sees `i+1, i+3, i+2, i+6, i+4, i+5` (mod 7).
pub fn k7_torus() -> SurfaceMap {
    let rot: Vec<Vec<VertexId>> =
        (0..7).map(|i| [1, 3, 2, 6, 4, 5].iter().map(|k| (i + k) % 7).collect()).collect();
    let map = SurfaceMap::from_neighbor_rotations(&rot).expect("K7 rotation system");
    assert_eq!(map.num_faces(), 14);
    map
}

pub fn klein_8() -> SurfaceMap {
    certified(KLEIN8, 8, 2, false)
}

/// Orientable, Euler genus 4, 11 vertices.
pub fn genus2_orientable() -> SurfaceMap {
    certified(GENUS2, 11, 4, true)
}

/// Connected sum of two 7-vertex tori.
pub fn genus2_sum() -> SurfaceMap {
    certified(GENUS2_SUM, 11, 4, true)
}

pub fn projective_plane_6() -> SurfaceMap {
    certified(RP2, 6, 1, false)
}

pub fn tetrahedron() -> SurfaceMap {
    certified(TETRAHEDRON, 4, 0, true)
}

pub fn fixture(name: &str) -> Option<SurfaceMap> {
    Some(match name {
        "k7" => k7_torus(),
        "klein8" => klein_8(),
        "genus2" => genus2_orientable(),
        "genus2-sum" => genus2_sum(),
        "rp2" => projective_plane_6(),
        "tetrahedron" => tetrahedron(),
        _ => return None,
    })
}

/// Solvable built-in maps (Euler genus at least 2), with their names.
pub fn corpus() -> Vec<(&'static str, SurfaceMap)> {
    vec![
        ("k7", k7_torus()),
        ("klein8", klein_8()),
        ("genus2", genus2_orientable()),
        ("genus2-sum", genus2_sum()),
        ("k7+1", subdivide_face(&k7_torus(), 0, 1)),
        ("k7+3", subdivide_face(&k7_torus(), 5, 3)),
        ("klein8+2", subdivide_face(&klein_8(), 3, 2)),
    ]
}

/// Stacks `count` new degree-3 vertices, the first inside `face` and each
/// later one inside a face created by the previous insertion.
pub fn subdivide_face(map: &SurfaceMap, face: usize, count: usize) -> SurfaceMap {
    let mut tris = map.triangles();
    let mut n = map.num_vertices();
    let mut target = face;
    for _ in 0..count {
        let [a, b, c] = tris.swap_remove(target);
        let x = n;
        n += 1;
        tris.push([a, b, x]);
        tris.push([b, c, x]);
        tris.push([c, a, x]);
        target = tris.len() - 3;
    }
    if count == 0 {
        return map.clone();
    }
    SurfaceMap::from_triangles(n, &tris).expect("subdivision keeps a closed surface")
}

/// Splits edge `e` with a new vertex joined to both ends and both apexes.
/// The new vertex sits inside a chordless 4-cycle.
pub fn subdivide_edge(map: &SurfaceMap, e: usize) -> SurfaceMap {
    let [a, b] = map.endpoints(e);
    let x = map.num_vertices();
    let faces = map.edge_faces(e);
    let mut tris = Vec::new();
    for (f, t) in map.triangles().into_iter().enumerate() {
        if !faces.contains(&f) {
            tris.push(t);
            continue;
        }
        let c = t.into_iter().find(|&w| w != a && w != b).unwrap();
        tris.push([a, x, c]);
        tris.push([x, b, c]);
    }
    SurfaceMap::from_triangles(x + 1, &tris).expect("edge subdivision keeps a closed surface")
}

/// Replaces edge `e` by the other diagonal of its two faces, or `None` when
/// that would create a multi-edge or a vertex of degree below 3.
pub fn flip_edge(map: &SurfaceMap, e: usize) -> Option<SurfaceMap> {
    let [a, b] = map.endpoints(e);
    let [f, g] = map.edge_faces(e);
    let tris = map.triangles();
    let apex = |t: [usize; 3]| t.into_iter().find(|&w| w != a && w != b).unwrap();
    let (c, d) = (apex(tris[f]), apex(tris[g]));
    if f == g || c == d || map.edge_between(c, d).is_some() || map.degree(a) <= 3 || map.degree(b) <= 3 {
        return None;
    }
    let mut out: Vec<[usize; 3]> =
        tris.iter().enumerate().filter(|(i, _)| *i != f && *i != g).map(|(_, t)| *t).collect();
    out.push([a, c, d]);
    out.push([b, c, d]);
    SurfaceMap::from_triangles(map.num_vertices(), &out).ok().filter(|m| m.is_triangulation())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        for name in FIXTURE_NAMES {
            assert!(fixture(name).is_some(), "{name}");
        }
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn subdivision_bookkeeping() {
        let k7 = k7_torus();
        let m = subdivide_face(&k7, 0, 50);
        assert_eq!(m.num_vertices(), 7 + 50);
        assert_eq!(m.num_edges(), 21 + 150);
        assert_eq!(m.num_faces(), 14 + 100);
        assert_eq!(m.euler_genus(), 2);
        assert!(m.is_triangulation());
    }

    #[test]
    fn klein_is_non_orientable() {
        let k = klein_8();
        assert!(!k.is_orientable());
        assert_eq!((k.num_edges(), k.num_faces()), (24, 16));
    }
}
