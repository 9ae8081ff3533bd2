mod common;

use std::collections::BTreeSet;

use common::random_map;
use mod3orient::format::{parse_orientation, parse_smap, write_orientation, write_smap};
use mod3orient::submap::{find_nontrivial_3disks, is_contractible};
use mod3orient::{instances, solve, SolveOptions};
use proptest::prelude::*;

/// Faces counted as distinct vertex triples, independent of face tracing.
fn triple_count(map: &mod3orient::SurfaceMap) -> usize {
    let n = map.num_vertices();
    let adj: Vec<BTreeSet<usize>> = (0..n).map(|v| map.neighbors(v).collect()).collect();
    let mut seen = BTreeSet::new();
    for v in 0..n {
        let rot = map.rotation(v);
        for i in 0..rot.len() {
            let a = map.head(rot[i]);
            let b = map.head(rot[(i + 1) % rot.len()]);
            if adj[a].contains(&b) {
                let mut t = [v, a, b];
                t.sort();
                seen.insert(t);
            }
        }
    }
    seen.len()
}

#[test]
fn fixture_genera() {
    let expect = [("k7", 2, true), ("klein8", 2, false), ("genus2", 4, true), ("rp2", 1, false), ("tetrahedron", 0, true)];
    for (name, k, orientable) in expect {
        let m = instances::fixture(name).unwrap();
        assert_eq!(m.euler_genus(), k, "{name}");
        assert_eq!(m.is_orientable(), orientable, "{name}");
        assert_eq!(2 - m.num_vertices() as i64 + m.num_edges() as i64 - triple_count(&m) as i64, k, "{name}");
    }
}

#[test]
fn k7_has_no_separating_triangle() {
    let k7 = instances::k7_torus();
    assert!(find_nontrivial_3disks(&k7).is_empty());
    // a face boundary is contractible
    assert!(is_contractible(&k7, &k7.face_vertices(0)).unwrap());
}

#[test]
fn orientation_files_round_trip() {
    let map = instances::genus2_sum();
    let o = solve(&map, SolveOptions::default()).unwrap().orientation;
    let text = write_orientation(&o);
    assert_eq!(parse_orientation(&map, &text).unwrap(), o);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn smap_round_trip_is_bit_exact(seed in any::<u64>()) {
        let m = random_map(seed, 20);
        let text = write_smap(&m);
        let back = parse_smap(&text).unwrap();
        prop_assert_eq!(write_smap(&back), text);
        prop_assert_eq!(back.euler_genus(), m.euler_genus());
    }

    #[test]
    fn random_maps_keep_genus_and_triangulation(seed in any::<u64>()) {
        let m = random_map(seed, 20);
        prop_assert!(m.is_triangulation());
        prop_assert!(m.euler_genus() >= 2);
        prop_assert_eq!(triple_count(&m), m.num_faces());
        prop_assert_eq!(m.num_edges() as i64, 3 * m.num_vertices() as i64 - 6 + 3 * m.euler_genus());
    }
}
