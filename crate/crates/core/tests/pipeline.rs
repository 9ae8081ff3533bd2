mod common;

use common::{all_good, random_map, recount};
use mod3orient::exploration::{check_invariants, ExplorationState};
use mod3orient::initial::{build_initial_graph, InitialOutcome};
use mod3orient::oracle::{brute_force_orient, SearchOutcome, DEFAULT_EDGE_LIMIT};
use mod3orient::reductions::ReductionKind;
use mod3orient::{instances, solve, SolveError, SolveOptions};
use proptest::prelude::*;

const CHECKED: SolveOptions = SolveOptions { check_invariants: true, trace: false };

#[test]
fn corpus_outdegrees_are_positive_multiples_of_three() {
    for (name, map) in instances::corpus() {
        let r = solve(&map, CHECKED).unwrap_or_else(|e| panic!("{name}: {e}"));
        let d = recount(&map, &r.orientation);
        assert!(all_good(&d), "{name}: {d:?}");
        assert_eq!(d.iter().sum::<usize>(), map.num_edges());
    }
}

#[test]
fn tight_maps_force_outdegree_three() {
    for map in [instances::k7_torus(), instances::klein_8()] {
        let r = solve(&map, SolveOptions::default()).unwrap();
        assert!(recount(&map, &r.orientation).iter().all(|&d| d == 3));
    }
}

#[test]
fn small_maps_agree_with_search() {
    for (name, map) in instances::corpus().into_iter().filter(|(_, m)| m.num_edges() <= DEFAULT_EDGE_LIMIT) {
        let found = brute_force_orient(&map, DEFAULT_EDGE_LIMIT).unwrap();
        assert!(matches!(found, SearchOutcome::Found(_)), "{name}");
        assert!(all_good(&recount(&map, &solve(&map, SolveOptions::default()).unwrap().orientation)));
    }
}

#[test]
fn initial_requests_satisfy_invariants() {
    for (name, map) in instances::corpus() {
        if let (InitialOutcome::Ready(ig), _) = build_initial_graph(&map).unwrap() {
            let s = ExplorationState::init(&map, &ig);
            assert!(check_invariants(&map, &s).is_empty(), "{name}");
        }
    }
}

#[test]
fn trace_lines_cover_every_step() {
    let map = instances::genus2_orientable();
    let r = solve(&map, SolveOptions { check_invariants: false, trace: true }).unwrap();
    let steps: Vec<&String> = r.trace.iter().filter(|l| l.starts_with("step ")).collect();
    assert_eq!(steps.len(), r.steps);
    let initial = r.trace.iter().find(|l| l.starts_with("initial ")).unwrap();
    let i_size = initial.split('{').nth(1).unwrap().split(',').count();
    assert_eq!(r.steps + i_size, map.num_vertices());
    for (i, l) in steps.iter().enumerate() {
        assert!(l.starts_with(&format!("step {i} stack ")), "{l}");
        assert!(l.contains(" case ") && l.contains(" B+") && l.contains(" requests "));
    }
}

#[test]
fn rejects_low_genus_and_non_triangulations() {
    assert!(matches!(solve(&instances::tetrahedron(), CHECKED), Err(SolveError::GenusTooSmall { genus: 0 })));
    assert!(matches!(solve(&instances::projective_plane_6(), CHECKED), Err(SolveError::GenusTooSmall { genus: 1 })));
}

#[test]
fn solve_is_deterministic() {
    let map = random_map(11, 30);
    let a = solve(&map, SolveOptions { check_invariants: false, trace: true }).unwrap();
    let b = solve(&map, SolveOptions { check_invariants: false, trace: true }).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_maps_solve_with_invariants(seed in any::<u64>()) {
        let map = random_map(seed, 25);
        let r = solve(&map, CHECKED).unwrap();
        let d = recount(&map, &r.orientation);
        prop_assert!(all_good(&d));
        prop_assert!(r.demand_zero_off_i);
    }

    #[test]
    fn nested_subdivisions_reduce_one_at_a_time(face in 0usize..14, count in 1usize..12) {
        let map = instances::subdivide_face(&instances::k7_torus(), face, count);
        let r = solve(&map, SolveOptions::default()).unwrap();
        prop_assert_eq!(r.count(ReductionKind::ThreeDisk), count);
        prop_assert_eq!(r.count(ReductionKind::FourDisk), 0);
    }
}
