mod common;

use spack_core::colorer::{
    color_graph, initial_state, peel, run_to_fixpoint, ColorError, ColorOptions, FixpointError,
    Method, Move, RunConfig,
};
use spack_core::graph::Graph;
use spack_core::io::parse_edge_list;
use spack_core::verify::verify;
use spack_core::weights::compute_weights;

fn fixture(name: &str) -> Graph {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn audited(restarts: u32) -> ColorOptions {
    ColorOptions {
        audit: true,
        restarts,
        ..ColorOptions::default()
    }
}

fn core_of(g: &Graph) -> Graph {
    let (core, _) = peel(g);
    g.induced(&core).graph
}

#[test]
fn odd_cycle_closed_by_an_outside_edge_needs_a_region_exchange() {
    let g = fixture("outside_edge_triangle.edges");
    let core = core_of(&g);
    let w = compute_weights(&core).unwrap();
    let fp = run_to_fixpoint(
        &core,
        &w,
        initial_state(&core, &w).unwrap(),
        &RunConfig::default(),
    )
    .unwrap();
    assert!(fp
        .trace
        .iter()
        .any(|t| matches!(t.mv, Move::RegionExchange { .. })));

    let run = color_graph(&g, &audited(0)).unwrap();
    assert_eq!(run.components[0].restarts, 0);
    assert!(run.components[0].audit_failures.is_empty());
    assert_eq!(verify(&g, &run.coloring), Ok(()));
    assert!(common::is_packing_coloring(
        &common::graph_distances(&g),
        &run.coloring
    ));
}

#[test]
fn stuck_greedy_start_is_rescued_by_a_restart() {
    let g = fixture("needs_restart.edges");
    match color_graph(&g, &audited(0)) {
        Err(ColorError::Fixpoint(FixpointError::Stuck(stuck))) => {
            assert!(stuck.odd_cycle.len() % 2 == 1);
        }
        other => panic!("expected a stuck run, got {:?}", other.map(|r| r.moves())),
    }
    let run = color_graph(&g, &audited(spack_core::colorer::DEFAULT_RESTARTS)).unwrap();
    assert!(run.components[0].restarts >= 1);
    assert!(run.components[0].audit_failures.is_empty());
    assert_eq!(verify(&g, &run.coloring), Ok(()));
    assert!(common::is_packing_coloring(
        &common::graph_distances(&g),
        &run.coloring
    ));
}

#[test]
fn stuck_run_can_fall_back_to_the_exact_search() {
    let g = fixture("needs_restart.edges");
    let options = ColorOptions {
        fallback_exact: true,
        restarts: 0,
        ..ColorOptions::default()
    };
    let run = color_graph(&g, &options).unwrap();
    assert_eq!(run.components[0].method, Method::ExactAfterStuck);
    assert!(run.components[0].stuck.is_some());
    assert_eq!(verify(&g, &run.coloring), Ok(()));
}

#[test]
fn every_committed_move_raises_the_potential_on_the_fixtures() {
    for name in ["outside_edge_triangle.edges", "needs_restart.edges"] {
        let run = color_graph(&fixture(name), &audited(16)).unwrap();
        for entry in run.components.iter().flat_map(|c| &c.trace) {
            assert!(entry.before < entry.after, "{name}: {entry}");
        }
    }
}
