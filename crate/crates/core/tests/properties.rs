//! Property tests over random graphs and states: algebraic identities
//! of the rewrites, builder/recognizer round-trips, serialization
//! round-trips, and oracle invariants that must survive arbitrary
//! measurement sequences.

use std::collections::BTreeSet;

use proptest::prelude::*;

use qlan_core::measure::{measure_x, measure_x_isolated, measure_z};
use qlan_core::model::{build_chain_state, build_tree_like_state, ModelError};
use qlan_core::oracle::{graph_to_tableau, lc_equivalent, valid_steps, verify_rule, Outcome};
use qlan_core::{Graph, GraphDoc, OracleError, OracleLimits, PauliBasis, QlanState, VertexId};

/// The graph on vertices `0..n` whose edges are the set bits of
/// `mask`, in lexicographic pair order.
fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n as VertexId {
        for j in i + 1..n as VertexId {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::build(0..n as VertexId, edges).expect("mask graphs are valid")
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let bits = n * (n - 1) / 2;
        (Just(n), 0..1u64 << bits).prop_map(|(n, mask)| graph_from_mask(n, mask))
    })
}

/// Tree parameters constrained to the representable range; the builder
/// decides representability, the test discards the rest.
fn arb_tree_state() -> impl Strategy<Value = (usize, usize, usize, QlanState)> {
    (2..=6usize, 1..=3usize, 1..=4usize).prop_filter_map(
        "representable tree parameters",
        |(kc, kb, no)| {
            if kb >= kc {
                return None;
            }
            match build_tree_like_state(kc, kb, no) {
                Ok(state) => Some((kc, kb, no, state)),
                Err(ModelError::UnrepresentableTree { .. }) => None,
                Err(e) => panic!("building ({kc},{kb},{no}): {e}"),
            }
        },
    )
}

fn vertex_at(g: &Graph, idx: prop::sample::Index) -> VertexId {
    let vertices: Vec<VertexId> = g.vertices().collect();
    vertices[idx.index(vertices.len())]
}

proptest! {
    #[test]
    fn local_complementation_is_an_involution(g in arb_graph(7), idx: prop::sample::Index) {
        let a = vertex_at(&g, idx);
        let twice = g
            .local_complement(a)
            .expect("vertex exists")
            .local_complement(a)
            .expect("vertex survives");
        prop_assert_eq!(twice, g);
    }

    #[test]
    fn complementation_is_an_involution(g in arb_graph(7)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn z_measurements_commute(g in arb_graph(7), i: prop::sample::Index, j: prop::sample::Index) {
        let a = vertex_at(&g, i);
        let b = vertex_at(&g, j);
        prop_assume!(a != b);
        let ab = measure_z(&measure_z(&g, a).expect("first"), b).expect("second");
        let ba = measure_z(&measure_z(&g, b).expect("first"), a).expect("second");
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn every_valid_step_removes_exactly_its_target(g in arb_graph(7)) {
        for step in valid_steps(&g) {
            // Bare X steps target isolated vertices; the wire format
            // requires a support, so route them to the special case
            // exactly as the oracle does.
            let after = match (step.basis, step.support) {
                (PauliBasis::X, None) => {
                    measure_x_isolated(&g, step.target).expect("isolated target")
                }
                _ => step.apply(&g).expect("valid step applies"),
            };
            let mut expected: BTreeSet<VertexId> = g.vertex_set();
            expected.remove(&step.target);
            prop_assert_eq!(after.vertex_set(), expected, "step {:?}", step);
        }
    }

    #[test]
    fn chain_proximity_is_the_client_index_distance(
        k in 2..=9usize,
        i: prop::sample::Index,
        j: prop::sample::Index,
    ) {
        let state = build_chain_state(k).expect("chain state");
        let ci = i.index(k) as VertexId;
        let cj = j.index(k) as VertexId;
        prop_assume!(ci != cj);
        let d = state.client_proximity(ci, cj).expect("proximity");
        prop_assert_eq!(d, ci.abs_diff(cj) as usize);
    }

    #[test]
    fn chain_builder_round_trips_through_its_recognizer(k in 2..=12usize) {
        let state = build_chain_state(k).expect("chain state");
        prop_assert_eq!(state.clients().len(), k);
        prop_assert_eq!(state.orchestrators().len(), k - 1);
        for o in state.orchestrators() {
            prop_assert_eq!(state.client_degree(o).expect("orchestrator"), 2);
        }
        let view = state.chain_view().expect("chain recognized");
        prop_assert_eq!(view.k(), k);
    }

    #[test]
    fn tree_builder_round_trips_through_its_recognizer(
        (kc, kb, no, state) in arb_tree_state(),
    ) {
        prop_assert_eq!(state.clients().len(), no * (kc - kb) + kb);
        prop_assert_eq!(state.orchestrators().len(), no);
        prop_assert!(state.fictitious.is_empty());
        if kc > 2 {
            let decomp = state.star_decomposition().expect("stars recognized");
            prop_assert_eq!(decomp.k_c, kc);
            prop_assert_eq!(decomp.n_o(), no);
            prop_assert_eq!(decomp.k_b_min, if no > 1 { kb } else { 0 });
        } else {
            // Two-client stars collapse to the chain construction.
            let view = state.chain_view().expect("chain recognized");
            prop_assert_eq!(view.k(), no + 1);
        }
    }

    #[test]
    fn graph_documents_round_trip_through_json(g in arb_graph(7)) {
        let doc = GraphDoc::from_graph(&g);
        let text = serde_json::to_string(&doc).expect("serialize");
        let back: GraphDoc = serde_json::from_str(&text).expect("parse");
        prop_assert_eq!(back.to_graph().expect("valid document"), g);
    }

    #[test]
    fn state_documents_round_trip_through_json((_, _, _, state) in arb_tree_state()) {
        let doc = GraphDoc::from_state(&state);
        let text = serde_json::to_string(&doc).expect("serialize");
        let back: GraphDoc = serde_json::from_str(&text).expect("parse");
        prop_assert_eq!(back.to_state().expect("valid document"), state);
    }

    #[test]
    fn graph_tableaus_canonicalize_to_themselves(g in arb_graph(7)) {
        let tableau = graph_to_tableau(&g).expect("tableau");
        let (canonical, gates) = tableau.canonical_graph().expect("canonical form");
        prop_assert_eq!(canonical, g);
        prop_assert!(gates.is_empty(), "gates {:?}", gates);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_choice_never_changes_the_equivalence_class(
        g in arb_graph(6),
        idx: prop::sample::Index,
    ) {
        let candidates: Vec<VertexId> = g
            .vertices()
            .filter(|&v| g.degree(v).expect("vertex") >= 2)
            .collect();
        prop_assume!(!candidates.is_empty());
        let a = candidates[idx.index(candidates.len())];
        let supports: Vec<VertexId> =
            g.open_neighborhood(a).expect("vertex").iter().copied().collect();
        let first = measure_x(&g, a, supports[0]).expect("X rewrite");
        let limits = OracleLimits::default();
        for &b in &supports[1..] {
            let other = measure_x(&g, a, b).expect("X rewrite");
            let witness = lc_equivalent(&first, &other, &limits).expect("orbit search");
            prop_assert!(witness.is_some(), "supports {} vs {}", supports[0], b);
        }
    }

    #[test]
    fn equivalence_witnesses_replay_exactly(
        g in arb_graph(6),
        seq in prop::collection::vec(any::<prop::sample::Index>(), 0..4),
    ) {
        let mut scrambled = g.clone();
        for idx in seq {
            let a = vertex_at(&scrambled, idx);
            scrambled = scrambled.local_complement(a).expect("vertex exists");
        }
        let limits = OracleLimits::default();
        let witness = lc_equivalent(&g, &scrambled, &limits)
            .expect("orbit search")
            .expect("same orbit by construction");
        let mut replayed = g.clone();
        for v in witness {
            replayed = replayed.local_complement(v).expect("witness vertex");
        }
        prop_assert_eq!(replayed, scrambled);
    }

    #[test]
    fn tableau_invariants_survive_any_measurement_sequence(
        g in arb_graph(6),
        seq in prop::collection::vec(
            (any::<prop::sample::Index>(), 0..3u8, any::<bool>()),
            1..5,
        ),
    ) {
        let mut tableau = graph_to_tableau(&g).expect("tableau");
        for (idx, basis_pick, plus_first) in seq {
            if tableau.qubit_count() == 0 {
                break;
            }
            let labels = tableau.labels().to_vec();
            let target = labels[idx.index(labels.len())];
            let basis = [PauliBasis::Z, PauliBasis::Y, PauliBasis::X][basis_pick as usize];
            let (first, second) = if plus_first {
                (Outcome::Plus, Outcome::Minus)
            } else {
                (Outcome::Minus, Outcome::Plus)
            };
            let before = tableau.qubit_count();
            tableau = match tableau.measure(target, basis, first) {
                Ok(next) => next,
                Err(OracleError::InconsistentOutcome { .. }) => tableau
                    .measure(target, basis, second)
                    .expect("the determined outcome is consistent"),
                Err(e) => return Err(TestCaseError::fail(format!("oracle: {e}"))),
            };
            prop_assert_eq!(tableau.qubit_count(), before - 1);
            prop_assert!(tableau.check_invariants().is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampled_rules_verify_beyond_the_exhaustive_range(
        g in arb_graph(7),
        idx: prop::sample::Index,
    ) {
        let steps = valid_steps(&g);
        let step = &steps[idx.index(steps.len())];
        let verdict = verify_rule(&g, step, &OracleLimits::default()).expect("verification runs");
        prop_assert!(verdict.pass, "step {:?} on {:?}", step, g.edges());
    }
}
