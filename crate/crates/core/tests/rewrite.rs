mod common;

use std::collections::BTreeSet;

use common::oracles::{edge_set, evaluate, node_set, random_rule};
use common::{arb_graph, random_graph};
use dpo_core::graph::LabeledGraph;
use dpo_core::rewrite::{apply, apply_traced, explore, ApplyError, RuleEdge, RuleGraph, RuleNode, Strategy};
use dpo_core::sgm::{are_isomorphic, Match};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn dpo_matches_set_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut ok, mut clashes) = (0, 0);
    for case in 0..100 {
        let n = rng.gen_range(1..=7);
        let host = random_graph(&mut rng, n, 0.4, &["a", "b"], &["x", "y"]);
        let (rule, map) = random_rule(&mut rng, &host);
        let got = apply(&rule, &host, &Match::new(map.clone()));
        match (got, evaluate(&rule, &host, &map)) {
            (Ok(g), Ok((nodes, edges))) => {
                assert_eq!(node_set(&g), nodes, "case {case}");
                assert_eq!(edge_set(&g), edges, "case {case}");
                assert_eq!(g.node_count(), nodes.len());
                assert_eq!(g.edge_count(), edges.len());
                ok += 1;
            }
            (Err(ApplyError::EdgeExists { .. }), Err(())) => clashes += 1,
            (got, want) => panic!("case {case}: apply gave {got:?}, oracle {want:?}"),
        }
    }
    assert!(ok >= 70, "{ok} successful cases, {clashes} clashes");
}

fn identity_rule(g: &LabeledGraph) -> RuleGraph {
    RuleGraph {
        id: "id".into(),
        wildcard: None,
        nodes: g
            .nodes()
            .map(|v| RuleNode {
                id: v as i64,
                left: Some(g.label(v).clone()),
                right: Some(g.label(v).clone()),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| RuleEdge {
                a: e.a,
                b: e.b,
                left: Some(e.label.clone()),
                right: Some(e.label.clone()),
            })
            .collect(),
        constraints: Vec::new(),
    }
}

proptest! {
    #[test]
    fn apply_is_pure_and_repeatable(host in arb_graph(7), seed in any::<u64>()) {
        let (rule, map) = random_rule(&mut ChaCha8Rng::seed_from_u64(seed), &host);
        let before = host.clone();
        let m = Match::new(map);
        let a = apply(&rule, &host, &m);
        prop_assert!(host.structurally_equal(&before));
        match (a, apply(&rule, &host, &m)) {
            (Ok(x), Ok(y)) => prop_assert!(x.structurally_equal(&y)),
            (x, y) => prop_assert_eq!(x.err(), y.err()),
        }
    }

    #[test]
    fn identical_sides_change_nothing(host in arb_graph(7), k in 1usize..4) {
        let keep: Vec<usize> = (0..host.node_count().min(k)).collect();
        let rule = identity_rule(&host.induced_subgraph(&keep));
        let g = apply(&rule, &host, &Match::new(keep)).unwrap();
        prop_assert!(g.structurally_equal(&host));
    }

    #[test]
    fn reverse_undoes_a_step(host in arb_graph(7), seed in any::<u64>()) {
        let (rule, map) = random_rule(&mut ChaCha8Rng::seed_from_u64(seed), &host);
        // nodes deleted together with edges the rule does not mention
        // cannot come back
        let rule_edges: BTreeSet<(usize, usize)> = rule
            .edges
            .iter()
            .filter(|e| e.left.is_some())
            .map(|e| (map[e.a].min(map[e.b]), map[e.a].max(map[e.b])))
            .collect();
        let lossy = (0..map.len()).filter(|&i| rule.nodes[i].right.is_none()).any(|i| {
            host.neighbors(map[i])
                .iter()
                .any(|&(w, _)| !rule_edges.contains(&(map[i].min(w), map[i].max(w))))
        });
        prop_assume!(!lossy);
        let Ok(t) = apply_traced(&rule, &host, &Match::new(map.clone())) else {
            return Err(TestCaseError::reject("edge clash"));
        };
        let mut added = t.added.iter();
        let image: Vec<usize> = rule
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.right.is_some())
            .map(|(i, n)| match n.left {
                Some(_) => t.host_to_result[map[i]].unwrap(),
                None => *added.next().unwrap(),
            })
            .collect();
        let back = apply(&rule.reverse(), &t.graph, &Match::new(image)).unwrap();
        prop_assert!(are_isomorphic(&back, &host));
    }

    #[test]
    fn bfs_visited_grows_with_depth(host in arb_graph(5), seed in any::<u64>(), d in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rule, _) = random_rule(&mut rng, &host);
        let rules = [rule];
        let key = |g: &LabeledGraph| format!("{:?}", edge_set(g)) + &format!("{:?}", node_set(g));
        let small = explore(std::slice::from_ref(&host), &rules, Strategy::Bfs, d - 1, key, None);
        let big = explore(std::slice::from_ref(&host), &rules, Strategy::Bfs, d, key, None);
        for k in small.visited.keys() {
            prop_assert!(big.visited.contains_key(k));
        }
    }
}
