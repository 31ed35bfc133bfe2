#![allow(dead_code)]

use dpo_core::graph::{GraphBuilder, LabeledGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub mod corpus;
pub mod oracles;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, node_labels: &[&str], edge_labels: &[&str]) -> LabeledGraph {
    let mut b = GraphBuilder::with_capacity(n);
    for _ in 0..n {
        b.add_node(*node_labels.choose(rng).unwrap());
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v, *edge_labels.choose(rng).unwrap()).unwrap();
            }
        }
    }
    b.build()
}

/// Graphs with 1..=max nodes, labels from small alphabets.
pub fn arb_graph(max: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(0..3usize, n),
            proptest::collection::vec(0..4usize, pairs),
        )
            .prop_map(move |(nl, el)| {
                let mut b = GraphBuilder::with_capacity(n);
                for l in nl {
                    b.add_node(["a", "b", "c"][l]);
                }
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        // two of four codes mean "no edge"
                        if el[k] >= 2 {
                            b.add_edge(u, v, ["x", "y"][el[k] - 2]).unwrap();
                        }
                        k += 1;
                    }
                }
                b.build()
            })
    })
}

/// The same graph with its nodes renumbered by `perm` (old -> new) and
/// its edges inserted in shuffled order.
pub fn permute<R: Rng>(g: &LabeledGraph, perm: &[usize], rng: &mut R) -> LabeledGraph {
    let mut inv = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut b = GraphBuilder::with_capacity(g.node_count());
    for &old in &inv {
        b.add_node(g.label(old).clone());
    }
    let mut edges: Vec<_> = g.edges().iter().collect();
    edges.shuffle(rng);
    for e in edges {
        b.add_edge(perm[e.a], perm[e.b], e.label.clone()).unwrap();
    }
    b.build()
}

/// Every injective map from `k` pattern nodes into `n` host nodes that
/// sends each pattern node `i` to a host node `h` with `allowed(i, h)`.
pub fn injective_maps_where(k: usize, n: usize, allowed: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn go(
        k: usize,
        n: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for h in 0..n {
            if !used[h] && allowed(cur.len(), h) {
                used[h] = true;
                cur.push(h);
                go(k, n, allowed, cur, used, out);
                cur.pop();
                used[h] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, n, &allowed, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
