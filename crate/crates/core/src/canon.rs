//! Canonical labeling by color refinement and exhaustive tie-breaking.
//!
//! Colors are ranks: a node's color is the number of nodes with a strictly
//! smaller signature. Refinement repeatedly splits classes by the multiset
//! of `(edge color, neighbor color)` pairs. When refinement stalls, every
//! member of the first non-singleton class is individualized in turn and
//! the smallest score over all discrete leaves wins, so the result does not
//! depend on the input numbering.

use std::collections::BTreeMap;

use crate::graph::{Label, LabeledGraph};

/// Adjacency with integer edge colors, the input to the search.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    pub adjacency: Vec<Vec<(usize, u32)>>,
    pub colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Turns arbitrary sortable keys into rank colors.
pub fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("present") as u32)
        .collect()
}

fn as_ranks<K: Ord>(sig: &[K]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..sig.len()).collect();
    idx.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    let mut out = vec![0u32; sig.len()];
    for (pos, &i) in idx.iter().enumerate() {
        out[i] = if pos > 0 && sig[idx[pos - 1]] == sig[i] {
            out[idx[pos - 1]]
        } else {
            pos as u32
        };
    }
    out
}

fn class_count(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines `colors` to the coarsest equitable partition finer than it.
pub fn refine(adjacency: &[Vec<(usize, u32)>], colors: &mut Vec<u32>) {
    let mut classes = class_count(colors);
    let mut sig: Vec<(u32, Vec<(u32, u32)>)> = Vec::with_capacity(colors.len());
    loop {
        if classes == colors.len() {
            return;
        }
        sig.clear();
        for (v, adj) in adjacency.iter().enumerate() {
            let mut nb: Vec<(u32, u32)> = adj.iter().map(|&(w, ec)| (ec, colors[w])).collect();
            nb.sort_unstable();
            sig.push((colors[v], nb));
        }
        let next = as_ranks(&sig);
        let next_classes = class_count(&next);
        *colors = next;
        if next_classes == classes {
            return;
        }
        classes = next_classes;
    }
}

/// Explores all individualization leaves and returns the minimum score and
/// the discrete coloring (a permutation of `0..n`) that produced it.
pub fn canonical_min<S, F>(g: &ColoredGraph, mut score: F) -> (S, Vec<u32>)
where
    S: Ord,
    F: FnMut(&[u32]) -> S,
{
    let mut best: Option<(S, Vec<u32>)> = None;
    let mut colors = g.colors.clone();
    search(&g.adjacency, &mut colors, &mut score, &mut best);
    best.expect("at least one leaf")
}

fn search<S: Ord, F: FnMut(&[u32]) -> S>(
    adjacency: &[Vec<(usize, u32)>],
    colors: &mut Vec<u32>,
    score: &mut F,
    best: &mut Option<(S, Vec<u32>)>,
) {
    refine(adjacency, colors);
    let n = colors.len();
    let mut size: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in colors.iter() {
        *size.entry(c).or_insert(0) += 1;
    }
    let target = size.iter().find(|(_, &s)| s > 1).map(|(&c, _)| c);
    match target {
        None => {
            let s = score(colors);
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                *best = Some((s, colors.clone()));
            }
        }
        Some(c) => {
            let members: Vec<usize> = (0..n).filter(|&v| colors[v] == c).collect();
            for &v in &members {
                let mut next = colors.clone();
                for &w in &members {
                    if w != v {
                        next[w] = c + 1;
                    }
                }
                search(adjacency, &mut next, score, best);
            }
        }
    }
}

/// Builds the colored view of a labeled graph: node colors from label
/// ranks, edge colors from edge-label ranks.
pub fn colored_view(g: &LabeledGraph) -> ColoredGraph {
    let colors = rank_keys(g.labels());
    let edge_labels: Vec<Label> = g.edges().iter().map(|e| e.label.clone()).collect();
    let edge_colors = rank_keys(&edge_labels);
    let adjacency = g
        .nodes()
        .map(|v| g.neighbors(v).iter().map(|&(w, e)| (w, edge_colors[e])).collect())
        .collect();
    ColoredGraph { adjacency, colors }
}

/// Isomorphism-invariant string key of a labeled graph: equal keys iff the
/// graphs are isomorphic.
pub fn canonical_graph_key(g: &LabeledGraph) -> String {
    if g.is_empty() {
        return "0|".to_string();
    }
    let view = colored_view(g);
    let (edges, ranks) = canonical_min(&view, |ranks| {
        let mut es: Vec<(u32, u32, &str)> = g
            .edges()
            .iter()
            .map(|e| {
                let (x, y) = (ranks[e.a], ranks[e.b]);
                (x.min(y), x.max(y), e.label.as_str())
            })
            .collect();
        es.sort_unstable();
        es.into_iter()
            .map(|(a, b, l)| (a, b, l.to_string()))
            .collect::<Vec<_>>()
    });
    let mut order: Vec<usize> = g.nodes().collect();
    order.sort_by_key(|&v| ranks[v]);
    let mut key = format!("{}|", g.node_count());
    for v in order {
        let l = g.label(v);
        key.push_str(&format!("{}:{};", l.len(), l));
    }
    key.push('|');
    for (a, b, l) in edges {
        key.push_str(&format!("{a}-{b}:{}:{l};", l.len()));
    }
    key
}
