//! Ring perception by path-graph collapse.
//!
//! Every edge starts as a two-node path. Vertices are removed one at a time
//! (fewest incident paths first); each pair of paths meeting at the removed
//! vertex and otherwise disjoint is concatenated. A concatenation whose ends
//! coincide is a ring. Every simple cycle appears exactly once.

use crate::graph::{LabeledGraph, NodeId};

/// Rotates a cycle to start at its smallest node and continue toward the
/// smaller of that node's two cycle neighbors.
pub fn canonical_cycle(cycle: &[NodeId]) -> Vec<NodeId> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let (start, _) = cycle.iter().enumerate().min_by_key(|(_, &v)| v).expect("non-empty");
    let next = cycle[(start + 1) % n];
    let prev = cycle[(start + n - 1) % n];
    if next <= prev {
        (0..n).map(|i| cycle[(start + i) % n]).collect()
    } else {
        (0..n).map(|i| cycle[(start + n - i) % n]).collect()
    }
}

/// All simple cycles of `g`, optionally only those with at most `max_size`
/// nodes, sorted by length and then node sequence.
pub fn perceive_rings(g: &LabeledGraph, max_size: Option<usize>) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let limit = max_size.unwrap_or(usize::MAX);
    let mut alive = vec![true; n];

    // nodes of degree <= 1 lie on no cycle
    let mut deg: Vec<usize> = g.nodes().map(|v| g.degree(v)).collect();
    let mut stack: Vec<NodeId> = g.nodes().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &(w, _) in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }

    let mut paths: Vec<Vec<NodeId>> = Vec::new();
    let mut path_alive: Vec<bool> = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        if alive[e.a] && alive[e.b] && limit >= 2 {
            incident[e.a].push(paths.len());
            incident[e.b].push(paths.len());
            paths.push(vec![e.a, e.b]);
            path_alive.push(true);
        }
    }

    let mut rings = Vec::new();
    let mut mark = vec![false; n];
    while let Some(x) = (0..n)
        .filter(|&v| alive[v])
        .min_by_key(|&v| (incident[v].iter().filter(|&&p| path_alive[p]).count(), v))
    {
        let here: Vec<usize> = incident[x].iter().copied().filter(|&p| path_alive[p]).collect();
        for (i, &pi) in here.iter().enumerate() {
            for &pj in &here[i + 1..] {
                // orient pi to end at x and pj to start at x
                let mut a = paths[pi].clone();
                if a[0] == x {
                    a.reverse();
                }
                let mut b = paths[pj].clone();
                if b[0] != x {
                    b.reverse();
                }
                let closes = a[0] == *b.last().expect("non-empty");
                let size = a.len() + b.len() - 2;
                if size > limit || (!closes && size + 1 > limit) {
                    continue;
                }
                for &v in &a {
                    mark[v] = true;
                }
                let inner_end = if closes { b.len() - 1 } else { b.len() };
                let clash = b[1..inner_end].iter().any(|&v| mark[v]);
                for &v in &a {
                    mark[v] = false;
                }
                if clash {
                    continue;
                }
                if closes {
                    let mut cycle = a;
                    cycle.extend_from_slice(&b[1..b.len() - 1]);
                    rings.push(canonical_cycle(&cycle));
                } else {
                    let mut joined = a;
                    joined.extend_from_slice(&b[1..]);
                    let (s, t) = (joined[0], *joined.last().expect("non-empty"));
                    incident[s].push(paths.len());
                    incident[t].push(paths.len());
                    paths.push(joined);
                    path_alive.push(true);
                }
            }
        }
        for &p in &here {
            path_alive[p] = false;
        }
        incident[x].clear();
        alive[x] = false;
    }
    rings.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    rings
}
