use std::collections::BTreeSet;

use dpo_core::graph::{Label, LabeledGraph};
use dpo_core::rewrite::{RuleEdge, RuleGraph, RuleNode};
use dpo_core::sgm::{MatchConstraint, Op};
use rand::seq::SliceRandom;
use rand::Rng;

use super::injective_maps_where;

pub const WILD: &str = "*";

pub fn in_set(set: &[Label], l: &Label, wild: bool) -> bool {
    set.iter().any(|s| s == l || (wild && s == WILD))
}

pub fn cmp(op: Op, value: usize, count: usize) -> bool {
    match op {
        Op::Eq => value == count,
        Op::Ne => value != count,
        Op::Lt => value < count,
        Op::Gt => value > count,
    }
}

/// Post-filter oracle: label-preserving injective maps that keep every
/// pattern edge, then every constraint.
pub fn oracle(p: &LabeledGraph, wild: bool, cs: &[MatchConstraint], h: &LabeledGraph) -> Vec<Vec<usize>> {
    let same = |pl: &Label, hl: &Label| pl == hl || (wild && pl == WILD);
    injective_maps_where(p.node_count(), h.node_count(), |v, w| same(p.label(v), h.label(w)))
        .into_iter()
        .filter(|m| {
            p.edges()
                .iter()
                .all(|e| h.edge_label(m[e.a], m[e.b]).is_some_and(|l| same(&e.label, l)))
        })
        .filter(|m| {
            cs.iter().all(|c| match c {
                MatchConstraint::NodeLabel { id, op, labels } => {
                    (*op == Op::Eq) == in_set(labels, h.label(m[*id]), wild)
                }
                MatchConstraint::Adjacency {
                    id,
                    op,
                    count,
                    node_labels,
                    edge_labels,
                } => {
                    let v = m[*id];
                    let n = (0..h.node_count())
                        .filter(|&w| {
                            let Some(el) = h.edge_label(v, w) else { return false };
                            (edge_labels.is_empty() || in_set(edge_labels, el, wild))
                                && (node_labels.is_empty() || in_set(node_labels, h.label(w), wild))
                        })
                        .count();
                    cmp(*op, n, *count)
                }
                MatchConstraint::NoEdge { source, target } => h.edge_label(m[*source], m[*target]).is_none(),
                MatchConstraint::EdgeLabel {
                    source,
                    target,
                    op,
                    labels,
                } => h
                    .edge_label(m[*source], m[*target])
                    .is_some_and(|l| (*op == Op::Eq) == in_set(labels, l, wild)),
                MatchConstraint::NodeDegree { id, op, count } => {
                    let d = (0..h.node_count())
                        .filter(|&w| h.edge_label(m[*id], w).is_some())
                        .count();
                    cmp(*op, d, *count)
                }
            })
        })
        .collect()
}

pub fn label_subset<R: Rng>(rng: &mut R, pool: &[&str]) -> Vec<Label> {
    let k = rng.gen_range(0..=2);
    pool.choose_multiple(rng, k).map(|s| Label::new(*s)).collect()
}

pub fn random_constraint<R: Rng>(rng: &mut R, p: &LabeledGraph, wild: bool) -> Option<MatchConstraint> {
    let n = p.node_count();
    let node_pool: &[&str] = if wild { &["a", "b", WILD] } else { &["a", "b"] };
    let edge_pool: &[&str] = if wild { &["x", "y", WILD] } else { &["x", "y"] };
    let ops = [Op::Eq, Op::Ne, Op::Lt, Op::Gt];
    let id = rng.gen_range(0..n);
    Some(match rng.gen_range(0..5) {
        0 => MatchConstraint::NodeLabel {
            id,
            op: *[Op::Eq, Op::Ne].choose(rng).unwrap(),
            labels: label_subset(rng, node_pool),
        },
        1 => MatchConstraint::Adjacency {
            id,
            op: *ops.choose(rng).unwrap(),
            count: rng.gen_range(0..4),
            node_labels: label_subset(rng, node_pool),
            edge_labels: label_subset(rng, edge_pool),
        },
        2 if n >= 2 => {
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(rng);
            MatchConstraint::NoEdge {
                source: ids[0],
                target: ids[1],
            }
        }
        3 if p.edge_count() > 0 => {
            let e = p.edges().choose(rng).unwrap();
            MatchConstraint::EdgeLabel {
                source: e.a,
                target: e.b,
                op: *[Op::Eq, Op::Ne].choose(rng).unwrap(),
                labels: label_subset(rng, edge_pool),
            }
        }
        4 => MatchConstraint::NodeDegree {
            id,
            op: *ops.choose(rng).unwrap(),
            count: rng.gen_range(0..5),
        },
        _ => return None,
    })
}

pub type EdgeSet = BTreeSet<(i64, i64, String)>;

/// A rule built around a known match: `map[i]` is the host image of left
/// rule node `i`; right-only nodes follow the left ones.
pub fn random_rule<R: Rng>(rng: &mut R, host: &LabeledGraph) -> (RuleGraph, Vec<usize>) {
    let n = host.node_count();
    let k = rng.gen_range(1..=n.min(4));
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    map.truncate(k);
    let pick = |rng: &mut R, xs: &[&str]| Label::new(*xs.choose(rng).unwrap());

    let mut nodes = Vec::new();
    for &h in &map {
        let left = host.label(h).clone();
        let right = match rng.gen_range(0..4) {
            0 => None,
            1 => Some(pick(rng, &["a", "b", "c"])),
            _ => Some(left.clone()),
        };
        nodes.push(RuleNode {
            id: nodes.len() as i64 + 1,
            left: Some(left),
            right,
        });
    }
    for _ in 0..rng.gen_range(0..=2) {
        nodes.push(RuleNode {
            id: nodes.len() as i64 + 1,
            left: None,
            right: Some(pick(rng, &["a", "b"])),
        });
    }
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let host_edge = (i < k && j < k).then(|| host.edge_label(map[i], map[j])).flatten();
            let left = match host_edge {
                Some(l) if rng.gen_bool(0.7) => Some(l.clone()),
                _ => None,
            };
            let both_right = nodes[i].right.is_some() && nodes[j].right.is_some();
            let right = match (&left, both_right) {
                (_, false) => None,
                (Some(l), true) => match rng.gen_range(0..3) {
                    0 => None,
                    1 => Some(pick(rng, &["x", "y"])),
                    _ => Some(l.clone()),
                },
                (None, true) => rng.gen_bool(0.3).then(|| pick(rng, &["x", "y"])),
            };
            if left.is_some() || right.is_some() {
                edges.push(RuleEdge {
                    a: i,
                    b: j,
                    left,
                    right,
                });
            }
        }
    }
    let rule = RuleGraph {
        id: "random".into(),
        wildcard: None,
        nodes,
        edges,
        constraints: Vec::new(),
    };
    (rule, map)
}

pub fn node_set(g: &LabeledGraph) -> BTreeSet<(i64, String)> {
    g.nodes().map(|v| (g.external_id(v), g.label(v).to_string())).collect()
}

pub fn edge_set(g: &LabeledGraph) -> EdgeSet {
    g.edges()
        .iter()
        .map(|e| {
            let (a, b) = (g.external_id(e.a), g.external_id(e.b));
            (a.min(b), a.max(b), e.label.to_string())
        })
        .collect()
}

/// Direct set evaluation: remove the images of left-only elements, drop
/// edges touching removed nodes, relabel, then add the right-only part.
pub fn evaluate(
    rule: &RuleGraph,
    host: &LabeledGraph,
    map: &[usize],
) -> Result<(BTreeSet<(i64, String)>, EdgeSet), ()> {
    let ext = |i: usize| host.external_id(map[i]);
    let removed: BTreeSet<i64> = (0..map.len())
        .filter(|&i| rule.nodes[i].right.is_none())
        .map(ext)
        .collect();
    let mut nodes: BTreeSet<(i64, String)> = node_set(host)
        .into_iter()
        .filter(|(id, _)| !removed.contains(id))
        .collect();
    for (i, n) in rule.nodes.iter().enumerate().take(map.len()) {
        if let Some(r) = &n.right {
            nodes.remove(&(ext(i), host.label(map[i]).to_string()));
            nodes.insert((ext(i), r.to_string()));
        }
    }
    let first_fresh = host.nodes().map(|v| host.external_id(v)).max().unwrap_or(-1) + 1;
    let mut fresh = vec![None; rule.nodes.len()];
    for (i, n) in rule.nodes.iter().enumerate().skip(map.len()) {
        let id = first_fresh + (i - map.len()) as i64;
        nodes.insert((id, n.right.as_ref().unwrap().to_string()));
        fresh[i] = Some(id);
    }
    let id_of = |i: usize| if i < map.len() { ext(i) } else { fresh[i].unwrap() };

    let mut edges: EdgeSet = edge_set(host)
        .into_iter()
        .filter(|(a, b, _)| !removed.contains(a) && !removed.contains(b))
        .collect();
    for e in &rule.edges {
        let (a, b) = (id_of(e.a), id_of(e.b));
        let (a, b) = (a.min(b), a.max(b));
        if let Some(l) = &e.left {
            edges.remove(&(a, b, l.to_string()));
            if let Some(r) = &e.right {
                edges.insert((a, b, r.to_string()));
            }
        }
    }
    for e in rule.edges.iter().filter(|e| e.left.is_none()) {
        let (a, b) = (id_of(e.a), id_of(e.b));
        let (a, b) = (a.min(b), a.max(b));
        if edges.iter().any(|(x, y, _)| (*x, *y) == (a, b)) {
            return Err(());
        }
        edges.insert((a, b, e.right.as_ref().unwrap().to_string()));
    }
    Ok((nodes, edges))
}

/// All simple cycles by depth-first search from each smallest vertex.
pub fn cycle_oracle(g: &LabeledGraph) -> Vec<Vec<usize>> {
    fn extend(g: &LabeledGraph, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let (s, last) = (path[0], *path.last().unwrap());
        for &(w, _) in g.neighbors(last) {
            if w == s && path.len() >= 3 && path[1] < last {
                out.insert(path.clone());
            } else if w > s && !path.contains(&w) {
                path.push(w);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in g.nodes() {
        extend(g, &mut vec![s], &mut out);
    }
    let mut v: Vec<Vec<usize>> = out.into_iter().collect();
    v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    v
}

/// Array-based Life step.
pub fn reference_step(w: usize, h: usize, torus: bool, cells: &[bool]) -> Vec<bool> {
    let mut next = vec![false; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let mut n = 0;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if (dx, dy) == (0, 0) {
                        continue;
                    }
                    let (mut nx, mut ny) = (x + dx, y + dy);
                    if torus {
                        nx = nx.rem_euclid(w as i64);
                        ny = ny.rem_euclid(h as i64);
                    } else if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    n += usize::from(cells[(ny * w as i64 + nx) as usize]);
                }
            }
            let i = (y * w as i64 + x) as usize;
            next[i] = matches!((cells[i], n), (true, 2) | (_, 3));
        }
    }
    next
}

/// Plain backtracking over the 81-cell array.
pub fn reference_solve(cells: &mut [u8; 81]) -> bool {
    let Some(i) = cells.iter().position(|&c| c == 0) else {
        return true;
    };
    for d in 1..=9u8 {
        let ok = (0..81).all(|j| {
            let peer = j != i && (j / 9 == i / 9 || j % 9 == i % 9 || (j / 27 == i / 27 && (j % 9) / 3 == (i % 9) / 3));
            !peer || cells[j] != d
        });
        if ok {
            cells[i] = d;
            if reference_solve(cells) {
                return true;
            }
            cells[i] = 0;
        }
    }
    false
}
