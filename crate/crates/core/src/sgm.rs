//! Subgraph monomorphism search with wildcard labels and matching
//! constraints.
//!
//! The search is VF2-style: pattern nodes are placed one at a time in a
//! precomputed order that prefers nodes adjacent to the partial match, host
//! candidates are drawn from the neighborhood of an already-matched
//! neighbor, and every constraint is checked as soon as the nodes it
//! references are mapped.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{connected_components, label_histogram, Label, LabeledGraph, NodeId};

/// Comparison operator of a constraint. `Lt`/`Gt` are strict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Eq,
    Ne,
    Lt,
    Gt,
}

impl Op {
    pub fn parse(s: &str) -> Option<Op> {
        match s {
            "=" => Some(Op::Eq),
            "!" => Some(Op::Ne),
            "<" => Some(Op::Lt),
            ">" => Some(Op::Gt),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Eq => "=",
            Op::Ne => "!",
            Op::Lt => "<",
            Op::Gt => ">",
        }
    }

    pub fn compare(self, value: usize, count: usize) -> bool {
        match self {
            Op::Eq => value == count,
            Op::Ne => value != count,
            Op::Lt => value < count,
            Op::Gt => value > count,
        }
    }
}

/// Extra conditions on a match. Ids are pattern node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MatchConstraint {
    /// Host label of the image of `id` must (Eq) or must not (Ne) be in `labels`.
    NodeLabel { id: NodeId, op: Op, labels: Vec<Label> },
    /// Number of host neighbors of the image of `id` reached through an edge
    /// labeled in `edge_labels` and carrying a node label in `node_labels`,
    /// compared with `count`. An empty set accepts any label.
    Adjacency {
        id: NodeId,
        op: Op,
        count: usize,
        node_labels: Vec<Label>,
        edge_labels: Vec<Label>,
    },
    /// The host has no edge between the images of `source` and `target`.
    NoEdge { source: NodeId, target: NodeId },
    /// Host label of the matched edge `source`-`target` must (Eq) or must
    /// not (Ne) be in `labels`.
    EdgeLabel {
        source: NodeId,
        target: NodeId,
        op: Op,
        labels: Vec<Label>,
    },
    /// Host degree of the image of `id` compared with `count`.
    NodeDegree { id: NodeId, op: Op, count: usize },
}

impl MatchConstraint {
    /// Pattern nodes this constraint refers to.
    pub fn nodes(&self) -> Vec<NodeId> {
        match *self {
            MatchConstraint::NodeLabel { id, .. }
            | MatchConstraint::Adjacency { id, .. }
            | MatchConstraint::NodeDegree { id, .. } => vec![id],
            MatchConstraint::NoEdge { source, target } | MatchConstraint::EdgeLabel { source, target, .. } => {
                vec![source, target]
            }
        }
    }

    /// Same constraint with node ids rewritten through `f`.
    pub fn remap(&self, f: impl Fn(NodeId) -> NodeId) -> MatchConstraint {
        let mut c = self.clone();
        match &mut c {
            MatchConstraint::NodeLabel { id, .. }
            | MatchConstraint::Adjacency { id, .. }
            | MatchConstraint::NodeDegree { id, .. } => *id = f(*id),
            MatchConstraint::NoEdge { source, target } | MatchConstraint::EdgeLabel { source, target, .. } => {
                *source = f(*source);
                *target = f(*target);
            }
        }
        c
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("constraint references missing pattern node {0}")]
    MissingNode(NodeId),
    #[error("no-edge constraint on a single node {0}")]
    DegenerateNoEdge(NodeId),
    #[error("edge-label constraint on {0}-{1}, which is not a pattern edge")]
    NotAnEdge(NodeId, NodeId),
    #[error("operator `{0}` is not allowed in a label-set constraint")]
    BadOperator(&'static str),
}

/// A pattern graph plus wildcard and constraints, with a precomputed search
/// plan.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: LabeledGraph,
    wildcard: Option<Label>,
    constraints: Vec<MatchConstraint>,
    plan: Vec<Step>,
}

#[derive(Debug, Clone)]
struct Step {
    node: NodeId,
    /// Earlier-placed neighbor whose image's neighborhood supplies candidates.
    anchor: Option<NodeId>,
    /// Pattern edges to earlier-placed nodes: (earlier node, edge label).
    back_edges: Vec<(NodeId, Label)>,
    /// Constraints fully decided once this step's node is mapped.
    checks: Vec<usize>,
}

impl Pattern {
    pub fn new(
        graph: LabeledGraph,
        wildcard: Option<Label>,
        constraints: Vec<MatchConstraint>,
    ) -> Result<Pattern, PatternError> {
        let n = graph.node_count();
        for c in &constraints {
            for id in c.nodes() {
                if id >= n {
                    return Err(PatternError::MissingNode(id));
                }
            }
            match c {
                MatchConstraint::NoEdge { source, target } if source == target => {
                    return Err(PatternError::DegenerateNoEdge(*source));
                }
                MatchConstraint::EdgeLabel { source, target, op, .. } => {
                    if !graph.has_edge(*source, *target) {
                        return Err(PatternError::NotAnEdge(*source, *target));
                    }
                    if !matches!(op, Op::Eq | Op::Ne) {
                        return Err(PatternError::BadOperator(op.symbol()));
                    }
                }
                MatchConstraint::NodeLabel { op, .. } if !matches!(op, Op::Eq | Op::Ne) => {
                    return Err(PatternError::BadOperator(op.symbol()));
                }
                _ => {}
            }
        }
        let plan = build_plan(&graph, &constraints);
        Ok(Pattern {
            graph,
            wildcard,
            constraints,
            plan,
        })
    }

    /// Pattern without wildcard or constraints.
    pub fn plain(graph: LabeledGraph) -> Pattern {
        Pattern::new(graph, None, Vec::new()).expect("no constraints to validate")
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn wildcard(&self) -> Option<&Label> {
        self.wildcard.as_ref()
    }

    pub fn constraints(&self) -> &[MatchConstraint] {
        &self.constraints
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn label_ok(&self, pattern: &Label, host: &Label) -> bool {
        pattern == host || self.wildcard.as_ref() == Some(pattern)
    }

    fn set_contains(&self, set: &[Label], host: &Label) -> bool {
        set.iter().any(|l| l == host || self.wildcard.as_ref() == Some(l))
    }

    /// Evaluates one constraint against a (possibly partial) map in which
    /// all of the constraint's nodes are mapped.
    fn constraint_holds(&self, c: &MatchConstraint, host: &LabeledGraph, map: &[NodeId]) -> bool {
        match c {
            MatchConstraint::NodeLabel { id, op, labels } => {
                let hit = self.set_contains(labels, host.label(map[*id]));
                (*op == Op::Eq) == hit
            }
            MatchConstraint::Adjacency {
                id,
                op,
                count,
                node_labels,
                edge_labels,
            } => {
                let v = map[*id];
                let n = host
                    .neighbors(v)
                    .iter()
                    .filter(|&&(w, e)| {
                        (edge_labels.is_empty() || self.set_contains(edge_labels, &host.edge(e).label))
                            && (node_labels.is_empty() || self.set_contains(node_labels, host.label(w)))
                    })
                    .count();
                op.compare(n, *count)
            }
            MatchConstraint::NoEdge { source, target } => !host.has_edge(map[*source], map[*target]),
            MatchConstraint::EdgeLabel {
                source,
                target,
                op,
                labels,
            } => match host.edge_label(map[*source], map[*target]) {
                Some(l) => (*op == Op::Eq) == self.set_contains(labels, l),
                None => false,
            },
            MatchConstraint::NodeDegree { id, op, count } => op.compare(host.degree(map[*id]), *count),
        }
    }

    /// Checks a complete map against the match definition and all
    /// constraints, independently of how it was found.
    pub fn is_valid_match(&self, host: &LabeledGraph, m: &Match) -> bool {
        let map = m.as_slice();
        if map.len() != self.node_count() || map.iter().any(|&h| h >= host.node_count()) {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !map.iter().all(|h| seen.insert(*h)) {
            return false;
        }
        for v in self.graph.nodes() {
            if !self.label_ok(self.graph.label(v), host.label(map[v])) {
                return false;
            }
        }
        for e in self.graph.edges() {
            match host.edge_label(map[e.a], map[e.b]) {
                Some(l) if self.label_ok(&e.label, l) => {}
                _ => return false,
            }
        }
        self.constraints.iter().all(|c| self.constraint_holds(c, host, map))
    }
}

fn build_plan(g: &LabeledGraph, constraints: &[MatchConstraint]) -> Vec<Step> {
    let n = g.node_count();
    let mut placed = vec![false; n];
    let mut position = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        // Prefer the unplaced node with most placed neighbors, then highest
        // degree, then lowest id; fall back to lowest id in a new component.
        let best = (0..n)
            .filter(|&v| !placed[v])
            .map(|v| {
                let links = g.neighbors(v).iter().filter(|&&(w, _)| placed[w]).count();
                (links, g.degree(v), std::cmp::Reverse(v))
            })
            .filter(|k| k.0 > 0)
            .max();
        let v = match best {
            Some((_, _, std::cmp::Reverse(v))) => v,
            None => (0..n).find(|&v| !placed[v]).expect("unplaced node exists"),
        };
        placed[v] = true;
        position[v] = order.len();
        order.push(v);
    }

    let mut steps: Vec<Step> = order
        .iter()
        .map(|&v| {
            let mut back_edges: Vec<(NodeId, Label)> = g
                .neighbors(v)
                .iter()
                .filter(|&&(w, _)| position[w] < position[v])
                .map(|&(w, e)| (w, g.edge(e).label.clone()))
                .collect();
            back_edges.sort_by_key(|(w, _)| position[*w]);
            Step {
                node: v,
                anchor: back_edges.first().map(|(w, _)| *w),
                back_edges,
                checks: Vec::new(),
            }
        })
        .collect();
    for (ci, c) in constraints.iter().enumerate() {
        let last = c
            .nodes()
            .iter()
            .map(|&id| position[id])
            .max()
            .expect("constraint has nodes");
        steps[last].checks.push(ci);
    }
    steps
}

/// Injective map from pattern node ids (index) to host node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Match {
    map: Vec<NodeId>,
}

impl Match {
    pub fn new(map: Vec<NodeId>) -> Match {
        Match { map }
    }

    pub fn image(&self, pattern_node: NodeId) -> NodeId {
        self.map[pattern_node]
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// A subgraph matching engine: pattern and host in, stream of matches out.
pub trait Matcher {
    /// Calls `visit` for every match, in the engine's search order, until
    /// it returns `Break`.
    fn for_each_match(&self, pattern: &Pattern, host: &LabeledGraph, visit: &mut dyn FnMut(&Match) -> ControlFlow<()>);
}

/// The default backtracking engine.
#[derive(Debug, Default, Clone, Copy)]
pub struct Vf2Matcher;

impl Matcher for Vf2Matcher {
    fn for_each_match(&self, pattern: &Pattern, host: &LabeledGraph, visit: &mut dyn FnMut(&Match) -> ControlFlow<()>) {
        let n = pattern.node_count();
        if n > host.node_count() {
            return;
        }
        let mut state = State {
            pattern,
            host,
            map: vec![usize::MAX; n],
            used: vec![false; host.node_count()],
        };
        let mut scratch = Match { map: Vec::new() };
        let _ = state.extend(0, &mut |map: &[NodeId]| {
            scratch.map.clear();
            scratch.map.extend_from_slice(map);
            visit(&scratch)
        });
    }
}

struct State<'a> {
    pattern: &'a Pattern,
    host: &'a LabeledGraph,
    map: Vec<NodeId>,
    used: Vec<bool>,
}

impl State<'_> {
    fn feasible(&self, step: &Step, h: NodeId) -> bool {
        let p = self.pattern;
        let pg = &p.graph;
        if self.used[h]
            || self.host.degree(h) < pg.degree(step.node)
            || !p.label_ok(pg.label(step.node), self.host.label(h))
        {
            return false;
        }
        step.back_edges
            .iter()
            .all(|(q, label)| match self.host.edge_label(self.map[*q], h) {
                Some(hl) => p.label_ok(label, hl),
                None => false,
            })
    }

    fn extend(&mut self, depth: usize, visit: &mut dyn FnMut(&[NodeId]) -> ControlFlow<()>) -> ControlFlow<()> {
        if depth == self.pattern.plan.len() {
            return visit(&self.map);
        }
        let plan = &self.pattern.plan;
        let step = &plan[depth];
        let candidates: Vec<NodeId> = match step.anchor {
            Some(a) => self.host.neighbors(self.map[a]).iter().map(|&(w, _)| w).collect(),
            None => self.host.nodes().collect(),
        };
        for h in candidates {
            if !self.feasible(step, h) {
                continue;
            }
            self.map[step.node] = h;
            let ok = step.checks.iter().all(|&ci| {
                self.pattern
                    .constraint_holds(&self.pattern.constraints[ci], self.host, &self.map)
            });
            if ok {
                self.used[h] = true;
                let flow = self.extend(depth + 1, visit);
                self.used[h] = false;
                if flow.is_break() {
                    self.map[step.node] = usize::MAX;
                    return flow;
                }
            }
            self.map[step.node] = usize::MAX;
        }
        ControlFlow::Continue(())
    }
}

/// All matches of `pattern` in `host`, sorted lexicographically by the
/// mapped host ids (pattern id order), truncated to `limit` if given.
pub fn find_monomorphisms(pattern: &Pattern, host: &LabeledGraph, limit: Option<usize>) -> Vec<Match> {
    find_monomorphisms_with(&Vf2Matcher, pattern, host, limit)
}

pub fn find_monomorphisms_with(
    matcher: &dyn Matcher,
    pattern: &Pattern,
    host: &LabeledGraph,
    limit: Option<usize>,
) -> Vec<Match> {
    let mut out = Vec::new();
    matcher.for_each_match(pattern, host, &mut |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    });
    out.sort_unstable();
    if let Some(k) = limit {
        out.truncate(k);
    }
    out
}

/// First match in search order, if any.
pub fn first_match(pattern: &Pattern, host: &LabeledGraph) -> Option<Match> {
    let mut found = None;
    Vf2Matcher.for_each_match(pattern, host, &mut |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    });
    found
}

pub fn has_match(pattern: &Pattern, host: &LabeledGraph) -> bool {
    first_match(pattern, host).is_some()
}

/// Label-preserving isomorphism test: equal sizes plus a monomorphism.
pub fn are_isomorphic(g1: &LabeledGraph, g2: &LabeledGraph) -> bool {
    if g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    if label_histogram(g1) != label_histogram(g2) {
        return false;
    }
    let mut d1: Vec<usize> = g1.nodes().map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = g2.nodes().map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return false;
    }
    has_match(&Pattern::plain(g1.clone()), g2)
}

/// Node sets of the pattern's connected components, by smallest member.
pub fn pattern_components(p: &Pattern) -> Vec<Vec<NodeId>> {
    connected_components(p.graph())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn methane() -> LabeledGraph {
        let mut b = GraphBuilder::new();
        let c = b.add_node("C");
        for _ in 0..4 {
            let h = b.add_node("H");
            b.add_edge(c, h, "-").unwrap();
        }
        b.build()
    }

    fn single(label: &str) -> LabeledGraph {
        let mut b = GraphBuilder::new();
        b.add_node(label);
        b.build()
    }

    #[test]
    fn single_carbon_in_methane() {
        let p = Pattern::plain(single("C"));
        assert_eq!(find_monomorphisms(&p, &methane(), None).len(), 1);
    }

    #[test]
    fn wildcard_node_matches_everything() {
        let p = Pattern::new(single("*"), Some("*".into()), vec![]).unwrap();
        assert_eq!(find_monomorphisms(&p, &methane(), None).len(), 5);
    }

    #[test]
    fn no_edge_excludes_bonded_carbons() {
        // ethane
        let mut b = GraphBuilder::new();
        let c1 = b.add_node("C");
        let c2 = b.add_node("C");
        b.add_edge(c1, c2, "-").unwrap();
        for c in [c1, c2] {
            for _ in 0..3 {
                let h = b.add_node("H");
                b.add_edge(c, h, "-").unwrap();
            }
        }
        let ethane = b.build();
        let mut pb = GraphBuilder::new();
        pb.add_node("C");
        pb.add_node("C");
        let free = Pattern::plain(pb.clone().build());
        assert_eq!(find_monomorphisms(&free, &ethane, None).len(), 2);
        let p = Pattern::new(pb.build(), None, vec![MatchConstraint::NoEdge { source: 0, target: 1 }]).unwrap();
        assert!(find_monomorphisms(&p, &ethane, None).is_empty());
    }

    #[test]
    fn constraint_validation() {
        let g = single("C");
        assert_eq!(
            Pattern::new(
                g.clone(),
                None,
                vec![MatchConstraint::NodeDegree {
                    id: 3,
                    op: Op::Eq,
                    count: 1
                }]
            )
            .unwrap_err(),
            PatternError::MissingNode(3)
        );
        assert_eq!(
            Pattern::new(g.clone(), None, vec![MatchConstraint::NoEdge { source: 0, target: 0 }]).unwrap_err(),
            PatternError::DegenerateNoEdge(0)
        );
        assert!(matches!(
            Pattern::new(
                g,
                None,
                vec![MatchConstraint::NodeLabel {
                    id: 0,
                    op: Op::Lt,
                    labels: vec![]
                }]
            ),
            Err(PatternError::BadOperator("<"))
        ));
    }

    #[test]
    fn adjacency_and_degree_constraints() {
        let host = methane();
        let adj = |op, count| {
            Pattern::new(
                single("C"),
                None,
                vec![MatchConstraint::Adjacency {
                    id: 0,
                    op,
                    count,
                    node_labels: vec!["H".into()],
                    edge_labels: vec![],
                }],
            )
            .unwrap()
        };
        assert_eq!(find_monomorphisms(&adj(Op::Eq, 4), &host, None).len(), 1);
        assert_eq!(find_monomorphisms(&adj(Op::Lt, 4), &host, None).len(), 0);
        assert_eq!(find_monomorphisms(&adj(Op::Gt, 3), &host, None).len(), 1);
        assert_eq!(find_monomorphisms(&adj(Op::Ne, 4), &host, None).len(), 0);
        let deg = Pattern::new(
            single("H"),
            None,
            vec![MatchConstraint::NodeDegree {
                id: 0,
                op: Op::Eq,
                count: 1,
            }],
        )
        .unwrap();
        assert_eq!(find_monomorphisms(&deg, &host, None).len(), 4);
        assert_eq!(find_monomorphisms(&deg, &host, Some(2)).len(), 2);
    }

    #[test]
    fn matches_are_sorted_and_valid() {
        let mut pb = GraphBuilder::new();
        pb.add_node("C");
        pb.add_node("H");
        pb.add_edge(0, 1, "-").unwrap();
        let p = Pattern::plain(pb.build());
        let host = methane();
        let ms = find_monomorphisms(&p, &host, None);
        assert_eq!(ms.len(), 4);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert!(ms.iter().all(|m| p.is_valid_match(&host, m)));
    }

    #[test]
    fn isomorphism() {
        let mut b = GraphBuilder::new();
        for _ in 0..3 {
            b.add_node("X");
        }
        b.add_edge(0, 1, "-").unwrap();
        b.add_edge(1, 2, "-").unwrap();
        let path = b.clone().build();
        b.add_edge(0, 2, "-").unwrap();
        let triangle = b.build();
        assert!(are_isomorphic(&path, &path));
        assert!(!are_isomorphic(&path, &triangle));

        let mut b = GraphBuilder::new();
        for _ in 0..3 {
            b.add_node("X");
        }
        b.add_edge(2, 0, "-").unwrap();
        b.add_edge(0, 1, "-").unwrap();
        assert!(are_isomorphic(&path, &b.build()));
    }
}
