//! Labeled, simple, undirected graphs.
//!
//! A [`LabeledGraph`] is immutable once built. Node ids are dense
//! (`0..node_count()`); the ids used in the source text (for instance GML
//! `id` values) are kept in a side table and only used for diagnostics and
//! round-tripping.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

/// A node or edge label. Compared by exact byte equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(text: impl AsRef<str>) -> Self {
        Label(Arc::from(text.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Deref for Label {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(Arc::from(s))
    }
}

impl PartialEq<str> for Label {
    fn eq(&self, other: &str) -> bool {
        &*self.0 == other
    }
}

impl PartialEq<&str> for Label {
    fn eq(&self, other: &&str) -> bool {
        &*self.0 == *other
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Smaller endpoint.
    pub a: NodeId,
    /// Larger endpoint.
    pub b: NodeId,
    pub label: Label,
}

impl Edge {
    pub fn other(&self, v: NodeId) -> NodeId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(i64),
    #[error("duplicate edge between nodes {0} and {1}")]
    DuplicateEdge(i64, i64),
    #[error("edge references undeclared node {0}")]
    UnknownNode(i64),
    #[error("duplicate node id {0}")]
    DuplicateNode(i64),
    #[error("empty label")]
    EmptyLabel,
}

/// Finite simple undirected graph with string labels on nodes and edges.
#[derive(Clone)]
pub struct LabeledGraph {
    labels: Vec<Label>,
    external: Vec<i64>,
    edges: Vec<Edge>,
    /// Per node: `(neighbor, edge id)` sorted by neighbor.
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
}

impl LabeledGraph {
    pub fn empty() -> Self {
        GraphBuilder::new().build()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.labels.len()
    }

    pub fn label(&self, v: NodeId) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// The id this node carried in its source text.
    pub fn external_id(&self, v: NodeId) -> i64 {
        self.external[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    /// Neighbors of `v` with the connecting edge id, ascending by neighbor.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn find_edge(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let adj = &self.adjacency[u];
        adj.binary_search_by_key(&v, |&(n, _)| n).ok().map(|i| adj[i].1)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.find_edge(u, v).is_some()
    }

    pub fn edge_label(&self, u: NodeId, v: NodeId) -> Option<&Label> {
        self.find_edge(u, v).map(|e| &self.edges[e].label)
    }

    /// Dense id of the node declared with external id `ext`.
    pub fn node_by_external(&self, ext: i64) -> Option<NodeId> {
        self.external.iter().position(|&x| x == ext)
    }

    /// Structural equality: same dense ids, labels and edges (in order).
    /// External ids are ignored.
    pub fn structurally_equal(&self, other: &LabeledGraph) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }

    /// Subgraph induced by `keep`, renumbered in ascending order of `keep`.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> LabeledGraph {
        let mut index = vec![usize::MAX; self.node_count()];
        let mut b = GraphBuilder::with_capacity(keep.len());
        for &v in keep {
            index[v] = b.add_node_with_external(self.labels[v].clone(), self.external[v]);
        }
        for e in &self.edges {
            let (a, c) = (index[e.a], index[e.b]);
            if a != usize::MAX && c != usize::MAX {
                b.add_edge(a, c, e.label.clone())
                    .expect("induced subgraph of a simple graph is simple");
            }
        }
        b.build()
    }
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.structurally_equal(other)
    }
}

impl Eq for LabeledGraph {}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("nodes", &self.labels)
            .field(
                "edges",
                &self
                    .edges
                    .iter()
                    .map(|e| (e.a, e.b, e.label.as_str()))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Single-owner builder for [`LabeledGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<Label>,
    external: Vec<i64>,
    edges: Vec<Edge>,
    pairs: std::collections::HashSet<(NodeId, NodeId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize) -> Self {
        GraphBuilder {
            labels: Vec::with_capacity(nodes),
            external: Vec::with_capacity(nodes),
            ..Default::default()
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Adds a node whose external id equals its dense id.
    pub fn add_node(&mut self, label: impl Into<Label>) -> NodeId {
        let id = self.labels.len();
        self.add_node_with_external(label, id as i64)
    }

    pub fn add_node_with_external(&mut self, label: impl Into<Label>, external: i64) -> NodeId {
        self.labels.push(label.into());
        self.external.push(external);
        self.labels.len() - 1
    }

    pub fn set_label(&mut self, v: NodeId, label: impl Into<Label>) {
        self.labels[v] = label.into();
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId, label: impl Into<Label>) -> Result<EdgeId, GraphError> {
        let n = self.labels.len();
        if u >= n {
            return Err(GraphError::UnknownNode(u as i64));
        }
        if v >= n {
            return Err(GraphError::UnknownNode(v as i64));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.external[u]));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if !self.pairs.insert((a, b)) {
            return Err(GraphError::DuplicateEdge(self.external[a], self.external[b]));
        }
        self.edges.push(Edge {
            a,
            b,
            label: label.into(),
        });
        Ok(self.edges.len() - 1)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.pairs.contains(&key)
    }

    pub fn build(self) -> LabeledGraph {
        let mut adjacency = vec![Vec::new(); self.labels.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adjacency[e.a].push((e.b, i));
            adjacency[e.b].push((e.a, i));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        LabeledGraph {
            labels: self.labels,
            external: self.external,
            edges: self.edges,
            adjacency,
        }
    }
}

/// Where a node of a disjoint union came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Origin {
    pub graph: usize,
    pub node: NodeId,
}

/// Places the graphs side by side; node ids are offset in input order.
pub fn disjoint_union<'a, I>(graphs: I) -> (LabeledGraph, Vec<Origin>)
where
    I: IntoIterator<Item = &'a LabeledGraph>,
{
    let mut b = GraphBuilder::new();
    let mut origin = Vec::new();
    for (gi, g) in graphs.into_iter().enumerate() {
        let offset = b.node_count();
        for v in g.nodes() {
            b.add_node(g.label(v).clone());
            origin.push(Origin { graph: gi, node: v });
        }
        for e in g.edges() {
            b.add_edge(e.a + offset, e.b + offset, e.label.clone())
                .expect("union of simple graphs is simple");
        }
    }
    (b.build(), origin)
}

/// Connected components, each sorted ascending, ordered by smallest member.
pub fn connected_components(g: &LabeledGraph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &(w, _) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Splits a graph into its connected components as separate graphs.
pub fn split_components(g: &LabeledGraph) -> Vec<LabeledGraph> {
    connected_components(g).iter().map(|c| g.induced_subgraph(c)).collect()
}

/// Count of each node label, handy for conservation checks.
pub fn label_histogram(g: &LabeledGraph) -> BTreeMap<Label, usize> {
    let mut h = BTreeMap::new();
    for l in g.labels() {
        *h.entry(l.clone()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> LabeledGraph {
        let mut b = GraphBuilder::new();
        for _ in 0..n {
            b.add_node("C");
        }
        for i in 1..n {
            b.add_edge(i - 1, i, "-").unwrap();
        }
        b.build()
    }

    #[test]
    fn rejects_self_loops_and_parallel_edges() {
        let mut b = GraphBuilder::new();
        b.add_node("A");
        b.add_node("B");
        assert_eq!(b.add_edge(0, 0, "-"), Err(GraphError::SelfLoop(0)));
        b.add_edge(0, 1, "-").unwrap();
        assert_eq!(b.add_edge(1, 0, "="), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(b.add_edge(0, 5, "-"), Err(GraphError::UnknownNode(5)));
    }

    #[test]
    fn union_of_nothing_is_empty() {
        let (g, origin) = disjoint_union(std::iter::empty());
        assert!(g.is_empty());
        assert!(origin.is_empty());
    }

    #[test]
    fn union_of_two_paths() {
        let p = path(3);
        let (g, origin) = disjoint_union([&p, &p]);
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(connected_components(&g).len(), 2);
        assert_eq!(origin[4], Origin { graph: 1, node: 1 });
        for (v, o) in origin.iter().enumerate() {
            assert_eq!(g.degree(v), p.degree(o.node));
        }
    }

    #[test]
    fn components_of_small_graphs() {
        assert!(connected_components(&LabeledGraph::empty()).is_empty());
        assert_eq!(connected_components(&path(3)), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn neighbor_lookup() {
        let g = path(4);
        assert_eq!(g.edge_label(2, 1).map(|l| l.as_str()), Some("-"));
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.degree(1), 2);
    }
}
