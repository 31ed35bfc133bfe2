use std::collections::HashSet;

use thiserror::Error;

use crate::canon::canonical_graph_key;
use crate::graph::{GraphBuilder, Label, LabeledGraph, NodeId};
use crate::sgm::{find_monomorphisms, Match};

use super::RuleGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApplyError {
    #[error("match has {got} nodes but the left side has {expected}")]
    MatchSize { expected: usize, got: usize },
    #[error("match maps left edge {a}-{b} onto a host non-edge")]
    MissingEdge { a: i64, b: i64 },
    #[error("edge already exists between host nodes {a} and {b}")]
    EdgeExists { a: i64, b: i64 },
}

/// Result graph plus the bookkeeping needed to relate it to the host.
#[derive(Debug, Clone)]
pub struct Applied {
    pub graph: LabeledGraph,
    /// Host node -> result node, `None` for deleted nodes.
    pub host_to_result: Vec<Option<NodeId>>,
    /// Result ids of the right-only nodes, in rule declaration order.
    pub added: Vec<NodeId>,
}

/// Applies `rule` to `host` at match `m` (a match of the rule's left
/// pattern). The host is left untouched.
pub fn apply(rule: &RuleGraph, host: &LabeledGraph, m: &Match) -> Result<LabeledGraph, ApplyError> {
    apply_traced(rule, host, m).map(|a| a.graph)
}

pub fn apply_traced(rule: &RuleGraph, host: &LabeledGraph, m: &Match) -> Result<Applied, ApplyError> {
    let left = rule.left_index();
    let expected = left.iter().flatten().count();
    if m.len() != expected {
        return Err(ApplyError::MatchSize { expected, got: m.len() });
    }
    let image = |i: usize| left[i].map(|p| m.image(p));

    // step 1: nodes and edges exclusive to the left side
    let mut deleted = vec![false; host.node_count()];
    let mut relabel: Vec<Option<Label>> = vec![None; host.node_count()];
    for (i, n) in rule.nodes.iter().enumerate() {
        if let Some(h) = image(i) {
            match &n.right {
                None => deleted[h] = true,
                Some(r) if Some(r) != n.left.as_ref() => relabel[h] = Some(r.clone()),
                _ => {}
            }
        }
    }
    let mut removed_edges = HashSet::new();
    let mut edge_relabel = std::collections::HashMap::new();
    for e in &rule.edges {
        let (Some(l), Some(ha), Some(hb)) = (&e.left, image(e.a), image(e.b)) else {
            continue;
        };
        let Some(he) = host.find_edge(ha, hb) else {
            return Err(ApplyError::MissingEdge {
                a: rule.nodes[e.a].id,
                b: rule.nodes[e.b].id,
            });
        };
        match &e.right {
            None => {
                removed_edges.insert(he);
            }
            Some(r) if r != l => {
                edge_relabel.insert(he, r.clone());
            }
            _ => {}
        }
    }

    // step 2: copy survivors with new labels
    let mut b = GraphBuilder::with_capacity(host.node_count() + rule.nodes.len());
    let mut host_to_result = vec![None; host.node_count()];
    let mut max_ext = i64::MIN;
    for v in host.nodes() {
        max_ext = max_ext.max(host.external_id(v));
        if deleted[v] {
            continue;
        }
        let label = relabel[v].clone().unwrap_or_else(|| host.label(v).clone());
        host_to_result[v] = Some(b.add_node_with_external(label, host.external_id(v)));
    }
    for (ei, e) in host.edges().iter().enumerate() {
        if removed_edges.contains(&ei) {
            continue;
        }
        let (Some(a), Some(c)) = (host_to_result[e.a], host_to_result[e.b]) else {
            continue;
        };
        let label = edge_relabel.get(&ei).cloned().unwrap_or_else(|| e.label.clone());
        b.add_edge(a, c, label).expect("host is simple");
    }

    // step 3: nodes and edges exclusive to the right side
    let mut next_ext = if host.is_empty() { 0 } else { max_ext + 1 };
    let mut rule_to_result = vec![None; rule.nodes.len()];
    let mut added = Vec::new();
    for (i, n) in rule.nodes.iter().enumerate() {
        match (&n.left, &n.right) {
            (None, Some(r)) => {
                let id = b.add_node_with_external(r.clone(), next_ext);
                next_ext += 1;
                rule_to_result[i] = Some(id);
                added.push(id);
            }
            (Some(_), Some(_)) => rule_to_result[i] = image(i).and_then(|h| host_to_result[h]),
            _ => {}
        }
    }
    for e in &rule.edges {
        let (None, Some(r)) = (&e.left, &e.right) else {
            continue;
        };
        let (a, c) = (
            rule_to_result[e.a].expect("right edge endpoints exist on the right"),
            rule_to_result[e.b].expect("right edge endpoints exist on the right"),
        );
        if b.has_edge(a, c) {
            let ext = |i: usize| image(i).map(|h| host.external_id(h)).unwrap_or(-1);
            return Err(ApplyError::EdgeExists {
                a: ext(e.a),
                b: ext(e.b),
            });
        }
        b.add_edge(a, c, r.clone()).expect("checked above");
    }
    Ok(Applied {
        graph: b.build(),
        host_to_result,
        added,
    })
}

/// What a reporter receives for each rewrite.
#[derive(Debug, Clone)]
pub struct RewriteResult<'a> {
    pub graph: LabeledGraph,
    pub rule: &'a str,
    pub m: Match,
    pub host: &'a LabeledGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// Receives rewrite results in deterministic match order.
pub trait Reporter {
    fn report(&mut self, result: RewriteResult<'_>) -> Flow;
}

impl<F> Reporter for F
where
    F: FnMut(RewriteResult<'_>) -> Flow,
{
    fn report(&mut self, result: RewriteResult<'_>) -> Flow {
        self(result)
    }
}

/// Keeps every result graph.
#[derive(Debug, Default, Clone)]
pub struct Collector {
    pub graphs: Vec<LabeledGraph>,
    pub matches: Vec<Match>,
}

impl Reporter for Collector {
    fn report(&mut self, result: RewriteResult<'_>) -> Flow {
        self.graphs.push(result.graph);
        self.matches.push(result.m);
        Flow::Continue
    }
}

#[derive(Debug, Clone, Default)]
pub struct ApplyAllSummary {
    /// Results handed to the reporter.
    pub reported: usize,
    /// Matches found on the host.
    pub matches: usize,
    /// Matches whose application failed; these are skipped.
    pub failures: Vec<(Match, ApplyError)>,
}

/// Applies `rule` at every match in `host`. With `dedup`, only the first
/// result of each isomorphism class is reported.
pub fn apply_all(rule: &RuleGraph, host: &LabeledGraph, reporter: &mut dyn Reporter, dedup: bool) -> ApplyAllSummary {
    let pattern = rule.left_pattern();
    let matches = find_monomorphisms(&pattern, host, None);
    let mut summary = ApplyAllSummary {
        matches: matches.len(),
        ..Default::default()
    };
    let mut seen = HashSet::new();
    for m in matches {
        let graph = match apply(rule, host, &m) {
            Ok(g) => g,
            Err(e) => {
                summary.failures.push((m, e));
                continue;
            }
        };
        if dedup && !seen.insert(canonical_graph_key(&graph)) {
            continue;
        }
        summary.reported += 1;
        let flow = reporter.report(RewriteResult {
            graph,
            rule: &rule.id,
            m,
            host,
        });
        if flow == Flow::Stop {
            break;
        }
    }
    summary
}
