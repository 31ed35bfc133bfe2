use crate::assets;
use crate::canon::canonical_graph_key;
use crate::graph::{GraphBuilder, LabeledGraph};
use crate::rewrite::{apply, parse_gml_rule, Explorer, RuleGraph, Strategy};
use crate::sgm::first_match;

pub fn wye_to_delta() -> RuleGraph {
    parse_gml_rule(assets::WYE_TO_DELTA).expect("bundled rule parses")
}

pub fn delta_to_wye() -> RuleGraph {
    parse_gml_rule(assets::DELTA_TO_WYE).expect("bundled rule parses")
}

/// The same graph with every node and edge labeled `*`, so that graphs
/// built by the rules compare equal to hand-written ones.
pub fn unlabeled(g: &LabeledGraph) -> LabeledGraph {
    let mut b = GraphBuilder::with_capacity(g.node_count());
    for v in g.nodes() {
        b.add_node_with_external("*", g.external_id(v));
    }
    for e in g.edges() {
        b.add_edge(e.a, e.b, "*").expect("simple");
    }
    b.build()
}

/// Whether `b` is reachable from `a` by at most `depth` wye/delta steps,
/// up to isomorphism.
pub fn equivalent(a: &LabeledGraph, b: &LabeledGraph, depth: usize) -> bool {
    equivalent_with(&[wye_to_delta(), delta_to_wye()], a, b, depth)
}

/// `equivalent` with caller-supplied rules.
pub fn equivalent_with(rules: &[RuleGraph], a: &LabeledGraph, b: &LabeledGraph, depth: usize) -> bool {
    let target = canonical_graph_key(&unlabeled(b));
    let explorer =
        Explorer::new(rules, Strategy::Bfs, depth, canonical_graph_key).goal(move |g| canonical_graph_key(g) == target);
    explorer.run(&[unlabeled(a)]).solution.is_some()
}

/// Applies `rule` at its first match.
pub fn step_once(rule: &RuleGraph, g: &LabeledGraph) -> Option<LabeledGraph> {
    let m = first_match(&rule.left_pattern(), g)?;
    apply(rule, g, &m).ok()
}

/// Wye to delta and back at the first matches.
pub fn roundtrip(g: &LabeledGraph) -> Option<LabeledGraph> {
    let d = step_once(&wye_to_delta(), &unlabeled(g))?;
    step_once(&delta_to_wye(), &d)
}
