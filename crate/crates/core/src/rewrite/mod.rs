//! Double-pushout rewriting on combined rule graphs.

mod apply;
mod explore;
mod rule;

pub use apply::{
    apply, apply_all, apply_traced, Applied, ApplyAllSummary, ApplyError, Collector, Flow, Reporter, RewriteResult,
};
pub use explore::{explore, Exploration, Explorer, Strategy, Successor};
pub use rule::{parse_gml_rule, parse_gml_rules, write_gml_rule, RuleEdge, RuleError, RuleGraph, RuleNode};
