use std::collections::BTreeMap;

use thiserror::Error;

use crate::gml::{parse_tree, quote, read_graph_entries, required, write_graph_body, GmlError};
use crate::graph::{connected_components, Label, LabeledGraph, NodeId};
use crate::rewrite::{RuleEdge, RuleGraph, RuleNode};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error(transparent)]
    Gml(#[from] GmlError),
    #[error("group `{name}`: proxy {proxy} is not a node of its graph")]
    MissingProxy { name: String, proxy: i64 },
    #[error("group `{0}` is declared twice")]
    Duplicate(String),
    #[error("group `{0}` is not connected")]
    Disconnected(String),
    #[error("unknown group `{0}`")]
    Unknown(String),
    #[error("rule node {0}: a group placeholder must be the same on both sides")]
    Mismatch(i64),
}

/// A named molecular fragment attached through its proxy atom.
#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    pub graph: LabeledGraph,
    pub proxy: NodeId,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GroupRegistry {
    groups: BTreeMap<String, Group>,
}

impl GroupRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, graph: LabeledGraph, proxy: NodeId) -> Result<(), GroupError> {
        let name = name.into();
        if proxy >= graph.node_count() {
            return Err(GroupError::MissingProxy {
                name,
                proxy: proxy as i64,
            });
        }
        if connected_components(&graph).len() != 1 {
            return Err(GroupError::Disconnected(name));
        }
        if self.groups.contains_key(&name) {
            return Err(GroupError::Duplicate(name));
        }
        self.groups.insert(name, Group { graph, proxy });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Group> {
        self.groups.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.groups.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Reads `group [ groupID "NAME" proxy ID graph [ ... ] ]` blocks.
    pub fn parse(text: &str) -> Result<GroupRegistry, GroupError> {
        let mut reg = GroupRegistry::new();
        for e in parse_tree(text)?.iter().filter(|e| e.key == "group") {
            let body = e.as_list()?;
            let name = required(body, "groupID", e.pos)?.as_str()?.to_string();
            let proxy = required(body, "proxy", e.pos)?.as_int()?;
            let graph_entry = required(body, "graph", e.pos)?;
            let graph = read_graph_entries(graph_entry.as_list()?, graph_entry.pos)?;
            let Some(p) = graph.node_by_external(proxy) else {
                return Err(GroupError::MissingProxy { name, proxy });
            };
            reg.insert(name, graph, p)?;
        }
        Ok(reg)
    }

    pub fn to_gml(&self) -> String {
        let mut out = String::new();
        for (name, g) in &self.groups {
            out.push_str("group [\n");
            out.push_str(&format!("  groupID {}\n", quote(name)));
            out.push_str(&format!("  proxy {}\n", g.proxy));
            out.push_str("  graph [\n");
            write_graph_body(&g.graph, &mut out, "    ");
            out.push_str("  ]\n]\n");
        }
        out
    }
}

/// Name inside a `[{NAME}]` (or `{NAME}`) placeholder label.
pub fn group_name(label: &str) -> Option<&str> {
    let inner = label
        .strip_prefix('[')
        .and_then(|l| l.strip_suffix(']'))
        .unwrap_or(label);
    inner.strip_prefix('{')?.strip_suffix('}')
}

/// Replaces group placeholder nodes of a rule by the group's atoms. The
/// placeholder becomes the proxy atom; the other atoms are added as context
/// with fresh ids.
pub fn expand_rule_groups(r: &RuleGraph, reg: &GroupRegistry) -> Result<RuleGraph, GroupError> {
    let mut out = r.clone();
    let mut next_id = r.nodes.iter().map(|n| n.id).max().unwrap_or(0) + 1;
    for i in 0..r.nodes.len() {
        let n = &r.nodes[i];
        let name = [&n.left, &n.right]
            .into_iter()
            .flatten()
            .find_map(|l| group_name(l.as_str()));
        let Some(name) = name else { continue };
        let (Some(l), Some(rl)) = (&n.left, &n.right) else {
            return Err(GroupError::Mismatch(n.id));
        };
        if l != rl {
            return Err(GroupError::Mismatch(n.id));
        }
        let group = reg.get(name).ok_or_else(|| GroupError::Unknown(name.to_string()))?;
        let proxy_label = group.graph.label(group.proxy).clone();
        out.nodes[i].left = Some(proxy_label.clone());
        out.nodes[i].right = Some(proxy_label);
        let mut idx = vec![i; group.graph.node_count()];
        for v in group.graph.nodes().filter(|&v| v != group.proxy) {
            idx[v] = out.nodes.len();
            let label: Label = group.graph.label(v).clone();
            out.nodes.push(RuleNode {
                id: next_id,
                left: Some(label.clone()),
                right: Some(label),
            });
            next_id += 1;
        }
        for e in group.graph.edges() {
            out.edges.push(RuleEdge {
                a: idx[e.a],
                b: idx[e.b],
                left: Some(e.label.clone()),
                right: Some(e.label.clone()),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::smiles::parse_smiles;
    use crate::rewrite::parse_gml_rule;

    fn registry() -> GroupRegistry {
        let mut reg = GroupRegistry::new();
        let g = parse_smiles("C(=O)N", None).unwrap().remove(0).into_graph();
        reg.insert("CONH2", g, 0).unwrap();
        reg
    }

    #[test]
    fn gml_roundtrip() {
        let reg = registry();
        let back = GroupRegistry::parse(&reg.to_gml()).unwrap();
        assert_eq!(back.len(), 1);
        let (a, b) = (reg.get("CONH2").unwrap(), back.get("CONH2").unwrap());
        assert_eq!(a.proxy, b.proxy);
        assert!(a.graph.structurally_equal(&b.graph));
    }

    #[test]
    fn registry_errors() {
        let mut reg = registry();
        let g = parse_smiles("CC", None).unwrap().remove(0).into_graph();
        assert_eq!(
            reg.insert("X", g.clone(), 5),
            Err(GroupError::MissingProxy {
                name: "X".into(),
                proxy: 5
            })
        );
        assert_eq!(reg.insert("CONH2", g, 0), Err(GroupError::Duplicate("CONH2".into())));
    }

    #[test]
    fn rule_placeholders_expand_to_context() {
        let r = parse_gml_rule(
            r#"rule [ ruleID "amide"
                context [ node [ id 1 label "[{CONH2}]" ] node [ id 2 label "C" ] ]
                left [ edge [ source 1 target 2 label "-" ] ]
                right [ edge [ source 1 target 2 label "=" ] ] ]"#,
        )
        .unwrap();
        let x = expand_rule_groups(&r, &registry()).unwrap();
        assert_eq!(x.nodes.len(), 4);
        assert_eq!(x.edges.len(), 3);
        assert_eq!(x.nodes[0].left.as_deref(), Some("C"));
        assert_eq!(x.nodes[2].id, 3);
        assert_eq!(x.left_pattern().graph().edge_count(), 3);

        let bad = parse_gml_rule(r#"rule [ ruleID "u" context [ node [ id 1 label "{NOPE}" ] ] ]"#).unwrap();
        assert_eq!(
            expand_rule_groups(&bad, &registry()),
            Err(GroupError::Unknown("NOPE".into()))
        );
    }
}
