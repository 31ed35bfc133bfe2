use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::gml::{self, field, parse_tree, quote, required, Entry, GmlError, Pos};
use crate::graph::{GraphBuilder, Label, LabeledGraph, NodeId};
use crate::sgm::{MatchConstraint, Op, Pattern, PatternError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuleError {
    #[error(transparent)]
    Gml(#[from] GmlError),
    #[error("rule has no ruleID")]
    MissingId,
    #[error("at {pos}: node {id} declared twice")]
    DuplicateNode { pos: Pos, id: i64 },
    #[error("at {pos}: edge {a}-{b} declared twice on the same side")]
    DuplicateEdge { pos: Pos, a: i64, b: i64 },
    #[error("at {pos}: node {id} is referenced but never declared")]
    UndeclaredNode { pos: Pos, id: i64 },
    #[error("at {pos}: edge {a}-{b} is declared on the {side} side but node {missing} is absent there")]
    DanglingEdge {
        pos: Pos,
        a: i64,
        b: i64,
        missing: i64,
        side: &'static str,
    },
    #[error("at {pos}: self-loop on node {id}")]
    SelfLoop { pos: Pos, id: i64 },
    #[error("at {pos}: constraint references node {id}, which is not on the left side")]
    ConstraintNode { pos: Pos, id: i64 },
    #[error("at {pos}: {msg}")]
    BadConstraint { pos: Pos, msg: String },
    #[error("at {pos}: unknown entry `{key}` in section `{section}`")]
    UnknownEntry { pos: Pos, key: String, section: String },
    #[error("invalid left-side pattern: {0}")]
    Pattern(#[from] PatternError),
}

/// One node of a combined rule graph. `None` is the absent label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleNode {
    pub id: i64,
    pub left: Option<Label>,
    pub right: Option<Label>,
}

/// One edge of a combined rule graph, between rule node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleEdge {
    pub a: usize,
    pub b: usize,
    pub left: Option<Label>,
    pub right: Option<Label>,
}

/// Left and right sides of a rule encoded in one graph.
///
/// Constraints are stored against rule node indices and always refer to
/// the left side.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleGraph {
    pub id: String,
    pub wildcard: Option<Label>,
    pub nodes: Vec<RuleNode>,
    pub edges: Vec<RuleEdge>,
    pub constraints: Vec<MatchConstraint>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Context,
    Left,
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Context => "context",
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

fn label_set(body: &[Entry], key: &str) -> Result<Vec<Label>, GmlError> {
    match field(body, key) {
        None => Ok(Vec::new()),
        Some(e) => e
            .as_list()?
            .iter()
            .filter(|x| x.key == "label")
            .map(|x| x.as_str().map(Label::new))
            .collect(),
    }
}

fn parse_op(body: &[Entry], pos: Pos) -> Result<Op, RuleError> {
    let text = required(body, "op", pos)?.as_str()?;
    Op::parse(text).ok_or_else(|| RuleError::BadConstraint {
        pos,
        msg: format!("unknown operator `{text}`"),
    })
}

fn parse_count(body: &[Entry], pos: Pos) -> Result<usize, RuleError> {
    let c = required(body, "count", pos)?.as_int()?;
    usize::try_from(c).map_err(|_| RuleError::BadConstraint {
        pos,
        msg: format!("negative count {c}"),
    })
}

/// A constraint parsed with external ids, resolved once all nodes are known.
type ConstraintBuilder = Box<dyn Fn(&[NodeId]) -> MatchConstraint>;

struct RawConstraint {
    pos: Pos,
    ids: Vec<i64>,
    build: ConstraintBuilder,
}

fn parse_constraint(e: &Entry) -> Result<Option<RawConstraint>, RuleError> {
    let pos = e.pos;
    let body = match e.key.as_str() {
        "constrainNode" | "constrainAdj" | "constrainNoEdge" | "constrainEdge" | "constrainDegree" => e.as_list()?,
        _ => return Ok(None),
    };
    let raw = match e.key.as_str() {
        "constrainNode" => {
            let id = required(body, "id", pos)?.as_int()?;
            let op = parse_op(body, pos)?;
            if !matches!(op, Op::Eq | Op::Ne) {
                return Err(RuleError::BadConstraint {
                    pos,
                    msg: "constrainNode only supports `=` and `!`".into(),
                });
            }
            let labels = label_set(body, "nodeLabels")?;
            RawConstraint {
                pos,
                ids: vec![id],
                build: Box::new(move |n| MatchConstraint::NodeLabel {
                    id: n[0],
                    op,
                    labels: labels.clone(),
                }),
            }
        }
        "constrainAdj" => {
            let id = required(body, "id", pos)?.as_int()?;
            let op = parse_op(body, pos)?;
            let count = parse_count(body, pos)?;
            let node_labels = label_set(body, "nodeLabels")?;
            let edge_labels = label_set(body, "edgeLabels")?;
            RawConstraint {
                pos,
                ids: vec![id],
                build: Box::new(move |n| MatchConstraint::Adjacency {
                    id: n[0],
                    op,
                    count,
                    node_labels: node_labels.clone(),
                    edge_labels: edge_labels.clone(),
                }),
            }
        }
        "constrainNoEdge" => {
            let s = required(body, "source", pos)?.as_int()?;
            let t = required(body, "target", pos)?.as_int()?;
            RawConstraint {
                pos,
                ids: vec![s, t],
                build: Box::new(|n| MatchConstraint::NoEdge {
                    source: n[0],
                    target: n[1],
                }),
            }
        }
        "constrainEdge" => {
            let s = required(body, "source", pos)?.as_int()?;
            let t = required(body, "target", pos)?.as_int()?;
            let op = parse_op(body, pos)?;
            let labels = label_set(body, "edgeLabels")?;
            RawConstraint {
                pos,
                ids: vec![s, t],
                build: Box::new(move |n| MatchConstraint::EdgeLabel {
                    source: n[0],
                    target: n[1],
                    op,
                    labels: labels.clone(),
                }),
            }
        }
        _ => {
            let id = required(body, "id", pos)?.as_int()?;
            let op = parse_op(body, pos)?;
            let count = parse_count(body, pos)?;
            RawConstraint {
                pos,
                ids: vec![id],
                build: Box::new(move |n| MatchConstraint::NodeDegree { id: n[0], op, count }),
            }
        }
    };
    Ok(Some(raw))
}

/// Parses `rule [ ruleID ... wildcard ... context [...] left [...] right [...] ]`.
pub fn parse_gml_rule(text: &str) -> Result<RuleGraph, RuleError> {
    let top = parse_tree(text)?;
    let origin = Pos { line: 1, col: 1 };
    let rule = required(&top, "rule", origin)?;
    rule_from_entries(rule.as_list()?)
}

fn rule_from_entries(body: &[Entry]) -> Result<RuleGraph, RuleError> {
    let id = match field(body, "ruleID") {
        Some(e) => e.as_str()?.to_string(),
        None => return Err(RuleError::MissingId),
    };
    let wildcard = field(body, "wildcard")
        .map(|e| e.as_str().map(Label::new))
        .transpose()?;

    let mut sections = Vec::new();
    for e in body {
        let side = match e.key.as_str() {
            "context" => Side::Context,
            "left" => Side::Left,
            "right" => Side::Right,
            _ => continue,
        };
        sections.push((side, e.as_list()?));
    }

    let mut nodes: Vec<RuleNode> = Vec::new();
    let mut index: HashMap<i64, usize> = HashMap::new();
    for (side, entries) in &sections {
        for e in entries.iter().filter(|e| e.key == "node") {
            let b = e.as_list()?;
            let nid = required(b, "id", e.pos)?.as_int()?;
            let label = Label::new(required(b, "label", e.pos)?.as_str()?);
            let i = *index.entry(nid).or_insert_with(|| {
                nodes.push(RuleNode {
                    id: nid,
                    left: None,
                    right: None,
                });
                nodes.len() - 1
            });
            let n = &mut nodes[i];
            let slots: &mut [&mut Option<Label>] = match side {
                Side::Context => &mut [&mut n.left, &mut n.right],
                Side::Left => &mut [&mut n.left],
                Side::Right => &mut [&mut n.right],
            };
            for slot in slots.iter_mut() {
                if slot.is_some() {
                    return Err(RuleError::DuplicateNode { pos: e.pos, id: nid });
                }
                **slot = Some(label.clone());
            }
        }
    }

    let mut edges: Vec<RuleEdge> = Vec::new();
    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    for (side, entries) in &sections {
        for e in entries.iter().filter(|e| e.key == "edge") {
            let b = e.as_list()?;
            let s = required(b, "source", e.pos)?.as_int()?;
            let t = required(b, "target", e.pos)?.as_int()?;
            let label = Label::new(required(b, "label", e.pos)?.as_str()?);
            let lookup = |x: i64| {
                index
                    .get(&x)
                    .copied()
                    .ok_or(RuleError::UndeclaredNode { pos: e.pos, id: x })
            };
            let (u, v) = (lookup(s)?, lookup(t)?);
            if u == v {
                return Err(RuleError::SelfLoop { pos: e.pos, id: s });
            }
            let key = (u.min(v), u.max(v));
            let check_side = |present: &dyn Fn(&RuleNode) -> bool, name| {
                for (x, ext) in [(u, s), (v, t)] {
                    if !present(&nodes[x]) {
                        return Err(RuleError::DanglingEdge {
                            pos: e.pos,
                            a: s,
                            b: t,
                            missing: ext,
                            side: name,
                        });
                    }
                }
                Ok(())
            };
            if matches!(side, Side::Context | Side::Left) {
                check_side(&|n: &RuleNode| n.left.is_some(), "left")?;
            }
            if matches!(side, Side::Context | Side::Right) {
                check_side(&|n: &RuleNode| n.right.is_some(), "right")?;
            }
            let i = *edge_index.entry(key).or_insert_with(|| {
                edges.push(RuleEdge {
                    a: key.0,
                    b: key.1,
                    left: None,
                    right: None,
                });
                edges.len() - 1
            });
            let edge = &mut edges[i];
            let slots: &mut [&mut Option<Label>] = match side {
                Side::Context => &mut [&mut edge.left, &mut edge.right],
                Side::Left => &mut [&mut edge.left],
                Side::Right => &mut [&mut edge.right],
            };
            for slot in slots.iter_mut() {
                if slot.is_some() {
                    return Err(RuleError::DuplicateEdge { pos: e.pos, a: s, b: t });
                }
                **slot = Some(label.clone());
            }
        }
    }

    let mut constraints = Vec::new();
    for (side, entries) in &sections {
        for e in entries.iter() {
            if matches!(e.key.as_str(), "node" | "edge") {
                continue;
            }
            let Some(raw) = parse_constraint(e)? else {
                return Err(RuleError::UnknownEntry {
                    pos: e.pos,
                    key: e.key.clone(),
                    section: side.name().to_string(),
                });
            };
            if *side == Side::Right {
                return Err(RuleError::BadConstraint {
                    pos: raw.pos,
                    msg: "constraints belong to the left side".into(),
                });
            }
            let mut ids = Vec::new();
            for x in &raw.ids {
                match index.get(x) {
                    Some(&i) if nodes[i].left.is_some() => ids.push(i),
                    Some(_) => return Err(RuleError::ConstraintNode { pos: raw.pos, id: *x }),
                    None => return Err(RuleError::UndeclaredNode { pos: raw.pos, id: *x }),
                }
            }
            constraints.push((raw.build)(&ids));
        }
    }

    let rule = RuleGraph {
        id,
        wildcard,
        nodes,
        edges,
        constraints,
    };
    // surface pattern-level problems (e.g. constrainEdge on a non-edge) now
    rule.try_left_pattern()?;
    Ok(rule)
}

impl RuleGraph {
    /// Rule node index -> left pattern node id.
    pub fn left_index(&self) -> Vec<Option<NodeId>> {
        let mut next = 0;
        self.nodes
            .iter()
            .map(|n| {
                n.left.as_ref().map(|_| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    }

    /// Rule node index -> right graph node id.
    pub fn right_index(&self) -> Vec<Option<NodeId>> {
        let mut next = 0;
        self.nodes
            .iter()
            .map(|n| {
                n.right.as_ref().map(|_| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    }

    fn side_graph(&self, left: bool) -> LabeledGraph {
        let pick = |l: &Option<Label>, r: &Option<Label>| if left { l.clone() } else { r.clone() };
        let mut b = GraphBuilder::new();
        let mut idx = vec![usize::MAX; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(l) = pick(&n.left, &n.right) {
                idx[i] = b.add_node_with_external(l, n.id);
            }
        }
        for e in &self.edges {
            if let Some(l) = pick(&e.left, &e.right) {
                b.add_edge(idx[e.a], idx[e.b], l)
                    .expect("rule edges connect present nodes");
            }
        }
        b.build()
    }

    fn try_left_pattern(&self) -> Result<Pattern, PatternError> {
        let map = self.left_index();
        let constraints = self
            .constraints
            .iter()
            .map(|c| c.remap(|i| map[i].expect("constraints reference left nodes")))
            .collect();
        Pattern::new(self.side_graph(true), self.wildcard.clone(), constraints)
    }

    /// Left side as a matching pattern, carrying wildcard and constraints.
    pub fn left_pattern(&self) -> Pattern {
        self.try_left_pattern().expect("validated when the rule was built")
    }

    pub fn right_graph(&self) -> LabeledGraph {
        self.side_graph(false)
    }

    /// Left and right sides exchanged, constraints dropped.
    pub fn reverse(&self) -> RuleGraph {
        RuleGraph {
            id: format!("{} (reverse)", self.id),
            wildcard: self.wildcard.clone(),
            nodes: self
                .nodes
                .iter()
                .map(|n| RuleNode {
                    id: n.id,
                    left: n.right.clone(),
                    right: n.left.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| RuleEdge {
                    a: e.a,
                    b: e.b,
                    left: e.right.clone(),
                    right: e.left.clone(),
                })
                .collect(),
            constraints: Vec::new(),
        }
    }

    /// Same rule with another id.
    pub fn with_id(mut self, id: impl Into<String>) -> RuleGraph {
        self.id = id.into();
        self
    }

    /// Adds a constraint given in rule node indices.
    pub fn push_constraint(&mut self, c: MatchConstraint) -> Result<(), RuleError> {
        for &i in &c.nodes() {
            if self.nodes.get(i).and_then(|n| n.left.as_ref()).is_none() {
                return Err(RuleError::ConstraintNode {
                    pos: Pos { line: 0, col: 0 },
                    id: *self.nodes.get(i).map(|n| &n.id).unwrap_or(&(i as i64)),
                });
            }
        }
        self.constraints.push(c);
        self.try_left_pattern()?;
        Ok(())
    }

    pub fn node_by_id(&self, id: i64) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }
}

/// Writes a rule in the same GML dialect the parser accepts.
pub fn write_gml_rule(r: &RuleGraph) -> String {
    let mut out = String::from("rule [\n");
    let _ = writeln!(out, "  ruleID {}", quote(&r.id));
    if let Some(w) = &r.wildcard {
        let _ = writeln!(out, "  wildcard {}", quote(w));
    }
    let ext = |i: usize| r.nodes[i].id;
    let mut context = String::new();
    let mut left = String::new();
    let mut right = String::new();
    for n in &r.nodes {
        match (&n.left, &n.right) {
            (Some(l), Some(rr)) if l == rr => {
                let _ = writeln!(context, "    node [ id {} label {} ]", n.id, quote(l));
            }
            (l, rr) => {
                if let Some(l) = l {
                    let _ = writeln!(left, "    node [ id {} label {} ]", n.id, quote(l));
                }
                if let Some(rr) = rr {
                    let _ = writeln!(right, "    node [ id {} label {} ]", n.id, quote(rr));
                }
            }
        }
    }
    for e in &r.edges {
        let (a, b) = (ext(e.a), ext(e.b));
        match (&e.left, &e.right) {
            (Some(l), Some(rr)) if l == rr => {
                let _ = writeln!(context, "    edge [ source {a} target {b} label {} ]", quote(l));
            }
            (l, rr) => {
                if let Some(l) = l {
                    let _ = writeln!(left, "    edge [ source {a} target {b} label {} ]", quote(l));
                }
                if let Some(rr) = rr {
                    let _ = writeln!(right, "    edge [ source {a} target {b} label {} ]", quote(rr));
                }
            }
        }
    }
    let labels = |ls: &[Label]| {
        ls.iter()
            .map(|l| format!("label {}", quote(l)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    for c in &r.constraints {
        let line = match c {
            MatchConstraint::NodeLabel { id, op, labels: ls } => format!(
                "constrainNode [ id {} op {} nodeLabels [ {} ] ]",
                ext(*id),
                op.symbol(),
                labels(ls)
            ),
            MatchConstraint::Adjacency {
                id,
                op,
                count,
                node_labels,
                edge_labels,
            } => {
                let mut s = format!("constrainAdj [ id {} op {} count {count}", ext(*id), op.symbol());
                if !node_labels.is_empty() {
                    let _ = write!(s, " nodeLabels [ {} ]", labels(node_labels));
                }
                if !edge_labels.is_empty() {
                    let _ = write!(s, " edgeLabels [ {} ]", labels(edge_labels));
                }
                s.push_str(" ]");
                s
            }
            MatchConstraint::NoEdge { source, target } => {
                format!("constrainNoEdge [ source {} target {} ]", ext(*source), ext(*target))
            }
            MatchConstraint::EdgeLabel {
                source,
                target,
                op,
                labels: ls,
            } => format!(
                "constrainEdge [ source {} target {} op {} edgeLabels [ {} ] ]",
                ext(*source),
                ext(*target),
                op.symbol(),
                labels(ls)
            ),
            MatchConstraint::NodeDegree { id, op, count } => {
                format!("constrainDegree [ id {} op {} count {count} ]", ext(*id), op.symbol())
            }
        };
        let _ = writeln!(left, "    {line}");
    }
    for (name, body) in [("context", context), ("left", left), ("right", right)] {
        if !body.is_empty() {
            let _ = writeln!(out, "  {name} [\n{body}  ]");
        }
    }
    out.push_str("]\n");
    out
}

/// Reads every `rule [...]` block in a text.
pub fn parse_gml_rules(text: &str) -> Result<Vec<RuleGraph>, RuleError> {
    let top = gml::parse_tree(text)?;
    top.iter()
        .filter(|e| e.key == "rule")
        .map(|e| rule_from_entries(e.as_list()?))
        .collect()
}
