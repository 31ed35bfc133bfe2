use std::fmt;

use super::atom::{bond_order, AtomLabel};
use crate::graph::Label;
use crate::rewrite::RuleGraph;
use crate::sgm::MatchConstraint;

/// Wildcard assumed for chemical rules that do not declare one.
pub const DEFAULT_WILDCARD: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleViolation {
    /// An atom exists on one side only.
    MassConservation {
        id: i64,
        label: String,
        side: &'static str,
    },
    ElementChange {
        id: i64,
        from: String,
        to: String,
    },
    NodeAlphabet {
        id: i64,
        label: String,
    },
    EdgeAlphabet {
        a: i64,
        b: i64,
        label: String,
    },
    Valence {
        id: i64,
        left: String,
        right: String,
    },
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleViolation::MassConservation { id, label, side } => {
                write!(f, "node {id} ({label}) exists only on the {side} side")
            }
            RuleViolation::ElementChange { id, from, to } => write!(f, "node {id} changes element: {from} -> {to}"),
            RuleViolation::NodeAlphabet { id, label } => write!(f, "node {id}: `{label}` is not an atom label"),
            RuleViolation::EdgeAlphabet { a, b, label } => write!(f, "edge {a}-{b}: `{label}` is not a bond label"),
            RuleViolation::Valence { id, left, right } => {
                write!(
                    f,
                    "node {id}: bond order change {left} -> {right} does not fit the valence model"
                )
            }
        }
    }
}

/// Bond-order contribution in half units; aromatic bonds count 1.5.
fn half_order(label: &str) -> Option<u32> {
    match bond_order(label)? {
        Some(o) => Some(2 * o),
        None => Some(3),
    }
}

/// Validates a rule against chemistry and returns it with the default
/// wildcard and a no-edge constraint for every bond the rule creates.
pub fn check_chem_rule(r: &RuleGraph) -> (Vec<RuleViolation>, RuleGraph) {
    let wildcard = r.wildcard.clone().unwrap_or_else(|| Label::new(DEFAULT_WILDCARD));
    let is_wild = |l: &Label| *l == wildcard;
    let mut out = Vec::new();

    for n in &r.nodes {
        for l in [&n.left, &n.right].into_iter().flatten() {
            if !is_wild(l) && l.parse::<AtomLabel>().is_err() {
                out.push(RuleViolation::NodeAlphabet {
                    id: n.id,
                    label: l.to_string(),
                });
            }
        }
        match (&n.left, &n.right) {
            (Some(l), None) => out.push(RuleViolation::MassConservation {
                id: n.id,
                label: l.to_string(),
                side: "left",
            }),
            (None, Some(rl)) => out.push(RuleViolation::MassConservation {
                id: n.id,
                label: rl.to_string(),
                side: "right",
            }),
            (Some(l), Some(rl)) if !is_wild(l) && !is_wild(rl) => {
                if let (Ok(a), Ok(b)) = (l.parse::<AtomLabel>(), rl.parse::<AtomLabel>()) {
                    if a.element != b.element {
                        out.push(RuleViolation::ElementChange {
                            id: n.id,
                            from: l.to_string(),
                            to: rl.to_string(),
                        });
                    }
                }
            }
            _ => {}
        }
    }
    for e in &r.edges {
        for l in [&e.left, &e.right].into_iter().flatten() {
            if !is_wild(l) && bond_order(l).is_none() {
                out.push(RuleViolation::EdgeAlphabet {
                    a: r.nodes[e.a].id,
                    b: r.nodes[e.b].id,
                    label: l.to_string(),
                });
            }
        }
    }

    // the change in bond order at each atom must match a change between
    // allowed valences of its two labels
    for (i, n) in r.nodes.iter().enumerate() {
        let (Some(l), Some(rl)) = (&n.left, &n.right) else {
            continue;
        };
        let (Ok(a), Ok(b)) = (l.parse::<AtomLabel>(), rl.parse::<AtomLabel>()) else {
            continue;
        };
        let (va, vb) = (a.valences(), b.valences());
        if va.is_empty() || vb.is_empty() {
            continue;
        }
        let mut sums = Some((0u32, 0u32));
        for e in r.edges.iter().filter(|e| e.a == i || e.b == i) {
            let side = |x: &Option<Label>| match x {
                None => Some(0),
                Some(x) if is_wild(x) => None,
                Some(x) => half_order(x),
            };
            sums = match (sums, side(&e.left), side(&e.right)) {
                (Some((sl, sr)), Some(x), Some(y)) => Some((sl + x, sr + y)),
                _ => None,
            };
        }
        let Some((sl, sr)) = sums else { continue };
        let delta = sr as i64 - sl as i64;
        let fits = va.iter().any(|&x| {
            vb.iter()
                .any(|&y| 2 * (y as i64 - x as i64) == delta && sr <= 2 * y + 1)
        });
        if !fits {
            out.push(RuleViolation::Valence {
                id: n.id,
                left: format!("{}", sl as f64 / 2.0),
                right: format!("{}", sr as f64 / 2.0),
            });
        }
    }

    let mut checked = r.clone();
    checked.wildcard = Some(wildcard);
    for e in &r.edges {
        if e.left.is_some() || e.right.is_none() {
            continue;
        }
        if r.nodes[e.a].left.is_none() || r.nodes[e.b].left.is_none() {
            continue;
        }
        let exists = checked.constraints.iter().any(|c| {
            matches!(c, MatchConstraint::NoEdge { source, target }
                if (*source, *target) == (e.a, e.b) || (*source, *target) == (e.b, e.a))
        });
        if !exists {
            checked
                .push_constraint(MatchConstraint::NoEdge {
                    source: e.a,
                    target: e.b,
                })
                .expect("both endpoints are on the left");
        }
    }
    (out, checked)
}
