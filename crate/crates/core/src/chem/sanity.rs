use std::fmt;

use super::atom::{bond_order, AtomLabel};
use super::smiles::{bond_sums, Molecule};
use crate::graph::NodeId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownAtomLabel {
        node: NodeId,
        label: String,
    },
    UnknownBondLabel {
        a: NodeId,
        b: NodeId,
        label: String,
    },
    Valence {
        node: NodeId,
        label: String,
        order: String,
        allowed: Vec<u32>,
    },
    AromaticBond {
        a: NodeId,
        b: NodeId,
    },
    Kekulization {
        nodes: Vec<NodeId>,
    },
    NotFilled,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownAtomLabel { node, label } => write!(f, "node {node}: `{label}` is not an atom label"),
            Violation::UnknownBondLabel { a, b, label } => write!(f, "bond {a}-{b}: `{label}` is not a bond label"),
            Violation::Valence {
                node,
                label,
                order,
                allowed,
            } => write!(f, "node {node} ({label}): bond order {order}, allowed {allowed:?}"),
            Violation::AromaticBond { a, b } => write!(f, "bond {a}-{b}: aromatic bond between non-aromatic atoms"),
            Violation::Kekulization { nodes } => write!(f, "no Kekule structure for aromatic atoms {nodes:?}"),
            Violation::NotFilled => f.write_str("hydrogens have not been filled"),
        }
    }
}

/// Checks labels, valences and aromatic-bond placement of a filled
/// molecule. Elements without a valence model are only label-checked.
pub fn sanity_check(m: &Molecule) -> Vec<Violation> {
    let mut out = Vec::new();
    if !m.is_filled() {
        out.push(Violation::NotFilled);
    }
    let g = m.graph();
    let atoms: Vec<Option<AtomLabel>> = g.labels().iter().map(|l| l.parse().ok()).collect();
    for v in g.nodes() {
        if atoms[v].is_none() {
            out.push(Violation::UnknownAtomLabel {
                node: v,
                label: g.label(v).to_string(),
            });
        }
    }
    for e in g.edges() {
        match bond_order(&e.label) {
            None => out.push(Violation::UnknownBondLabel {
                a: e.a,
                b: e.b,
                label: e.label.to_string(),
            }),
            Some(None) => {
                let arom = |x: NodeId| atoms[x].as_ref().is_some_and(|a| a.aromatic);
                if !arom(e.a) || !arom(e.b) {
                    out.push(Violation::AromaticBond { a: e.a, b: e.b });
                }
            }
            Some(Some(_)) => {}
        }
    }
    for v in g.nodes() {
        let Some(a) = &atoms[v] else { continue };
        let allowed = a.valences();
        if allowed.is_empty() {
            continue;
        }
        let (plain, arom) = bond_sums(g, v);
        let base = plain + arom;
        let ok = if arom > 0 {
            // aromatic atoms carry either no or one delocalized pi bond
            allowed.iter().any(|&x| base == x || base + 1 == x)
        } else {
            allowed.contains(&base)
        };
        if !ok {
            let order = if arom > 0 {
                format!("{plain}+{arom} aromatic")
            } else {
                plain.to_string()
            };
            out.push(Violation::Valence {
                node: v,
                label: g.label(v).to_string(),
                order,
                allowed,
            });
        }
    }
    out
}
