use super::atom::{bond_order, AtomLabel, AROMATIC_ELEMENTS};
use super::rings::perceive_rings;
use super::sanity::Violation;
use super::smiles::{bond_sums, fill_hydrogens, Molecule};
use crate::graph::{GraphBuilder, Label, LabeledGraph, NodeId};

const MAX_AROMATIC_RING: usize = 7;

fn rebuild(g: &LabeledGraph, labels: &[Label], bonds: &[Label]) -> LabeledGraph {
    let mut b = GraphBuilder::with_capacity(g.node_count());
    for v in g.nodes() {
        b.add_node_with_external(labels[v].clone(), g.external_id(v));
    }
    for (e, edge) in g.edges().iter().enumerate() {
        b.add_edge(edge.a, edge.b, bonds[e].clone()).expect("simple");
    }
    b.build()
}

fn uppercase(label: &Label) -> Label {
    match label.parse::<AtomLabel>() {
        Ok(mut a) if a.aromatic => {
            a.aromatic = false;
            Label::new(a.to_string())
        }
        _ => label.clone(),
    }
}

/// Replaces aromatic bonds by an alternating single/double assignment and
/// writes aromatic atoms in uppercase.
pub fn kekulize(m: &Molecule) -> Result<Molecule, Violation> {
    let m = fill_hydrogens(m);
    let g = m.graph();
    let aromatic_edges: Vec<usize> = (0..g.edge_count()).filter(|&e| g.edge(e).label == ":").collect();
    let any_lower = g
        .labels()
        .iter()
        .any(|l| l.parse::<AtomLabel>().is_ok_and(|a| a.aromatic));
    if aromatic_edges.is_empty() && !any_lower {
        return Ok(m);
    }
    // an aromatic atom needs a pi bond when one more unit of bond order
    // would complete its valence
    let needs: Vec<bool> = g
        .nodes()
        .map(|v| {
            let Ok(a) = g.label(v).parse::<AtomLabel>() else {
                return false;
            };
            let (plain, arom) = bond_sums(g, v);
            if arom == 0 {
                return false;
            }
            let base = plain + arom;
            let vs = a.valences();
            !vs.contains(&base) && vs.contains(&(base + 1))
        })
        .collect();
    let mut partner: Vec<Option<NodeId>> = vec![None; g.node_count()];
    let pending: Vec<NodeId> = g.nodes().filter(|&v| needs[v]).collect();
    if !match_pi(g, &needs, &mut partner, &pending) {
        return Err(Violation::Kekulization { nodes: pending });
    }
    let labels: Vec<Label> = g.labels().iter().map(uppercase).collect();
    let bonds: Vec<Label> = g
        .edges()
        .iter()
        .map(|e| {
            if e.label != ":" {
                e.label.clone()
            } else if partner[e.a] == Some(e.b) {
                Label::new("=")
            } else {
                Label::new("-")
            }
        })
        .collect();
    Ok(Molecule::from_graph(rebuild(g, &labels, &bonds)))
}

/// Backtracking perfect matching over aromatic bonds, most constrained
/// atom first.
fn match_pi(g: &LabeledGraph, needs: &[bool], partner: &mut [Option<NodeId>], pending: &[NodeId]) -> bool {
    let options = |v: NodeId, partner: &[Option<NodeId>]| -> Vec<NodeId> {
        g.neighbors(v)
            .iter()
            .filter(|&&(w, e)| g.edge(e).label == ":" && needs[w] && partner[w].is_none())
            .map(|&(w, _)| w)
            .collect()
    };
    let Some(&v) = pending
        .iter()
        .filter(|&&v| partner[v].is_none())
        .min_by_key(|&&v| (options(v, partner).len(), v))
    else {
        return true;
    };
    for w in options(v, partner) {
        partner[v] = Some(w);
        partner[w] = Some(v);
        if match_pi(g, needs, partner, pending) {
            return true;
        }
        partner[v] = None;
        partner[w] = None;
    }
    false
}

/// Pi electrons an atom contributes to `ring`, `None` if it cannot take
/// part in an aromatic system.
fn pi_electrons(g: &LabeledGraph, v: NodeId, ring: &[NodeId], in_any_ring: &[bool]) -> Option<u32> {
    let a: AtomLabel = g.label(v).parse().ok()?;
    if !AROMATIC_ELEMENTS.contains(&a.element.as_str()) {
        return None;
    }
    let n = ring.len();
    let pos = ring.iter().position(|&x| x == v)?;
    let ring_nb = [ring[(pos + 1) % n], ring[(pos + n - 1) % n]];
    let mut endo = false;
    let mut exo_hetero = false;
    let mut exo_fused = false;
    for &(w, e) in g.neighbors(v) {
        match bond_order(&g.edge(e).label)? {
            Some(1) => {}
            Some(2) if ring_nb.contains(&w) => endo = true,
            Some(2) if in_any_ring[w] => exo_fused = true,
            Some(2) if g.label(w).as_str() != "C" => exo_hetero = true,
            _ => return None,
        }
    }
    if endo || exo_fused {
        return Some(1);
    }
    if exo_hetero {
        return (a.element == "C").then_some(0);
    }
    match (a.element.as_str(), a.charge, g.degree(v)) {
        ("N" | "P", 0, 3) | ("O" | "S", 0, 2) | ("N", -1, 2) | ("C", -1, 3) => Some(2),
        ("C", 1, 3) | ("B", 0, 3) => Some(0),
        _ => None,
    }
}

/// Kekulizes, then marks every ring of at most seven atoms that satisfies
/// the 4n+2 rule as aromatic (lowercase atoms, `:` ring bonds).
pub fn perceive_aromaticity(m: &Molecule) -> Result<Molecule, Violation> {
    let k = kekulize(m)?;
    let g = k.graph();
    let rings = perceive_rings(g, Some(MAX_AROMATIC_RING));
    if rings.is_empty() {
        return Ok(k);
    }
    let mut in_any_ring = vec![false; g.node_count()];
    for r in &rings {
        for &v in r {
            in_any_ring[v] = true;
        }
    }
    let mut atom_arom = vec![false; g.node_count()];
    let mut bond_arom = vec![false; g.edge_count()];
    for ring in &rings {
        let total: Option<u32> = ring.iter().map(|&v| pi_electrons(g, v, ring, &in_any_ring)).sum();
        if total.is_some_and(|t| t % 4 == 2) {
            for (i, &v) in ring.iter().enumerate() {
                atom_arom[v] = true;
                let w = ring[(i + 1) % ring.len()];
                bond_arom[g.find_edge(v, w).expect("ring edge")] = true;
            }
        }
    }
    let labels: Vec<Label> = g
        .nodes()
        .map(|v| {
            let l = g.label(v);
            match l.parse::<AtomLabel>() {
                Ok(mut a) if atom_arom[v] => {
                    a.aromatic = true;
                    Label::new(a.to_string())
                }
                _ => l.clone(),
            }
        })
        .collect();
    let bonds: Vec<Label> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            if bond_arom[e] {
                Label::new(":")
            } else {
                edge.label.clone()
            }
        })
        .collect();
    Ok(Molecule::from_graph(rebuild(g, &labels, &bonds)))
}
