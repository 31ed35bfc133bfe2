use std::collections::HashMap;
use std::fmt::Write as _;

use super::atom::AtomLabel;
use super::smiles::{bond_sums, fill_hydrogens, implied_hydrogens, Molecule};
use crate::canon::{canonical_min, rank_keys, ColoredGraph};
use crate::graph::{connected_components, Label, LabeledGraph, NodeId};

/// Heavy-atom skeleton with terminal hydrogens folded into counts.
struct Folded {
    graph: LabeledGraph,
    hydrogens: Vec<u32>,
}

fn fold(g: &LabeledGraph) -> Folded {
    let foldable = |v: NodeId| {
        g.label(v) == "H" && g.degree(v) == 1 && {
            let (w, e) = g.neighbors(v)[0];
            g.label(w) != "H" && g.edge(e).label == "-"
        }
    };
    let keep: Vec<NodeId> = g.nodes().filter(|&v| !foldable(v)).collect();
    let mut index = vec![usize::MAX; g.node_count()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut hydrogens = vec![0; keep.len()];
    for v in g.nodes().filter(|&v| foldable(v)) {
        hydrogens[index[g.neighbors(v)[0].0]] += 1;
    }
    Folded {
        graph: g.induced_subgraph(&keep),
        hydrogens,
    }
}

fn bond_symbol(label: &str, both_aromatic: bool) -> &str {
    match (label, both_aromatic) {
        ("-", false) | (":", true) => "",
        (l, _) => l,
    }
}

fn atom_text(f: &Folded, v: NodeId, out: &mut String) {
    let label = f.graph.label(v);
    let h = f.hydrogens[v];
    let Ok(atom) = label.parse::<AtomLabel>() else {
        let _ = write!(out, "[{label}]");
        return;
    };
    let (plain, arom) = bond_sums(&f.graph, v);
    if atom.is_organic() && implied_hydrogens(&atom, plain, arom) == h {
        out.push_str(&atom.symbol());
        return;
    }
    out.push('[');
    out.push_str(&atom.symbol());
    match h {
        0 => {}
        1 => out.push('H'),
        n => {
            let _ = write!(out, "H{n}");
        }
    }
    let label = atom.to_string();
    out.push_str(&label[atom.symbol().len()..]);
    out.push(']');
}

fn is_aromatic(l: &Label) -> bool {
    l.as_str().starts_with(|c: char| c.is_ascii_lowercase())
}

/// Writes the SMILES string determined by a node ranking.
fn write_ranked(f: &Folded, ranks: &[u32]) -> String {
    let g = &f.graph;
    let n = g.node_count();
    let order: Vec<Vec<NodeId>> = g
        .nodes()
        .map(|v| {
            let mut nb: Vec<NodeId> = g.neighbors(v).iter().map(|&(w, _)| w).collect();
            nb.sort_by_key(|&w| ranks[w]);
            nb
        })
        .collect();

    // pass 1: spanning forest; back edges become ring closures
    let mut seen = vec![false; n];
    let mut dfs_pos = vec![0usize; n];
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut opens: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut closes: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    let mut comps = connected_components(g);
    comps.sort_by_key(|c| c.iter().map(|&v| ranks[v]).min());
    let mut counter = 0;
    for comp in &comps {
        let root = *comp.iter().min_by_key(|&&v| ranks[v]).expect("non-empty");
        roots.push(root);
        let mut stack = vec![(root, usize::MAX, 0usize)];
        seen[root] = true;
        dfs_pos[root] = counter;
        counter += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 == order[v].len() {
                stack.pop();
                continue;
            }
            let w = order[v][top.2];
            top.2 += 1;
            if w == parent {
                continue;
            }
            if !seen[w] {
                seen[w] = true;
                dfs_pos[w] = counter;
                counter += 1;
                children[v].push(w);
                stack.push((w, v, 0));
            } else if dfs_pos[w] < dfs_pos[v] && !opens[w].contains(&v) {
                opens[w].push(v);
                closes[v].push(w);
            }
        }
    }
    // pass 2: emit
    let mut out = String::new();
    let mut digit_of: HashMap<(NodeId, NodeId), u32> = HashMap::new();
    let mut in_use: Vec<bool> = Vec::new();
    for (ci, &root) in roots.iter().enumerate() {
        if ci > 0 {
            out.push('.');
        }
        let mut stack: Vec<Walk> = vec![Walk::Atom(root, None)];
        while let Some(step) = stack.pop() {
            match step {
                Walk::Close => out.push(')'),
                Walk::Atom(v, from) => {
                    if let Some(u) = from {
                        let e = g.find_edge(u, v).expect("tree edge");
                        let both = is_aromatic(g.label(u)) && is_aromatic(g.label(v));
                        out.push_str(bond_symbol(&g.edge(e).label, both));
                    }
                    atom_text(f, v, &mut out);
                    for &w in &closes[v] {
                        let d = digit_of.remove(&(w, v)).expect("opened earlier");
                        in_use[d as usize] = false;
                        push_digit(&mut out, d);
                    }
                    let mut ring_partners = opens[v].clone();
                    ring_partners.sort_by_key(|&w| dfs_pos[w]);
                    for w in ring_partners {
                        let d = (1..)
                            .find(|&d| !in_use.get(d).copied().unwrap_or(false))
                            .expect("unbounded");
                        if in_use.len() <= d {
                            in_use.resize(d + 1, false);
                        }
                        in_use[d] = true;
                        digit_of.insert((v, w), d as u32);
                        let e = g.find_edge(v, w).expect("ring edge");
                        let both = is_aromatic(g.label(v)) && is_aromatic(g.label(w));
                        out.push_str(bond_symbol(&g.edge(e).label, both));
                        push_digit(&mut out, d as u32);
                    }
                    let kids = &children[v];
                    for (k, &c) in kids.iter().enumerate().rev() {
                        if k + 1 == kids.len() {
                            stack.push(Walk::Atom(c, Some(v)));
                        } else {
                            stack.push(Walk::Close);
                            stack.push(Walk::Atom(c, Some(v)));
                            stack.push(Walk::Open);
                        }
                    }
                }
                Walk::Open => out.push('('),
            }
        }
    }
    out
}

enum Walk {
    Atom(NodeId, Option<NodeId>),
    Open,
    Close,
}

fn push_digit(out: &mut String, d: u32) {
    if d < 10 {
        let _ = write!(out, "{d}");
    } else {
        let _ = write!(out, "%{d:02}");
    }
}

/// Canonical SMILES of a molecule graph with explicit hydrogens.
pub fn canonical_smiles_graph(g: &LabeledGraph) -> String {
    if g.is_empty() {
        return String::new();
    }
    let f = fold(g);
    if f.graph.is_empty() {
        return String::new();
    }
    let keys: Vec<(Label, u32)> = f
        .graph
        .nodes()
        .map(|v| (f.graph.label(v).clone(), f.hydrogens[v]))
        .collect();
    let edge_labels: Vec<Label> = f.graph.edges().iter().map(|e| e.label.clone()).collect();
    let edge_colors = rank_keys(&edge_labels);
    let view = ColoredGraph {
        colors: rank_keys(&keys),
        adjacency: f
            .graph
            .nodes()
            .map(|v| f.graph.neighbors(v).iter().map(|&(w, e)| (w, edge_colors[e])).collect())
            .collect(),
    };
    canonical_min(&view, |ranks| write_ranked(&f, ranks)).0
}

/// Canonical SMILES; hydrogens are filled first if needed.
pub fn canonical_smiles(m: &Molecule) -> String {
    if m.is_filled() {
        canonical_smiles_graph(m.graph())
    } else {
        canonical_smiles_graph(fill_hydrogens(m).graph())
    }
}
