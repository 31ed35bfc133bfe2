use std::collections::HashMap;

use thiserror::Error;

use super::atom::{bond_order, is_element, AtomLabel, AROMATIC_ELEMENTS};
use super::groups::GroupRegistry;
use crate::graph::{connected_components, GraphBuilder, LabeledGraph, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmilesError {
    #[error("at {pos}: unexpected character `{ch}`")]
    Unexpected { pos: usize, ch: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("at {pos}: unknown element `{symbol}`")]
    UnknownElement { pos: usize, symbol: String },
    #[error("at {pos}: isotopes are not supported")]
    Isotope { pos: usize },
    #[error("at {pos}: unknown group `{name}`")]
    UnknownGroup { pos: usize, name: String },
    #[error("group `{name}` used but no group registry was given")]
    NoRegistry { name: String },
    #[error("ring closure {digit} opened at {pos} is never closed")]
    UnclosedRing { pos: usize, digit: u32 },
    #[error("at {pos}: ring closure {digit} has conflicting bond symbols")]
    RingBondConflict { pos: usize, digit: u32 },
    #[error("at {pos}: bond without a preceding atom")]
    DanglingBond { pos: usize },
    #[error("at {pos}: unbalanced parenthesis")]
    Unbalanced { pos: usize },
    #[error("at {pos}: atom bonded to itself")]
    SelfBond { pos: usize },
    #[error("at {pos}: atoms bonded twice")]
    DuplicateBond { pos: usize },
    #[error("empty SMILES")]
    Empty,
}

/// A molecule graph. Before hydrogen fill, `hydrogens` records the bracket
/// H count of each atom; `None` means it is inferred from valence.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    graph: LabeledGraph,
    hydrogens: Vec<Option<u32>>,
    filled: bool,
}

impl Molecule {
    /// Wraps a graph whose hydrogens are already explicit.
    pub fn from_graph(graph: LabeledGraph) -> Molecule {
        Molecule {
            hydrogens: vec![Some(0); graph.node_count()],
            graph,
            filled: true,
        }
    }

    pub(crate) fn unfilled(graph: LabeledGraph, hydrogens: Vec<Option<u32>>) -> Molecule {
        Molecule {
            graph,
            hydrogens,
            filled: false,
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    pub fn is_filled(&self) -> bool {
        self.filled
    }

    /// Bracket H count of an atom before filling.
    pub fn bracket_hydrogens(&self, v: NodeId) -> Option<u32> {
        self.hydrogens[v]
    }

    pub fn atom_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn heavy_atom_count(&self) -> usize {
        self.graph.labels().iter().filter(|l| l.as_str() != "H").count()
    }
}

/// Sum of non-aromatic bond orders and number of aromatic bonds at `v`.
pub(crate) fn bond_sums(g: &LabeledGraph, v: NodeId) -> (u32, u32) {
    let (mut plain, mut arom) = (0, 0);
    for &(_, e) in g.neighbors(v) {
        match bond_order(&g.edge(e).label) {
            Some(Some(o)) => plain += o,
            Some(None) => arom += 1,
            None => {}
        }
    }
    (plain, arom)
}

/// Hydrogens an atom gets when its count is inferred from valence.
pub(crate) fn implied_hydrogens(atom: &AtomLabel, plain: u32, aromatic: u32) -> u32 {
    let base = plain + aromatic;
    let Some(v) = atom.valences().into_iter().find(|&v| v >= base) else {
        return 0;
    };
    if aromatic > 0 {
        v.saturating_sub(base + 1)
    } else {
        v - base
    }
}

/// Adds explicit hydrogen atoms. Filling a filled molecule is a no-op.
pub fn fill_hydrogens(m: &Molecule) -> Molecule {
    if m.filled {
        return m.clone();
    }
    let g = &m.graph;
    let mut b = GraphBuilder::with_capacity(g.node_count());
    for v in g.nodes() {
        b.add_node_with_external(g.label(v).clone(), g.external_id(v));
    }
    for e in g.edges() {
        b.add_edge(e.a, e.b, e.label.clone()).expect("simple");
    }
    let mut next_ext = g.nodes().map(|v| g.external_id(v)).max().map_or(0, |x| x + 1);
    for v in g.nodes() {
        let count = match m.hydrogens[v] {
            Some(h) => h,
            None => match g.label(v).parse::<AtomLabel>() {
                Ok(a) => {
                    let (plain, arom) = bond_sums(g, v);
                    implied_hydrogens(&a, plain, arom)
                }
                Err(_) => 0,
            },
        };
        for _ in 0..count {
            let h = b.add_node_with_external("H", next_ext);
            next_ext += 1;
            b.add_edge(v, h, "-").expect("fresh node");
        }
    }
    Molecule::from_graph(b.build())
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    groups: Option<&'a GroupRegistry>,
    labels: Vec<String>,
    hydrogens: Vec<Option<u32>>,
    aromatic: Vec<bool>,
    bonds: Vec<(NodeId, NodeId, Option<char>, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Result<u8, SmilesError> {
        let c = self.peek().ok_or(SmilesError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(c)
    }

    fn unexpected(&self) -> SmilesError {
        match self.peek() {
            Some(c) => SmilesError::Unexpected {
                pos: self.pos,
                ch: c as char,
            },
            None => SmilesError::UnexpectedEnd,
        }
    }

    fn add_atom(&mut self, label: AtomLabel, hydrogens: Option<u32>) -> NodeId {
        self.labels.push(label.to_string());
        self.hydrogens.push(hydrogens);
        self.aromatic.push(label.aromatic);
        self.labels.len() - 1
    }

    fn number(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn organic(&mut self) -> Result<NodeId, SmilesError> {
        let start = self.pos;
        let c = self.bump()?;
        let two = |p: &Self, next: u8| p.peek() == Some(next);
        let (el, aromatic) = match c {
            b'C' if two(self, b'l') => {
                self.pos += 1;
                ("Cl", false)
            }
            b'B' if two(self, b'r') => {
                self.pos += 1;
                ("Br", false)
            }
            b'B' => ("B", false),
            b'C' => ("C", false),
            b'N' => ("N", false),
            b'O' => ("O", false),
            b'P' => ("P", false),
            b'S' => ("S", false),
            b'F' => ("F", false),
            b'I' => ("I", false),
            b'b' => ("B", true),
            b'c' => ("C", true),
            b'n' => ("N", true),
            b'o' => ("O", true),
            b'p' => ("P", true),
            b's' => ("S", true),
            _ => {
                self.pos = start;
                return Err(self.unexpected());
            }
        };
        let mut a = AtomLabel::new(el);
        a.aromatic = aromatic;
        Ok(self.add_atom(a, None))
    }

    fn bracket(&mut self) -> Result<NodeId, SmilesError> {
        let open = self.pos;
        self.pos += 1;
        if self.peek() == Some(b'{') {
            return self.group(open);
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(SmilesError::Isotope { pos: self.pos });
        }
        let sym_start = self.pos;
        let first = self.bump()?;
        let mut atom = if first.is_ascii_uppercase() {
            let two = self
                .peek()
                .filter(|c| c.is_ascii_lowercase())
                .map(|c| format!("{}{}", first as char, c as char));
            match two {
                Some(t) if is_element(&t) => {
                    self.pos += 1;
                    AtomLabel::new(&t)
                }
                _ => {
                    let one = (first as char).to_string();
                    if !is_element(&one) {
                        return Err(SmilesError::UnknownElement {
                            pos: sym_start,
                            symbol: one,
                        });
                    }
                    AtomLabel::new(&one)
                }
            }
        } else if first.is_ascii_lowercase() {
            let el = (first as char).to_ascii_uppercase().to_string();
            if !AROMATIC_ELEMENTS.contains(&el.as_str()) {
                return Err(SmilesError::UnknownElement {
                    pos: sym_start,
                    symbol: (first as char).to_string(),
                });
            }
            let mut a = AtomLabel::new(&el);
            a.aromatic = true;
            a
        } else {
            self.pos = sym_start;
            return Err(self.unexpected());
        };
        while self.peek() == Some(b'@') {
            self.pos += 1;
        }
        let mut h = 0;
        if self.peek() == Some(b'H') {
            self.pos += 1;
            h = self.number().unwrap_or(1);
        }
        while let Some(sign @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let unit = if sign == b'+' { 1 } else { -1 };
            match self.number() {
                Some(n) => atom.charge += unit * n as i32,
                None => atom.charge += unit,
            }
        }
        if self.peek() == Some(b':') {
            self.pos += 1;
            atom.class = Some(self.number().ok_or_else(|| self.unexpected())?);
        }
        if self.bump()? != b']' {
            self.pos -= 1;
            return Err(self.unexpected());
        }
        Ok(self.add_atom(atom, Some(h)))
    }

    fn group(&mut self, open: usize) -> Result<NodeId, SmilesError> {
        self.pos += 1;
        let start = self.pos;
        while self.peek().is_some_and(|c| c != b'}') {
            self.pos += 1;
        }
        let name = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
        self.bump()?;
        if self.bump()? != b']' {
            self.pos -= 1;
            return Err(self.unexpected());
        }
        let registry = self
            .groups
            .ok_or_else(|| SmilesError::NoRegistry { name: name.clone() })?;
        let group = registry
            .get(&name)
            .ok_or(SmilesError::UnknownGroup { pos: open, name })?;
        let offset = self.labels.len();
        for v in group.graph.nodes() {
            let label = group.graph.label(v);
            self.labels.push(label.to_string());
            self.hydrogens.push(None);
            self.aromatic.push(label.parse::<AtomLabel>().is_ok_and(|a| a.aromatic));
        }
        for e in group.graph.edges() {
            let bond = e.label.chars().next();
            self.bonds.push((offset + e.a, offset + e.b, bond, open));
        }
        Ok(offset + group.proxy)
    }

    fn parse(mut self) -> Result<Vec<Molecule>, SmilesError> {
        let mut prev: Option<NodeId> = None;
        let mut stack: Vec<Option<NodeId>> = Vec::new();
        let mut pending: Option<(char, usize)> = None;
        let mut rings: HashMap<u32, (NodeId, Option<char>, usize)> = HashMap::new();
        while let Some(c) = self.peek() {
            let here = self.pos;
            match c {
                b'(' => {
                    if prev.is_none() {
                        return Err(self.unexpected());
                    }
                    self.pos += 1;
                    stack.push(prev);
                }
                b')' => {
                    self.pos += 1;
                    if pending.is_some() {
                        return Err(SmilesError::DanglingBond { pos: here });
                    }
                    prev = stack.pop().ok_or(SmilesError::Unbalanced { pos: here })?;
                }
                b'.' => {
                    self.pos += 1;
                    if pending.is_some() || !stack.is_empty() {
                        return Err(SmilesError::Unexpected { pos: here, ch: '.' });
                    }
                    prev = None;
                }
                b'-' | b'=' | b'#' | b':' | b'/' | b'\\' => {
                    self.pos += 1;
                    if prev.is_none() || pending.is_some() {
                        return Err(SmilesError::DanglingBond { pos: here });
                    }
                    let sym = match c {
                        b'/' | b'\\' => '-',
                        _ => c as char,
                    };
                    pending = Some((sym, here));
                }
                b'0'..=b'9' | b'%' => {
                    let Some(atom) = prev else {
                        return Err(self.unexpected());
                    };
                    self.pos += 1;
                    let digit = if c == b'%' {
                        let d1 = self.bump()?;
                        let d2 = self.bump()?;
                        if !d1.is_ascii_digit() || !d2.is_ascii_digit() {
                            self.pos -= 1;
                            return Err(self.unexpected());
                        }
                        ((d1 - b'0') * 10 + (d2 - b'0')) as u32
                    } else {
                        (c - b'0') as u32
                    };
                    let bond = pending.take().map(|(s, _)| s);
                    match rings.remove(&digit) {
                        None => {
                            rings.insert(digit, (atom, bond, here));
                        }
                        Some((other, b0, _)) => {
                            let sym = match (b0, bond) {
                                (Some(x), Some(y)) if x != y => {
                                    return Err(SmilesError::RingBondConflict { pos: here, digit });
                                }
                                (x, y) => x.or(y),
                            };
                            self.bonds.push((other, atom, sym, here));
                        }
                    }
                }
                b'[' | b'A'..=b'Z' | b'a'..=b'z' => {
                    let atom = if c == b'[' { self.bracket()? } else { self.organic()? };
                    if let Some(p) = prev {
                        self.bonds.push((p, atom, pending.take().map(|(s, _)| s), here));
                    } else if let Some((_, at)) = pending {
                        return Err(SmilesError::DanglingBond { pos: at });
                    }
                    prev = Some(atom);
                }
                _ => return Err(self.unexpected()),
            }
        }
        if let Some((_, at)) = pending {
            return Err(SmilesError::DanglingBond { pos: at });
        }
        if !stack.is_empty() {
            return Err(SmilesError::Unbalanced { pos: self.pos });
        }
        if let Some((&digit, &(_, _, pos))) = rings.iter().min_by_key(|(_, v)| v.2) {
            return Err(SmilesError::UnclosedRing { pos, digit });
        }
        if self.labels.is_empty() {
            return Err(SmilesError::Empty);
        }
        self.build()
    }

    fn build(self) -> Result<Vec<Molecule>, SmilesError> {
        let mut b = GraphBuilder::with_capacity(self.labels.len());
        for l in &self.labels {
            b.add_node(l.as_str());
        }
        for &(x, y, sym, pos) in &self.bonds {
            let label = match sym {
                Some(s) => s.to_string(),
                None if self.aromatic[x] && self.aromatic[y] => ":".to_string(),
                None => "-".to_string(),
            };
            if x == y {
                return Err(SmilesError::SelfBond { pos });
            }
            if b.has_edge(x, y) {
                return Err(SmilesError::DuplicateBond { pos });
            }
            b.add_edge(x, y, label).expect("checked");
        }
        let g = b.build();
        Ok(connected_components(&g)
            .into_iter()
            .map(|comp| {
                let h = comp.iter().map(|&v| self.hydrogens[v]).collect();
                Molecule::unfilled(g.induced_subgraph(&comp), h)
            })
            .collect())
    }
}

/// Parses SMILES into its connected molecules, hydrogens not yet filled.
pub fn parse_smiles(text: &str, groups: Option<&GroupRegistry>) -> Result<Vec<Molecule>, SmilesError> {
    Parser {
        s: text.trim().as_bytes(),
        pos: 0,
        groups,
        labels: Vec::new(),
        hydrogens: Vec::new(),
        aromatic: Vec::new(),
        bonds: Vec::new(),
    }
    .parse()
}

/// Parses and fills hydrogens in one step.
pub fn parse_filled(text: &str, groups: Option<&GroupRegistry>) -> Result<Vec<Molecule>, SmilesError> {
    Ok(parse_smiles(text, groups)?.iter().map(fill_hydrogens).collect())
}
