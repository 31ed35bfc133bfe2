use std::collections::BTreeSet;

use thiserror::Error;

use super::smiles::{parse_smiles, Molecule, SmilesError};
use crate::graph::{EdgeId, LabeledGraph, NodeId};
use crate::sgm::{find_monomorphisms, Pattern};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("line {line}: expected `SMILES<TAB>value`")]
    Format { line: usize },
    #[error("line {line}: bad contribution `{text}`")]
    Number { line: usize, text: String },
    #[error(transparent)]
    Smiles(#[from] SmilesError),
    #[error("fragment `{0}` is not a single connected molecule")]
    Disconnected(String),
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<EnergyError> },
}

/// One fragment of a group-contribution table. Only heavy atoms of the
/// fragment are matched.
#[derive(Debug, Clone)]
pub struct EnergyTerm {
    pub fragment: String,
    pub contribution: f64,
    pattern: Pattern,
}

impl EnergyTerm {
    pub fn new(fragment: &str, contribution: f64) -> Result<EnergyTerm, EnergyError> {
        let mut ms = parse_smiles(fragment, None)?;
        if ms.len() != 1 {
            return Err(EnergyError::Disconnected(fragment.to_string()));
        }
        let graph = ms.remove(0).into_graph();
        Ok(EnergyTerm {
            fragment: fragment.to_string(),
            contribution,
            pattern: Pattern::plain(graph),
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    /// Matches of the fragment up to its automorphisms: distinct images.
    pub fn occurrences(&self, g: &LabeledGraph) -> usize {
        let p = self.pattern.graph();
        let mut images: BTreeSet<(Vec<NodeId>, Vec<EdgeId>)> = BTreeSet::new();
        for m in find_monomorphisms(&self.pattern, g, None) {
            let mut nodes = m.as_slice().to_vec();
            nodes.sort_unstable();
            let mut edges: Vec<EdgeId> = p
                .edges()
                .iter()
                .map(|e| g.find_edge(m.image(e.a), m.image(e.b)).expect("matched edge"))
                .collect();
            edges.sort_unstable();
            images.insert((nodes, edges));
        }
        images.len()
    }
}

/// Group-contribution energy model in kcal/mol.
#[derive(Debug, Clone, Default)]
pub struct EnergyModel {
    pub terms: Vec<EnergyTerm>,
}

impl EnergyModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, fragment: &str, contribution: f64) -> Result<(), EnergyError> {
        self.terms.push(EnergyTerm::new(fragment, contribution)?);
        Ok(())
    }

    /// Reads lines of `SMILES<TAB>value`; blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<EnergyModel, EnergyError> {
        let mut model = EnergyModel::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (smiles, value) = body
                .split_once('\t')
                .or_else(|| body.split_once(char::is_whitespace))
                .ok_or(EnergyError::Format { line })?;
            let value = value.trim();
            let contribution: f64 = value.parse().map_err(|_| EnergyError::Number {
                line,
                text: value.to_string(),
            })?;
            let term = EnergyTerm::new(smiles.trim(), contribution).map_err(|e| EnergyError::Line {
                line,
                source: Box::new(e),
            })?;
            model.terms.push(term);
        }
        Ok(model)
    }

    pub fn energy_of_graph(&self, g: &LabeledGraph) -> f64 {
        self.terms
            .iter()
            .map(|t| t.occurrences(g) as f64 * t.contribution)
            .sum()
    }
}

pub fn estimate_energy(m: &Molecule, model: &EnergyModel) -> f64 {
    model.energy_of_graph(m.graph())
}

/// Arrhenius parameters: temperature in kelvin, gas constant in
/// kcal/(mol K).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateParams {
    pub temperature: f64,
    pub gas_constant: f64,
}

impl Default for RateParams {
    fn default() -> Self {
        RateParams {
            temperature: 298.15,
            gas_constant: 1.987e-3,
        }
    }
}

impl RateParams {
    pub fn with_temperature(temperature: f64) -> Self {
        RateParams {
            temperature,
            ..Self::default()
        }
    }

    pub fn rt(&self) -> f64 {
        self.gas_constant * self.temperature
    }
}

pub fn reaction_rate(delta_e: f64, p: &RateParams) -> f64 {
    (-delta_e / p.rt()).exp()
}

/// Energy of the products minus energy of the reactants.
pub fn delta_energy<'a>(
    reactants: impl IntoIterator<Item = &'a LabeledGraph>,
    products: impl IntoIterator<Item = &'a LabeledGraph>,
    model: &EnergyModel,
) -> f64 {
    let sum = |gs: &mut dyn Iterator<Item = &'a LabeledGraph>| gs.map(|g| model.energy_of_graph(g)).sum::<f64>();
    sum(&mut products.into_iter()) - sum(&mut reactants.into_iter())
}
