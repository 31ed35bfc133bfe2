//! Iterative expansion of a chemical universe into a reaction hypergraph.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::chem::{
    canonical_smiles, check_chem_rule, fill_hydrogens, perceive_aromaticity, reaction_rate, sanity_check, EnergyModel,
    Molecule, RateParams, RuleViolation, Violation,
};
use crate::gml::quote;
use crate::graph::{disjoint_union, split_components, LabeledGraph};
use crate::rewrite::{apply, ApplyError, RuleGraph};
use crate::sgm::{find_monomorphisms, has_match, pattern_components, MatchConstraint, Pattern};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("input molecule {smiles} fails sanity checks: {}", list(.violations))]
    InvalidInput { smiles: String, violations: Vec<Violation> },
    #[error("rule `{rule}` fails chemical checks: {}", list(.violations))]
    InvalidRule {
        rule: String,
        violations: Vec<RuleViolation>,
    },
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone)]
pub struct ExpansionConfig {
    pub iterations: usize,
    /// Products with more atoms (hydrogens included) are dropped.
    pub max_atoms: Option<usize>,
    pub rate_params: RateParams,
    pub energy_model: Option<EnergyModel>,
    pub dedup_products: bool,
    /// Lets a molecule react with a second copy of itself.
    pub allow_self_pairing: bool,
}

impl Default for ExpansionConfig {
    fn default() -> Self {
        ExpansionConfig {
            iterations: 1,
            max_atoms: None,
            rate_params: RateParams::default(),
            energy_model: None,
            dedup_products: true,
            allow_self_pairing: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeEntry {
    pub molecule: Molecule,
    /// 0 for inputs.
    pub iteration: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reaction {
    pub rule: String,
    /// Canonical SMILES, sorted; repeated entries are multiplicities.
    pub reactants: Vec<String>,
    pub products: Vec<String>,
    pub rate: f64,
    pub delta_e: f64,
    pub iteration: usize,
}

/// Why a rewrite did not become a reaction.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    Apply {
        rule: String,
        reactants: Vec<String>,
        error: ApplyError,
    },
    Product {
        rule: String,
        reactants: Vec<String>,
        violations: Vec<Violation>,
    },
    TooLarge {
        rule: String,
        reactants: Vec<String>,
        atoms: usize,
    },
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::Apply { rule, reactants, error } => {
                write!(f, "{rule} on {}: {error}", reactants.join(" + "))
            }
            Diagnostic::Product {
                rule,
                reactants,
                violations,
            } => write!(
                f,
                "{rule} on {}: invalid product: {}",
                reactants.join(" + "),
                list(violations)
            ),
            Diagnostic::TooLarge { rule, reactants, atoms } => {
                write!(
                    f,
                    "{rule} on {}: product with {atoms} atoms exceeds the bound",
                    reactants.join(" + ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStats {
    pub iteration: usize,
    /// Cumulative counts after the iteration.
    pub molecules: usize,
    pub reactions: usize,
    pub seconds: f64,
}

impl IterationStats {
    pub fn log_line(&self) -> String {
        format!(
            "iter {}: molecules={} reactions={} elapsed={:.3}",
            self.iteration, self.molecules, self.reactions, self.seconds
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReactionNetwork {
    molecules: BTreeMap<String, MoleculeEntry>,
    reactions: Vec<Reaction>,
    reaction_keys: HashSet<(String, Vec<String>, Vec<String>)>,
    iterations: usize,
    history: Vec<IterationStats>,
    diagnostics: Vec<Diagnostic>,
}

impl ReactionNetwork {
    /// A network holding only the inputs, after hydrogen fill, aromaticity
    /// perception and sanity checks.
    pub fn from_inputs(inputs: &[Molecule]) -> Result<ReactionNetwork, NetworkError> {
        let mut net = ReactionNetwork::default();
        for m in inputs {
            let filled = fill_hydrogens(m);
            let m = normalize(filled.graph().clone()).map_err(|violations| NetworkError::InvalidInput {
                smiles: canonical_smiles(&filled),
                violations,
            })?;
            let smiles = canonical_smiles(&m);
            net.molecules.entry(smiles).or_insert(MoleculeEntry {
                molecule: m,
                iteration: 0,
            });
        }
        net.history.push(IterationStats {
            iteration: 0,
            molecules: net.molecules.len(),
            reactions: 0,
            seconds: 0.0,
        });
        Ok(net)
    }

    pub fn molecules(&self) -> &BTreeMap<String, MoleculeEntry> {
        &self.molecules
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    /// Cumulative counts per iteration, starting with iteration 0.
    pub fn stats(&self) -> &[IterationStats] {
        &self.history
    }

    pub fn is_empty(&self) -> bool {
        self.molecules.is_empty()
    }

    /// Runs further iterations until `cfg.iterations` are done in total.
    pub fn expand_to(
        &mut self,
        rules: &[RuleGraph],
        cfg: &ExpansionConfig,
        mut on_iteration: impl FnMut(&IterationStats),
    ) {
        let prepared: Vec<PreparedRule> = rules.iter().map(PreparedRule::new).collect();
        let mut embeds: HashMap<(usize, usize, String), bool> = HashMap::new();
        let mut energies: HashMap<String, f64> = HashMap::new();
        while self.iterations < cfg.iterations {
            let start = Instant::now();
            let iteration = self.iterations + 1;
            let known: Vec<(&String, &MoleculeEntry)> = self.molecules.iter().collect();
            let is_new: Vec<bool> = known.iter().map(|(_, e)| e.iteration + 1 == iteration).collect();

            // component embeddability, cached across iterations
            let missing: Vec<(usize, usize, usize)> = prepared
                .iter()
                .enumerate()
                .flat_map(|(ri, r)| (0..r.components.len()).map(move |c| (ri, c)))
                .flat_map(|(ri, c)| (0..known.len()).map(move |mi| (ri, c, mi)))
                .filter(|&(ri, c, mi)| !embeds.contains_key(&(ri, c, known[mi].0.clone())))
                .collect();
            let computed: Vec<bool> = missing
                .par_iter()
                .map(|&(ri, c, mi)| has_match(&prepared[ri].components[c], known[mi].1.molecule.graph()))
                .collect();
            for (&(ri, c, mi), ok) in missing.iter().zip(computed) {
                embeds.insert((ri, c, known[mi].0.clone()), ok);
            }

            let mut tasks: Vec<(usize, Vec<usize>)> = Vec::new();
            for (ri, r) in prepared.iter().enumerate() {
                let k = r.components.len();
                if k == 0 {
                    continue;
                }
                let can = |c: usize, mi: usize| embeds[&(ri, c, known[mi].0.clone())];
                for combo in multisets(known.len(), k, cfg.allow_self_pairing) {
                    if !combo.iter().any(|&mi| is_new[mi]) {
                        continue;
                    }
                    if assignable(k, &combo, &can) {
                        tasks.push((ri, combo));
                    }
                }
            }

            let results: Vec<TaskResult> = tasks
                .par_iter()
                .map(|(ri, combo)| {
                    let graphs: Vec<&LabeledGraph> = combo.iter().map(|&mi| known[mi].1.molecule.graph()).collect();
                    let names: Vec<String> = combo.iter().map(|&mi| known[mi].0.clone()).collect();
                    run_task(*ri, &prepared[*ri], &graphs, names, cfg)
                })
                .collect();

            for res in results {
                self.diagnostics.extend(res.diagnostics);
                for (reactants, products) in res.reactions {
                    let rule = prepared[res.rule].rule.id.clone();
                    let key = (
                        rule,
                        reactants,
                        products.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
                    );
                    if cfg.dedup_products && self.reaction_keys.contains(&key) {
                        continue;
                    }
                    for (s, m) in &products {
                        if !self.molecules.contains_key(s) {
                            self.molecules.insert(
                                s.clone(),
                                MoleculeEntry {
                                    molecule: m.clone(),
                                    iteration,
                                },
                            );
                        }
                    }
                    let (rate, delta_e) = match &cfg.energy_model {
                        None => (1.0, 0.0),
                        Some(model) => {
                            let mut energy = |s: &String| {
                                *energies
                                    .entry(s.clone())
                                    .or_insert_with(|| model.energy_of_graph(self.molecules[s].molecule.graph()))
                            };
                            let de =
                                key.2.iter().map(&mut energy).sum::<f64>() - key.1.iter().map(&mut energy).sum::<f64>();
                            (reaction_rate(de, &cfg.rate_params), de)
                        }
                    };
                    self.reaction_keys.insert(key.clone());
                    self.reactions.push(Reaction {
                        rule: key.0,
                        reactants: key.1,
                        products: key.2,
                        rate,
                        delta_e,
                        iteration,
                    });
                }
            }
            self.iterations = iteration;
            let stats = IterationStats {
                iteration,
                molecules: self.molecules.len(),
                reactions: self.reactions.len(),
                seconds: start.elapsed().as_secs_f64(),
            };
            on_iteration(&stats);
            self.history.push(stats);
        }
    }

    /// DOT digraph: box nodes for molecules, point nodes for reactions.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph RN {\n");
        let index: HashMap<&str, usize> = self
            .molecules
            .keys()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        for (i, s) in self.molecules.keys().enumerate() {
            let _ = writeln!(out, "  m{i} [shape=box, label={}];", quote(s));
        }
        for (j, r) in self.reactions.iter().enumerate() {
            let _ = writeln!(
                out,
                "  r{j} [shape=point, xlabel={}];",
                quote(&format!("{} rate={}", r.rule, fmt_rate(r.rate)))
            );
            for (s, n) in runs(&r.reactants) {
                let _ = writeln!(out, "  m{} -> r{j}{};", index[s], multiplicity(n));
            }
            for (s, n) in runs(&r.products) {
                let _ = writeln!(out, "  r{j} -> m{}{};", index[s], multiplicity(n));
            }
        }
        out.push('}');
        out
    }

    /// GML dump of the hypergraph.
    pub fn to_gml(&self) -> String {
        let mut out = String::from("network [\n");
        let index: HashMap<&str, usize> = self
            .molecules
            .keys()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        for (i, (s, e)) in self.molecules.iter().enumerate() {
            let _ = writeln!(
                out,
                "  molecule [ id {i} smiles {} iteration {} ]",
                quote(s),
                e.iteration
            );
        }
        for (j, r) in self.reactions.iter().enumerate() {
            let _ = write!(
                out,
                "  reaction [ id {j} rule {} rate {} deltaE {}",
                quote(&r.rule),
                fmt_rate(r.rate),
                r.delta_e
            );
            for s in &r.reactants {
                let _ = write!(out, " reactant {}", index[s.as_str()]);
            }
            for s in &r.products {
                let _ = write!(out, " product {}", index[s.as_str()]);
            }
            out.push_str(" ]\n");
        }
        out.push(']');
        out
    }
}

fn fmt_rate(r: f64) -> String {
    format!("{r:.6e}")
}

fn multiplicity(n: usize) -> String {
    if n > 1 {
        format!(" [label=\"{n}\"]")
    } else {
        String::new()
    }
}

fn runs(xs: &[String]) -> Vec<(&str, usize)> {
    let mut out: Vec<(&str, usize)> = Vec::new();
    for x in xs {
        match out.last_mut() {
            Some((s, n)) if *s == x.as_str() => *n += 1,
            _ => out.push((x.as_str(), 1)),
        }
    }
    out
}

/// Fills, perceives aromaticity of cyclic molecules and sanity-checks.
/// Treats `g` as a hydrogen-filled molecule: re-perceives aromaticity when
/// it has a cycle, then runs the sanity checks.
pub fn normalize(g: LabeledGraph) -> Result<Molecule, Vec<Violation>> {
    let m = Molecule::from_graph(g);
    let m = if m.graph().edge_count() >= m.graph().node_count() {
        perceive_aromaticity(&m).map_err(|v| vec![v])?
    } else {
        m
    };
    let v = sanity_check(&m);
    if v.is_empty() {
        Ok(m)
    } else {
        Err(v)
    }
}

struct PreparedRule {
    rule: RuleGraph,
    pattern: Pattern,
    /// Node sets of the left pattern's components.
    parts: Vec<Vec<usize>>,
    /// Each component as a pattern with the constraints local to it.
    components: Vec<Pattern>,
}

impl PreparedRule {
    fn new(rule: &RuleGraph) -> PreparedRule {
        let pattern = rule.left_pattern();
        let parts = pattern_components(&pattern);
        let components = parts
            .iter()
            .map(|nodes| {
                let mut local = vec![usize::MAX; pattern.node_count()];
                for (i, &v) in nodes.iter().enumerate() {
                    local[v] = i;
                }
                let constraints: Vec<MatchConstraint> = pattern
                    .constraints()
                    .iter()
                    .filter(|c| c.nodes().iter().all(|&v| local[v] != usize::MAX))
                    .map(|c| c.remap(|v| local[v]))
                    .collect();
                Pattern::new(
                    pattern.graph().induced_subgraph(nodes),
                    pattern.wildcard().cloned(),
                    constraints,
                )
                .expect("restriction of a valid pattern")
            })
            .collect();
        PreparedRule {
            rule: rule.clone(),
            pattern,
            parts,
            components,
        }
    }
}

/// Nondecreasing index tuples of length `k` over `0..n`.
fn multisets(n: usize, k: usize, repeat: bool) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, repeat: bool, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            go(n, k, repeat, if repeat { i } else { i + 1 }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, repeat, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Whether components can be placed in the molecules one-to-one.
fn assignable(k: usize, combo: &[usize], can: &dyn Fn(usize, usize) -> bool) -> bool {
    fn go(c: usize, k: usize, combo: &[usize], used: &mut Vec<bool>, can: &dyn Fn(usize, usize) -> bool) -> bool {
        if c == k {
            return true;
        }
        for slot in 0..combo.len() {
            if !used[slot] && can(c, combo[slot]) {
                used[slot] = true;
                if go(c + 1, k, combo, used, can) {
                    return true;
                }
                used[slot] = false;
            }
        }
        false
    }
    go(0, k, combo, &mut vec![false; combo.len()], can)
}

type Products = Vec<(String, Molecule)>;

struct TaskResult {
    rule: usize,
    reactions: Vec<(Vec<String>, Products)>,
    diagnostics: Vec<Diagnostic>,
}

fn run_task(
    rule: usize,
    r: &PreparedRule,
    graphs: &[&LabeledGraph],
    reactants: Vec<String>,
    cfg: &ExpansionConfig,
) -> TaskResult {
    let mut out = TaskResult {
        rule,
        reactions: Vec::new(),
        diagnostics: Vec::new(),
    };
    let (host, origin) = disjoint_union(graphs.iter().copied());
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    'matches: for m in find_monomorphisms(&r.pattern, &host, None) {
        if r.parts.len() > 1 {
            let mut copies: Vec<usize> = r.parts.iter().map(|p| origin[m.image(p[0])].graph).collect();
            copies.sort_unstable();
            copies.dedup();
            if copies.len() != r.parts.len() {
                continue;
            }
        }
        let result = match apply(&r.rule, &host, &m) {
            Ok(g) => g,
            Err(error) => {
                out.diagnostics.push(Diagnostic::Apply {
                    rule: r.rule.id.clone(),
                    reactants: reactants.clone(),
                    error,
                });
                continue;
            }
        };
        let mut products: Products = Vec::new();
        for part in split_components(&result) {
            if let Some(limit) = cfg.max_atoms {
                if part.node_count() > limit {
                    out.diagnostics.push(Diagnostic::TooLarge {
                        rule: r.rule.id.clone(),
                        reactants: reactants.clone(),
                        atoms: part.node_count(),
                    });
                    continue 'matches;
                }
            }
            match normalize(part) {
                Ok(p) => products.push((canonical_smiles(&p), p)),
                Err(violations) => {
                    out.diagnostics.push(Diagnostic::Product {
                        rule: r.rule.id.clone(),
                        reactants: reactants.clone(),
                        violations,
                    });
                    continue 'matches;
                }
            }
        }
        products.sort_by(|a, b| a.0.cmp(&b.0));
        let names: Vec<String> = products.iter().map(|(s, _)| s.clone()).collect();
        if cfg.dedup_products && !seen.insert(names) {
            continue;
        }
        out.reactions.push((reactants.clone(), products));
    }
    out
}

/// Runs `check_chem_rule` on every rule and returns the checked forms.
pub fn prepare_rules(rules: &[RuleGraph]) -> Result<Vec<RuleGraph>, NetworkError> {
    rules
        .iter()
        .map(|r| {
            let (violations, checked) = check_chem_rule(r);
            if violations.is_empty() {
                Ok(checked)
            } else {
                Err(NetworkError::InvalidRule {
                    rule: r.id.clone(),
                    violations,
                })
            }
        })
        .collect()
}

/// Builds the network of `inputs` and expands it for `cfg.iterations`.
pub fn expand(
    inputs: &[Molecule],
    rules: &[RuleGraph],
    cfg: &ExpansionConfig,
) -> Result<ReactionNetwork, NetworkError> {
    let mut net = ReactionNetwork::from_inputs(inputs)?;
    net.expand_to(rules, cfg, |_| {});
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(3, 2, true).len(), 6);
        assert_eq!(multisets(3, 2, false).len(), 3);
        assert_eq!(multisets(2, 1, true), vec![vec![0], vec![1]]);
    }

    #[test]
    fn empty_network_dot() {
        assert_eq!(ReactionNetwork::default().to_dot(), "digraph RN {\n}");
    }

    #[test]
    fn multiplicity_runs() {
        let xs = vec!["A".to_string(), "A".to_string(), "B".to_string()];
        assert_eq!(runs(&xs), vec![("A", 2), ("B", 1)]);
    }
}
