//! Fixtures shared by the benchmarks.

use dpo_core::assets;
use dpo_core::chem::parse_filled;
use dpo_core::graph::{disjoint_union, LabeledGraph};
use dpo_core::network::prepare_rules;
use dpo_core::{parse_gml_rule, Molecule, RuleGraph};

pub fn molecule(smiles: &str) -> Molecule {
    parse_filled(smiles, None).expect("valid SMILES").remove(0)
}

pub fn union(smiles: &[&str]) -> LabeledGraph {
    let ms: Vec<Molecule> = smiles.iter().map(|s| molecule(s)).collect();
    disjoint_union(ms.iter().map(|m| m.graph())).0
}

/// The four formose rules after chemical checking.
pub fn formose_rules() -> Vec<RuleGraph> {
    let rules: Vec<RuleGraph> = assets::FORMOSE
        .iter()
        .map(|t| parse_gml_rule(t).expect("bundled"))
        .collect();
    prepare_rules(&rules).expect("bundled rules pass")
}

pub fn diels_alder() -> RuleGraph {
    parse_gml_rule(assets::DIELS_ALDER).expect("bundled")
}
