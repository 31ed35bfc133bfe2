//! Molecules as labeled graphs: SMILES, hydrogens, sanity checks,
//! canonical forms, rings, aromaticity, rule checks and energies.

mod aromatic;
mod atom;
mod canonical;
mod energy;
mod groups;
mod rings;
mod rule_check;
mod sanity;
mod smiles;

pub use aromatic::{kekulize, perceive_aromaticity};
pub use atom::{bond_order, valences, AtomLabel, AtomLabelError, AROMATIC_ELEMENTS, ORGANIC_SUBSET};
pub use canonical::{canonical_smiles, canonical_smiles_graph};
pub use energy::{delta_energy, estimate_energy, reaction_rate, EnergyError, EnergyModel, EnergyTerm, RateParams};
pub use groups::{expand_rule_groups, group_name, Group, GroupError, GroupRegistry};
pub use rings::{canonical_cycle, perceive_rings};
pub use rule_check::{check_chem_rule, RuleViolation, DEFAULT_WILDCARD};
pub use sanity::{sanity_check, Violation};
pub use smiles::{fill_hydrogens, parse_filled, parse_smiles, Molecule, SmilesError};
