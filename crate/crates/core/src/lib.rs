//! Graph rewriting with double-pushout semantics, a chemistry layer on
//! top of it, and rule-driven reaction network expansion.
//!
//! The most used types are re-exported at the crate root.

pub mod assets;
pub mod canon;
pub mod chem;
pub mod demo;
pub mod gml;
pub mod graph;
pub mod network;
pub mod rewrite;
pub mod sgm;

pub use chem::{canonical_smiles, parse_smiles, GroupRegistry, Molecule, RateParams};
pub use graph::{GraphBuilder, GraphError, Label, LabeledGraph};
pub use network::{expand, ExpansionConfig, ReactionNetwork};
pub use rewrite::{apply, apply_all, parse_gml_rule, RuleGraph};
pub use sgm::{find_monomorphisms, Match, MatchConstraint, Pattern};
