mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::corpus::{CORPUS, NAD, NADH};
use common::oracles::cycle_oracle;
use common::{permute, random_graph};
use dpo_core::assets;
use dpo_core::chem::{
    canonical_smiles, canonical_smiles_graph, fill_hydrogens, parse_filled, perceive_aromaticity, perceive_rings,
    sanity_check, AtomLabel, GroupRegistry, Molecule,
};
use dpo_core::network::{expand, prepare_rules, ExpansionConfig};
use dpo_core::rewrite::parse_gml_rule;
use dpo_core::sgm::are_isomorphic;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn molecule(s: &str) -> Molecule {
    let mut ms = parse_filled(s, None).unwrap_or_else(|e| panic!("{s}: {e}"));
    assert_eq!(ms.len(), 1, "{s}");
    ms.remove(0)
}

fn formose_molecules(iterations: usize) -> Vec<String> {
    let rules: Vec<_> = assets::FORMOSE.iter().map(|t| parse_gml_rule(t).unwrap()).collect();
    let rules = prepare_rules(&rules).unwrap();
    let cfg = ExpansionConfig {
        iterations,
        ..Default::default()
    };
    let net = expand(&[molecule("OCC=O"), molecule("C=O")], &rules, &cfg).unwrap();
    net.molecules().keys().cloned().collect()
}

/// Hand-written molecules plus every formose molecule up to iteration 4.
fn corpus() -> Vec<(String, Molecule)> {
    let mut out: Vec<(String, Molecule)> = CORPUS.iter().map(|s| (s.to_string(), molecule(s))).collect();
    let formose = formose_molecules(4);
    assert_eq!(formose.len(), 37);
    out.extend(formose.into_iter().map(|s| {
        let m = molecule(&s);
        (s, m)
    }));
    out
}

#[test]
fn canonical_smiles_is_permutation_invariant() {
    let corpus = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (s, m) in &corpus {
        let g = m.graph();
        let expected = canonical_smiles(m);
        let mut perm: Vec<usize> = g.nodes().collect();
        for _ in 0..50 {
            perm.shuffle(&mut rng);
            assert_eq!(canonical_smiles_graph(&permute(g, &perm, &mut rng)), expected, "{s}");
        }
    }
}

#[test]
fn canonical_smiles_separates_and_roundtrips() {
    let corpus = corpus();
    let canon: Vec<String> = corpus.iter().map(|(_, m)| canonical_smiles(m)).collect();
    let distinct: BTreeSet<&String> = canon.iter().collect();
    assert!(distinct.len() >= 100, "only {} distinct molecules", distinct.len());
    for i in 0..corpus.len() {
        let back = molecule(&canon[i]);
        assert!(
            are_isomorphic(back.graph(), corpus[i].1.graph()),
            "{} -> {}",
            corpus[i].0,
            canon[i]
        );
        for j in i + 1..corpus.len() {
            let iso = are_isomorphic(corpus[i].1.graph(), corpus[j].1.graph());
            assert_eq!(iso, canon[i] == canon[j], "{} vs {}", corpus[i].0, corpus[j].0);
        }
    }
    // formose molecules through iteration 3 are all present and distinct
    assert_eq!(formose_molecules(3).len(), 9);
}

#[test]
fn hydrogen_fill_is_idempotent_and_sane() {
    for (s, m) in corpus() {
        let again = fill_hydrogens(&m);
        assert!(again.graph().structurally_equal(m.graph()), "{s}");
        assert_eq!(sanity_check(&m), vec![], "{s}");
    }
}

fn aromatic_atoms(m: &Molecule) -> usize {
    m.graph()
        .labels()
        .iter()
        .filter(|l| l.parse::<AtomLabel>().is_ok_and(|a| a.aromatic))
        .count()
}

#[test]
fn aromaticity_classification() {
    let arom = |s: &str| aromatic_atoms(&perceive_aromaticity(&molecule(s)).unwrap());
    assert_eq!(arom("C1=CC=CC=C1"), 6);
    assert_eq!(arom("c1ccccc1"), 6);
    assert_eq!(arom("C1CCCCC1"), 0);
    // only the adenine rings in NADH; its pyridinium ring too in NAD+
    assert_eq!(arom(NADH), 9);
    assert_eq!(arom(NAD), 15);
    let nad = perceive_aromaticity(&molecule(NAD)).unwrap();
    assert!(nad.graph().labels().iter().any(|l| l == "n+"));
    let kekule_nad = NAD.replace("c1ccc[n+](c1)", "C1=CC=C[N+](=C1)");
    assert_eq!(
        canonical_smiles(&perceive_aromaticity(&molecule(&kekule_nad)).unwrap()),
        canonical_smiles(&nad)
    );
}

#[test]
fn nadh_from_groups() {
    let reg = GroupRegistry::parse(assets::GROUPS).unwrap();
    for (short, full) in [
        ("[{CONH2}]C1[CH2]C=CN(C=1)[{Ribo-ADP}]", NADH),
        ("[{CONH2}]c1ccc[n+](c1)[{Ribo-ADP}]", NAD),
    ] {
        let a = parse_filled(short, Some(&reg)).unwrap().remove(0);
        let b = molecule(full);
        assert_eq!(a.heavy_atom_count(), b.heavy_atom_count());
        assert_eq!(canonical_smiles(&a), canonical_smiles(&b));
    }
}

#[test]
fn rings_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p, &["a"], &["x"]);
        let want = cycle_oracle(&g);
        assert_eq!(perceive_rings(&g, None), want, "{g:?}");
        let k = rng.gen_range(3..=6);
        let bounded: Vec<_> = want.iter().filter(|c| c.len() <= k).cloned().collect();
        assert_eq!(perceive_rings(&g, Some(k)), bounded);
        *by_size.entry(want.len().min(20)).or_default() += 1;
    }
    assert!(by_size.keys().any(|&k| k >= 10));

    let rings = |s: &str| perceive_rings(molecule(s).graph(), None).len();
    assert_eq!(rings("C12C3C1C23"), 7);
    assert_eq!(rings("c1ccc2ccccc2c1"), 3);
    assert_eq!(rings("c1ccccc1"), 1);
    assert_eq!(rings("CCO"), 0);
}
