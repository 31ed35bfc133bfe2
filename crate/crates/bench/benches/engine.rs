use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use dpo_bench::{diels_alder, formose_rules, molecule, union};
use dpo_core::chem::{canonical_smiles, perceive_rings};
use dpo_core::find_monomorphisms;
use dpo_core::network::{expand, ExpansionConfig};
use dpo_core::rewrite::{apply_all, Collector};

const NAD: &str = "NC(=O)c1ccc[n+](c1)C2OC(COP(O)(=O)OP(O)(=O)OCC3OC(C(O)C3O)n4cnc5c(N)ncnc54)C(O)C2O";

fn matching(c: &mut Criterion) {
    let rule = diels_alder();
    let pattern = rule.left_pattern();
    let small = union(&["C=C(C)C=C", "CC=C"]);
    let large = union(&["C=CC=CC=CC=C", "C=CC=CC=C", "CC=CC"]);
    c.bench_function("match/diels_alder_isoprene_propene", |b| {
        b.iter(|| find_monomorphisms(&pattern, black_box(&small), None))
    });
    c.bench_function("match/diels_alder_polyenes", |b| {
        b.iter(|| find_monomorphisms(&pattern, black_box(&large), None))
    });
    c.bench_function("apply_all/diels_alder_dedup", |b| {
        b.iter(|| apply_all(&rule, black_box(&small), &mut Collector::default(), true))
    });
}

fn chemistry(c: &mut Criterion) {
    for (name, s) in [
        ("glucose", "OCC1OC(O)C(O)C(O)C1O"),
        ("caffeine", "CN1C=NC2=C1C(=O)N(C(=O)N2C)C"),
        ("nad", NAD),
    ] {
        let m = molecule(s);
        c.bench_with_input(BenchmarkId::new("canonical_smiles", name), &m, |b, m| {
            b.iter(|| canonical_smiles(m))
        });
    }
    let cubane = molecule("C12C3C4C1C5C2C3C45");
    c.bench_function("rings/cubane", |b| {
        b.iter(|| perceive_rings(black_box(cubane.graph()), None))
    });
}

fn network(c: &mut Criterion) {
    let rules = formose_rules();
    let inputs = [molecule("OCC=O"), molecule("C=O")];
    let mut group = c.benchmark_group("formose");
    group.sample_size(10);
    for iterations in [3, 4, 5] {
        let cfg = ExpansionConfig {
            iterations,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(iterations), &cfg, |b, cfg| {
            b.iter(|| expand(&inputs, &rules, cfg).expect("valid inputs"))
        });
    }
    group.finish();
}

criterion_group!(benches, matching, chemistry, network);
criterion_main!(benches);
