use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use dpo_core::chem::{
    canonical_smiles, check_chem_rule, expand_rule_groups, parse_filled, perceive_rings, EnergyModel, GroupRegistry,
    Molecule, RateParams,
};
use dpo_core::demo::life::{self, Boundary, LifeGrid};
use dpo_core::demo::sudoku::{self, Board};
use dpo_core::demo::ydelta;
use dpo_core::gml::{parse_gml_graph, write_gml_graph};
use dpo_core::graph::{disjoint_union, split_components, LabeledGraph};
use dpo_core::network::{normalize, prepare_rules, ExpansionConfig, ReactionNetwork};
use dpo_core::rewrite::{apply, apply_all, parse_gml_rule, parse_gml_rules, Collector, RuleGraph};
use dpo_core::sgm::first_match;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{ApplyArgs, CanonArgs, Format, GraphInput, LifeArgs, RingsArgs, SudokuArgs, ToychemArgs, YdeltaArgs};
use crate::assets::{read, Assets};
use crate::error::{parse_err, CliError, Result};

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

fn registry(path: Option<&Path>, assets: &Assets) -> Result<GroupRegistry> {
    let (text, name) = match path {
        Some(p) => (read(p)?, p.display().to_string()),
        None => (assets.groups()?, "groups.gml".to_string()),
    };
    GroupRegistry::parse(&text).map_err(|e| CliError::Parse(format!("{name}: {e}")))
}

/// Parses, fills and normalizes every molecule in `smiles`.
fn molecules(smiles: &str, reg: &GroupRegistry) -> Result<Vec<Molecule>> {
    let parsed = parse_filled(smiles, Some(reg)).map_err(|e| CliError::Parse(format!("`{smiles}`: {e}")))?;
    parsed
        .into_iter()
        .map(|m| normalize(m.into_graph()).map_err(|v| CliError::Domain(format!("`{smiles}`: {}", join(&v)))))
        .collect()
}

/// Canonical SMILES of a graph, components sorted and joined by `.`.
fn graph_smiles(g: &LabeledGraph) -> std::result::Result<String, String> {
    let mut parts = Vec::new();
    for c in split_components(g) {
        let m = normalize(c).map_err(|v| join(&v))?;
        parts.push(canonical_smiles(&m));
    }
    parts.sort();
    Ok(parts.join("."))
}

fn load_graph(path: &Path) -> Result<LabeledGraph> {
    parse_gml_graph(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_rules(path: &Path) -> Result<Vec<RuleGraph>> {
    parse_gml_rules(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn with_groups(rule: RuleGraph, reg: &GroupRegistry) -> Result<RuleGraph> {
    expand_rule_groups(&rule, reg).map_err(|e| CliError::Domain(format!("rule `{}`: {e}", rule.id)))
}

pub fn canon(args: &CanonArgs, assets: &Assets, out: &mut dyn Write) -> Result<()> {
    let reg = registry(args.groups.as_deref(), assets)?;
    for s in &args.smiles {
        let mut parts: Vec<String> = molecules(s, &reg)?.iter().map(canonical_smiles).collect();
        parts.sort();
        writeln!(out, "{}", parts.join("."))?;
    }
    Ok(())
}

enum Host {
    Graph(LabeledGraph),
    Molecules(LabeledGraph),
}

fn host(input: &GraphInput, reg: &GroupRegistry) -> Result<Host> {
    match (&input.graph, &input.smiles) {
        (Some(p), _) => Ok(Host::Graph(load_graph(p)?)),
        (None, Some(s)) => {
            let ms = molecules(s, reg)?;
            Ok(Host::Molecules(disjoint_union(ms.iter().map(|m| m.graph())).0))
        }
        (None, None) => Err(CliError::Usage("one of --graph or --smiles is required".into())),
    }
}

pub fn apply_rule(args: &ApplyArgs, assets: &Assets, out: &mut dyn Write) -> Result<()> {
    let reg = registry(args.groups.as_deref(), assets)?;
    let path = &args.rule;
    let rule = parse_gml_rule(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let rule = with_groups(rule, &reg)?;
    let (rule, g, chemical) = match host(&args.input, &reg)? {
        Host::Graph(g) => (rule, g, false),
        Host::Molecules(g) => {
            let (violations, checked) = check_chem_rule(&rule);
            if !violations.is_empty() {
                return Err(CliError::Domain(format!("rule `{}`: {}", rule.id, join(&violations))));
            }
            (checked, g, true)
        }
    };
    let format = args
        .format
        .unwrap_or(if chemical { Format::Smiles } else { Format::Gml });
    if format == Format::Dot {
        return Err(CliError::Usage("apply writes gml or smiles".into()));
    }

    let results = if args.all {
        let mut c = Collector::default();
        let summary = apply_all(&rule, &g, &mut c, args.dedup);
        for (m, e) in &summary.failures {
            eprintln!("match {:?}: {e}", m.as_slice());
        }
        c.graphs
    } else {
        match first_match(&rule.left_pattern(), &g) {
            Some(m) => vec![apply(&rule, &g, &m).map_err(|e| CliError::Domain(e.to_string()))?],
            None => Vec::new(),
        }
    };
    if results.is_empty() {
        eprintln!("rule `{}` does not match", rule.id);
    }

    let mut invalid = 0;
    for r in &results {
        match format {
            Format::Smiles => match graph_smiles(r) {
                Ok(s) => writeln!(out, "{s}")?,
                Err(e) => {
                    eprintln!("invalid product: {e}");
                    invalid += 1;
                }
            },
            _ => write!(out, "{}", write_gml_graph(r))?,
        }
    }
    if invalid > 0 {
        return Err(CliError::Domain(format!("{invalid} products failed sanity checks")));
    }
    Ok(())
}

fn rule_files(path: &Path) -> Result<Vec<PathBuf>> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let entries = fs::read_dir(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gml"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn toychem(args: &ToychemArgs, assets: &Assets, out: &mut dyn Write) -> Result<()> {
    if !(args.temp.is_finite() && args.temp > 0.0) {
        return Err(CliError::Usage(format!("--temp must be positive, got {}", args.temp)));
    }
    let reg = registry(args.groups.as_deref(), assets)?;

    let mut rules = Vec::new();
    if args.rules.is_empty() {
        for (name, text) in assets.formose()? {
            rules.extend(parse_gml_rules(&text).map_err(parse_err(name))?);
        }
    } else {
        for p in &args.rules {
            for f in rule_files(p)? {
                rules.extend(load_rules(&f)?);
            }
        }
    }
    let rules: Vec<RuleGraph> = rules.into_iter().map(|r| with_groups(r, &reg)).collect::<Result<_>>()?;
    let rules = prepare_rules(&rules).map_err(|e| CliError::Domain(e.to_string()))?;

    let mut inputs = Vec::new();
    for s in &args.smiles {
        inputs.extend(parse_filled(s, Some(&reg)).map_err(|e| CliError::Parse(format!("`{s}`: {e}")))?);
    }
    let energy_model = match &args.energy {
        Some(p) => Some(EnergyModel::parse(&read(p)?).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let cfg = ExpansionConfig {
        iterations: args.iter,
        max_atoms: args.max_atoms,
        rate_params: RateParams::with_temperature(args.temp),
        energy_model,
        allow_self_pairing: !args.no_self_pairing,
        ..Default::default()
    };

    let mut net = ReactionNetwork::from_inputs(&inputs).map_err(|e| CliError::Domain(e.to_string()))?;
    net.expand_to(&rules, &cfg, |s| eprintln!("{}", s.log_line()));
    for d in net.diagnostics() {
        eprintln!("{d}");
    }

    writeln!(out, "iter\tmolecules\treactions\tseconds")?;
    for s in net.stats() {
        let secs = if args.no_timing {
            "-".to_string()
        } else {
            format!("{:.3}", s.seconds)
        };
        writeln!(out, "{}\t{}\t{}\t{secs}", s.iteration, s.molecules, s.reactions)?;
    }

    let Some(path) = &args.output else {
        return Ok(());
    };
    let body = match args.format {
        Format::Dot => net.to_dot() + "\n",
        Format::Gml => net.to_gml(),
        Format::Smiles => net
            .molecules()
            .iter()
            .map(|(s, e)| format!("{s}\t{}\n", e.iteration))
            .collect(),
    };
    if path.as_os_str() == "-" {
        write!(out, "{body}")?;
    } else {
        fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

pub fn rings(args: &RingsArgs, assets: &Assets, out: &mut dyn Write) -> Result<()> {
    let reg = registry(None, assets)?;
    let g = match host(&args.input, &reg)? {
        Host::Graph(g) | Host::Molecules(g) => g,
    };
    for ring in perceive_rings(&g, args.max) {
        let ids: Vec<String> = ring.iter().map(|&v| g.external_id(v).to_string()).collect();
        writeln!(out, "{}", ids.join(" "))?;
    }
    Ok(())
}

pub fn ydelta(args: &YdeltaArgs, assets: &Assets, out: &mut dyn Write) -> Result<()> {
    let rule = |text: String, name: &str| parse_gml_rule(&text).map_err(parse_err(name.to_string()));
    let rules = [
        rule(assets.wye_to_delta()?, "wye_to_delta.gml")?,
        rule(assets.delta_to_wye()?, "delta_to_wye.gml")?,
    ];
    let (a, b) = (load_graph(&args.a)?, load_graph(&args.b)?);
    let verdict = if ydelta::equivalent_with(&rules, &a, &b, args.depth) {
        "EQUIVALENT"
    } else {
        "NOT EQUIVALENT"
    };
    writeln!(out, "{verdict}")?;
    Ok(())
}

pub fn life(args: &LifeArgs, assets: &Assets, out: &mut dyn Write) -> Result<()> {
    let usage = |e: life::LifeError| CliError::Usage(e.to_string());
    let (w, h) = life::parse_size(&args.grid).map_err(usage)?;
    let alive = match (&args.alive, args.seed) {
        (Some(list), _) => life::parse_cells(list).map_err(usage)?,
        (None, Some(seed)) => {
            if !(0.0..=1.0).contains(&args.density) {
                return Err(CliError::Usage("--density must lie in [0, 1]".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..w * h)
                .filter(|_| rng.gen_bool(args.density))
                .map(|i| (i % w, i / w))
                .collect()
        }
        (None, None) => Vec::new(),
    };
    let boundary = if args.torus { Boundary::Torus } else { Boundary::Bounded };
    let grid = LifeGrid::new(w, h, boundary, &alive).map_err(usage)?;
    let rules = parse_gml_rules(&assets.life()?).map_err(parse_err("life/rules.gml"))?;
    let gens = life::run(&grid, &rules, args.steps);
    if args.trace {
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{g}")?;
        }
    } else {
        write!(out, "{}", gens.last().expect("run keeps the start"))?;
    }
    Ok(())
}

pub fn sudoku(args: &SudokuArgs, out: &mut dyn Write) -> Result<()> {
    let text = if args.grid.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
            path: args.grid.clone(),
            source,
        })?;
        s
    } else {
        read(&args.grid)?
    };
    let board = Board::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", args.grid.display())))?;
    let solved = sudoku::solve(&board).ok_or_else(|| CliError::Domain("the puzzle has no solution".into()))?;
    write!(out, "{solved}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_directories_list_gml_files_in_order() {
        let dir = tempfile::TempDir::new().unwrap();
        for name in ["b.gml", "a.gml", "notes.txt"] {
            fs::write(dir.path().join(name), "").unwrap();
        }
        let files = rule_files(dir.path()).unwrap();
        let names: Vec<_> = files.iter().map(|p| p.file_name().unwrap().to_str().unwrap()).collect();
        assert_eq!(names, ["a.gml", "b.gml"]);
        assert_eq!(rule_files(&dir.path().join("a.gml")).unwrap().len(), 1);
    }

    #[test]
    fn components_are_sorted() {
        let reg = GroupRegistry::new();
        let ms = molecules("OCC=O.C", &reg).unwrap();
        let g = disjoint_union(ms.iter().map(|m| m.graph())).0;
        let s = graph_smiles(&g).unwrap();
        assert_eq!(s.split('.').count(), 2);
        let swapped = molecules("C.O=CCO", &reg).unwrap();
        assert_eq!(
            graph_smiles(&disjoint_union(swapped.iter().map(|m| m.graph())).0).unwrap(),
            s
        );
    }
}
