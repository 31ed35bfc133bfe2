use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dpo", version, about = "Graph rewriting, molecules and reaction networks")]
pub struct Cli {
    /// Directory with replacement rule and data files, laid out like the
    /// bundled assets (formose/, life/, ydelta/, groups.gml).
    #[arg(long, global = true, value_name = "DIR")]
    pub assets: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical SMILES of each input.
    Canon(CanonArgs),
    /// Apply one rule to a graph or molecule.
    Apply(ApplyArgs),
    /// Expand a reaction network.
    Toychem(ToychemArgs),
    /// List the simple cycles of a graph.
    Rings(RingsArgs),
    /// Decide whether two graphs are a few wye/delta steps apart.
    Ydelta(YdeltaArgs),
    /// Run the Game of Life.
    Life(LifeArgs),
    /// Solve a Sudoku.
    Sudoku(SudokuArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Gml,
    Smiles,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph in GML.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Molecule as SMILES.
    #[arg(long, conflicts_with = "graph")]
    pub smiles: Option<String>,
}

#[derive(Debug, Args)]
pub struct CanonArgs {
    #[arg(required = true, value_name = "SMILES")]
    pub smiles: Vec<String>,
    /// Group registry GML; defaults to the bundled groups.
    #[arg(long, value_name = "FILE")]
    pub groups: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long, value_name = "FILE")]
    pub rule: PathBuf,
    #[command(flatten)]
    pub input: GraphInput,
    /// Apply at every match instead of the first.
    #[arg(long)]
    pub all: bool,
    /// Drop results isomorphic to an earlier one.
    #[arg(long)]
    pub dedup: bool,
    /// Output format; gml for graph input, smiles for SMILES input by default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "FILE")]
    pub groups: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ToychemArgs {
    /// Rule files or directories of .gml files; defaults to the formose rules.
    #[arg(long, num_args = 1.., value_name = "PATH")]
    pub rules: Vec<PathBuf>,
    #[arg(long, required = true, num_args = 1.., value_name = "SMILES")]
    pub smiles: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub iter: usize,
    /// Energy table, one `fragment<TAB>kcal/mol` per line.
    #[arg(long, value_name = "FILE")]
    pub energy: Option<PathBuf>,
    /// Temperature in kelvin.
    #[arg(long, default_value_t = 298.15)]
    pub temp: f64,
    /// Drop products with more atoms than this, hydrogens included.
    #[arg(long)]
    pub max_atoms: Option<usize>,
    /// Forbid a molecule reacting with a copy of itself.
    #[arg(long)]
    pub no_self_pairing: bool,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
    /// Where to write the network; `-` appends it to standard output.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Print `-` instead of elapsed seconds, for reproducible output.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, value_name = "FILE")]
    pub groups: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RingsArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Largest ring size to report.
    #[arg(long)]
    pub max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct YdeltaArgs {
    #[arg(long, value_name = "FILE")]
    pub a: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct LifeArgs {
    /// Board size as WxH.
    #[arg(long, value_name = "WxH")]
    pub grid: String,
    /// Live cells as `x,y;x,y;...`.
    #[arg(long, value_name = "LIST", conflicts_with = "seed")]
    pub alive: Option<String>,
    /// Random start with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Fraction of live cells for a random start.
    #[arg(long, default_value_t = 0.3, requires = "seed")]
    pub density: f64,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    /// Wrap the edges.
    #[arg(long)]
    pub torus: bool,
    /// Print every generation, not just the last.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct SudokuArgs {
    /// Puzzle file; `-` reads standard input.
    #[arg(long, value_name = "FILE")]
    pub grid: PathBuf,
}
