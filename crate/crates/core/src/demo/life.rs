use std::fmt;

use thiserror::Error;

use crate::assets;
use crate::graph::{GraphBuilder, LabeledGraph};
use crate::rewrite::{apply, parse_gml_rules, RuleError, RuleGraph};
use crate::sgm::find_monomorphisms;

pub const ALIVE: &str = "1";
pub const DEAD: &str = "0";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LifeError {
    #[error("grid size must be WxH with positive sides, got `{0}`")]
    Size(String),
    #[error("a torus needs both sides of at least 3")]
    SmallTorus,
    #[error("bad cell `{0}`, expected x,y")]
    Cell(String),
    #[error("cell ({x},{y}) lies outside the grid")]
    OutOfRange { x: usize, y: usize },
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Bounded,
    Torus,
}

/// A Life board as a neighbourhood graph; node `y * width + x` is cell
/// `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LifeGrid {
    pub width: usize,
    pub height: usize,
    pub boundary: Boundary,
    pub graph: LabeledGraph,
}

/// Parses `WxH`.
pub fn parse_size(text: &str) -> Result<(usize, usize), LifeError> {
    let err = || LifeError::Size(text.to_string());
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(err)?;
    let w: usize = w.trim().parse().map_err(|_| err())?;
    let h: usize = h.trim().parse().map_err(|_| err())?;
    if w == 0 || h == 0 {
        return Err(err());
    }
    Ok((w, h))
}

/// Parses `x,y` pairs separated by `;` or whitespace.
pub fn parse_cells(text: &str) -> Result<Vec<(usize, usize)>, LifeError> {
    text.split(|c: char| c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (x, y) = s.split_once(',').ok_or_else(|| LifeError::Cell(s.to_string()))?;
            match (x.trim().parse(), y.trim().parse()) {
                (Ok(x), Ok(y)) => Ok((x, y)),
                _ => Err(LifeError::Cell(s.to_string())),
            }
        })
        .collect()
}

impl LifeGrid {
    pub fn new(width: usize, height: usize, boundary: Boundary, alive: &[(usize, usize)]) -> Result<Self, LifeError> {
        if width == 0 || height == 0 {
            return Err(LifeError::Size(format!("{width}x{height}")));
        }
        if boundary == Boundary::Torus && (width < 3 || height < 3) {
            return Err(LifeError::SmallTorus);
        }
        let mut state = vec![false; width * height];
        for &(x, y) in alive {
            if x >= width || y >= height {
                return Err(LifeError::OutOfRange { x, y });
            }
            state[y * width + x] = true;
        }
        Ok(Self::from_state(width, height, boundary, &state))
    }

    fn from_state(width: usize, height: usize, boundary: Boundary, state: &[bool]) -> Self {
        let mut b = GraphBuilder::with_capacity(width * height);
        for &s in state {
            b.add_node(if s { ALIVE } else { DEAD });
        }
        for y in 0..height {
            for x in 0..width {
                let v = y * width + x;
                for (dx, dy) in [
                    (-1i64, -1i64),
                    (-1, 0),
                    (-1, 1),
                    (0, -1),
                    (0, 1),
                    (1, -1),
                    (1, 0),
                    (1, 1),
                ] {
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    let (nx, ny) = match boundary {
                        Boundary::Torus => (nx.rem_euclid(width as i64), ny.rem_euclid(height as i64)),
                        Boundary::Bounded if nx < 0 || ny < 0 || nx >= width as i64 || ny >= height as i64 => continue,
                        Boundary::Bounded => (nx, ny),
                    };
                    let w = ny as usize * width + nx as usize;
                    if v < w {
                        b.add_edge(v, w, "-").expect("each pair visited once");
                    }
                }
            }
        }
        LifeGrid {
            width,
            height,
            boundary,
            graph: b.build(),
        }
    }

    pub fn is_alive(&self, x: usize, y: usize) -> bool {
        self.graph.label(y * self.width + x) == ALIVE
    }

    pub fn state(&self) -> Vec<bool> {
        self.graph.nodes().map(|v| self.graph.label(v) == ALIVE).collect()
    }

    pub fn alive_cells(&self) -> Vec<(usize, usize)> {
        self.graph
            .nodes()
            .filter(|&v| self.graph.label(v) == ALIVE)
            .map(|v| (v % self.width, v / self.width))
            .collect()
    }
}

impl fmt::Display for LifeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in 0..self.height {
            let row: String = (0..self.width)
                .map(|x| if self.is_alive(x, y) { '#' } else { '.' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

pub fn life_rules() -> Vec<RuleGraph> {
    parse_gml_rules(assets::LIFE).expect("bundled Life rules parse")
}

/// One synchronous generation: every match is found on the current
/// board, then all of them are applied.
pub fn step(grid: &LifeGrid, rules: &[RuleGraph]) -> LifeGrid {
    let mut next = grid.graph.clone();
    for rule in rules {
        for m in find_monomorphisms(&rule.left_pattern(), &grid.graph, None) {
            next = apply(rule, &next, &m).expect("relabeling rules always apply");
        }
    }
    LifeGrid {
        graph: next,
        ..grid.clone()
    }
}

pub fn run(grid: &LifeGrid, rules: &[RuleGraph], steps: usize) -> Vec<LifeGrid> {
    let mut out = vec![grid.clone()];
    for _ in 0..steps {
        let next = step(out.last().expect("non-empty"), rules);
        out.push(next);
    }
    out
}
