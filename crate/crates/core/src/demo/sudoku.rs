use std::fmt;

use thiserror::Error;

use crate::graph::{GraphBuilder, LabeledGraph};
use crate::rewrite::{parse_gml_rule, Explorer, RuleGraph, Strategy, Successor};

pub const EMPTY: &str = "_";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SudokuError {
    #[error("expected 81 cells, found {0}")]
    CellCount(usize),
    #[error("unexpected character `{0}`")]
    Char(char),
}

/// A 9x9 board, row-major, 0 for an empty cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board(pub [u8; 81]);

impl Board {
    /// Digits 1-9 are givens; `.`, `0` and `_` are empty; whitespace and
    /// `|`, `-`, `+` separators are ignored.
    pub fn parse(text: &str) -> Result<Board, SudokuError> {
        let mut cells = Vec::with_capacity(81);
        for c in text.chars() {
            match c {
                '1'..='9' => cells.push(c as u8 - b'0'),
                '.' | '0' | '_' => cells.push(0),
                '|' | '-' | '+' => {}
                c if c.is_whitespace() => {}
                c => return Err(SudokuError::Char(c)),
            }
        }
        let n = cells.len();
        let cells: [u8; 81] = cells.try_into().map_err(|_| SudokuError::CellCount(n))?;
        Ok(Board(cells))
    }

    pub fn empty_cells(&self) -> usize {
        self.0.iter().filter(|&&c| c == 0).count()
    }

    /// The dependency graph: one node per cell, edges between cells that
    /// share a row, column or box.
    pub fn to_graph(&self) -> LabeledGraph {
        let mut b = GraphBuilder::with_capacity(81);
        for &c in &self.0 {
            if c == 0 {
                b.add_node(EMPTY);
            } else {
                b.add_node(c.to_string());
            }
        }
        for u in 0..81 {
            for v in u + 1..81 {
                if peers(u, v) {
                    b.add_edge(u, v, "-").expect("simple");
                }
            }
        }
        b.build()
    }

    pub fn from_graph(g: &LabeledGraph) -> Board {
        let mut cells = [0u8; 81];
        for (v, c) in cells.iter_mut().enumerate() {
            *c = g.label(v).parse().unwrap_or(0);
        }
        Board(cells)
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.0.chunks(9) {
            let line: String = row
                .iter()
                .map(|&c| if c == 0 { '.' } else { (b'0' + c) as char })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn peers(u: usize, v: usize) -> bool {
    let (ru, cu, rv, cv) = (u / 9, u % 9, v / 9, v % 9);
    ru == rv || cu == cv || (ru / 3 == rv / 3 && cu / 3 == cv / 3)
}

/// One rule per digit: an empty cell takes the digit unless a neighbour
/// already holds it.
pub fn assignment_rules() -> Vec<RuleGraph> {
    (1..=9)
        .map(|d| {
            let text = format!(
                r#"rule [
  ruleID "assign {d}"
  left [
    node [ id 1 label "{EMPTY}" ]
    constrainAdj [ id 1 op = count 0 nodeLabels [ label "{d}" ] ]
  ]
  right [
    node [ id 1 label "{d}" ]
  ]
]"#
            );
            parse_gml_rule(&text).expect("generated rule parses")
        })
        .collect()
}

fn state_key(g: &LabeledGraph) -> String {
    g.labels().iter().map(|l| l.as_str()).collect()
}

/// Keeps only the moves for the empty cell with the fewest options; no
/// moves at all when some empty cell has none.
fn most_constrained(g: &LabeledGraph, succ: Vec<Successor>) -> Vec<Successor> {
    let mut options = vec![0usize; g.node_count()];
    for s in &succ {
        options[s.m.image(0)] += 1;
    }
    let best = g
        .nodes()
        .filter(|&v| g.label(v) == EMPTY)
        .min_by_key(|&v| (options[v], v));
    match best {
        Some(v) if options[v] > 0 => succ.into_iter().filter(|s| s.m.image(0) == v).collect(),
        _ => Vec::new(),
    }
}

/// Depth-first search over the assignment rules.
pub fn solve(board: &Board) -> Option<Board> {
    let rules = assignment_rules();
    let start = board.to_graph();
    // givens that already clash cannot be repaired by assignments
    if start
        .edges()
        .iter()
        .any(|e| start.label(e.a) != EMPTY && start.label(e.a) == start.label(e.b))
    {
        return None;
    }
    let explorer = Explorer::new(&rules, Strategy::Dfs, board.empty_cells(), state_key)
        .goal(|g| g.labels().iter().all(|l| l != EMPTY))
        .select(most_constrained);
    let path = explorer.run(&[start]).solution?;
    path.last().map(Board::from_graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOLVED: &str = "534678912672195348198342567859761423426853791713924856961537284287419635345286179";

    #[test]
    fn one_empty_cell() {
        let mut b = Board::parse(SOLVED).unwrap();
        b.0[40] = 0;
        let s = solve(&b).unwrap();
        assert_eq!(s, Board::parse(SOLVED).unwrap());
    }

    #[test]
    fn graph_shape() {
        let g = Board::parse(SOLVED).unwrap().to_graph();
        assert_eq!(g.node_count(), 81);
        assert!(g.nodes().all(|v| g.degree(v) == 20));
        assert_eq!(g.edge_count(), 810);
    }

    #[test]
    fn contradictions() {
        let mut b = Board::parse(SOLVED).unwrap();
        b.0[0] = 3;
        assert_eq!(solve(&b), None);
        assert_eq!(Board::parse("123"), Err(SudokuError::CellCount(3)));
        assert_eq!(Board::parse("x"), Err(SudokuError::Char('x')));
    }
}
