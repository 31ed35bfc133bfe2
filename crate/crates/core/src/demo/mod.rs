//! Non-chemical rewrite examples: Game of Life, Sudoku and Y-Δ
//! equivalence.

pub mod life;
pub mod sudoku;
pub mod ydelta;
