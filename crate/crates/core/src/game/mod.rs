//! Expanded arenas, positional safety solving, winning (vertex, residual)
//! pairs, Mealy strategies and their exhaustive verification.

mod product;
mod safety;
mod strategy;
mod verify;

pub use product::{build_residual_product, check_alphabets, ProductGame};
pub use safety::{safe_predecessor, solve_safety, winning_pairs, SafetySolution, WinningPairs};
pub use strategy::{MealyStrategy, MemorySpec, MemoryStructure, NextSpec, StrategySpec, UpdateSpec};
pub use verify::{verify_strategy, Verdict};
