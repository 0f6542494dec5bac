//! Alphabets, arenas, safety automata, words, lassos and plays.

mod alphabet;
mod arena;
mod automaton;
mod validate;
mod word;

pub use alphabet::{Alphabet, Symbol, Word};
pub use arena::{Arena, ArenaBuilder, Edge, EdgeId, Owner, VertexId};
pub use automaton::{Safety, SafetyAutomaton, StateId};
pub use validate::{validate_arena, validate_automaton, ValidationReport, Violation};
pub use word::{Lasso, Play};
