//! Memory requirements of safety objectives in two-player games on graphs.
//!
//! A safety objective is given as a deterministic automaton with an absorbing
//! sink. Its non-empty residuals, ordered by inclusion, form a finite poset;
//! the width of that poset is exactly the number of memory states Eve needs to
//! win every game with this objective. The crate computes the poset and its
//! width with Dilworth certificates, synthesizes strategies using at most that
//! many memory states, builds games where that many states are necessary, and
//! checks strategies exhaustively.

pub mod dot;
pub mod error;
pub mod exec;
pub mod format;
pub mod game;
pub mod generators;
pub mod model;
pub mod residual;
pub mod synthesis;

pub use error::{Error, Result};
pub use exec::Exec;
