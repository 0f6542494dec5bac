//! Residual languages of a safety objective: minimization, inclusion with
//! lasso counterexamples, the inclusion poset, its width and chain cover.

mod inclusion;
mod minimize;
mod poset;
mod width;

pub use inclusion::{residual_included, Inclusion};
pub use minimize::minimize;
pub use poset::{build_poset, build_poset_with, ResidualId, ResidualPoset};
pub use width::{
    poset_width, poset_width_with, width_bruteforce, width_bruteforce_bounded, Separator, WidthCertificate,
    DEFAULT_BRUTEFORCE_BOUND,
};
