//! Objective families from the literature on safety games, and the
//! lower-bound game construction.

mod families;
mod lower_bound;

pub use families::{
    gen_counter, gen_energy, gen_figure1, gen_generalized_safety, gen_outbidding, CounterAction, Figure1,
    MAX_GENSAFETY_COLORS, MAX_OUTBIDDING,
};
pub use lower_bound::{gen_lower_bound_game, LowerBoundGame};
