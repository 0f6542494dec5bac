//! Strategy synthesis with at most width-many memory states, and a
//! brute-force search for the least memory that suffices.

mod bruteforce;
mod chain_cover;
mod min_residual;

pub use bruteforce::{minimal_memory_bruteforce, minimal_memory_bruteforce_with, BruteforceBudget};
pub use chain_cover::synthesize_chain_cover;
pub use min_residual::synthesize_min_residual;

use crate::error::{Error, Result};
use crate::game::{verify_strategy, MealyStrategy, MemoryStructure, WinningPairs};
use crate::model::{Arena, VertexId};
use crate::residual::{ResidualId, ResidualPoset};

/// How `labels` should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind {
    /// `labels[(v, i)]` is the minimal winning residual `L_i(v)`.
    MinimalResidual,
    /// `labels[(v, i)]` is the least residual of chain `i` that wins at `v`.
    ChainMinimum,
}

/// A verified strategy with its per-vertex memory semantics.
#[derive(Clone, Debug)]
pub struct SynthesisResult {
    pub strategy: MealyStrategy,
    pub memory_size: usize,
    pub kind: LabelKind,
    // labels[v * memory_size + i]; None marks (v, i) pairs no play can reach
    labels: Vec<Option<ResidualId>>,
}

impl SynthesisResult {
    /// The residual that memory state `i` stands for at `v`, if any. Along
    /// every consistent play it is included in the current residual.
    pub fn label(&self, v: VertexId, i: usize) -> Option<ResidualId> {
        self.labels[v * self.memory_size + i]
    }

    pub fn labels(&self) -> impl Iterator<Item = (VertexId, usize, ResidualId)> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter_map(move |(x, l)| l.map(|r| (x / self.memory_size, x % self.memory_size, r)))
    }
}

/// Shared construction of the two algorithms.
///
/// `labels` gives, per vertex, the residual each memory index stands for;
/// `pick(v', L')` chooses the memory index to move to when the play enters
/// `v'` and the tracked residual becomes `L'`. Moves and updates with no
/// meaningful choice (unlabelled pairs, losing successors) default to the
/// first edge and to keeping the memory state.
fn assemble<F>(
    arena: &Arena,
    poset: &ResidualPoset,
    wins: &WinningPairs,
    v0: VertexId,
    size: usize,
    labels: Vec<Option<ResidualId>>,
    kind: LabelKind,
    pick: F,
) -> Result<SynthesisResult>
where
    F: Fn(VertexId, ResidualId) -> Option<usize>,
{
    let ne = arena.num_edges();
    let label = |v: VertexId, i: usize| labels[v * size + i];
    let advance = |i: usize, e: usize| -> Option<(VertexId, ResidualId)> {
        let edge = arena.edge(e);
        let l = label(edge.src, i)?;
        let next = poset.step(l, edge.color)?;
        wins.contains(edge.dst, poset.as_state(next)).then_some((edge.dst, next))
    };
    let mut update = vec![0; size * ne];
    for i in 0..size {
        for e in 0..ne {
            update[i * ne + e] = advance(i, e).and_then(|(dst, l)| pick(dst, l)).unwrap_or(i);
        }
    }
    let mut next = vec![None; arena.num_vertices() * size];
    for v in arena.eve_vertices() {
        for i in 0..size {
            let good = arena.out_edges(v).iter().copied().find(|&e| advance(i, e).is_some());
            if label(v, i).is_some() && good.is_none() {
                return Err(Error::Internal(format!("no good edge at winning ({}, {i})", arena.id(v))));
            }
            next[v * size + i] = good.or_else(|| arena.out_edges(v).first().copied());
        }
    }
    let strategy = MealyStrategy::new(MemoryStructure::numbered(size, ne, update)?, next)?;
    if !verify_strategy(arena, poset.automaton(), &strategy, v0)?.is_winning() {
        return Err(Error::Internal("synthesized strategy does not verify".into()));
    }
    Ok(SynthesisResult { strategy, memory_size: size, kind, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_energy, gen_figure1, gen_generalized_safety, gen_lower_bound_game};
    use crate::model::Symbol;
    use crate::residual::{build_poset, minimize, poset_width};

    #[test]
    fn figure1_memory_tracks_the_first_letter() {
        let fig = gen_figure1().unwrap();
        let aut = minimize(&fig.objective).unwrap();
        let res = synthesize_min_residual(&fig.arena, &aut, fig.v0).unwrap();
        assert_eq!(res.memory_size, 2);
        let poset = build_poset(&aut).unwrap();
        let v1 = fig.arena.vertex("v1").unwrap();
        let seen = |m: usize| poset.name(res.label(v1, m).unwrap()).to_string();
        let (x, y) = (seen(0), seen(1));
        assert_eq!([x.as_str(), y.as_str()].iter().filter(|n| ["a", "b"].contains(n)).count(), 2);
        assert_ne!(x, y);
    }

    #[test]
    fn chain_objectives_need_no_memory() {
        let aut = minimize(&gen_energy(4, 2).unwrap()).unwrap();
        let mut b = Arena::builder(aut.alphabet().clone());
        let v = b.add_vertex("v", crate::model::Owner::Eve).unwrap();
        let w = b.add_vertex("w", crate::model::Owner::Adam).unwrap();
        b.add_edge(v, w, Symbol(0)).unwrap();
        b.add_edge(v, w, Symbol(1)).unwrap();
        b.add_edge(w, v, Symbol(1)).unwrap();
        let arena = b.build().unwrap();
        assert_eq!(synthesize_min_residual(&arena, &aut, v).unwrap().memory_size, 1);
        let cert = poset_width(&build_poset(&aut).unwrap()).unwrap();
        assert_eq!(synthesize_chain_cover(&arena, &aut, v, &cert).unwrap().memory_size, 1);
    }

    #[test]
    fn lower_bound_game_of_three_colors() {
        let game = gen_lower_bound_game(&gen_generalized_safety(3).unwrap()).unwrap();
        let aut = &game.objective;
        let res = synthesize_min_residual(&game.arena, aut, game.v0).unwrap();
        assert_eq!(res.memory_size, 3);
        let cert = poset_width(&build_poset(aut).unwrap()).unwrap();
        assert_eq!(synthesize_chain_cover(&game.arena, aut, game.v0, &cert).unwrap().memory_size, 3);
        assert_eq!(minimal_memory_bruteforce(&game.arena, aut, game.v0, 4).unwrap(), Some(3));
    }

    #[test]
    fn losing_start_is_reported() {
        let aut = minimize(&gen_energy(0, 0).unwrap()).unwrap();
        let mut b = Arena::builder(aut.alphabet().clone());
        let v = b.add_vertex("v", crate::model::Owner::Eve).unwrap();
        b.add_edge(v, v, Symbol(1)).unwrap();
        let arena = b.build().unwrap();
        assert!(matches!(synthesize_min_residual(&arena, &aut, v), Err(Error::NotWinning(_))));
        assert_eq!(minimal_memory_bruteforce(&arena, &aut, v, 2).unwrap(), None);
    }

    #[test]
    fn bruteforce_respects_the_instance_guard() {
        let fig = gen_figure1().unwrap();
        let aut = minimize(&fig.objective).unwrap();
        assert_eq!(minimal_memory_bruteforce(&fig.arena, &aut, fig.v0, 3).unwrap(), Some(2));
        assert_eq!(minimal_memory_bruteforce(&fig.arena, &aut, fig.v0, 1).unwrap(), None);
        let tight = BruteforceBudget { max_instance: 10, ..BruteforceBudget::default() };
        let r = minimal_memory_bruteforce_with(&fig.arena, &aut, fig.v0, 3, tight, crate::Exec::Sequential);
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }
}
