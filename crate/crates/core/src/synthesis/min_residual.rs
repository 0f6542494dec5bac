use crate::error::{Error, Result};
use crate::game::winning_pairs;
use crate::model::{Arena, SafetyAutomaton, VertexId};
use crate::residual::{build_poset, ResidualId};

use super::{assemble, LabelKind, SynthesisResult};

/// Memory state `i` at vertex `v` stands for the `i`-th minimal residual `L`
/// such that `(v, L)` is winning. These form an antichain, so there are at
/// most width-many. At `v0` the first one is chosen below the objective
/// itself; updates move to the least `j` with `L_j(v') ⊆ L_i(v)·c`, and Eve
/// plays the first edge keeping `(v', L_i(v)·c)` winning.
pub fn synthesize_min_residual(arena: &Arena, min_aut: &SafetyAutomaton, v0: VertexId) -> Result<SynthesisResult> {
    let poset = build_poset(min_aut)?;
    let wins = winning_pairs(arena, min_aut)?;
    let initial = poset.initial();
    if !wins.contains(v0, poset.as_state(initial)) {
        return Err(Error::NotWinning(arena.id(v0).to_string()));
    }
    let winning_at = |v: VertexId| -> Vec<ResidualId> {
        poset.residuals().filter(|&r| wins.contains(v, poset.as_state(r))).collect()
    };
    let mut minimal: Vec<Vec<ResidualId>> = (0..arena.num_vertices())
        .map(|v| {
            let w = winning_at(v);
            w.iter().copied().filter(|&r| !w.iter().any(|&s| poset.lt(s, r))).collect()
        })
        .collect();
    let first = minimal[v0]
        .iter()
        .position(|&r| poset.leq(r, initial))
        .ok_or_else(|| Error::Internal("no minimal winning residual below the objective".into()))?;
    minimal[v0].swap(0, first);
    let size = minimal.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let mut labels = vec![None; arena.num_vertices() * size];
    for (v, ms) in minimal.iter().enumerate() {
        for (i, &r) in ms.iter().enumerate() {
            labels[v * size + i] = Some(r);
        }
    }
    assemble(arena, &poset, &wins, v0, size, labels, LabelKind::MinimalResidual, |dst, l| {
        minimal[dst].iter().position(|&r| poset.leq(r, l))
    })
}
