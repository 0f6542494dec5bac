use crate::error::{Error, Result};
use crate::game::winning_pairs;
use crate::model::{Arena, SafetyAutomaton, VertexId};
use crate::residual::{build_poset, ResidualId, WidthCertificate};

use super::{assemble, LabelKind, SynthesisResult};

/// Chain-cover synthesis. Memory state `i` tracks chain `i` of the
/// certificate, restricted at each vertex `v` to the residuals winning at
/// `v` (an upper segment, as winning residuals are upward closed). Eve plays
/// an edge good for the least element of that segment, which is then good
/// for the whole segment; the update moves to the chain containing the image
/// of that least element. The chain holding the objective itself comes first.
pub fn synthesize_chain_cover(
    arena: &Arena,
    min_aut: &SafetyAutomaton,
    v0: VertexId,
    cert: &WidthCertificate,
) -> Result<SynthesisResult> {
    let poset = build_poset(min_aut)?;
    cert.check(&poset)?;
    let wins = winning_pairs(arena, min_aut)?;
    let initial = poset.initial();
    if !wins.contains(v0, poset.as_state(initial)) {
        return Err(Error::NotWinning(arena.id(v0).to_string()));
    }
    let mut chains: Vec<&Vec<ResidualId>> = cert.chains.iter().collect();
    let home = cert.chain_of(initial).ok_or_else(|| Error::Internal("objective not covered".into()))?;
    chains.swap(0, home);
    let mut chain_of = vec![0; poset.len()];
    for (i, c) in chains.iter().enumerate() {
        for &r in c.iter() {
            chain_of[r] = i;
        }
    }
    let size = chains.len();
    let mut labels = vec![None; arena.num_vertices() * size];
    for v in 0..arena.num_vertices() {
        for (i, c) in chains.iter().enumerate() {
            labels[v * size + i] = c.iter().copied().find(|&r| wins.contains(v, poset.as_state(r)));
        }
    }
    assemble(arena, &poset, &wins, v0, size, labels, LabelKind::ChainMinimum, |_, l| Some(chain_of[l]))
}
