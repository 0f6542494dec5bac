use crate::error::{Error, Result};
use crate::model::{Arena, EdgeId, Owner, SafetyAutomaton, StateId, VertexId};

use super::product::build_residual_product;

/// Winning region of a safety condition and a positional winning strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetySolution {
    pub winning: Vec<bool>,
    /// For Eve vertices in the region, the first edge (in arena order) that
    /// is not bad and stays in the region.
    pub strategy: Vec<Option<EdgeId>>,
}

fn check_bad(arena: &Arena, bad: &[bool]) -> Result<()> {
    if bad.len() != arena.num_edges() {
        return Err(Error::Invalid(format!(
            "bad-edge set has {} entries for {} edges",
            bad.len(),
            arena.num_edges()
        )));
    }
    Ok(())
}

/// One refinement step of the safety fixpoint: the vertices of `region` from
/// which Eve can (or Adam must) take a non-bad edge back into `region`.
pub fn safe_predecessor(arena: &Arena, bad: &[bool], region: &[bool]) -> Vec<bool> {
    let good = |e: EdgeId| !bad[e] && region[arena.edge(e).dst];
    (0..arena.num_vertices())
        .map(|v| {
            region[v]
                && match arena.owner(v) {
                    Owner::Eve => arena.out_edges(v).iter().any(|&e| good(e)),
                    Owner::Adam => arena.out_edges(v).iter().all(|&e| good(e)),
                }
        })
        .collect()
}

/// Greatest fixpoint of [`safe_predecessor`] by worklist deletion: losing
/// vertices are removed one at a time and their predecessors re-examined.
pub fn solve_safety(arena: &Arena, bad: &[bool]) -> Result<SafetySolution> {
    check_bad(arena, bad)?;
    let n = arena.num_vertices();
    let preds = arena.in_edges();
    let mut winning = vec![true; n];
    // Eve: number of non-bad edges into the current region
    let mut good_out = vec![0usize; n];
    let mut queue = Vec::new();
    for v in 0..n {
        let out = arena.out_edges(v);
        let lost = match arena.owner(v) {
            Owner::Eve => {
                good_out[v] = out.iter().filter(|&&e| !bad[e]).count();
                good_out[v] == 0
            }
            Owner::Adam => out.iter().any(|&e| bad[e]),
        };
        if lost {
            winning[v] = false;
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &e in &preds[v] {
            if bad[e] {
                continue;
            }
            let u = arena.edge(e).src;
            if !winning[u] {
                continue;
            }
            let lost = match arena.owner(u) {
                Owner::Adam => true,
                Owner::Eve => {
                    good_out[u] -= 1;
                    good_out[u] == 0
                }
            };
            if lost {
                winning[u] = false;
                queue.push(u);
            }
        }
    }
    let strategy = (0..n)
        .map(|v| {
            (winning[v] && arena.owner(v) == Owner::Eve).then(|| {
                arena
                    .out_edges(v)
                    .iter()
                    .copied()
                    .find(|&e| !bad[e] && winning[arena.edge(e).dst])
                    .expect("winning Eve vertices keep an edge into the region")
            })
        })
        .collect();
    Ok(SafetySolution { winning, strategy })
}

/// The pairs `(v, q)`, `q` a non-sink automaton state, from which Eve wins
/// the residual product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningPairs {
    num_states: usize,
    sink: Vec<bool>,
    table: Vec<bool>,
}

impl WinningPairs {
    pub fn contains(&self, v: VertexId, q: StateId) -> bool {
        !self.sink[q] && self.table[v * self.num_states + q]
    }

    /// Winning non-sink states at `v`, in state order.
    pub fn at(&self, v: VertexId) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states).filter(move |&q| self.contains(v, q))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, StateId)> + '_ {
        let nv = self.table.len() / self.num_states.max(1);
        (0..nv).flat_map(move |v| self.at(v).map(move |q| (v, q)))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }
}

pub fn winning_pairs(arena: &Arena, min_aut: &SafetyAutomaton) -> Result<WinningPairs> {
    let product = build_residual_product(arena, min_aut)?;
    let sol = solve_safety(&product.arena, &product.bad)?;
    Ok(WinningPairs {
        num_states: min_aut.num_states(),
        sink: min_aut.sink_flags().to_vec(),
        table: sol.winning,
    })
}
