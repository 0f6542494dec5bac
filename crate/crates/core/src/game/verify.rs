use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{Arena, EdgeId, Owner, Play, SafetyAutomaton, VertexId};

use super::product::check_alphabets;
use super::strategy::MealyStrategy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `warnings` lists undefined or invalid next moves that are never reached.
    Winning { warnings: Vec<String> },
    /// A shortest consistent play whose colors reach the sink.
    Losing { counterexample: Play },
}

impl Verdict {
    pub fn is_winning(&self) -> bool {
        matches!(self, Verdict::Winning { .. })
    }
}

/// Explores every (vertex, memory, automaton state) triple reachable when Eve
/// follows `strat` and Adam plays arbitrarily. Eve wins iff no reachable
/// triple has a sink automaton component.
pub fn verify_strategy(
    arena: &Arena,
    aut: &SafetyAutomaton,
    strat: &MealyStrategy,
    v0: VertexId,
) -> Result<Verdict> {
    check_alphabets(arena, aut)?;
    strat.check_bound(arena)?;
    if v0 >= arena.num_vertices() {
        return Err(Error::UnknownVertex(format!("#{v0}")));
    }
    let nm = strat.memory_size();
    let nq = aut.num_states();
    let idx = |v: VertexId, m: usize, q: usize| (v * nm + m) * nq + q;
    let start = (v0, strat.memory.initial(), aut.initial());
    if aut.is_sink(start.2) {
        return Ok(Verdict::Losing { counterexample: Play { start: v0, edges: Vec::new() } });
    }
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; arena.num_vertices() * nm * nq];
    let mut seen = vec![false; parent.len()];
    let mut eve_reached = vec![false; arena.num_vertices() * nm];
    seen[idx(start.0, start.1, start.2)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some((v, m, q)) = queue.pop_front() {
        let here = idx(v, m, q);
        let moves: Vec<EdgeId> = match arena.owner(v) {
            Owner::Eve => {
                eve_reached[v * nm + m] = true;
                match strat.next(v, m) {
                    Some(e) if arena.edge(e).src == v => vec![e],
                    Some(_) => {
                        return Err(Error::MalformedStrategy(format!(
                            "next move at ({}, {}) does not leave {}",
                            arena.id(v),
                            strat.memory.name(m),
                            arena.id(v)
                        )))
                    }
                    None => {
                        return Err(Error::MalformedStrategy(format!(
                            "next move undefined at reachable ({}, {})",
                            arena.id(v),
                            strat.memory.name(m)
                        )))
                    }
                }
            }
            Owner::Adam => arena.out_edges(v).to_vec(),
        };
        for e in moves {
            let edge = arena.edge(e);
            let m2 = strat.memory.update(m, e);
            let q2 = aut.next(q, edge.color);
            if aut.is_sink(q2) {
                let mut edges = vec![e];
                let mut at = here;
                while let Some((from, e)) = parent[at] {
                    edges.push(e);
                    at = from;
                }
                edges.reverse();
                return Ok(Verdict::Losing { counterexample: Play { start: v0, edges } });
            }
            let there = idx(edge.dst, m2, q2);
            if !seen[there] {
                seen[there] = true;
                parent[there] = Some((here, e));
                queue.push_back((edge.dst, m2, q2));
            }
        }
    }
    let mut warnings = Vec::new();
    for v in arena.eve_vertices() {
        for m in 0..nm {
            if eve_reached[v * nm + m] {
                continue;
            }
            match strat.next(v, m) {
                None => warnings.push(format!("unreachable ({}, {}) has no next move", arena.id(v), strat.memory.name(m))),
                Some(e) if arena.edge(e).src != v => {
                    warnings.push(format!("unreachable ({}, {}) has an invalid next move", arena.id(v), strat.memory.name(m)))
                }
                _ => {}
            }
        }
    }
    Ok(Verdict::Winning { warnings })
}
