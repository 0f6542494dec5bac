use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::exec::{find_first, Exec};
use crate::game::{winning_pairs, WinningPairs};
use crate::model::{Arena, EdgeId, Owner, SafetyAutomaton, StateId, VertexId};

/// Limits for [`minimal_memory_bruteforce_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteforceBudget {
    /// Upper bound on `|V| · |E| · max_m`.
    pub max_instance: usize,
    /// Search nodes allowed per memory size.
    pub max_nodes: u64,
}

impl Default for BruteforceBudget {
    fn default() -> Self {
        BruteforceBudget { max_instance: 1_000_000, max_nodes: 20_000_000 }
    }
}

/// Least `m <= max_m` such that some `m`-state Mealy strategy (edge-driven
/// memory) wins from `v0`, or `None` if there is none.
pub fn minimal_memory_bruteforce(
    arena: &Arena,
    min_aut: &SafetyAutomaton,
    v0: VertexId,
    max_m: usize,
) -> Result<Option<usize>> {
    minimal_memory_bruteforce_with(arena, min_aut, v0, max_m, BruteforceBudget::default(), Exec::default())
}

/// Exhaustive search over partial strategies, assigning next moves and memory
/// updates lazily as the explored (vertex, memory, state) triples demand them.
///
/// Pruning, all exact: a branch fails as soon as it reaches a pair losing in
/// the residual product; memory is ignored below vertices that cannot reach
/// an Eve vertex; memory states are introduced in order, so relabelings are
/// explored once. The branches of the first decision run according to `exec`.
pub fn minimal_memory_bruteforce_with(
    arena: &Arena,
    min_aut: &SafetyAutomaton,
    v0: VertexId,
    max_m: usize,
    budget: BruteforceBudget,
    exec: Exec,
) -> Result<Option<usize>> {
    let size = arena.num_vertices().saturating_mul(arena.num_edges()).saturating_mul(max_m);
    if size > budget.max_instance {
        return Err(Error::BudgetExceeded(format!(
            "|V|·|E|·max_m = {size} exceeds {}",
            budget.max_instance
        )));
    }
    if v0 >= arena.num_vertices() {
        return Err(Error::UnknownVertex(format!("#{v0}")));
    }
    let wins = winning_pairs(arena, min_aut)?;
    if !wins.contains(v0, min_aut.initial()) {
        return Ok(None);
    }
    let ctx = Ctx { arena, aut: min_aut, wins: &wins, reaches_eve: arena.reaches_eve(), v0 };
    for m in 1..=max_m {
        let nodes = AtomicU64::new(0);
        if ctx.exists(m, &nodes, budget.max_nodes, exec)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

struct Ctx<'a> {
    arena: &'a Arena,
    aut: &'a SafetyAutomaton,
    wins: &'a WinningPairs,
    reaches_eve: Vec<bool>,
    v0: VertexId,
}

#[derive(Clone)]
struct Partial {
    m: usize,
    next: Vec<Option<EdgeId>>,
    update: Vec<Option<usize>>,
    used: usize,
}

enum Decision {
    Next { v: VertexId, mem: usize, q: StateId },
    Update { mem: usize, e: EdgeId },
}

enum Closure {
    Lost,
    Done,
    Open(Decision),
}

impl Ctx<'_> {
    fn exists(&self, m: usize, nodes: &AtomicU64, max_nodes: u64, exec: Exec) -> Result<bool> {
        let root = Partial {
            m,
            next: vec![None; self.arena.num_vertices() * m],
            update: vec![None; m * self.arena.num_edges()],
            used: 1,
        };
        let decision = match self.closure(&root) {
            Closure::Lost => return Ok(false),
            Closure::Done => return Ok(true),
            Closure::Open(d) => d,
        };
        let branches = self.branches(&root, &decision);
        let found = find_first(exec, branches.len(), |b| match self.search(branches[b].clone(), nodes, max_nodes) {
            Ok(true) => Some(Ok(())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        });
        match found {
            None => Ok(false),
            Some(Ok(())) => Ok(true),
            Some(Err(e)) => Err(e),
        }
    }

    fn search(&self, p: Partial, nodes: &AtomicU64, max_nodes: u64) -> Result<bool> {
        if nodes.fetch_add(1, Ordering::Relaxed) >= max_nodes {
            return Err(Error::BudgetExceeded(format!("more than {max_nodes} search nodes")));
        }
        match self.closure(&p) {
            Closure::Lost => Ok(false),
            Closure::Done => Ok(true),
            Closure::Open(d) => {
                for child in self.branches(&p, &d) {
                    if self.search(child, nodes, max_nodes)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn branches(&self, p: &Partial, d: &Decision) -> Vec<Partial> {
        match *d {
            Decision::Next { v, mem, q } => self
                .arena
                .out_edges(v)
                .iter()
                .copied()
                .filter(|&e| {
                    let edge = self.arena.edge(e);
                    self.wins.contains(edge.dst, self.aut.next(q, edge.color))
                })
                .map(|e| {
                    let mut c = p.clone();
                    c.next[v * p.m + mem] = Some(e);
                    c
                })
                .collect(),
            Decision::Update { mem, e } => (0..p.m.min(p.used + 1))
                .map(|j| {
                    let mut c = p.clone();
                    c.update[mem * self.arena.num_edges() + e] = Some(j);
                    c.used = c.used.max(j + 1);
                    c
                })
                .collect(),
        }
    }

    /// Explores the triples reachable under the partial assignment and
    /// reports the first missing decision in breadth-first order.
    fn closure(&self, p: &Partial) -> Closure {
        let (arena, aut) = (self.arena, self.aut);
        let nq = aut.num_states();
        let idx = |v: VertexId, mem: usize, q: StateId| (v * p.m + mem) * nq + q;
        let mut seen = vec![false; arena.num_vertices() * p.m * nq];
        let start = (self.v0, 0, aut.initial());
        seen[idx(start.0, start.1, start.2)] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some((v, mem, q)) = queue.pop_front() {
            if !self.wins.contains(v, q) {
                return Closure::Lost;
            }
            if !self.reaches_eve[v] {
                continue;
            }
            let single;
            let moves: &[EdgeId] = match arena.owner(v) {
                Owner::Eve => match p.next[v * p.m + mem] {
                    Some(e) => {
                        single = [e];
                        &single
                    }
                    None => return Closure::Open(Decision::Next { v, mem, q }),
                },
                Owner::Adam => arena.out_edges(v),
            };
            for &e in moves {
                let edge = arena.edge(e);
                let q2 = aut.next(q, edge.color);
                if !self.wins.contains(edge.dst, q2) {
                    return Closure::Lost;
                }
                if !self.reaches_eve[edge.dst] {
                    continue;
                }
                let Some(mem2) = p.update[mem * arena.num_edges() + e] else {
                    return Closure::Open(Decision::Update { mem, e });
                };
                let t = idx(edge.dst, mem2, q2);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back((edge.dst, mem2, q2));
                }
            }
        }
        Closure::Done
    }
}
