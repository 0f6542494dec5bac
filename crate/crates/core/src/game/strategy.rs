use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Arena, EdgeId, Owner, VertexId};

/// Memory states with an edge-driven update, bound to one arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryStructure {
    names: Vec<String>,
    initial: usize,
    num_edges: usize,
    // update[m * num_edges + e]
    update: Vec<usize>,
}

impl MemoryStructure {
    pub fn new(names: Vec<String>, initial: usize, num_edges: usize, update: Vec<usize>) -> Result<Self> {
        let m = names.len();
        if m == 0 || initial >= m {
            return Err(Error::MalformedStrategy("memory needs states and a valid initial state".into()));
        }
        if update.len() != m * num_edges || update.iter().any(|&t| t >= m) {
            return Err(Error::MalformedStrategy("memory update is not a total function".into()));
        }
        Ok(MemoryStructure { names, initial, num_edges, update })
    }

    /// Memory states `1..=size` (by name), starting in the first one.
    pub fn numbered(size: usize, num_edges: usize, update: Vec<usize>) -> Result<Self> {
        Self::new((1..=size).map(|i| i.to_string()).collect(), 0, num_edges, update)
    }

    /// The single-state memory of positional strategies.
    pub fn trivial(num_edges: usize) -> Self {
        MemoryStructure { names: vec!["1".into()], initial: 0, num_edges, update: vec![0; num_edges] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn name(&self, m: usize) -> &str {
        &self.names[m]
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    #[inline]
    pub fn update(&self, m: usize, e: EdgeId) -> usize {
        self.update[m * self.num_edges + e]
    }
}

/// Finite-memory strategy for Eve: a memory structure and a next-move table
/// on (Eve vertex, memory state).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyStrategy {
    pub memory: MemoryStructure,
    // next[v * |M| + m]
    next: Vec<Option<EdgeId>>,
}

impl MealyStrategy {
    /// `next` is indexed `v * memory.len() + m`; `None` marks undefined moves.
    pub fn new(memory: MemoryStructure, next: Vec<Option<EdgeId>>) -> Result<Self> {
        if next.len() % memory.len() != 0 {
            return Err(Error::MalformedStrategy("next-move table has the wrong size".into()));
        }
        Ok(MealyStrategy { memory, next })
    }

    /// Memoryless strategy from one edge choice per vertex.
    pub fn positional(arena: &Arena, choice: &[Option<EdgeId>]) -> Result<Self> {
        if choice.len() != arena.num_vertices() {
            return Err(Error::MalformedStrategy("one choice per vertex expected".into()));
        }
        Self::new(MemoryStructure::trivial(arena.num_edges()), choice.to_vec())
    }

    pub fn next(&self, v: VertexId, m: usize) -> Option<EdgeId> {
        self.next.get(v * self.memory.len() + m).copied().flatten()
    }

    pub fn num_vertices(&self) -> usize {
        self.next.len() / self.memory.len()
    }

    pub fn memory_size(&self) -> usize {
        self.memory.len()
    }

    pub fn check_bound(&self, arena: &Arena) -> Result<()> {
        if self.memory.num_edges() != arena.num_edges() || self.num_vertices() != arena.num_vertices() {
            return Err(Error::MalformedStrategy("strategy is bound to a different arena".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategySpec {
    pub memory: MemorySpec,
    pub next: Vec<NextSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemorySpec {
    pub states: Vec<String>,
    pub initial: String,
    pub update: Vec<UpdateSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpdateSpec {
    pub m: String,
    pub src: String,
    pub dst: String,
    pub color: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NextSpec {
    pub vertex: String,
    pub m: String,
    pub src: String,
    pub dst: String,
    pub color: String,
}

impl StrategySpec {
    /// Full update table and the defined next moves of Eve vertices.
    pub fn from_strategy(arena: &Arena, strat: &MealyStrategy) -> Self {
        let al = arena.alphabet();
        let mem = &strat.memory;
        let mut update = Vec::with_capacity(mem.len() * arena.num_edges());
        for m in 0..mem.len() {
            for (e, edge) in arena.edges().iter().enumerate() {
                update.push(UpdateSpec {
                    m: mem.name(m).to_string(),
                    src: arena.id(edge.src).to_string(),
                    dst: arena.id(edge.dst).to_string(),
                    color: al.name(edge.color).to_string(),
                    to: mem.name(mem.update(m, e)).to_string(),
                });
            }
        }
        let mut next = Vec::new();
        for v in arena.eve_vertices() {
            for m in 0..mem.len() {
                if let Some(e) = strat.next(v, m) {
                    let edge = arena.edge(e);
                    next.push(NextSpec {
                        vertex: arena.id(v).to_string(),
                        m: mem.name(m).to_string(),
                        src: arena.id(edge.src).to_string(),
                        dst: arena.id(edge.dst).to_string(),
                        color: al.name(edge.color).to_string(),
                    });
                }
            }
        }
        StrategySpec {
            memory: MemorySpec { states: mem.names.clone(), initial: mem.name(mem.initial()).to_string(), update },
            next,
        }
    }

    pub fn to_strategy(&self, arena: &Arena) -> Result<MealyStrategy> {
        let bad = |m: String| Error::MalformedStrategy(m);
        let states: HashMap<&str, usize> =
            self.memory.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if states.len() != self.memory.states.len() {
            return Err(bad("duplicate memory state".into()));
        }
        let mem_id = |name: &str| states.get(name).copied().ok_or_else(|| bad(format!("unknown memory state {name}")));
        let edge_id = |src: &str, dst: &str, color: &str| -> Result<EdgeId> {
            let s = arena.vertex_or_err(src)?;
            let d = arena.vertex_or_err(dst)?;
            let c = arena.alphabet().symbol(color).ok_or_else(|| Error::UnknownSymbol(color.to_string()))?;
            arena.find_edge(s, d, c).ok_or_else(|| bad(format!("no edge {src} -> {dst} ({color})")))
        };
        let nm = self.memory.states.len();
        let ne = arena.num_edges();
        let mut update = vec![None; nm * ne];
        for u in &self.memory.update {
            let slot = &mut update[mem_id(&u.m)? * ne + edge_id(&u.src, &u.dst, &u.color)?];
            let to = mem_id(&u.to)?;
            if slot.is_some_and(|t| t != to) {
                return Err(bad(format!("conflicting updates for memory {} on {} -> {}", u.m, u.src, u.dst)));
            }
            *slot = Some(to);
        }
        let update = update
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("memory update is not total".into()))?;
        let memory = MemoryStructure::new(self.memory.states.clone(), mem_id(&self.memory.initial)?, ne, update)?;
        let mut next = vec![None; arena.num_vertices() * nm];
        for n in &self.next {
            let v = arena.vertex_or_err(&n.vertex)?;
            if arena.owner(v) != Owner::Eve {
                return Err(bad(format!("next move given for Adam vertex {}", n.vertex)));
            }
            let e = edge_id(&n.src, &n.dst, &n.color)?;
            if arena.edge(e).src != v {
                return Err(bad(format!("next move at {} uses an edge leaving {}", n.vertex, n.src)));
            }
            next[v * nm + mem_id(&n.m)?] = Some(e);
        }
        MealyStrategy::new(memory, next)
    }
}
