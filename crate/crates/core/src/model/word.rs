use super::alphabet::{Symbol, Word};
use super::arena::{Arena, EdgeId, VertexId};
use crate::error::{Error, Result};

/// The ultimately periodic word `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Word,
    pub cycle: Word,
}

impl Lasso {
    pub fn new(prefix: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Invalid("lasso cycle must be non-empty".into()));
        }
        Ok(Lasso { prefix, cycle })
    }

    /// Finite prefix of the denoted infinite word, of length `n`.
    pub fn unroll(&self, n: usize) -> Word {
        self.prefix
            .iter()
            .chain(self.cycle.iter().cycle())
            .take(n)
            .copied()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Finite play: a start vertex and a sequence of consecutive edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Play {
    pub fn new(arena: &Arena, start: VertexId, edges: Vec<EdgeId>) -> Result<Self> {
        if start >= arena.num_vertices() {
            return Err(Error::UnknownVertex(format!("#{start}")));
        }
        let mut at = start;
        for &e in &edges {
            let edge = arena
                .edges()
                .get(e)
                .ok_or_else(|| Error::Invalid(format!("unknown edge #{e}")))?;
            if edge.src != at {
                return Err(Error::Invalid(format!(
                    "edges are not consecutive: expected source {}, found {}",
                    arena.id(at),
                    arena.id(edge.src)
                )));
            }
            at = edge.dst;
        }
        Ok(Play { start, edges })
    }

    pub fn end(&self, arena: &Arena) -> VertexId {
        self.edges.last().map_or(self.start, |&e| arena.edge(e).dst)
    }

    pub fn colors(&self, arena: &Arena) -> Vec<Symbol> {
        self.edges.iter().map(|&e| arena.edge(e).color).collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}
