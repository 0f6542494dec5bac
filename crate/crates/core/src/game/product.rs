use crate::error::{Error, Result};
use crate::model::{Arena, SafetyAutomaton, StateId, VertexId};

/// The arena expanded with the objective's automaton as memory. An edge is
/// bad when its target memory component is the sink.
#[derive(Clone, Debug)]
pub struct ProductGame {
    pub arena: Arena,
    pub bad: Vec<bool>,
    back: Vec<(VertexId, StateId)>,
    memory_size: usize,
}

impl ProductGame {
    /// Product vertex of `(v, q)`.
    pub fn vertex(&self, v: VertexId, q: StateId) -> VertexId {
        v * self.memory_size + q
    }

    /// Arena vertex and automaton state of a product vertex.
    pub fn project(&self, pv: VertexId) -> (VertexId, StateId) {
        self.back[pv]
    }

    pub fn memory_size(&self) -> usize {
        self.memory_size
    }

    pub fn bad_edge_count(&self) -> usize {
        self.bad.iter().filter(|&&b| b).count()
    }
}

pub fn check_alphabets(arena: &Arena, aut: &SafetyAutomaton) -> Result<()> {
    if arena.alphabet() != aut.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// `arena × automaton`, with the automaton driven by edge colors.
///
/// Vertices are ordered by arena vertex then automaton state; each product
/// vertex lists its edges in the order of the arena vertex's edges. Product
/// plays avoid bad edges exactly when their color projection is safe.
pub fn build_residual_product(arena: &Arena, min_aut: &SafetyAutomaton) -> Result<ProductGame> {
    check_alphabets(arena, min_aut)?;
    let nq = min_aut.num_states();
    let mut builder = Arena::builder(arena.alphabet().clone());
    let mut back = Vec::with_capacity(arena.num_vertices() * nq);
    for v in 0..arena.num_vertices() {
        for q in 0..nq {
            builder.add_vertex(format!("{}|{}", arena.id(v), min_aut.name(q)), arena.owner(v))?;
            back.push((v, q));
        }
    }
    let mut bad = Vec::with_capacity(arena.num_edges() * nq);
    for v in 0..arena.num_vertices() {
        for q in 0..nq {
            for &e in arena.out_edges(v) {
                let edge = arena.edge(e);
                let q2 = min_aut.next(q, edge.color);
                builder.add_edge(v * nq + q, edge.dst * nq + q2, edge.color)?;
                bad.push(min_aut.is_sink(q2));
            }
        }
    }
    Ok(ProductGame { arena: builder.build()?, bad, back, memory_size: nq })
}
