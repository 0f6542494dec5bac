use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    #[serde(alias = "eve")]
    Eve,
    #[serde(alias = "adam")]
    Adam,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub color: Symbol,
}

/// Finite edge-colored game graph without dead ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    alphabet: Alphabet,
    ids: Vec<String>,
    owners: Vec<Owner>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    index: HashMap<String, VertexId>,
}

impl Arena {
    pub fn builder(alphabet: Alphabet) -> ArenaBuilder {
        ArenaBuilder {
            alphabet,
            ids: Vec::new(),
            owners: Vec::new(),
            edges: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn owner(&self, v: VertexId) -> Owner {
        self.owners[v]
    }

    pub fn id(&self, v: VertexId) -> &str {
        &self.ids[v]
    }

    pub fn vertex(&self, id: &str) -> Option<VertexId> {
        self.index.get(id).copied()
    }

    pub fn vertex_or_err(&self, id: &str) -> Result<VertexId> {
        self.vertex(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    /// Outgoing edges of `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    pub fn find_edge(&self, src: VertexId, dst: VertexId, color: Symbol) -> Option<EdgeId> {
        self.out[src]
            .iter()
            .copied()
            .find(|&e| self.edges[e].dst == dst && self.edges[e].color == color)
    }

    pub fn eve_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.num_vertices()).filter(|&v| self.owners[v] == Owner::Eve)
    }

    /// The same arena with `v` handed to `owner`.
    pub fn with_owner(&self, v: VertexId, owner: Owner) -> Arena {
        let mut a = self.clone();
        a.owners[v] = owner;
        a
    }

    /// Predecessor lists: for each vertex, the edges entering it.
    pub fn in_edges(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.num_vertices()];
        for (e, edge) in self.edges.iter().enumerate() {
            inc[edge.dst].push(e);
        }
        inc
    }

    /// Vertices from which some Eve vertex is reachable (Eve vertices included).
    pub fn reaches_eve(&self) -> Vec<bool> {
        let inc = self.in_edges();
        let mut mark: Vec<bool> = self.owners.iter().map(|&o| o == Owner::Eve).collect();
        let mut stack: Vec<VertexId> = (0..self.num_vertices()).filter(|&v| mark[v]).collect();
        while let Some(v) = stack.pop() {
            for &e in &inc[v] {
                let u = self.edges[e].src;
                if !mark[u] {
                    mark[u] = true;
                    stack.push(u);
                }
            }
        }
        mark
    }
}

/// Incremental arena construction; [`ArenaBuilder::build`] enforces the
/// arena invariants.
#[derive(Clone, Debug)]
pub struct ArenaBuilder {
    alphabet: Alphabet,
    ids: Vec<String>,
    owners: Vec<Owner>,
    edges: Vec<Edge>,
    index: HashMap<String, VertexId>,
}

impl ArenaBuilder {
    pub fn add_vertex(&mut self, id: impl Into<String>, owner: Owner) -> Result<VertexId> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::Invalid(format!("duplicate vertex {id}")));
        }
        let v = self.ids.len();
        self.index.insert(id.clone(), v);
        self.ids.push(id);
        self.owners.push(owner);
        Ok(v)
    }

    pub fn add_edge(&mut self, src: VertexId, dst: VertexId, color: Symbol) -> Result<EdgeId> {
        let n = self.ids.len();
        if src >= n || dst >= n {
            return Err(Error::UnknownVertex(format!("#{}", src.max(dst))));
        }
        if !self.alphabet.contains(color) {
            return Err(Error::UnknownSymbol(color.to_string()));
        }
        self.edges.push(Edge { src, dst, color });
        Ok(self.edges.len() - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Adds a `color` self-loop to every vertex without outgoing edges.
    /// Returns the vertices that were patched.
    pub fn close_dead_ends(&mut self, color: Symbol) -> Vec<VertexId> {
        let mut has_out = vec![false; self.ids.len()];
        for e in &self.edges {
            has_out[e.src] = true;
        }
        let dead: Vec<VertexId> = (0..self.ids.len()).filter(|&v| !has_out[v]).collect();
        for &v in &dead {
            self.edges.push(Edge { src: v, dst: v, color });
        }
        dead
    }

    pub fn build(self) -> Result<Arena> {
        let n = self.ids.len();
        let mut out = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(self.edges.len());
        for (e, edge) in self.edges.iter().enumerate() {
            if !seen.insert(*edge) {
                return Err(Error::Invalid(format!(
                    "duplicate edge {} -> {} ({})",
                    self.ids[edge.src],
                    self.ids[edge.dst],
                    self.alphabet.name(edge.color)
                )));
            }
            out[edge.src].push(e);
        }
        if let Some(v) = out.iter().position(Vec::is_empty) {
            return Err(Error::Invalid(format!("dead end at {}", self.ids[v])));
        }
        Ok(Arena {
            alphabet: self.alphabet,
            ids: self.ids,
            owners: self.owners,
            edges: self.edges,
            out,
            index: self.index,
        })
    }
}
