//! JSON file schemas. Field names are stable; unknown fields are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate_arena, validate_automaton, Alphabet, Arena, Owner, SafetyAutomaton};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaSpec {
    pub alphabet: Vec<String>,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    pub owner: Owner,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub src: String,
    pub dst: String,
    pub color: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonSpec {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub sink: Vec<String>,
    pub delta: Vec<TransitionSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub from: String,
    pub symbol: String,
    pub to: String,
}

fn report_to_result(report: crate::model::ValidationReport) -> Result<()> {
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::Invalid(report.to_string()))
    }
}

impl ArenaSpec {
    pub fn from_arena(arena: &Arena) -> Self {
        let al = arena.alphabet();
        ArenaSpec {
            alphabet: al.names().to_vec(),
            vertices: (0..arena.num_vertices())
                .map(|v| VertexSpec { id: arena.id(v).to_string(), owner: arena.owner(v) })
                .collect(),
            edges: arena
                .edges()
                .iter()
                .map(|e| EdgeSpec {
                    src: arena.id(e.src).to_string(),
                    dst: arena.id(e.dst).to_string(),
                    color: al.name(e.color).to_string(),
                })
                .collect(),
        }
    }

    /// Validates and converts to a checked [`Arena`].
    pub fn to_arena(&self) -> Result<Arena> {
        report_to_result(validate_arena(self))?;
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let mut b = Arena::builder(alphabet.clone());
        let mut ids = std::collections::HashMap::new();
        for v in &self.vertices {
            ids.insert(v.id.as_str(), b.add_vertex(v.id.clone(), v.owner)?);
        }
        for e in &self.edges {
            let color = alphabet.symbol(&e.color).ok_or_else(|| Error::UnknownSymbol(e.color.clone()))?;
            b.add_edge(ids[e.src.as_str()], ids[e.dst.as_str()], color)?;
        }
        b.build()
    }
}

impl AutomatonSpec {
    pub fn from_automaton(aut: &SafetyAutomaton) -> Self {
        let al = aut.alphabet();
        let mut delta = Vec::with_capacity(aut.num_states() * al.len());
        for q in 0..aut.num_states() {
            for a in al.iter() {
                delta.push(TransitionSpec {
                    from: aut.name(q).to_string(),
                    symbol: al.name(a).to_string(),
                    to: aut.name(aut.next(q, a)).to_string(),
                });
            }
        }
        AutomatonSpec {
            alphabet: al.names().to_vec(),
            states: aut.names().to_vec(),
            initial: aut.name(aut.initial()).to_string(),
            sink: (0..aut.num_states())
                .filter(|&q| aut.is_sink(q))
                .map(|q| aut.name(q).to_string())
                .collect(),
            delta,
        }
    }

    /// Validates and converts to a checked [`SafetyAutomaton`].
    pub fn to_automaton(&self) -> Result<SafetyAutomaton> {
        report_to_result(validate_automaton(self))?;
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let index: std::collections::HashMap<&str, usize> =
            self.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let k = alphabet.len();
        let mut delta = vec![0; self.states.len() * k];
        for t in &self.delta {
            let a = alphabet.symbol(&t.symbol).expect("validated");
            delta[index[t.from.as_str()] * k + a.index()] = index[t.to.as_str()];
        }
        let mut sink = vec![false; self.states.len()];
        for s in &self.sink {
            sink[index[s.as_str()]] = true;
        }
        SafetyAutomaton::new(alphabet, self.states.clone(), index[self.initial.as_str()], sink, delta)
    }
}

/// Serialized lasso, as symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoSpec {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

impl LassoSpec {
    pub fn from_lasso(alphabet: &Alphabet, lasso: &crate::model::Lasso) -> Self {
        LassoSpec { prefix: alphabet.format_word(&lasso.prefix), cycle: alphabet.format_word(&lasso.cycle) }
    }

    pub fn to_lasso(&self, alphabet: &Alphabet) -> Result<crate::model::Lasso> {
        crate::model::Lasso::new(alphabet.parse_word(&self.prefix)?, alphabet.parse_word(&self.cycle)?)
    }
}
