use std::collections::HashMap;

use super::alphabet::{Alphabet, Symbol};
use super::word::Lasso;
use crate::error::{Error, Result};

pub type StateId = usize;

/// Outcome of reading an infinite word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Safety {
    Safe,
    Unsafe,
}

/// Complete deterministic automaton with absorbing rejecting (sink) states.
///
/// It denotes `Safe(P)` where `P` is the set of finite words driving the
/// initial state into a sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetyAutomaton {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, StateId>,
    initial: StateId,
    sink: Vec<bool>,
    // row-major: delta[q * |A| + a]
    delta: Vec<StateId>,
}

impl SafetyAutomaton {
    /// Builds a checked automaton. `delta` is indexed `q * |A| + a`.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: StateId,
        sink: Vec<bool>,
        delta: Vec<StateId>,
    ) -> Result<Self> {
        let n = names.len();
        let k = alphabet.len();
        if n == 0 {
            return Err(Error::Invalid("automaton has no states".into()));
        }
        if sink.len() != n || delta.len() != n * k {
            return Err(Error::Invalid("incomplete transition table".into()));
        }
        if initial >= n {
            return Err(Error::Invalid("initial state out of range".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (q, name) in names.iter().enumerate() {
            if index.insert(name.clone(), q).is_some() {
                return Err(Error::Invalid(format!("duplicate state {name}")));
            }
        }
        for q in 0..n {
            for a in 0..k {
                let t = delta[q * k + a];
                if t >= n {
                    return Err(Error::Invalid(format!("transition target out of range at {}", names[q])));
                }
                if sink[q] && !sink[t] {
                    return Err(Error::Invalid(format!(
                        "sink escape: {} --{}--> {}",
                        names[q],
                        alphabet.name(Symbol(a)),
                        names[t]
                    )));
                }
            }
        }
        Ok(SafetyAutomaton { alphabet, names, index, initial, sink, delta })
    }

    /// Builds an automaton from a transition function; states are `0..names.len()`.
    pub fn from_fn<F>(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: StateId,
        sink: Vec<bool>,
        mut step: F,
    ) -> Result<Self>
    where
        F: FnMut(StateId, Symbol) -> StateId,
    {
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(names.len() * k);
        for q in 0..names.len() {
            for a in 0..k {
                delta.push(step(q, Symbol(a)));
            }
        }
        Self::new(alphabet, names, initial, sink, delta)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_sink(&self, q: StateId) -> bool {
        self.sink[q]
    }

    pub fn sink_flags(&self) -> &[bool] {
        &self.sink
    }

    /// The first sink state, if any.
    pub fn sink_state(&self) -> Option<StateId> {
        self.sink.iter().position(|&s| s)
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub fn state_or_err(&self, name: &str) -> Result<StateId> {
        self.state(name).ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// One transition. Panics on out-of-range arguments.
    #[inline]
    pub fn next(&self, q: StateId, a: Symbol) -> StateId {
        self.delta[q * self.alphabet.len() + a.0]
    }

    pub fn transitions(&self) -> &[StateId] {
        &self.delta
    }

    fn check_word(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|a| !self.alphabet.contains(**a)) {
            Some(a) => Err(Error::UnknownSymbol(a.to_string())),
            None => Ok(()),
        }
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q < self.num_states() {
            Ok(())
        } else {
            Err(Error::UnknownState(format!("#{q}")))
        }
    }

    /// `delta*(from, word)`.
    pub fn run_word(&self, from: StateId, word: &[Symbol]) -> Result<StateId> {
        self.check_state(from)?;
        self.check_word(word)?;
        Ok(word.iter().fold(from, |q, &a| self.next(q, a)))
    }

    /// Decides whether `prefix · cycle^ω` keeps `from` out of the sink forever.
    ///
    /// The prefix is run first; then the cycle is iterated until the state at
    /// a cycle boundary repeats, which happens within `|states|` rounds.
    pub fn eval_lasso(&self, from: StateId, lasso: &Lasso) -> Result<Safety> {
        self.check_state(from)?;
        self.check_word(&lasso.prefix)?;
        self.check_word(&lasso.cycle)?;
        if lasso.cycle.is_empty() {
            return Err(Error::Invalid("lasso cycle is empty".into()));
        }
        let mut q = from;
        if self.sink[q] {
            return Ok(Safety::Unsafe);
        }
        for &a in &lasso.prefix {
            q = self.next(q, a);
            if self.sink[q] {
                return Ok(Safety::Unsafe);
            }
        }
        let mut seen = vec![false; self.num_states()];
        while !seen[q] {
            seen[q] = true;
            for &a in &lasso.cycle {
                q = self.next(q, a);
                if self.sink[q] {
                    return Ok(Safety::Unsafe);
                }
            }
        }
        Ok(Safety::Safe)
    }

    /// Non-sink states from which some infinite word avoids the sink forever
    /// (greatest fixpoint: non-sink with a successor in the set).
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut live: Vec<bool> = self.sink.iter().map(|s| !s).collect();
        loop {
            let mut changed = false;
            for q in 0..n {
                if live[q] && !self.alphabet.iter().any(|a| live[self.next(q, a)]) {
                    live[q] = false;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// States reachable from the initial state.
    pub fn reachable_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for a in self.alphabet.iter() {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// A symbol that loops on every state, if there is one.
    pub fn neutral_symbol(&self) -> Option<Symbol> {
        self.alphabet
            .iter()
            .find(|&a| (0..self.num_states()).all(|q| self.next(q, a) == q))
    }

    /// This automaton with a neutral symbol: the existing one, or a fresh `⊥`
    /// looping on every state.
    pub fn with_neutral(&self) -> (SafetyAutomaton, Symbol) {
        if let Some(a) = self.neutral_symbol() {
            return (self.clone(), a);
        }
        let (alphabet, bot) = self.alphabet.with_fresh("⊥");
        let k = self.alphabet.len();
        let aut = SafetyAutomaton::from_fn(
            alphabet,
            self.names.clone(),
            self.initial,
            self.sink.clone(),
            |q, a| if a == bot { q } else { self.delta[q * k + a.0] },
        )
        .expect("adding a neutral symbol preserves validity");
        (aut, bot)
    }
}
