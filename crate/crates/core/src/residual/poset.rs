use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exec::{map_range, Exec};
use crate::model::{SafetyAutomaton, StateId, Symbol, Word};

use super::inclusion::included;
use super::minimize::minimize;

/// A non-empty residual; equals the state id in the minimized automaton.
pub type ResidualId = usize;

/// The non-empty left quotients of a safety objective ordered by inclusion.
///
/// Built from a minimized automaton whose non-sink states are exactly the
/// residuals, so `leq` is antisymmetric by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualPoset {
    automaton: SafetyAutomaton,
    len: usize,
    leq: Vec<bool>,
    representatives: Vec<Word>,
    step: Vec<Option<ResidualId>>,
}

/// [`build_poset_with`] using the default execution mode.
pub fn build_poset(min_aut: &SafetyAutomaton) -> Result<ResidualPoset> {
    build_poset_with(min_aut, Exec::default())
}

/// Inclusion poset of the residuals of a minimized automaton (as returned by
/// [`minimize`]). The pairwise inclusion checks are independent and run
/// according to `exec`.
pub fn build_poset_with(min_aut: &SafetyAutomaton, exec: Exec) -> Result<ResidualPoset> {
    if min_aut.is_sink(min_aut.initial()) {
        return Err(Error::EmptyObjective);
    }
    let total = min_aut.num_states();
    let n = (0..total).filter(|&q| !min_aut.is_sink(q)).count();
    if (0..n).any(|q| min_aut.is_sink(q)) || total > n + 1 {
        return Err(Error::NotMinimal("expected non-sink states first and at most one sink".into()));
    }
    let live = min_aut.live_states();
    if let Some(q) = (0..n).find(|&q| !live[q]) {
        return Err(Error::NotMinimal(format!("state {} has an empty residual", min_aut.name(q))));
    }

    let k = min_aut.alphabet().len();
    // shortest-lex representatives
    let mut representatives: Vec<Option<Word>> = vec![None; n];
    representatives[min_aut.initial()] = Some(Vec::new());
    let mut queue = VecDeque::from([min_aut.initial()]);
    while let Some(q) = queue.pop_front() {
        for a in min_aut.alphabet().iter() {
            let t = min_aut.next(q, a);
            if t < n && representatives[t].is_none() {
                let mut w = representatives[q].clone().expect("queued states are reached");
                w.push(a);
                representatives[t] = Some(w);
                queue.push_back(t);
            }
        }
    }
    let representatives: Vec<Word> = representatives
        .into_iter()
        .enumerate()
        .map(|(q, w)| w.ok_or_else(|| Error::NotMinimal(format!("state {} is unreachable", min_aut.name(q)))))
        .collect::<Result<_>>()?;

    let leq = map_range(exec, n * n, |i| {
        let (q1, q2) = (i / n, i % n);
        q1 == q2 || included(min_aut, &live, q1, q2)
    });
    for q1 in 0..n {
        for q2 in (q1 + 1)..n {
            if leq[q1 * n + q2] && leq[q2 * n + q1] {
                return Err(Error::NotMinimal(format!(
                    "states {} and {} have the same residual",
                    min_aut.name(q1),
                    min_aut.name(q2)
                )));
            }
        }
    }

    let step = (0..n * k)
        .map(|i| {
            let t = min_aut.next(i / k, Symbol(i % k));
            (t < n).then_some(t)
        })
        .collect();

    Ok(ResidualPoset { automaton: min_aut.clone(), len: n, leq, representatives, step })
}

impl ResidualPoset {
    /// Minimizes `aut` and builds the poset of its residuals.
    pub fn from_objective(aut: &SafetyAutomaton) -> Result<Self> {
        build_poset(&minimize(aut)?)
    }

    /// The minimized automaton the poset was built from.
    pub fn automaton(&self) -> &SafetyAutomaton {
        &self.automaton
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn residuals(&self) -> std::ops::Range<ResidualId> {
        0..self.len
    }

    /// The residual of the whole objective.
    pub fn initial(&self) -> ResidualId {
        self.automaton.initial()
    }

    pub fn name(&self, r: ResidualId) -> &str {
        self.automaton.name(r)
    }

    pub fn as_state(&self, r: ResidualId) -> StateId {
        r
    }

    /// The residual housed by automaton state `q`, or `None` for the sink.
    pub fn residual_of(&self, q: StateId) -> Option<ResidualId> {
        (q < self.len).then_some(q)
    }

    /// Inclusion of residual languages.
    #[inline]
    pub fn leq(&self, r1: ResidualId, r2: ResidualId) -> bool {
        self.leq[r1 * self.len + r2]
    }

    pub fn lt(&self, r1: ResidualId, r2: ResidualId) -> bool {
        r1 != r2 && self.leq(r1, r2)
    }

    pub fn comparable(&self, r1: ResidualId, r2: ResidualId) -> bool {
        self.leq(r1, r2) || self.leq(r2, r1)
    }

    /// `(w⁻¹W)·a`, or `None` when it is empty.
    #[inline]
    pub fn step(&self, r: ResidualId, a: Symbol) -> Option<ResidualId> {
        self.step[r * self.automaton.alphabet().len() + a.index()]
    }

    /// Shortest (then lexicographically least) word reaching `r`.
    pub fn representative(&self, r: ResidualId) -> &Word {
        &self.representatives[r]
    }

    /// Covering pairs `(r, r')`: `r ⊊ r'` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(ResidualId, ResidualId)> {
        let mut out = Vec::new();
        for a in self.residuals() {
            for b in self.residuals() {
                if self.lt(a, b) && !self.residuals().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True when every pair of residuals is comparable.
    pub fn is_chain(&self) -> bool {
        self.residuals().all(|a| self.residuals().all(|b| self.comparable(a, b)))
    }
}
