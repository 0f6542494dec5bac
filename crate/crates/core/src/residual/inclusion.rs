use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{Lasso, Safety, SafetyAutomaton, StateId, Symbol, Word};

/// Answer of a residual inclusion query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Yes,
    /// A lasso safe from the first state and unsafe from the second.
    No(Lasso),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Yes)
    }
}

/// Breadth-first search in the synchronous product from `(q1, q2)` for a pair
/// whose first component is live while the second is a sink. Returns the
/// shortest (then lexicographically least) word reaching such a pair and the
/// live state it leaves the first component in.
fn find_escape(aut: &SafetyAutomaton, live: &[bool], q1: StateId, q2: StateId) -> Option<(Word, StateId)> {
    if !live[q1] {
        return None;
    }
    if aut.is_sink(q2) {
        return Some((Vec::new(), q1));
    }
    let n = aut.num_states();
    let idx = |p: StateId, s: StateId| p * n + s;
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let start = idx(q1, q2);
    seen[start] = true;
    let mut queue = VecDeque::from([(q1, q2)]);
    let path_to = |parent: &[Option<(usize, Symbol)>], mut at: usize| {
        let mut word = Vec::new();
        while let Some((from, a)) = parent[at] {
            word.push(a);
            at = from;
        }
        word.reverse();
        word
    };
    while let Some((p, s)) = queue.pop_front() {
        let here = idx(p, s);
        for a in aut.alphabet().iter() {
            let p2 = aut.next(p, a);
            if !live[p2] {
                continue;
            }
            let s2 = aut.next(s, a);
            if aut.is_sink(s2) {
                let mut word = path_to(&parent, here);
                word.push(a);
                return Some((word, p2));
            }
            let there = idx(p2, s2);
            if !seen[there] {
                seen[there] = true;
                parent[there] = Some((here, a));
                queue.push_back((p2, s2));
            }
        }
    }
    None
}

/// `L(q1) ⊆ L(q2)` without building a witness.
pub(crate) fn included(aut: &SafetyAutomaton, live: &[bool], q1: StateId, q2: StateId) -> bool {
    find_escape(aut, live, q1, q2).is_none()
}

/// Decides `L(q1) ⊆ L(q2)`, where `L(q)` is the set of infinite words whose
/// every prefix keeps `q` out of the sink. On failure returns a separating
/// lasso, shrunk greedily (prefix first, then cycle).
pub fn residual_included(aut: &SafetyAutomaton, q1: StateId, q2: StateId) -> Result<Inclusion> {
    for q in [q1, q2] {
        if q >= aut.num_states() {
            return Err(Error::UnknownState(format!("#{q}")));
        }
        if aut.is_sink(q) {
            return Err(Error::SinkArgument(aut.name(q).to_string()));
        }
    }
    let live = aut.live_states();
    let Some((mut prefix, p)) = find_escape(aut, &live, q1, q2) else {
        return Ok(Inclusion::Yes);
    };
    // stay inside live states by always taking the first live successor
    let mut visited: Vec<Option<usize>> = vec![None; aut.num_states()];
    let mut walk = Vec::new();
    let mut at = p;
    while visited[at].is_none() {
        visited[at] = Some(walk.len());
        let a = aut
            .alphabet()
            .iter()
            .find(|&a| live[aut.next(at, a)])
            .expect("live states have a live successor");
        walk.push(a);
        at = aut.next(at, a);
    }
    let loop_start = visited[at].expect("loop closes on a visited state");
    prefix.extend_from_slice(&walk[..loop_start]);
    let lasso = Lasso::new(prefix, walk[loop_start..].to_vec())?;
    Ok(Inclusion::No(shrink(aut, q1, q2, lasso)))
}

fn separates(aut: &SafetyAutomaton, q1: StateId, q2: StateId, l: &Lasso) -> bool {
    aut.eval_lasso(q1, l) == Ok(Safety::Safe) && aut.eval_lasso(q2, l) == Ok(Safety::Unsafe)
}

fn shrink(aut: &SafetyAutomaton, q1: StateId, q2: StateId, mut lasso: Lasso) -> Lasso {
    debug_assert!(separates(aut, q1, q2, &lasso));
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < lasso.prefix.len() {
            let mut cand = lasso.clone();
            cand.prefix.remove(i);
            if separates(aut, q1, q2, &cand) {
                lasso = cand;
                changed = true;
            } else {
                i += 1;
            }
        }
        // a suffix of the prefix may serve as the whole cycle
        for k in 0..lasso.prefix.len() {
            let cand = Lasso { prefix: lasso.prefix[..k].to_vec(), cycle: lasso.prefix[k..].to_vec() };
            if cand.len() < lasso.len() && separates(aut, q1, q2, &cand) {
                lasso = cand;
                changed = true;
                break;
            }
        }
        let mut i = 0;
        while lasso.cycle.len() > 1 && i < lasso.cycle.len() {
            let mut cand = lasso.clone();
            cand.cycle.remove(i);
            if separates(aut, q1, q2, &cand) {
                lasso = cand;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            return lasso;
        }
    }
}
