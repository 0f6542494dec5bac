use std::collections::{HashMap, VecDeque};

use crate::error::Result;
use crate::model::{SafetyAutomaton, StateId};

const NONE: usize = usize::MAX;

/// Minimal automaton for the same safety objective.
///
/// States whose residual is empty (sinks, and non-sink states that cannot
/// avoid a sink forever) collapse into a single sink; the remaining reachable
/// states are merged by Moore partition refinement. The result is canonical:
/// non-sink states are numbered in breadth-first order from the initial state
/// (symbols in alphabet order) and the sink, when present, comes last. Each
/// state keeps the name of its lowest-numbered original member.
pub fn minimize(aut: &SafetyAutomaton) -> Result<SafetyAutomaton> {
    let n = aut.num_states();
    let k = aut.alphabet().len();
    let live = aut.live_states();
    let reach = aut.reachable_states();

    // class 0 is the empty residual
    let mut class: Vec<usize> = (0..n)
        .map(|q| match (reach[q], live[q]) {
            (false, _) => NONE,
            (true, false) => 0,
            (true, true) => 1,
        })
        .collect();
    let mut count = 2;
    loop {
        let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
        sigs.insert(vec![0], 0);
        let mut next = vec![NONE; n];
        for q in 0..n {
            match class[q] {
                NONE => {}
                0 => next[q] = 0,
                c => {
                    let mut sig = Vec::with_capacity(k + 1);
                    sig.push(c);
                    sig.extend(aut.alphabet().iter().map(|a| class[aut.next(q, a)]));
                    let fresh = sigs.len();
                    next[q] = *sigs.entry(sig).or_insert(fresh);
                }
            }
        }
        let new_count = sigs.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // canonical numbering by BFS over classes
    let mut order = vec![NONE; count];
    let mut members: Vec<StateId> = Vec::new();
    let mut queue = VecDeque::new();
    let init_class = class[aut.initial()];
    if init_class != 0 {
        order[init_class] = 0;
        members.push(aut.initial());
        queue.push_back(aut.initial());
    }
    while let Some(q) = queue.pop_front() {
        for a in aut.alphabet().iter() {
            let t = aut.next(q, a);
            let c = class[t];
            if c != 0 && order[c] == NONE {
                order[c] = members.len();
                members.push(t);
                queue.push_back(t);
            }
        }
    }
    let live_count = members.len();
    let has_sink = (0..n).any(|q| class[q] == 0);
    let total = live_count + usize::from(has_sink);

    let mut names: Vec<Option<StateId>> = vec![None; total];
    for q in 0..n {
        let c = class[q];
        if c == NONE {
            continue;
        }
        let id = if c == 0 { live_count } else { order[c] };
        // the sink prefers the name of a declared sink state
        let better = match names[id] {
            None => true,
            Some(p) => c == 0 && aut.is_sink(q) && !aut.is_sink(p),
        };
        if better {
            names[id] = Some(q);
        }
    }
    let names: Vec<String> = names.into_iter().map(|q| aut.name(q.expect("every class has a member")).to_string()).collect();
    let sink_id = live_count;
    let state_of = |q: StateId| if class[q] == 0 { sink_id } else { order[class[q]] };
    let mut sink = vec![false; total];
    if has_sink {
        sink[sink_id] = true;
    }
    let initial = if init_class == 0 { sink_id } else { 0 };
    SafetyAutomaton::from_fn(aut.alphabet().clone(), names, initial, sink, |s, a| {
        if s == sink_id && has_sink {
            sink_id
        } else {
            state_of(aut.next(members[s], a))
        }
    })
}
