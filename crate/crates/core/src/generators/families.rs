use crate::error::{Error, Result};
use crate::model::{Alphabet, Arena, Owner, SafetyAutomaton, StateId, Symbol, VertexId};

pub const MAX_GENSAFETY_COLORS: usize = 16;
pub const MAX_OUTBIDDING: usize = 64;

/// "Some color in `1..=k` is never seen", over `{⊥, 1, …, k}`.
///
/// States are the sets of colors seen so far (bitmask order); the full set is
/// the sink and `⊥` changes nothing.
pub fn gen_generalized_safety(k: usize) -> Result<SafetyAutomaton> {
    if !(1..=MAX_GENSAFETY_COLORS).contains(&k) {
        return Err(Error::Invalid(format!("k must be in 1..={MAX_GENSAFETY_COLORS}, got {k}")));
    }
    let symbols = std::iter::once("⊥".to_string()).chain((1..=k).map(|i| i.to_string()));
    let alphabet = Alphabet::new(symbols)?;
    let full = (1usize << k) - 1;
    let names = (0..=full)
        .map(|s| {
            if s == 0 {
                "∅".to_string()
            } else {
                let parts: Vec<String> = (0..k).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let sink = (0..=full).map(|s| s == full).collect();
    SafetyAutomaton::from_fn(alphabet, names, 0, sink, |s, a| match a.index() {
        0 => s,
        i => s | 1 << (i - 1),
    })
}

/// Energy levels `0..=cap` over `{a, b}`: `a` reloads (saturating at `cap`),
/// `b` consumes one unit and is fatal at level 0.
pub fn gen_energy(cap: usize, init: usize) -> Result<SafetyAutomaton> {
    if init > cap {
        return Err(Error::Invalid(format!("initial level {init} exceeds cap {cap}")));
    }
    if cap > 1 << 16 {
        return Err(Error::Invalid(format!("cap {cap} is too large")));
    }
    let alphabet = Alphabet::new(["a", "b"])?;
    let sink_id = cap + 1;
    let names = (0..=cap).map(|l| l.to_string()).chain(["sink".to_string()]).collect();
    let sink = (0..=sink_id).map(|q| q == sink_id).collect();
    SafetyAutomaton::from_fn(alphabet, names, init, sink, |q, a| match (q, a.index()) {
        (q, _) if q == sink_id => sink_id,
        (q, 0) => (q + 1).min(cap),
        (0, _) => sink_id,
        (q, _) => q - 1,
    })
}

/// Outbidding objective `a^n·b^p·c^ω (n ≤ p) ∪ a^ω ∪ a*·b^ω`, truncated: a
/// word with more than `n_cap` letters `a` is forbidden.
///
/// States: `a^n` (n = 0..=n_cap, named `ε`, `a`, `a^2`, …), the b-phase states
/// needing `d` more `b`s before `c` (named `b` for d = 0 and `a^{d+1}b`
/// otherwise, after the shortest word reaching them), `c`, and `sink`.
/// An `a` after the b-phase has started is fatal.
pub fn gen_outbidding(n_cap: usize) -> Result<SafetyAutomaton> {
    if !(1..=MAX_OUTBIDDING).contains(&n_cap) {
        return Err(Error::Invalid(format!("N must be in 1..={MAX_OUTBIDDING}, got {n_cap}")));
    }
    let alphabet = Alphabet::new(["a", "b", "c"])?;
    let a_state = |n: usize| n;
    let b_state = |d: usize| n_cap + 1 + d;
    let c_state = 2 * n_cap + 1;
    let sink_id = c_state + 1;
    let power = |n: usize| match n {
        0 => "ε".to_string(),
        1 => "a".to_string(),
        n => format!("a^{n}"),
    };
    let mut names: Vec<String> = (0..=n_cap).map(power).collect();
    names.extend((0..n_cap).map(|d| if d == 0 { "b".to_string() } else { format!("{}b", power(d + 1)) }));
    names.push("c".into());
    names.push("sink".into());
    let sink = (0..=sink_id).map(|q| q == sink_id).collect();
    SafetyAutomaton::from_fn(alphabet, names, 0, sink, |q, a| {
        let (a_, b_, c_) = (a.index() == 0, a.index() == 1, a.index() == 2);
        if q <= n_cap {
            let n = q;
            if a_ {
                if n == n_cap { sink_id } else { a_state(n + 1) }
            } else if b_ {
                b_state(n.saturating_sub(1))
            } else if c_ && n == 0 {
                c_state
            } else {
                sink_id
            }
        } else if q < c_state {
            let d = q - n_cap - 1;
            if b_ {
                b_state(d.saturating_sub(1))
            } else if c_ && d == 0 {
                c_state
            } else {
                sink_id
            }
        } else if q == c_state && c_ {
            c_state
        } else {
            sink_id
        }
    })
}

/// A monotone counter update on `0..=N`; `None` is overflow, the largest value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterAction {
    pub name: String,
    pub table: Vec<Option<usize>>,
}

impl CounterAction {
    pub fn new(name: impl Into<String>, table: Vec<Option<usize>>) -> Self {
        CounterAction { name: name.into(), table }
    }

    /// One of `nop`, `inc`, `reset`, `half`, `next_pow2` on `0..=n`.
    pub fn builtin(name: &str, n: usize) -> Result<Self> {
        let f: fn(usize) -> usize = match name {
            "nop" => |v| v,
            "inc" => |v| v + 1,
            "reset" => |_| 0,
            "half" => |v| v / 2,
            "next_pow2" => |v| v.next_power_of_two(),
            other => return Err(Error::Invalid(format!("unknown counter action {other}"))),
        };
        Ok(CounterAction::new(name, (0..=n).map(|v| Some(f(v)).filter(|&x| x <= n)).collect()))
    }

    pub fn builtins(names: &[&str], n: usize) -> Result<Vec<Self>> {
        names.iter().map(|a| CounterAction::builtin(a, n)).collect()
    }
}

/// Boundedness objective: the counter never exceeds `n` (overflow is the sink).
pub fn gen_counter(n: usize, actions: &[CounterAction]) -> Result<SafetyAutomaton> {
    if n > 1 << 16 {
        return Err(Error::Invalid(format!("bound {n} is too large")));
    }
    for act in actions {
        if act.table.len() != n + 1 {
            return Err(Error::Invalid(format!("action {} must map each of 0..={n}", act.name)));
        }
        if let Some(v) = act.table.iter().flatten().find(|&&v| v > n) {
            return Err(Error::Invalid(format!("action {} maps to {v}, beyond {n}", act.name)));
        }
        let rank = |x: Option<usize>| x.unwrap_or(n + 1);
        if let Some(i) = (0..n).find(|&i| rank(act.table[i]) > rank(act.table[i + 1])) {
            return Err(Error::Invalid(format!("action {} is not monotone at {i}", act.name)));
        }
    }
    let alphabet = Alphabet::new(actions.iter().map(|a| a.name.clone()))?;
    let overflow = n + 1;
    let names = (0..=n).map(|v| v.to_string()).chain(["overflow".to_string()]).collect();
    let sink = (0..=overflow).map(|q| q == overflow).collect();
    SafetyAutomaton::from_fn(alphabet, names, 0, sink, |q, a: Symbol| {
        if q == overflow {
            overflow
        } else {
            actions[a.index()].table[q].unwrap_or(overflow)
        }
    })
}

/// The two-memory example: "a and b are never both seen", over `{a, b, c}`,
/// and the arena where Adam picks `a` or `b`, then Eve must repeat it.
#[derive(Clone, Debug)]
pub struct Figure1 {
    pub objective: SafetyAutomaton,
    pub arena: Arena,
    pub v0: VertexId,
}

pub fn gen_figure1() -> Result<Figure1> {
    let alphabet = Alphabet::new(["a", "b", "c"])?;
    let names = ["none", "a", "b", "sink"].map(String::from).to_vec();
    const SINK: StateId = 3;
    let objective = SafetyAutomaton::from_fn(alphabet.clone(), names, 0, vec![false, false, false, true], |q, a| {
        match (q, a.index()) {
            (q, 2) => q,
            (0, 0) | (1, 0) => 1,
            (0, 1) | (2, 1) => 2,
            _ => SINK,
        }
    })?;
    let (a, b) = (Symbol(0), Symbol(1));
    let neutral = objective.neutral_symbol().expect("c loops everywhere");
    let mut builder = Arena::builder(alphabet);
    let v0 = builder.add_vertex("v0", Owner::Adam)?;
    let v1 = builder.add_vertex("v1", Owner::Eve)?;
    let v2 = builder.add_vertex("v2", Owner::Adam)?;
    for (src, dst) in [(v0, v1), (v1, v2)] {
        builder.add_edge(src, dst, a)?;
        builder.add_edge(src, dst, b)?;
    }
    builder.close_dead_ends(neutral);
    Ok(Figure1 { objective, arena: builder.build()?, v0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gensafety_runs_collect_colors() {
        let aut = gen_generalized_safety(3).unwrap();
        assert_eq!(aut.num_states(), 8);
        let w = aut.alphabet().parse_word(&["1", "2"]).unwrap();
        let q = aut.run_word(aut.initial(), &w).unwrap();
        assert_eq!(aut.name(q), "{1,2}");
        assert_eq!(aut.neutral_symbol(), aut.alphabet().symbol("⊥"));
        assert!(gen_generalized_safety(0).is_err());
        assert!(gen_generalized_safety(17).is_err());
    }

    #[test]
    fn energy_consumption_below_zero_is_fatal() {
        let aut = gen_energy(5, 0).unwrap();
        let q = aut.run_word(aut.initial(), &[Symbol(1)]).unwrap();
        assert!(aut.is_sink(q));
        let aut = gen_energy(0, 0).unwrap();
        assert_eq!(aut.num_states(), 2);
        assert!(gen_energy(2, 3).is_err());
    }

    #[test]
    fn outbidding_transitions() {
        let aut = gen_outbidding(4).unwrap();
        let run = |w: &[&str]| aut.run_word(aut.initial(), &aut.alphabet().parse_word(w).unwrap()).unwrap();
        assert_eq!(aut.name(run(&["a", "a", "b"])), "a^2b");
        assert!(aut.is_sink(run(&["a", "a", "b", "b", "a"])));
        assert_eq!(aut.name(run(&["a", "a", "b", "b"])), "b");
        assert_eq!(aut.name(run(&["a", "a", "b", "b", "c"])), "c");
        assert!(aut.is_sink(run(&["a", "a", "b", "c"])));
        assert!(aut.is_sink(run(&["a"; 5])));
        assert!(!aut.is_sink(run(&["a"; 4])));
    }

    #[test]
    fn counter_actions() {
        let acts = CounterAction::builtins(&["inc", "reset", "half", "next_pow2", "nop"], 7).unwrap();
        let aut = gen_counter(7, &acts).unwrap();
        let al = aut.alphabet();
        let seven = aut.state("7").unwrap();
        assert!(aut.is_sink(aut.next(seven, al.symbol("inc").unwrap())));
        assert_eq!(aut.name(aut.next(aut.state("5").unwrap(), al.symbol("half").unwrap())), "2");
        assert_eq!(aut.name(aut.next(aut.state("5").unwrap(), al.symbol("next_pow2").unwrap())), "overflow");
        assert_eq!(aut.name(aut.next(aut.state("3").unwrap(), al.symbol("next_pow2").unwrap())), "4");
        let swap = CounterAction::new("swap", vec![Some(1), Some(0)]);
        assert!(matches!(gen_counter(1, &[swap]), Err(Error::Invalid(m)) if m.contains("monotone")));
    }

    #[test]
    fn figure1_shape() {
        let f = gen_figure1().unwrap();
        assert_eq!(f.arena.num_vertices(), 3);
        assert_eq!(f.arena.num_edges(), 5);
        assert_eq!(f.objective.num_states(), 4);
        let run = |w: &[&str]| f.objective.run_word(0, &f.objective.alphabet().parse_word(w).unwrap()).unwrap();
        assert!(!f.objective.is_sink(run(&["a", "a"])));
        assert!(f.objective.is_sink(run(&["a", "b"])));
    }
}
