use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::format::{ArenaSpec, AutomatonSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyAlphabet,
    EmptySymbol,
    DuplicateSymbol(String),
    DuplicateVertex(String),
    UnknownVertex(String),
    UnknownColor(String),
    DuplicateEdge { src: String, dst: String, color: String },
    DeadEnd(String),
    NoStates,
    DuplicateState(String),
    UnknownState(String),
    UnknownSymbol(String),
    Conflict { state: String, symbol: String },
    Incomplete { state: String, symbol: String },
    SinkEscape { state: String, symbol: String, to: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyAlphabet => write!(f, "empty alphabet"),
            EmptySymbol => write!(f, "empty symbol name"),
            DuplicateSymbol(s) => write!(f, "duplicate symbol {s}"),
            DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            UnknownColor(c) => write!(f, "unknown color {c}"),
            DuplicateEdge { src, dst, color } => write!(f, "duplicate edge {src} -> {dst} ({color})"),
            DeadEnd(v) => write!(f, "dead end at {v}"),
            NoStates => write!(f, "no states"),
            DuplicateState(q) => write!(f, "duplicate state {q}"),
            UnknownState(q) => write!(f, "unknown state {q}"),
            UnknownSymbol(a) => write!(f, "unknown symbol {a}"),
            Conflict { state, symbol } => write!(f, "conflicting transitions from {state} on {symbol}"),
            Incomplete { state, symbol } => write!(f, "incomplete: no transition from {state} on {symbol}"),
            SinkEscape { state, symbol, to } => write!(f, "sink escape: {state} --{symbol}--> {to}"),
        }
    }
}

/// List of invariant violations; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn check_alphabet(symbols: &[String], out: &mut Vec<Violation>) -> HashSet<String> {
    if symbols.is_empty() {
        out.push(Violation::EmptyAlphabet);
    }
    let mut seen = HashSet::new();
    for s in symbols {
        if s.is_empty() {
            out.push(Violation::EmptySymbol);
        } else if !seen.insert(s.clone()) {
            out.push(Violation::DuplicateSymbol(s.clone()));
        }
    }
    seen
}

pub fn validate_arena(arena: &ArenaSpec) -> ValidationReport {
    let mut v = Vec::new();
    let colors = check_alphabet(&arena.alphabet, &mut v);
    let mut ids = HashSet::new();
    for vx in &arena.vertices {
        if !ids.insert(vx.id.as_str()) {
            v.push(Violation::DuplicateVertex(vx.id.clone()));
        }
    }
    let mut has_out = HashSet::new();
    let mut edges = HashSet::new();
    for e in &arena.edges {
        let mut ok = true;
        for end in [&e.src, &e.dst] {
            if !ids.contains(end.as_str()) {
                v.push(Violation::UnknownVertex(end.clone()));
                ok = false;
            }
        }
        if !colors.contains(&e.color) {
            v.push(Violation::UnknownColor(e.color.clone()));
            ok = false;
        }
        if !edges.insert((e.src.as_str(), e.dst.as_str(), e.color.as_str())) {
            v.push(Violation::DuplicateEdge { src: e.src.clone(), dst: e.dst.clone(), color: e.color.clone() });
        }
        if ok {
            has_out.insert(e.src.as_str());
        }
    }
    for vx in &arena.vertices {
        if !has_out.contains(vx.id.as_str()) {
            v.push(Violation::DeadEnd(vx.id.clone()));
        }
    }
    ValidationReport { violations: v }
}

pub fn validate_automaton(aut: &AutomatonSpec) -> ValidationReport {
    let mut v = Vec::new();
    let symbols = check_alphabet(&aut.alphabet, &mut v);
    if aut.states.is_empty() {
        v.push(Violation::NoStates);
    }
    let mut states = HashSet::new();
    for q in &aut.states {
        if !states.insert(q.as_str()) {
            v.push(Violation::DuplicateState(q.clone()));
        }
    }
    if !states.contains(aut.initial.as_str()) {
        v.push(Violation::UnknownState(aut.initial.clone()));
    }
    let mut sink = HashSet::new();
    for q in &aut.sink {
        if states.contains(q.as_str()) {
            sink.insert(q.as_str());
        } else {
            v.push(Violation::UnknownState(q.clone()));
        }
    }
    let mut table: HashMap<(&str, &str), &str> = HashMap::new();
    for t in &aut.delta {
        let mut ok = true;
        for q in [&t.from, &t.to] {
            if !states.contains(q.as_str()) {
                v.push(Violation::UnknownState(q.clone()));
                ok = false;
            }
        }
        if !symbols.contains(&t.symbol) {
            v.push(Violation::UnknownSymbol(t.symbol.clone()));
            ok = false;
        }
        if !ok {
            continue;
        }
        match table.insert((t.from.as_str(), t.symbol.as_str()), t.to.as_str()) {
            Some(prev) if prev != t.to => {
                v.push(Violation::Conflict { state: t.from.clone(), symbol: t.symbol.clone() })
            }
            _ => {}
        }
    }
    let mut seen_states = HashSet::new();
    for q in &aut.states {
        if !seen_states.insert(q.as_str()) {
            continue;
        }
        let mut seen_syms = HashSet::new();
        for a in &aut.alphabet {
            if !seen_syms.insert(a.as_str()) {
                continue;
            }
            match table.get(&(q.as_str(), a.as_str())) {
                None => v.push(Violation::Incomplete { state: q.clone(), symbol: a.clone() }),
                Some(to) if sink.contains(q.as_str()) && !sink.contains(to) => v.push(Violation::SinkEscape {
                    state: q.clone(),
                    symbol: a.clone(),
                    to: to.to_string(),
                }),
                _ => {}
            }
        }
    }
    ValidationReport { violations: v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{EdgeSpec, TransitionSpec, VertexSpec};
    use crate::model::Owner;

    fn t(from: &str, symbol: &str, to: &str) -> TransitionSpec {
        TransitionSpec { from: from.into(), symbol: symbol.into(), to: to.into() }
    }

    #[test]
    fn dead_end_and_dangling_reference() {
        let spec = ArenaSpec {
            alphabet: vec!["a".into()],
            vertices: vec![VertexSpec { id: "v".into(), owner: Owner::Eve }],
            edges: vec![],
        };
        let r = validate_arena(&spec);
        assert_eq!(r.violations, vec![Violation::DeadEnd("v".into())]);
        assert_eq!(r.to_string(), "dead end at v");

        let spec = ArenaSpec {
            edges: vec![
                EdgeSpec { src: "v".into(), dst: "v".into(), color: "a".into() },
                EdgeSpec { src: "v".into(), dst: "x".into(), color: "a".into() },
            ],
            ..spec
        };
        let r = validate_arena(&spec);
        assert_eq!(r.violations, vec![Violation::UnknownVertex("x".into())]);
        assert_eq!(r.to_string(), "unknown vertex x");
    }

    #[test]
    fn duplicate_triples_rejected_but_parallel_colors_allowed() {
        let e = |c: &str| EdgeSpec { src: "v".into(), dst: "v".into(), color: c.into() };
        let mut spec = ArenaSpec {
            alphabet: vec!["a".into(), "b".into()],
            vertices: vec![VertexSpec { id: "v".into(), owner: Owner::Adam }],
            edges: vec![e("a"), e("b")],
        };
        assert!(validate_arena(&spec).is_ok());
        spec.edges.push(e("a"));
        assert!(matches!(validate_arena(&spec).violations[..], [Violation::DuplicateEdge { .. }]));
    }

    #[test]
    fn sink_escape_and_incompleteness() {
        let mut spec = AutomatonSpec {
            alphabet: vec!["a".into()],
            states: vec!["q".into(), "s".into()],
            initial: "q".into(),
            sink: vec!["s".into()],
            delta: vec![t("q", "a", "s"), t("s", "a", "q")],
        };
        let r = validate_automaton(&spec);
        assert!(r.to_string().starts_with("sink escape"));
        spec.delta.pop();
        let r = validate_automaton(&spec);
        assert!(r.to_string().starts_with("incomplete"));
        spec.delta.push(t("s", "a", "s"));
        assert!(validate_automaton(&spec).is_ok());
    }
}
