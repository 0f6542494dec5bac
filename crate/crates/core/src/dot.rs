//! Graphviz output.

use std::fmt::Write;

use crate::game::ProductGame;
use crate::model::{Arena, Owner, SafetyAutomaton};
use crate::residual::ResidualPoset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn automaton_dot(aut: &SafetyAutomaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
    for q in 0..aut.num_states() {
        let shape = if aut.is_sink(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{q} [label={}, shape={shape}];", quote(aut.name(q)));
    }
    let _ = writeln!(out, "  __start -> q{};", aut.initial());
    for q in 0..aut.num_states() {
        // merge parallel transitions into one labelled edge
        let mut targets: Vec<(usize, Vec<&str>)> = Vec::new();
        for a in aut.alphabet().iter() {
            let t = aut.next(q, a);
            match targets.iter_mut().find(|(r, _)| *r == t) {
                Some((_, labels)) => labels.push(aut.alphabet().name(a)),
                None => targets.push((t, vec![aut.alphabet().name(a)])),
            }
        }
        for (t, labels) in targets {
            let _ = writeln!(out, "  q{q} -> q{t} [label={}];", quote(&labels.join(",")));
        }
    }
    out.push_str("}\n");
    out
}

pub fn arena_dot(arena: &Arena) -> String {
    arena_dot_with(arena, |_| "")
}

fn arena_dot_with<'a>(arena: &Arena, style: impl Fn(usize) -> &'a str) -> String {
    let mut out = String::from("digraph arena {\n");
    for v in 0..arena.num_vertices() {
        let shape = match arena.owner(v) {
            Owner::Eve => "circle",
            Owner::Adam => "box",
        };
        let _ = writeln!(out, "  v{v} [label={}, shape={shape}];", quote(arena.id(v)));
    }
    for (e, edge) in arena.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "  v{} -> v{} [label={}{}];",
            edge.src,
            edge.dst,
            quote(arena.alphabet().name(edge.color)),
            style(e)
        );
    }
    out.push_str("}\n");
    out
}

/// Bad edges are drawn dashed and red.
pub fn product_dot(product: &ProductGame) -> String {
    arena_dot_with(&product.arena, |e| if product.bad[e] { ", style=dashed, color=red" } else { "" })
}

/// Covering pairs of the inclusion order as solid edges from the smaller
/// residual to the larger, and letter transitions between residuals dotted.
pub fn poset_dot(poset: &ResidualPoset) -> String {
    let aut = poset.automaton();
    let mut out = String::from("digraph residuals {\n  rankdir=BT;\n");
    for r in poset.residuals() {
        let rep = aut.alphabet().display_word(poset.representative(r));
        let style = if r == poset.initial() { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  r{r} [label={}{style}];", quote(&format!("{} ({rep})", poset.name(r))));
    }
    for (a, b) in poset.hasse_edges() {
        let _ = writeln!(out, "  r{a} -> r{b};");
    }
    for r in poset.residuals() {
        for c in aut.alphabet().iter() {
            if let Some(s) = poset.step(r, c) {
                if s != r {
                    let _ = writeln!(
                        out,
                        "  r{r} -> r{s} [style=dotted, constraint=false, label={}];",
                        quote(aut.alphabet().name(c))
                    );
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
