use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::{verify_strategy, winning_pairs, MealyStrategy, MemoryStructure, Verdict};
use crate::model::{Arena, ArenaBuilder, Lasso, Owner, Safety, SafetyAutomaton, VertexId, Word};
use crate::residual::{build_poset, minimize, poset_width, ResidualId};

/// A game in which Eve needs one memory state per element of a maximum
/// antichain of residuals.
///
/// Adam first spells one of the antichain representatives `w_1..w_K` and
/// reaches the Eve vertex `choice`; Eve moves to one of `options`; from
/// option `i` Adam spells a separator that is safe after `w_i` but unsafe
/// after `w_j` for some `j != i`.
#[derive(Clone, Debug)]
pub struct LowerBoundGame {
    /// The minimized objective, extended with a neutral symbol if it had none.
    pub objective: SafetyAutomaton,
    pub arena: Arena,
    pub v0: VertexId,
    pub witness: MealyStrategy,
    pub width: usize,
    pub antichain: Vec<ResidualId>,
    pub representatives: Vec<Word>,
    pub choice: VertexId,
    pub options: Vec<VertexId>,
    pub warnings: Vec<String>,
}

pub fn gen_lower_bound_game(objective: &SafetyAutomaton) -> Result<LowerBoundGame> {
    let (aut, neutral) = minimize(objective)?.with_neutral();
    let poset = build_poset(&aut)?;
    let cert = poset_width(&poset)?;
    let k = cert.width;
    let al = aut.alphabet().clone();
    let representatives: Vec<Word> = cert.antichain.iter().map(|&r| poset.representative(r).clone()).collect();
    let mut warnings = Vec::new();
    if k == 1 {
        warnings.push("width 1: the objective is half-positional and the game is trivial".to_string());
    }

    let mut b = Arena::builder(al.clone());
    let v0 = b.add_vertex("v0", Owner::Adam)?;
    let choice = b.add_vertex("choice", Owner::Eve)?;

    // Phase 1: a trie of the representatives. A word ending at a leaf enters
    // the choice vertex with its last letter, otherwise through a neutral edge.
    let mut trie: BTreeMap<Word, VertexId> = BTreeMap::from([(Vec::new(), v0)]);
    let is_proper_prefix = |w: &Word| representatives.iter().any(|u| u.len() > w.len() && u.starts_with(w));
    let mut final_edges = Vec::with_capacity(k);
    for w in &representatives {
        for n in 1..w.len() {
            if !trie.contains_key(&w[..n]) {
                let parent = trie[&w[..n - 1]];
                let v = b.add_vertex(format!("t:{}", al.display_word(&w[..n])), Owner::Adam)?;
                b.add_edge(parent, v, w[n - 1])?;
                trie.insert(w[..n].to_vec(), v);
            }
        }
        let e = if is_proper_prefix(w) || w.is_empty() {
            if !trie.contains_key(w) {
                let parent = trie[&w[..w.len() - 1]];
                let v = b.add_vertex(format!("t:{}", al.display_word(w)), Owner::Adam)?;
                b.add_edge(parent, v, w[w.len() - 1])?;
                trie.insert(w.clone(), v);
            }
            b.add_edge(trie[w], choice, neutral)?
        } else {
            b.add_edge(trie[&w[..w.len() - 1]], choice, w[w.len() - 1])?
        };
        final_edges.push(e);
    }

    // Phases 2 and 3: Eve's options and Adam's separator gadgets.
    let mut options = Vec::with_capacity(k);
    let mut option_edges = Vec::with_capacity(k);
    for i in 0..k {
        let o = b.add_vertex(format!("opt{}", i + 1), Owner::Adam)?;
        option_edges.push(b.add_edge(choice, o, neutral)?);
        options.push(o);
    }
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let lasso = cert
                .separator(i, j)
                .ok_or_else(|| Error::Internal(format!("missing separator ({i}, {j})")))?;
            add_gadget(&mut b, options[i], &format!("g{}.{}", i + 1, j + 1), lasso)?;
        }
    }
    b.close_dead_ends(neutral);
    let arena = b.build()?;

    // Witness: remember which representative was spelled, pick that option.
    let ne = arena.num_edges();
    let mut update = vec![0; k * ne];
    for m in 0..k {
        for e in 0..ne {
            update[m * ne + e] = final_edges.iter().position(|&f| f == e).unwrap_or(m);
        }
    }
    let mut next = vec![None; arena.num_vertices() * k];
    for m in 0..k {
        next[choice * k + m] = Some(option_edges[m]);
    }
    let witness = MealyStrategy::new(MemoryStructure::numbered(k, ne, update)?, next)?;
    if let Verdict::Losing { counterexample } = verify_strategy(&arena, &aut, &witness, v0)? {
        return Err(Error::Internal(format!(
            "lower-bound witness loses along {} edges",
            counterexample.edges.len()
        )));
    }

    let game = LowerBoundGame {
        objective: aut,
        arena,
        v0,
        witness,
        width: k,
        antichain: cert.antichain.clone(),
        representatives,
        choice,
        options,
        warnings,
    };
    check_option_uniqueness(&game, |i, j| cert.separator(i, j).cloned())?;
    Ok(game)
}

/// Path for the prefix, then a cycle for the period, hanging off `from`.
/// The cycle never returns to `from`, so Adam cannot switch gadgets.
fn add_gadget(b: &mut ArenaBuilder, from: VertexId, name: &str, lasso: &Lasso) -> Result<()> {
    let (x, y) = (&lasso.prefix, &lasso.cycle);
    let cycle: Vec<VertexId> = (0..y.len())
        .map(|t| b.add_vertex(format!("{name}.c{t}"), Owner::Adam))
        .collect::<Result<_>>()?;
    for t in 0..y.len() {
        b.add_edge(cycle[t], cycle[(t + 1) % y.len()], y[t])?;
    }
    if x.is_empty() {
        b.add_edge(from, cycle[1 % y.len()], y[0])?;
        return Ok(());
    }
    let mut at = from;
    for t in 0..x.len() - 1 {
        let v = b.add_vertex(format!("{name}.x{}", t + 1), Owner::Adam)?;
        b.add_edge(at, v, x[t])?;
        at = v;
    }
    b.add_edge(at, cycle[0], x[x.len() - 1])?;
    Ok(())
}

/// For every representative `w_i`, option `i` is the only option Eve wins
/// with after `w_i`; and every separator `u_{j,i}` is unsafe after `w_i`.
fn check_option_uniqueness<F>(game: &LowerBoundGame, separator: F) -> Result<()>
where
    F: Fn(usize, usize) -> Option<Lasso>,
{
    let aut = &game.objective;
    let wins = winning_pairs(&game.arena, aut)?;
    for (i, w) in game.representatives.iter().enumerate() {
        let q = aut.run_word(aut.initial(), w)?;
        for (j, &o) in game.options.iter().enumerate() {
            if wins.contains(o, q) != (i == j) {
                return Err(Error::Internal(format!("option {} after representative {}", j + 1, i + 1)));
            }
            if j != i {
                let u = separator(j, i).ok_or_else(|| Error::Internal("missing separator".into()))?;
                if aut.eval_lasso(q, &u)? != Safety::Unsafe {
                    return Err(Error::Internal(format!("separator ({}, {}) is safe after w_{}", j + 1, i + 1, i + 1)));
                }
            }
        }
    }
    Ok(())
}
