//! Seeded random instances and slow reference implementations.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use safemem::model::{Alphabet, Arena, Lasso, Owner, SafetyAutomaton, StateId, Symbol, VertexId};

pub const DEFAULT_SEED: u64 = 0x5afe_3e30;

/// `SAFEMEM_SEED` overrides the fixed default seed.
pub fn seed() -> u64 {
    std::env::var("SAFEMEM_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// A complete automaton with `n` states, state `n - 1` the absorbing sink,
/// and each other transition going to the sink with probability `p_sink`.
pub fn random_automaton(rng: &mut impl Rng, n: usize, symbols: usize, p_sink: f64) -> SafetyAutomaton {
    assert!(n >= 2);
    let alphabet = Alphabet::new((0..symbols).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap();
    let names = (0..n).map(|q| if q == n - 1 { "sink".to_string() } else { format!("q{q}") }).collect();
    let mut sink = vec![false; n];
    sink[n - 1] = true;
    let table: Vec<StateId> = (0..n * symbols)
        .map(|x| {
            if x / symbols == n - 1 || rng.gen_bool(p_sink) {
                n - 1
            } else {
                rng.gen_range(0..n - 1)
            }
        })
        .collect();
    SafetyAutomaton::from_fn(alphabet, names, 0, sink, |q, a| table[q * symbols + a.index()]).unwrap()
}

/// Random arena over `alphabet` with 1 to 3 distinct out-edges per vertex.
pub fn random_arena(rng: &mut impl Rng, alphabet: &Alphabet, n: usize) -> Arena {
    random_arena_with_degree(rng, alphabet, n, 3)
}

pub fn random_arena_with_degree(rng: &mut impl Rng, alphabet: &Alphabet, n: usize, max_degree: usize) -> Arena {
    let mut b = Arena::builder(alphabet.clone());
    for v in 0..n {
        let owner = if rng.gen_bool(0.5) { Owner::Eve } else { Owner::Adam };
        b.add_vertex(format!("v{v}"), owner).unwrap();
    }
    for v in 0..n {
        let mut edges: Vec<(VertexId, Symbol)> = Vec::new();
        let degree = rng.gen_range(1..=max_degree).min(n * alphabet.len());
        while edges.len() < degree {
            let e = (rng.gen_range(0..n), Symbol(rng.gen_range(0..alphabet.len())));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
        for (dst, c) in edges {
            b.add_edge(v, dst, c).unwrap();
        }
    }
    b.build().unwrap()
}

/// Safety of `prefix · cycle^ω` from `q` by direct simulation: after `|Q|`
/// rounds of the cycle every boundary state has repeated.
pub fn lasso_safe(aut: &SafetyAutomaton, q: StateId, lasso: &Lasso) -> bool {
    let mut at = q;
    let rounds = std::iter::repeat(&lasso.cycle).take(aut.num_states() + 1).flatten();
    for &c in lasso.prefix.iter().chain(rounds) {
        if aut.is_sink(at) {
            return false;
        }
        at = aut.next(at, c);
    }
    !aut.is_sink(at)
}

/// All words over `symbols` letters of length `lo..=hi`.
pub fn words(symbols: usize, lo: usize, hi: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Symbol>> = vec![Vec::new()];
    for len in 0..=hi {
        if len >= lo {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| (0..symbols).map(move |a| {
                let mut w = w.clone();
                w.push(Symbol(a));
                w
            }))
            .collect();
    }
    out
}

/// Every lasso with prefix length `<= max_prefix` and cycle length in
/// `1..=max_cycle`.
pub fn lassos(symbols: usize, max_prefix: usize, max_cycle: usize) -> Vec<Lasso> {
    let cycles = words(symbols, 1, max_cycle);
    words(symbols, 0, max_prefix)
        .into_iter()
        .flat_map(|p| cycles.iter().map(move |c| Lasso { prefix: p.clone(), cycle: c.clone() }))
        .collect()
}

/// Inclusion matrix `incl[q1][q2]` from a table of lasso outcomes: `L(q1)`
/// is included in `L(q2)` iff no lasso is safe from `q1` and unsafe from `q2`.
pub fn inclusion_by_enumeration(aut: &SafetyAutomaton, lassos: &[Lasso]) -> Vec<Vec<bool>> {
    let n = aut.num_states();
    let safe: Vec<Vec<bool>> = (0..n).map(|q| lassos.iter().map(|l| lasso_safe(aut, q, l)).collect()).collect();
    (0..n)
        .map(|q1| (0..n).map(|q2| (0..lassos.len()).all(|x| !safe[q1][x] || safe[q2][x])).collect())
        .collect()
}

/// Largest antichain by trying every subset, for `n <= 20`.
pub fn max_antichain_exhaustive(n: usize, comparable: impl Fn(usize, usize) -> bool) -> usize {
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.iter().enumerate().all(|(x, &a)| members[x + 1..].iter().all(|&b| !comparable(a, b))) {
            best = size;
        }
    }
    best
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Inclusion between every pair of states, decided over all lassos at once.
///
/// Two finite words act identically on every state iff they induce the same
/// transformation of the state set, and since the sink is absorbing a lasso
/// `x·y^ω` is safe from `q` iff the orbit of `f_x(q)` under `f_y` avoids the
/// sink. Enumerating the transformation monoid therefore covers every lasso
/// of every length. Refuses automata whose monoid exceeds `cap` elements.
pub fn inclusion_by_monoid(aut: &SafetyAutomaton, cap: usize) -> Option<Vec<Vec<bool>>> {
    let n = aut.num_states();
    let letters: Vec<Vec<StateId>> =
        aut.alphabet().iter().map(|a| (0..n).map(|q| aut.next(q, a)).collect()).collect();
    // semigroup generated by the letters (transformations of non-empty words)
    let mut semigroup: Vec<Vec<StateId>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    for f in &letters {
        if seen.insert(f.clone()) {
            queue.push_back(f.clone());
        }
    }
    while let Some(f) = queue.pop_front() {
        for g in &letters {
            let h: Vec<StateId> = f.iter().map(|&q| g[q]).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        semigroup.push(f);
        if semigroup.len() > cap {
            return None;
        }
    }
    let identity: Vec<StateId> = (0..n).collect();
    let safe_under = |f: &Vec<StateId>| -> Vec<bool> {
        (0..n)
            .map(|p| {
                let mut at = p;
                for _ in 0..=n {
                    if aut.is_sink(at) {
                        return false;
                    }
                    at = f[at];
                }
                !aut.is_sink(at)
            })
            .collect()
    };
    let periods: Vec<Vec<bool>> = semigroup.iter().map(safe_under).collect();
    let mut incl = vec![vec![true; n]; n];
    for fx in std::iter::once(&identity).chain(&semigroup) {
        for s in &periods {
            let safe: Vec<bool> = (0..n).map(|q| s[fx[q]]).collect();
            for q1 in (0..n).filter(|&q| safe[q]) {
                for q2 in (0..n).filter(|&q| !safe[q]) {
                    incl[q1][q2] = false;
                }
            }
        }
    }
    Some(incl)
}

/// Whether some Mealy strategy with `m` memory states wins from `v0`, by
/// backtracking over the next-move and update entries that the partial
/// strategy actually reaches. A branch fails only when a play consistent
/// with it reaches the sink; the entries read along that play form the
/// conflict, and decisions outside it are skipped (conflict-directed
/// backjumping). Memory updates into regions without Eve vertices are
/// fixed. Returns `None` when more than `max_nodes` partial strategies were
/// tried.
pub fn naive_memory_search(
    arena: &Arena,
    aut: &SafetyAutomaton,
    v0: VertexId,
    m: usize,
    max_nodes: usize,
) -> Option<bool> {
    use std::collections::{BTreeSet, HashMap, VecDeque};

    type Triple = (VertexId, usize, StateId);

    struct Search<'a> {
        arena: &'a Arena,
        aut: &'a SafetyAutomaton,
        v0: VertexId,
        m: usize,
        reaches_eve: Vec<bool>,
        // next entries are keys 0..|V|·m, update entries follow
        entries: Vec<Option<usize>>,
        nodes: usize,
        max_nodes: usize,
    }

    enum Outcome {
        Wins,
        Hole(usize),
        Conflict(BTreeSet<usize>),
    }

    impl Search<'_> {
        fn next_key(&self, v: VertexId, mem: usize) -> usize {
            v * self.m + mem
        }

        fn update_key(&self, mem: usize, e: usize) -> usize {
            self.arena.num_vertices() * self.m + mem * self.arena.num_edges() + e
        }

        fn explore(&self) -> Outcome {
            let start = (self.v0, 0usize, self.aut.initial());
            // parent triple and the entries read on the way
            let mut parent: HashMap<Triple, Option<(Triple, Vec<usize>)>> = HashMap::from([(start, None)]);
            let mut queue = VecDeque::from([start]);
            let mut first_hole = None;
            let conflict = |parent: &HashMap<Triple, Option<(Triple, Vec<usize>)>>, mut at: Triple, last: Vec<usize>| {
                let mut keys: BTreeSet<usize> = last.into_iter().collect();
                while let Some(Some((p, used))) = parent.get(&at) {
                    keys.extend(used.iter().copied());
                    at = *p;
                }
                Outcome::Conflict(keys)
            };
            while let Some(t @ (v, mem, q)) = queue.pop_front() {
                let moves: Vec<(usize, Option<usize>)> = match self.arena.owner(v) {
                    Owner::Eve => {
                        let k = self.next_key(v, mem);
                        match self.entries[k] {
                            Some(e) => vec![(e, Some(k))],
                            None => {
                                first_hole.get_or_insert(k);
                                continue;
                            }
                        }
                    }
                    Owner::Adam => self.arena.out_edges(v).iter().map(|&e| (e, None)).collect(),
                };
                for (e, via) in moves {
                    let edge = self.arena.edge(e);
                    let q2 = self.aut.next(q, edge.color);
                    let mut used: Vec<usize> = via.into_iter().collect();
                    if self.aut.is_sink(q2) {
                        return conflict(&parent, t, used);
                    }
                    let mem2 = if self.reaches_eve[edge.dst] {
                        let k = self.update_key(mem, e);
                        match self.entries[k] {
                            Some(j) => {
                                used.push(k);
                                j
                            }
                            None => {
                                first_hole.get_or_insert(k);
                                continue;
                            }
                        }
                    } else {
                        0
                    };
                    let t2 = (edge.dst, mem2, q2);
                    if !parent.contains_key(&t2) {
                        parent.insert(t2, Some((t, used)));
                        queue.push_back(t2);
                    }
                }
            }
            match first_hole {
                Some(k) => Outcome::Hole(k),
                None => Outcome::Wins,
            }
        }

        /// `Ok(())` when a winning completion exists, otherwise the set of
        /// decided entries responsible for every failure below.
        fn run(&mut self) -> Option<Result<(), BTreeSet<usize>>> {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return None;
            }
            let hole = match self.explore() {
                Outcome::Wins => return Some(Ok(())),
                Outcome::Conflict(keys) => return Some(Err(keys)),
                Outcome::Hole(k) => k,
            };
            let is_next = hole < self.arena.num_vertices() * self.m;
            let choices: Vec<usize> = if is_next {
                self.arena.out_edges(hole / self.m).to_vec()
            } else {
                (0..self.m).collect()
            };
            let mut blame = BTreeSet::new();
            for value in choices {
                self.entries[hole] = Some(value);
                let r = self.run();
                match r? {
                    Ok(()) => {
                        self.entries[hole] = None;
                        return Some(Ok(()));
                    }
                    Err(keys) if !keys.contains(&hole) => {
                        self.entries[hole] = None;
                        return Some(Err(keys));
                    }
                    Err(mut keys) => {
                        keys.remove(&hole);
                        blame.append(&mut keys);
                    }
                }
            }
            self.entries[hole] = None;
            Some(Err(blame))
        }
    }

    // memory is only ever read at Eve vertices
    let mut reaches_eve: Vec<bool> = (0..arena.num_vertices()).map(|v| arena.owner(v) == Owner::Eve).collect();
    loop {
        let before = reaches_eve.clone();
        for e in arena.edges() {
            if reaches_eve[e.dst] {
                reaches_eve[e.src] = true;
            }
        }
        if reaches_eve == before {
            break;
        }
    }
    let entries = vec![None; arena.num_vertices() * m + m * arena.num_edges()];
    let mut s = Search { arena, aut, v0, m, reaches_eve, entries, nodes: 0, max_nodes };
    s.run().map(|r| r.is_ok())
}

/// Simulates `plays` random Adam behaviours of `steps` moves against a
/// synthesized strategy and counts the steps at which the memory label is
/// missing or not included in the residual actually reached.
pub fn label_violations(
    arena: &Arena,
    poset: &safemem::residual::ResidualPoset,
    result: &safemem::synthesis::SynthesisResult,
    v0: VertexId,
    rng: &mut impl Rng,
    plays: usize,
    steps: usize,
) -> usize {
    use rand::seq::SliceRandom;
    let strat = &result.strategy;
    let mut violations = 0;
    for _ in 0..plays {
        let (mut v, mut m, mut r) = (v0, strat.memory.initial(), Some(poset.initial()));
        for _ in 0..=steps {
            let Some(cur) = r else {
                violations += 1;
                break;
            };
            match result.label(v, m) {
                Some(l) if poset.leq(l, cur) => {}
                _ => violations += 1,
            }
            let e = match arena.owner(v) {
                Owner::Eve => strat.next(v, m).expect("reached pairs have a move"),
                Owner::Adam => *arena.out_edges(v).choose(rng).unwrap(),
            };
            let edge = arena.edge(e);
            m = strat.memory.update(m, e);
            r = poset.step(cur, edge.color);
            v = edge.dst;
        }
    }
    violations
}
