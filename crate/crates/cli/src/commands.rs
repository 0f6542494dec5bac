//! One function per subcommand.

use std::fmt::Write as _;
use std::path::Path;

use safemem::dot::{arena_dot, automaton_dot, poset_dot};
use safemem::format::{ArenaSpec, AutomatonSpec, LassoSpec};
use safemem::game::{verify_strategy, MealyStrategy, StrategySpec, Verdict};
use safemem::generators::{
    gen_energy, gen_figure1, gen_generalized_safety, gen_lower_bound_game, gen_outbidding, gen_counter, CounterAction,
};
use safemem::model::{Arena, SafetyAutomaton, VertexId};
use safemem::residual::{build_poset, poset_width, ResidualPoset, WidthCertificate};
use safemem::synthesis::{
    minimal_memory_bruteforce_with, synthesize_chain_cover, synthesize_min_residual, BruteforceBudget, LabelKind,
    SynthesisResult,
};
use safemem::Exec;
use serde::Serialize;

use crate::io::{emit, load_arena, load_objective, load_objective_raw, read_json, to_json, write_file, CliError, CliResult};
use crate::{Algo, Family, Format, GameArgs};

#[derive(Serialize)]
struct ResidualOut {
    id: usize,
    state: String,
    representative: Vec<String>,
}

#[derive(Serialize)]
struct PosetOut {
    alphabet: Vec<String>,
    residuals: Vec<ResidualOut>,
    initial: usize,
    /// Strict inclusions `[smaller, larger]`.
    order: Vec<[usize; 2]>,
    hasse: Vec<[usize; 2]>,
    width: usize,
    antichain: Vec<usize>,
    chains: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct SeparatorOut {
    i: usize,
    j: usize,
    #[serde(flatten)]
    lasso: LassoSpec,
}

#[derive(Serialize)]
struct WidthOut {
    width: usize,
    antichain: Vec<usize>,
    chains: Vec<Vec<usize>>,
    /// Residual id to automaton state name.
    states: Vec<String>,
    representatives: Vec<Vec<String>>,
    separators: Vec<SeparatorOut>,
}

#[derive(Serialize)]
struct LabelOut {
    vertex: String,
    m: String,
    residual: String,
}

#[derive(Serialize)]
struct StrategyOut {
    memory_size: usize,
    #[serde(flatten)]
    strategy: StrategySpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<LabelOut>>,
}

#[derive(Serialize)]
struct EdgeOut {
    src: String,
    dst: String,
    color: String,
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
enum VerdictOut {
    Winning { warnings: Vec<String> },
    Losing { start: String, edges: Vec<EdgeOut> },
}

#[derive(Serialize)]
struct BruteforceOut {
    minimal_memory: usize,
    max_m: usize,
}

#[derive(Serialize)]
struct Figure1Out {
    v0: String,
    objective: AutomatonSpec,
    arena: ArenaSpec,
}

fn analyse(objective: &Path) -> CliResult<(ResidualPoset, WidthCertificate)> {
    let aut = load_objective(objective)?;
    let poset = build_poset(&aut)?;
    let cert = poset_width(&poset)?;
    Ok((poset, cert))
}

fn display_rep(poset: &ResidualPoset, r: usize) -> String {
    let w = poset.representative(r);
    if w.is_empty() {
        "ε".to_string()
    } else {
        poset.automaton().alphabet().display_word(w)
    }
}

pub fn residuals(objective: &Path, format: Format) -> CliResult {
    let (poset, cert) = analyse(objective)?;
    let al = poset.automaton().alphabet();
    let text = match format {
        Format::Dot => poset_dot(&poset),
        Format::Json => {
            let out = PosetOut {
                alphabet: al.names().to_vec(),
                residuals: poset
                    .residuals()
                    .map(|r| ResidualOut {
                        id: r,
                        state: poset.name(r).to_string(),
                        representative: al.format_word(poset.representative(r)),
                    })
                    .collect(),
                initial: poset.initial(),
                order: poset
                    .residuals()
                    .flat_map(|a| poset.residuals().map(move |b| (a, b)))
                    .filter(|&(a, b)| poset.lt(a, b))
                    .map(|(a, b)| [a, b])
                    .collect(),
                hasse: poset.hasse_edges().into_iter().map(|(a, b)| [a, b]).collect(),
                width: cert.width,
                antichain: cert.antichain.clone(),
                chains: cert.chains.clone(),
            };
            to_json(&out)?
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "residuals: {}  width: {}", poset.len(), cert.width);
            let _ = writeln!(s, "{:>4}  {:<16}  {:<16}  larger", "id", "state", "representative");
            for r in poset.residuals() {
                let larger: Vec<String> =
                    poset.residuals().filter(|&b| poset.lt(r, b)).map(|b| b.to_string()).collect();
                let mark = if r == poset.initial() { "*" } else { " " };
                let _ = writeln!(
                    s,
                    "{mark}{r:>3}  {:<16}  {:<16}  {}",
                    poset.name(r),
                    display_rep(&poset, r),
                    larger.join(" ")
                );
            }
            let _ = writeln!(s, "antichain: {:?}", cert.antichain);
            for (i, c) in cert.chains.iter().enumerate() {
                let _ = writeln!(s, "chain {i}: {c:?}");
            }
            s
        }
    };
    emit(None, &text)
}

pub fn width(objective: &Path, format: Format) -> CliResult {
    let (poset, cert) = analyse(objective)?;
    let al = poset.automaton().alphabet();
    let text = match format {
        Format::Dot => poset_dot(&poset),
        Format::Json => to_json(&WidthOut {
            width: cert.width,
            antichain: cert.antichain.clone(),
            chains: cert.chains.clone(),
            states: poset.residuals().map(|r| poset.name(r).to_string()).collect(),
            representatives: poset.residuals().map(|r| al.format_word(poset.representative(r))).collect(),
            separators: cert
                .separators
                .iter()
                .map(|s| SeparatorOut { i: s.i, j: s.j, lasso: LassoSpec::from_lasso(al, &s.lasso) })
                .collect(),
        })?,
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "width: {}", cert.width);
            for (i, &r) in cert.antichain.iter().enumerate() {
                let _ = writeln!(s, "antichain {i}: {} ({})", poset.name(r), display_rep(&poset, r));
            }
            for (i, c) in cert.chains.iter().enumerate() {
                let names: Vec<&str> = c.iter().map(|&r| poset.name(r)).collect();
                let _ = writeln!(s, "chain {i}: {}", names.join(" < "));
            }
            for sep in &cert.separators {
                let word = |w: &[safemem::model::Symbol]| {
                    if w.is_empty() {
                        "ε".to_string()
                    } else {
                        al.display_word(w)
                    }
                };
                let _ = writeln!(
                    s,
                    "separator {} / {}: {}·({})^ω",
                    sep.i,
                    sep.j,
                    word(&sep.lasso.prefix),
                    word(&sep.lasso.cycle)
                );
            }
            s
        }
    };
    emit(None, &text)
}

struct Game {
    arena: Arena,
    objective: SafetyAutomaton,
    v0: VertexId,
}

fn load_game(game: &GameArgs) -> CliResult<Game> {
    let arena = load_arena(&game.arena)?;
    let objective = load_objective(&game.objective)?;
    safemem::game::check_alphabets(&arena, &objective)?;
    let v0 = arena.vertex_or_err(&game.v0)?;
    Ok(Game { arena, objective, v0 })
}

fn run_synthesis(game: &Game, algo: Algo) -> CliResult<SynthesisResult> {
    let result = match algo {
        Algo::MinResidual => synthesize_min_residual(&game.arena, &game.objective, game.v0),
        Algo::Chain => {
            let poset = build_poset(&game.objective)?;
            let cert = poset_width(&poset)?;
            synthesize_chain_cover(&game.arena, &game.objective, game.v0, &cert)
        }
    };
    result.map_err(|e| match e {
        safemem::Error::NotWinning(v) => CliError::Lose(format!("Eve loses from {v}")),
        other => other.into(),
    })
}

fn strategy_out(arena: &Arena, strategy: &MealyStrategy) -> StrategyOut {
    StrategyOut {
        memory_size: strategy.memory_size(),
        strategy: StrategySpec::from_strategy(arena, strategy),
        kind: None,
        labels: None,
    }
}

pub fn solve(game: &GameArgs, algo: Algo, verify: bool, out: Option<&Path>) -> CliResult {
    let g = load_game(game)?;
    let result = run_synthesis(&g, algo)?;
    if verify {
        match verify_strategy(&g.arena, &g.objective, &result.strategy, g.v0)? {
            Verdict::Winning { .. } => {}
            Verdict::Losing { .. } => {
                return Err(CliError::Internal("synthesized strategy fails verification".into()));
            }
        }
    }
    emit(out, &to_json(&strategy_out(&g.arena, &result.strategy))?)
}

pub fn synthesize(game: &GameArgs, algo: Algo, out: Option<&Path>, format: Format) -> CliResult {
    let g = load_game(game)?;
    let result = run_synthesis(&g, algo)?;
    let poset = build_poset(&g.objective)?;
    let mem = &result.strategy.memory;
    let labels: Vec<LabelOut> = result
        .labels()
        .map(|(v, i, r)| LabelOut {
            vertex: g.arena.id(v).to_string(),
            m: mem.name(i).to_string(),
            residual: poset.name(r).to_string(),
        })
        .collect();
    let kind = match result.kind {
        LabelKind::MinimalResidual => "minimal-residual",
        LabelKind::ChainMinimum => "chain-minimum",
    };
    let text = match format {
        Format::Json => {
            let mut s = strategy_out(&g.arena, &result.strategy);
            s.kind = Some(kind);
            s.labels = Some(labels);
            to_json(&s)?
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "memory_size: {}  labels: {kind}", result.memory_size);
            let _ = writeln!(s, "{:<12}  {:<8}  residual", "vertex", "memory");
            for l in &labels {
                let _ = writeln!(s, "{:<12}  {:<8}  {}", l.vertex, l.m, l.residual);
            }
            s
        }
        Format::Dot => return Err(CliError::Input("synthesize supports --format json or table".into())),
    };
    emit(out, &text)
}

/// Accepts both plain strategy files and `solve`/`synthesize` output.
fn load_strategy(path: &Path, arena: &Arena) -> CliResult<MealyStrategy> {
    let mut value: serde_json::Value = read_json(path)?;
    if let Some(obj) = value.as_object_mut() {
        for key in ["memory_size", "kind", "labels"] {
            obj.remove(key);
        }
    }
    let spec: StrategySpec =
        serde_json::from_value(value).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(spec.to_strategy(arena)?)
}

pub fn verify(game: &GameArgs, strategy: &Path) -> CliResult {
    let g = load_game(game)?;
    let strat = load_strategy(strategy, &g.arena)?;
    let verdict = verify_strategy(&g.arena, &g.objective, &strat, g.v0)?;
    let al = g.arena.alphabet();
    let (out, losing) = match verdict {
        Verdict::Winning { warnings } => (VerdictOut::Winning { warnings }, false),
        Verdict::Losing { counterexample } => {
            let edges = counterexample
                .edges
                .iter()
                .map(|&e| {
                    let edge = g.arena.edge(e);
                    EdgeOut {
                        src: g.arena.id(edge.src).to_string(),
                        dst: g.arena.id(edge.dst).to_string(),
                        color: al.name(edge.color).to_string(),
                    }
                })
                .collect();
            (VerdictOut::Losing { start: g.arena.id(counterexample.start).to_string(), edges }, true)
        }
    };
    emit(None, &to_json(&out)?)?;
    if losing {
        Err(CliError::Lose("the strategy loses".into()))
    } else {
        Ok(())
    }
}

pub fn lowerbound(objective: &Path, out_dir: &Path, dot: bool) -> CliResult {
    let aut = load_objective_raw(objective)?;
    let game = gen_lower_bound_game(&aut)?;
    let witness_ok = verify_strategy(&game.arena, &game.objective, &game.witness, game.v0)?.is_winning();
    if !witness_ok {
        return Err(CliError::Internal("witness strategy loses".into()));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Input(format!("{}: {e}", out_dir.display())))?;
    write_file(&out_dir.join("arena.json"), &to_json(&ArenaSpec::from_arena(&game.arena))?)?;
    write_file(&out_dir.join("objective.json"), &to_json(&AutomatonSpec::from_automaton(&game.objective))?)?;
    write_file(&out_dir.join("witness.json"), &to_json(&strategy_out(&game.arena, &game.witness))?)?;
    if dot {
        write_file(&out_dir.join("arena.dot"), &arena_dot(&game.arena))?;
    }
    for w in &game.warnings {
        eprintln!("warning: {w}");
    }
    // option uniqueness is established by the generator, which fails otherwise
    println!("width={}, witness=OK, option-uniqueness=OK", game.width);
    Ok(())
}

pub fn generate(family: &Family, dot: bool) -> CliResult {
    let objective_text = |aut: &SafetyAutomaton| -> CliResult<String> {
        if dot {
            Ok(automaton_dot(aut))
        } else {
            to_json(&AutomatonSpec::from_automaton(aut))
        }
    };
    let aut = match family {
        Family::Gensafety { k } => gen_generalized_safety(*k)?,
        Family::Energy { cap, init } => gen_energy(*cap, *init)?,
        Family::Outbidding { n } => gen_outbidding(*n)?,
        Family::Counter { n, actions } => {
            let actions: Vec<CounterAction> =
                actions.iter().map(|a| CounterAction::builtin(a.trim(), *n)).collect::<Result<_, _>>()?;
            gen_counter(*n, &actions)?
        }
        Family::Figure1 { out_dir } => {
            let fig = gen_figure1()?;
            let arena_text = if dot { arena_dot(&fig.arena) } else { to_json(&ArenaSpec::from_arena(&fig.arena))? };
            return match out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
                    let ext = if dot { "dot" } else { "json" };
                    write_file(&dir.join(format!("objective.{ext}")), &objective_text(&fig.objective)?)?;
                    write_file(&dir.join(format!("arena.{ext}")), &arena_text)
                }
                None if dot => emit(None, &format!("{}{}", objective_text(&fig.objective)?, arena_text)),
                None => emit(
                    None,
                    &to_json(&Figure1Out {
                        v0: fig.arena.id(fig.v0).to_string(),
                        objective: AutomatonSpec::from_automaton(&fig.objective),
                        arena: ArenaSpec::from_arena(&fig.arena),
                    })?,
                ),
            };
        }
    };
    emit(None, &objective_text(&aut)?)
}

pub fn bruteforce(game: &GameArgs, max_m: usize, max_instance: usize, max_nodes: u64) -> CliResult {
    let g = load_game(game)?;
    let budget = BruteforceBudget { max_instance, max_nodes };
    match minimal_memory_bruteforce_with(&g.arena, &g.objective, g.v0, max_m, budget, Exec::default())? {
        Some(m) => emit(None, &to_json(&BruteforceOut { minimal_memory: m, max_m })?),
        None => Err(CliError::Lose(format!(
            "no winning strategy from {} with at most {max_m} memory states",
            game.v0
        ))),
    }
}
