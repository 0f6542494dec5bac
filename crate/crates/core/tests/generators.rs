mod common;

use safemem::format::{ArenaSpec, AutomatonSpec};
use safemem::generators::{
    gen_counter, gen_energy, gen_figure1, gen_generalized_safety, gen_lower_bound_game, gen_outbidding, CounterAction,
};
use safemem::model::{validate_arena, validate_automaton, SafetyAutomaton, Safety};
use safemem::residual::{poset_width, width_bruteforce, ResidualPoset};
use safemem::Error;

fn valid(aut: &SafetyAutomaton) {
    assert!(validate_automaton(&AutomatonSpec::from_automaton(aut)).is_ok());
}

fn run(aut: &SafetyAutomaton, w: &[&str]) -> usize {
    aut.run_word(aut.initial(), &aut.alphabet().parse_word(w).unwrap()).unwrap()
}

fn width(aut: &SafetyAutomaton) -> usize {
    poset_width(&ResidualPoset::from_objective(aut).unwrap()).unwrap().width
}

#[test]
fn generalized_safety() {
    for k in 1..=6u64 {
        let aut = gen_generalized_safety(k as usize).unwrap();
        valid(&aut);
        assert_eq!(aut.num_states(), 1 << k);
        let poset = ResidualPoset::from_objective(&aut).unwrap();
        assert_eq!(poset.len() as u64, (1 << k) - 1);
        assert_eq!(poset_width(&poset).unwrap().width as u64, common::binomial(k, k / 2));
    }
    let g3 = ResidualPoset::from_objective(&gen_generalized_safety(3).unwrap()).unwrap();
    // inclusion is reverse subset order on the colors seen
    let seen = |r: usize| -> Vec<char> { g3.name(r).chars().filter(|c| c.is_ascii_digit()).collect() };
    for r in g3.residuals() {
        for s in g3.residuals() {
            let subset = seen(s).iter().all(|c| seen(r).contains(c));
            assert_eq!(g3.leq(r, s), subset);
        }
    }
    assert!(matches!(gen_generalized_safety(0), Err(Error::Invalid(_))));
}

#[test]
fn energy() {
    let aut = gen_energy(5, 0).unwrap();
    valid(&aut);
    assert_eq!(width(&aut), 1);
    let zero = gen_energy(0, 0).unwrap();
    assert_eq!(zero.num_states(), 2);
    assert!(zero.is_sink(run(&zero, &["b"])));
    for cap in 0..=32 {
        assert_eq!(width(&gen_energy(cap, cap / 2).unwrap()), 1);
    }
    assert!(gen_energy(3, 4).is_err());
}

#[test]
fn outbidding() {
    let aut = gen_outbidding(4).unwrap();
    valid(&aut);
    assert_eq!(aut.name(run(&aut, &["a", "a", "b"])), "a^2b");
    assert!(!aut.is_sink(run(&aut, &["a", "a", "b"])));
    assert!(aut.is_sink(run(&aut, &["a", "a", "b", "b", "a"])));
    assert!(aut.is_sink(run(&aut, &["a"; 5])));
    let p = ResidualPoset::from_objective(&aut).unwrap();
    assert_eq!(width_bruteforce(&p).unwrap(), 3);
    assert!(width_bruteforce(&ResidualPoset::from_objective(&gen_outbidding(1).unwrap()).unwrap()).unwrap() <= 3);
    for n in 3..=10 {
        assert_eq!(width(&gen_outbidding(n).unwrap()), 3, "N = {n}");
    }
    // n <= p: as many b's as a's is enough to reach c
    let lasso = safemem::model::Lasso::new(aut.alphabet().parse_word(&["a", "a", "b", "b"]).unwrap(), aut.alphabet().parse_word(&["c"]).unwrap()).unwrap();
    assert_eq!(aut.eval_lasso(aut.initial(), &lasso).unwrap(), Safety::Safe);
    assert!(gen_outbidding(0).is_err() && gen_outbidding(65).is_err());
}

#[test]
fn counters() {
    let acts = CounterAction::builtins(&["inc", "reset"], 7).unwrap();
    let aut = gen_counter(7, &acts).unwrap();
    valid(&aut);
    assert_eq!(width(&aut), 1);
    let seven = run(&aut, &["inc"; 7]);
    assert_eq!(aut.name(seven), "7");
    assert!(aut.is_sink(run(&aut, &["inc"; 8])));
    let half = gen_counter(7, &CounterAction::builtins(&["inc", "half"], 7).unwrap()).unwrap();
    let mut w = vec!["inc"; 5];
    w.push("half");
    assert_eq!(half.name(run(&half, &w)), "2");
    let broken = CounterAction::new("down", vec![Some(1), Some(0)]);
    assert!(matches!(gen_counter(1, &[broken]), Err(Error::Invalid(_))));
}

#[test]
fn figure1() {
    let fig = gen_figure1().unwrap();
    valid(&fig.objective);
    assert!(validate_arena(&ArenaSpec::from_arena(&fig.arena)).is_ok());
    assert_eq!(fig.arena.num_vertices(), 3);
    assert_eq!(width(&fig.objective), 2);
    assert!(!fig.objective.is_sink(run(&fig.objective, &["a", "a"])));
    assert!(fig.objective.is_sink(run(&fig.objective, &["a", "b"])));
}

#[test]
fn lower_bound_games() {
    for objective in [
        gen_generalized_safety(2).unwrap(),
        gen_generalized_safety(4).unwrap(),
        gen_energy(3, 0).unwrap(),
        gen_outbidding(4).unwrap(),
        gen_figure1().unwrap().objective,
    ] {
        let game = gen_lower_bound_game(&objective).unwrap();
        assert!(validate_arena(&ArenaSpec::from_arena(&game.arena)).is_ok());
        valid(&game.objective);
        assert_eq!(game.width, width(&objective));
        assert_eq!(game.options.len(), game.width);
        assert_eq!(game.witness.memory_size(), game.width);
        assert_eq!(game.warnings.is_empty(), game.width > 1);
    }
}
