//! Uniform play against the dueling EXP3 learner on three Bernoulli arms.
//!
//! cargo run --release --example regret_simulation

use pmgames::game::build_dueling_game;
use pmgames::rational::to_decimal;
use pmgames::sim::{batch, summary_csv, DuelingExp3, Environment, PolicySpec};

fn main() {
    let g = build_dueling_game(3).unwrap();
    let env = Environment::DuelingBernoulli(vec![0.9, 0.5, 0.5]);
    let runs = 20;
    for horizon in [2_000u64, 8_000] {
        let tuned = DuelingExp3::tuned_gamma(3, horizon);
        for (name, spec) in [
            ("uniform", PolicySpec::Uniform),
            ("dexp3 tuned", PolicySpec::DuelingExp3 { gamma: tuned }),
            ("dexp3 γ=0.01", PolicySpec::DuelingExp3 { gamma: 0.01 }),
        ] {
            let b = batch(&g, &env, &spec, horizon, runs, 1, None).unwrap();
            println!(
                "T={horizon:>5} {name:<13} mean regret {:>8} ± {:.1}",
                to_decimal(&b.summary.mean, 1),
                b.summary.std_error
            );
        }
    }

    // per-run regrets as exact decimals
    let b = batch(&g, &env, &PolicySpec::Uniform, 100, 3, 1, None).unwrap();
    print!("\n{}", summary_csv(&b.summary, 4));
}
