//! Posted prices against buyers with random valuations.
//!
//! cargo run --release --example dynamic_pricing

use pmgames::classify::classify;
use pmgames::feedexp::{default_encoding, feedexp_precondition};
use pmgames::game::build_pricing_game;
use pmgames::rational::{ratio, to_decimal};
use pmgames::render;
use pmgames::sim::{batch, Environment, PolicySpec};

fn main() {
    let prices = [ratio(1, 4), ratio(1, 2), ratio(3, 4)];
    let valuations = [ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(1, 1)];
    let g = build_pricing_game(&prices, &valuations).unwrap();
    println!("{}", render::matrices(&g));

    print!("{}", render::classification(&g, &classify(&g)));
    let enc = default_encoding(&g);
    print!("{}", render::feedexp(&g, &enc, &feedexp_precondition(&g, &enc).unwrap()));

    let env = Environment::Stochastic(vec![ratio(1, 10), ratio(2, 5), ratio(3, 10), ratio(1, 5)]);
    let b = batch(&g, &env, &PolicySpec::Uniform, 5_000, 20, 3, None).unwrap();
    println!(
        "\nuniform prices, T=5000: mean regret {} ± {:.2}",
        to_decimal(&b.summary.mean, 2),
        b.summary.std_error
    );
}
