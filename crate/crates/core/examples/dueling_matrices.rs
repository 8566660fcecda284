//! Gain, feedback and one signal matrix of a dueling bandit.
//!
//! cargo run --example dueling_matrices -- 4

use pmgames::game::{build_dueling_game, ActionPair};
use pmgames::observability::signal_matrix;
use pmgames::render;

fn main() {
    let arms: usize = std::env::args().nth(1).map_or(4, |a| a.parse().expect("arm count"));
    let g = build_dueling_game(arms).expect("2..=16 arms");
    println!("{} actions, {} outcomes\n", g.num_actions(), g.num_outcomes());
    println!("{}", render::matrices(&g));

    let duel = ActionPair::new(1, 2).index(arms);
    print!("{}", render::signal(&g, &signal_matrix(&g, duel)));
}
