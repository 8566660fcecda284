//! Cell decomposition and neighbor graph; pipe the DOT part into `dot -Tsvg`.
//!
//! cargo run --example cell_geometry -- 3

use pmgames::game::build_dueling_game;
use pmgames::geometry::{cell_decomposition, intersection_within_cell, neighbor_dot, neighbor_pairs};
use pmgames::render;

fn main() {
    let arms: usize = std::env::args().nth(1).map_or(3, |a| a.parse().expect("arm count"));
    let g = build_dueling_game(arms).unwrap();
    let cells = cell_decomposition(&g);
    let neighbors = neighbor_pairs(&g, &cells);
    eprint!("{}", render::cells(&g, &cells));
    eprint!("{}", render::neighbors(&g, &neighbors));

    // the LP route agrees with the witness-based neighborhoods
    for p in &neighbors.pairs {
        for k in 0..g.num_actions() {
            assert_eq!(p.neighborhood.contains(&k), intersection_within_cell(&g, p.first, p.second, k));
        }
    }
    print!("{}", neighbor_dot(&g, &cells, &neighbors));
}
