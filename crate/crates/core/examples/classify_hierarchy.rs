//! One game per verdict, plus the dueling games.
//!
//! cargo run --release --example classify_hierarchy

use pmgames::classify::classify;
use pmgames::game::{build_dueling_game, build_mab_game, Game};
use pmgames::rational::{int, ratio};
use pmgames::render;

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn main() {
    // "ask" reveals the outcome but never pays; guessing pays but reveals nothing
    let label_efficient = Game::new(
        "label-efficient",
        labels(&["ask", "guess-a", "guess-b"]),
        labels(&["a", "b"]),
        labels(&["saw-a", "saw-b", "none"]),
        vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]],
        vec![vec![0, 1], vec![2, 2], vec![2, 2]],
    )
    .unwrap();

    // matching pennies played blind
    let blind = Game::new(
        "blind-matching",
        labels(&["a", "b"]),
        labels(&["x", "y"]),
        labels(&["-"]),
        vec![vec![int(1), int(0)], vec![int(0), int(1)]],
        vec![vec![0, 0], vec![0, 0]],
    )
    .unwrap();

    let dominated = Game::new(
        "dominated",
        labels(&["good", "bad"]),
        labels(&["x", "y"]),
        labels(&["-"]),
        vec![vec![int(1), ratio(1, 2)], vec![int(0), ratio(1, 2)]],
        vec![vec![0, 0], vec![0, 0]],
    )
    .unwrap();

    let mut games = vec![dominated, blind, label_efficient, build_mab_game(3).unwrap()];
    games.extend((2..=4).map(|k| build_dueling_game(k).unwrap()));
    for g in &games {
        let c = classify(g);
        println!("== {} (exit code {})", g.name(), c.verdict.exit_code());
        print!("{}", render::classification(g, &c));
    }
}
