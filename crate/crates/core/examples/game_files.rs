//! Writing, reading and canonicalizing game files.
//!
//! cargo run --example game_files

use pmgames::classify::classify;
use pmgames::game::build_dueling_game;
use pmgames::gamefile::{load_game, save_game};

const HANDWRITTEN: &str = r#"{
  "name": "rock-paper-scissors",
  "actions": ["rock", "paper", "scissors"],
  "outcomes": ["rock", "paper", "scissors"],
  "alphabet": ["win", "tie", "lose"],
  "gain": [["0", "-1", "1"], ["2/2", "0", "-1"], ["-1", "1", "0.0"]],
  "feedback": [["tie", "lose", "win"], ["win", "tie", "lose"], ["lose", "win", "tie"]]
}"#;

fn main() {
    let g = build_dueling_game(2).unwrap();
    let text = save_game(&g);
    print!("{text}");
    assert_eq!(load_game(&text).unwrap(), g);

    let rps = load_game(HANDWRITTEN).unwrap();
    let canonical = save_game(&rps);
    print!("\n{canonical}");
    assert_eq!(save_game(&load_game(&canonical).unwrap()), canonical);
    println!("\n{}: {}", rps.name(), classify(&rps).verdict);

    let broken = HANDWRITTEN.replace("2/2", "1/0");
    println!("error: {}", load_game(&broken).unwrap_err());
}
