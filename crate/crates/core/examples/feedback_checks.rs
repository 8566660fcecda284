//! Whether gains factor through encoded feedback (`B·H = G`), and the
//! all-ones point where every dueling action is optimal.
//!
//! cargo run --example feedback_checks

use pmgames::feedexp::{default_encoding, feedexp_precondition, point_local_witness, Encoding};
use pmgames::game::{build_dueling_game, build_mab_game};
use pmgames::rational::int;
use pmgames::render;

fn main() {
    let mab = build_mab_game(2).unwrap();
    let enc = default_encoding(&mab);
    println!("== {}", mab.name());
    print!("{}", render::feedexp(&mab, &enc, &feedexp_precondition(&mab, &enc).unwrap()));

    let duel = build_dueling_game(3).unwrap();
    let custom: Encoding = [("□", -1), ("◇", 0), ("■", 1)]
        .into_iter()
        .map(|(s, v)| (s.to_string(), int(v)))
        .collect();
    for enc in [default_encoding(&duel), custom] {
        println!("\n== {}", duel.name());
        print!("{}", render::feedexp(&duel, &enc, &feedexp_precondition(&duel, &enc).unwrap()));
    }

    println!();
    print!("{}", render::point_local(&duel, &point_local_witness(&duel).unwrap()));
}
