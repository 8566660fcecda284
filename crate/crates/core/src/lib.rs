//! Finite partial-monitoring games with exact rational arithmetic.
//!
//! Build a game ([`game`]), load or save it ([`gamefile`]), decompose the
//! outcome simplex into cells ([`geometry`]), test observability and classify
//! the game as Trivial, Easy, Hard or Hopeless ([`classify`]), and simulate
//! learners against it with exact regret ([`sim`]). The `pmg` binary wraps all
//! of this; see [`cli`] for its exit codes.
//!
//! ```
//! use pmgames::classify::{classify, Verdict};
//! use pmgames::game::build_dueling_game;
//!
//! let g = build_dueling_game(3).unwrap();
//! assert_eq!(classify(&g).verdict, Verdict::Easy);
//! ```

pub mod error;
pub mod game;
pub mod gamefile;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod geometry;
pub mod classify;
pub mod cli;
pub mod render;
pub mod feedexp;
pub mod observability;
pub mod sim;
