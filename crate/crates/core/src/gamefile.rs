//! The `.pmg` game file: a JSON document with `name`, `actions`, `outcomes`,
//! `alphabet`, `gain` (rows of rational strings) and `feedback` (rows of
//! alphabet symbols).
//!
//! [`save_game`] writes the canonical form: rationals in lowest terms,
//! integers without a denominator, one matrix row per line.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Matrix};
use crate::game::Game;
use crate::rational;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDoc {
    name: String,
    actions: Vec<String>,
    outcomes: Vec<String>,
    alphabet: Vec<String>,
    gain: Vec<Vec<String>>,
    feedback: Vec<Vec<String>>,
}

pub fn load_game(text: &str) -> Result<Game, GameError> {
    let doc: GameDoc = serde_json::from_str(text)?;
    let (n, m) = (doc.actions.len(), doc.outcomes.len());
    for (matrix, rows) in [
        (Matrix::Gain, doc.gain.iter().map(Vec::len).collect::<Vec<_>>()),
        (Matrix::Feedback, doc.feedback.iter().map(Vec::len).collect()),
    ] {
        if rows.len() != n {
            return Err(GameError::Dimension {
                matrix,
                rows: rows.len(),
                cols: rows.first().copied().unwrap_or(0),
                expected_rows: n,
                expected_cols: m,
            });
        }
        if let Some(row) = rows.iter().position(|&len| len != m) {
            return Err(GameError::RowLength {
                matrix,
                row,
                len: rows[row],
                expected: m,
            });
        }
    }

    let gain = doc
        .gain
        .iter()
        .enumerate()
        .map(|(row, cells)| {
            cells
                .iter()
                .enumerate()
                .map(|(col, text)| {
                    rational::parse(text).map_err(|source| GameError::BadRational { row, col, source })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let feedback = doc
        .feedback
        .iter()
        .enumerate()
        .map(|(row, cells)| {
            cells
                .iter()
                .enumerate()
                .map(|(col, symbol)| {
                    doc.alphabet
                        .iter()
                        .position(|a| a == symbol)
                        .ok_or_else(|| GameError::UnknownSymbol {
                            row,
                            col,
                            symbol: symbol.clone(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    Game::new(doc.name, doc.actions, doc.outcomes, doc.alphabet, gain, feedback)
}

pub fn save_game(game: &Game) -> String {
    let mut out = String::from("{\n");
    out += &format!("  \"name\": {},\n", json(game.name()));
    out += &format!("  \"actions\": {},\n", json(game.actions()));
    out += &format!("  \"outcomes\": {},\n", json(game.outcomes()));
    out += &format!("  \"alphabet\": {},\n", json(game.alphabet()));

    let gain_rows: Vec<String> = game
        .gain_matrix()
        .iter()
        .map(|row| json(&row.iter().map(rational::format).collect::<Vec<_>>()))
        .collect();
    out += &format!("  \"gain\": [\n    {}\n  ],\n", gain_rows.join(",\n    "));

    let feedback_rows: Vec<String> = (0..game.num_actions())
        .map(|i| {
            json(
                &(0..game.num_outcomes())
                    .map(|m| game.symbol(i, m).to_string())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    out += &format!("  \"feedback\": [\n    {}\n  ]\n", feedback_rows.join(",\n    "));
    out.push_str("}\n");
    out
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("strings always serialize")
}
