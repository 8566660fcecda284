//! Whether the gain matrix factors through the (numerically encoded)
//! feedback matrix, `B·H = G`, and the all-ones point-local witness for
//! dueling games.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::ObservabilityError;
use crate::game::{Game, LOSS, NOT_SOLD, SOLD, TIE, WIN};
use crate::linalg;
use crate::rational::{self, serde_str, Rational};

pub type Encoding = BTreeMap<String, Rational>;

/// Default numeric value per symbol: □ → 0, ◇ → 1/2, ■ → 1, "sold" → 1,
/// "not sold" → 0, symbols that parse as rationals map to themselves, and
/// anything else to its alphabet position.
pub fn default_encoding(g: &Game) -> Encoding {
    g.alphabet()
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let value = match s.as_str() {
                LOSS | NOT_SOLD => Rational::zero(),
                TIE => rational::half(),
                WIN | SOLD => Rational::one(),
                other => rational::parse(other).unwrap_or_else(|_| rational::int(k as i64)),
            };
            (s.clone(), value)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeedexpReport {
    pub feasible: bool,
    /// `B` with `B·H_num = G` when feasible.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_matrix")]
    pub witness: Option<Vec<Vec<Rational>>>,
    /// First outcome pair whose feedback columns agree symbol-for-symbol
    /// while the gain columns differ. Rules out every encoding.
    pub conflict: Option<(usize, usize)>,
}

mod opt_matrix {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(m: &Option<Vec<Vec<Rational>>>, s: S) -> Result<S::Ok, S::Error> {
        match m {
            Some(m) => serde_str::matrix::serialize(m, s),
            None => s.serialize_none(),
        }
    }
}

/// First pair of outcome columns with identical symbols for every action
/// but different gains for some action.
pub fn column_conflict(g: &Game) -> Option<(usize, usize)> {
    let m = g.num_outcomes();
    let column = |c: usize| -> Vec<usize> { (0..g.num_actions()).map(|i| g.feedback(i, c)).collect() };
    let columns: Vec<Vec<usize>> = (0..m).map(column).collect();
    (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .find(|&(a, b)| {
            columns[a] == columns[b] && (0..g.num_actions()).any(|i| g.gain(i, a) != g.gain(i, b))
        })
}

pub fn feedexp_precondition(g: &Game, encoding: &Encoding) -> Result<FeedexpReport, ObservabilityError> {
    let values: Vec<&Rational> = g
        .alphabet()
        .iter()
        .map(|s| encoding.get(s).ok_or_else(|| ObservabilityError::MissingSymbol(s.clone())))
        .collect::<Result<_, _>>()?;
    let h_num: Vec<Vec<Rational>> = g
        .feedback_matrix()
        .iter()
        .map(|row| row.iter().map(|&s| values[s].clone()).collect())
        .collect();

    let rows: Option<Vec<Vec<Rational>>> = (0..g.num_actions())
        .map(|i| linalg::solve_left(&h_num, g.gain_row(i)))
        .collect();
    Ok(FeedexpReport {
        feasible: rows.is_some(),
        witness: rows,
        conflict: column_conflict(g),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointLocal {
    /// Point mass on the all-ones outcome.
    #[serde(with = "serde_str::vec")]
    pub point: Vec<Rational>,
    pub optimal_actions: Vec<usize>,
    #[serde(with = "serde_str")]
    pub best_gain: Rational,
}

/// Every dueling action earns 1 when all arms pay 1, so all `K(K+1)/2`
/// actions are optimal at that vertex of the simplex.
pub fn point_local_witness(g: &Game) -> Result<PointLocal, ObservabilityError> {
    let arms = g.dueling_arms().ok_or(ObservabilityError::NotDueling)?;
    let all_ones = (1usize << arms) - 1;
    let mut point = vec![Rational::zero(); g.num_outcomes()];
    point[all_ones] = Rational::one();

    let gains: Vec<Rational> = (0..g.num_actions()).map(|i| g.expected_gain(i, &point)).collect();
    let best_gain = gains.iter().max().cloned().unwrap_or_else(Rational::zero);
    let optimal_actions = (0..g.num_actions()).filter(|&i| gains[i] == best_gain).collect();
    Ok(PointLocal {
        point,
        optimal_actions,
        best_gain,
    })
}
