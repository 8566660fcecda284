//! Finite partial-monitoring games and the builders for the dueling,
//! multi-armed bandit, and discretized dynamic-pricing families.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{GameError, Matrix};
use crate::rational::{self, Rational};

/// Feedback symbol for a lost duel (`m_i < m_j`).
pub const LOSS: &str = "□";
/// Feedback symbol for a tied duel (`m_i = m_j`).
pub const TIE: &str = "◇";
/// Feedback symbol for a won duel (`m_i > m_j`).
pub const WIN: &str = "■";
pub const DUEL_SYMBOLS: [&str; 3] = [LOSS, TIE, WIN];

pub const SOLD: &str = "sold";
pub const NOT_SOLD: &str = "not sold";

pub const MIN_ARMS: usize = 2;
/// `|M| = 2^K` outcome columns; beyond this the matrices stop being practical.
pub const MAX_ARMS: usize = 16;

/// A finite game: actions × outcomes with exact gains and symbolic feedback.
///
/// Losses are never stored; `loss(i, m) = -gain(i, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    name: String,
    actions: Vec<String>,
    outcomes: Vec<String>,
    alphabet: Vec<String>,
    gain: Vec<Vec<Rational>>,
    feedback: Vec<Vec<usize>>,
}

impl Game {
    pub fn new(
        name: impl Into<String>,
        actions: Vec<String>,
        outcomes: Vec<String>,
        alphabet: Vec<String>,
        gain: Vec<Vec<Rational>>,
        feedback: Vec<Vec<usize>>,
    ) -> Result<Self, GameError> {
        let (n, m) = (actions.len(), outcomes.len());
        if n == 0 || m == 0 {
            return Err(GameError::Empty);
        }
        check_shape(Matrix::Gain, gain.iter().map(Vec::len), n, m)?;
        check_shape(Matrix::Feedback, feedback.iter().map(Vec::len), n, m)?;
        check_unique("action", &actions)?;
        check_unique("outcome", &outcomes)?;
        check_unique("symbol", &alphabet)?;

        let mut used = vec![false; alphabet.len()];
        for (row, symbols) in feedback.iter().enumerate() {
            for (col, &s) in symbols.iter().enumerate() {
                match used.get_mut(s) {
                    Some(flag) => *flag = true,
                    None => {
                        return Err(GameError::UnknownSymbol {
                            row,
                            col,
                            symbol: format!("#{s}"),
                        })
                    }
                }
            }
        }
        if let Some(k) = used.iter().position(|u| !u) {
            return Err(GameError::UnusedSymbol(alphabet[k].clone()));
        }

        Ok(Game {
            name: name.into(),
            actions,
            outcomes,
            alphabet,
            gain,
            feedback,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn num_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn gain_matrix(&self) -> &[Vec<Rational>] {
        &self.gain
    }

    pub fn feedback_matrix(&self) -> &[Vec<usize>] {
        &self.feedback
    }

    pub fn gain(&self, action: usize, outcome: usize) -> &Rational {
        &self.gain[action][outcome]
    }

    pub fn gain_row(&self, action: usize) -> &[Rational] {
        &self.gain[action]
    }

    pub fn loss_row(&self, action: usize) -> Vec<Rational> {
        self.gain[action].iter().map(|g| -g).collect()
    }

    /// Symbol index `ℋ(action, outcome)` into [`Game::alphabet`].
    pub fn feedback(&self, action: usize, outcome: usize) -> usize {
        self.feedback[action][outcome]
    }

    pub fn symbol(&self, action: usize, outcome: usize) -> &str {
        &self.alphabet[self.feedback[action][outcome]]
    }

    pub fn action_index(&self, label: &str) -> Option<usize> {
        self.actions.iter().position(|a| a == label)
    }

    pub fn outcome_index(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }

    /// Expected gain of `action` under the outcome distribution `q`.
    pub fn expected_gain(&self, action: usize, q: &[Rational]) -> Rational {
        dot(&self.gain[action], q)
    }

    /// Arm count when this game is exactly the binary dueling game on K arms.
    pub fn dueling_arms(&self) -> Option<usize> {
        let n = self.num_actions();
        let arms = (MIN_ARMS..=MAX_ARMS).find(|k| k * (k + 1) / 2 == n)?;
        if self.num_outcomes() != 1 << arms {
            return None;
        }
        let reference = build_dueling_game(arms).ok()?;
        let same = reference.gain == self.gain
            && (0..n).all(|i| {
                (0..self.num_outcomes()).all(|m| reference.symbol(i, m) == self.symbol(i, m))
            });
        same.then_some(arms)
    }
}

fn check_shape(
    matrix: Matrix,
    row_lengths: impl ExactSizeIterator<Item = usize>,
    n: usize,
    m: usize,
) -> Result<(), GameError> {
    let rows = row_lengths.len();
    let lengths: Vec<usize> = row_lengths.collect();
    if rows != n {
        return Err(GameError::Dimension {
            matrix,
            rows,
            cols: lengths.first().copied().unwrap_or(0),
            expected_rows: n,
            expected_cols: m,
        });
    }
    match lengths.iter().position(|&len| len != m) {
        Some(row) => Err(GameError::RowLength {
            matrix,
            row,
            len: lengths[row],
            expected: m,
        }),
        None => Ok(()),
    }
}

fn check_unique(what: &'static str, labels: &[String]) -> Result<(), GameError> {
    let mut seen = HashSet::new();
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(GameError::DuplicateLabel {
                what,
                label: label.clone(),
            });
        }
    }
    Ok(())
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// An unordered arm pair `(first, second)` with `first <= second`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionPair {
    first: usize,
    second: usize,
}

impl ActionPair {
    /// Normalizes the order, so `(3, 1)` becomes `(1, 3)`.
    pub fn new(a: usize, b: usize) -> Self {
        ActionPair {
            first: a.min(b),
            second: a.max(b),
        }
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn second(&self) -> usize {
        self.second
    }

    pub fn is_self_duel(&self) -> bool {
        self.first == self.second
    }

    /// Row index in a dueling game on `arms` arms (lexicographic order).
    pub fn index(&self, arms: usize) -> usize {
        let i = self.first - 1;
        // rows before `i`: arms + (arms - 1) + ... + (arms - i + 1)
        i * arms - i * (i.saturating_sub(1)) / 2 + (self.second - self.first)
    }

    pub fn label(&self, arms: usize) -> String {
        if arms < 10 {
            format!("{}{}", self.first, self.second)
        } else {
            format!("{}-{}", self.first, self.second)
        }
    }

    /// All pairs in row order for a dueling game on `arms` arms.
    pub fn all(arms: usize) -> Vec<ActionPair> {
        (1..=arms)
            .flat_map(|i| (i..=arms).map(move |j| ActionPair { first: i, second: j }))
            .collect()
    }
}

/// Binary per-arm gains for one outcome; `bits[k]` is the gain of arm `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeVector {
    bits: Vec<bool>,
}

impl OutcomeVector {
    /// Outcome at column `index`: the big-endian binary expansion of `index`.
    pub fn from_index(index: usize, arms: usize) -> Self {
        let bits = (0..arms)
            .map(|k| (index >> (arms - 1 - k)) & 1 == 1)
            .collect();
        OutcomeVector { bits }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        OutcomeVector { bits }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
    }

    pub fn arms(&self) -> usize {
        self.bits.len()
    }

    /// Gain `m_arm` of a 1-based arm.
    pub fn gain(&self, arm: usize) -> bool {
        self.bits[arm - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn label(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

fn check_arms(arms: usize) -> Result<(), GameError> {
    if (MIN_ARMS..=MAX_ARMS).contains(&arms) {
        Ok(())
    } else {
        Err(GameError::ArmCount(arms))
    }
}

fn bit(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Binary utility-based dueling bandit on `arms` arms.
///
/// Actions are the `K(K+1)/2` pairs `(i, j)` with `i <= j` in lexicographic
/// order, outcomes are the `2^K` binary gain vectors in big-endian order. The
/// gain of `(i, j)` is `(m_i + m_j) / 2`; the feedback is the sign of the duel.
pub fn build_dueling_game(arms: usize) -> Result<Game, GameError> {
    check_arms(arms)?;
    let pairs = ActionPair::all(arms);
    let outcomes: Vec<OutcomeVector> = (0..1usize << arms)
        .map(|m| OutcomeVector::from_index(m, arms))
        .collect();
    let two = rational::int(2);

    let gain = pairs
        .iter()
        .map(|p| {
            outcomes
                .iter()
                .map(|m| (bit(m.gain(p.first)) + bit(m.gain(p.second))) / &two)
                .collect()
        })
        .collect();
    let feedback = pairs
        .iter()
        .map(|p| {
            outcomes
                .iter()
                .map(|m| match m.gain(p.first).cmp(&m.gain(p.second)) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 2,
                })
                .collect()
        })
        .collect();

    Game::new(
        format!("dueling-{arms}"),
        pairs.iter().map(|p| p.label(arms)).collect(),
        outcomes.iter().map(OutcomeVector::label).collect(),
        DUEL_SYMBOLS.iter().map(|s| s.to_string()).collect(),
        gain,
        feedback,
    )
}

/// Binary-gain multi-armed bandit: action `i` earns and reveals `m_i`.
pub fn build_mab_game(arms: usize) -> Result<Game, GameError> {
    check_arms(arms)?;
    let outcomes: Vec<OutcomeVector> = (0..1usize << arms)
        .map(|m| OutcomeVector::from_index(m, arms))
        .collect();
    let gain = (1..=arms)
        .map(|i| outcomes.iter().map(|m| bit(m.gain(i))).collect())
        .collect();
    let feedback = (1..=arms)
        .map(|i| outcomes.iter().map(|m| usize::from(m.gain(i))).collect())
        .collect();
    Game::new(
        format!("mab-{arms}"),
        (1..=arms).map(|i| i.to_string()).collect(),
        outcomes.iter().map(OutcomeVector::label).collect(),
        vec!["0".to_string(), "1".to_string()],
        gain,
        feedback,
    )
}

/// Discretized dynamic pricing: posting price `x` to a buyer with valuation
/// `y` earns `x` and reveals "sold" when `x <= y`, otherwise earns nothing.
pub fn build_pricing_game(prices: &[Rational], valuations: &[Rational]) -> Result<Game, GameError> {
    check_grid("prices", prices, |p| p.is_zero() || *p < Rational::zero() || *p > Rational::one(), "(0, 1]")?;
    check_grid("valuations", valuations, |v| *v < Rational::zero() || *v > Rational::one(), "[0, 1]")?;

    let sold = |x: &Rational, y: &Rational| x <= y;
    let gain = prices
        .iter()
        .map(|x| {
            valuations
                .iter()
                .map(|y| if sold(x, y) { x.clone() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let raw: Vec<Vec<bool>> = prices
        .iter()
        .map(|x| valuations.iter().map(|y| sold(x, y)).collect())
        .collect();

    // keep only symbols that occur, "sold" first
    let any_sold = raw.iter().flatten().any(|&s| s);
    let any_unsold = raw.iter().flatten().any(|&s| !s);
    let mut alphabet = Vec::new();
    if any_sold {
        alphabet.push(SOLD.to_string());
    }
    if any_unsold {
        alphabet.push(NOT_SOLD.to_string());
    }
    let sold_idx = 0;
    let unsold_idx = usize::from(any_sold);
    let feedback = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|&s| if s { sold_idx } else { unsold_idx })
                .collect()
        })
        .collect();

    Game::new(
        format!("pricing-{}x{}", prices.len(), valuations.len()),
        prices.iter().map(rational::format).collect(),
        valuations.iter().map(rational::format).collect(),
        alphabet,
        gain,
        feedback,
    )
}

fn check_grid(
    what: &'static str,
    values: &[Rational],
    out_of_range: impl Fn(&Rational) -> bool,
    range: &'static str,
) -> Result<(), GameError> {
    if values.is_empty() {
        return Err(GameError::EmptyList(what));
    }
    if let Some(index) = values.iter().position(&out_of_range) {
        return Err(GameError::OutOfRange {
            what,
            index,
            value: rational::format(&values[index]),
            range,
        });
    }
    if let Some(index) = values.windows(2).position(|w| w[0] >= w[1]) {
        return Err(GameError::NotIncreasing {
            what,
            index: index + 1,
        });
    }
    Ok(())
}
