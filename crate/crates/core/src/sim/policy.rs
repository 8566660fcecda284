use rand::{Rng, RngCore};

use crate::error::SimError;
use crate::game::{ActionPair, Game, LOSS, WIN};

/// What a learner sees after a round: its own action and the feedback symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Feedback {
    pub action: usize,
    /// Index into the game's alphabet.
    pub symbol: usize,
}

/// A learner. It is handed the game (matrices are public knowledge) but never
/// the outcome or the realized gain.
pub trait Policy: Send {
    fn init(&mut self, game: &Game) -> Result<(), SimError>;

    /// Action for round `round` (1-based) given all earlier feedback.
    fn choose(&mut self, round: u64, history: &[Feedback], rng: &mut dyn RngCore) -> usize;

    fn observe(&mut self, feedback: Feedback);
}

/// Uniformly random action every round.
#[derive(Debug, Default, Clone)]
pub struct Uniform {
    actions: usize,
}

impl Uniform {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Policy for Uniform {
    fn init(&mut self, game: &Game) -> Result<(), SimError> {
        self.actions = game.num_actions();
        Ok(())
    }

    fn choose(&mut self, _round: u64, _history: &[Feedback], rng: &mut dyn RngCore) -> usize {
        rng.random_range(0..self.actions)
    }

    fn observe(&mut self, _feedback: Feedback) {}
}

/// EXP3-style learner over arms for dueling games.
///
/// Each round both arms are drawn independently from
/// `p = (1 - γ)·w / Σw + γ / K`. The winner of the duel (first arm of the
/// played pair on ■, second on □) is credited the importance-weighted gain
/// `1 / (2 p_winner)`; ties credit nobody. Weights grow as
/// `w ← w · exp(γ/K · credit)` and are kept in log space.
#[derive(Debug, Clone)]
pub struct DuelingExp3 {
    gamma: f64,
    arms: usize,
    log_weights: Vec<f64>,
    probs: Vec<f64>,
    win: usize,
    loss: usize,
    last: Option<ActionPair>,
}

impl DuelingExp3 {
    pub fn new(gamma: f64) -> Result<Self, SimError> {
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(SimError::Gamma(gamma));
        }
        Ok(DuelingExp3 {
            gamma,
            arms: 0,
            log_weights: Vec::new(),
            probs: Vec::new(),
            win: usize::MAX,
            loss: usize::MAX,
            last: None,
        })
    }

    /// `min(1, sqrt(K ln K / ((e - 1) T)))`, the usual EXP3 choice for a
    /// known horizon `T`.
    pub fn tuned_gamma(arms: usize, horizon: u64) -> f64 {
        let k = arms as f64;
        let t = horizon.max(1) as f64;
        (k * k.ln() / ((std::f64::consts::E - 1.0) * t)).sqrt().min(1.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Current sampling distribution over arms.
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn weights(&self) -> Vec<f64> {
        let max = self.log_weights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        self.log_weights.iter().map(|l| (l - max).exp()).collect()
    }

    fn refresh_probs(&mut self) {
        let w = self.weights();
        let total: f64 = w.iter().sum();
        let k = self.arms as f64;
        self.probs = w
            .iter()
            .map(|wi| (1.0 - self.gamma) * wi / total + self.gamma / k)
            .collect();
    }

    fn sample_arm(&self, rng: &mut dyn RngCore) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (k, p) in self.probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return k;
            }
        }
        self.arms - 1
    }
}

impl Policy for DuelingExp3 {
    fn init(&mut self, game: &Game) -> Result<(), SimError> {
        let arms = game.dueling_arms().ok_or(SimError::NotDueling)?;
        let symbol = |s: &str| game.alphabet().iter().position(|a| a == s);
        self.win = symbol(WIN).ok_or(SimError::NotDueling)?;
        self.loss = symbol(LOSS).ok_or(SimError::NotDueling)?;
        self.arms = arms;
        self.log_weights = vec![0.0; arms];
        self.last = None;
        self.refresh_probs();
        Ok(())
    }

    fn choose(&mut self, _round: u64, _history: &[Feedback], rng: &mut dyn RngCore) -> usize {
        let a = self.sample_arm(rng);
        let b = self.sample_arm(rng);
        let pair = ActionPair::new(a + 1, b + 1);
        self.last = Some(pair);
        pair.index(self.arms)
    }

    fn observe(&mut self, feedback: Feedback) {
        let Some(pair) = self.last.take() else {
            return;
        };
        let winner = if feedback.symbol == self.win {
            pair.first() - 1
        } else if feedback.symbol == self.loss {
            pair.second() - 1
        } else {
            return;
        };
        let credit = 1.0 / (2.0 * self.probs[winner]);
        self.log_weights[winner] += self.gamma / self.arms as f64 * credit;
        self.refresh_probs();
    }
}

/// Recipe for a fresh policy per run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicySpec {
    Uniform,
    DuelingExp3 { gamma: f64 },
}

impl PolicySpec {
    pub fn build(&self) -> Result<Box<dyn Policy>, SimError> {
        Ok(match *self {
            PolicySpec::Uniform => Box::new(Uniform::new()),
            PolicySpec::DuelingExp3 { gamma } => Box::new(DuelingExp3::new(gamma)?),
        })
    }
}
