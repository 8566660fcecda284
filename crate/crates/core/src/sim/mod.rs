//! Round-by-round simulation with exact regret accounting.
//!
//! Each round the environment draws an outcome `J_t`, the policy picks
//! `I_t` without seeing it, and then receives only `ℋ(I_t, J_t)`. Regret is
//! measured against the best fixed action on the realized outcome sequence:
//!
//! ```text
//! R_T = max_i Σ_t gain(i, J_t) − Σ_t gain(I_t, J_t)
//! ```
//!
//! # Random streams
//!
//! Run `r` of a batch with seed `s` uses ChaCha8 keyed by `seed_from_u64(s)`;
//! the environment draws from stream `2r` and the policy from stream `2r + 1`.
//! A single [`run`] is run index 0.

mod export;
mod policy;

pub use export::{summary_csv, trace_csv};
pub use policy::{DuelingExp3, Feedback, Policy, PolicySpec, Uniform};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::SimError;
use crate::game::Game;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum Environment {
    /// I.i.d. outcomes from a distribution over the outcome columns.
    Stochastic(Vec<Rational>),
    /// Fixed outcome indices, repeated cyclically when shorter than the horizon.
    Scripted(Vec<usize>),
    /// Dueling games only: arm `k` pays 1 with probability `means[k]`,
    /// independently each round.
    DuelingBernoulli(Vec<f64>),
}

impl Environment {
    pub fn validate(&self, g: &Game) -> Result<(), SimError> {
        let mismatch = |msg: String| Err(SimError::Mismatch(msg));
        match self {
            Environment::Stochastic(q) => {
                if q.len() != g.num_outcomes() {
                    return mismatch(format!(
                        "distribution has {} entries, game has {} outcomes",
                        q.len(),
                        g.num_outcomes()
                    ));
                }
                if q.iter().any(Signed::is_negative) || q.iter().sum::<Rational>() != Rational::one() {
                    return mismatch("distribution must be non-negative and sum to 1".into());
                }
            }
            Environment::Scripted(seq) => {
                if seq.is_empty() {
                    return mismatch("outcome script is empty".into());
                }
                if let Some(&bad) = seq.iter().find(|&&j| j >= g.num_outcomes()) {
                    return mismatch(format!("scripted outcome {bad} out of range"));
                }
            }
            Environment::DuelingBernoulli(means) => match g.dueling_arms() {
                None => return mismatch("Bernoulli arm means need a dueling game".into()),
                Some(k) if k != means.len() => {
                    return mismatch(format!("{} means for a {k}-armed dueling game", means.len()))
                }
                Some(_) => {
                    if means.iter().any(|p| !(0.0..=1.0).contains(p)) {
                        return mismatch("arm means must lie in [0, 1]".into());
                    }
                }
            },
        }
        Ok(())
    }
}

/// Per-environment state for drawing outcomes.
enum Sampler<'a> {
    Cumulative(Vec<(f64, usize)>),
    Script(&'a [usize]),
    Bernoulli(&'a [f64]),
}

impl<'a> Sampler<'a> {
    fn new(env: &'a Environment) -> Self {
        match env {
            Environment::Stochastic(q) => {
                let mut acc = 0.0;
                let cum = q
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.is_positive())
                    .map(|(j, p)| {
                        acc += rational::to_f64(p);
                        (acc, j)
                    })
                    .collect();
                Sampler::Cumulative(cum)
            }
            Environment::Scripted(seq) => Sampler::Script(seq),
            Environment::DuelingBernoulli(means) => Sampler::Bernoulli(means),
        }
    }

    fn draw(&self, round: u64, rng: &mut ChaCha8Rng) -> usize {
        match self {
            Sampler::Cumulative(cum) => {
                let u: f64 = rng.random::<f64>() * cum.last().map_or(1.0, |c| c.0);
                cum.iter()
                    .find(|(c, _)| u < *c)
                    .or(cum.last())
                    .map(|&(_, j)| j)
                    .expect("validated distribution has support")
            }
            Sampler::Script(seq) => seq[((round - 1) % seq.len() as u64) as usize],
            Sampler::Bernoulli(means) => means
                .iter()
                .fold(0usize, |acc, &p| (acc << 1) | usize::from(rng.random::<f64>() < p)),
        }
    }
}

/// Gain matrix over a common denominator, for fast exact sums.
struct ScaledGains {
    denom: BigInt,
    numer: Vec<Vec<BigInt>>,
}

impl ScaledGains {
    fn new(g: &Game) -> Self {
        let denom = g
            .gain_matrix()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let numer = g
            .gain_matrix()
            .iter()
            .map(|row| row.iter().map(|r| r.numer() * (&denom / r.denom())).collect())
            .collect();
        ScaledGains { denom, numer }
    }

    fn to_rational(&self, n: BigInt) -> Rational {
        Rational::new(n, self.denom.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Round {
    pub action: usize,
    pub outcome: usize,
    pub symbol: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegretTrace {
    pub horizon: u64,
    pub rounds: Vec<Round>,
    pub cumulative_gain: Rational,
    pub best_fixed_gain: Rational,
    /// Lowest-index action attaining `best_fixed_gain`.
    pub best_action: usize,
    pub regret: Rational,
}

fn streams(seed: u64, run_index: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    let mut env = ChaCha8Rng::seed_from_u64(seed);
    env.set_stream(2 * run_index);
    let mut pol = ChaCha8Rng::seed_from_u64(seed);
    pol.set_stream(2 * run_index + 1);
    (env, pol)
}

pub fn run(
    g: &Game,
    env: &Environment,
    policy: &mut dyn Policy,
    horizon: u64,
    seed: u64,
) -> Result<RegretTrace, SimError> {
    run_indexed(g, env, policy, horizon, seed, 0)
}

/// One replication on the streams of `run_index` (see the module docs).
pub fn run_indexed(
    g: &Game,
    env: &Environment,
    policy: &mut dyn Policy,
    horizon: u64,
    seed: u64,
    run_index: u64,
) -> Result<RegretTrace, SimError> {
    if horizon == 0 {
        return Err(SimError::Horizon);
    }
    env.validate(g)?;
    policy.init(g)?;

    let gains = ScaledGains::new(g);
    let sampler = Sampler::new(env);
    let (mut env_rng, mut pol_rng) = streams(seed, run_index);

    let mut history: Vec<Feedback> = Vec::with_capacity(horizon as usize);
    let mut rounds = Vec::with_capacity(horizon as usize);
    let mut outcome_counts = vec![0u64; g.num_outcomes()];
    let mut earned = BigInt::zero();

    for t in 1..=horizon {
        let outcome = sampler.draw(t, &mut env_rng);
        let action = policy.choose(t, &history, &mut pol_rng);
        assert!(action < g.num_actions(), "policy chose action {action} out of range");
        let symbol = g.feedback(action, outcome);
        let fb = Feedback { action, symbol };
        policy.observe(fb);
        history.push(fb);

        earned += &gains.numer[action][outcome];
        outcome_counts[outcome] += 1;
        rounds.push(Round {
            action,
            outcome,
            symbol,
        });
    }

    let totals: Vec<BigInt> = gains
        .numer
        .iter()
        .map(|row| {
            row.iter()
                .zip(&outcome_counts)
                .filter(|(_, &c)| c > 0)
                .map(|(n, &c)| n * BigInt::from(c))
                .sum()
        })
        .collect();
    let (best_action, best) = totals
        .iter()
        .enumerate()
        .fold(None::<(usize, &BigInt)>, |acc, (i, v)| match acc {
            Some((_, b)) if b >= v => acc,
            _ => Some((i, v)),
        })
        .expect("at least one action");

    let regret = gains.to_rational(best - &earned);
    Ok(RegretTrace {
        horizon,
        rounds,
        cumulative_gain: gains.to_rational(earned),
        best_fixed_gain: gains.to_rational(best.clone()),
        best_action,
        regret,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchSummary {
    pub runs: usize,
    pub regrets: Vec<Rational>,
    /// Exact mean of `regrets`.
    pub mean: Rational,
    /// Sample standard deviation over `sqrt(runs)`; zero for a single run.
    pub std_error: f64,
}

impl BatchSummary {
    pub fn from_regrets(regrets: Vec<Rational>) -> Self {
        let runs = regrets.len();
        let n = Rational::from_integer(BigInt::from(runs));
        let mean = regrets.iter().sum::<Rational>() / &n;
        let std_error = if runs < 2 {
            0.0
        } else {
            let ss: Rational = regrets.iter().map(|r| (r - &mean) * (r - &mean)).sum();
            let var = ss / Rational::from_integer(BigInt::from(runs - 1));
            (var.to_f64().unwrap_or(f64::NAN) / runs as f64).sqrt()
        };
        BatchSummary {
            runs,
            regrets,
            mean,
            std_error,
        }
    }

    pub fn mean_f64(&self) -> f64 {
        rational::to_f64(&self.mean)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    pub summary: BatchSummary,
    pub traces: Vec<RegretTrace>,
}

/// `runs` independent replications, run `r` on the streams of index `r`.
/// Runs may execute on up to `workers` threads (`None`: rayon's default);
/// results are always in run order.
pub fn batch(
    g: &Game,
    env: &Environment,
    spec: &PolicySpec,
    horizon: u64,
    runs: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<Batch, SimError> {
    if runs == 0 {
        return Err(SimError::Runs);
    }
    env.validate(g)?;
    let one = |r: usize| -> Result<RegretTrace, SimError> {
        let mut policy = spec.build()?;
        run_indexed(g, env, policy.as_mut(), horizon, seed, r as u64)
    };
    let traces: Vec<RegretTrace> = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| SimError::Io(std::io::Error::other(e)))?
            .install(|| (0..runs).into_par_iter().map(one).collect::<Result<_, _>>())?,
        None => (0..runs).into_par_iter().map(one).collect::<Result<_, _>>()?,
    };
    let summary = BatchSummary::from_regrets(traces.iter().map(|t| t.regret.clone()).collect());
    Ok(Batch { summary, traces })
}
