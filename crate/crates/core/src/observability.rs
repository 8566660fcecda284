//! Signal matrices and global/local observability of loss differences.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::ObservabilityError;
use crate::game::{Game, DUEL_SYMBOLS};
use crate::geometry::{CellReport, NeighborReport};
use crate::linalg;
use crate::rational::{serde_str, Rational};

/// 0/1 incidence of the symbols seen by one action against outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignalMatrix {
    pub action: usize,
    /// Alphabet indices of the symbols occurring in the action's feedback row.
    pub symbols: Vec<usize>,
    /// `entries[k][m] == 1` iff `ℋ(action, m) == symbols[k]`.
    pub entries: Vec<Vec<u8>>,
}

impl SignalMatrix {
    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Row for the alphabet symbol `symbol`, if the action ever emits it.
    pub fn row_of(&self, symbol: usize) -> Option<&[u8]> {
        let k = self.symbols.iter().position(|&s| s == symbol)?;
        Some(&self.entries[k])
    }

    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&b| Rational::from_integer(b.into())).collect())
            .collect()
    }
}

/// Symbols of one feedback row in signal-matrix order: the dueling order
/// □, ◇, ■ when the alphabet is made of dueling symbols, otherwise order of
/// first occurrence along the row.
fn row_symbols(g: &Game, action: usize) -> Vec<usize> {
    let row = &g.feedback_matrix()[action];
    let duel_rank = |s: usize| DUEL_SYMBOLS.iter().position(|d| *d == g.alphabet()[s]);
    let dueling = (0..g.alphabet().len()).all(|s| duel_rank(s).is_some());

    let mut symbols: Vec<usize> = Vec::new();
    for &s in row {
        if !symbols.contains(&s) {
            symbols.push(s);
        }
    }
    if dueling {
        symbols.sort_by_key(|&s| duel_rank(s));
    }
    symbols
}

pub fn signal_matrix(g: &Game, action: usize) -> SignalMatrix {
    let symbols = row_symbols(g, action);
    let row = &g.feedback_matrix()[action];
    let entries = symbols
        .iter()
        .map(|&s| row.iter().map(|&h| u8::from(h == s)).collect())
        .collect();
    SignalMatrix {
        action,
        symbols,
        entries,
    }
}

/// Signal matrices stacked vertically, remembering where each row came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackedSignals {
    pub rows: Vec<Vec<Rational>>,
    /// `(action, alphabet symbol)` of each row.
    pub origin: Vec<(usize, usize)>,
}

pub fn stack_signal_matrices(mats: &[SignalMatrix]) -> Result<StackedSignals, ObservabilityError> {
    let mut rows = Vec::new();
    let mut origin = Vec::new();
    let expected = mats.first().map_or(0, SignalMatrix::num_cols);
    for s in mats {
        if s.num_cols() != expected {
            return Err(ObservabilityError::ColumnMismatch {
                expected,
                found: s.num_cols(),
            });
        }
        rows.extend(s.rational_rows());
        origin.extend(s.symbols.iter().map(|&sym| (s.action, sym)));
    }
    Ok(StackedSignals { rows, origin })
}

fn stack_for(g: &Game, actions: impl IntoIterator<Item = usize>) -> StackedSignals {
    let mats: Vec<SignalMatrix> = actions.into_iter().map(|a| signal_matrix(g, a)).collect();
    stack_signal_matrices(&mats).expect("signal matrices of one game share the outcome count")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `c` with `cᵀ·M = v` when `member`.
    pub certificate: Option<Vec<Rational>>,
}

pub fn in_row_space(matrix: &[Vec<Rational>], v: &[Rational]) -> Membership {
    let certificate = linalg::solve_left(matrix, v);
    Membership {
        member: certificate.is_some(),
        certificate,
    }
}

fn loss_difference(g: &Game, i: usize, j: usize) -> Vec<Rational> {
    g.loss_row(i)
        .iter()
        .zip(g.loss_row(j))
        .map(|(a, b)| a - b)
        .collect()
}

/// Outcome of one observability test, with the rows the certificate refers to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub observable: bool,
    /// Coefficients over `support`; `cᵀ·S = loss_i - loss_j`.
    #[serde(with = "serde_str::opt_vec")]
    pub certificate: Option<Vec<Rational>>,
    /// `(action, alphabet symbol)` for each stacked row.
    pub support: Vec<(usize, usize)>,
}

impl Observation {
    fn from_stack(stack: StackedSignals, target: &[Rational]) -> Self {
        let m = in_row_space(&stack.rows, target);
        Observation {
            observable: m.member,
            certificate: m.certificate,
            support: stack.origin,
        }
    }

    /// Certificate rows with non-zero coefficient, as `(action, symbol, coeff)`.
    pub fn nonzero_terms(&self) -> Vec<(usize, usize, Rational)> {
        match &self.certificate {
            Some(c) => self
                .support
                .iter()
                .zip(c)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&(a, s), v)| (a, s, v.clone()))
                .collect(),
            None => Vec::new(),
        }
    }
}

/// `loss_i - loss_j ∈ Im Sᵀ` for the stack of every action's signal matrix.
pub fn global_observability(g: &Game, i: usize, j: usize) -> Observation {
    Observation::from_stack(stack_for(g, 0..g.num_actions()), &loss_difference(g, i, j))
}

/// `loss_i - loss_j ∈ Im Sᵀ` for the stack over the neighborhood of `(i, j)`.
pub fn local_observability(
    g: &Game,
    i: usize,
    j: usize,
    neighbors: &NeighborReport,
) -> Result<Observation, ObservabilityError> {
    let pair = neighbors
        .find(i, j)
        .ok_or(ObservabilityError::NotNeighbors(i, j))?;
    let stack = stack_for(g, pair.neighborhood.iter().copied());
    Ok(Observation::from_stack(stack, &loss_difference(g, i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairObservability {
    pub first: usize,
    pub second: usize,
    pub global: Observation,
    /// Present only for neighbor pairs.
    pub local: Option<Observation>,
}

impl PairObservability {
    pub fn globally_observable(&self) -> bool {
        self.global.observable
    }

    pub fn locally_observable(&self) -> Option<bool> {
        self.local.as_ref().map(|o| o.observable)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObservabilityReport {
    pub pairs: Vec<PairObservability>,
}

impl ObservabilityReport {
    pub fn find(&self, a: usize, b: usize) -> Option<&PairObservability> {
        let (lo, hi) = (a.min(b), a.max(b));
        self.pairs.iter().find(|p| p.first == lo && p.second == hi)
    }
}

/// Global test for every pair of strongly Pareto actions, local test for
/// every neighbor pair. Pairs come out in lexicographic order.
pub fn observability_report(
    g: &Game,
    cells: &CellReport,
    neighbors: &NeighborReport,
) -> ObservabilityReport {
    let global = stack_for(g, 0..g.num_actions());
    let strong = cells.strongly_pareto();
    let candidates: Vec<(usize, usize)> = strong
        .iter()
        .enumerate()
        .flat_map(|(x, &i)| strong[x + 1..].iter().map(move |&j| (i, j)))
        .collect();
    let pairs = candidates
        .into_par_iter()
        .map(|(i, j)| {
            let target = loss_difference(g, i, j);
            let local = neighbors.find(i, j).map(|p| {
                Observation::from_stack(stack_for(g, p.neighborhood.iter().copied()), &target)
            });
            PairObservability {
                first: i,
                second: j,
                global: Observation::from_stack(global.clone(), &target),
                local,
            }
        })
        .collect();
    ObservabilityReport { pairs }
}

/// Re-checks `cᵀ·S = loss_i - loss_j` for a certificate against the game.
pub fn certificate_holds(g: &Game, i: usize, j: usize, obs: &Observation) -> bool {
    let Some(c) = &obs.certificate else {
        return !obs.observable;
    };
    let rows: Vec<Vec<Rational>> = obs
        .support
        .iter()
        .map(|&(a, s)| {
            g.feedback_matrix()[a]
                .iter()
                .map(|&h| if h == s { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    linalg::combine_rows(c, &rows) == loss_difference(g, i, j)
}
