//! Cells of the outcome simplex, Pareto classification, and neighbors.
//!
//! The cell of action `i` is `{q ∈ Δ : gain_i·q >= gain_j·q for all j}`.
//! Every predicate here is decided exactly: dimensions come from
//! [`polytope_dimension`], never from volumes or tolerances.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::game::{dot, Game};
use crate::lp::{Constraint, LinearProgram, LpResult};
use crate::polytope::{polytope_dimension, simplex_constraints};
use crate::rational::{serde_str, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    /// Cell of full dimension `|M| - 1`.
    StronglyPareto,
    /// Non-empty cell of lower dimension.
    Degenerate,
    /// Empty cell: never optimal.
    NonPareto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellInfo {
    pub action: usize,
    pub status: CellStatus,
    pub dim: i64,
    #[serde(with = "serde_str::opt_vec")]
    pub witness: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub num_outcomes: usize,
    pub cells: Vec<CellInfo>,
    /// Groups (size >= 2) of actions with identical gain rows.
    pub duplicate_groups: Vec<Vec<usize>>,
}

impl CellReport {
    pub fn status(&self, action: usize) -> CellStatus {
        self.cells[action].status
    }

    pub fn strongly_pareto(&self) -> Vec<usize> {
        self.with_status(CellStatus::StronglyPareto)
    }

    pub fn with_status(&self, status: CellStatus) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.status == status)
            .map(|c| c.action)
            .collect()
    }

    /// Lowest-index action with the same gain row.
    pub fn representative(&self, action: usize) -> usize {
        self.duplicate_groups
            .iter()
            .find(|g| g.contains(&action))
            .map_or(action, |g| g[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborPair {
    pub first: usize,
    pub second: usize,
    /// `{k : C_first ∩ C_second ⊆ C_k}`, sorted.
    pub neighborhood: Vec<usize>,
    /// Relative-interior point of `C_first ∩ C_second`.
    #[serde(with = "serde_str::vec")]
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborReport {
    /// Strongly Pareto actions that entered pair enumeration.
    pub representatives: Vec<usize>,
    pub pairs: Vec<NeighborPair>,
}

impl NeighborReport {
    pub fn find(&self, a: usize, b: usize) -> Option<&NeighborPair> {
        let (lo, hi) = (a.min(b), a.max(b));
        self.pairs.iter().find(|p| p.first == lo && p.second == hi)
    }

    pub fn are_neighbors(&self, a: usize, b: usize) -> bool {
        self.find(a, b).is_some()
    }
}

fn comparison_rows(g: &Game, action: usize) -> Vec<Constraint> {
    let mine = g.gain_row(action);
    (0..g.num_actions())
        .filter(|&j| j != action)
        .map(|j| {
            let coeffs = mine.iter().zip(g.gain_row(j)).map(|(a, b)| a - b).collect();
            Constraint::new(coeffs, Rational::zero())
        })
        .collect()
}

/// Constraint set whose feasible region is exactly the cell of `action`:
/// the simplex plus `(gain_action - gain_j)·q >= 0` for each other action.
pub fn cell_constraints(g: &Game, action: usize) -> LinearProgram {
    let m = g.num_outcomes();
    let (eqs, nonneg) = simplex_constraints(m);
    let mut lp = LinearProgram::new(m);
    lp.equalities = eqs;
    lp.inequalities = nonneg;
    lp.inequalities.extend(comparison_rows(g, action));
    lp
}

fn duplicate_groups(g: &Game) -> Vec<Vec<usize>> {
    let mut by_row: BTreeMap<&[Rational], Vec<usize>> = BTreeMap::new();
    for i in 0..g.num_actions() {
        by_row.entry(g.gain_row(i)).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = by_row.into_values().filter(|v| v.len() > 1).collect();
    groups.sort();
    groups
}

pub fn cell_decomposition(g: &Game) -> CellReport {
    let full = g.num_outcomes() as i64 - 1;
    let cells = (0..g.num_actions())
        .into_par_iter()
        .map(|i| {
            let lp = cell_constraints(g, i);
            let d = polytope_dimension(lp.num_vars, &lp.equalities, &lp.inequalities);
            let status = if d.dim < 0 {
                CellStatus::NonPareto
            } else if d.dim == full {
                CellStatus::StronglyPareto
            } else {
                CellStatus::Degenerate
            };
            CellInfo {
                action: i,
                status,
                dim: d.dim,
                witness: d.witness,
            }
        })
        .collect();
    CellReport {
        num_outcomes: g.num_outcomes(),
        cells,
        duplicate_groups: duplicate_groups(g),
    }
}

/// Constraints of `C_i ∩ C_j`: the cell of `i` plus `gain_i·q = gain_j·q`.
/// Under that equality the comparisons of `j` coincide with those of `i`.
fn intersection_constraints(g: &Game, i: usize, j: usize) -> LinearProgram {
    let mut lp = cell_constraints(g, i);
    let coeffs = g
        .gain_row(i)
        .iter()
        .zip(g.gain_row(j))
        .map(|(a, b)| a - b)
        .collect();
    lp.add_equality(coeffs, Rational::zero());
    lp
}

/// Pairs of strongly Pareto actions whose cells meet in a `(|M|-2)`-face,
/// each with its neighborhood action set.
///
/// Duplicate-gain actions contribute one representative. Membership of `k`
/// in the neighborhood is decided at the relative-interior witness `w` of the
/// face: `(gain_k - gain_i)·q <= 0` on the face, so it vanishes on the whole
/// face exactly when it vanishes at `w`.
pub fn neighbor_pairs(g: &Game, cells: &CellReport) -> NeighborReport {
    let target = g.num_outcomes() as i64 - 2;
    let representatives: Vec<usize> = cells
        .strongly_pareto()
        .into_iter()
        .filter(|&a| cells.representative(a) == a)
        .collect();
    let candidates: Vec<(usize, usize)> = representatives
        .iter()
        .enumerate()
        .flat_map(|(x, &i)| representatives[x + 1..].iter().map(move |&j| (i, j)))
        .collect();

    let pairs = candidates
        .into_par_iter()
        .filter_map(|(i, j)| {
            let lp = intersection_constraints(g, i, j);
            let d = polytope_dimension(lp.num_vars, &lp.equalities, &lp.inequalities);
            if d.dim != target {
                return None;
            }
            let witness = d.witness.expect("non-empty face has a witness");
            let best = g.expected_gain(i, &witness);
            let neighborhood = (0..g.num_actions())
                .filter(|&k| g.expected_gain(k, &witness) == best)
                .collect();
            Some(NeighborPair {
                first: i,
                second: j,
                neighborhood,
                witness,
            })
        })
        .collect();

    NeighborReport {
        representatives,
        pairs,
    }
}

/// LP test of `C_i ∩ C_j ⊆ C_k`: the largest `(gain_i - gain_k)·q` over the
/// intersection must be zero. Independent of the witness shortcut used in
/// [`neighbor_pairs`].
pub fn intersection_within_cell(g: &Game, i: usize, j: usize, k: usize) -> bool {
    let objective = g
        .gain_row(i)
        .iter()
        .zip(g.gain_row(k))
        .map(|(a, b)| a - b)
        .collect();
    match intersection_constraints(g, i, j).maximize(objective).solve() {
        LpResult::Optimal { value, .. } => !value.is_positive(),
        LpResult::Infeasible => true,
        LpResult::Unbounded => unreachable!("the simplex is bounded"),
    }
}

/// `q ∈ C_action`, checked by substitution.
pub fn in_cell(g: &Game, action: usize, q: &[Rational]) -> bool {
    let on_simplex =
        q.iter().all(|x| !x.is_negative()) && q.iter().sum::<Rational>() == Rational::one();
    let mine = g.expected_gain(action, q);
    on_simplex && (0..g.num_actions()).all(|j| dot(g.gain_row(j), q) <= mine)
}

/// Neighbor graph in DOT. Every action is a node; strongly Pareto actions are
/// solid, degenerate ones dashed, non-Pareto ones dotted. Edges join neighbor
/// pairs and carry the neighborhood size.
pub fn neighbor_dot(g: &Game, cells: &CellReport, neighbors: &NeighborReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", g.name().replace('"', "\\\""));
    for (i, label) in g.actions().iter().enumerate() {
        let style = match cells.status(i) {
            CellStatus::StronglyPareto => "solid",
            CellStatus::Degenerate => "dashed",
            CellStatus::NonPareto => "dotted",
        };
        let _ = writeln!(out, "  a{i} [label=\"{}\", style={style}];", label.replace('"', "\\\""));
    }
    for p in &neighbors.pairs {
        let _ = writeln!(
            out,
            "  a{} -- a{} [label=\"{}\"];",
            p.first,
            p.second,
            p.neighborhood.len()
        );
    }
    out.push_str("}\n");
    out
}
