//! Affine dimension of `{x : E x = f, A x >= b}` by implicit-equality detection.
//!
//! An inequality is implicit when it holds with equality on the whole set.
//! All of them are found with a single LP over the homogenized cone
//!
//! ```text
//! maximize  sum_k s_k
//! subject   E x - f t = 0
//!           a_k x - b_k t - s_k >= 0,   0 <= s_k <= 1,   t >= 1
//! ```
//!
//! Scaling `(x, t)` lets every non-implicit row reach `s_k = 1`, while an
//! implicit row is pinned to `s_k = 0`; so at the optimum `s_k ∈ {0, 1}`
//! marks the implicit rows and `x / t` is a relative-interior point. The
//! dimension is then `n - rank(E ∪ implicit rows)`.

use num_traits::{One, Zero};

use crate::linalg;
use crate::lp::{Constraint, LinearProgram, LpResult};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeDim {
    /// Affine dimension, `-1` for the empty set.
    pub dim: i64,
    /// Strictly positive slack on every non-implicit inequality.
    pub witness: Option<Vec<Rational>>,
    /// `implicit[k]` is true when inequality `k` is tight on the whole set.
    pub implicit: Vec<bool>,
}

impl PolytopeDim {
    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }
}

pub fn polytope_dimension(
    num_vars: usize,
    equalities: &[Constraint],
    inequalities: &[Constraint],
) -> PolytopeDim {
    let n = num_vars;
    let p = inequalities.len();
    // variables: x (n), t, s (p)
    let width = n + 1 + p;
    let t = n;
    let s = |k: usize| n + 1 + k;

    let mut objective = vec![Rational::zero(); width];
    for k in 0..p {
        objective[s(k)] = Rational::one();
    }
    let mut lp = LinearProgram::new(width).maximize(objective);

    for eq in equalities {
        let mut row = eq.coeffs.clone();
        row.push(-&eq.rhs);
        row.resize(width, Rational::zero());
        lp.add_equality(row, Rational::zero());
    }
    for (k, ineq) in inequalities.iter().enumerate() {
        let mut row = ineq.coeffs.clone();
        row.push(-&ineq.rhs);
        row.resize(width, Rational::zero());
        row[s(k)] = -Rational::one();
        lp.add_inequality(row, Rational::zero());
        // a bare `x_j >= 0` stays a native bound for the solver
        if let Some(j) = bare_nonneg(ineq) {
            lp.add_inequality(unit(width, j, Rational::one()), Rational::zero());
        }
    }
    for k in 0..p {
        lp.add_inequality(unit(width, s(k), Rational::one()), Rational::zero());
        lp.add_inequality(unit(width, s(k), -Rational::one()), -Rational::one());
    }
    lp.add_inequality(unit(width, t, Rational::one()), Rational::zero());
    lp.add_inequality(unit(width, t, Rational::one()), Rational::one());

    let point = match lp.solve() {
        LpResult::Optimal { point, .. } => point,
        LpResult::Infeasible => {
            return PolytopeDim {
                dim: -1,
                witness: None,
                implicit: vec![false; p],
            }
        }
        LpResult::Unbounded => unreachable!("slack objective is bounded by the row count"),
    };

    let scale = point[t].recip();
    let witness: Vec<Rational> = point[..n].iter().map(|x| x * &scale).collect();
    let implicit: Vec<bool> = (0..p).map(|k| point[s(k)].is_zero()).collect();

    let hull_rows: Vec<Vec<Rational>> = equalities
        .iter()
        .map(|c| c.coeffs.clone())
        .chain(
            inequalities
                .iter()
                .zip(&implicit)
                .filter(|(_, &imp)| imp)
                .map(|(c, _)| c.coeffs.clone()),
        )
        .collect();
    let rank = linalg::rank(&hull_rows);

    PolytopeDim {
        dim: (n - rank) as i64,
        witness: Some(witness),
        implicit,
    }
}

fn unit(width: usize, index: usize, value: Rational) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); width];
    row[index] = value;
    row
}

fn bare_nonneg(c: &Constraint) -> Option<usize> {
    if !c.rhs.is_zero() {
        return None;
    }
    let mut nz = c.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero());
    match (nz.next(), nz.next()) {
        (Some((j, a)), None) if *a > Rational::zero() => Some(j),
        _ => None,
    }
}

/// Constraints of the probability simplex over `m` coordinates.
pub fn simplex_constraints(m: usize) -> (Vec<Constraint>, Vec<Constraint>) {
    let eq = Constraint::new(vec![Rational::one(); m], Rational::one());
    let nonneg = (0..m)
        .map(|j| Constraint::new(unit(m, j, Rational::one()), Rational::zero()))
        .collect();
    (vec![eq], nonneg)
}
