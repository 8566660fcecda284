//! Exact rational linear programming.
//!
//! Dense two-phase primal simplex over `BigRational` with Bland's rule: the
//! entering column is the lowest-index column with negative reduced cost and
//! ties in the ratio test go to the lowest-index basic variable. Bland's rule
//! cannot cycle, and it makes every solve deterministic.
//!
//! Variables are free unless the program contains the bare bound `x_k >= 0`,
//! which is then enforced natively instead of splitting `x_k` into two
//! non-negative columns.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// `coeffs · x (= | >=) rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint { coeffs, rhs }
    }

    /// Left-hand side minus right-hand side at `x`.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        crate::game::dot(&self.coeffs, x) - &self.rhs
    }

    /// The single variable `k` if this row reads `x_k >= 0` (positively scaled).
    fn sign_bound(&self) -> Option<usize> {
        if !self.rhs.is_zero() {
            return None;
        }
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nonzero.next(), nonzero.next()) {
            (Some((k, c)), None) if c.is_positive() => Some(k),
            _ => None,
        }
    }
}

/// Maximize `objective · x` subject to equalities and `>=` inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

impl LinearProgram {
    /// Feasibility problem (zero objective) over `num_vars` free variables.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn maximize(mut self, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), self.num_vars, "objective length");
        self.objective = objective;
        self
    }

    pub fn equal(mut self, coeffs: Vec<Rational>, rhs: Rational) -> Self {
        self.add_equality(coeffs, rhs);
        self
    }

    pub fn at_least(mut self, coeffs: Vec<Rational>, rhs: Rational) -> Self {
        self.add_inequality(coeffs, rhs);
        self
    }

    pub fn add_equality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "equality row length");
        self.equalities.push(Constraint::new(coeffs, rhs));
    }

    pub fn add_inequality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "inequality row length");
        self.inequalities.push(Constraint::new(coeffs, rhs));
    }

    /// Exact check of every constraint at `x`.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && self.equalities.iter().all(|c| c.slack(x).is_zero())
            && self.inequalities.iter().all(|c| !c.slack(x).is_negative())
    }

    pub fn solve(&self) -> LpResult {
        solve_lp(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

impl LpResult {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// How an original variable maps onto non-negative tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    NonNeg(usize),
    Split(usize, usize),
}

pub fn solve_lp(lp: &LinearProgram) -> LpResult {
    let n = lp.num_vars;
    let mut nonneg = vec![false; n];
    let mut kept: Vec<&Constraint> = Vec::new();
    for c in &lp.inequalities {
        match c.sign_bound() {
            Some(k) => nonneg[k] = true,
            None => kept.push(c),
        }
    }

    let mut cols = 0;
    let var_map: Vec<VarMap> = nonneg
        .iter()
        .map(|&nn| {
            let m = if nn {
                VarMap::NonNeg(cols)
            } else {
                VarMap::Split(cols, cols + 1)
            };
            cols += if nn { 1 } else { 2 };
            m
        })
        .collect();
    let structural = cols;

    // Row layout: equalities first, then kept inequalities (each with a surplus column).
    let rows: Vec<(&Constraint, bool)> = lp
        .equalities
        .iter()
        .map(|c| (c, true))
        .chain(kept.iter().map(|&c| (c, false)))
        .collect();
    let surplus_start = structural;
    let num_surplus = kept.len();
    let art_start = surplus_start + num_surplus;

    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
    let mut basis: Vec<usize> = Vec::with_capacity(rows.len());
    let mut needs_artificial: Vec<usize> = Vec::new();

    let mut surplus = surplus_start;
    for (r, (c, is_eq)) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); art_start];
        for (k, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match var_map[k] {
                VarMap::NonNeg(j) => row[j] = a.clone(),
                VarMap::Split(p, q) => {
                    row[p] = a.clone();
                    row[q] = -a;
                }
            }
        }
        let mut rhs = c.rhs.clone();
        let mut basic = None;
        if !is_eq {
            row[surplus] = -Rational::one();
            // a·x - s = b; negate when b <= 0 so the surplus gets coefficient +1
            if !rhs.is_positive() {
                row.iter_mut().for_each(|v| *v = -&*v);
                rhs = -rhs;
                basic = Some(surplus);
            }
            surplus += 1;
        } else if rhs.is_negative() {
            row.iter_mut().for_each(|v| *v = -&*v);
            rhs = -rhs;
        }
        row.push(rhs);
        tableau.push(row);
        match basic {
            Some(j) => basis.push(j),
            None => {
                basis.push(usize::MAX);
                needs_artificial.push(r);
            }
        }
    }

    // Append artificial columns (identity on the rows that need them) before the rhs.
    let num_art = needs_artificial.len();
    let total_cols = art_start + num_art;
    for row in tableau.iter_mut() {
        let rhs = row.pop().expect("rhs");
        row.resize(total_cols, Rational::zero());
        row.push(rhs);
    }
    for (a, &r) in needs_artificial.iter().enumerate() {
        tableau[r][art_start + a] = Rational::one();
        basis[r] = art_start + a;
    }

    let mut t = Tableau {
        rows: tableau,
        basis,
        obj: Vec::new(),
        width: total_cols,
        allowed: vec![true; total_cols],
    };

    if num_art > 0 {
        // Phase 1: maximize -sum(artificials).
        let mut cost = vec![Rational::zero(); total_cols];
        for c in cost.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        t.set_objective(&cost);
        match t.run() {
            Outcome::Optimal => {}
            Outcome::Unbounded => unreachable!("phase 1 objective is bounded above by zero"),
        }
        if t.obj[total_cols].is_negative() {
            return LpResult::Infeasible;
        }
        t.drive_out_artificials(art_start);
        for a in art_start..total_cols {
            t.allowed[a] = false;
        }
    }

    let mut cost = vec![Rational::zero(); total_cols];
    for (k, c) in lp.objective.iter().enumerate() {
        match var_map[k] {
            VarMap::NonNeg(j) => cost[j] = c.clone(),
            VarMap::Split(p, q) => {
                cost[p] = c.clone();
                cost[q] = -c;
            }
        }
    }
    t.set_objective(&cost);
    if let Outcome::Unbounded = t.run() {
        return LpResult::Unbounded;
    }

    let mut values = vec![Rational::zero(); total_cols];
    for (r, &b) in t.basis.iter().enumerate() {
        values[b] = t.rows[r][total_cols].clone();
    }
    let point: Vec<Rational> = var_map
        .iter()
        .map(|m| match *m {
            VarMap::NonNeg(j) => values[j].clone(),
            VarMap::Split(p, q) => &values[p] - &values[q],
        })
        .collect();
    let value = crate::game::dot(&lp.objective, &point);
    LpResult::Optimal { value, point }
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Tableau {
    /// Each row holds `width` coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs `c_B B^-1 A_j - c_j`, then the objective value.
    obj: Vec<Rational>,
    width: usize,
    allowed: Vec<bool>,
}

impl Tableau {
    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost[..self.width].iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(&self.rows[r]) {
                if !a.is_zero() {
                    *o += cb * a;
                }
            }
        }
        self.obj = obj;
    }

    fn run(&mut self) -> Outcome {
        loop {
            let entering = (0..self.width).find(|&j| self.allowed[j] && self.obj[j].is_negative());
            let Some(col) = entering else {
                return Outcome::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                let a = &row[col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Outcome::Unbounded,
            }
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = self.rows[pr][pc].recip();
        if !inv.is_one() {
            for v in self.rows[pr].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let prow = std::mem::take(&mut self.rows[pr]);
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();

        let eliminate = |target: &mut Vec<Rational>| {
            let f = target[pc].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let delta = &f * &prow[j];
                target[j] -= delta;
            }
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[pr] = prow;
        self.basis[pr] = pc;
    }

    /// After a feasible phase 1, pivot zero-valued artificials out of the
    /// basis; rows where that is impossible are redundant and dropped.
    fn drive_out_artificials(&mut self, art_start: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < art_start {
                r += 1;
                continue;
            }
            match (0..art_start).find(|&j| !self.rows[r][j].is_zero()) {
                Some(col) => {
                    self.pivot(r, col);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unit_interval_maximum() {
        let lp = LinearProgram::new(1)
            .maximize(v(&[1]))
            .at_least(v(&[1]), int(0))
            .at_least(v(&[-1]), int(-1));
        assert_eq!(
            lp.solve(),
            LpResult::Optimal {
                value: int(1),
                point: v(&[1])
            }
        );
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let lp = LinearProgram::new(1)
            .maximize(v(&[1]))
            .at_least(v(&[1]), int(1))
            .at_least(v(&[-1]), int(0));
        assert_eq!(lp.solve(), LpResult::Infeasible);
    }

    #[test]
    fn missing_upper_bound_is_unbounded() {
        let lp = LinearProgram::new(1).maximize(v(&[1])).at_least(v(&[1]), int(0));
        assert_eq!(lp.solve(), LpResult::Unbounded);
    }

    #[test]
    fn free_variables_go_negative() {
        // maximize -x - y s.t. x + y >= -3, x - y = 1  ->  x = -1, y = -2, value 3
        let lp = LinearProgram::new(2)
            .maximize(v(&[-1, -1]))
            .at_least(v(&[1, 1]), int(-3))
            .equal(v(&[1, -1]), int(1));
        let res = lp.solve();
        assert_eq!(res.value(), Some(&int(3)));
        assert_eq!(res.point().unwrap(), v(&[-1, -2]));
        assert!(lp.is_feasible_point(res.point().unwrap()));
    }

    #[test]
    fn fractional_optimum() {
        // maximize x + y s.t. 3x + y <= 2, x + 3y <= 2, x,y >= 0 -> (1/2, 1/2)
        let lp = LinearProgram::new(2)
            .maximize(v(&[1, 1]))
            .at_least(v(&[-3, -1]), int(-2))
            .at_least(v(&[-1, -3]), int(-2))
            .at_least(v(&[1, 0]), int(0))
            .at_least(v(&[0, 1]), int(0));
        let res = lp.solve();
        assert_eq!(res.value(), Some(&int(1)));
        assert_eq!(res.point().unwrap(), [ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let lp = LinearProgram::new(2)
            .maximize(v(&[1, 0]))
            .equal(v(&[1, 1]), int(1))
            .equal(v(&[2, 2]), int(2))
            .at_least(v(&[1, 0]), int(0))
            .at_least(v(&[0, 1]), int(0));
        let res = lp.solve();
        assert_eq!(res.value(), Some(&int(1)));
        assert!(lp.is_feasible_point(res.point().unwrap()));
    }

    #[test]
    fn inconsistent_equalities_are_infeasible() {
        let lp = LinearProgram::new(2)
            .equal(v(&[1, 1]), int(1))
            .equal(v(&[1, 1]), int(2));
        assert_eq!(lp.solve(), LpResult::Infeasible);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // classic cycling example under the largest-coefficient rule (Beale)
        let q = |a: i64, b: i64| ratio(a, b);
        let lp = LinearProgram::new(4)
            .maximize(vec![q(3, 4), q(-150, 1), q(1, 50), q(-6, 1)])
            .at_least(vec![q(-1, 4), q(60, 1), q(1, 25), q(-9, 1)], int(0))
            .at_least(vec![q(-1, 2), q(90, 1), q(1, 50), q(-3, 1)], int(0))
            .at_least(vec![q(0, 1), q(0, 1), q(-1, 1), q(0, 1)], int(-1))
            .at_least(v(&[1, 0, 0, 0]), int(0))
            .at_least(v(&[0, 1, 0, 0]), int(0))
            .at_least(v(&[0, 0, 1, 0]), int(0))
            .at_least(v(&[0, 0, 0, 1]), int(0));
        let res = lp.solve();
        assert_eq!(res.value(), Some(&ratio(1, 20)));
        assert!(lp.is_feasible_point(res.point().unwrap()));
    }
}
