//! Rank and row-space membership by fraction-free (Bareiss) elimination.
//!
//! Rational rows are first scaled to integer rows (scaling a row changes
//! neither the rank nor the solution set of a linear system). Elimination
//! then works over `BigInt`, where every Bareiss division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}

/// Row echelon form with pivot columns, computed in place.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
}

/// Bareiss elimination over the first `cols` columns of `rows`; any further
/// columns (an augmented right-hand side) are carried along.
fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c..row.len() {
                let value = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = value / &prev;
            }
        }
        prev = pivot;
        pivots.push((r, c));
        r += 1;
    }
    Echelon { rows, pivots }
}

pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let Some(cols) = matrix.first().map(Vec::len) else {
        return 0;
    };
    let rows = matrix.iter().map(|r| integer_row(r)).collect();
    bareiss(rows, cols).pivots.len()
}

/// Finds `c` with `cᵀ·matrix = target`, i.e. whether `target` lies in the
/// row space of `matrix`. Free coordinates of `c` are set to zero.
pub fn solve_left(matrix: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let num_rows = matrix.len();
    let cols = target.len();
    assert!(
        matrix.iter().all(|r| r.len() == cols),
        "target length must equal the column count"
    );
    if num_rows == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }

    // One equation per column of `matrix`: sum_r c_r * matrix[r][m] = target[m].
    let system: Vec<Vec<BigInt>> = (0..cols)
        .map(|m| {
            let mut eq: Vec<Rational> = matrix.iter().map(|row| row[m].clone()).collect();
            eq.push(target[m].clone());
            integer_row(&eq)
        })
        .collect();
    let ech = bareiss(system, num_rows);

    let rank = ech.pivots.len();
    if ech.rows[rank..].iter().any(|row| !row[num_rows].is_zero()) {
        return None;
    }

    let mut c = vec![Rational::zero(); num_rows];
    for &(r, col) in ech.pivots.iter().rev() {
        let row = &ech.rows[r];
        let mut acc = Rational::from_integer(row[num_rows].clone());
        for j in col + 1..num_rows {
            if !row[j].is_zero() && !c[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &c[j];
            }
        }
        c[col] = acc / Rational::from_integer(row[col].clone());
    }
    Some(c)
}

/// `cᵀ·matrix` for checking certificates.
pub fn combine_rows(coeffs: &[Rational], matrix: &[Vec<Rational>]) -> Vec<Rational> {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); cols];
    for (c, row) in coeffs.iter().zip(matrix) {
        if c.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(row) {
            if !a.is_zero() {
                *o += c * a;
            }
        }
    }
    out
}
