//! CSV rendering of traces and batch summaries. Rationals are written as
//! fixed-point decimals with `digits` fractional digits.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BatchSummary, RegretTrace, ScaledGains};
use crate::game::Game;
use crate::rational::to_decimal;

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `run,t,action,outcome,symbol,cum_gain,cum_regret`, one line per round;
/// `action` and `outcome` are indices, `cum_regret` is against the best fixed
/// action on the outcomes so far.
pub fn trace_csv(g: &Game, traces: &[RegretTrace], digits: usize) -> String {
    let gains = ScaledGains::new(g);
    let mut out = String::from("run,t,action,outcome,symbol,cum_gain,cum_regret\n");
    for (run, trace) in traces.iter().enumerate() {
        let mut per_action = vec![BigInt::zero(); g.num_actions()];
        let mut earned = BigInt::zero();
        for (t, r) in trace.rounds.iter().enumerate() {
            for (acc, row) in per_action.iter_mut().zip(&gains.numer) {
                *acc += &row[r.outcome];
            }
            earned += &gains.numer[r.action][r.outcome];
            let best = per_action.iter().max().expect("at least one action");
            let _ = writeln!(
                out,
                "{run},{},{},{},{},{},{}",
                t + 1,
                r.action,
                r.outcome,
                csv_field(&g.alphabet()[r.symbol]),
                to_decimal(&gains.to_rational(earned.clone()), digits),
                to_decimal(&gains.to_rational(best - &earned), digits),
            );
        }
    }
    out
}

/// `run,regret`, one line per run.
pub fn summary_csv(summary: &BatchSummary, digits: usize) -> String {
    let mut out = String::from("run,regret\n");
    for (run, r) in summary.regrets.iter().enumerate() {
        let _ = writeln!(out, "{run},{}", to_decimal(r, digits));
    }
    out
}
