//! Plain-text views of games and reports, labelled with the game's action
//! and outcome names (`12`, `0100`, ...) so they diff cleanly.

use std::fmt::Write as _;

use crate::classify::{Analysis, Classification, Evidence};
use crate::feedexp::{Encoding, FeedexpReport, PointLocal};
use crate::game::Game;
use crate::geometry::{CellReport, CellStatus, NeighborReport};
use crate::observability::SignalMatrix;
use crate::rational::{self, Rational};
use num_traits::{One, Signed};

fn table(corner: &str, header: &[String], rows: &[(String, Vec<String>)]) -> String {
    let mut width = corner.chars().count();
    for (label, _) in rows {
        width = width.max(label.chars().count());
    }
    let col_width = header
        .iter()
        .map(|h| h.chars().count())
        .chain(rows.iter().flat_map(|(_, r)| r.iter().map(|c| c.chars().count())))
        .max()
        .unwrap_or(1);
    let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w.saturating_sub(s.chars().count())), s);

    let mut out = pad(corner, width);
    for h in header {
        out.push(' ');
        out += &pad(h, col_width);
    }
    out.push('\n');
    for (label, cells) in rows {
        out += &pad(label, width);
        for c in cells {
            out.push(' ');
            out += &pad(c, col_width);
        }
        out.push('\n');
    }
    out
}

fn names(g: &Game, actions: &[usize]) -> String {
    let labels: Vec<&str> = actions.iter().map(|&a| g.actions()[a].as_str()).collect();
    format!("{{{}}}", labels.join(", "))
}

fn point(q: &[Rational]) -> String {
    let parts: Vec<String> = q.iter().map(rational::format).collect();
    format!("({})", parts.join(", "))
}

pub fn gain_matrix(g: &Game) -> String {
    let rows: Vec<(String, Vec<String>)> = (0..g.num_actions())
        .map(|i| (g.actions()[i].clone(), g.gain_row(i).iter().map(rational::format).collect()))
        .collect();
    table("G", g.outcomes(), &rows)
}

pub fn feedback_matrix(g: &Game) -> String {
    let rows: Vec<(String, Vec<String>)> = (0..g.num_actions())
        .map(|i| {
            let symbols = (0..g.num_outcomes()).map(|m| g.symbol(i, m).to_string()).collect();
            (g.actions()[i].clone(), symbols)
        })
        .collect();
    table("H", g.outcomes(), &rows)
}

pub fn matrices(g: &Game) -> String {
    format!("{}\n{}", gain_matrix(g), feedback_matrix(g))
}

pub fn signal(g: &Game, s: &SignalMatrix) -> String {
    let rows: Vec<(String, Vec<String>)> = s
        .symbols
        .iter()
        .zip(&s.entries)
        .map(|(&sym, row)| (g.alphabet()[sym].clone(), row.iter().map(u8::to_string).collect()))
        .collect();
    format!(
        "S({})\n{}",
        g.actions()[s.action],
        table("", g.outcomes(), &rows)
    )
}

pub fn cells(g: &Game, report: &CellReport) -> String {
    let mut out = String::new();
    for c in &report.cells {
        let status = match c.status {
            CellStatus::StronglyPareto => "strongly-pareto",
            CellStatus::Degenerate => "degenerate",
            CellStatus::NonPareto => "non-pareto",
        };
        let _ = write!(out, "{:>6} {:<16} dim {:>3}", g.actions()[c.action], status, c.dim);
        if let Some(w) = &c.witness {
            let _ = write!(out, "  witness {}", point(w));
        }
        out.push('\n');
    }
    for group in &report.duplicate_groups {
        let _ = writeln!(out, "duplicate gains: {}", names(g, group));
    }
    out
}

pub fn neighbors(g: &Game, report: &NeighborReport) -> String {
    let mut out = String::new();
    for p in &report.pairs {
        let _ = writeln!(
            out,
            "{} ~ {}  neighborhood {}",
            g.actions()[p.first],
            g.actions()[p.second],
            names(g, &p.neighborhood)
        );
    }
    if report.pairs.is_empty() {
        out.push_str("no neighbor pairs\n");
    }
    out
}

pub fn classification(g: &Game, c: &Classification) -> String {
    let mut out = format!("{}\n", c.verdict);
    let label = |a: usize| g.actions()[a].as_str();
    match &c.evidence {
        Evidence::Trivial { action } => {
            let _ = writeln!(out, "dominant action: {}", label(*action));
        }
        Evidence::Hopeless { first, second } => {
            let _ = writeln!(
                out,
                "not globally observable: {} vs {}",
                label(*first),
                label(*second)
            );
        }
        Evidence::Hard { first, second } => {
            let _ = writeln!(
                out,
                "not locally observable: {} vs {}",
                label(*first),
                label(*second)
            );
        }
        Evidence::Easy { pairs } => {
            for p in pairs {
                let terms: Vec<(Rational, String)> = p
                    .certificate
                    .nonzero_terms()
                    .into_iter()
                    .map(|(a, s, v)| (v, format!("S({})[{}]", label(a), g.alphabet()[s])))
                    .collect();
                let _ = writeln!(
                    out,
                    "locally observable: l({}) - l({}) = {}",
                    label(p.first),
                    label(p.second),
                    linear_combination(&terms)
                );
            }
        }
    }
    out
}

/// `a·x - y + 2·z`, or `0` for no terms.
fn linear_combination(terms: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (k, (c, name)) in terms.iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        match (k, sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            _ => {
                let _ = write!(out, " {sign} ");
            }
        }
        let mag = c.abs();
        if !mag.is_one() {
            let _ = write!(out, "{}·", rational::format(&mag));
        }
        out += name;
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn analysis(g: &Game, a: &Analysis) -> String {
    format!(
        "{}\ncells\n{}\nneighbors\n{}",
        classification(g, &a.classification),
        cells(g, &a.cells),
        neighbors(g, &a.neighbors)
    )
}

pub fn feedexp(g: &Game, encoding: &Encoding, r: &FeedexpReport) -> String {
    let mut out = format!("{}\n", if r.feasible { "feasible" } else { "infeasible" });
    let enc: Vec<String> = g
        .alphabet()
        .iter()
        .map(|s| format!("{s}={}", rational::format(&encoding[s])))
        .collect();
    let _ = writeln!(out, "encoding: {}", enc.join(", "));
    if let Some((a, b)) = r.conflict {
        let _ = writeln!(
            out,
            "conflict: outcomes {} and {} share every feedback symbol but differ in gain",
            g.outcomes()[a],
            g.outcomes()[b]
        );
    }
    if let Some(b) = &r.witness {
        let rows: Vec<(String, Vec<String>)> = b
            .iter()
            .enumerate()
            .map(|(i, row)| (g.actions()[i].clone(), row.iter().map(rational::format).collect()))
            .collect();
        out += &table("B", g.actions(), &rows);
    }
    out
}

pub fn point_local(g: &Game, p: &PointLocal) -> String {
    let at = p
        .point
        .iter()
        .position(|x| !num_traits::Zero::is_zero(x))
        .map_or("-", |m| g.outcomes()[m].as_str());
    format!(
        "point mass on outcome {at}\nbest gain {}\noptimal actions ({}): {}\n",
        rational::format(&p.best_gain),
        p.optimal_actions.len(),
        names(g, &p.optimal_actions)
    )
}
