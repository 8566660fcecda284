#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::Zero;
use pmgames::game::{build_dueling_game, build_mab_game, build_pricing_game, Game};
use pmgames::gamefile::load_game;
use pmgames::geometry::{cell_constraints, cell_decomposition, in_cell, neighbor_pairs, CellStatus};
use pmgames::observability::{observability_report, Observation};
use pmgames::rational::{int, ratio, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture_game(name: &str) -> Game {
    load_game(&fixture(name)).unwrap()
}

/// Matrices transcribed by hand from the published 4-armed example, split
/// into sections by `# ...` headers. Each row is `label entry entry ...`.
pub struct Transcribed {
    pub gain: Vec<(String, Vec<Rational>)>,
    pub feedback: Vec<(String, Vec<String>)>,
    pub signal_12: Vec<(String, Vec<u8>)>,
}

pub fn transcribed_dueling4() -> Transcribed {
    let text = fixture("dueling4_matrices.txt");
    let mut section = "";
    let mut t = Transcribed {
        gain: vec![],
        feedback: vec![],
        signal_12: vec![],
    };
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        if let Some(h) = line.strip_prefix("# ") {
            section = match h {
                "gain" => "gain",
                "feedback" => "feedback",
                "signal 12" => "signal",
                other => panic!("unknown section {other}"),
            };
            continue;
        }
        let mut cells = line.split_whitespace();
        let label = cells.next().unwrap().to_string();
        let rest: Vec<&str> = cells.collect();
        match section {
            "gain" => t.gain.push((label, rest.iter().map(|c| parse_simple(c)).collect())),
            "feedback" => t.feedback.push((label, rest.iter().map(|c| c.to_string()).collect())),
            "signal" => t.signal_12.push((label, rest.iter().map(|c| c.parse().unwrap()).collect())),
            _ => panic!("row before any section"),
        }
    }
    t
}

/// "0", "1", "1/2" without going through the library parser.
fn parse_simple(s: &str) -> Rational {
    match s.split_once('/') {
        Some((p, q)) => ratio(p.parse().unwrap(), q.parse().unwrap()),
        None => int(s.parse().unwrap()),
    }
}

/// `count` points of the simplex with random integer weights in 0..=60.
pub fn random_simplex_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w: Vec<i64> = (0..dim).map(|_| rng.random_range(0..=60)).collect();
        let total: i64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        out.push(w.iter().map(|&x| ratio(x, total)).collect());
    }
    out
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rational::zero(), |acc, t| acc + t)
}

/// Games the soundness checks sweep over.
pub fn sweep_games() -> Vec<Game> {
    let mut games = Vec::new();
    for k in 2..=4 {
        games.push(build_dueling_game(k).unwrap());
    }
    for k in 2..=3 {
        games.push(build_mab_game(k).unwrap());
    }
    let grid = [ratio(1, 4), ratio(1, 2), ratio(3, 4)];
    games.push(build_pricing_game(&grid, &grid).unwrap());
    games
}

/// `cᵀ·S = loss_i - loss_j` recomputed straight from the feedback matrix.
pub fn certificate_matches(g: &Game, i: usize, j: usize, obs: &Observation) -> bool {
    let Some(c) = &obs.certificate else {
        return false;
    };
    (0..g.num_outcomes()).all(|m| {
        let lhs = obs
            .support
            .iter()
            .zip(c)
            .filter(|((a, s), _)| g.feedback(*a, m) == *s)
            .fold(Rational::zero(), |acc, (_, v)| acc + v);
        lhs == g.gain(j, m) - g.gain(i, m)
    })
}

fn best_gain(g: &Game, q: &[Rational]) -> Rational {
    (0..g.num_actions()).map(|k| dot(g.gain_row(k), q)).max().unwrap()
}

fn on_simplex(q: &[Rational]) -> bool {
    q.iter().all(|x| *x >= Rational::zero()) && q.iter().fold(Rational::zero(), |a, x| a + x) == int(1)
}

/// Cover property, witness validity, neighbor symmetry and local ⇒ global,
/// all checked with arithmetic done here rather than in the library.
pub fn geometry_soundness(g: &Game, points: usize, seed: u64) -> Result<(), String> {
    let cells = cell_decomposition(g);
    let neighbors = neighbor_pairs(g, &cells);
    let obs = observability_report(g, &cells, &neighbors);
    let name = g.name();

    for q in random_simplex_points(g.num_outcomes(), points, seed) {
        let best = best_gain(g, &q);
        let argmax: Vec<usize> = (0..g.num_actions()).filter(|&k| dot(g.gain_row(k), &q) == best).collect();
        for &k in &argmax {
            if !in_cell(g, k, &q) || !cell_constraints(g, k).is_feasible_point(&q) {
                return Err(format!("{name}: optimal action {} misses its own point", g.actions()[k]));
            }
        }
        let distinct_rows: std::collections::BTreeSet<&[Rational]> =
            argmax.iter().map(|&k| g.gain_row(k)).collect();
        if distinct_rows.len() == 1 && cells.status(argmax[0]) != CellStatus::StronglyPareto {
            return Err(format!("{name}: unique maximizer {} not strongly Pareto", g.actions()[argmax[0]]));
        }
    }

    for c in &cells.cells {
        let label = &g.actions()[c.action];
        match (&c.witness, c.status) {
            (None, CellStatus::NonPareto) => {}
            (None, _) => return Err(format!("{name}: cell {label} has no witness")),
            (Some(w), status) => {
                let mine = dot(g.gain_row(c.action), w);
                if !on_simplex(w) || mine != best_gain(g, w) {
                    return Err(format!("{name}: witness of {label} is not in its cell"));
                }
                if status == CellStatus::StronglyPareto {
                    let interior = w.iter().all(|x| *x > Rational::zero())
                        && (0..g.num_actions())
                            .filter(|&k| g.gain_row(k) != g.gain_row(c.action))
                            .all(|k| dot(g.gain_row(k), w) < mine);
                    if !interior {
                        return Err(format!("{name}: witness of {label} is not interior"));
                    }
                }
            }
        }
    }

    for p in &neighbors.pairs {
        let w = &p.witness;
        let best = best_gain(g, w);
        if !on_simplex(w) || dot(g.gain_row(p.first), w) != best || dot(g.gain_row(p.second), w) != best {
            return Err(format!("{name}: neighbor witness off the shared face"));
        }
        let hood: Vec<usize> = (0..g.num_actions()).filter(|&k| dot(g.gain_row(k), w) == best).collect();
        if hood != p.neighborhood {
            return Err(format!("{name}: neighborhood disagrees with its witness"));
        }
    }
    for &a in &neighbors.representatives {
        for &b in &neighbors.representatives {
            if neighbors.are_neighbors(a, b) != neighbors.are_neighbors(b, a) {
                return Err(format!("{name}: neighbor relation not symmetric"));
            }
            if let (Some(x), Some(y)) = (neighbors.find(a, b), neighbors.find(b, a)) {
                if x.neighborhood != y.neighborhood {
                    return Err(format!("{name}: neighborhoods differ by orientation"));
                }
            }
        }
    }

    for p in &obs.pairs {
        if p.locally_observable() == Some(true) && !p.globally_observable() {
            return Err(format!("{name}: local without global"));
        }
        for o in std::iter::once(&p.global).chain(p.local.as_ref()) {
            if o.observable != o.certificate.is_some()
                || (o.observable && !certificate_matches(g, p.first, p.second, o))
            {
                return Err(format!("{name}: bad certificate"));
            }
        }
    }
    Ok(())
}
