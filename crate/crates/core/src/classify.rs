//! Four-way regret classification of finite games.
//!
//! | verdict  | condition                                                      |
//! |----------|----------------------------------------------------------------|
//! | Trivial  | one action is optimal on the whole simplex                     |
//! | Hopeless | two strongly Pareto actions differ unobservably (globally)     |
//! | Easy     | every neighbor pair is locally observable                      |
//! | Hard     | otherwise: some neighbor pair is only globally observable      |

use serde::Serialize;

use crate::game::Game;
use crate::geometry::{cell_decomposition, neighbor_pairs, CellReport, NeighborReport};
use crate::observability::{observability_report, ObservabilityReport, Observation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Trivial,
    Easy,
    Hard,
    Hopeless,
}

impl Verdict {
    /// Process exit code used by the `pmg classify` command.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Trivial => 10,
            Verdict::Easy => 11,
            Verdict::Hard => 12,
            Verdict::Hopeless => 13,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Trivial => "Trivial",
            Verdict::Easy => "Easy",
            Verdict::Hard => "Hard",
            Verdict::Hopeless => "Hopeless",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Evidence {
    /// An action whose gain dominates every other action on every outcome.
    Trivial { action: usize },
    /// Strongly Pareto pair whose loss difference is not globally observable.
    Hopeless { first: usize, second: usize },
    /// Neighbor pair whose loss difference is not locally observable.
    Hard { first: usize, second: usize },
    /// Every neighbor pair with its local certificate.
    Easy { pairs: Vec<EasyPair> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EasyPair {
    pub first: usize,
    pub second: usize,
    pub certificate: Observation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Everything the classifier looked at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub classification: Classification,
    pub cells: CellReport,
    pub neighbors: NeighborReport,
    pub observability: ObservabilityReport,
}

/// Action whose gain row is entrywise maximal, i.e. whose cell is the whole
/// simplex (the simplex vertices are the point masses on single outcomes).
pub fn dominant_action(g: &Game) -> Option<usize> {
    (0..g.num_actions()).find(|&i| {
        (0..g.num_actions()).all(|j| {
            g.gain_row(i)
                .iter()
                .zip(g.gain_row(j))
                .all(|(a, b)| a >= b)
        })
    })
}

/// Verdict from precomputed reports. Pure so each branch can be exercised on
/// hand-built reports.
pub fn decide(
    trivial: Option<usize>,
    neighbors: &NeighborReport,
    observability: &ObservabilityReport,
) -> Classification {
    if let Some(action) = trivial {
        return Classification {
            verdict: Verdict::Trivial,
            evidence: Evidence::Trivial { action },
        };
    }
    if let Some(p) = observability.pairs.iter().find(|p| !p.globally_observable()) {
        return Classification {
            verdict: Verdict::Hopeless,
            evidence: Evidence::Hopeless {
                first: p.first,
                second: p.second,
            },
        };
    }
    let mut easy = Vec::new();
    for n in &neighbors.pairs {
        let local = observability
            .find(n.first, n.second)
            .and_then(|p| p.local.as_ref());
        match local {
            Some(o) if o.observable => easy.push(EasyPair {
                first: n.first,
                second: n.second,
                certificate: o.clone(),
            }),
            _ => {
                return Classification {
                    verdict: Verdict::Hard,
                    evidence: Evidence::Hard {
                        first: n.first,
                        second: n.second,
                    },
                }
            }
        }
    }
    Classification {
        verdict: Verdict::Easy,
        evidence: Evidence::Easy { pairs: easy },
    }
}

pub fn analyze(g: &Game) -> Analysis {
    let cells = cell_decomposition(g);
    let neighbors = neighbor_pairs(g, &cells);
    let observability = observability_report(g, &cells, &neighbors);
    let classification = decide(dominant_action(g), &neighbors, &observability);
    Analysis {
        classification,
        cells,
        neighbors,
        observability,
    }
}

/// Classification only; skips the geometry entirely for trivial games.
pub fn classify(g: &Game) -> Classification {
    match dominant_action(g) {
        Some(action) => Classification {
            verdict: Verdict::Trivial,
            evidence: Evidence::Trivial { action },
        },
        None => analyze(g).classification,
    }
}
