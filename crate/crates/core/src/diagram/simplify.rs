//! Crossing-count reduction by Reidemeister moves: greedy R1/R2 descent,
//! then bounded best-first search interleaving R3 with limited R2/R1
//! insertions. Deterministic: the frontier is ordered by crossing count and
//! then by lexicographically smallest canonical code.

use super::moves::{apply_move, available_moves, Move};
use super::Diagram;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct SimplifyOptions {
    /// Node-expansion budget for the search phase.
    pub budget: usize,
    /// How many crossings above the best-known count a state may have.
    pub max_extra: usize,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        SimplifyOptions {
            budget: default_budget(),
            max_extra: 2,
        }
    }
}

/// Budget default, overridable through STAPLEKIT_BUDGET.
pub fn default_budget() -> usize {
    std::env::var("STAPLEKIT_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10_000)
}

#[derive(Clone, Debug)]
pub struct SimplifyOutcome {
    pub diagram: Diagram,
    /// True when the budget ran out before the frontier emptied.
    pub budget_exhausted: bool,
    pub expanded: usize,
}

/// Apply decreasing moves greedily until none remain.
fn descend(mut d: Diagram) -> Diagram {
    loop {
        let mv = available_moves(&d, false)
            .into_iter()
            .find(|m| matches!(m, Move::R1Down { .. } | Move::R2Down { .. }));
        match mv {
            Some(m) => d = apply_move(&d, &m),
            None => return d,
        }
    }
}

pub fn simplify(d: &Diagram, opts: &SimplifyOptions) -> SimplifyOutcome {
    let start = descend(d.clone());
    if start.crossing_count() == 0 {
        return SimplifyOutcome {
            diagram: start,
            budget_exhausted: false,
            expanded: 0,
        };
    }

    let mut best = start.clone();
    let mut best_key = (best.crossing_count(), best.canonical_code());

    let mut visited: BTreeSet<String> = BTreeSet::new();
    let mut frontier: BTreeMap<(usize, String), Diagram> = BTreeMap::new();
    let start_key = (start.crossing_count(), start.canonical_code());
    visited.insert(start_key.1.clone());
    frontier.insert(start_key, start);

    let mut expanded = 0usize;
    let mut exhausted = false;

    while let Some((key, cur)) = frontier.pop_first() {
        if expanded >= opts.budget {
            exhausted = true;
            break;
        }
        expanded += 1;
        let cur_count = key.0;

        for m in available_moves(&cur, true) {
            let child_count_hint = match &m {
                Move::R1Down { .. } => cur_count - 1,
                Move::R2Down { .. } => cur_count - 2,
                Move::R3 { .. } => cur_count,
                Move::R1Up { .. } => cur_count + 1,
                Move::R2Up { .. } => cur_count + 2,
            };
            if child_count_hint > best_key.0 + opts.max_extra {
                continue;
            }
            let child = descend(apply_move(&cur, &m));
            let code = child.canonical_code();
            if !visited.insert(code.clone()) {
                continue;
            }
            let ckey = (child.crossing_count(), code.clone());
            if ckey < best_key {
                best = child.clone();
                best_key = ckey.clone();
                if best_key.0 == 0 {
                    return SimplifyOutcome {
                        diagram: best,
                        budget_exhausted: false,
                        expanded,
                    };
                }
            }
            frontier.insert(ckey, child);
        }
    }

    SimplifyOutcome {
        diagram: best,
        budget_exhausted: exhausted,
        expanded,
    }
}

#[cfg(test)]
mod tests {
    use super::super::moves::{apply_move, Move};
    use super::*;
    use crate::fixtures;

    #[test]
    fn trefoil_with_kink_reduces_to_trefoil() {
        let t = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let kinked = apply_move(
            &t,
            &Move::R1Up {
                edge: 1,
                positive: true,
            },
        );
        assert_eq!(kinked.crossing_count(), 4);
        let out = simplify(&kinked, &SimplifyOptions::default());
        assert_eq!(out.diagram.crossing_count(), 3);
        assert!(out.diagram.same_diagram(&t));
    }

    #[test]
    fn stacked_r2_insertions_cancel() {
        let u = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
        // build a messy unknot: kink, then push fingers across repeatedly
        let mut d = apply_move(
            &u,
            &Move::R1Up {
                edge: 1,
                positive: true,
            },
        );
        for _ in 0..3 {
            let mv = crate::diagram::available_moves(&d, true)
                .into_iter()
                .find(|m| matches!(m, Move::R2Up { .. }))
                .expect("an R2 insertion should exist");
            d = apply_move(&d, &mv);
        }
        assert_eq!(d.crossing_count(), 7);
        let out = simplify(&d, &SimplifyOptions::default());
        assert_eq!(out.diagram.crossing_count(), 0);
    }

    #[test]
    fn trefoil_is_a_fixed_point() {
        let t = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let out = simplify(
            &t,
            &SimplifyOptions {
                budget: 300,
                max_extra: 2,
            },
        );
        assert_eq!(out.diagram.crossing_count(), 3);
    }
}
