//! Deterministic canonical relabeling. Two representations of the same
//! labeled diagram (differing by arc renaming, crossing order, or cycle
//! start points) serialize to the same canonical text. Component order and
//! orientations are preserved; this is a normal form, not a knot invariant.

use super::{Diagram, EdgeId};
use std::collections::BTreeMap;

impl Diagram {
    /// Relabeled copy with edges numbered 1.. in a normal form.
    pub fn canonical(&self) -> Diagram {
        if self.component_count() == 0 {
            return self.clone();
        }
        let starts0: Vec<usize> = (0..self.components[0].edges.len()).collect();
        let mut best: Option<(String, Diagram)> = None;
        for &s in &starts0 {
            let cand = self.relabel_from(s);
            let code = cand.to_pd_string();
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, cand));
            }
        }
        best.unwrap().1
    }

    /// Canonical text with the name field normalized away, usable as a
    /// structural equality key.
    pub fn canonical_code(&self) -> String {
        let mut c = self.canonical();
        c.name = "-".into();
        c.to_pd_string()
    }

    pub fn same_diagram(&self, other: &Diagram) -> bool {
        self.canonical_code() == other.canonical_code()
    }

    fn relabel_from(&self, start0: usize) -> Diagram {
        let mut label: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        let mut next: EdgeId = 1;
        let assign_cycle = |label: &mut BTreeMap<EdgeId, EdgeId>,
                            next: &mut EdgeId,
                            edges: &[EdgeId],
                            start: usize| {
            let k = edges.len();
            for i in 0..k {
                let e = edges[(start + i) % k];
                label.entry(e).or_insert_with(|| {
                    let v = *next;
                    *next += 1;
                    v
                });
            }
        };

        assign_cycle(&mut label, &mut next, &self.components[0].edges, start0);

        for ci in 1..self.components.len() {
            let edges = &self.components[ci].edges;
            // Start at the edge sitting in the earliest already-labeled
            // context: rank by (crossing rank, slot), where crossing rank is
            // the sorted tuple of labels seen so far.
            let mut best: Option<((Vec<EdgeId>, u8), usize)> = None;
            for (pos, &e) in edges.iter().enumerate() {
                for (xi, x) in self.crossings.iter().enumerate() {
                    let _ = xi;
                    for (si, &se) in x.slots.iter().enumerate() {
                        if se != e {
                            continue;
                        }
                        let mut key: Vec<EdgeId> = x
                            .slots
                            .iter()
                            .map(|s| label.get(s).copied().unwrap_or(EdgeId::MAX))
                            .collect();
                        key.sort_unstable();
                        let cand = ((key, si as u8), pos);
                        if best.as_ref().is_none_or(|b| cand < *b) {
                            best = Some(cand);
                        }
                    }
                }
            }
            let start = best.map(|(_, p)| p).unwrap_or(0);
            assign_cycle(&mut label, &mut next, edges, start);
        }

        let mut out = Diagram::new(self.name.clone());
        let mut xs: Vec<[EdgeId; 4]> = self
            .crossings
            .iter()
            .map(|x| {
                [
                    label[&x.slots[0]],
                    label[&x.slots[1]],
                    label[&x.slots[2]],
                    label[&x.slots[3]],
                ]
            })
            .collect();
        xs.sort_unstable();
        for slots in xs {
            out.push_crossing(slots);
        }
        for comp in &self.components {
            // rotate each cycle so its minimal label comes first
            let mapped: Vec<EdgeId> = comp.edges.iter().map(|e| label[e]).collect();
            let minpos = mapped
                .iter()
                .enumerate()
                .min_by_key(|(_, v)| **v)
                .map(|(i, _)| i)
                .unwrap_or(0);
            let rotated: Vec<EdgeId> = (0..mapped.len())
                .map(|i| mapped[(minpos + i) % mapped.len()])
                .collect();
            out.push_component(rotated, comp.role);
        }
        out.bump_next_edge();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn relabeled_trefoils_agree() {
        let a = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        // same diagram, arcs renamed 1->11 etc, crossing lines permuted,
        // cycle listed from a different start
        let b = Diagram::parse_pd(
            "L t2 components=1\nX 15 12 16 13\nX 11 14 12 15\nX 13 16 14 11\nC 0: 13 14 15 16 11 12\n",
        )
        .unwrap();
        assert!(a.same_diagram(&b));
    }

    #[test]
    fn different_knots_differ() {
        let a = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let b = Diagram::parse_pd(fixtures::FIGURE_EIGHT).unwrap();
        assert!(!a.same_diagram(&b));
    }
}
