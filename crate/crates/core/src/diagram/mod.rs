//! Oriented link diagrams as PD data: validation, orientation, and the
//! exact rewriting operations everything else is built on.
//!
//! A diagram stores crossings and component cycles over *edge* identifiers.
//! Each crossing lists its four incident edges counterclockwise starting
//! from the incoming under-strand, so slot 0 is the under-in edge, slot 2
//! the under-out edge, and slots 1/3 carry the over-strand. Crossing signs
//! are always computed from component orientations, never stored.

mod canonical;
mod codes;
mod moves;
mod pd;
mod simplify;

pub use codes::{dt_code, gauss_code, parse_gauss};
pub use moves::{apply_move, available_moves, Move};
pub use simplify::{default_budget, simplify, SimplifyOptions, SimplifyOutcome};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub type EdgeId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ComponentRole {
    Knot,
    Staple,
    AmplifierSummand,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Crossing {
    /// Edges counterclockwise from the incoming under-strand.
    pub slots: [EdgeId; 4],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    /// Edge cycle in orientation order. A zero-crossing circle is a single
    /// edge that appears in no crossing.
    pub edges: Vec<EdgeId>,
    pub role: ComponentRole,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    pub name: String,
    crossings: Vec<Crossing>,
    components: Vec<Component>,
    next_edge: EdgeId,
}

/// Where an edge endpoint sits: (crossing index, slot).
pub type Endpoint = (usize, u8);

/// Orientation data derived by validation.
#[derive(Clone, Debug)]
pub struct Orientation {
    /// +1 or -1 per crossing.
    pub signs: Vec<i8>,
    /// Per crossing: true when the over strand flows slot 1 -> slot 3.
    pub over_forward: Vec<bool>,
    /// edge -> endpoint where it terminates (runs into a crossing).
    pub heads: BTreeMap<EdgeId, Endpoint>,
    /// edge -> endpoint where it originates.
    pub tails: BTreeMap<EdgeId, Endpoint>,
    pub edge_component: BTreeMap<EdgeId, usize>,
}

impl Orientation {
    /// Component index of the under strand at crossing `c`.
    pub fn under_component(&self, d: &Diagram, c: usize) -> usize {
        self.edge_component[&d.crossings[c].slots[0]]
    }

    /// Component index of the over strand at crossing `c`.
    pub fn over_component(&self, d: &Diagram, c: usize) -> usize {
        self.edge_component[&d.crossings[c].slots[1]]
    }

    /// The over strand's incoming edge at crossing `c`.
    pub fn over_in(&self, d: &Diagram, c: usize) -> EdgeId {
        if self.over_forward[c] {
            d.crossings[c].slots[1]
        } else {
            d.crossings[c].slots[3]
        }
    }

    pub fn over_out(&self, d: &Diagram, c: usize) -> EdgeId {
        if self.over_forward[c] {
            d.crossings[c].slots[3]
        } else {
            d.crossings[c].slots[1]
        }
    }
}

impl Diagram {
    pub fn new(name: impl Into<String>) -> Self {
        Diagram {
            name: name.into(),
            crossings: Vec::new(),
            components: Vec::new(),
            next_edge: 1,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.edges.len()).sum()
    }

    pub fn set_role(&mut self, comp: usize, role: ComponentRole) {
        self.components[comp].role = role;
    }

    pub fn knot_component(&self) -> Option<usize> {
        let knots: Vec<usize> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.role == ComponentRole::Knot)
            .map(|(i, _)| i)
            .collect();
        if knots.len() == 1 {
            Some(knots[0])
        } else {
            None
        }
    }

    pub fn fresh_edge(&mut self) -> EdgeId {
        let e = self.next_edge;
        self.next_edge += 1;
        e
    }

    pub(crate) fn bump_next_edge(&mut self) {
        let max = self
            .components
            .iter()
            .flat_map(|c| c.edges.iter())
            .max()
            .copied()
            .unwrap_or(0);
        self.next_edge = self.next_edge.max(max + 1);
    }

    pub(crate) fn push_component(&mut self, edges: Vec<EdgeId>, role: ComponentRole) {
        self.components.push(Component { edges, role });
    }

    pub(crate) fn push_crossing(&mut self, slots: [EdgeId; 4]) -> usize {
        self.crossings.push(Crossing { slots });
        self.crossings.len() - 1
    }

    pub(crate) fn crossings_mut(&mut self) -> &mut Vec<Crossing> {
        &mut self.crossings
    }

    pub(crate) fn components_mut(&mut self) -> &mut Vec<Component> {
        &mut self.components
    }

    /// Endpoints of every edge: edge -> list of (crossing, slot).
    pub fn endpoints(&self) -> BTreeMap<EdgeId, Vec<Endpoint>> {
        let mut map: BTreeMap<EdgeId, Vec<Endpoint>> = BTreeMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for (si, &e) in x.slots.iter().enumerate() {
                map.entry(e).or_default().push((ci, si as u8));
            }
        }
        map
    }

    /// The other endpoint of edge `e`, given one of them.
    pub fn other_end(
        &self,
        e: EdgeId,
        here: Endpoint,
        ends: &BTreeMap<EdgeId, Vec<Endpoint>>,
    ) -> Endpoint {
        let v = &ends[&e];
        debug_assert_eq!(v.len(), 2);
        if v[0] == here {
            v[1]
        } else {
            v[0]
        }
    }

    /// Check all structural invariants and derive orientations and signs.
    pub fn validate(&self) -> Result<Orientation> {
        if self.components.is_empty() {
            return Err(Error::Validation("diagram has no components".into()));
        }
        // Edge sets: each edge in exactly one component, listed once.
        let mut edge_component = BTreeMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            if comp.edges.is_empty() {
                return Err(Error::Validation(format!("component {i} has no arcs")));
            }
            for &e in &comp.edges {
                if edge_component.insert(e, i).is_some() {
                    return Err(Error::Validation(format!(
                        "arc {e} listed more than once across components"
                    )));
                }
            }
        }
        // Occurrence counts.
        let ends = self.endpoints();
        for (&e, v) in &ends {
            if !edge_component.contains_key(&e) {
                return Err(Error::Validation(format!(
                    "arc {e} appears in a crossing but in no component"
                )));
            }
            if v.len() != 2 {
                return Err(Error::Validation(format!(
                    "arc {e} appears {} times in crossings, expected exactly 2",
                    v.len()
                )));
            }
        }
        for comp in &self.components {
            for &e in &comp.edges {
                let n = ends.get(&e).map_or(0, |v| v.len());
                if n == 0 && comp.edges.len() != 1 {
                    return Err(Error::Validation(format!(
                        "arc {e} touches no crossing but shares a component with other arcs"
                    )));
                }
            }
        }

        // Match every consecutive edge pair in every cycle to a strand
        // transition through a crossing. Under transitions are slot 0 -> 2
        // by the format; over transitions fix the over direction per
        // crossing and hence the sign.
        let mut pairs: Vec<(EdgeId, EdgeId)> = Vec::new();
        for comp in &self.components {
            if comp.edges.len() == 1 && !ends.contains_key(&comp.edges[0]) {
                continue; // zero-crossing circle
            }
            let k = comp.edges.len();
            for i in 0..k {
                pairs.push((comp.edges[i], comp.edges[(i + 1) % k]));
            }
        }
        if pairs.len() != 2 * self.crossings.len() {
            return Err(Error::Validation(format!(
                "{} strand passages declared but {} crossings present",
                pairs.len(),
                self.crossings.len()
            )));
        }

        let n = self.crossings.len();
        // state per crossing: under transition used, over direction (None = free)
        let mut under_used = vec![false; n];
        let mut over_dir: Vec<Option<bool>> = vec![None; n]; // true = 1->3
        let mut choice: Vec<(usize, u8)> = Vec::with_capacity(pairs.len());

        fn candidates(d: &Diagram, e: EdgeId, f: EdgeId) -> Vec<(usize, u8)> {
            let mut out = Vec::new();
            for (ci, x) in d.crossings.iter().enumerate() {
                if x.slots[0] == e && x.slots[2] == f {
                    out.push((ci, 0));
                }
                if x.slots[1] == e && x.slots[3] == f {
                    out.push((ci, 1));
                }
                if x.slots[3] == e && x.slots[1] == f {
                    out.push((ci, 3));
                }
            }
            out
        }

        // Depth-first exact matching; diagrams are small and nearly forced.
        fn assign(
            d: &Diagram,
            pairs: &[(EdgeId, EdgeId)],
            i: usize,
            under_used: &mut Vec<bool>,
            over_dir: &mut Vec<Option<bool>>,
            choice: &mut Vec<(usize, u8)>,
        ) -> bool {
            if i == pairs.len() {
                return under_used.iter().all(|&u| u) && over_dir.iter().all(|d| d.is_some());
            }
            let (e, f) = pairs[i];
            for (ci, s) in candidates(d, e, f) {
                let ok = match s {
                    0 => !under_used[ci],
                    1 => over_dir[ci].is_none(),
                    3 => over_dir[ci].is_none(),
                    _ => unreachable!(),
                };
                if !ok {
                    continue;
                }
                match s {
                    0 => under_used[ci] = true,
                    1 => over_dir[ci] = Some(true),
                    3 => over_dir[ci] = Some(false),
                    _ => unreachable!(),
                }
                choice.push((ci, s));
                if assign(d, pairs, i + 1, under_used, over_dir, choice) {
                    return true;
                }
                choice.pop();
                match s {
                    0 => under_used[ci] = false,
                    1 | 3 => over_dir[ci] = None,
                    _ => unreachable!(),
                }
            }
            false
        }

        if !assign(self, &pairs, 0, &mut under_used, &mut over_dir, &mut choice) {
            // name a crossing that cannot be matched for the error message
            for (i, &(e, f)) in pairs.iter().enumerate() {
                let _ = i;
                if candidates(self, e, f).is_empty() {
                    return Err(Error::Validation(format!(
                        "mismatched orientation: arcs {e} -> {f} pass through no crossing consistently"
                    )));
                }
            }
            return Err(Error::Validation(
                "mismatched orientation through a crossing".into(),
            ));
        }

        let mut heads = BTreeMap::new();
        let mut tails = BTreeMap::new();
        for (&(e, f), &(ci, s)) in pairs.iter().zip(choice.iter()) {
            let (s_in, s_out) = match s {
                0 => (0u8, 2u8),
                1 => (1, 3),
                3 => (3, 1),
                _ => unreachable!(),
            };
            if heads.insert(e, (ci, s_in)).is_some() {
                return Err(Error::Validation(format!("arc {e} terminates twice")));
            }
            if tails.insert(f, (ci, s_out)).is_some() {
                return Err(Error::Validation(format!("arc {f} originates twice")));
            }
        }

        let over_forward: Vec<bool> = over_dir.into_iter().map(|d| d.unwrap()).collect();
        let signs: Vec<i8> = over_forward
            .iter()
            .map(|&f| if f { 1 } else { -1 })
            .collect();

        Ok(Orientation {
            signs,
            over_forward,
            heads,
            tails,
            edge_component,
        })
    }

    /// Sum of signs of the self-crossings of component `c`.
    pub fn writhe(&self, c: usize) -> Result<i64> {
        if c >= self.components.len() {
            return Err(Error::UnknownComponent(c));
        }
        let o = self.validate()?;
        let mut w = 0i64;
        for i in 0..self.crossings.len() {
            if o.under_component(self, i) == c && o.over_component(self, i) == c {
                w += o.signs[i] as i64;
            }
        }
        Ok(w)
    }

    /// Half the signed count of crossings between two distinct components.
    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64> {
        if a >= self.components.len() {
            return Err(Error::UnknownComponent(a));
        }
        if b >= self.components.len() {
            return Err(Error::UnknownComponent(b));
        }
        if a == b {
            return Err(Error::SameComponent(a));
        }
        let o = self.validate()?;
        let mut total = 0i64;
        for i in 0..self.crossings.len() {
            let (u, v) = (o.under_component(self, i), o.over_component(self, i));
            if (u == a && v == b) || (u == b && v == a) {
                total += o.signs[i] as i64;
            }
        }
        debug_assert!(total % 2 == 0, "inter-component signed count must be even");
        Ok(total / 2)
    }

    /// Remove a set of crossings, fusing edges according to `unions` (pairs
    /// to merge) and dropping edges of `dead` components entirely.
    pub(crate) fn remove_crossings(
        &self,
        remove: &BTreeSet<usize>,
        unions: &[(EdgeId, EdgeId)],
        dead_components: &BTreeSet<usize>,
    ) -> Diagram {
        let mut parent: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<EdgeId, EdgeId>, e: EdgeId) -> EdgeId {
            let p = *parent.get(&e).unwrap_or(&e);
            if p == e {
                return e;
            }
            let r = find(parent, p);
            parent.insert(e, r);
            r
        }
        for &(a, b) in unions {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent.insert(hi, lo);
            }
        }

        let mut out = Diagram::new(self.name.clone());
        for (ci, x) in self.crossings.iter().enumerate() {
            if remove.contains(&ci) {
                continue;
            }
            let slots = [
                find(&mut parent, x.slots[0]),
                find(&mut parent, x.slots[1]),
                find(&mut parent, x.slots[2]),
                find(&mut parent, x.slots[3]),
            ];
            out.push_crossing(slots);
        }
        for (i, comp) in self.components.iter().enumerate() {
            if dead_components.contains(&i) {
                continue;
            }
            let mapped: Vec<EdgeId> = comp.edges.iter().map(|&e| find(&mut parent, e)).collect();
            let mut cycle: Vec<EdgeId> = Vec::with_capacity(mapped.len());
            for e in mapped {
                if cycle.last() == Some(&e) {
                    continue;
                }
                cycle.push(e);
            }
            while cycle.len() > 1 && cycle.first() == cycle.last() {
                cycle.pop();
            }
            out.push_component(cycle, comp.role);
        }
        out.bump_next_edge();
        out
    }

    /// Delete one component, rejoining the strands of the others that
    /// crossed it. Errors when it is the last component.
    pub fn delete_component(&self, c: usize) -> Result<Diagram> {
        if c >= self.components.len() {
            return Err(Error::UnknownComponent(c));
        }
        if self.components.len() < 2 {
            return Err(Error::LastComponent(c));
        }
        let o = self.validate()?;
        let mut remove = BTreeSet::new();
        let mut unions = Vec::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            let uc = o.under_component(self, ci);
            let vc = o.over_component(self, ci);
            if uc != c && vc != c {
                continue;
            }
            remove.insert(ci);
            if uc != c {
                unions.push((x.slots[0], x.slots[2]));
            }
            if vc != c {
                unions.push((x.slots[1], x.slots[3]));
            }
        }
        let mut dead = BTreeSet::new();
        dead.insert(c);
        let out = self.remove_crossings(&remove, &unions, &dead);
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    /// Connected sum: splice `other` into `self` at the named edges, which
    /// must lie on the knot-role component of each diagram. Orientations are
    /// respected; the crossing count adds.
    pub fn connected_sum(&self, arc1: EdgeId, other: &Diagram, arc2: EdgeId) -> Result<Diagram> {
        let k1 = self.knot_component().ok_or_else(|| {
            Error::Validation("left summand needs exactly one knot component".into())
        })?;
        let k2 = other.knot_component().ok_or_else(|| {
            Error::Validation("right summand needs exactly one knot component".into())
        })?;
        if !self.components[k1].edges.contains(&arc1) {
            return Err(Error::ArcNotOnKnot(arc1));
        }
        if !other.components[k2].edges.contains(&arc2) {
            return Err(Error::ArcNotOnKnot(arc2));
        }
        self.validate()?;
        other.validate()?;

        if other.crossing_count() == 0 {
            let mut out = self.clone();
            out.name = format!("{}#{}", self.name, other.name);
            return Ok(out);
        }
        if self.crossing_count() == 0 {
            let mut out = other.clone();
            out.name = format!("{}#{}", self.name, other.name);
            return Ok(out);
        }

        // Renumber other's edges above ours.
        let offset = self
            .components
            .iter()
            .flat_map(|c| c.edges.iter())
            .max()
            .copied()
            .unwrap_or(0);
        let shift = |e: EdgeId| e + offset;
        let arc2s = shift(arc2);

        let mut out = Diagram::new(format!("{}#{}", self.name, other.name));
        for x in &self.crossings {
            out.push_crossing(x.slots);
        }
        for x in &other.crossings {
            out.push_crossing([
                shift(x.slots[0]),
                shift(x.slots[1]),
                shift(x.slots[2]),
                shift(x.slots[3]),
            ]);
        }
        // Cross-connect at the cut points: arc1 keeps its tail slot and takes
        // over arc2's head slot; arc2 keeps its tail slot and takes arc1's
        // head slot.
        let o1 = self.validate()?;
        let o2 = other.validate()?;
        let head1 = o1.heads[&arc1];
        let head2 = o2.heads[&arc2];
        let n1 = self.crossings.len();
        out.crossings_mut()[n1 + head2.0].slots[head2.1 as usize] = arc1;
        out.crossings_mut()[head1.0].slots[head1.1 as usize] = arc2s;

        // Splice cycles: rotate self's knot cycle to start at arc1 and
        // other's to start at arc2, then interleave.
        let c1 = &self.components[k1].edges;
        let c2 = &other.components[k2].edges;
        let p1 = c1.iter().position(|&e| e == arc1).unwrap();
        let p2 = c2.iter().position(|&e| e == arc2).unwrap();
        let mut cycle = Vec::with_capacity(c1.len() + c2.len());
        cycle.push(arc1);
        for i in 1..c2.len() {
            cycle.push(shift(c2[(p2 + i) % c2.len()]));
        }
        cycle.push(arc2s);
        for i in 1..c1.len() {
            cycle.push(c1[(p1 + i) % c1.len()]);
        }

        for (i, comp) in self.components.iter().enumerate() {
            if i == k1 {
                out.push_component(cycle.clone(), ComponentRole::Knot);
            } else {
                out.push_component(comp.edges.clone(), comp.role);
            }
        }
        for (i, comp) in other.components.iter().enumerate() {
            if i == k2 {
                continue;
            }
            out.push_component(comp.edges.iter().map(|&e| shift(e)).collect(), comp.role);
        }
        out.bump_next_edge();
        out.validate()?;
        Ok(out)
    }
}
