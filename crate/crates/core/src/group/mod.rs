//! Wirtinger presentations, Fox calculus, Alexander invariants, and
//! finite-quotient verification of peripheral maps.

mod alexander;
mod epi;
mod homs;
mod word;

pub use alexander::{
    alexander_class, alexander_polynomial, alexander_polynomial_via, fox_matrix, fox_row,
    presentation_alexander, ClassReport,
};
pub use epi::{
    verify_epimorphism, AlexanderComparison, EpimorphismCertificate, Exponents, PeripheralMap,
    PolyJson, QuotientReport,
};
pub use homs::{
    count_homs, default_battery, enumerate_homs, FiniteGroup, GroupDesc, Hom, DEFAULT_ORDER_BOUND,
};
pub use word::Word;

use crate::diagram::{Diagram, EdgeId};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// One Wirtinger relation out = over^sign · in · over^-sign.
#[derive(Clone, Debug)]
pub struct CrossingRel {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// A Wirtinger presentation of a diagram's group, with a distinguished
/// meridian and longitude for one component.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Edges of each arc (maximal over-strand chains), traversal order.
    pub arcs: Vec<Vec<EdgeId>>,
    /// Component of each arc.
    pub arc_component: Vec<usize>,
    pub relations: Vec<CrossingRel>,
    pub meridian: usize,
    pub longitude: Word,
    pub component: usize,
    pub component_count: usize,
    arc_of_edge: BTreeMap<EdgeId, usize>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn generator_name(&self, g: usize) -> String {
        format!("x{g}")
    }

    pub fn arc_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.arc_of_edge.get(&e).copied()
    }

    /// Relators as words: over^-s · in · over^s · out^-1. With meridians
    /// oriented to link the strand positively and this crate's sign rule,
    /// the outgoing under-arc at a crossing of sign s is
    /// over^-s · in · over^s.
    pub fn relator_words(&self) -> Vec<Word> {
        self.relations
            .iter()
            .map(|r| {
                Word::from_letters(vec![
                    (r.over, -(r.sign as i32)),
                    (r.under_in, 1),
                    (r.over, r.sign as i32),
                    (r.under_out, -1),
                ])
            })
            .collect()
    }

    /// True when every generator abelianizes to the same variable; holds
    /// for single-component diagrams.
    pub fn is_knot_presentation(&self) -> bool {
        self.component_count == 1
    }
}

/// Build the Wirtinger presentation of a validated diagram, with meridian
/// and longitude taken on component `c`.
pub fn wirtinger(d: &Diagram, c: usize) -> Result<Presentation> {
    if c >= d.component_count() {
        return Err(Error::UnknownComponent(c));
    }
    let o = d.validate()?;

    // Arcs: cut each component cycle after every under-passage.
    let mut arcs: Vec<Vec<EdgeId>> = Vec::new();
    let mut arc_component = Vec::new();
    let mut arc_of_edge: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (ci, comp) in d.components().iter().enumerate() {
        let k = comp.edges.len();
        let goes_under = |e: EdgeId| o.heads.get(&e).is_some_and(|p| p.1 == 0);
        let cut_positions: Vec<usize> = (0..k).filter(|&i| goes_under(comp.edges[i])).collect();
        if cut_positions.is_empty() {
            // never passes under: one closed arc
            let idx = arcs.len();
            for &e in &comp.edges {
                arc_of_edge.insert(e, idx);
            }
            arcs.push(comp.edges.clone());
            arc_component.push(ci);
            continue;
        }
        // arc begins after each cut
        for (w, &cut) in cut_positions.iter().enumerate() {
            let next_cut = cut_positions[(w + 1) % cut_positions.len()];
            let mut edges = Vec::new();
            let mut i = (cut + 1) % k;
            loop {
                edges.push(comp.edges[i]);
                if i == next_cut {
                    break;
                }
                i = (i + 1) % k;
            }
            let idx = arcs.len();
            for &e in &edges {
                arc_of_edge.insert(e, idx);
            }
            arcs.push(edges);
            arc_component.push(ci);
        }
    }

    // Relations, one per crossing.
    let mut relations = Vec::new();
    for (ci, x) in d.crossings().iter().enumerate() {
        let over_edge = x.slots[1];
        let rel = CrossingRel {
            over: arc_of_edge[&over_edge],
            under_in: arc_of_edge[&x.slots[0]],
            under_out: arc_of_edge[&x.slots[2]],
            sign: o.signs[ci],
        };
        relations.push(rel);
    }

    // Meridian: arc of the component's first edge.
    let first_edge = d.components()[c].edges[0];
    let meridian = arc_of_edge[&first_edge];

    // Longitude: over-arcs met while traversing the component, exponent the
    // crossing sign, corrected by meridian^-writhe.
    let mut letters: Vec<(usize, i32)> = Vec::new();
    for &e in &d.components()[c].edges {
        if let Some(&(cx, slot)) = o.heads.get(&e) {
            if slot == 0 {
                let over_arc = arc_of_edge[&d.crossings()[cx].slots[1]];
                letters.push((over_arc, o.signs[cx] as i32));
            }
        }
    }
    let w = d.writhe(c)?;
    letters.push((meridian, -(w as i32)));
    let longitude = Word::from_letters(letters);

    Ok(Presentation {
        arcs,
        arc_component,
        relations,
        meridian,
        longitude,
        component: c,
        component_count: d.component_count(),
        arc_of_edge,
    })
}

/// The word a component reads in the diagram group: the product of the
/// over-arcs at its under-passages, letter exponents the crossing signs.
/// For a staple this is its image in the host group after filling.
pub fn component_word(d: &Diagram, pres: &Presentation, comp: usize) -> Result<Word> {
    if comp >= d.component_count() {
        return Err(Error::UnknownComponent(comp));
    }
    let o = d.validate()?;
    let mut letters = Vec::new();
    for &e in &d.components()[comp].edges {
        if let Some(&(cx, slot)) = o.heads.get(&e) {
            if slot == 0 {
                let over_arc = pres
                    .arc_of_edge(d.crossings()[cx].slots[1])
                    .ok_or_else(|| Error::Other("edge without arc".into()))?;
                letters.push((over_arc, o.signs[cx] as i32));
            }
        }
    }
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unknot_presentation() {
        let d = Diagram::parse_pd(fixtures::UNKNOT).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relations.is_empty());
        assert_eq!(p.meridian, 0);
        assert!(p.longitude.is_empty());
    }

    #[test]
    fn trefoil_presentation() {
        let d = Diagram::parse_pd(fixtures::TREFOIL).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relations.len(), 3);
        // abelianized, every relator is trivial and the longitude has
        // exponent sum 0
        assert_eq!(p.longitude.exponent_sum(), 0);
        for r in p.relator_words() {
            assert_eq!(r.exponent_sum(), 0);
        }
    }

    #[test]
    fn hopf_longitude_is_other_meridian() {
        let d = Diagram::parse_pd(fixtures::HOPF).unwrap();
        let p = wirtinger(&d, 0).unwrap();
        // component 0 has one under-passage below component 1; writhe 0
        assert_eq!(p.longitude.letters().len(), 1);
        let (g, e) = p.longitude.letters()[0];
        assert_eq!(e, 1, "exponent sum must match lk = 1");
        assert_eq!(p.arc_component[g], 1);
    }
}
