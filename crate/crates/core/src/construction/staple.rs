//! Staple insertion: one fixture instance into the ball around each
//! crossing, positioned by the orientation of the incoming strands.

use super::fixture::{HostStrand, PassDir, StapleFixture};
use crate::diagram::{ComponentRole, Diagram, EdgeId};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The strands through one staple's spanning disk, west to east: the data
/// a twist needs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistRegion {
    /// the strand segment crossing the disk, per pass
    pub segments: Vec<EdgeId>,
    pub dirs: Vec<PassDir>,
    /// the edge on the crossing side of each pass
    pub top_edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StaplePlacement {
    /// Crossing index at insertion time (informational; indices shift as
    /// later operations rewrite the diagram).
    pub host_crossing: usize,
    pub region: TwistRegion,
}

/// Outcome of insert_staples: the augmented link plus per-crossing
/// placement records.
#[derive(Clone, Debug)]
pub struct Stapled {
    pub diagram: Diagram,
    pub placements: Vec<StaplePlacement>,
    /// set when the input had no crossings and came back unchanged
    pub trivial: bool,
    /// caller's attestation that the input diagram is minimal; recorded,
    /// never checked
    pub minimality_attested: bool,
}

/// Insert one staple into the ball around every crossing of a
/// one-component diagram. Deleting all staple components afterwards
/// recovers the input exactly.
pub fn insert_staples(
    k: &Diagram,
    fixture: &StapleFixture,
    minimality_attested: bool,
) -> Result<Stapled> {
    fixture.validate()?;
    if k.component_count() != 1 {
        return Err(Error::Validation(
            "staple insertion expects a one-component diagram".into(),
        ));
    }
    k.validate()?;
    if k.crossing_count() == 0 {
        return Ok(Stapled {
            diagram: k.clone(),
            placements: Vec::new(),
            trivial: true,
            minimality_attested,
        });
    }
    let mut d = k.clone();
    let n = k.crossing_count();
    let mut placements = Vec::with_capacity(n);
    for c in 0..n {
        let placement = insert_staple_at(&mut d, fixture, c)?;
        placements.push(placement);
    }
    d.validate()?;
    Ok(Stapled {
        diagram: d,
        placements,
        trivial: false,
        minimality_attested,
    })
}

/// Insert a single staple at one crossing, in place.
pub fn insert_staple_at(
    d: &mut Diagram,
    fixture: &StapleFixture,
    crossing: usize,
) -> Result<StaplePlacement> {
    fixture.validate()?;
    let o = d.validate()?;
    if crossing >= d.crossing_count() {
        return Err(Error::Validation(format!("no crossing {crossing}")));
    }
    let under_entry = d.crossings()[crossing].slots[0];
    let over_entry = o.over_in(d, crossing);
    let under_entry_head = o.heads[&under_entry];
    let over_entry_head = o.heads[&over_entry];
    debug_assert_eq!(under_entry_head.0, crossing);
    debug_assert_eq!(over_entry_head.0, crossing);

    let k = fixture.width();
    d.bump_next_edge();

    // γ's edges around its traversal: upper-arc crossings west to east,
    // then lower-arc crossings east to west.
    let gamma_edges: Vec<EdgeId> = (0..2 * k).map(|_| d.fresh_edge()).collect();
    // traversal position of each pass's upper and lower crossing
    let upper_pos = |i: usize| i;
    let lower_pos = |i: usize| 2 * k - 1 - i;
    let gamma_in = |pos: usize| gamma_edges[(pos + 2 * k - 1) % (2 * k)];
    let gamma_out = |pos: usize| gamma_edges[pos];

    // Strand chains: walk each host strand's passes in temporal order,
    // creating the crossings and fresh strand edges.
    let mut new_crossings: Vec<[EdgeId; 4]> = vec![[0; 4]; 2 * k];
    let mut segments = vec![0; k];
    let mut top_edges = vec![0; k];

    let mut chains: Vec<(HostStrand, Vec<EdgeId>)> = Vec::new();
    for (strand, order) in [
        (HostStrand::Under, &fixture.under_order),
        (HostStrand::Over, &fixture.over_order),
    ] {
        let entry = match strand {
            HostStrand::Under => under_entry,
            HostStrand::Over => over_entry,
        };
        let mut cur = entry;
        let mut chain = Vec::new();
        for &pass in order.iter() {
            let dir = fixture.passes[pass].1;
            let mid = d.fresh_edge();
            let after = d.fresh_edge();
            let u = upper_pos(pass);
            let l = lower_pos(pass);
            match dir {
                PassDir::Down => {
                    // upper crossing first: γ over, strand descends
                    new_crossings[u] = [cur, gamma_in(u), mid, gamma_out(u)];
                    new_crossings[l] = [gamma_in(l), mid, gamma_out(l), after];
                    top_edges[pass] = cur;
                }
                PassDir::Up => {
                    // lower crossing first: γ under, strand ascends
                    new_crossings[l] = [gamma_in(l), mid, gamma_out(l), cur];
                    new_crossings[u] = [mid, gamma_out(u), after, gamma_in(u)];
                    top_edges[pass] = after;
                }
            }
            segments[pass] = mid;
            chain.push(mid);
            chain.push(after);
            cur = after;
        }
        chains.push((strand, chain));
    }

    // Rewire the host crossing to take the last chain edges.
    let under_last = chains[0].1.last().copied().unwrap_or(under_entry);
    let over_last = chains[1].1.last().copied().unwrap_or(over_entry);
    d.crossings_mut()[under_entry_head.0].slots[under_entry_head.1 as usize] = under_last;
    d.crossings_mut()[over_entry_head.0].slots[over_entry_head.1 as usize] = over_last;

    for slots in new_crossings {
        d.push_crossing(slots);
    }

    // Splice the fresh strand edges into the knot cycle after each entry
    // edge, and add γ's component.
    for (strand, chain) in &chains {
        let entry = match strand {
            HostStrand::Under => under_entry,
            HostStrand::Over => over_entry,
        };
        if chain.is_empty() {
            continue;
        }
        let comp = d
            .components_mut()
            .iter_mut()
            .find(|c| c.edges.contains(&entry))
            .expect("entry edge in a component");
        let pos = comp.edges.iter().position(|&e| e == entry).unwrap();
        for (off, &e) in chain.iter().enumerate() {
            comp.edges.insert(pos + 1 + off, e);
        }
    }
    d.push_component(gamma_edges, ComponentRole::Staple);

    debug_assert!(d.validate().is_ok(), "staple insertion broke the diagram");
    Ok(StaplePlacement {
        host_crossing: crossing,
        region: TwistRegion {
            segments,
            dirs: fixture.passes.iter().map(|&(_, dir)| dir).collect(),
            top_edges,
        },
    })
}

/// Delete every staple-role component, returning the result and the edge
/// renaming it induced (surviving edge -> merged representative).
pub fn delete_staples(
    d: &Diagram,
) -> Result<(Diagram, std::collections::BTreeMap<EdgeId, EdgeId>)> {
    let mut cur = d.clone();
    let mut total_map: std::collections::BTreeMap<EdgeId, EdgeId> = d
        .components()
        .iter()
        .flat_map(|c| c.edges.iter().map(|&e| (e, e)))
        .collect();
    while let Some(idx) = cur
        .components()
        .iter()
        .position(|c| c.role == ComponentRole::Staple)
    {
        let (next, map) = delete_component_mapped(&cur, idx)?;
        for v in total_map.values_mut() {
            if let Some(&r) = map.get(v) {
                *v = r;
            }
        }
        cur = next;
    }
    total_map.retain(|_, v| cur.components().iter().any(|c| c.edges.contains(v)));
    Ok((cur, total_map))
}

/// delete_component plus the union-find edge map it applied.
pub fn delete_component_mapped(
    d: &Diagram,
    comp: usize,
) -> Result<(Diagram, std::collections::BTreeMap<EdgeId, EdgeId>)> {
    use std::collections::BTreeMap;
    let o = d.validate()?;
    let out = d.delete_component(comp)?;
    // Reconstruct the union map: crossings where `comp` passed over or
    // under merged the other strand's pair.
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
    for (ci, x) in d.crossings().iter().enumerate() {
        let uc = o.under_component(d, ci);
        let vc = o.over_component(d, ci);
        if uc != comp && vc != comp {
            continue;
        }
        let mut unions: Vec<(EdgeId, EdgeId)> = Vec::new();
        if uc != comp {
            unions.push((x.slots[0], x.slots[2]));
        }
        if vc != comp {
            unions.push((x.slots[1], x.slots[3]));
        }
        for (a, b) in unions {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent.insert(hi, lo);
            }
        }
    }
    let mut map = BTreeMap::new();
    for compd in d.components() {
        for &e in &compd.edges {
            map.insert(e, find(&mut parent, e));
        }
    }
    Ok((out, map))
}
