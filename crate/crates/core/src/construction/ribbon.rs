//! Ribbon-concordance certificates: the pair of fusion bands per twisted
//! staple that cuts the twisted fingers off the cover, leaving the
//! original knot plus unknotted, unlinked circles that shrink to points.

use super::fixture::{PassDir, StapleFixture};
use super::staple::StaplePlacement;
use crate::diagram::{simplify, ComponentRole, Diagram, EdgeId, SimplifyOptions};
use crate::error::{Error, Result};
use crate::group::alexander_polynomial;
use serde::{Deserialize, Serialize};

/// One fusion band: it attaches across the two parallel strands at a
/// finger's neck, immediately above the twist region, and crosses nothing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BandMove {
    /// staple index this band belongs to
    pub staple: usize,
    /// edge flowing down into the twist region
    pub from: EdgeId,
    /// edge flowing up out of the twist region
    pub to: EdgeId,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RibbonCertificate {
    pub schema: String,
    pub bands: Vec<BandMove>,
    /// diagram right after the fusions, before any simplification
    pub fused_pd: String,
    pub residual_circles: usize,
    /// the knot component equals the input diagram exactly
    pub knot_matches_input: bool,
    pub knot_delta_matches: bool,
    /// every residual circle simplified to a zero-crossing circle
    pub circles_trivial: bool,
    pub linking_all_zero: bool,
    pub budget_exhausted: bool,
    pub verified: bool,
}

/// Cut two coherently-oriented edges of one component and cross-join them:
/// the component splits in two. `from`'s head and `to`'s tail must both
/// lie on the piece being split off.
pub fn band_move(d: &Diagram, from: EdgeId, to: EdgeId) -> Result<Diagram> {
    let o = d.validate()?;
    if from == to {
        return Err(Error::Validation("band needs two distinct arcs".into()));
    }
    let head_from = *o
        .heads
        .get(&from)
        .ok_or_else(|| Error::Validation(format!("arc {from} touches no crossing")))?;
    let head_to = *o
        .heads
        .get(&to)
        .ok_or_else(|| Error::Validation(format!("arc {to} touches no crossing")))?;
    let comp_idx = o.edge_component[&from];
    if o.edge_component[&to] != comp_idx {
        return Err(Error::Validation("band arcs must share a component".into()));
    }

    let mut out = d.clone();
    // swap heads: `from` now terminates where `to` did and vice versa
    out.crossings_mut()[head_to.0].slots[head_to.1 as usize] = from;
    out.crossings_mut()[head_from.0].slots[head_from.1 as usize] = to;

    // split the cycle: [from, A.., to, B..] -> [from, B..] and [to, A..]
    let cycle = out.components()[comp_idx].edges.clone();
    let pos_from = cycle.iter().position(|&e| e == from).unwrap();
    let rotated: Vec<EdgeId> = (0..cycle.len())
        .map(|i| cycle[(pos_from + i) % cycle.len()])
        .collect();
    let pos_to = rotated
        .iter()
        .position(|&e| e == to)
        .ok_or_else(|| Error::Validation("band arcs out of order".into()))?;
    let mut keep = vec![rotated[0]];
    keep.extend_from_slice(&rotated[pos_to + 1..]);
    let split: Vec<EdgeId> = rotated[1..=pos_to].to_vec();
    let role = out.components()[comp_idx].role;
    out.components_mut()[comp_idx].edges = keep;
    let _ = role;
    out.push_component(split, ComponentRole::Staple);
    out.validate()?;
    Ok(out)
}

/// Emit and verify the fusion bands for every staple twisted with q ≠ 0.
pub fn ribbon_certificate(
    cover: &Diagram,
    input: &Diagram,
    placements: &[StaplePlacement],
    q: &[i64],
    fixture: &StapleFixture,
    budget: usize,
) -> Result<RibbonCertificate> {
    // the fixture's strand orders give the finger pairing: consecutive
    // passes of one strand form a finger, fused by one band
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for order in [&fixture.under_order, &fixture.over_order] {
        if order.len() % 2 != 0 {
            return Err(Error::Validation(
                "ribbon bands need doubled-back fingers (even pass counts)".into(),
            ));
        }
        for chunk in order.chunks(2) {
            let (a, b) = (chunk[0], chunk[1]);
            match (fixture.passes[a].1, fixture.passes[b].1) {
                (PassDir::Down, PassDir::Up) => pairs.push((a, b)),
                (PassDir::Up, PassDir::Down) => pairs.push((b, a)),
                _ => {
                    return Err(Error::Validation(
                        "ribbon bands need alternating pass directions".into(),
                    ))
                }
            }
        }
    }

    let mut bands = Vec::new();
    let mut fused = cover.clone();
    for (i, placement) in placements.iter().enumerate() {
        if q[i] == 0 {
            continue;
        }
        for &(down, up) in &pairs {
            let band = BandMove {
                staple: i,
                from: placement.region.top_edges[down],
                to: placement.region.top_edges[up],
            };
            fused = band_move(&fused, band.from, band.to)?;
            bands.push(band);
        }
    }
    let fused_pd = fused.canonical_code();
    let expected_circles = bands.len();
    let knot_idx = fused
        .components()
        .iter()
        .position(|c| c.role == ComponentRole::Knot)
        .ok_or_else(|| Error::Validation("fused diagram lost its knot component".into()))?;

    let outcome = simplify(
        &fused,
        &SimplifyOptions {
            budget,
            max_extra: 2,
        },
    );
    let reduced = outcome.diagram;

    let residual_circles = reduced.component_count() - 1;
    let circles_trivial = reduced.components().iter().enumerate().all(|(i, c)| {
        i == knot_idx || (c.edges.len() == 1 && residual_is_bare(&reduced, c.edges[0]))
    });

    let mut linking_all_zero = true;
    for a in 0..reduced.component_count() {
        for b in a + 1..reduced.component_count() {
            if reduced.linking_number(a, b)? != 0 {
                linking_all_zero = false;
            }
        }
    }

    // extract the knot component and compare with the input
    let mut knot_only = reduced.clone();
    while knot_only.component_count() > 1 {
        let victim = (0..knot_only.component_count())
            .find(|&i| knot_only.components()[i].role != ComponentRole::Knot)
            .expect("non-knot component present");
        knot_only = knot_only.delete_component(victim)?;
    }
    let knot_matches_input = knot_only.same_diagram(input);
    let knot_delta_matches = alexander_polynomial(&knot_only)? == alexander_polynomial(input)?;

    let verified = residual_circles == expected_circles
        && circles_trivial
        && linking_all_zero
        && knot_delta_matches
        && !outcome.budget_exhausted;

    Ok(RibbonCertificate {
        schema: "staplekit.ribbon.v1".into(),
        bands,
        fused_pd,
        residual_circles,
        knot_matches_input,
        knot_delta_matches,
        circles_trivial,
        linking_all_zero,
        budget_exhausted: outcome.budget_exhausted,
        verified,
    })
}

fn residual_is_bare(d: &Diagram, edge: EdgeId) -> bool {
    !d.endpoints().contains_key(&edge)
}
