//! 1/q surgery on a staple, realized as -q full twists on the four strand
//! segments through its spanning disk. The staple circle disappears and a
//! full-twist braid takes its place; q = 0 is exactly staple deletion.

use super::fixture::PassDir;
use super::staple::StaplePlacement;
use crate::diagram::{ComponentRole, Diagram, EdgeId};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Where the oval used to be: everything twist_surgery needs to know about
/// the live diagram, derived from a placement and checked for staleness.
struct RegionLive {
    gamma_comp: usize,
    gamma_crossings: BTreeSet<usize>,
    /// per pass: top edge (crossing side) and bottom edge (tip side)
    tops: Vec<EdgeId>,
    bottoms: Vec<EdgeId>,
}

fn locate_region(d: &Diagram, placement: &StaplePlacement) -> Result<RegionLive> {
    let o = d.validate()?;
    let ends = d.endpoints();
    let k = placement.region.segments.len();
    let mut gamma_comp = None;
    let mut gamma_crossings = BTreeSet::new();
    let mut tops = Vec::with_capacity(k);
    let mut bottoms = Vec::with_capacity(k);
    for (i, &seg) in placement.region.segments.iter().enumerate() {
        let Some(eps) = ends.get(&seg) else {
            return Err(Error::StalePlacement(format!(
                "segment {seg} no longer exists"
            )));
        };
        if eps.len() != 2 {
            return Err(Error::StalePlacement(format!("segment {seg} is malformed")));
        }
        // the two endpoint crossings: γ over at the upper one, under at the
        // lower one
        let mut upper = None;
        let mut lower = None;
        for &(c, s) in eps {
            let seg_under = s % 2 == 0;
            let other_comp = if seg_under {
                o.over_component(d, c)
            } else {
                o.under_component(d, c)
            };
            match gamma_comp {
                None => gamma_comp = Some(other_comp),
                Some(g) if g == other_comp => {}
                Some(_) => {
                    return Err(Error::StalePlacement(format!(
                        "segment {seg} crosses more than one circle"
                    )))
                }
            }
            if seg_under {
                // segment goes under γ: that is the upper crossing
                if upper.replace((c, s)).is_some() {
                    return Err(Error::StalePlacement(format!(
                        "segment {seg} has two upper ends"
                    )));
                }
            } else if lower.replace((c, s)).is_some() {
                return Err(Error::StalePlacement(format!(
                    "segment {seg} has two lower ends"
                )));
            }
        }
        let (Some(u), Some(l)) = (upper, lower) else {
            return Err(Error::StalePlacement(format!(
                "segment {seg} does not thread the staple"
            )));
        };
        gamma_crossings.insert(u.0);
        gamma_crossings.insert(l.0);
        // flow direction must match the recorded pass direction: at the
        // upper crossing the segment is the under strand, so it departs
        // (flows down) exactly when it sits in the under-out slot
        let flows_down = u.1 == 2;
        let expect_down = placement.region.dirs[i] == PassDir::Down;
        if flows_down != expect_down {
            return Err(Error::StalePlacement(format!(
                "segment {seg} flows against its recorded direction"
            )));
        }
        tops.push(d.crossings()[u.0].slots[((u.1 + 2) % 4) as usize]);
        bottoms.push(d.crossings()[l.0].slots[((l.1 + 2) % 4) as usize]);
    }
    let gamma_comp = gamma_comp.unwrap();
    if d.components()[gamma_comp].role != ComponentRole::Staple {
        return Err(Error::StalePlacement(
            "region circle is not a staple".into(),
        ));
    }
    // γ meets exactly the 2k crossings of this region
    let gamma_edges: BTreeSet<EdgeId> = d.components()[gamma_comp].edges.iter().copied().collect();
    let mut count = 0;
    for (ci, x) in d.crossings().iter().enumerate() {
        if x.slots.iter().any(|e| gamma_edges.contains(e)) {
            if !gamma_crossings.contains(&ci) {
                return Err(Error::StalePlacement(
                    "staple crosses strands outside the recorded region".into(),
                ));
            }
            count += 1;
        }
    }
    if count != 2 * k || gamma_crossings.len() != 2 * k {
        return Err(Error::StalePlacement(
            "staple crossing count mismatch".into(),
        ));
    }
    Ok(RegionLive {
        gamma_comp,
        gamma_crossings,
        tops,
        bottoms,
    })
}

pub(crate) struct BraidBuilt {
    pub crossings: Vec<[EdgeId; 4]>,
    /// per original wire: fresh continuation edges, top to bottom,
    /// ending with the final dangling edge
    pub chains: Vec<Vec<EdgeId>>,
}

/// Lay a braid word below the given top edges. Letters are (index j,
/// backslash_over): the strand running NW-SE crosses over when the flag is
/// set. The permutation must be trivial (full twists are pure braids).
pub(crate) fn build_braid(
    d: &mut Diagram,
    tops: &[EdgeId],
    dirs: &[PassDir],
    letters: &[(usize, bool)],
) -> BraidBuilt {
    let width = tops.len();
    let mut pos_edges: Vec<EdgeId> = tops.to_vec();
    let mut pos_dirs: Vec<PassDir> = dirs.to_vec();
    let mut wire_of_pos: Vec<usize> = (0..width).collect();
    let mut chains: Vec<Vec<EdgeId>> = vec![Vec::new(); width];
    let mut crossings = Vec::new();

    #[derive(Clone, Copy, PartialEq, Eq)]
    enum C {
        NE,
        NW,
        SW,
        SE,
    }
    const CCW: [C; 4] = [C::NE, C::NW, C::SW, C::SE];

    for &(j, backslash_over) in letters {
        assert!(j + 1 < width, "braid letter out of range");
        let a = pos_edges[j];
        let b = pos_edges[j + 1];
        let a2 = d.fresh_edge();
        let b2 = d.fresh_edge();
        let dir_a = pos_dirs[j];
        let dir_b = pos_dirs[j + 1];

        // compass -> edge at this crossing
        let at = |c: C| -> EdgeId {
            match c {
                C::NW => a,
                C::SE => a2,
                C::NE => b,
                C::SW => b2,
            }
        };
        // under strand and its in/out compasses
        let (u_in_c, o_in_c) = if backslash_over {
            // "/" is under, carried by wire b
            let u = match dir_b {
                PassDir::Down => C::NE,
                PassDir::Up => C::SW,
            };
            let o = match dir_a {
                PassDir::Down => C::NW,
                PassDir::Up => C::SE,
            };
            (u, o)
        } else {
            let u = match dir_a {
                PassDir::Down => C::NW,
                PassDir::Up => C::SE,
            };
            let o = match dir_b {
                PassDir::Down => C::NE,
                PassDir::Up => C::SW,
            };
            (u, o)
        };
        let start = CCW.iter().position(|&c| c == u_in_c).unwrap();
        let mut slots = [0; 4];
        for i in 0..4 {
            slots[i] = at(CCW[(start + i) % 4]);
        }
        // sanity: slot 2 must be the under strand's other end
        debug_assert_eq!(
            (
                slots[0] == a || slots[0] == a2,
                slots[2] == a || slots[2] == a2
            ),
            (!backslash_over, !backslash_over)
        );
        let _ = o_in_c;
        crossings.push(slots);

        chains[wire_of_pos[j]].push(a2);
        chains[wire_of_pos[j + 1]].push(b2);
        pos_edges[j] = b2;
        pos_edges[j + 1] = a2;
        pos_dirs.swap(j, j + 1);
        wire_of_pos.swap(j, j + 1);
    }
    assert!(
        wire_of_pos.iter().enumerate().all(|(i, &w)| i == w),
        "braid word must be a pure braid"
    );
    BraidBuilt { crossings, chains }
}

/// Letters of (Δ²)^(-q) on `width` strands: q > 0 gives left-handed full
/// twists (1/q surgery is a (-q)-twist), q < 0 right-handed.
pub(crate) fn full_twist_letters(width: usize, q: i64) -> Vec<(usize, bool)> {
    let mut letters = Vec::new();
    let reps = width * q.unsigned_abs() as usize;
    if q > 0 {
        for _ in 0..reps {
            for j in (0..width - 1).rev() {
                letters.push((j, false));
            }
        }
    } else {
        for _ in 0..reps {
            for j in 0..width - 1 {
                letters.push((j, true));
            }
        }
    }
    letters
}

/// Perform 1/q surgery on one staple: delete the circle and insert -q full
/// twists on the strands through its disk. q = 0 deletes the staple with
/// no twist.
pub fn twist_surgery(d: &Diagram, placement: &StaplePlacement, q: i64) -> Result<Diagram> {
    let region = locate_region(d, placement)?;
    if q == 0 {
        return d.delete_component(region.gamma_comp);
    }
    let width = placement.region.segments.len();
    if width != 4 {
        return Err(Error::Validation(format!(
            "twist surgery needs a four-strand region, got {width}"
        )));
    }

    let mut out = d.clone();
    out.bump_next_edge();
    let letters = full_twist_letters(width, q);
    let built = build_braid(&mut out, &region.tops, &placement.region.dirs, &letters);

    // fuse each wire's final dangling edge with the bottom edge
    let mut crossings = built.crossings;
    let mut chains = built.chains;
    for (i, chain) in chains.iter_mut().enumerate() {
        let last = chain.pop().expect("full twists touch every wire");
        let mut hits = 0;
        for x in crossings.iter_mut() {
            for s in x.iter_mut() {
                if *s == last {
                    *s = region.bottoms[i];
                    hits += 1;
                }
            }
        }
        debug_assert_eq!(hits, 1, "final wire edge fused exactly once");
    }

    // rebuild the crossing list: drop γ's, append the braid's
    let keep: Vec<[EdgeId; 4]> = out
        .crossings()
        .iter()
        .enumerate()
        .filter(|(ci, _)| !region.gamma_crossings.contains(ci))
        .map(|(_, x)| x.slots)
        .collect();
    let mut rebuilt = Diagram::new(out.name.clone());
    for slots in keep.into_iter().chain(crossings) {
        rebuilt.push_crossing(slots);
    }

    // components: drop γ, splice braid interiors over the old segments
    for (idx, comp) in out.components().iter().enumerate() {
        if idx == region.gamma_comp {
            continue;
        }
        let mut edges = comp.edges.clone();
        for (i, &seg) in placement.region.segments.iter().enumerate() {
            if let Some(pos) = edges.iter().position(|&e| e == seg) {
                let mut interior = chains[i].clone();
                if placement.region.dirs[i] == PassDir::Up {
                    interior.reverse();
                }
                edges.splice(pos..=pos, interior);
            }
        }
        rebuilt.push_component(edges, comp.role);
    }
    rebuilt.bump_next_edge();
    rebuilt.validate()?;
    Ok(rebuilt)
}
