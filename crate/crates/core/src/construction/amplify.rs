//! Connected-sum amplification and the untwisted-double amplifier knot.
//!
//! The amplifier hypothesis is a trivial Alexander polynomial; amplify
//! checks it and then splices N copies of the summand into the knot, which
//! leaves the polynomial fixed by multiplicativity. The canonical summand
//! is the untwisted double: an antiparallel blackboard 2-cable with the
//! framing twisted back to zero, folded into one curve through a clasp.

use super::fixture::PassDir;
use super::twist::build_braid;
use crate::diagram::{ComponentRole, Diagram, EdgeId};
use crate::error::{Error, Result};
use crate::group::alexander_polynomial;
use std::collections::BTreeMap;

/// k # k0 # ... # k0 with N summands; requires Δ(k0) = 1.
pub fn amplify(k: &Diagram, k0: &Diagram, n: usize) -> Result<Diagram> {
    let delta0 = alexander_polynomial(k0)?;
    if !delta0.is_one() {
        return Err(Error::NontrivialAmplifier(delta0.to_string()));
    }
    let mut out = k.clone();
    for _ in 0..n {
        let kc = out
            .knot_component()
            .ok_or_else(|| Error::Validation("amplify needs a knot component".into()))?;
        let arc1 = out.components()[kc].edges[0];
        let kc0 = k0
            .knot_component()
            .ok_or_else(|| Error::Validation("summand needs a knot component".into()))?;
        let arc2 = k0.components()[kc0].edges[0];
        out = out.connected_sum(arc1, k0, arc2)?;
    }
    Ok(out)
}

/// Insert a braid word into an adjacent antiparallel wire pair, splicing
/// both wires back together below it. Returns the rewritten diagram and
/// the bottom pieces of the two wires.
fn braid_on_pair(
    d: &Diagram,
    w_down: EdgeId,
    w_up: EdgeId,
    letters: &[(usize, bool)],
) -> Result<(Diagram, EdgeId, EdgeId)> {
    let o = d.validate()?;
    let head_down = *o
        .heads
        .get(&w_down)
        .ok_or_else(|| Error::Other("wire without endpoints".into()))?;
    let tail_up = *o
        .tails
        .get(&w_up)
        .ok_or_else(|| Error::Other("wire without endpoints".into()))?;
    let mut out = d.clone();
    out.bump_next_edge();
    let built = build_braid(
        &mut out,
        &[w_down, w_up],
        &[PassDir::Down, PassDir::Up],
        letters,
    );
    let f_down = *built.chains[0].last().expect("letters touch both wires");
    let f_up = *built.chains[1].last().expect("letters touch both wires");
    for slots in built.crossings {
        out.push_crossing(slots);
    }
    // the dangling bottom pieces take the wires' severed slots
    out.crossings_mut()[head_down.0].slots[head_down.1 as usize] = f_down;
    out.crossings_mut()[tail_up.0].slots[tail_up.1 as usize] = f_up;
    // cycles: down wire reads top-to-bottom, up wire bottom-to-top
    for comp in out.components_mut() {
        if let Some(pos) = comp.edges.iter().position(|&e| e == w_down) {
            for (off, &e) in built.chains[0].iter().enumerate() {
                comp.edges.insert(pos + 1 + off, e);
            }
            break;
        }
    }
    for comp in out.components_mut() {
        if let Some(pos) = comp.edges.iter().position(|&e| e == w_up) {
            let mut ins: Vec<EdgeId> = built.chains[1].clone();
            ins.reverse();
            for (off, &e) in ins.iter().enumerate() {
                comp.edges.insert(pos + off, e);
            }
            break;
        }
    }
    out.validate()?;
    Ok((out, f_down, f_up))
}

/// The untwisted (0-framed) double of a knot, with a positive clasp.
pub fn untwisted_double(k: &Diagram) -> Result<Diagram> {
    if k.component_count() != 1 {
        return Err(Error::Validation("doubling expects a knot diagram".into()));
    }
    let o = k.validate()?;

    // 1. Antiparallel blackboard 2-cable: copies eR (with the flow) and eL
    //    (against it), one 2x2 grid of crossings per original crossing.
    let mut d = Diagram::new(format!("double({})", k.name));
    let mut next: EdgeId = 1;
    let mut fresh = || {
        let e = next;
        next += 1;
        e
    };
    let mut right: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut left: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for comp in k.components() {
        for &e in &comp.edges {
            right.insert(e, fresh());
            left.insert(e, fresh());
        }
    }
    struct Mids {
        a_r: EdgeId,
        a_l: EdgeId,
        b_r: EdgeId,
        b_l: EdgeId,
    }
    let mut mids: Vec<Mids> = Vec::new();
    for (ci, x) in k.crossings().iter().enumerate() {
        let m = Mids {
            a_r: fresh(),
            a_l: fresh(),
            b_r: fresh(),
            b_l: fresh(),
        };
        let u_in_r = right[&x.slots[0]];
        let u_in_l = left[&x.slots[0]];
        let u_out_r = right[&x.slots[2]];
        let u_out_l = left[&x.slots[2]];
        let o_in_r = right[&o.over_in(k, ci)];
        let o_in_l = left[&o.over_in(k, ci)];
        let o_out_r = right[&o.over_out(k, ci)];
        let o_out_l = left[&o.over_out(k, ci)];
        if o.signs[ci] > 0 {
            d.push_crossing([u_in_r, o_in_l, m.a_r, m.b_l]);
            d.push_crossing([m.a_r, o_in_r, u_out_r, m.b_r]);
            d.push_crossing([u_out_l, o_out_r, m.a_l, m.b_r]);
            d.push_crossing([m.a_l, o_out_l, u_in_l, m.b_l]);
        } else {
            d.push_crossing([u_in_r, o_out_r, m.a_r, m.b_r]);
            d.push_crossing([m.a_r, o_out_l, u_out_r, m.b_l]);
            d.push_crossing([u_out_l, o_in_l, m.a_l, m.b_l]);
            d.push_crossing([m.a_l, o_in_r, u_in_l, m.b_r]);
        }
        mids.push(m);
    }

    let cycle = &k.components()[0].edges;
    let mut c_r: Vec<EdgeId> = Vec::new();
    let mut c_l: Vec<EdgeId> = Vec::new();
    for &e in cycle {
        c_r.push(right[&e]);
        if let Some(&(hc, hs)) = o.heads.get(&e) {
            c_r.push(if hs == 0 { mids[hc].a_r } else { mids[hc].b_r });
        }
    }
    for &e in cycle.iter().rev() {
        c_l.push(left[&e]);
        if let Some(&(tc, ts)) = o.tails.get(&e) {
            c_l.push(if ts == 2 { mids[tc].a_l } else { mids[tc].b_l });
        }
    }
    d.push_component(c_r, ComponentRole::Knot);
    d.push_component(c_l, ComponentRole::Knot);
    d.bump_next_edge();
    d.validate()?;

    // 2. Correct the framing to zero. Each backslash-over letter on this
    //    antiparallel pair shifts the cable's linking number; insert the
    //    matching count and verify the result is 0-framed.
    let framing = if k.crossing_count() == 0 {
        0
    } else {
        d.linking_number(0, 1)?
    };
    let mut w_down = right[&cycle[0]];
    let mut w_up = left[&cycle[0]];
    let mut cable = d;
    if framing != 0 {
        let letters: Vec<(usize, bool)> =
            vec![(0, framing > 0); 2 * framing.unsigned_abs() as usize];
        let (fixed, f_down, f_up) = braid_on_pair(&cable, w_down, w_up, &letters)?;
        cable = fixed;
        w_down = f_down;
        w_up = f_up;
        let residual = cable.linking_number(0, 1)?;
        if residual != 0 {
            return Err(Error::Other(format!(
                "framing correction left linking {residual}"
            )));
        }
    }

    // 3. Clasp and fold: two same-handed crossings on the pair, then the
    //    two U-turns joining the cable into one curve.
    let o3 = cable.validate()?;
    let head_down = o3.heads.get(&w_down).copied();
    let tail_up = o3.tails.get(&w_up).copied();
    let mut out = cable.clone();
    out.bump_next_edge();
    let letters = vec![(0usize, true), (0usize, true)];
    let built = build_braid(
        &mut out,
        &[w_down, w_up],
        &[PassDir::Down, PassDir::Up],
        &letters,
    );
    let mut chains = built.chains;
    let f_down = chains[0].pop().expect("clasp reaches both wires");
    let f_up = chains[1].pop().expect("clasp reaches both wires");
    let mut crossings = built.crossings;
    let mut fused = 0;
    for x in crossings.iter_mut() {
        for s in x.iter_mut() {
            if *s == f_up {
                *s = f_down;
                fused += 1;
            }
        }
    }
    debug_assert_eq!(fused, 1, "lower U-turn fuses once");
    for slots in crossings {
        out.push_crossing(slots);
    }

    let u2 = out.fresh_edge();
    match (head_down, tail_up) {
        (Some(hd), Some(tu)) => {
            out.crossings_mut()[hd.0].slots[hd.1 as usize] = u2;
            out.crossings_mut()[tu.0].slots[tu.1 as usize] = u2;
        }
        (None, None) => {
            // crossingless circle: the pair's outer return is one arc, so
            // the up wire merges into the down wire
            for x in out.crossings_mut() {
                for s in x.slots.iter_mut() {
                    if *s == w_up {
                        *s = w_down;
                    }
                }
            }
        }
        _ => return Err(Error::Other("cable pair out of sync".into())),
    }

    // single folded cycle
    let rot_rest = |v: &[EdgeId], anchor: EdgeId| -> Vec<EdgeId> {
        let p = v.iter().position(|&e| e == anchor).unwrap();
        (1..v.len()).map(|i| v[(p + i) % v.len()]).collect()
    };
    let comp_down = out
        .components()
        .iter()
        .position(|c| c.edges.contains(&w_down))
        .expect("down wire component");
    let comp_up = out
        .components()
        .iter()
        .position(|c| c.edges.contains(&w_up))
        .expect("up wire component");
    if comp_down == comp_up {
        return Err(Error::Other(
            "cable wires collapsed to one component".into(),
        ));
    }
    let r_rest = rot_rest(&out.components()[comp_down].edges, w_down);
    let l_rest = rot_rest(&out.components()[comp_up].edges, w_up);
    let mut folded: Vec<EdgeId> = vec![w_down];
    folded.extend(chains[0].iter());
    folded.push(f_down);
    folded.extend(chains[1].iter().rev());
    if head_down.is_some() {
        folded.push(w_up);
        folded.extend(l_rest.iter());
        folded.push(u2);
        folded.extend(r_rest.iter());
    } else {
        // w_up merged into w_down; the cycle closes straight back
        debug_assert!(l_rest.is_empty() && r_rest.is_empty());
    }

    let mut final_d = Diagram::new(out.name.clone());
    for x in out.crossings() {
        final_d.push_crossing(x.slots);
    }
    final_d.push_component(folded, ComponentRole::Knot);
    final_d.bump_next_edge();
    final_d.validate()?;
    Ok(final_d)
}
